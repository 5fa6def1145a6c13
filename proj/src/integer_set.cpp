#include "sectorlab/integer_set.hpp"

#include <cmath>

#include "sectorlab/errors.hpp"

namespace sectorlab {

IntegerSet IntegerSet::finite(std::set<std::int64_t> members) {
  for (auto k : members) {
    if (k < 0) throw DomainError("index sets hold nonnegative integers");
  }
  IntegerSet s;
  s.kind_ = Kind::finite;
  s.finite_ = std::move(members);
  s.declared_udens_ = 0.0;
  s.name_ = "finite";
  return s;
}

IntegerSet IntegerSet::progression(std::int64_t start, std::int64_t step,
                                   std::optional<std::int64_t> last) {
  if (start < 0 || step < 1) throw DomainError("progression needs start >= 0 and step >= 1");
  IntegerSet s;
  s.kind_ = Kind::progression;
  s.start_ = start;
  s.step_ = step;
  s.last_ = last;
  s.declared_udens_ = last ? 0.0 : 1.0 / static_cast<double>(step);
  s.name_ = step == 1 && start == 0 ? "naturals"
            : step == 2 && start == 0 ? "evens"
                                      : "progression(" + std::to_string(start) + "," +
                                            std::to_string(step) + ")";
  return s;
}

IntegerSet IntegerSet::predicate(std::function<bool(std::int64_t)> pred, double declared_udens,
                                 std::string name) {
  if (!pred) throw DomainError("predicate index set needs a predicate");
  IntegerSet s;
  s.kind_ = Kind::predicate;
  s.pred_ = std::move(pred);
  s.declared_udens_ = declared_udens;
  s.name_ = std::move(name);
  return s;
}

IntegerSet IntegerSet::non_squares() {
  return predicate(
      [](std::int64_t k) {
        if (k < 0) return false;
        auto r = static_cast<std::int64_t>(std::llround(std::sqrt(static_cast<double>(k))));
        while (r * r > k) --r;
        while ((r + 1) * (r + 1) <= k) ++r;
        return r * r != k;
      },
      1.0, "non_squares");
}

bool IntegerSet::contains(std::int64_t k) const {
  if (k < 0) return false;
  switch (kind_) {
    case Kind::finite:
      return finite_.count(k) != 0;
    case Kind::progression:
      if (k < start_ || (last_ && k > *last_)) return false;
      return (k - start_) % step_ == 0;
    case Kind::predicate:
      return pred_(k);
  }
  return false;
}

std::vector<std::int64_t> IntegerSet::members(std::int64_t lo, std::int64_t hi) const {
  std::vector<std::int64_t> out;
  lo = std::max<std::int64_t>(lo, 0);
  if (hi < lo) return out;
  if (kind_ == Kind::finite) {
    for (auto it = finite_.lower_bound(lo); it != finite_.end() && *it <= hi; ++it) {
      out.push_back(*it);
    }
    return out;
  }
  if (kind_ == Kind::progression) {
    std::int64_t k = start_;
    if (lo > start_) k = start_ + ((lo - start_ + step_ - 1) / step_) * step_;
    const std::int64_t top = last_ ? std::min(hi, *last_) : hi;
    for (; k <= top; k += step_) out.push_back(k);
    return out;
  }
  for (std::int64_t k = lo; k <= hi; ++k) {
    if (pred_(k)) out.push_back(k);
  }
  return out;
}

std::optional<std::int64_t> IntegerSet::max_member() const {
  if (kind_ == Kind::finite) {
    if (finite_.empty()) return std::int64_t{-1};
    return *finite_.rbegin();
  }
  if (kind_ == Kind::progression && last_) {
    if (*last_ < start_) return std::int64_t{-1};
    return start_ + ((*last_ - start_) / step_) * step_;
  }
  return std::nullopt;
}

std::int64_t IntegerSet::count_up_to(std::int64_t n) const {
  return static_cast<std::int64_t>(members(1, n).size());
}

}  // namespace sectorlab
