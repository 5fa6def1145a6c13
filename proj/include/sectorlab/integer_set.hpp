#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace sectorlab {

/// Index sets K of nonnegative integers used to select annuli. Three forms:
/// an explicit finite set, an arithmetic progression, or a predicate whose
/// upper density the caller declares (it is measured, never certified).
class IntegerSet {
 public:
  static IntegerSet finite(std::set<std::int64_t> members);
  /// {start, start+step, ...}, optionally bounded by `last` (inclusive).
  static IntegerSet progression(std::int64_t start, std::int64_t step,
                                std::optional<std::int64_t> last = std::nullopt);
  static IntegerSet predicate(std::function<bool(std::int64_t)> pred, double declared_udens,
                              std::string name);

  static IntegerSet naturals() { return progression(0, 1); }
  static IntegerSet evens() { return progression(0, 2); }
  static IntegerSet non_squares();

  bool contains(std::int64_t k) const;
  /// Members in [lo, hi], ascending.
  std::vector<std::int64_t> members(std::int64_t lo, std::int64_t hi) const;
  /// #(K intersect [1, n]).
  std::int64_t count_up_to(std::int64_t n) const;

  /// Largest member when K is finite.
  std::optional<std::int64_t> max_member() const;

  std::optional<double> declared_udens() const { return declared_udens_; }
  const std::string& name() const { return name_; }

 private:
  enum class Kind { finite, progression, predicate };
  IntegerSet() = default;

  Kind kind_ = Kind::finite;
  std::set<std::int64_t> finite_;
  std::int64_t start_ = 0;
  std::int64_t step_ = 1;
  std::optional<std::int64_t> last_;
  std::function<bool(std::int64_t)> pred_;
  std::optional<double> declared_udens_;
  std::string name_;
};

}  // namespace sectorlab
