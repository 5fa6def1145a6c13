#include "sectorlab/lp.hpp"

#include <cmath>
#include <numbers>

#include "sectorlab/convergence.hpp"
#include "sectorlab/errors.hpp"

namespace sectorlab {

LpSpace::LpSpace(Weight w, double exponent, Sector s)
    : weight(std::move(w)), p(exponent), sector(s) {
  if (!(p >= 1.0) || !std::isfinite(p)) throw DomainError("L^p space needs 1 <= p < inf");
}

struct SectorFunction::Node {
  FunctionKind kind = FunctionKind::zero;
  RectUnionSet set;
  double scale = 1.0;
  Complex center{};
  double radius = 0.0;
  double amplitude = 0.0;
  std::vector<std::pair<double, SectorFunction>> terms;
  std::function<double(Complex)> fn;
  std::optional<double> support;
  std::string name;
};

SectorFunction::SectorFunction(std::shared_ptr<const Node> node, Complex offset)
    : node_(std::move(node)), offset_(offset) {}

SectorFunction SectorFunction::zero() {
  auto n = std::make_shared<Node>();
  n->kind = FunctionKind::zero;
  return SectorFunction(std::move(n), {});
}

SectorFunction SectorFunction::indicator(RectUnionSet set, double scale) {
  auto n = std::make_shared<Node>();
  n->kind = FunctionKind::indicator;
  n->set = normalize(set);
  n->scale = scale;
  return SectorFunction(std::move(n), {});
}

SectorFunction SectorFunction::bump(Complex center, double radius, double amplitude) {
  if (!(radius > 0.0)) throw DomainError("bump radius must be positive");
  auto n = std::make_shared<Node>();
  n->kind = FunctionKind::bump;
  n->center = center;
  n->radius = radius;
  n->amplitude = amplitude;
  return SectorFunction(std::move(n), {});
}

SectorFunction SectorFunction::custom(std::function<double(Complex)> f,
                                      std::optional<double> support_radius, std::string name) {
  if (!f) throw DomainError("custom function needs an evaluator");
  auto n = std::make_shared<Node>();
  n->kind = FunctionKind::custom;
  n->fn = std::move(f);
  n->support = support_radius;
  n->name = std::move(name);
  return SectorFunction(std::move(n), {});
}

SectorFunction SectorFunction::combination(std::vector<std::pair<double, SectorFunction>> terms) {
  auto n = std::make_shared<Node>();
  n->kind = FunctionKind::combination;
  n->terms = std::move(terms);
  return SectorFunction(std::move(n), {});
}

SectorFunction operator-(const SectorFunction& x, const SectorFunction& y) {
  return SectorFunction::combination({{1.0, x}, {-1.0, y}});
}

SectorFunction SectorFunction::scaled(double c) const {
  if (node_->kind == FunctionKind::indicator) {
    auto n = std::make_shared<Node>(*node_);
    n->scale *= c;
    return SectorFunction(std::move(n), offset_);
  }
  return combination({{c, *this}});
}

FunctionKind SectorFunction::kind() const { return node_->kind; }

double SectorFunction::operator()(Complex s) const { return eval_at(s + offset_); }

double SectorFunction::eval_at(Complex u) const {
  const Node& n = *node_;
  switch (n.kind) {
    case FunctionKind::zero:
      return 0.0;
    case FunctionKind::indicator:
      return n.set.contains(u) ? n.scale : 0.0;
    case FunctionKind::bump: {
      const double d2 = std::norm(u - n.center) / (n.radius * n.radius);
      if (d2 >= 1.0) return 0.0;
      const double g = 1.0 - d2;
      return n.amplitude * g * g;
    }
    case FunctionKind::combination: {
      double s = 0.0;
      for (const auto& [c, f] : n.terms) s += c * f(u);
      return s;
    }
    case FunctionKind::custom: {
      if (n.support && std::abs(u) >= *n.support) return 0.0;
      const double v = n.fn(u);
      if (!std::isfinite(v)) throw EvaluationError("custom function " + n.name + " is not finite");
      return v;
    }
  }
  return 0.0;
}

void SectorFunction::collect_boundaries(std::vector<Circle>& circles,
                                        std::vector<Ray>& rays) const {
  collect_shifted(offset_, circles, rays);
}

void SectorFunction::collect_shifted(Complex shift, std::vector<Circle>& circles,
                                     std::vector<Ray>& rays) const {
  const Node& n = *node_;
  switch (n.kind) {
    case FunctionKind::indicator:
      for (const auto& r : n.set.rects()) {
        if (r.r_lo > 0.0) circles.push_back({-shift, r.r_lo});
        circles.push_back({-shift, r.r_hi});
        rays.push_back({-shift, r.th_lo});
        rays.push_back({-shift, r.th_hi});
      }
      break;
    case FunctionKind::bump:
      circles.push_back({n.center - shift, n.radius});
      break;
    case FunctionKind::combination:
      for (const auto& [c, f] : n.terms) f.collect_shifted(shift + f.offset_, circles, rays);
      break;
    case FunctionKind::custom:
      if (n.support) circles.push_back({-shift, *n.support});
      break;
    case FunctionKind::zero:
      break;
  }
}

bool SectorFunction::maybe_nonzero(Complex s) const { return maybe_nonzero_at(s + offset_); }

bool SectorFunction::maybe_nonzero_at(Complex u) const {
  const Node& n = *node_;
  switch (n.kind) {
    case FunctionKind::zero:
      return false;
    case FunctionKind::indicator:
      return n.scale != 0.0 && n.set.contains(u);
    case FunctionKind::bump:
      return n.amplitude != 0.0 && std::norm(u - n.center) < n.radius * n.radius;
    case FunctionKind::combination:
      for (const auto& [c, f] : n.terms) {
        if (c != 0.0 && f.maybe_nonzero(u)) return true;
      }
      return false;
    case FunctionKind::custom:
      return !n.support || std::abs(u) < *n.support;
  }
  return true;
}

std::optional<double> SectorFunction::support_radius(const Sector& sector) const {
  const Node& n = *node_;
  std::optional<double> base;
  switch (n.kind) {
    case FunctionKind::zero:
      base = 0.0;
      break;
    case FunctionKind::indicator:
      base = n.set.max_radius();
      break;
    case FunctionKind::bump:
      base = std::abs(n.center) + n.radius;
      break;
    case FunctionKind::custom:
      base = n.support;
      break;
    case FunctionKind::combination: {
      double m = 0.0;
      for (const auto& [c, f] : n.terms) {
        const auto r = f.support_radius(sector);
        if (!r) return std::nullopt;
        m = std::max(m, *r);
      }
      base = m;
      break;
    }
  }
  if (!base || offset_ == Complex{}) return base;
  // |s + tau|^2 >= |s|^2 + |tau|^2 when the angle between s and tau is at
  // most pi/2; otherwise |s + tau| >= max(|s|, |tau|) sin(2 alpha).
  const double tau = std::abs(offset_);
  if (sector.alpha() <= std::numbers::pi / 4) {
    return tau >= *base ? 0.0 : std::sqrt((*base - tau) * (*base + tau));
  }
  const double c = std::sin(2.0 * sector.alpha());
  if (tau * c >= *base) return 0.0;
  return *base / c;
}

SectorFunction translate_function(const SectorFunction& f, const Sector& sector, SectorPoint t) {
  if (!sector.contains(t.z())) throw DomainError("translation must be by a point of the sector");
  return SectorFunction(f.node_, f.offset_ + t.z());
}

namespace {

ArcIntegrand make_integrand(const LpSpace& space, const SectorFunction& f) {
  ArcIntegrand in;
  f.collect_boundaries(in.circles, in.rays);
  const double p = space.p;
  const Weight& v = space.weight;
  if (p == 1.0) {
    in.value = [&f, &v](Complex s) {
      const double a = std::abs(f(s));
      return a == 0.0 ? 0.0 : a * v.sample(s);
    };
  } else if (p == 2.0) {
    in.value = [&f, &v](Complex s) {
      const double a = f(s);
      return a == 0.0 ? 0.0 : a * a * v.sample(s);
    };
  } else {
    in.value = [&f, &v, p](Complex s) {
      const double a = std::abs(f(s));
      return a == 0.0 ? 0.0 : std::pow(a, p) * v.sample(s);
    };
  }
  in.active = [&f](Complex s) { return f.maybe_nonzero(s); };
  return in;
}

}  // namespace

NormResult lp_norm(const LpSpace& space, const SectorFunction& f, double R,
                   const QuadratureOptions& quad, Execution exec) {
  if (!(R > 0.0) || !std::isfinite(R)) throw DomainError("norm truncation needs 0 < R < inf");
  NormResult out;
  out.R = R;
  if (f.kind() == FunctionKind::zero) return out;

  const double alpha = space.sector.alpha();
  const auto support = f.support_radius(space.sector);
  const ArcIntegrand in = make_integrand(space, f);

  if (support && *support <= R) {
    if (*support <= 0.0) return out;
    const auto res = integrate_polar(in, 0.0, *support, -alpha, alpha, quad, exec);
    out.value = std::pow(res.value, 1.0 / space.p);
    out.quadrature_error = res.error_estimate;
    return out;
  }

  // Unbounded (or larger than R) support: integrate [0, R - w] in one go and
  // the last unit annuli separately to classify the remainder.
  const int last_units = static_cast<int>(std::min(10.0, std::floor(R)));
  const double split = R - last_units;
  double total = 0.0, err = 0.0;
  if (split > 0.0) {
    const auto head = integrate_polar(in, 0.0, split, -alpha, alpha, quad, exec);
    total += head.value;
    err += head.error_estimate;
  }
  std::vector<double> idx, inc;
  for (int k = 0; k < last_units; ++k) {
    const double lo = split + k;
    const auto piece = integrate_polar(in, lo, lo + 1.0, -alpha, alpha, quad, exec);
    total += piece.value;
    err += piece.error_estimate;
    idx.push_back(std::max(lo, 1.0));
    inc.push_back(piece.value);
  }
  if (split + last_units < R) {
    const auto rest = integrate_polar(in, split + last_units, R, -alpha, alpha, quad, exec);
    total += rest.value;
    err += rest.error_estimate;
  }
  out.value = std::pow(total, 1.0 / space.p);
  out.quadrature_error = err;

  if (!support) {
    const TrendFit trend = classify_increments(idx, inc);
    if (trend.verdict == SeriesVerdict::divergent_trend) {
      throw NotInSpaceError("function is not in L^p_v: the weighted tail does not decay");
    }
    out.tail_known = trend.tail.has_value();
    out.tail = trend.tail.value_or(0.0);
  } else {
    // Support radius beyond R: the remainder is finite but not bounded here.
    out.tail_known = false;
  }
  return out;
}

double orbit_norm(const LpSpace& space, const SectorFunction& f, SectorPoint t, double R,
                  const QuadratureOptions& quad) {
  return lp_norm(space, translate_function(f, space.sector, t), R, quad).value;
}

}  // namespace sectorlab
