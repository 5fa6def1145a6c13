#include "sectorlab/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <tuple>

#include <boost/math/quadrature/gauss.hpp>

#include "sectorlab/errors.hpp"

namespace sectorlab {
namespace {

struct Rule {
  std::array<double, 16> x;
  std::array<double, 16> w;
};

const Rule& gl16() {
  static const Rule rule = [] {
    using G = boost::math::quadrature::gauss<double, 16>;
    const auto& abscissa = G::abscissa();
    const auto& weights = G::weights();
    Rule r{};
    for (std::size_t i = 0; i < abscissa.size(); ++i) {
      r.x[2 * i] = -abscissa[i];
      r.w[2 * i] = weights[i];
      r.x[2 * i + 1] = abscissa[i];
      r.w[2 * i + 1] = weights[i];
    }
    return r;
  }();
  return rule;
}

template <class F>
double gl(const F& g, double a, double b) {
  const Rule& rule = gl16();
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  double s = 0.0;
  for (std::size_t i = 0; i < 16; ++i) s += rule.w[i] * g(mid + half * rule.x[i]);
  return half * s;
}

// Absolute tolerance floor: integrands that underflow stop refining.
constexpr double kTolFloor = 1e-300;
constexpr double kNoise = 50.0 * std::numeric_limits<double>::epsilon();

template <class F>
double adaptive(const F& g, double a, double b, double whole, double tol, int depth,
                double& err) {
  const double m = 0.5 * (a + b);
  const double left = gl(g, a, m);
  const double right = gl(g, m, b);
  const double refined = left + right;
  const double diff = std::abs(refined - whole);
  // Below the rounding floor the two estimates agree as well as they can.
  const double noise = kNoise * (std::abs(left) + std::abs(right));
  if (diff <= std::max(tol, noise) || depth <= 0 || !(m > a && b > m)) {
    err += diff;
    return refined;
  }
  return adaptive(g, a, m, left, 0.5 * tol, depth - 1, err) +
         adaptive(g, m, b, right, 0.5 * tol, depth - 1, err);
}

// Relative-tolerance adaptive rule for a nonnegative integrand.
template <class F>
double adaptive_relative(const F& g, double a, double b, double rel_tol, int depth,
                         double abs_floor = kTolFloor) {
  const double whole = gl(g, a, b);
  double err = 0.0;
  const double m = 0.5 * (a + b);
  const double left = gl(g, a, m);
  const double right = gl(g, m, b);
  const double refined = left + right;
  const double tol = std::max(rel_tol * std::abs(refined), abs_floor);
  const double noise = kNoise * (std::abs(left) + std::abs(right));
  if (std::abs(refined - whole) <= std::max(tol, noise) || depth <= 0) return refined;
  return adaptive(g, a, m, left, 0.5 * tol, depth - 1, err) +
         adaptive(g, m, b, right, 0.5 * tol, depth - 1, err);
}

double wrap_angle(double a) {
  constexpr double two_pi = 2.0 * 3.14159265358979323846;
  while (a > 3.14159265358979323846) a -= two_pi;
  while (a <= -3.14159265358979323846) a += two_pi;
  return a;
}

// Nonnegative roots of lambda^2 + 2 b lambda + c = 0.
int positive_roots(double b, double c, double out[2]) {
  const double disc = b * b - c;
  if (disc < 0.0) return 0;
  const double sq = std::sqrt(disc);
  int n = 0;
  // Stable pair: q = -b - sign(b) sq, roots q and c / q.
  double r1, r2;
  if (b > 0.0) {
    r1 = -b - sq;
    r2 = (r1 != 0.0) ? c / r1 : -b + sq;
  } else {
    r2 = -b + sq;
    r1 = (r2 != 0.0) ? c / r2 : -b - sq;
  }
  if (r1 >= 0.0) out[n++] = r1;
  if (r2 >= 0.0 && (n == 0 || r2 != out[0])) out[n++] = r2;
  return n;
}

Complex unit(double angle) { return {std::cos(angle), std::sin(angle)}; }

template <class Out>
void circle_circle(const Circle& a, const Circle& b, Out&& emit) {
  const Complex dvec = b.center - a.center;
  const double d = std::abs(dvec);
  if (d == 0.0) return;
  if (d > a.radius + b.radius || d < std::abs(a.radius - b.radius)) return;
  const double along = (a.radius * a.radius - b.radius * b.radius + d * d) / (2.0 * d);
  const double h = std::sqrt(std::max(0.0, a.radius * a.radius - along * along));
  const Complex e = dvec / d;
  const Complex base = a.center + along * e;
  emit(base + h * Complex(-e.imag(), e.real()));
  emit(base - h * Complex(-e.imag(), e.real()));
}

template <class Out>
void circle_ray(const Circle& c, const Ray& r, Out&& emit) {
  const Complex dir = unit(r.angle);
  const Complex rel = r.origin - c.center;
  const double b = (rel * std::conj(dir)).real();
  const double cc = std::norm(rel) - c.radius * c.radius;
  double roots[2];
  const int n = positive_roots(b, cc, roots);
  for (int i = 0; i < n; ++i) emit(r.origin + roots[i] * dir);
}

template <class Out>
void ray_ray(const Ray& a, const Ray& b, Out&& emit) {
  const double cb = std::cos(a.angle), sb = std::sin(a.angle);
  const double cg = std::cos(b.angle), sg = std::sin(b.angle);
  const double det = std::sin(a.angle - b.angle);
  if (std::abs(det) < 1e-14) return;
  const Complex o = b.origin - a.origin;
  // a.origin + lambda e_a = b.origin + mu e_b.
  const double lambda = (cg * o.imag() - sg * o.real()) / det;
  const double mu = (cb * o.imag() - sb * o.real()) / det;
  if (lambda >= 0.0 && mu >= 0.0) emit(a.origin + lambda * unit(a.angle));
}

template <class T>
std::vector<T> dedupe(std::vector<T> v) {
  std::vector<T> out;
  out.reserve(v.size());
  for (const auto& item : v) {
    if (std::find(out.begin(), out.end(), item) == out.end()) out.push_back(item);
  }
  return out;
}

}  // namespace

double gauss_legendre_16(const std::function<double(double)>& g, double a, double b) {
  return gl(g, a, b);
}

double integrate_1d(const std::function<double(double)>& g, double a, double b, double rel_tol,
                    int max_depth) {
  return adaptive_relative(g, a, b, rel_tol, max_depth);
}

namespace detail {

std::vector<double> crossing_angles(const std::vector<Circle>& circles,
                                    const std::vector<Ray>& rays, double rho, double phi_lo,
                                    double phi_hi) {
  std::vector<double> out;
  auto keep = [&](double a) {
    a = wrap_angle(a);
    if (a > phi_lo && a < phi_hi) out.push_back(a);
  };
  for (const auto& c : circles) {
    const double d = std::abs(c.center);
    if (d == 0.0) continue;
    const double cosv = (rho * rho + d * d - c.radius * c.radius) / (2.0 * rho * d);
    if (cosv > 1.0 || cosv < -1.0) continue;
    const double base = std::arg(c.center);
    const double spread = std::acos(cosv);
    keep(base + spread);
    if (spread > 0.0) keep(base - spread);
  }
  for (const auto& r : rays) {
    const Complex dir = unit(r.angle);
    const double b = (r.origin * std::conj(dir)).real();
    const double cc = std::norm(r.origin) - rho * rho;
    double roots[2];
    const int n = positive_roots(b, cc, roots);
    for (int i = 0; i < n; ++i) {
      const Complex p = r.origin + roots[i] * dir;
      if (p != Complex{}) keep(std::arg(p));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<double> radial_breakpoints(const std::vector<Circle>& circles_in,
                                       const std::vector<Ray>& rays_in, double rho_lo,
                                       double rho_hi, double phi_lo, double phi_hi) {
  const auto circles = dedupe(circles_in);
  const auto rays = dedupe(rays_in);
  std::vector<double> pts{rho_lo, rho_hi};
  auto add = [&](double r) {
    if (r > rho_lo && r < rho_hi) pts.push_back(r);
  };
  auto add_point = [&](Complex z) {
    if (z == Complex{}) return;
    const double a = std::arg(z);
    if (a >= phi_lo - 1e-9 && a <= phi_hi + 1e-9) add(std::abs(z));
  };
  const std::array<Ray, 2> edges{Ray{{0.0, 0.0}, phi_lo}, Ray{{0.0, 0.0}, phi_hi}};

  for (const auto& c : circles) {
    const double d = std::abs(c.center);
    if (d == 0.0) {
      add(c.radius);
      continue;
    }
    add(std::abs(d - c.radius));
    add(d + c.radius);
    for (const auto& e : edges) circle_ray(c, e, add_point);
  }
  for (const auto& r : rays) {
    add(std::abs(r.origin));
    const double b = (r.origin * std::conj(unit(r.angle))).real();
    if (-b > 0.0) add(std::sqrt(std::max(0.0, std::norm(r.origin) - b * b)));
    for (const auto& e : edges) ray_ray(r, e, add_point);
  }
  for (std::size_t i = 0; i < circles.size(); ++i) {
    for (std::size_t j = i + 1; j < circles.size(); ++j) {
      circle_circle(circles[i], circles[j], add_point);
    }
    for (const auto& r : rays) circle_ray(circles[i], r, add_point);
  }
  for (std::size_t i = 0; i < rays.size(); ++i) {
    for (std::size_t j = i + 1; j < rays.size(); ++j) ray_ray(rays[i], rays[j], add_point);
  }
  std::sort(pts.begin(), pts.end());
  std::vector<double> out;
  for (double r : pts) {
    if (out.empty() || r - out.back() > 1e-12 * (1.0 + r)) out.push_back(r);
  }
  if (out.back() != rho_hi) out.back() = rho_hi;
  return out;
}

}  // namespace detail

QuadratureResult integrate_polar(const ArcIntegrand& integrand, double rho_lo, double rho_hi,
                                 double phi_lo, double phi_hi, const QuadratureOptions& options,
                                 Execution exec) {
  if (!(rho_lo >= 0.0) || !(rho_hi >= rho_lo) || !std::isfinite(rho_hi)) {
    throw DomainError("polar integration needs 0 <= rho_lo <= rho_hi < inf");
  }
  if (!(phi_hi > phi_lo)) throw DomainError("polar integration needs phi_lo < phi_hi");
  if (!integrand.value) throw DomainError("polar integration needs an integrand");
  if (rho_hi == rho_lo) return {};

  auto breaks = detail::radial_breakpoints(integrand.circles, integrand.rays, rho_lo, rho_hi,
                                           phi_lo, phi_hi);
  // Cap panel width.
  std::vector<double> edges;
  const double w = options.max_panel_width;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    const double a = breaks[i], b = breaks[i + 1];
    edges.push_back(a);
    if (w > 0.0) {
      for (double k = std::floor(a / w) + 1.0; k * w < b; k += 1.0) {
        if (k * w - a > 1e-12 * (1.0 + a) && b - k * w > 1e-12 * (1.0 + b)) {
          edges.push_back(k * w);
        }
      }
    }
  }
  edges.push_back(breaks.back());

  const auto circles = dedupe(integrand.circles);
  const auto rays = dedupe(integrand.rays);

  // Tiny arcs near tangencies can carry rounding noise far above rel_tol of
  // their own value, so angular pieces also get an absolute floor scaled by
  // the whole integral (from a loose pilot pass).
  double floor_per_rho = kTolFloor;
  auto inner_with = [&](double rho, double rel, double floor) {
    auto angles = detail::crossing_angles(circles, rays, rho, phi_lo, phi_hi);
    const double abs_floor = std::max(floor / std::max(rho, 1e-300), kTolFloor) /
                             static_cast<double>(angles.size() + 1);
    double prev = phi_lo;
    double sum = 0.0;
    auto piece = [&](double a, double b) {
      if (!(b - a > 1e-15)) return;
      if (integrand.active && !integrand.active(std::polar(rho, 0.5 * (a + b)))) return;
      auto g = [&](double phi) { return integrand.value(std::polar(rho, phi)); };
      sum += adaptive_relative(g, a, b, rel, options.max_depth, abs_floor);
    };
    for (double a : angles) {
      piece(prev, a);
      prev = a;
    }
    piece(prev, phi_hi);
    return rho * sum;
  };
  auto inner = [&](double rho) { return inner_with(rho, options.rel_tol, floor_per_rho); };

  // Panel i in the variable u in [-1, 1], rho = m + h (3u - u^3) / 2. The
  // angular limits behave like sqrt(rho - rho_k) next to a breakpoint; the
  // substitution makes them smooth in u.
  auto mapped = [&](std::size_t i) {
    const double m = 0.5 * (edges[i] + edges[i + 1]);
    const double h = 0.5 * (edges[i + 1] - edges[i]);
    return [&inner, m, h](double u) {
      return inner(m + h * 0.5 * u * (3.0 - u * u)) * h * 1.5 * (1.0 - u * u);
    };
  };
  const std::size_t panels = edges.size() - 1;
  const double span = rho_hi - rho_lo;
  {
    const double pilot_tol = std::max(1e-6, options.rel_tol);
    auto pilot = detail::map_indexed<double>(panels, exec, [&](std::size_t i) {
      const double m = 0.5 * (edges[i] + edges[i + 1]);
      const double h = 0.5 * (edges[i + 1] - edges[i]);
      auto g = [&](double u) {
        return inner_with(m + h * 0.5 * u * (3.0 - u * u), pilot_tol, kTolFloor) * h * 1.5 *
               (1.0 - u * u);
      };
      return std::abs(gl(g, -1.0, 1.0));
    });
    floor_per_rho = 0.01 * options.rel_tol * detail::pairwise_sum(pilot) / span;
  }
  auto coarse = detail::map_indexed<double>(
      panels, exec, [&](std::size_t i) { return gl(mapped(i), -1.0, 1.0); });
  double scale = 0.0;
  for (double c : coarse) scale += std::abs(c);

  struct Panel {
    double value;
    double err;
  };
  auto refined = detail::map_indexed<Panel>(panels, exec, [&](std::size_t i) {
    const double a = edges[i], b = edges[i + 1];
    const double tol = std::max(options.rel_tol * scale * (b - a) / span, kTolFloor);
    double err = 0.0;
    const double v = adaptive(mapped(i), -1.0, 1.0, coarse[i], tol, options.max_depth, err);
    return Panel{v, err};
  });

  std::vector<double> values(panels), errs(panels);
  for (std::size_t i = 0; i < panels; ++i) {
    values[i] = refined[i].value;
    errs[i] = refined[i].err;
  }
  return {detail::pairwise_sum(values), detail::pairwise_sum(errs)};
}

QuadratureResult integrate_polar_rect(const std::function<double(Complex)>& f, double r_lo,
                                      double r_hi, double th_lo, double th_hi,
                                      const QuadratureOptions& options) {
  ArcIntegrand integrand;
  integrand.value = f;
  return integrate_polar(integrand, r_lo, r_hi, th_lo, th_hi, options);
}

}  // namespace sectorlab
