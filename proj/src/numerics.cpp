#include "fdd2d/numerics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <queue>
#include <string>
#include <vector>

#include <boost/math/special_functions/gamma.hpp>

#include "fdd2d/errors.hpp"

namespace fdd2d::numerics {

namespace {

// 15-point Kronrod abscissae on [0,1] half of [-1,1]; odd entries are the
// embedded 7-point Gauss nodes.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double a, b, value, error;
  bool operator<(const Panel& o) const { return error < o.error; }
};

Panel gk15(const Integrand& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  const double fc = f(c);
  double kron = fc * kWgk[7];
  double gauss = fc * kWg[3];
  for (int j = 0; j < 7; ++j) {
    const double dx = h * kXgk[j];
    const double f1 = f(c - dx);
    const double f2 = f(c + dx);
    if (!std::isfinite(f1) || !std::isfinite(f2))
      throw NumericalError("integrand is not finite at x = " +
                           std::to_string(std::isfinite(f1) ? c + dx : c - dx));
    kron += kWgk[j] * (f1 + f2);
    if (j % 2 == 1) gauss += kWg[j / 2] * (f1 + f2);
  }
  if (!std::isfinite(fc))
    throw NumericalError("integrand is not finite at x = " + std::to_string(c));
  return {a, b, kron * h, std::abs((kron - gauss) * h)};
}

std::pair<double, double> adaptive_finite(const Integrand& f, double a, double b,
                                          const QuadratureSpec& spec) {
  std::priority_queue<Panel> heap;
  Panel first = gk15(f, a, b);
  double total = first.value;
  double err = first.error;
  heap.push(first);
  auto done = [&] {
    return err <= std::max(spec.absolute_tolerance,
                           spec.relative_tolerance * std::abs(total));
  };
  int splits = 0;
  while (!done()) {
    if (splits >= spec.max_subdivisions) {
      throw NumericalError("quadrature did not converge on [" + std::to_string(a) + ", " +
                           std::to_string(b) + "] after " + std::to_string(splits) +
                           " subdivisions (error estimate " + std::to_string(err) + ")");
    }
    Panel worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) {
      // Cannot bisect further in double precision; accept what we have.
      heap.push(worst);
      break;
    }
    Panel l = gk15(f, worst.a, mid);
    Panel r = gk15(f, mid, worst.b);
    total += l.value + r.value - worst.value;
    err += l.error + r.error - worst.error;
    heap.push(l);
    heap.push(r);
    ++splits;
  }
  // resum to shed accumulated cancellation in the running totals
  total = 0.0;
  err = 0.0;
  while (!heap.empty()) {
    total += heap.top().value;
    err += heap.top().error;
    heap.pop();
  }
  return {total, err};
}

}  // namespace

void QuadratureSpec::validate() const {
  if (!(relative_tolerance > 0.0))
    throw DomainError("relative_tolerance must be > 0");
  if (!(absolute_tolerance >= 0.0))
    throw DomainError("absolute_tolerance must be >= 0");
  if (max_subdivisions < 1) throw DomainError("max_subdivisions must be >= 1");
}

std::pair<double, double> integrate_with_error(const Integrand& f, double lower,
                                               double upper, const QuadratureSpec& spec,
                                               double tail_scale) {
  spec.validate();
  if (std::isnan(lower) || std::isnan(upper) || !std::isfinite(lower))
    throw DomainError("integration limits must be finite (upper may be +inf)");
  if (upper == lower) return {0.0, 0.0};
  if (upper < lower) {
    auto [v, e] = integrate_with_error(f, upper, lower, spec, tail_scale);
    return {-v, e};
  }
  if (std::isfinite(upper)) return adaptive_finite(f, lower, upper, spec);

  if (!(tail_scale > 0.0) || !std::isfinite(tail_scale))
    throw DomainError("tail_scale must be positive");

  if (spec.infinite_tail_cutoff_policy == TailPolicy::transform_to_finite) {
    Integrand g = [&](double t) {
      const double one_minus = 1.0 - t;
      const double x = lower + tail_scale * t / one_minus;
      if (!std::isfinite(x)) return 0.0;
      const double v = f(x);
      return v == 0.0 ? 0.0 : v * tail_scale / (one_minus * one_minus);
    };
    return adaptive_finite(g, 0.0, 1.0, spec);
  }

  // adaptive truncation: panels of doubling width until two in a row are negligible
  double total = 0.0, err = 0.0;
  double a = lower, width = tail_scale;
  int quiet = 0;
  for (int k = 0; k < 200 && quiet < 2; ++k) {
    auto [v, e] = adaptive_finite(f, a, a + width, spec);
    total += v;
    err += e;
    const bool small = std::abs(v) <= std::max(spec.absolute_tolerance,
                                               spec.relative_tolerance * std::abs(total));
    quiet = small ? quiet + 1 : 0;
    a += width;
    width *= 2.0;
  }
  if (quiet < 2) throw NumericalError("infinite-range integral: tail did not decay");
  return {total, err};
}

double integrate(const Integrand& f, double lower, double upper, const QuadratureSpec& spec,
                 double tail_scale) {
  return integrate_with_error(f, lower, upper, spec, tail_scale).first;
}

double lower_incomplete_gamma(double m, double n) {
  if (!(m > 0.0)) throw DomainError("lower_incomplete_gamma: m must be > 0");
  if (!(n >= 0.0)) throw DomainError("lower_incomplete_gamma: n must be >= 0");
  if (n == 0.0) return 0.0;
  if (std::isinf(n)) return std::tgamma(m);
  return boost::math::tgamma_lower(m, n);
}

double upper_incomplete_gamma(double m, double n) {
  if (!(m > 0.0)) throw DomainError("upper_incomplete_gamma: m must be > 0");
  if (!(n >= 0.0)) throw DomainError("upper_incomplete_gamma: n must be >= 0");
  if (n == 0.0) return std::tgamma(m);
  if (std::isinf(n)) return 0.0;
  return boost::math::tgamma(m, n);
}

std::pair<double, double> erf_erfc(double x) { return {std::erf(x), std::erfc(x)}; }

namespace {

bool nonpositive_integer(double x) { return x <= 0.0 && x == std::floor(x); }

// 1/Gamma(x), zero at the poles
double rgamma(double x) { return nonpositive_integer(x) ? 0.0 : 1.0 / std::tgamma(x); }

double series_2f1(double a, double b, double c, double z, long max_terms) {
  double term = 1.0, sum = 1.0;
  for (long k = 0; k < max_terms; ++k) {
    term *= (a + k) * (b + k) / ((c + k) * (k + 1.0)) * z;
    sum += term;
    if (term == 0.0) return sum;
    if (std::abs(term) <= 1e-17 * std::abs(sum) && k > 2) return sum;
  }
  throw NumericalError("2F1 series did not converge (z = " + std::to_string(z) + ")");
}

}  // namespace

double gauss_2f1(double a, double b, double c, double z) {
  if (nonpositive_integer(c)) throw DomainError("gauss_2f1: c is a nonpositive integer");
  if (std::isnan(z) || z > 0.0) throw DomainError("gauss_2f1: requires z <= 0");
  if (z == 0.0) return 1.0;
  if (z >= -0.5) return series_2f1(a, b, c, z, 10000);

  const double w = z / (z - 1.0);  // Pfaff
  const double d = a - b;
  if (z >= -2.0 || d == std::floor(d)) {
    return std::pow(1.0 - z, -a) * series_2f1(a, c - b, c, w, 2000000);
  }

  // connection formula with argument 1/(1-z) in (0, 1/3)
  const double y = 1.0 / (1.0 - z);
  const double gc = std::tgamma(c);
  const double t1 = gc * std::tgamma(b - a) * rgamma(b) * rgamma(c - a);
  const double t2 = gc * std::tgamma(a - b) * rgamma(a) * rgamma(c - b);
  double out = 0.0;
  if (t1 != 0.0) out += t1 * std::pow(y, a) * series_2f1(a, c - b, a - b + 1.0, y, 10000);
  if (t2 != 0.0) out += t2 * std::pow(y, b) * series_2f1(b, c - a, b - a + 1.0, y, 10000);
  return out;
}

}  // namespace fdd2d::numerics
