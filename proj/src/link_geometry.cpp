#include "fdd2d/link_geometry.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <tuple>

#include "fdd2d/errors.hpp"

namespace fdd2d::geometry {

using numerics::kPi;
using numerics::lower_incomplete_gamma;

double pdf_rc(double x, double lambda) {
  if (x < 0.0) return 0.0;
  return 2.0 * kPi * lambda * x * std::exp(-kPi * lambda * x * x);
}

double cdf_rc(double x, double lambda) {
  if (x <= 0.0) return 0.0;
  return -std::expm1(-kPi * lambda * x * x);
}

double pdf_rd(double x, double R_bar, double omega) {
  if (x < 0.0 || x > R_bar) throw DomainError("pdf_rd: x outside [0, R_bar]");
  // pow(0, negative) is +inf, which is the right limit for omega > 1
  return (2.0 - omega) * std::pow(x, 1.0 - omega) / std::pow(R_bar, 2.0 - omega);
}

double cdf_rd(double x, double R_bar, double omega) {
  if (x <= 0.0) return 0.0;
  if (x >= R_bar) return 1.0;
  return std::pow(x / R_bar, 2.0 - omega);
}

double quantile_rd(double u, double R_bar, double omega) {
  return R_bar * std::pow(u, 1.0 / (2.0 - omega));
}

double mean_rd(double R_bar, double omega) { return (2.0 - omega) / (3.0 - omega) * R_bar; }

double crescent_term(double r_c, double r_d, double theta) {
  const double rc2sq = std::max(0.0, r_c * r_c + r_d * r_d - 2.0 * r_c * r_d * std::cos(theta));
  const double rc2 = std::sqrt(rc2sq);
  if (r_d <= 0.0 || rc2 <= 0.0) return 0.0;
  const double arg = std::clamp((rc2sq + r_d * r_d - r_c * r_c) / (2.0 * rc2 * r_d), -1.0, 1.0);
  const double phi = kPi - std::acos(arg);
  return rc2sq * (phi - std::sin(2.0 * phi) / 2.0) -
         r_c * r_c * (theta - std::sin(2.0 * theta) / 2.0);
}

namespace {

double crescent_area_uncached(double lambda, double R_bar, double omega) {
  // u = pi lambda r_c^2 and v = (r_d / R)^(2 - w) turn both densities into
  // e^-u du and dv.
  numerics::QuadratureSpec inner;
  inner.relative_tolerance = 1e-9;
  inner.absolute_tolerance = 0.0;
  inner.max_subdivisions = 400;
  numerics::QuadratureSpec outer = inner;
  outer.relative_tolerance = 1e-8;

  auto over_theta = [&](double r_c, double r_d) {
    // near-cancelling terms when r_c ~ r_d: judge the error on the area scale
    numerics::QuadratureSpec q = inner;
    q.absolute_tolerance = 1e-11 * (r_c * r_c + r_d * r_d);
    return numerics::integrate([&](double t) { return crescent_term(r_c, r_d, t); }, 0.0, kPi,
                               q) /
           kPi;
  };
  auto over_v = [&](double u) {
    const double r_c = std::sqrt(u / (kPi * lambda));
    return numerics::integrate(
        [&](double v) { return over_theta(r_c, R_bar * std::pow(v, 1.0 / (2.0 - omega))); },
        0.0, 1.0, inner);
  };
  return numerics::integrate([&](double u) { return std::exp(-u) * over_v(u); }, 0.0,
                             numerics::kInf, outer);
}

std::mutex g_cache_mutex;
std::map<std::tuple<double, double, double>, double> g_cache;

}  // namespace

double crescent_area(double lambda, double R_bar, double omega) {
  if (!(lambda > 0.0) || !(R_bar > 0.0) || omega < 0.0 || omega >= 2.0)
    throw DomainError("crescent_area: invalid lambda, R_bar or omega");
  const auto key = std::make_tuple(lambda, R_bar, omega);
  {
    std::lock_guard lock(g_cache_mutex);
    if (auto it = g_cache.find(key); it != g_cache.end()) return it->second;
  }
  const double A = crescent_area_uncached(lambda, R_bar, omega);
  std::lock_guard lock(g_cache_mutex);
  g_cache.emplace(key, A);
  return A;
}

double crescent_area(const NetworkConfig& cfg) {
  return crescent_area(cfg.lambda, cfg.R_bar(), cfg.omega);
}

Prop1Intermediates prop1_intermediates_with_area(double lambda, double R, double w, double A) {
  Prop1Intermediates p;
  const double pl = kPi * lambda;
  const double x = pl * R * R;
  const double Rw = std::pow(R, 2.0 - w);
  const double g2 = lower_incomplete_gamma((2.0 - w) / 2.0, x);
  const double g3 = lower_incomplete_gamma((3.0 - w) / 2.0, x);
  const double g5 = lower_incomplete_gamma((5.0 - w) / 2.0, x);

  p.A = A;
  p.P_re_neq_rc2 = -std::expm1(-lambda * A);
  p.P_rc_gt_rd = (2.0 - w) / (2.0 * Rw) * std::pow(pl, (w - 2.0) / 2.0) * g2;
  const double Pgt = p.P_rc_gt_rd;
  p.mu_rc2 = std::sqrt(1.0 / (4.0 * lambda) + std::pow(mean_rd(R, w), 2));

  p.E_rd_given_rc_gt_rd = g3 / g2 / std::sqrt(pl);
  p.E_rc_given_rc_gt_rd =
      4.0 * std::pow(pl, (4.0 - w) / 2.0) / ((2.0 - w) * g2) *
      (g5 / (2.0 * std::pow(pl, (5.0 - w) / 2.0)) +
       Rw * (std::erfc(R * std::sqrt(pl)) / (4.0 * kPi * std::pow(lambda, 1.5)) +
             R * std::exp(-x) / (2.0 * kPi * lambda)));
  p.E_rd_given_rc_lt_rd =
      (2.0 - w) / (1.0 - Pgt) *
      (R / (3.0 - w) - std::pow(pl, (w - 3.0) / 2.0) / (2.0 * Rw) * g3);
  p.E_rc_given_rc_lt_rd =
      (std::erf(std::sqrt(pl) * R) / (2.0 * std::sqrt(lambda)) - R * std::exp(-x)) / (1.0 - Pgt) -
      g5 / (std::pow(pl, (3.0 - w) / 2.0) * Rw * (1.0 - Pgt));

  p.mu_rc2_given_rc_gt_rd = std::hypot(p.E_rc_given_rc_gt_rd, p.E_rd_given_rc_gt_rd);
  p.mu_rc2_given_rc_lt_rd = std::hypot(p.E_rc_given_rc_lt_rd, p.E_rd_given_rc_lt_rd);

  const double outside =
      (p.mu_rc2_given_rc_gt_rd + p.E_rc_given_rc_gt_rd - p.E_rd_given_rc_gt_rd) / 2.0;
  const double inside =
      (p.mu_rc2_given_rc_lt_rd + p.E_rd_given_rc_lt_rd - p.E_rc_given_rc_lt_rd) / 4.0;
  p.mu_re = (1.0 - p.P_re_neq_rc2) * p.mu_rc2 +
            p.P_re_neq_rc2 * (Pgt * outside + (1.0 - Pgt) * inside);
  return p;
}

Prop1Intermediates prop1_intermediates(const NetworkConfig& cfg) {
  const double A = crescent_area(cfg);
  return prop1_intermediates_with_area(cfg.lambda, cfg.R_bar(), cfg.omega, A);
}

double rayleigh_rate_from_mean(double mu) {
  if (!(mu > 0.0)) throw DomainError("rayleigh_rate_from_mean: mean must be positive");
  return kPi / (4.0 * mu * mu);
}

double pdf_re(double x, double b) {
  if (x < 0.0) return 0.0;
  return 2.0 * b * x * std::exp(-b * x * x);
}

double cdf_re(double x, double b) {
  if (x <= 0.0) return 0.0;
  return -std::expm1(-b * x * x);
}

}  // namespace fdd2d::geometry
