#include "fdd2d/mode_selection.hpp"

#include <algorithm>
#include <cmath>

#include "fdd2d/errors.hpp"
#include "fdd2d/link_geometry.hpp"
#include "fdd2d/numerics.hpp"

namespace fdd2d {

using numerics::kPi;
using numerics::lower_incomplete_gamma;

namespace {

double shape_a(const NetworkConfig& c) { return (2.0 - c.omega) * c.eta_c / (2.0 * c.eta_d); }

// P(r_d^eta_d <= x and r_d^eta_d rho <= T_d r^eta_c rho_c) for r ~ Rayleigh(k),
// x already capped at R_bar^eta_d.
double capped_activity(const NetworkConfig& c, double k, double rho, double x) {
  if (c.T_d == 0.0 || x <= 0.0) return 0.0;
  const double a = shape_a(c);
  const double pre = a / std::pow(c.R_bar(), 2.0 - c.omega) *
                     std::pow(c.T_d * c.rho_c / (std::pow(k, c.eta_c / 2.0) * rho),
                              (2.0 - c.omega) / c.eta_d);
  const double upper = k * std::pow(x * rho / (c.T_d * c.rho_c), 2.0 / c.eta_c);
  return pre * lower_incomplete_gamma(a, upper);
}

double d2d_cap(const NetworkConfig& c, double rho) {
  return std::min(c.P_u / rho, std::pow(c.R_bar(), c.eta_d));
}

}  // namespace

double d2d_activity_probability(const NetworkConfig& c, double k, double rho) {
  return capped_activity(c, k, rho, d2d_cap(c, rho));
}

double prob_f_d2d(const NetworkConfig& c) {
  c.validate();
  return d2d_activity_probability(c, kPi * c.lambda, c.rho_d());
}

double prob_r_d2d(const NetworkConfig& c, double b) {
  c.validate();
  return d2d_activity_probability(c, b, c.rho_e());
}

double prob_r_d2d(const NetworkConfig& c) { return prob_r_d2d(c, derive(c).b); }

double prob_fd_pair(const NetworkConfig& c, double b) {
  c.validate();
  if (c.T_d == 0.0) return 0.0;
  const double pl = kPi * c.lambda;
  const double rho_d = c.rho_d(), rho_e = c.rho_e();
  const double f_cap = d2d_cap(c, rho_d);

  // largest r_d^eta_d allowed on both sides given r_e = g
  auto x_of = [&](double g) {
    const double e_side = std::min(c.P_u, c.T_d * std::pow(g, c.eta_c) * c.rho_c) / rho_e;
    return std::min({e_side, f_cap, std::pow(c.R_bar(), c.eta_d)});
  };
  auto h = [&](double g) { return capped_activity(c, pl, rho_d, x_of(g)); };

  const double g_star = std::pow(c.P_u / (c.T_d * c.rho_c), 1.0 / c.eta_c);
  const double g_one = std::pow(rho_e * f_cap / (c.T_d * c.rho_c), 1.0 / c.eta_c);
  const double lo = std::min(g_star, g_one), hi = std::max(g_star, g_one);

  auto integrand = [&](double g) { return geometry::pdf_re(g, b) * h(g); };
  double total = numerics::integrate(integrand, 0.0, lo);
  if (hi > lo) total += numerics::integrate(integrand, lo, hi);
  // h is constant beyond the last kink
  total += h(hi) * (1.0 - geometry::cdf_re(hi, b));
  return total;
}

double prob_fd_pair(const NetworkConfig& c) { return prob_fd_pair(c, derive(c).b); }

double prob_fd_pair_printed(const NetworkConfig& c, double b) {
  c.validate();
  if (c.T_d == 0.0) return 0.0;
  const double pl = kPi * c.lambda;
  const double a = shape_a(c);
  const double w = c.omega;
  const double rho_d = c.rho_d(), rho_e = c.rho_e();
  const double qdot = std::exp(-pl * std::pow(c.P_u / (c.rho_c * c.T_d), 2.0 / c.eta_c));
  const double C = a * std::pow(c.T_d * c.rho_c / (rho_d * std::pow(pl, c.eta_c / 2.0)),
                                (2.0 - w) / c.eta_d);
  const double Rw = std::pow(c.R_bar(), 2.0 - w);
  auto integrand = [&](double g) {
    const double m = std::min(c.P_u, c.T_d * std::pow(g, c.eta_c) * c.rho_c);
    const double gam =
        lower_incomplete_gamma(a, pl * std::pow(m / (c.T_d * c.rho_c * rho_e / rho_d),
                                                2.0 / c.eta_c));
    return geometry::pdf_re(g, b) / Rw / (1.0 - qdot) *
           (gam * C - std::pow(m / rho_e, (2.0 - w) / c.eta_d) * qdot);
  };
  const double g_star = std::pow(c.P_u / (c.T_d * c.rho_c), 1.0 / c.eta_c);
  return numerics::integrate(integrand, 0.0, g_star) +
         numerics::integrate(integrand, g_star, numerics::kInf, {}, 1.0 / std::sqrt(b));
}

ModeStats mode_stats(const NetworkConfig& c, double b) {
  ModeStats s;
  s.O_p = c.truncation_outage();
  s.P_d = prob_f_d2d(c);
  s.P_e = prob_r_d2d(c, b);
  s.P_FD = std::min({prob_fd_pair(c, b), s.P_d, s.P_e});
  s.U_d = c.lambda_d * s.P_d;
  s.U_e = c.lambda_d * s.P_e;
  return s;
}

ModeStats mode_stats(const NetworkConfig& c) { return mode_stats(c, derive(c).b); }

}  // namespace fdd2d
