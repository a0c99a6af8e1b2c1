#pragma once
// Reference values computed from first principles with Boost quadrature and
// plain Monte Carlo. Nothing here calls the library's own integrator.

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <vector>

#include "fdd2d/config.hpp"

namespace oracle {

inline constexpr double pi = 3.14159265358979323846;

inline double quad(const std::function<double(double)>& f, double a, double b) {
  if (!(b > a)) return 0.0;
  static boost::math::quadrature::tanh_sinh<double> ts(15);
  return ts.integrate(f, a, b, 1e-13);
}

inline double quad_inf(const std::function<double(double)>& f, double a) {
  static boost::math::quadrature::exp_sinh<double> es(12);
  return es.integrate([&](double x) { return f(a + x); }, 0.0,
                      std::numeric_limits<double>::infinity(), 1e-13);
}

// integral over [a, b] split at interior points
inline double quad_split(const std::function<double(double)>& f, double a, double b,
                         std::vector<double> cuts) {
  cuts.push_back(a);
  cuts.push_back(b);
  std::sort(cuts.begin(), cuts.end());
  double s = 0.0;
  for (size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double lo = std::max(a, cuts[i]), hi = std::min(b, cuts[i + 1]);
    if (hi > lo) s += quad(f, lo, hi);
  }
  return s;
}

inline double rd_density(double r, double R, double w) {
  return (2.0 - w) * std::pow(r, 1.0 - w) / std::pow(R, 2.0 - w);
}

// P(Rayleigh(k) distance to the nearest BS passes the IP check for received
// target rho at link distance r), zero beyond the power cap
inline double ip_pass(const fdd2d::NetworkConfig& c, double r, double k, double rho) {
  const double x = std::pow(r, c.eta_d) * rho;
  if (x > c.P_u || c.T_d == 0.0) return 0.0;
  return std::exp(-k * std::pow(x / (c.T_d * c.rho_c), 2.0 / c.eta_c));
}

inline double r_cut(const fdd2d::NetworkConfig& c, double rho) {
  return std::pow(c.P_u / rho, 1.0 / c.eta_d);
}

// P(f-side and/or r-side active) by integrating the selection conditions over r_d
inline double activity(const fdd2d::NetworkConfig& c, double b, bool f, bool e) {
  const double R = c.R_bar();
  auto g = [&](double r) {
    double v = rd_density(r, R, c.omega);
    if (f) v *= ip_pass(c, r, pi * c.lambda, c.rho_d());
    if (e) v *= ip_pass(c, r, b, c.rho_e());
    return v;
  };
  return quad_split(g, 0.0, R, {r_cut(c, c.rho_d()), r_cut(c, c.rho_e())});
}

// E[h(P)] of an active transmitter in a mode, P = r^eta rho under channel inversion
inline double power_expectation(const fdd2d::NetworkConfig& c, fdd2d::Mode m, double b,
                                const std::function<double(double)>& h) {
  using fdd2d::Mode;
  if (m == Mode::Cellular) {
    const double rmax = std::pow(c.P_u / c.rho_c, 1.0 / c.eta_c);
    const double k = pi * c.lambda;
    auto pdf = [&](double r) { return 2.0 * k * r * std::exp(-k * r * r); };
    const double num = quad([&](double r) { return h(std::pow(r, c.eta_c) * c.rho_c) * pdf(r); },
                            0.0, rmax);
    const double den = quad(pdf, 0.0, rmax);
    return num / den;
  }
  const double rho = m == Mode::ForwardD2D ? c.rho_d() : c.rho_e();
  const double k = m == Mode::ForwardD2D ? pi * c.lambda : b;
  const double R = c.R_bar();
  const double top = std::min(R, r_cut(c, rho));
  auto w = [&](double r) { return rd_density(r, R, c.omega) * ip_pass(c, r, k, rho); };
  const double num =
      quad([&](double r) { return h(std::pow(r, c.eta_d) * rho) * w(r); }, 0.0, top);
  return num / quad(w, 0.0, top);
}

inline double power_moment(const fdd2d::NetworkConfig& c, fdd2d::Mode m, double b, double a) {
  return power_expectation(c, m, b, [a](double x) { return std::pow(x, a); });
}

// -ln E[exp(-s I)] for a PPP of intensity U whose points are at least at
// distance (P / theta)^(1/eta) (theta <= 0 means no exclusion), per unit
// E[P^(2/eta)].
inline double lt_kernel(double s, double eta, double theta) {
  auto f = [&](double u) { return 2.0 * pi * s * std::pow(u, 1.0 - eta) / (1.0 + s * std::pow(u, -eta)); };
  if (theta > 0.0) return quad_inf(f, std::pow(theta, -1.0 / eta));
  // no exclusion: u^(1-eta)/(1+s u^-eta) = u/(u^eta + s), fine at 0
  auto g = [&](double u) { return 2.0 * pi * s * u / (std::pow(u, eta) + s); };
  const double knee = std::pow(s, 1.0 / eta);
  return quad(g, 0.0, knee) + quad_inf(g, knee);
}

// Rayleigh(k) samples
inline double sample_rayleigh(std::mt19937_64& g, double k) {
  std::exponential_distribution<double> e(1.0);
  return std::sqrt(e(g) / k);
}

}  // namespace oracle
