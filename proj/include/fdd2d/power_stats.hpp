#pragma once

#include "fdd2d/config.hpp"

namespace fdd2d {

/// Transmit-power law of one mode under truncated channel inversion.
///
/// All three modes share the form
///   f(x) = (2/eta_c) k^a x^(p-1) exp(-k (x/S)^(2/eta_c)) / (S^p gamma(a, u)),  0 < x <= x_max
/// with a = p eta_c / 2 and u = k (x_max/S)^(2/eta_c):
///   cellular  p = 2/eta_c,         k = pi lambda, S = rho_c
///   f-D2D     p = (2-omega)/eta_d, k = pi lambda, S = T_d rho_c
///   r-D2D     p = (2-omega)/eta_d, k = b,         S = T_d rho_c
/// With T_d = 0 a D2D law degenerates to a point mass at 0.
class PowerLaw {
 public:
  PowerLaw(Mode mode, double p, double k, double S, double eta_c, double x_max);

  Mode mode() const { return mode_; }
  double x_max() const { return x_max_; }
  bool degenerate() const { return degenerate_; }

  double pdf(double x) const;
  double cdf(double x) const;
  /// E[P^alpha], alpha >= 0.
  double moment(double alpha) const;
  /// E[exp(-s P)], s >= 0, by quadrature.
  double laplace(double s) const;

 private:
  Mode mode_;
  double p_, k_, S_, eta_c_, x_max_;
  double a_ = 0.0, u_ = 0.0, gamma_au_ = 0.0;
  bool degenerate_ = false;
};

PowerLaw power_law(Mode mode, const NetworkConfig& cfg);

/// The three laws of one configuration, indexable by mode.
struct PowerSet {
  PowerLaw c, d, e;
  const PowerLaw& operator[](Mode m) const {
    return m == Mode::Cellular ? c : (m == Mode::ForwardD2D ? d : e);
  }
};
PowerSet power_set(const NetworkConfig& cfg, double b);
/// Uses the supplied r_e rate instead of recomputing it.
PowerLaw power_law(Mode mode, const NetworkConfig& cfg, double b);

/// E[exp(-s zeta P_mode)] for the residual self-interference of an FD pair.
/// Exactly 1 when zeta = 0 or s = 0. Cellular mode has no SI and is rejected.
double si_laplace(Mode mode, const NetworkConfig& cfg, double s);
double si_laplace(const PowerLaw& law, double zeta, double s);

}  // namespace fdd2d
