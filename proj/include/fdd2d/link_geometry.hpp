#pragma once

#include "fdd2d/config.hpp"
#include "fdd2d/numerics.hpp"

namespace fdd2d::geometry {

struct Prop1Intermediates {
  double P_re_neq_rc2 = 0.0;
  double A = 0.0;
  double P_rc_gt_rd = 0.0;
  double mu_rc2 = 0.0;
  double mu_rc2_given_rc_gt_rd = 0.0;
  double mu_rc2_given_rc_lt_rd = 0.0;
  double E_rd_given_rc_gt_rd = 0.0;
  double E_rc_given_rc_gt_rd = 0.0;
  double E_rd_given_rc_lt_rd = 0.0;
  double E_rc_given_rc_lt_rd = 0.0;
  double mu_re = 0.0;
};

// Nearest-BS distance of a typical UE (Rayleigh, rate pi*lambda).
double pdf_rc(double x, double lambda);
double cdf_rc(double x, double lambda);

// D2D link distance, density (2-w) x^(1-w) / R^(2-w) on [0, R].
double pdf_rd(double x, double R_bar, double omega);
double cdf_rd(double x, double R_bar, double omega);
double quantile_rd(double u, double R_bar, double omega);
double mean_rd(double R_bar, double omega);

/// Area term of one crescent configuration (r_c, r_d, angle between them).
double crescent_term(double r_c, double r_d, double theta);

/// Mean crescent area over r_c, r_d and the uniform angle. Cached.
double crescent_area(const NetworkConfig& cfg);
double crescent_area(double lambda, double R_bar, double omega);

Prop1Intermediates prop1_intermediates(const NetworkConfig& cfg);
/// Same closed forms but with the crescent area supplied (A = 0 collapses mu_re to mu_rc2).
Prop1Intermediates prop1_intermediates_with_area(double lambda, double R_bar, double omega,
                                                 double A);

/// Rayleigh rate of r_e matched to mean mu: pi / (4 mu^2).
double rayleigh_rate_from_mean(double mu);
double pdf_re(double x, double b);
double cdf_re(double x, double b);

}  // namespace fdd2d::geometry
