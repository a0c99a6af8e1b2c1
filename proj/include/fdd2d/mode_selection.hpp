#pragma once

#include "fdd2d/config.hpp"

namespace fdd2d {

struct ModeStats {
  double P_d = 0.0;
  double P_e = 0.0;
  double P_FD = 0.0;
  double U_d = 0.0;
  double U_e = 0.0;
  double O_p = 0.0;
};

/// Shared closed form of the f-D2D and r-D2D activity probabilities.
/// `k` is the Rayleigh rate of the distance to the nearest BS (pi lambda for the
/// f-D2D UE, b for the r-D2D UE), `rho` the target receive power of the link.
double d2d_activity_probability(const NetworkConfig& cfg, double k, double rho);

double prob_f_d2d(const NetworkConfig& cfg);
double prob_r_d2d(const NetworkConfig& cfg);
/// Same as prob_r_d2d() with the Rayleigh rate of r_e supplied.
double prob_r_d2d(const NetworkConfig& cfg, double b);

/// Probability that both directions of a pair transmit. Integrates the exact
/// joint condition over r_e ~ Rayleigh(b), with the f-D2D side conditioned on the
/// pair's common r_d.
double prob_fd_pair(const NetworkConfig& cfg);
double prob_fd_pair(const NetworkConfig& cfg, double b);

/// The integral exactly as printed with the q-dot atom correction. Disagrees with
/// simulation once T_d is large; kept for comparison only.
double prob_fd_pair_printed(const NetworkConfig& cfg, double b);

ModeStats mode_stats(const NetworkConfig& cfg);
ModeStats mode_stats(const NetworkConfig& cfg, double b);

}  // namespace fdd2d
