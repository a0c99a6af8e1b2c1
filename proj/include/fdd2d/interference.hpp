#pragma once

#include <array>

#include "fdd2d/config.hpp"
#include "fdd2d/mode_selection.hpp"
#include "fdd2d/power_stats.hpp"

namespace fdd2d {

/// Laplace transform of the aggregate interference from transmitters of mode
/// kappa at a receiver of mode chi (a BS for chi = c, a D2D UE otherwise).
///
/// At a BS every interferer is IP-protected: its received mean power is at most
/// rho_c (cellular) or T_d rho_c (D2D), which gives the 2F1 exclusion form.
/// D2D receivers see unbounded PPP interference.
double lt_interference(Mode kappa, Mode chi, const NetworkConfig& cfg, const ModeStats& stats,
                       const PowerSet& powers, double s);

/// Arctan form of the BS-side transform, valid for eta_c = 4 only.
double lt_interference_eta4(Mode kappa, const NetworkConfig& cfg, const ModeStats& stats,
                            const PowerSet& powers, double s);

/// BS-side transform with the exclusion region removed (for bounding checks).
double lt_interference_unprotected(Mode kappa, const NetworkConfig& cfg, const ModeStats& stats,
                                   const PowerSet& powers, double s);

/// Intensity of active transmitters in mode kappa: lambda, U_d, U_e.
double transmitter_intensity(Mode kappa, const NetworkConfig& cfg, const ModeStats& stats);

/// Whether interferers of mode kappa exist in a scenario (HD has no r-D2D,
/// Traditional has no D2D at all).
bool interferer_in_scenario(Mode kappa, Scenario s);

/// All nine transforms of one configuration with the fractional moments cached.
class LtTable {
 public:
  LtTable(const NetworkConfig& cfg, const ModeStats& stats, const PowerSet& powers,
          Scenario scenario);

  Scenario scenario() const { return scenario_; }

  /// L_{I_kappa chi}(s); exactly 1 if kappa is filtered out by the scenario.
  double lt(Mode kappa, Mode chi, double s) const;
  /// Product over all interferer classes present in the scenario.
  double product(Mode chi, double s) const;

 private:
  double exponent(Mode kappa, Mode chi, double s) const;

  NetworkConfig cfg_;
  Scenario scenario_;
  std::array<double, 3> U_{};
  std::array<double, 3> m_c_{};  // E[P^(2/eta_c)]
  std::array<double, 3> m_d_{};  // E[P^(2/eta_d)]
};

}  // namespace fdd2d
