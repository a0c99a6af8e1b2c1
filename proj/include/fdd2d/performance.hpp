#pragma once

#include <array>
#include <optional>

#include "fdd2d/config.hpp"
#include "fdd2d/interference.hpp"
#include "fdd2d/mode_selection.hpp"
#include "fdd2d/power_stats.hpp"

namespace fdd2d {

struct SinrResult {
  Mode mode = Mode::Cellular;
  Scenario scenario = Scenario::FD;
  double theta = 0.0;
  double outage = 0.0;
  double success = 1.0;
  double rate_nats = 0.0;
};

struct ModeMetrics {
  bool present = false;
  double A = 0.0;
  double PUR = 0.0;
  double PCR = 0.0;
  double Lambda = 0.0;
  double Tx = 0.0;
  double rate_nats = 0.0;
  double outage = 0.0;  // SINR outage at the metrics threshold
};

struct ScenarioMetrics {
  Scenario scenario = Scenario::FD;
  double theta = 1.0;
  std::array<ModeMetrics, 3> modes{};
  double beta = 0.0;
  double T_avg = 0.0;
  double P_avg = 0.0;
  double T_n = 0.0;
  double O_net = 0.0;

  const ModeMetrics& operator[](Mode m) const { return modes[index(m)]; }
};

/// Everything the closed forms need for one configuration, computed once.
class Analysis {
 public:
  explicit Analysis(const NetworkConfig& cfg);

  const NetworkConfig& config() const { return cfg_; }
  const DerivedConstants& derived() const { return derived_; }
  const ModeStats& stats() const { return stats_; }
  const PowerSet& powers() const { return powers_; }
  const LtTable& lt_table(Scenario s) const { return tables_[static_cast<int>(s)]; }

  /// Success probability P(SINR > theta). D2D modes in the FD scenario mix the
  /// SI-affected (weight P_FD / P_mode) and SI-free cases.
  double success(Mode mode, Scenario scenario, double theta) const;

  /// Success with the interference-free part only (no SI mixing).
  double success_without_si(Mode mode, Scenario scenario, double theta) const;

  /// Ergodic rate in nats/s/Hz: integral over t >= 0 of success(e^t - 1).
  double ergodic_rate(Mode mode, Scenario scenario) const;

  /// Outage, success and rate in one result.
  SinrResult evaluate(Mode mode, Scenario scenario, double theta) const;

  ScenarioMetrics scenario_metrics(Scenario scenario, double theta = 1.0) const;

 private:
  void check(Mode mode, Scenario scenario, double theta) const;

  NetworkConfig cfg_;
  DerivedConstants derived_;
  ModeStats stats_;
  PowerSet powers_;
  std::array<LtTable, 3> tables_;
};

SinrResult success_probability(Mode mode, Scenario scenario, const NetworkConfig& cfg,
                               double theta, double zeta);
double ergodic_rate(Mode mode, Scenario scenario, const NetworkConfig& cfg, double zeta);
ScenarioMetrics scenario_metrics(Scenario scenario, const NetworkConfig& cfg, double zeta,
                                 double theta = 1.0);

}  // namespace fdd2d
