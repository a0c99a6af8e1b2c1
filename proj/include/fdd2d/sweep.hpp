#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "fdd2d/config.hpp"

namespace fdd2d {

enum class Variable { theta, T_d, r1, r2, zeta, omega };
enum class Engine { analytic, simulate, both };

std::string_view to_string(Variable v);
std::string_view to_string(Engine e);
Variable parse_variable(std::string_view text);
Engine parse_engine(std::string_view text);

struct SimOptions {
  double area_km2 = 100.0;
  int realizations = 2000;
  int probes_per_mode = -1;
  int threads = 1;
  std::uint64_t seed = 1;
};

struct SweepSpec {
  Variable variable = Variable::theta;
  /// theta values are in dB; everything else is linear.
  std::vector<double> values;
  std::vector<Scenario> scenarios = {Scenario::FD};
  Engine engine = Engine::analytic;
  std::string output_path;
  /// SINR threshold in dB for sweeps over anything but theta.
  double theta_db = 0.0;
  SimOptions sim;

  /// Throws ConfigError when values are empty or not strictly increasing.
  void validate() const;
};

/// One CSV line. Non-applicable numbers are NaN and print as empty fields.
struct SweepRow {
  Variable variable = Variable::theta;
  double value = 0.0;
  Scenario scenario = Scenario::FD;
  Mode mode = Mode::Cellular;
  Engine engine = Engine::analytic;
  double outage = 0.0;
  double rate_nats = 0.0;
  double T_avg = 0.0;
  double P_avg_W = 0.0;
  double T_n = 0.0;
  double O_net = 0.0;
  double stderr_ = 0.0;
  double truncation_outage = 0.0;
};

/// Apply one sweep variable to a configuration (theta is not a config field).
NetworkConfig with_variable(NetworkConfig cfg, Variable v, double value);

std::vector<SweepRow> run_sweep(const NetworkConfig& base, const SweepSpec& spec);

/// Header plus rows; rates are converted to bits when `bits` is set (the
/// column keeps its name).
void write_csv(std::ostream& out, const std::vector<SweepRow>& rows, bool bits = false);
std::string format_number(double v);

struct PresetSeries {
  std::string suffix;   // appended to the output file stem, may be empty
  NetworkConfig cfg;
  SweepSpec spec;
};

std::vector<std::string> preset_names();
/// Series behind one of the named presets (fig4 ... fig13).
std::vector<PresetSeries> preset(std::string_view name, const NetworkConfig& base,
                                 const SimOptions& sim, Engine engine);

/// "out.csv" + "r2_0.5" -> "out_r2_0.5.csv"
std::string series_path(const std::string& path, const std::string& suffix);

}  // namespace fdd2d
