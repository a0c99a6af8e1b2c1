#pragma once

#include <array>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace fdd2d {

enum class Mode { Cellular, ForwardD2D, ReverseD2D };
enum class Scenario { FD, HD, Traditional };

inline constexpr std::array<Mode, 3> kAllModes = {Mode::Cellular, Mode::ForwardD2D,
                                                  Mode::ReverseD2D};
inline constexpr std::array<Scenario, 3> kAllScenarios = {Scenario::FD, Scenario::HD,
                                                          Scenario::Traditional};

inline constexpr int index(Mode m) { return static_cast<int>(m); }

// "c", "d", "e"
std::string_view to_string(Mode m);
// "FD", "HD", "Traditional"
std::string_view to_string(Scenario s);
Mode parse_mode(std::string_view text);
Scenario parse_scenario(std::string_view text);

/// Modes that carry traffic in a scenario: FD {c,d,e}, HD {c,d}, Traditional {c}.
bool mode_in_scenario(Mode m, Scenario s);

double dbm_to_watt(double dbm);
double watt_to_dbm(double watt);

/// Network parameters, SI units throughout (W, m, per m^2).
struct NetworkConfig {
  double lambda = 10e-6;    // BS intensity
  double lambda_c = 100e-6; // cellular UEs
  double lambda_d = 100e-6; // D2D pairs
  double P_u = 0.2;
  double rho_min = 1e-12;
  double rho_c = 1e-11;
  double r1 = 1.0;          // rho_c / rho_d
  double r2 = 1.0;          // rho_d / rho_e
  double T_d = 0.2;
  double eta_c = 4.0;
  double eta_d = 4.0;
  double omega = 1.0;
  double zeta = 0.0;
  double sigma2 = 1e-12;

  /// Defaults of the reference parameter table (r1 = r2 = 1, T_d = 0.2, zeta = 0).
  static NetworkConfig table3();

  /// Throws ConfigError naming the first offending field.
  void validate() const;

  /// Soft warnings (currently: lambda_c below 5 lambda).
  std::vector<std::string> warnings() const;

  double rho_d() const { return rho_c / r1; }
  double rho_e() const { return rho_d() / r2; }
  double rho(Mode m) const;
  double R_bar() const;
  double truncation_outage() const;

  /// Largest admissible transmit power of mode m: min(P_u, R_bar^eta_d rho_m) for D2D,
  /// P_u for cellular.
  double power_cap(Mode m) const;

  bool operator==(const NetworkConfig&) const = default;
};

struct DerivedConstants {
  double rho_d = 0.0;
  double rho_e = 0.0;
  double R_bar = 0.0;
  double O_p = 0.0;
  double mu_re = 0.0;
  double b = 0.0;
};

/// Validates cfg and fills every derived constant. mu_re comes from the
/// crescent-area approximation, whose quadrature is cached per (lambda, R_bar, omega).
DerivedConstants derive(const NetworkConfig& cfg);

/// key=value text, '#' starts a comment. Keys (all required):
/// lambda_bs_per_km2 lambda_c_per_km2 lambda_d_per_km2 p_u_dbm rho_min_dbm rho_c_dbm
/// r1 r2 t_d eta_c eta_d omega zeta sigma2_dbm
NetworkConfig parse_config(std::string_view text);
NetworkConfig load_config(const std::string& path);
std::string format_config(const NetworkConfig& cfg);

}  // namespace fdd2d
