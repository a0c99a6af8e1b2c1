#include "fdd2d/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "fdd2d/errors.hpp"
#include "fdd2d/link_geometry.hpp"
#include "fdd2d/numerics.hpp"

namespace fdd2d {

std::string_view to_string(Mode m) {
  switch (m) {
    case Mode::Cellular: return "c";
    case Mode::ForwardD2D: return "d";
    case Mode::ReverseD2D: return "e";
  }
  return "?";
}

std::string_view to_string(Scenario s) {
  switch (s) {
    case Scenario::FD: return "FD";
    case Scenario::HD: return "HD";
    case Scenario::Traditional: return "Traditional";
  }
  return "?";
}

Mode parse_mode(std::string_view t) {
  if (t == "c" || t == "cellular") return Mode::Cellular;
  if (t == "d" || t == "f-d2d") return Mode::ForwardD2D;
  if (t == "e" || t == "r-d2d") return Mode::ReverseD2D;
  throw ConfigError("unknown mode '" + std::string(t) + "'");
}

Scenario parse_scenario(std::string_view t) {
  if (t == "FD" || t == "fd") return Scenario::FD;
  if (t == "HD" || t == "hd") return Scenario::HD;
  if (t == "Traditional" || t == "traditional" || t == "trad") return Scenario::Traditional;
  throw ConfigError("unknown scenario '" + std::string(t) + "'");
}

bool mode_in_scenario(Mode m, Scenario s) {
  switch (s) {
    case Scenario::FD: return true;
    case Scenario::HD: return m != Mode::ReverseD2D;
    case Scenario::Traditional: return m == Mode::Cellular;
  }
  return false;
}

double dbm_to_watt(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }
double watt_to_dbm(double watt) { return 10.0 * std::log10(watt) + 30.0; }

NetworkConfig NetworkConfig::table3() {
  NetworkConfig c;
  c.lambda = 10e-6;
  c.lambda_c = 100e-6;
  c.lambda_d = 100e-6;
  c.P_u = 0.2;
  c.rho_min = dbm_to_watt(-90.0);
  c.rho_c = dbm_to_watt(-80.0);
  c.r1 = 1.0;
  c.r2 = 1.0;
  c.T_d = 0.2;
  c.eta_c = 4.0;
  c.eta_d = 4.0;
  c.omega = 1.0;
  c.zeta = 0.0;
  c.sigma2 = dbm_to_watt(-90.0);
  return c;
}

namespace {
void require(bool ok, const char* field, const std::string& why) {
  if (!ok) throw ConfigError(std::string(field) + ": " + why);
}
bool finite_pos(double x) { return std::isfinite(x) && x > 0.0; }
}  // namespace

void NetworkConfig::validate() const {
  require(finite_pos(lambda), "lambda_bs", "must be a positive finite intensity");
  require(finite_pos(lambda_c), "lambda_c", "must be a positive finite intensity");
  require(std::isfinite(lambda_d) && lambda_d >= 0.0, "lambda_d", "must be >= 0");
  require(lambda_c >= lambda, "lambda_c", "must be at least the BS intensity");
  require(finite_pos(P_u), "p_u", "must be positive");
  require(finite_pos(rho_min), "rho_min", "must be positive");
  require(finite_pos(rho_c), "rho_c", "must be positive");
  require(rho_min <= rho_c, "rho_min", "must not exceed rho_c");
  require(rho_c <= P_u, "rho_c", "must not exceed p_u");
  require(finite_pos(r1), "r1", "must be positive");
  require(finite_pos(r2), "r2", "must be positive");
  require(std::isfinite(T_d) && T_d >= 0.0, "t_d", "must be >= 0");
  require(std::isfinite(eta_c) && eta_c > 2.0, "eta_c",
          "must exceed 2 (aggregate interference diverges otherwise)");
  require(std::isfinite(eta_d) && eta_d > 2.0, "eta_d",
          "must exceed 2 (aggregate interference diverges otherwise)");
  require(omega >= 0.0 && omega < 2.0, "omega", "must lie in [0, 2)");
  require(zeta >= 0.0 && zeta <= 1.0, "zeta", "must lie in [0, 1]");
  require(std::isfinite(sigma2) && sigma2 >= 0.0, "sigma2", "must be >= 0");
}

std::vector<std::string> NetworkConfig::warnings() const {
  std::vector<std::string> out;
  if (lambda_c < 5.0 * lambda)
    out.push_back("lambda_c is below 5x the BS intensity; the full-load cellular model is "
                  "a poor fit");
  return out;
}

double NetworkConfig::rho(Mode m) const {
  switch (m) {
    case Mode::Cellular: return rho_c;
    case Mode::ForwardD2D: return rho_d();
    case Mode::ReverseD2D: return rho_e();
  }
  return rho_c;
}

double NetworkConfig::R_bar() const { return std::pow(P_u / rho_min, 1.0 / eta_d); }

double NetworkConfig::truncation_outage() const {
  return std::exp(-numerics::kPi * lambda * std::pow(P_u / rho_c, 2.0 / eta_c));
}

double NetworkConfig::power_cap(Mode m) const {
  if (m == Mode::Cellular) return P_u;
  return std::min(P_u, std::pow(R_bar(), eta_d) * rho(m));
}

DerivedConstants derive(const NetworkConfig& cfg) {
  cfg.validate();
  DerivedConstants d;
  d.rho_d = cfg.rho_d();
  d.rho_e = cfg.rho_e();
  d.R_bar = cfg.R_bar();
  d.O_p = cfg.truncation_outage();
  d.mu_re = geometry::prop1_intermediates(cfg).mu_re;
  d.b = geometry::rayleigh_rate_from_mean(d.mu_re);
  return d;
}

// ---- file format ---------------------------------------------------------

namespace {

constexpr const char* kKeys[] = {"lambda_bs_per_km2", "lambda_c_per_km2", "lambda_d_per_km2",
                                 "p_u_dbm",           "rho_min_dbm",      "rho_c_dbm",
                                 "r1",                "r2",               "t_d",
                                 "eta_c",             "eta_d",            "omega",
                                 "zeta",              "sigma2_dbm"};

std::string_view trim(std::string_view s) {
  const auto ws = " \t\r\n";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

double parse_number(std::string_view key, std::string_view v, int line) {
  double x = 0.0;
  const auto* end = v.data() + v.size();
  auto [p, ec] = std::from_chars(v.data(), end, x);
  if (ec != std::errc() || p != end)
    throw ConfigError(std::string(key) + ": line " + std::to_string(line) + ": '" +
                      std::string(v) + "' is not a number");
  return x;
}

}  // namespace

NetworkConfig parse_config(std::string_view text) {
  std::map<std::string, double, std::less<>> kv;
  int lineno = 0;
  size_t pos = 0;
  while (pos <= text.size()) {
    size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = text.substr(pos, nl - pos);
    pos = nl + 1;
    ++lineno;
    if (auto h = line.find('#'); h != std::string_view::npos) line = line.substr(0, h);
    line = trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string_view::npos)
      throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
    auto key = trim(line.substr(0, eq));
    auto val = trim(line.substr(eq + 1));
    bool known = false;
    for (auto* k : kKeys) known = known || key == k;
    if (!known) throw ConfigError(std::string(key) + ": unknown key");
    if (kv.count(key)) throw ConfigError(std::string(key) + ": duplicate key");
    kv.emplace(std::string(key), parse_number(key, val, lineno));
  }
  for (auto* k : kKeys)
    if (!kv.count(k)) throw ConfigError(std::string(k) + ": missing key");

  NetworkConfig c;
  c.lambda = kv.at("lambda_bs_per_km2") * 1e-6;
  c.lambda_c = kv.at("lambda_c_per_km2") * 1e-6;
  c.lambda_d = kv.at("lambda_d_per_km2") * 1e-6;
  c.P_u = dbm_to_watt(kv.at("p_u_dbm"));
  c.rho_min = dbm_to_watt(kv.at("rho_min_dbm"));
  c.rho_c = dbm_to_watt(kv.at("rho_c_dbm"));
  c.r1 = kv.at("r1");
  c.r2 = kv.at("r2");
  c.T_d = kv.at("t_d");
  c.eta_c = kv.at("eta_c");
  c.eta_d = kv.at("eta_d");
  c.omega = kv.at("omega");
  c.zeta = kv.at("zeta");
  c.sigma2 = dbm_to_watt(kv.at("sigma2_dbm"));
  c.validate();
  return c;
}

NetworkConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::ios_base::failure("cannot open config file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string format_config(const NetworkConfig& c) {
  std::ostringstream o;
  o.precision(17);
  o << "lambda_bs_per_km2 = " << c.lambda * 1e6 << '\n'
    << "lambda_c_per_km2 = " << c.lambda_c * 1e6 << '\n'
    << "lambda_d_per_km2 = " << c.lambda_d * 1e6 << '\n'
    << "p_u_dbm = " << watt_to_dbm(c.P_u) << '\n'
    << "rho_min_dbm = " << watt_to_dbm(c.rho_min) << '\n'
    << "rho_c_dbm = " << watt_to_dbm(c.rho_c) << '\n'
    << "r1 = " << c.r1 << '\n'
    << "r2 = " << c.r2 << '\n'
    << "t_d = " << c.T_d << '\n'
    << "eta_c = " << c.eta_c << '\n'
    << "eta_d = " << c.eta_d << '\n'
    << "omega = " << c.omega << '\n'
    << "zeta = " << c.zeta << '\n'
    << "sigma2_dbm = " << watt_to_dbm(c.sigma2) << '\n';
  return o.str();
}

}  // namespace fdd2d
