// fdd2d: parameter sweeps and the validation report from the command line.
#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include "fdd2d/config.hpp"
#include "fdd2d/errors.hpp"
#include "fdd2d/sweep.hpp"
#include "fdd2d/validate.hpp"

namespace {

enum Exit { kOk = 0, kConfig = 1, kNumerical = 2, kIo = 3, kChecksFailed = 4 };

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep))
    if (!item.empty()) out.push_back(item);
  return out;
}

double to_double(const std::string& t) {
  size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(t, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != t.size()) throw fdd2d::ConfigError("values: cannot parse '" + t + "'");
  return v;
}

// "1,2,3", "lin:a:b:n" or "log:a:b:n"
std::vector<double> parse_values(const std::string& text) {
  std::vector<double> v;
  if (text.rfind("lin:", 0) == 0 || text.rfind("log:", 0) == 0) {
    auto p = split(text.substr(4), ':');
    if (p.size() != 3) throw fdd2d::ConfigError("values: expected lin:a:b:n or log:a:b:n");
    const double a = to_double(p[0]), b = to_double(p[1]);
    const int n = static_cast<int>(to_double(p[2]));
    if (n < 2) throw fdd2d::ConfigError("values: need n >= 2");
    const bool lg = text[1] == 'o';
    if (lg && !(a > 0.0 && b > 0.0)) throw fdd2d::ConfigError("values: log range must be positive");
    for (int i = 0; i < n; ++i) {
      const double t = static_cast<double>(i) / (n - 1);
      v.push_back(lg ? std::pow(10.0, std::log10(a) + t * (std::log10(b) - std::log10(a)))
                     : a + t * (b - a));
    }
    return v;
  }
  for (const auto& t : split(text, ',')) v.push_back(to_double(t));
  return v;
}

void write_file(const std::string& path, const std::vector<fdd2d::SweepRow>& rows, bool bits) {
  std::ostringstream os;
  fdd2d::write_csv(os, rows, bits);
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::ios_base::failure("cannot open '" + path + "' for writing");
  f << os.str();
  if (!f) throw std::ios_base::failure("write to '" + path + "' failed");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Full-duplex D2D underlay network analysis and simulation"};
  app.require_subcommand(1);

  std::string config_path;
  std::uint64_t seed = 1;
  fdd2d::SimOptions sim;

  auto* sw = app.add_subcommand("sweep", "Run a parameter sweep and write CSV");
  std::string sweep_name = "custom", var = "theta", values, scenarios = "FD", engine = "analytic",
              out;
  double theta_db = 0.0;
  bool bits = false;
  sw->add_option("--config", config_path, "Config file (defaults to the baseline network)");
  sw->add_option("--sweep", sweep_name, "Preset name (fig4 ... fig13) or custom");
  sw->add_option("--var", var, "theta, T_d, r1, r2, zeta or omega");
  sw->add_option("--values", values, "Comma list, lin:a:b:n or log:a:b:n (theta in dB)");
  sw->add_option("--scenarios", scenarios, "Comma list of FD, HD, Traditional");
  sw->add_option("--engine", engine, "analytic, simulate or both");
  sw->add_option("--seed", seed, "Master seed");
  sw->add_option("--out", out, "Output CSV (stdout if omitted); presets append series suffixes");
  sw->add_option("--theta-db", theta_db, "SINR threshold for non-theta sweeps");
  sw->add_option("--realizations", sim.realizations, "Simulated snapshots per point");
  sw->add_option("--area-km2", sim.area_km2, "Simulation torus area");
  sw->add_option("--probes", sim.probes_per_mode, "Probe receivers per mode and snapshot (-1: all)");
  sw->add_option("--threads", sim.threads, "Worker threads for the simulator");
  sw->add_flag("--bits", bits, "Report rates in bits instead of nats");

  auto* va = app.add_subcommand("validate", "Cross-check closed forms and the simulator");
  fdd2d::ValidationOptions vopt;
  va->add_option("--config", config_path, "Config file (defaults to the baseline network)");
  va->add_option("--seed", vopt.seed, "Master seed");
  va->add_option("--realizations", vopt.realizations, "Simulated snapshots");
  va->add_option("--area-km2", vopt.area_km2, "Simulation torus area");
  va->add_option("--probes", vopt.probes, "Probe receivers per mode and snapshot (-1: all)");
  va->add_option("--threads", vopt.threads, "Worker threads");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kConfig;
  }

  try {
    fdd2d::NetworkConfig cfg =
        config_path.empty() ? fdd2d::NetworkConfig::table3() : fdd2d::load_config(config_path);
    for (const auto& w : cfg.warnings()) std::cerr << "warning: " << w << '\n';

    if (*va) {
      const auto rep = fdd2d::validate(cfg, vopt);
      std::cout << rep.to_text();
      return rep.all_passed() ? kOk : kChecksFailed;
    }

    sim.seed = seed;
    const auto eng = fdd2d::parse_engine(engine);
    if (sweep_name != "custom") {
      const auto series = fdd2d::preset(sweep_name, cfg, sim, eng);
      if (out.empty() && series.size() > 1)
        throw fdd2d::ConfigError("out: preset '" + sweep_name + "' has several series, give --out");
      for (const auto& s : series) {
        const auto rows = fdd2d::run_sweep(s.cfg, s.spec);
        if (out.empty())
          fdd2d::write_csv(std::cout, rows, bits);
        else
          write_file(fdd2d::series_path(out, s.suffix), rows, bits);
      }
      return kOk;
    }

    fdd2d::SweepSpec spec;
    spec.variable = fdd2d::parse_variable(var);
    spec.values = parse_values(values);
    spec.scenarios.clear();
    for (const auto& s : split(scenarios, ',')) spec.scenarios.push_back(fdd2d::parse_scenario(s));
    spec.engine = eng;
    spec.output_path = out;
    spec.theta_db = theta_db;
    spec.sim = sim;
    const auto rows = fdd2d::run_sweep(cfg, spec);
    if (out.empty())
      fdd2d::write_csv(std::cout, rows, bits);
    else
      write_file(out, rows, bits);
    return kOk;
  } catch (const fdd2d::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfig;
  } catch (const fdd2d::DomainError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfig;
  } catch (const fdd2d::NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << '\n';
    return kNumerical;
  } catch (const std::ios_base::failure& e) {
    std::cerr << "i/o error: " << e.what() << '\n';
    return kIo;
  }
}
