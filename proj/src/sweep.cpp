#include "fdd2d/sweep.hpp"

#include <charconv>
#include <cmath>
#include <limits>
#include <map>
#include <memory>
#include <ostream>

#include "fdd2d/errors.hpp"
#include "fdd2d/performance.hpp"
#include "fdd2d/simulator.hpp"

namespace fdd2d {

namespace {
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
}  // namespace

std::string_view to_string(Variable v) {
  switch (v) {
    case Variable::theta: return "theta";
    case Variable::T_d: return "T_d";
    case Variable::r1: return "r1";
    case Variable::r2: return "r2";
    case Variable::zeta: return "zeta";
    case Variable::omega: return "omega";
  }
  return "?";
}

std::string_view to_string(Engine e) {
  switch (e) {
    case Engine::analytic: return "analytic";
    case Engine::simulate: return "simulate";
    case Engine::both: return "both";
  }
  return "?";
}

Variable parse_variable(std::string_view t) {
  if (t == "theta") return Variable::theta;
  if (t == "T_d" || t == "t_d" || t == "Td") return Variable::T_d;
  if (t == "r1") return Variable::r1;
  if (t == "r2") return Variable::r2;
  if (t == "zeta") return Variable::zeta;
  if (t == "omega") return Variable::omega;
  throw ConfigError("unknown sweep variable '" + std::string(t) + "'");
}

Engine parse_engine(std::string_view t) {
  if (t == "analytic") return Engine::analytic;
  if (t == "simulate") return Engine::simulate;
  if (t == "both") return Engine::both;
  throw ConfigError("unknown engine '" + std::string(t) + "'");
}

void SweepSpec::validate() const {
  if (values.empty()) throw ConfigError("values: sweep needs at least one value");
  for (size_t i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i])) throw ConfigError("values: must be finite");
    if (i > 0 && !(values[i] > values[i - 1]))
      throw ConfigError("values: must be strictly increasing");
  }
  if (scenarios.empty()) throw ConfigError("scenarios: at least one scenario required");
  if (engine != Engine::analytic) {
    if (sim.realizations < 1) throw ConfigError("realizations: must be >= 1");
    if (!(sim.area_km2 > 0.0)) throw ConfigError("area: must be positive");
  }
}

NetworkConfig with_variable(NetworkConfig c, Variable v, double value) {
  switch (v) {
    case Variable::theta: break;
    case Variable::T_d: c.T_d = value; break;
    case Variable::r1: c.r1 = value; break;
    case Variable::r2: c.r2 = value; break;
    case Variable::zeta: c.zeta = value; break;
    case Variable::omega: c.omega = value; break;
  }
  c.validate();
  return c;
}

namespace {

double truncation(Mode m, const ModeStats& st) {
  switch (m) {
    case Mode::Cellular: return st.O_p;
    case Mode::ForwardD2D: return 1.0 - st.P_d;
    case Mode::ReverseD2D: return 1.0 - st.P_e;
  }
  return kNaN;
}

// Table-II bookkeeping on simulated quantities
struct EmpiricalMetrics {
  double T_avg = 0.0, P_avg = 0.0, T_n = 0.0, O_net = 0.0;
};

EmpiricalMetrics empirical_metrics(const NetworkConfig& c, const sim::EmpiricalStats& st,
                                   Scenario sc, double theta) {
  EmpiricalMetrics out;
  const double O_p = st.O_p().value;
  const double beta = c.lambda / ((1.0 - O_p) * c.lambda_c);
  double users = c.lambda_c;
  if (sc == Scenario::FD) users = 2.0 * c.lambda_d + c.lambda_c;
  if (sc == Scenario::HD) users = c.lambda_d + c.lambda_c;
  double lam_sum = 0.0, out_sum = 0.0, pcr = 0.0;
  for (Mode m : kAllModes) {
    if (!mode_in_scenario(m, sc)) continue;
    const auto rate_est = sim::empirical_rate(st, m);
    const auto out_est = sim::empirical_outage(st, c, m, theta);
    const double rate = std::isnan(rate_est.value) ? 0.0 : rate_est.value;
    const double o = std::isnan(out_est.value) ? 0.0 : out_est.value;
    if (m == Mode::Cellular) {
      const double A = c.lambda_c / users * (1.0 - O_p);
      out.T_avg += A * 0.5 * beta * rate;
      out.P_avg += A * beta * st.mean_power(m);
      pcr += rate;
      lam_sum += c.lambda;
      out_sum += c.lambda * o;
    } else {
      const double P = m == Mode::ForwardD2D ? st.P_d().value : st.P_e().value;
      const double U = c.lambda_d * P;
      const double A = c.lambda_d / users * P;
      out.T_avg += A * rate;
      out.P_avg += A * st.mean_power(m);
      pcr += U / c.lambda * rate;
      lam_sum += U;
      out_sum += U * o;
    }
  }
  out.T_n = c.lambda * pcr;
  out.O_net = lam_sum > 0.0 ? out_sum / lam_sum : 0.0;
  return out;
}

}  // namespace

std::vector<SweepRow> run_sweep(const NetworkConfig& base, const SweepSpec& spec) {
  spec.validate();
  base.validate();
  std::vector<SweepRow> rows;
  const bool analytic = spec.engine != Engine::simulate;
  const bool simulated = spec.engine != Engine::analytic;

  // simulations keyed by (config text, scenario) so a theta sweep simulates once
  std::map<std::pair<std::string, int>, std::shared_ptr<sim::EmpiricalStats>> sims;

  for (double value : spec.values) {
    const NetworkConfig cfg = with_variable(base, spec.variable, value);
    const double theta =
        db_to_linear(spec.variable == Variable::theta ? value : spec.theta_db);
    std::unique_ptr<Analysis> an;
    if (analytic || simulated) an = std::make_unique<Analysis>(cfg);

    for (Scenario sc : spec.scenarios) {
      if (analytic) {
        const auto met = an->scenario_metrics(sc, theta);
        for (Mode m : kAllModes) {
          if (!mode_in_scenario(m, sc)) continue;
          SweepRow r;
          r.variable = spec.variable;
          r.value = value;
          r.scenario = sc;
          r.mode = m;
          r.engine = Engine::analytic;
          r.outage = met[m].outage;
          r.rate_nats = met[m].rate_nats;
          r.T_avg = met.T_avg;
          r.P_avg_W = met.P_avg;
          r.T_n = met.T_n;
          r.O_net = met.O_net;
          r.stderr_ = kNaN;
          r.truncation_outage = truncation(m, an->stats());
          rows.push_back(r);
        }
      }
      if (simulated) {
        auto k = std::make_pair(format_config(cfg), static_cast<int>(sc));
        auto& slot = sims[k];
        if (!slot) {
          sim::SimulationSpec ss;
          ss.area_km2 = spec.sim.area_km2;
          ss.realizations = spec.sim.realizations;
          ss.seed = spec.sim.seed;
          ss.scenario = sc;
          ss.probes_per_mode = spec.sim.probes_per_mode;
          ss.threads = spec.sim.threads;
          ss.keep_samples = false;
          slot = std::make_shared<sim::EmpiricalStats>(sim::simulate(cfg, ss));
        }
        const auto& st = *slot;
        const auto em = empirical_metrics(cfg, st, sc, theta);
        for (Mode m : kAllModes) {
          if (!mode_in_scenario(m, sc)) continue;
          const auto o = sim::empirical_outage(st, cfg, m, theta);
          SweepRow r;
          r.variable = spec.variable;
          r.value = value;
          r.scenario = sc;
          r.mode = m;
          r.engine = Engine::simulate;
          r.outage = o.value;
          r.rate_nats = sim::empirical_rate(st, m).value;
          r.T_avg = em.T_avg;
          r.P_avg_W = em.P_avg;
          r.T_n = em.T_n;
          r.O_net = em.O_net;
          r.stderr_ = o.stderr_;
          switch (m) {
            case Mode::Cellular: r.truncation_outage = st.O_p().value; break;
            case Mode::ForwardD2D: r.truncation_outage = 1.0 - st.P_d().value; break;
            case Mode::ReverseD2D: r.truncation_outage = 1.0 - st.P_e().value; break;
          }
          rows.push_back(r);
        }
      }
    }
  }
  return rows;
}

std::string format_number(double v) {
  if (std::isnan(v)) return "";
  char buf[64];
  auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 10);
  if (ec != std::errc()) return "";
  return std::string(buf, p);
}

void write_csv(std::ostream& out, const std::vector<SweepRow>& rows, bool bits) {
  const double k = bits ? 1.0 / std::log(2.0) : 1.0;
  out << "variable,value,scenario,mode,engine,outage,rate_nats,T_avg,P_avg_W,T_n,O_net,stderr,"
         "truncation_outage\n";
  for (const auto& r : rows) {
    out << to_string(r.variable) << ',' << format_number(r.value) << ','
        << to_string(r.scenario) << ',' << to_string(r.mode) << ',' << to_string(r.engine)
        << ',' << format_number(r.outage) << ',' << format_number(r.rate_nats * k) << ','
        << format_number(r.T_avg * k) << ',' << format_number(r.P_avg_W) << ','
        << format_number(r.T_n * k) << ',' << format_number(r.O_net) << ','
        << format_number(r.stderr_) << ',' << format_number(r.truncation_outage) << '\n';
  }
}

// ---- presets ---------------------------------------------------------------

namespace {

std::vector<double> linspace(double a, double b, int n) {
  std::vector<double> v(n);
  for (int i = 0; i < n; ++i) v[i] = a + (b - a) * i / (n - 1);
  return v;
}

std::vector<double> logspace(double a, double b, int n) {
  auto e = linspace(std::log10(a), std::log10(b), n);
  for (auto& x : e) x = std::pow(10.0, x);
  return e;
}

const std::vector<Scenario> kAll = {Scenario::FD, Scenario::HD, Scenario::Traditional};

}  // namespace

std::vector<std::string> preset_names() {
  return {"fig4", "fig5", "fig6", "fig7", "fig8", "fig9", "fig10", "fig11", "fig12", "fig13"};
}

std::string series_path(const std::string& path, const std::string& suffix) {
  if (suffix.empty()) return path;
  const auto slash = path.find_last_of('/');
  const auto dot = path.find_last_of('.');
  if (dot == std::string::npos || (slash != std::string::npos && dot < slash))
    return path + "_" + suffix;
  return path.substr(0, dot) + "_" + suffix + path.substr(dot);
}

std::vector<PresetSeries> preset(std::string_view name, const NetworkConfig& base,
                                 const SimOptions& sim, Engine engine) {
  std::vector<PresetSeries> out;
  auto add = [&](std::string suffix, NetworkConfig cfg, Variable var, std::vector<double> vals,
                 std::vector<Scenario> scen, double theta_db = 0.0) {
    SweepSpec s;
    s.variable = var;
    s.values = std::move(vals);
    s.scenarios = std::move(scen);
    s.engine = engine;
    s.theta_db = theta_db;
    s.sim = sim;
    out.push_back({std::move(suffix), cfg, s});
  };
  auto cfg_with = [&](double r1, double r2, double T_d) {
    NetworkConfig c = base;
    c.r1 = r1;
    c.r2 = r2;
    c.T_d = T_d;
    return c;
  };
  const auto thetas = linspace(-10.0, 20.0, 31);
  const auto tds = logspace(0.01, 100.0, 25);
  const std::vector<double> zetas = {0.0, 1e-10, 1e-9, 1e-8, 1e-7};

  if (name == "fig4") {
    for (double r2 : {0.5, 2.0})
      add("r2_" + format_number(r2), cfg_with(1.0, r2, 0.2), Variable::theta, thetas,
          {Scenario::FD});
  } else if (name == "fig5") {
    for (double r1 : {0.2, 2.0})
      for (double td : {0.2, 1.0})
        add("r1_" + format_number(r1) + "_Td_" + format_number(td), cfg_with(r1, 1.0, td),
            Variable::theta, thetas, {Scenario::FD});
  } else if (name == "fig6" || name == "fig7" || name == "fig10") {
    add("", cfg_with(0.2, 0.2, base.T_d), Variable::T_d, tds,
        name == "fig10" ? std::vector<Scenario>{Scenario::FD} : kAll);
  } else if (name == "fig8") {
    add("", cfg_with(0.2, 0.2, base.T_d), Variable::T_d, tds, kAll);
    add("onet", cfg_with(1.0, 2.0, base.T_d), Variable::T_d, tds, kAll);
  } else if (name == "fig9") {
    add("", cfg_with(0.01, 1.0, 1.0), Variable::r2, logspace(0.001, 10.0, 25), kAll);
  } else if (name == "fig11" || name == "fig12") {
    const double r1 = name == "fig11" ? 1.0 : 0.2;
    const double r2 = name == "fig11" ? 2.0 : 0.2;
    for (double z : zetas) {
      NetworkConfig c = cfg_with(r1, r2, base.T_d);
      c.zeta = z;
      add("zeta_" + format_number(z), c, Variable::T_d, tds, {Scenario::FD, Scenario::HD});
    }
    if (name == "fig11") {
      for (double z : zetas) {
        NetworkConfig c = cfg_with(0.2, 0.2, 0.2);
        c.zeta = z;
        add("outage_zeta_" + format_number(z), c, Variable::theta, thetas, {Scenario::FD});
      }
    }
  } else if (name == "fig13") {
    for (double w : {0.0, 0.5, 1.0, 1.5}) {
      NetworkConfig c = cfg_with(0.2, 0.2, base.T_d);
      c.omega = w;
      add("omega_" + format_number(w), c, Variable::T_d, tds, {Scenario::FD});
    }
  } else {
    throw ConfigError("unknown preset '" + std::string(name) + "'");
  }
  return out;
}

}  // namespace fdd2d
