#include "fdd2d/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <random>
#include <stdexcept>
#include <string>
#include <thread>

#include "fdd2d/errors.hpp"
#include "fdd2d/link_geometry.hpp"
#include "fdd2d/numerics.hpp"

namespace fdd2d::sim {

using numerics::kPi;

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

// unit-mean exponential, a pure function of its three keys
double fading(std::uint64_t seed, std::uint64_t rx, std::uint64_t tx) {
  const std::uint64_t h = splitmix64(splitmix64(seed ^ splitmix64(rx)) ^ tx);
  const double u = (static_cast<double>(h >> 11) + 0.5) * 0x1.0p-53;
  return -std::log(u);
}

std::uint64_t key(int cls, std::int64_t idx) {
  return (static_cast<std::uint64_t>(cls) << 40) ^ static_cast<std::uint64_t>(idx);
}

double wrap(double v, double L) {
  v = std::fmod(v, L);
  return v < 0.0 ? v + L : v;
}

double torus_d2(const Point& a, const Point& b, double L) {
  double dx = std::abs(a.x - b.x), dy = std::abs(a.y - b.y);
  dx = std::min(dx, L - dx);
  dy = std::min(dy, L - dy);
  return dx * dx + dy * dy;
}

// Uniform grid over the torus for nearest-neighbour queries.
class Grid {
 public:
  Grid(const std::vector<Point>& pts, double L, double density) : pts_(pts), L_(L) {
    n_ = std::max(1, static_cast<int>(L * std::sqrt(density) / 1.5));
    cell_ = L / n_;
    start_.assign(static_cast<size_t>(n_) * n_ + 1, 0);
    std::vector<int> cell_of(pts.size());
    for (size_t i = 0; i < pts.size(); ++i) {
      cell_of[i] = cell(pts[i]);
      ++start_[cell_of[i] + 1];
    }
    for (size_t c = 1; c < start_.size(); ++c) start_[c] += start_[c - 1];
    items_.resize(pts.size());
    std::vector<int> fill(start_.begin(), start_.end() - 1);
    for (size_t i = 0; i < pts.size(); ++i) items_[fill[cell_of[i]]++] = static_cast<int>(i);
  }

  // index and distance of the nearest point
  std::pair<int, double> nearest(const Point& p) const {
    int best = -1;
    double best_d2 = std::numeric_limits<double>::infinity();
    const int cx = std::min(n_ - 1, static_cast<int>(p.x / cell_));
    const int cy = std::min(n_ - 1, static_cast<int>(p.y / cell_));
    const int max_ring = n_ / 2 + 1;
    for (int ring = 0; ring <= max_ring; ++ring) {
      for (int dx = -ring; dx <= ring; ++dx) {
        for (int dy = -ring; dy <= ring; ++dy) {
          if (std::max(std::abs(dx), std::abs(dy)) != ring) continue;
          const int gx = ((cx + dx) % n_ + n_) % n_;
          const int gy = ((cy + dy) % n_ + n_) % n_;
          const int c = gx * n_ + gy;
          for (int k = start_[c]; k < start_[c + 1]; ++k) {
            const double d2 = torus_d2(p, pts_[items_[k]], L_);
            if (d2 < best_d2 || (d2 == best_d2 && items_[k] < best)) {
              best_d2 = d2;
              best = items_[k];
            }
          }
        }
      }
      // every unvisited cell is at least ring * cell_ away
      const double reach = ring * cell_;
      if (best >= 0 && best_d2 <= reach * reach) break;
      if (2 * ring + 1 >= n_ && best >= 0) break;
    }
    return {best, std::sqrt(best_d2)};
  }

 private:
  int cell(const Point& p) const {
    const int cx = std::min(n_ - 1, static_cast<int>(p.x / cell_));
    const int cy = std::min(n_ - 1, static_cast<int>(p.y / cell_));
    return cx * n_ + cy;
  }

  const std::vector<Point>& pts_;
  double L_;
  int n_;
  double cell_;
  std::vector<int> start_;
  std::vector<int> items_;
};

std::vector<Point> ppp(std::mt19937_64& rng, double intensity, double L) {
  std::poisson_distribution<long> count(intensity * L * L);
  std::uniform_real_distribution<double> u(0.0, L);
  std::vector<Point> pts(static_cast<size_t>(count(rng)));
  for (auto& p : pts) {
    p.x = u(rng);
    p.y = u(rng);
  }
  return pts;
}

}  // namespace

std::uint64_t stream_seed(std::uint64_t master, std::uint64_t index) {
  return splitmix64(splitmix64(master) + index);
}

Realization generate(const NetworkConfig& cfg, double area_km2, std::uint64_t seed) {
  cfg.validate();
  if (!(area_km2 > 0.0) || !std::isfinite(area_km2))
    throw DomainError("simulation area must be positive");
  const double area = area_km2 * 1e6;
  if (cfg.lambda * area < 100.0)
    throw DomainError("simulation area too small: expected BS count " +
                      std::to_string(cfg.lambda * area) + " is below 100");

  Realization r;
  r.side = std::sqrt(area);
  r.seed = seed;
  const double L = r.side;
  std::mt19937_64 rng(seed);

  r.bs_points = ppp(rng, cfg.lambda, L);
  r.cellular_ues = ppp(rng, cfg.lambda_c, L);
  const auto f_points = ppp(rng, cfg.lambda_d, L);

  const double R = cfg.R_bar();
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  r.d2d_pairs.resize(f_points.size());
  for (size_t i = 0; i < f_points.size(); ++i) {
    auto& p = r.d2d_pairs[i];
    p.f = f_points[i];
    p.r_d = geometry::quantile_rd(u01(rng), R, cfg.omega);
    const double ang = 2.0 * kPi * u01(rng);
    p.r = {wrap(p.f.x + p.r_d * std::cos(ang), L), wrap(p.f.y + p.r_d * std::sin(ang), L)};
  }

  if (r.bs_points.empty()) throw DomainError("realization has no base stations");
  Grid grid(r.bs_points, L, cfg.lambda);
  r.associations.resize(r.cellular_ues.size());
  r.r_c.resize(r.cellular_ues.size());
  for (size_t i = 0; i < r.cellular_ues.size(); ++i)
    std::tie(r.associations[i], r.r_c[i]) = grid.nearest(r.cellular_ues[i]);
  const size_t n = r.d2d_pairs.size();
  r.f_association.resize(n);
  r.r_c_f.resize(n);
  r.r_association.resize(n);
  r.r_e.resize(n);
  for (size_t i = 0; i < n; ++i) {
    std::tie(r.f_association[i], r.r_c_f[i]) = grid.nearest(r.d2d_pairs[i].f);
    std::tie(r.r_association[i], r.r_e[i]) = grid.nearest(r.d2d_pairs[i].r);
  }
  return r;
}

Realization schedule_and_select(Realization r, const NetworkConfig& cfg, Scenario scenario) {
  cfg.validate();
  r.scenario = scenario;
  std::mt19937_64 rng(splitmix64(r.seed ^ 0x5CEDu));

  const size_t nb = r.bs_points.size(), nu = r.cellular_ues.size(), np = r.d2d_pairs.size();
  r.truncated.assign(nu, 0);
  r.scheduled_cellular.assign(nb, -1);
  r.cellular_power.assign(nb, 0.0);

  // visiting UEs in random order and keeping the first eligible one per cell
  // picks uniformly among the eligible UEs of that cell
  std::vector<int> order(nu);
  for (size_t i = 0; i < nu; ++i) order[i] = static_cast<int>(i);
  std::shuffle(order.begin(), order.end(), rng);
  for (int j : order) {
    const double p = std::pow(r.r_c[j], cfg.eta_c) * cfg.rho_c;
    if (p > cfg.P_u) {
      r.truncated[j] = 1;
      continue;
    }
    const int b = r.associations[j];
    if (r.scheduled_cellular[b] < 0) {
      r.scheduled_cellular[b] = j;
      r.cellular_power[b] = p;
    }
  }

  r.mode_flags.assign(np, {});
  r.f_power.assign(np, 0.0);
  r.r_power.assign(np, 0.0);
  const bool allow_f = scenario != Scenario::Traditional;
  const bool allow_r = scenario == Scenario::FD;
  const double rho_d = cfg.rho_d(), rho_e = cfg.rho_e();
  for (size_t i = 0; i < np; ++i) {
    const double x = std::pow(r.d2d_pairs[i].r_d, cfg.eta_d);
    const double pf = x * rho_d, pe = x * rho_e;
    auto& fl = r.mode_flags[i];
    fl.f_active = allow_f && pf <= cfg.P_u &&
                  pf <= cfg.T_d * std::pow(r.r_c_f[i], cfg.eta_c) * cfg.rho_c;
    fl.r_active = allow_r && pe <= cfg.P_u &&
                  pe <= cfg.T_d * std::pow(r.r_e[i], cfg.eta_c) * cfg.rho_c;
    if (fl.f_active) r.f_power[i] = pf;
    if (fl.r_active) r.r_power[i] = pe;
  }
  r.scheduled = true;
  return r;
}

void check_invariants(const Realization& r, const NetworkConfig& cfg) {
  auto fail = [](const std::string& what) { throw std::logic_error("realization: " + what); };
  const double tol = 1.0 + 1e-12;
  std::vector<int> per_cell(r.bs_points.size(), 0);
  for (size_t b = 0; b < r.scheduled_cellular.size(); ++b) {
    const int j = r.scheduled_cellular[b];
    if (j < 0) continue;
    if (r.associations[j] != static_cast<int>(b)) fail("scheduled UE outside its cell");
    if (++per_cell[b] > 1) fail("two scheduled UEs in one cell");
    if (r.cellular_power[b] > cfg.P_u * tol) fail("cellular power above P_u");
  }
  for (size_t i = 0; i < r.mode_flags.size(); ++i) {
    const auto& fl = r.mode_flags[i];
    const double x = std::pow(r.d2d_pairs[i].r_d, cfg.eta_d);
    if (fl.f_active) {
      if (r.f_power[i] > cfg.P_u * tol) fail("f-D2D power above P_u");
      if (x * cfg.rho_d() > cfg.T_d * std::pow(r.r_c_f[i], cfg.eta_c) * cfg.rho_c * tol)
        fail("f-D2D violates IP");
    }
    if (fl.r_active) {
      if (r.r_power[i] > cfg.P_u * tol) fail("r-D2D power above P_u");
      if (x * cfg.rho_e() > cfg.T_d * std::pow(r.r_e[i], cfg.eta_c) * cfg.rho_c * tol)
        fail("r-D2D violates IP");
    }
  }
}

namespace {

struct Tx {
  Point pos;
  double power;
  int cls;    // transmitter mode
  int owner;  // BS index for cellular, pair index for D2D
  std::int64_t id;
};

std::vector<int> choose(std::vector<int> all, int n, std::mt19937_64& rng) {
  if (n < 0 || static_cast<int>(all.size()) <= n) return all;
  for (int i = 0; i < n; ++i) {
    std::uniform_int_distribution<size_t> pick(i, all.size() - 1);
    std::swap(all[i], all[pick(rng)]);
  }
  all.resize(n);
  std::sort(all.begin(), all.end());
  return all;
}

}  // namespace

EmpiricalStats measure_sinr(const Realization& r, const NetworkConfig& cfg, double zeta,
                            int n_probes, int realization_index) {
  if (!r.scheduled) throw DomainError("measure_sinr needs a scheduled realization");
  const double L = r.side;
  EmpiricalStats st;
  st.n_realizations = 1;
  st.n_bs = static_cast<std::int64_t>(r.bs_points.size());
  st.n_cellular_ues = static_cast<std::int64_t>(r.cellular_ues.size());
  st.n_pairs = static_cast<std::int64_t>(r.d2d_pairs.size());
  for (auto t : r.truncated) st.n_truncated += t;
  st.re_samples = r.r_e;
  st.rd_samples.reserve(r.d2d_pairs.size());
  for (const auto& p : r.d2d_pairs) st.rd_samples.push_back(p.r_d);

  std::vector<Tx> txs;
  std::vector<int> c_rx, d_rx, e_rx;
  for (size_t b = 0; b < r.scheduled_cellular.size(); ++b) {
    const int j = r.scheduled_cellular[b];
    if (j < 0) continue;
    txs.push_back({r.cellular_ues[j], r.cellular_power[b], 0, static_cast<int>(b), j});
    st.power_sum[0] += r.cellular_power[b];
    c_rx.push_back(static_cast<int>(b));
  }
  for (size_t i = 0; i < r.mode_flags.size(); ++i) {
    const auto& fl = r.mode_flags[i];
    const int ii = static_cast<int>(i);
    if (fl.f_active) {
      txs.push_back({r.d2d_pairs[i].f, r.f_power[i], 1, ii, ii});
      d_rx.push_back(ii);
      st.power_sum[1] += r.f_power[i];
      ++st.n_f_active;
    }
    if (fl.r_active) {
      txs.push_back({r.d2d_pairs[i].r, r.r_power[i], 2, ii, ii});
      e_rx.push_back(ii);
      st.power_sum[2] += r.r_power[i];
      ++st.n_r_active;
    }
    if (fl.fd()) ++st.n_fd;
  }
  st.active = {static_cast<std::int64_t>(c_rx.size()), st.n_f_active, st.n_r_active};
  st.snapshots.push_back(
      {st.n_cellular_ues, st.n_truncated, st.n_pairs, st.n_f_active, st.n_r_active, st.n_fd});

  std::mt19937_64 rng(splitmix64(r.seed ^ 0x9B0BEu));
  auto run = [&](Mode mode, const std::vector<int>& receivers) {
    const int m = index(mode);
    const double eta = mode == Mode::Cellular ? cfg.eta_c : cfg.eta_d;
    const double rho = cfg.rho(mode);
    for (int rx : choose(receivers, n_probes, rng)) {
      Probe pr;
      pr.mode = mode;
      pr.realization = realization_index;
      Point at;
      if (mode == Mode::Cellular) at = r.bs_points[rx];
      else if (mode == Mode::ForwardD2D) at = r.d2d_pairs[rx].r;
      else at = r.d2d_pairs[rx].f;
      const std::uint64_t rk = key(m, rx);
      for (const auto& t : txs) {
        // own link and own pair are not interferers
        if (mode == Mode::Cellular ? (t.cls == 0 && t.owner == rx) : (t.cls != 0 && t.owner == rx))
          continue;
        const double d2 = torus_d2(at, t.pos, L);
        const double g = fading(r.seed, rk, key(t.cls, t.id));
        const double loss = eta == 4.0 ? 1.0 / (d2 * d2) : std::pow(d2, -eta / 2.0);
        pr.interference[t.cls] += g * t.power * loss;
      }
      if (mode != Mode::Cellular) {
        pr.fd = r.mode_flags[rx].fd();
        const double p_link = mode == Mode::ForwardD2D ? r.f_power[rx] : r.r_power[rx];
        if (pr.fd) pr.si = zeta * p_link;
      }
      pr.h0 = fading(r.seed, rk, key(7, -1));
      pr.sinr = rho * pr.h0 / (cfg.sigma2 + pr.total() + pr.si);
      st.sinr_samples[m].push_back(pr.sinr);
      st.probes.push_back(pr);
    }
  };
  run(Mode::Cellular, c_rx);
  run(Mode::ForwardD2D, d_rx);
  run(Mode::ReverseD2D, e_rx);
  return st;
}

void EmpiricalStats::merge(const EmpiricalStats& o) {
  for (int m = 0; m < 3; ++m)
    sinr_samples[m].insert(sinr_samples[m].end(), o.sinr_samples[m].begin(),
                           o.sinr_samples[m].end());
  probes.insert(probes.end(), o.probes.begin(), o.probes.end());
  re_samples.insert(re_samples.end(), o.re_samples.begin(), o.re_samples.end());
  rd_samples.insert(rd_samples.end(), o.rd_samples.begin(), o.rd_samples.end());
  snapshots.insert(snapshots.end(), o.snapshots.begin(), o.snapshots.end());
  n_realizations += o.n_realizations;
  n_bs += o.n_bs;
  n_cellular_ues += o.n_cellular_ues;
  n_truncated += o.n_truncated;
  n_pairs += o.n_pairs;
  n_f_active += o.n_f_active;
  n_r_active += o.n_r_active;
  n_fd += o.n_fd;
  for (int m = 0; m < 3; ++m) {
    active[m] += o.active[m];
    power_sum[m] += o.power_sum[m];
  }
}

namespace {
// sum(k) / sum(n) with the ratio-estimator error over snapshots
template <class K, class N>
Estimate pooled_ratio(const std::vector<SnapshotCounts>& snaps, K k, N n) {
  double sk = 0.0, sn = 0.0;
  for (const auto& s : snaps) {
    sk += static_cast<double>(k(s));
    sn += static_cast<double>(n(s));
  }
  if (sn <= 0.0) return {0.0, 0.0};
  const double p = sk / sn;
  const double R = static_cast<double>(snaps.size());
  if (R < 2) return {p, 0.0};
  double ss = 0.0;
  for (const auto& s : snaps) {
    const double r = static_cast<double>(k(s)) - p * static_cast<double>(n(s));
    ss += r * r;
  }
  return {p, std::sqrt(ss / (R * (R - 1.0))) / (sn / R)};
}
}  // namespace

double EmpiricalStats::mean_power(Mode m) const {
  const auto n = active[index(m)];
  return n > 0 ? power_sum[index(m)] / static_cast<double>(n) : 0.0;
}

Estimate EmpiricalStats::P_d() const {
  return pooled_ratio(snapshots, [](auto& s) { return s.f_active; }, [](auto& s) { return s.pairs; });
}
Estimate EmpiricalStats::P_e() const {
  return pooled_ratio(snapshots, [](auto& s) { return s.r_active; }, [](auto& s) { return s.pairs; });
}
Estimate EmpiricalStats::P_FD() const {
  return pooled_ratio(snapshots, [](auto& s) { return s.fd; }, [](auto& s) { return s.pairs; });
}
Estimate EmpiricalStats::O_p() const {
  return pooled_ratio(snapshots, [](auto& s) { return s.truncated; },
                      [](auto& s) { return s.cellular_ues; });
}

EmpiricalStats simulate(const NetworkConfig& cfg, const SimulationSpec& spec) {
  if (spec.realizations < 1) throw DomainError("realizations must be >= 1");
  const int threads = std::max(1, spec.threads);
  std::vector<EmpiricalStats> parts(spec.realizations);
  auto work = [&](int first, int stride) {
    for (int i = first; i < spec.realizations; i += stride) {
      auto real = generate(cfg, spec.area_km2, stream_seed(spec.seed, i));
      real = schedule_and_select(std::move(real), cfg, spec.scenario);
      parts[i] = measure_sinr(real, cfg, cfg.zeta, spec.probes_per_mode, i);
      if (!spec.keep_samples) {
        parts[i].re_samples.clear();
        parts[i].rd_samples.clear();
      }
    }
  };
  if (threads == 1) {
    work(0, 1);
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(work, t, threads);
    for (auto& th : pool) th.join();
  }
  EmpiricalStats out;
  for (const auto& p : parts) out.merge(p);  // index order keeps the result deterministic
  return out;
}

namespace {

// ratio estimator with per-realization batches
template <class F>
Estimate batch_mean(const EmpiricalStats& st, Mode mode, F value) {
  std::map<int, std::pair<double, double>> batches;  // realization -> (sum, count)
  double sum = 0.0, count = 0.0;
  for (const auto& p : st.probes) {
    if (p.mode != mode) continue;
    const double v = value(p);
    auto& b = batches[p.realization];
    b.first += v;
    b.second += 1.0;
    sum += v;
    count += 1.0;
  }
  if (count == 0.0) return {std::numeric_limits<double>::quiet_NaN(), 0.0};
  const double mean = sum / count;
  const double R = static_cast<double>(batches.size());
  if (R < 2.0) return {mean, 0.0};
  const double nbar = count / R;
  double ss = 0.0;
  for (const auto& [k, b] : batches) {
    const double dev = b.first - mean * b.second;
    ss += dev * dev;
  }
  return {mean, std::sqrt(ss / (R * (R - 1.0))) / nbar};
}

}  // namespace

Estimate empirical_outage(const EmpiricalStats& st, const NetworkConfig& cfg, Mode mode,
                          double theta) {
  const double rho = cfg.rho(mode);
  return batch_mean(st, mode, [&](const Probe& p) {
    return -std::expm1(-theta * (cfg.sigma2 + p.total() + p.si) / rho);
  });
}

Estimate empirical_rate(const EmpiricalStats& st, Mode mode) {
  return batch_mean(st, mode, [](const Probe& p) { return std::log1p(p.sinr); });
}

Estimate empirical_lt(const EmpiricalStats& st, Mode kappa, Mode chi, double s) {
  return batch_mean(st, chi,
                    [&](const Probe& p) { return std::exp(-s * p.interference[index(kappa)]); });
}

}  // namespace fdd2d::sim
