#pragma once

#include <array>
#include <cstdint>
#include <utility>
#include <vector>

#include "fdd2d/config.hpp"

namespace fdd2d::sim {

struct Point {
  double x = 0.0, y = 0.0;
};

struct D2DPair {
  Point f;           // f-D2D UE (forward transmitter)
  Point r;           // r-D2D UE (forward receiver, reverse transmitter)
  double r_d = 0.0;
};

struct ModeFlags {
  bool f_active = false;
  bool r_active = false;
  bool fd() const { return f_active && r_active; }
};

/// One network snapshot on a square torus of side `side` metres.
struct Realization {
  double side = 0.0;
  std::uint64_t seed = 0;
  Scenario scenario = Scenario::FD;

  std::vector<Point> bs_points;
  std::vector<Point> cellular_ues;
  std::vector<D2DPair> d2d_pairs;

  // nearest-BS index and distance
  std::vector<int> associations;        // per cellular UE
  std::vector<double> r_c;              // per cellular UE
  std::vector<int> f_association;       // per pair, f-D2D UE
  std::vector<double> r_c_f;            // per pair, f-D2D UE to its nearest BS
  std::vector<int> r_association;       // per pair, r-D2D UE
  std::vector<double> r_e;              // per pair, r-D2D UE to its nearest BS

  // filled by schedule_and_select
  bool scheduled = false;
  std::vector<int> scheduled_cellular;  // per BS: UE index or -1
  std::vector<std::uint8_t> truncated;  // per cellular UE
  std::vector<ModeFlags> mode_flags;    // per pair
  std::vector<double> cellular_power;   // per BS, 0 if nobody scheduled
  std::vector<double> f_power;          // per pair, 0 if silent
  std::vector<double> r_power;          // per pair, 0 if silent
};

/// Interference seen by one probe receiver, split by transmitter class.
struct Probe {
  Mode mode = Mode::Cellular;
  int realization = 0;
  std::array<double, 3> interference{};  // indexed by transmitter mode
  double si = 0.0;
  double h0 = 0.0;
  double sinr = 0.0;
  bool fd = false;
  double total() const { return interference[0] + interference[1] + interference[2]; }
};

struct Estimate {
  double value = 0.0;
  double stderr_ = 0.0;
};

/// Counts of one snapshot, kept so ratio estimates get batch-means errors.
struct SnapshotCounts {
  std::int64_t cellular_ues = 0, truncated = 0;
  std::int64_t pairs = 0, f_active = 0, r_active = 0, fd = 0;
};

struct EmpiricalStats {
  std::array<std::vector<double>, 3> sinr_samples;
  std::vector<Probe> probes;
  std::vector<double> re_samples;
  std::vector<double> rd_samples;

  std::int64_t n_realizations = 0;
  std::int64_t n_bs = 0;
  std::int64_t n_cellular_ues = 0;
  std::int64_t n_truncated = 0;
  std::int64_t n_pairs = 0;
  std::int64_t n_f_active = 0;
  std::int64_t n_r_active = 0;
  std::int64_t n_fd = 0;
  std::array<std::int64_t, 3> active{};  // active transmitters per mode
  std::array<double, 3> power_sum{};      // summed transmit power per mode
  std::vector<SnapshotCounts> snapshots;

  /// Mean transmit power of active transmitters of one mode.
  double mean_power(Mode m) const;

  /// Pooled ratios; standard errors treat each snapshot as one batch since
  /// users of one snapshot share the BS layout.
  Estimate P_d() const;
  Estimate P_e() const;
  Estimate P_FD() const;
  Estimate O_p() const;

  void merge(const EmpiricalStats& other);
};

struct SimulationSpec {
  double area_km2 = 100.0;
  int realizations = 2000;
  std::uint64_t seed = 1;
  Scenario scenario = Scenario::FD;
  /// Probes per mode and realization; negative means every active receiver.
  int probes_per_mode = -1;
  int threads = 1;
  bool keep_samples = true;
};

/// Stream seed of realization `index` under `master`.
std::uint64_t stream_seed(std::uint64_t master, std::uint64_t index);

/// Poisson points, D2D partners at random link distances, nearest-BS associations.
Realization generate(const NetworkConfig& cfg, double area_km2, std::uint64_t seed);

/// Cellular scheduling (one random non-truncated UE per cell) and D2D mode
/// selection. The scenario decides whether r-D2D and f-D2D may transmit.
Realization schedule_and_select(Realization real, const NetworkConfig& cfg,
                                Scenario scenario = Scenario::FD);

/// Throws std::logic_error if an active transmitter breaks its power cap or IP condition.
void check_invariants(const Realization& real, const NetworkConfig& cfg);

/// Measures interference and SINR at up to n_probes receivers per mode
/// (negative: all). Fading is a fixed function of (seed, receiver, transmitter).
EmpiricalStats measure_sinr(const Realization& real, const NetworkConfig& cfg, double zeta,
                            int n_probes = -1, int realization_index = 0);

/// generate + schedule + measure over spec.realizations independent streams.
EmpiricalStats simulate(const NetworkConfig& cfg, const SimulationSpec& spec);

/// Probability that SINR <= theta, averaged over the exponential desired-link
/// fading given each probe's measured interference. Standard error from
/// per-realization batch means.
Estimate empirical_outage(const EmpiricalStats& st, const NetworkConfig& cfg, Mode mode,
                          double theta);

/// Mean of ln(1 + SINR) over probes of one mode.
Estimate empirical_rate(const EmpiricalStats& st, Mode mode);

/// Mean of exp(-s I_kappa) at receivers of mode chi.
Estimate empirical_lt(const EmpiricalStats& st, Mode kappa, Mode chi, double s);

/// Kolmogorov-Smirnov distance between samples and a CDF.
template <class Cdf>
double ks_distance(std::vector<double> samples, Cdf cdf);

}  // namespace fdd2d::sim

#include "fdd2d/simulator_inl.hpp"
