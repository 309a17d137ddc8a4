// Scott measures
//
//   Q_m = d^m / (d^m - 1) * (1 - mean_{|S|=m} Tr[rho_S^2])
//
// for a pure state of n d-level sites. Q_1 is the Meyer-Wallach global
// entanglement. Because Tr[rho_S^2] = Tr[rho_{S^c}^2] for pure states, Q_{n-m}
// is a fixed multiple of Q_m; complement_coefficient() gives that multiple and
// verify_complement_relation() checks it on a concrete state.

#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "entq/qstate.hpp"
#include "entq/reduce.hpp"

namespace entq {

/// Tolerance on Q-level identities.
inline constexpr double kQTolerance = 1e-10;

/// d^m / (d^m - 1).
double scott_prefactor(int d, int m);

/// Q_m from an average purity.
double scott_from_average_purity(int d, int m, double average_purity);

/// Q_m for 1 <= m <= n-1. Values of m above floor(n/2) are accepted; they
/// carry no information beyond Q_{n-m}.
double compute_qm(const QuditState& state, int m);

struct ScottEntry {
  int m = 0;
  double q = 0.0;
  double average_purity = 0.0;
  std::uint64_t subset_count = 0;
  bool beyond_half = false;  // m > floor(n/2): redundant by complement
};

struct ScottProfile {
  int d = 0;
  int n = 0;
  std::vector<ScottEntry> entries;
  bool beyond_half_requested = false;
};

ScottEntry scott_entry(const QuditState& state, int m, unsigned workers = 0);

/// Entries for m = 1..m_max; m_max defaults to floor(n/2) and must be <= n-1.
ScottProfile profile(const QuditState& state, std::optional<int> m_max = {},
                     unsigned workers = 0);

/// c(d, n, m) = [d^(n-m) / (d^(n-m) - 1)] / [d^m / (d^m - 1)], the exact
/// factor with Q_{n-m} = c * Q_m for every pure state.
double complement_coefficient(int d, int n, int m);

struct ComplementRow {
  int m = 0;
  double q_m = 0.0;
  double q_complement = 0.0;  // Q_{n-m}
  double coefficient = 0.0;   // c(d, n, m)
  double predicted = 0.0;     // c * Q_m
  /// |Q_{n-m} (d^(n-m)-1)/d^(n-m) - Q_m (d^m-1)/d^m|; well defined when Q = 0
  double residual = 0.0;
};

struct ComplementReport {
  int d = 0;
  int n = 0;
  double tolerance = kQTolerance;
  std::vector<ComplementRow> rows;  // m = 1..floor(n/2)
  /// max over bipartitions (S, S^c) of |Tr[rho_S^2] - Tr[rho_{S^c}^2]|, each
  /// side evaluated with its own rows in the Gram route. Bipartitions whose
  /// larger side exceeds kMaxCheckedSideDim are skipped and counted.
  double max_purity_residual = 0.0;
  std::uint64_t bipartitions_checked = 0;
  std::uint64_t bipartitions_skipped = 0;
  bool pass = false;
};

/// Largest d^|side| for which the per-subset check forms the Gram matrix of
/// the larger side.
inline constexpr std::uint64_t kMaxCheckedSideDim = 4096;

/// Requires n >= 2.
ComplementReport verify_complement_relation(const QuditState& state,
                                            double tolerance = kQTolerance);

struct HaarMoments {
  int m = 0;
  double mean = 0.0;
  double stddev = 0.0;  // sample standard deviation
  double std_error = 0.0;
  std::uint64_t samples = 0;
};

struct HaarStatistics {
  int d = 0;
  int n = 0;
  std::uint64_t seed = 0;
  std::uint64_t samples = 0;
  std::vector<HaarMoments> moments;  // in the order of the requested m list
};

/// Seed of sample `index` in a Haar run; sample i is exactly
/// haar_state(d, n, haar_sample_seed(seed, i)).
std::uint64_t haar_sample_seed(std::uint64_t seed, std::uint64_t index);

/// Monte-Carlo mean and spread of Q_m over Haar-random states. The result is
/// identical for every worker count.
HaarStatistics haar_statistics(int d, int n, const std::vector<int>& ms,
                               std::uint64_t samples, std::uint64_t seed,
                               unsigned workers = 0,
                               std::uint64_t cap = size_cap());

}  // namespace entq
