#include "entq/scott.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "parallel.hpp"

namespace entq {

namespace {

void check_m(int n, int m) {
  if (m < 1 || m > n - 1) {
    throw std::invalid_argument("m = " + std::to_string(m) + " outside 1.." +
                                std::to_string(n - 1));
  }
}

// (d^m - 1) / d^m, computed as 1 - d^-m so large m stays accurate
double inverse_prefactor(int d, int m) {
  return 1.0 - std::pow(static_cast<double>(d), -m);
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

}  // namespace

double scott_prefactor(int d, int m) { return 1.0 / inverse_prefactor(d, m); }

double scott_from_average_purity(int d, int m, double average_purity) {
  return scott_prefactor(d, m) * (1.0 - average_purity);
}

ScottEntry scott_entry(const QuditState& state, int m, unsigned workers) {
  check_m(state.n(), m);
  const auto report = purity_report(state, m, workers);
  ScottEntry e;
  e.m = m;
  e.average_purity = report.average;
  e.q = scott_from_average_purity(state.d(), m, report.average);
  e.subset_count = report.per_subset.size();
  e.beyond_half = m > state.n() / 2;
  return e;
}

double compute_qm(const QuditState& state, int m) {
  return scott_entry(state, m).q;
}

ScottProfile profile(const QuditState& state, std::optional<int> m_max,
                     unsigned workers) {
  const int n = state.n();
  const int top = m_max.value_or(n / 2);
  if (top < 1 || top > n - 1) {
    throw std::invalid_argument("m_max = " + std::to_string(top) +
                                " outside 1.." + std::to_string(n - 1));
  }
  ScottProfile p;
  p.d = state.d();
  p.n = n;
  for (int m = 1; m <= top; ++m) p.entries.push_back(scott_entry(state, m, workers));
  p.beyond_half_requested = top > n / 2;
  return p;
}

double complement_coefficient(int d, int n, int m) {
  check_m(n, m);
  return inverse_prefactor(d, m) / inverse_prefactor(d, n - m);
}

ComplementReport verify_complement_relation(const QuditState& state,
                                            double tolerance) {
  const int d = state.d();
  const int n = state.n();
  if (n < 2) throw std::invalid_argument("complement relation needs n >= 2");

  ComplementReport rep;
  rep.d = d;
  rep.n = n;
  rep.tolerance = tolerance;
  bool ok = true;
  for (int m = 1; m <= n / 2; ++m) {
    ComplementRow row;
    row.m = m;
    row.q_m = compute_qm(state, m);
    row.q_complement = compute_qm(state, n - m);
    row.coefficient = complement_coefficient(d, n, m);
    row.predicted = row.coefficient * row.q_m;
    row.residual = std::abs(row.q_complement * inverse_prefactor(d, n - m) -
                            row.q_m * inverse_prefactor(d, m));
    ok = ok && row.residual < tolerance;
    rep.rows.push_back(row);
  }

  // Each unordered bipartition once: S ranges over the subsets with |S| <= n/2,
  // and for |S| = n/2 only those containing site 1.
  double worst = 0.0;
  for (int m = 1; m <= n / 2; ++m) {
    const bool affordable = checked_dimension(d, n - m, kMaxCheckedSideDim).has_value();
    for (const auto& s : enumerate_subsets(n, m)) {
      if (2 * m == n && !s.contains(1)) continue;
      if (!affordable) {
        ++rep.bipartitions_skipped;
        continue;
      }
      ++rep.bipartitions_checked;
      const double a = gram_purity(state, s);
      const double b = gram_purity(state, s.complement());
      worst = std::max(worst, std::abs(a - b));
    }
  }
  rep.max_purity_residual = worst;
  rep.pass = ok && worst < tolerance;
  return rep;
}

std::uint64_t haar_sample_seed(std::uint64_t seed, std::uint64_t index) {
  return splitmix64(seed ^ splitmix64(index));
}

HaarStatistics haar_statistics(int d, int n, const std::vector<int>& ms,
                               std::uint64_t samples, std::uint64_t seed,
                               unsigned workers, std::uint64_t cap) {
  if (samples < 1) throw std::invalid_argument("samples must be >= 1");
  if (ms.empty()) throw std::invalid_argument("no subset sizes requested");
  if (d < 2 || n < 2) throw std::invalid_argument("need d >= 2 and n >= 2");
  for (int m : ms) check_m(n, m);
  if (!checked_dimension(d, n, cap)) {
    throw std::length_error("d^n exceeds the size cap of " +
                            std::to_string(cap) + " amplitudes");
  }

  const std::size_t k = ms.size();
  // values[j * samples + i] = Q_{ms[j]} of sample i
  std::vector<double> values(k * samples);
  detail::parallel_for(samples, workers, [&](std::size_t i) {
    const auto state = haar_state(d, n, haar_sample_seed(seed, i), cap);
    for (std::size_t j = 0; j < k; ++j) {
      const auto report = purity_report(state, ms[j], 1);
      values[j * samples + i] = scott_from_average_purity(d, ms[j], report.average);
    }
  });

  HaarStatistics stats;
  stats.d = d;
  stats.n = n;
  stats.seed = seed;
  stats.samples = samples;
  std::vector<double> sq(samples);
  for (std::size_t j = 0; j < k; ++j) {
    const std::span<const double> v(values.data() + j * samples, samples);
    HaarMoments mo;
    mo.m = ms[j];
    mo.samples = samples;
    mo.mean = pairwise_sum(v) / static_cast<double>(samples);
    if (samples > 1) {
      for (std::size_t i = 0; i < samples; ++i) {
        const double dev = v[i] - mo.mean;
        sq[i] = dev * dev;
      }
      mo.stddev = std::sqrt(pairwise_sum(sq) / static_cast<double>(samples - 1));
      mo.std_error = mo.stddev / std::sqrt(static_cast<double>(samples));
    }
    stats.moments.push_back(mo);
  }
  return stats;
}

}  // namespace entq
