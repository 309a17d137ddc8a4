// Reduced-state purities Tr[rho_S^2] for site subsets of a pure state.
//
// Two routes are provided. reduced_density_matrix() builds rho_S explicitly.
// purity() never does: it gathers the amplitudes into a d^k x d^(n-k) matrix M
// whose rows run over the digits of the smaller side of the bipartition
// (k = min(|S|, n - |S|)) and returns ||M M^dagger||_F^2, which is the purity of
// either side.

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "entq/qstate.hpp"

namespace entq {

/// A strictly increasing list of 1-based site indices out of n sites.
class SubsetSpec {
 public:
  /// Throws std::invalid_argument unless 1 <= s <= n for every entry and the
  /// list is strictly increasing. Empty and full subsets are representable;
  /// purity operations reject them.
  SubsetSpec(std::vector<int> sites, int n);

  const std::vector<int>& sites() const noexcept { return sites_; }
  int n() const noexcept { return n_; }
  int size() const noexcept { return static_cast<int>(sites_.size()); }
  bool contains(int site) const;

  SubsetSpec complement() const;

  /// "{1,3,4}"
  std::string to_string() const;

  friend bool operator==(const SubsetSpec&, const SubsetSpec&) = default;

 private:
  std::vector<int> sites_;
  int n_ = 0;
};

/// All C(n, m) subsets of size m in lexicographic order. Requires 1 <= m <= n-1.
std::vector<SubsetSpec> enumerate_subsets(int n, int m);

/// C(n, m) as an exact integer.
std::uint64_t binomial(int n, int m);

/// rho_S with row/column digits in ascending site order of `s`.
CMatrix reduced_density_matrix(const QuditState& state, const SubsetSpec& s);

/// Tr[rho_S^2] by the Gram route on the smaller side.
double purity(const QuditState& state, const SubsetSpec& s);

/// Tr[rho_S^2] by the Gram route with the rows of M running over exactly the
/// sites in `rows`, whichever side is smaller. purity() is this on the smaller
/// side; calling it on both sides checks the complement identity without
/// relying on it.
double gram_purity(const QuditState& state, const SubsetSpec& rows);

/// Sum with pairwise (tree) reduction.
double pairwise_sum(std::span<const double> values);

struct SubsetPurity {
  SubsetSpec subset;
  double purity;
};

struct PurityReport {
  int m = 0;
  std::vector<SubsetPurity> per_subset;  // lexicographic subset order
  double average = 0.0;
};

/// Purities of every m-site subset plus their mean. `workers` = 0 picks
/// std::thread::hardware_concurrency(); the result does not depend on it.
PurityReport purity_report(const QuditState& state, int m, unsigned workers = 0);

}  // namespace entq
