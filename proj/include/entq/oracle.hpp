// Brute-force reference implementations for tests.
//
// Nothing here calls into reduce: the partial trace is a direct index sum over
// the explicit |psi><psi| and purities come from Hermitian eigenvalues.

#pragma once

#include <cstdint>
#include <vector>

#include "entq/qstate.hpp"
#include "entq/reduce.hpp"

namespace entq::oracle {

/// Largest d^n the oracle accepts.
inline constexpr std::uint64_t kOracleMaxDim = 4096;

struct DensityMatrix {
  std::int64_t dim = 0;
  CMatrix entries;
};

/// Hermitian, unit trace and eigenvalues >= -tol.
bool is_density_matrix(const DensityMatrix& rho, double tol = 1e-10);

/// entries(j, k) = psi_j * conj(psi_k). Throws std::length_error above
/// kOracleMaxDim.
DensityMatrix full_density_matrix(const QuditState& state);

/// Traces out every site not in `keep`. Throws std::invalid_argument on a
/// shape mismatch or an empty/full `keep`.
DensityMatrix partial_trace_naive(const DensityMatrix& rho, int d, int n,
                                  const SubsetSpec& keep);

/// Ascending Hermitian eigenvalues. Throws std::invalid_argument when rho is
/// not Hermitian within 1e-10.
std::vector<double> eigenvalues(const DensityMatrix& rho);

/// sum of squared eigenvalues.
double purity_by_eigenvalues(const DensityMatrix& rho);

/// Tr[rho^2] as sum_jk |rho_jk|^2.
double purity_by_trace(const DensityMatrix& rho);

/// purity_by_eigenvalues(partial_trace_naive(full_density_matrix(state), S)).
double oracle_purity(const QuditState& state, const SubsetSpec& keep);

}  // namespace entq::oracle
