#include "entq/oracle.hpp"

#include <algorithm>
#include <stdexcept>

#include <Eigen/Eigenvalues>

namespace entq::oracle {

namespace {

constexpr double kHermitianTol = 1e-10;

void require_hermitian(const DensityMatrix& rho) {
  const CMatrix& a = rho.entries;
  if (a.rows() != a.cols() || a.rows() != rho.dim) {
    throw std::invalid_argument("density matrix is not square");
  }
  if ((a - a.adjoint()).cwiseAbs().maxCoeff() > kHermitianTol) {
    throw std::invalid_argument("density matrix is not Hermitian");
  }
}

std::int64_t power(int base, int exp) {
  std::int64_t r = 1;
  while (exp-- > 0) r *= base;
  return r;
}

}  // namespace

bool is_density_matrix(const DensityMatrix& rho, double tol) {
  const CMatrix& a = rho.entries;
  if (a.rows() != a.cols() || a.rows() != rho.dim || rho.dim == 0) return false;
  if ((a - a.adjoint()).cwiseAbs().maxCoeff() > tol) return false;
  if (std::abs(a.trace() - cplx(1.0)) > tol) return false;
  Eigen::SelfAdjointEigenSolver<CMatrix> es(a, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff() >= -tol;
}

DensityMatrix full_density_matrix(const QuditState& state) {
  if (state.size() > kOracleMaxDim) {
    throw std::length_error("oracle is limited to d^n <= 4096");
  }
  const auto dim = static_cast<std::int64_t>(state.size());
  DensityMatrix rho{dim, CMatrix(dim, dim)};
  for (std::int64_t j = 0; j < dim; ++j) {
    for (std::int64_t k = 0; k < dim; ++k) {
      rho.entries(j, k) = state[j] * std::conj(state[k]);
    }
  }
  return rho;
}

DensityMatrix partial_trace_naive(const DensityMatrix& rho, int d, int n,
                                  const SubsetSpec& keep) {
  if (keep.n() != n) throw std::invalid_argument("subset site count mismatch");
  if (rho.dim != power(d, n) || rho.entries.rows() != rho.dim ||
      rho.entries.cols() != rho.dim) {
    throw std::invalid_argument("density matrix shape does not match d^n");
  }
  const int k = keep.size();
  if (k < 1 || k > n - 1) {
    throw std::invalid_argument("kept subset must be nonempty and proper");
  }

  std::vector<int> kept = keep.sites();
  std::vector<int> traced;
  for (int i = 1; i <= n; ++i) {
    if (std::find(kept.begin(), kept.end(), i) == kept.end()) traced.push_back(i);
  }

  const std::int64_t out_dim = power(d, k);
  const std::int64_t env_dim = power(d, n - k);

  // Place value of each site's digit in the full index.
  auto place = [&](int site) { return power(d, n - site); };
  auto part = [&](const std::vector<int>& sites, std::int64_t count) {
    std::vector<std::int64_t> table(static_cast<std::size_t>(count));
    for (std::int64_t x = 0; x < count; ++x) {
      std::int64_t rest = x;
      std::int64_t idx = 0;
      for (int j = static_cast<int>(sites.size()) - 1; j >= 0; --j) {
        idx += (rest % d) * place(sites[j]);
        rest /= d;
      }
      table[static_cast<std::size_t>(x)] = idx;
    }
    return table;
  };
  const auto kept_part = part(kept, out_dim);
  const auto traced_part = part(traced, env_dim);

  DensityMatrix out{out_dim, CMatrix::Zero(out_dim, out_dim)};
  for (std::int64_t a = 0; a < out_dim; ++a) {
    for (std::int64_t ap = 0; ap < out_dim; ++ap) {
      cplx acc = 0.0;
      for (std::int64_t b = 0; b < env_dim; ++b) {
        acc += rho.entries(kept_part[a] + traced_part[b],
                           kept_part[ap] + traced_part[b]);
      }
      out.entries(a, ap) = acc;
    }
  }
  return out;
}

std::vector<double> eigenvalues(const DensityMatrix& rho) {
  require_hermitian(rho);
  Eigen::SelfAdjointEigenSolver<CMatrix> es(rho.entries, Eigen::EigenvaluesOnly);
  const auto& ev = es.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

double purity_by_eigenvalues(const DensityMatrix& rho) {
  double acc = 0.0;
  for (double l : eigenvalues(rho)) acc += l * l;
  return acc;
}

double purity_by_trace(const DensityMatrix& rho) {
  return rho.entries.cwiseAbs2().sum();
}

double oracle_purity(const QuditState& state, const SubsetSpec& keep) {
  return purity_by_eigenvalues(
      partial_trace_naive(full_density_matrix(state), state.d(), state.n(), keep));
}

}  // namespace entq::oracle
