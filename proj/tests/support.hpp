// Shared helpers for the test binaries.
#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <vector>

#include <Eigen/QR>

#include "entq/qstate.hpp"

namespace entq::testing {

// Haar-distributed d x d unitary: QR of a complex Gaussian matrix with the
// phases of R's diagonal moved into Q.
inline CMatrix random_unitary(int d, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  CMatrix z(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) z(i, j) = cplx(g(rng), g(rng));
  Eigen::HouseholderQR<CMatrix> qr(z);
  CMatrix q = qr.householderQ();
  const CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < d; ++j) {
    const cplx diag = r(j, j);
    q.col(j) *= diag / std::abs(diag);
  }
  return q;
}

inline std::vector<int> random_permutation(int n, std::mt19937_64& rng) {
  std::vector<int> p(static_cast<std::size_t>(n));
  std::iota(p.begin(), p.end(), 1);
  std::shuffle(p.begin(), p.end(), rng);
  return p;
}

inline QuditState ghz(int d, int n) { return build({Family::kGhz, d, n, {}, {}, 0}); }
inline QuditState w_state(int n) { return build({Family::kW, 2, n, {}, {}, 0}); }
inline QuditState product_zero(int d, int n) {
  return build({Family::kBasis, d, n, std::vector<int>(static_cast<std::size_t>(n), 0), {}, 0});
}

// Random product of random local states.
inline QuditState random_product(int d, int n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  StateSpec spec{Family::kProduct, d, n, {}, {}, 0};
  for (int i = 0; i < n; ++i) {
    std::vector<cplx> v(static_cast<std::size_t>(d));
    for (auto& a : v) a = cplx(g(rng), g(rng));
    spec.site_amplitudes.push_back(v);
  }
  return build(spec);
}

}  // namespace entq::testing
