#include "entq/reduce.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

#include "parallel.hpp"

namespace entq {

namespace {

constexpr std::size_t kPairwiseBlock = 8;
constexpr Eigen::Index kGramBlock = 256;

std::uint64_t ipow(int base, int exp) {
  std::uint64_t r = 1;
  for (int i = 0; i < exp; ++i) r *= static_cast<std::uint64_t>(base);
  return r;
}

void check_proper(const QuditState& state, const SubsetSpec& s) {
  if (s.n() != state.n()) {
    throw std::invalid_argument("subset refers to " + std::to_string(s.n()) +
                                " sites, state has " +
                                std::to_string(state.n()));
  }
  if (s.size() < 1 || s.size() > s.n() - 1) {
    throw std::invalid_argument(
        "subset must be nonempty and proper (1 <= |S| <= n-1)");
  }
}

// Offsets into the amplitude vector contributed by each digit string over
// `sites` (ascending, first site most significant in the local index).
std::vector<std::uint64_t> digit_offsets(const std::vector<int>& sites, int d,
                                         int n) {
  const auto k = static_cast<int>(sites.size());
  std::vector<std::uint64_t> place(sites.size());
  for (int j = 0; j < k; ++j) place[j] = ipow(d, n - sites[j]);

  std::vector<std::uint64_t> offsets(ipow(d, k));
  std::vector<int> digits(sites.size(), 0);
  std::uint64_t current = 0;
  for (std::size_t r = 0; r < offsets.size(); ++r) {
    offsets[r] = current;
    for (int j = k - 1; j >= 0; --j) {
      if (++digits[j] < d) {
        current += place[j];
        break;
      }
      digits[j] = 0;
      current -= place[j] * static_cast<std::uint64_t>(d - 1);
    }
  }
  return offsets;
}

// M(r, c) = psi[row digits r on `rows`, column digits c on the complement].
CMatrix gather(const QuditState& state, const SubsetSpec& rows) {
  const auto amps = state.amplitudes();
  const auto row_off = digit_offsets(rows.sites(), state.d(), state.n());
  const auto col_off =
      digit_offsets(rows.complement().sites(), state.d(), state.n());
  const auto nr = static_cast<Eigen::Index>(row_off.size());
  const auto nc = static_cast<Eigen::Index>(col_off.size());
  CMatrix m(nr, nc);
  for (Eigen::Index c = 0; c < nc; ++c) {
    const std::uint64_t base = col_off[static_cast<std::size_t>(c)];
    for (Eigen::Index r = 0; r < nr; ++r) {
      m(r, c) = amps[base + row_off[static_cast<std::size_t>(r)]];
    }
  }
  return m;
}

}  // namespace

SubsetSpec::SubsetSpec(std::vector<int> sites, int n)
    : sites_(std::move(sites)), n_(n) {
  if (n < 1) throw std::invalid_argument("subset needs n >= 1");
  for (std::size_t i = 0; i < sites_.size(); ++i) {
    if (sites_[i] < 1 || sites_[i] > n) {
      throw std::invalid_argument("site " + std::to_string(sites_[i]) +
                                  " out of range 1.." + std::to_string(n));
    }
    if (i > 0 && sites_[i] <= sites_[i - 1]) {
      throw std::invalid_argument("subset sites must be strictly increasing");
    }
  }
}

bool SubsetSpec::contains(int site) const {
  return std::binary_search(sites_.begin(), sites_.end(), site);
}

SubsetSpec SubsetSpec::complement() const {
  std::vector<int> rest;
  rest.reserve(static_cast<std::size_t>(n_) - sites_.size());
  for (int i = 1; i <= n_; ++i) {
    if (!contains(i)) rest.push_back(i);
  }
  return SubsetSpec(std::move(rest), n_);
}

std::string SubsetSpec::to_string() const {
  std::string out = "{";
  for (std::size_t i = 0; i < sites_.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(sites_[i]);
  }
  return out + "}";
}

std::uint64_t binomial(int n, int m) {
  if (m < 0 || m > n) return 0;
  m = std::min(m, n - m);
  std::uint64_t r = 1;
  for (int i = 1; i <= m; ++i) {
    r = r * static_cast<std::uint64_t>(n - m + i) / static_cast<std::uint64_t>(i);
  }
  return r;
}

std::vector<SubsetSpec> enumerate_subsets(int n, int m) {
  if (m < 1 || m > n - 1) {
    throw std::invalid_argument("subset size m = " + std::to_string(m) +
                                " outside 1.." + std::to_string(n - 1));
  }
  std::vector<SubsetSpec> out;
  out.reserve(binomial(n, m));
  std::vector<int> c(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) c[i] = i + 1;
  while (true) {
    out.emplace_back(c, n);
    // rightmost entry that can still advance
    int i = m - 1;
    while (i >= 0 && c[i] == n - m + i + 1) --i;
    if (i < 0) break;
    ++c[i];
    for (int j = i + 1; j < m; ++j) c[j] = c[j - 1] + 1;
  }
  return out;
}

double pairwise_sum(std::span<const double> values) {
  if (values.size() <= kPairwiseBlock) {
    double acc = 0.0;
    for (double v : values) acc += v;
    return acc;
  }
  const std::size_t half = values.size() / 2;
  return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

CMatrix reduced_density_matrix(const QuditState& state, const SubsetSpec& s) {
  check_proper(state, s);
  const CMatrix m = gather(state, s);
  CMatrix rho = m * m.adjoint();
  return rho;
}

double gram_purity(const QuditState& state, const SubsetSpec& rows) {
  check_proper(state, rows);
  const CMatrix m = gather(state, rows);
  const auto dim = m.rows();

  // ||G||_F^2 for G = M M^dagger from its lower triangle, one block of rows
  // at a time: diagonal entries once, strictly-lower entries twice. Column r
  // of `gt` holds conj(G(i0 + r, 0..i0+b)), so each row of G is contiguous.
  std::vector<double> per_row(static_cast<std::size_t>(dim));
  for (Eigen::Index i0 = 0; i0 < dim; i0 += kGramBlock) {
    const auto b = std::min<Eigen::Index>(kGramBlock, dim - i0);
    const CMatrix gt = m.topRows(i0 + b).conjugate() * m.middleRows(i0, b).transpose();
    for (Eigen::Index r = 0; r < b; ++r) {
      const auto i = i0 + r;
      const auto col = gt.col(r);
      per_row[static_cast<std::size_t>(i)] =
          2.0 * col.head(i).squaredNorm() + std::norm(col(i));
    }
  }
  return pairwise_sum(per_row);
}

double purity(const QuditState& state, const SubsetSpec& s) {
  check_proper(state, s);
  if (2 * s.size() <= s.n()) return gram_purity(state, s);
  return gram_purity(state, s.complement());
}

PurityReport purity_report(const QuditState& state, int m, unsigned workers) {
  auto subsets = enumerate_subsets(state.n(), m);
  std::vector<double> values(subsets.size());
  detail::parallel_for(subsets.size(), workers,
                       [&](std::size_t i) { values[i] = purity(state, subsets[i]); });

  PurityReport report;
  report.m = m;
  report.average = pairwise_sum(values) / static_cast<double>(values.size());
  report.per_subset.reserve(subsets.size());
  for (std::size_t i = 0; i < subsets.size(); ++i) {
    report.per_subset.push_back({std::move(subsets[i]), values[i]});
  }
  return report;
}

}  // namespace entq
