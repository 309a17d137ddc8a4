#include "entq/qstate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <random>
#include <stdexcept>

namespace entq {

namespace {

constexpr double kUnitaryTol = 1e-10;
constexpr double kRescaleTol = 1e-12;

void check_dims(int d, int n) {
  if (d < 2) throw std::invalid_argument("local dimension d must be >= 2");
  if (n < 1) throw std::invalid_argument("site count n must be >= 1");
}

std::uint64_t require_dimension(int d, int n, std::uint64_t cap) {
  check_dims(d, n);
  auto dim = checked_dimension(d, n, cap);
  if (!dim) {
    throw std::length_error("d^n = " + std::to_string(d) + "^" +
                            std::to_string(n) + " exceeds the size cap of " +
                            std::to_string(cap) + " amplitudes");
  }
  return *dim;
}

double squared_norm(std::span<const cplx> v) {
  double acc = 0.0;
  for (const auto& a : v) acc += std::norm(a);
  return acc;
}

void check_site(int site, int n) {
  if (site < 1 || site > n) {
    throw std::out_of_range("site " + std::to_string(site) +
                            " out of range 1.." + std::to_string(n));
  }
}

std::uint64_t ipow(int base, int exp) {
  std::uint64_t r = 1;
  for (int i = 0; i < exp; ++i) r *= static_cast<std::uint64_t>(base);
  return r;
}

}  // namespace

std::uint64_t size_cap() {
  if (const char* env = std::getenv(kSizeCapEnv)) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return v;
  }
  return kDefaultSizeCap;
}

std::optional<std::uint64_t> checked_dimension(int d, int n,
                                               std::uint64_t limit) {
  if (d < 1 || n < 0) return std::nullopt;
  std::uint64_t dim = 1;
  for (int i = 0; i < n; ++i) {
    if (dim > limit / static_cast<std::uint64_t>(d)) return std::nullopt;
    dim *= static_cast<std::uint64_t>(d);
  }
  return dim;
}

QuditState QuditState::from_amplitudes(int d, int n,
                                       std::vector<cplx> amplitudes,
                                       NormPolicy policy, std::uint64_t cap) {
  const auto dim = require_dimension(d, n, cap);
  if (amplitudes.size() != dim) {
    throw std::invalid_argument("expected " + std::to_string(dim) +
                                " amplitudes, got " +
                                std::to_string(amplitudes.size()));
  }
  for (const auto& a : amplitudes) {
    if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) {
      throw std::invalid_argument("amplitudes must be finite");
    }
  }
  const double nrm = std::sqrt(squared_norm(amplitudes));
  if (nrm == 0.0) throw std::invalid_argument("zero amplitude vector");
  if (std::abs(nrm - 1.0) > kNormAcceptTol) {
    if (policy == NormPolicy::kStrict) {
      throw std::domain_error("state norm " + std::to_string(nrm) +
                              " deviates from 1 (use auto-normalization)");
    }
  }
  // accepted inputs are brought to unit norm; rounding-level deviations stay
  if (std::abs(nrm - 1.0) > kRescaleTol) {
    for (auto& a : amplitudes) a /= nrm;
  }
  return QuditState(d, n, std::move(amplitudes));
}

double QuditState::norm() const { return std::sqrt(squared_norm(amps_)); }

std::vector<int> index_to_digits(std::uint64_t index, int d, int n) {
  std::vector<int> digits(static_cast<std::size_t>(n));
  for (int i = n - 1; i >= 0; --i) {
    digits[static_cast<std::size_t>(i)] = static_cast<int>(index % d);
    index /= static_cast<std::uint64_t>(d);
  }
  if (index != 0) throw std::out_of_range("index exceeds d^n");
  return digits;
}

std::uint64_t digits_to_index(std::span<const int> digits, int d) {
  std::uint64_t k = 0;
  for (int s : digits) {
    if (s < 0 || s >= d) throw std::out_of_range("digit out of range");
    k = k * static_cast<std::uint64_t>(d) + static_cast<std::uint64_t>(s);
  }
  return k;
}

std::string_view family_name(Family f) {
  switch (f) {
    case Family::kBasis: return "basis";
    case Family::kProduct: return "product";
    case Family::kGhz: return "ghz";
    case Family::kW: return "w";
    case Family::kHaar: return "haar";
  }
  return "?";
}

std::optional<Family> parse_family(std::string_view name) {
  for (auto f : {Family::kBasis, Family::kProduct, Family::kGhz, Family::kW,
                 Family::kHaar}) {
    if (family_name(f) == name) return f;
  }
  return std::nullopt;
}

QuditState haar_state(int d, int n, std::uint64_t seed, std::uint64_t cap) {
  const auto dim = require_dimension(d, n, cap);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<cplx> amps(dim);
  for (auto& a : amps) {
    const double re = gauss(rng);
    const double im = gauss(rng);
    a = {re, im};
  }
  return normalize(d, n, std::move(amps), cap);
}

QuditState build(const StateSpec& spec, std::uint64_t cap) {
  const int d = spec.d;
  const int n = spec.n;
  const auto dim = require_dimension(d, n, cap);

  switch (spec.family) {
    case Family::kBasis: {
      if (spec.digits.size() != static_cast<std::size_t>(n)) {
        throw std::invalid_argument("basis state needs exactly n = " +
                                    std::to_string(n) + " digits");
      }
      std::vector<cplx> amps(dim);
      amps[digits_to_index(spec.digits, d)] = 1.0;
      return QuditState::from_amplitudes(d, n, std::move(amps),
                                         NormPolicy::kStrict, cap);
    }
    case Family::kProduct: {
      const auto& sites = spec.site_amplitudes;
      if (sites.size() != 1 && sites.size() != static_cast<std::size_t>(n)) {
        throw std::invalid_argument(
            "product state needs one local amplitude list or one per site");
      }
      std::vector<std::vector<cplx>> local;
      for (const auto& v : sites) {
        if (v.size() != static_cast<std::size_t>(d)) {
          throw std::invalid_argument("local amplitude list must have length d = " +
                                      std::to_string(d));
        }
        const double nrm = std::sqrt(squared_norm(v));
        if (nrm == 0.0) throw std::invalid_argument("zero local amplitude list");
        auto& w = local.emplace_back(v);
        for (auto& a : w) a /= nrm;
      }
      std::vector<cplx> amps(dim);
      std::vector<int> digits(static_cast<std::size_t>(n), 0);
      for (std::uint64_t k = 0; k < dim; ++k) {
        cplx a = 1.0;
        for (int i = 0; i < n; ++i) {
          const auto& w = local.size() == 1 ? local[0] : local[static_cast<std::size_t>(i)];
          a *= w[static_cast<std::size_t>(digits[static_cast<std::size_t>(i)])];
        }
        amps[k] = a;
        // odometer increment, least significant digit is site n
        for (int i = n - 1; i >= 0; --i) {
          if (++digits[static_cast<std::size_t>(i)] < d) break;
          digits[static_cast<std::size_t>(i)] = 0;
        }
      }
      return QuditState::from_amplitudes(d, n, std::move(amps),
                                         NormPolicy::kAutoNormalize, cap);
    }
    case Family::kGhz: {
      std::vector<cplx> amps(dim);
      const double a = std::sqrt(1.0 / d);
      const std::uint64_t stride = (dim - 1) / static_cast<std::uint64_t>(d - 1);
      for (int j = 0; j < d; ++j) amps[static_cast<std::uint64_t>(j) * stride] = a;
      return QuditState::from_amplitudes(d, n, std::move(amps),
                                         NormPolicy::kStrict, cap);
    }
    case Family::kW: {
      if (d != 2) throw std::invalid_argument("w state requires d = 2");
      std::vector<cplx> amps(dim);
      const double a = std::sqrt(1.0 / n);
      for (int i = 0; i < n; ++i) amps[std::uint64_t{1} << i] = a;
      return QuditState::from_amplitudes(d, n, std::move(amps),
                                         NormPolicy::kStrict, cap);
    }
    case Family::kHaar:
      return haar_state(d, n, spec.seed, cap);
  }
  throw std::invalid_argument("unknown state family");
}

QuditState normalize(int d, int n, std::vector<cplx> raw, std::uint64_t cap) {
  require_dimension(d, n, cap);
  const double nrm = std::sqrt(squared_norm(raw));
  if (nrm == 0.0) throw std::invalid_argument("cannot normalize a zero vector");
  if (nrm != 1.0) {
    for (auto& a : raw) a /= nrm;
  }
  return QuditState::from_amplitudes(d, n, std::move(raw),
                                     NormPolicy::kAutoNormalize, cap);
}

QuditState normalize(const QuditState& state) {
  const auto a = state.amplitudes();
  return normalize(state.d(), state.n(), std::vector<cplx>(a.begin(), a.end()),
                   std::numeric_limits<std::uint64_t>::max());
}

QuditState apply_local_unitary(const QuditState& state, int site,
                               const CMatrix& u) {
  const int d = state.d();
  const int n = state.n();
  check_site(site, n);
  if (u.rows() != d || u.cols() != d) {
    throw std::invalid_argument("local unitary must be d x d");
  }
  const CMatrix defect = u * u.adjoint() - CMatrix::Identity(d, d);
  if (defect.cwiseAbs().maxCoeff() > kUnitaryTol) {
    throw std::invalid_argument("matrix is not unitary within 1e-10");
  }

  // amplitude index = (outer * d + digit) * stride + inner
  const std::uint64_t stride = ipow(d, n - site);
  const std::uint64_t outer_count = ipow(d, site - 1);
  const auto src = state.amplitudes();
  std::vector<cplx> out(src.size());
  std::vector<cplx> column(static_cast<std::size_t>(d));
  for (std::uint64_t outer = 0; outer < outer_count; ++outer) {
    const std::uint64_t base = outer * static_cast<std::uint64_t>(d) * stride;
    for (std::uint64_t inner = 0; inner < stride; ++inner) {
      for (int j = 0; j < d; ++j) column[j] = src[base + j * stride + inner];
      for (int i = 0; i < d; ++i) {
        cplx acc = 0.0;
        for (int j = 0; j < d; ++j) acc += u(i, j) * column[j];
        out[base + i * stride + inner] = acc;
      }
    }
  }
  return QuditState::from_amplitudes(d, n, std::move(out), NormPolicy::kStrict,
                                     std::numeric_limits<std::uint64_t>::max());
}

QuditState permute_sites(const QuditState& state, std::span<const int> perm) {
  const int d = state.d();
  const int n = state.n();
  if (perm.size() != static_cast<std::size_t>(n)) {
    throw std::invalid_argument("permutation length must equal n");
  }
  std::vector<int> seen(static_cast<std::size_t>(n), 0);
  for (int p : perm) {
    check_site(p, n);
    if (seen[static_cast<std::size_t>(p - 1)]++) {
      throw std::invalid_argument("not a permutation");
    }
  }
  // weight[i]: place value in the output of the digit found at input site i+1
  std::vector<std::uint64_t> weight(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) weight[i] = ipow(d, n - perm[i]);

  const auto src = state.amplitudes();
  std::vector<cplx> out(src.size());
  std::vector<int> digits(static_cast<std::size_t>(n), 0);
  for (std::uint64_t k = 0; k < src.size(); ++k) {
    std::uint64_t target = 0;
    for (int i = 0; i < n; ++i) target += weight[i] * digits[i];
    out[target] = src[k];
    for (int i = n - 1; i >= 0; --i) {
      if (++digits[i] < d) break;
      digits[i] = 0;
    }
  }
  return QuditState::from_amplitudes(d, n, std::move(out), NormPolicy::kStrict,
                                     std::numeric_limits<std::uint64_t>::max());
}

}  // namespace entq
