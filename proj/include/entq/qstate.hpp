// Pure states of n d-level sites.
//
// Index convention: amplitude k belongs to the basis state whose base-d digits
// are (s_1, ..., s_n) with site 1 the most significant digit,
//   k = sum_i s_i * d^(n - i).
// Sites are 1-based wherever they cross the public API.

#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace entq {

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;

/// Tolerance a caller-supplied amplitude vector may deviate from unit norm
/// before construction is rejected (unless auto-normalization is requested).
inline constexpr double kNormAcceptTol = 1e-8;

/// Default cap on d^n.
inline constexpr std::uint64_t kDefaultSizeCap = std::uint64_t{1} << 26;

/// Name of the environment variable overriding the size cap.
inline constexpr const char* kSizeCapEnv = "ENTQ_MAX_AMPLITUDES";

/// The active size cap: ENTQ_MAX_AMPLITUDES when set to a positive integer,
/// otherwise kDefaultSizeCap.
std::uint64_t size_cap();

/// d^n, or nullopt when it exceeds `limit` (or overflows 64 bits).
std::optional<std::uint64_t> checked_dimension(int d, int n, std::uint64_t limit);

enum class NormPolicy { kStrict, kAutoNormalize };

class QuditState {
 public:
  /// Takes ownership of `amplitudes`. Throws std::invalid_argument for bad
  /// (d, n), a length other than d^n, or a zero vector; std::length_error when
  /// d^n exceeds `cap`; std::domain_error when the norm is off by more than
  /// kNormAcceptTol under NormPolicy::kStrict.
  static QuditState from_amplitudes(int d, int n, std::vector<cplx> amplitudes,
                                    NormPolicy policy = NormPolicy::kStrict,
                                    std::uint64_t cap = size_cap());

  int d() const noexcept { return d_; }
  int n() const noexcept { return n_; }
  std::size_t size() const noexcept { return amps_.size(); }
  std::span<const cplx> amplitudes() const noexcept { return amps_; }
  const cplx& operator[](std::size_t k) const { return amps_[k]; }

  double norm() const;

 private:
  QuditState(int d, int n, std::vector<cplx> amps)
      : d_(d), n_(n), amps_(std::move(amps)) {}

  int d_ = 2;
  int n_ = 1;
  std::vector<cplx> amps_;
};

// ---------------------------------------------------------------------------
// Index convention helpers.

/// Base-d digits of `index`, site 1 first.
std::vector<int> index_to_digits(std::uint64_t index, int d, int n);

/// Inverse of index_to_digits.
std::uint64_t digits_to_index(std::span<const int> digits, int d);

// ---------------------------------------------------------------------------
// Builders.

enum class Family { kBasis, kProduct, kGhz, kW, kHaar };

std::string_view family_name(Family f);
std::optional<Family> parse_family(std::string_view name);

struct StateSpec {
  Family family = Family::kBasis;
  int d = 2;
  int n = 1;
  /// kBasis: one digit per site, site 1 first.
  std::vector<int> digits;
  /// kProduct: one local amplitude list (length d) per site, or a single list
  /// applied to every site. Each list is normalized independently.
  std::vector<std::vector<cplx>> site_amplitudes;
  /// kHaar.
  std::uint64_t seed = 0;
};

QuditState build(const StateSpec& spec, std::uint64_t cap = size_cap());

/// Haar-random pure state: i.i.d. standard complex Gaussian entries, then
/// normalized. Bit-reproducible for a given seed on a given platform.
QuditState haar_state(int d, int n, std::uint64_t seed,
                      std::uint64_t cap = size_cap());

/// Rescales a raw amplitude vector to unit norm.
QuditState normalize(int d, int n, std::vector<cplx> raw,
                     std::uint64_t cap = size_cap());
QuditState normalize(const QuditState& state);

/// Applies the d x d unitary `u` to `site` (1-based).
QuditState apply_local_unitary(const QuditState& state, int site,
                               const CMatrix& u);

/// Relabels sites: the site at position i (1-based) of `state` moves to
/// position perm[i - 1]. `perm` must be a permutation of 1..n.
QuditState permute_sites(const QuditState& state, std::span<const int> perm);

}  // namespace entq
