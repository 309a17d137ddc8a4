// entq-state-v1 files.
//
//   {
//     "format": "entq-state-v1",
//     "d": 2,
//     "n": 5,
//     "sparse": {
//       "00000": [0.7071067811865476, 0],
//       "11111": [0.7071067811865476, 0]
//     }
//   }
//
// Exactly one of "amplitudes" (d^n [re, im] pairs in index order) or "sparse"
// (base-d digit string, site 1 first -> [re, im]) is present. Digits beyond 9
// are written a..z, so the sparse form needs d <= 36.

#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

#include "entq/qstate.hpp"

namespace entq {

inline constexpr std::string_view kStateFormatTag = "entq-state-v1";
inline constexpr int kMaxSparseDim = 36;

class StateFileError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Encoding { kDense, kSparse };

std::string encode_state(const QuditState& state, Encoding encoding);

/// Throws StateFileError for anything wrong with the text or the state it
/// describes, including a norm outside the policy.
QuditState decode_state(std::string_view text,
                        NormPolicy policy = NormPolicy::kStrict);

void save_state(const std::filesystem::path& path, const QuditState& state,
                Encoding encoding);
QuditState load_state(const std::filesystem::path& path,
                      NormPolicy policy = NormPolicy::kStrict);

/// Digit string of basis index k for the sparse form.
std::string digit_string(std::uint64_t index, int d, int n);

}  // namespace entq
