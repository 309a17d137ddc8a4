#include <doctest.h>

#include <cmath>
#include <filesystem>

#include "entq/state_file.hpp"
#include "support.hpp"

using namespace entq;

TEST_CASE("GHZ_5 sparse encoding") {
  const auto text = encode_state(testing::ghz(2, 5), Encoding::kSparse);
  CHECK(text ==
        "{\n"
        "  \"format\": \"entq-state-v1\",\n"
        "  \"d\": 2,\n"
        "  \"n\": 5,\n"
        "  \"sparse\": {\n"
        "    \"00000\": [0.7071067811865476, 0],\n"
        "    \"11111\": [0.7071067811865476, 0]\n"
        "  }\n"
        "}\n");
}

TEST_CASE("dense and sparse round trips are exact") {
  for (auto [d, n] : {std::pair{2, 5}, {3, 3}, {12, 2}}) {
    const auto psi = haar_state(d, n, 31);
    for (auto enc : {Encoding::kDense, Encoding::kSparse}) {
      const auto back = decode_state(encode_state(psi, enc));
      CHECK(back.d() == d);
      CHECK(back.n() == n);
      CHECK(std::equal(psi.amplitudes().begin(), psi.amplitudes().end(),
                       back.amplitudes().begin()));
    }
  }
}

TEST_CASE("digit strings use 0-9 then a-z") {
  CHECK(digit_string(11, 3, 3) == "102");
  CHECK(digit_string(35, 36, 2) == "0z");
  CHECK(digit_string(10 * 12 + 11, 12, 2) == "ab");
}

TEST_CASE("hand-written sparse W state") {
  const auto psi = decode_state(R"({"format": "entq-state-v1", "d": 2, "n": 3,
    "sparse": {"100": [1, 0], "010": [1, 0], "001": [1, 0]}})",
                                NormPolicy::kAutoNormalize);
  const auto w = testing::w_state(3);
  for (std::size_t k = 0; k < 8; ++k) CHECK(std::abs(psi[k] - w[k]) < 1e-15);
}

TEST_CASE("decode errors") {
  const char* cases[] = {
      "not json",
      "[1, 2]",
      R"({"d": 2, "n": 1, "amplitudes": [[1, 0], [0, 0]]})",
      R"({"format": "entq-state-v0", "d": 2, "n": 1, "amplitudes": [[1, 0], [0, 0]]})",
      R"({"format": "entq-state-v1", "d": 1, "n": 1, "amplitudes": [[1, 0]]})",
      R"({"format": "entq-state-v1", "d": 2.5, "n": 1, "amplitudes": [[1, 0], [0, 0]]})",
      R"({"format": "entq-state-v1", "d": 2, "n": 1})",
      R"({"format": "entq-state-v1", "d": 2, "n": 1, "amplitudes": [[1, 0], [0, 0]],
          "sparse": {"0": [1, 0]}})",
      R"({"format": "entq-state-v1", "d": 2, "n": 1, "amplitudes": [[1, 0]]})",
      R"({"format": "entq-state-v1", "d": 2, "n": 1, "amplitudes": [[1, 0], [0]]})",
      R"({"format": "entq-state-v1", "d": 2, "n": 1, "amplitudes": [[1, 0], "x"]})",
      R"({"format": "entq-state-v1", "d": 2, "n": 2, "sparse": {"0": [1, 0]}})",
      R"({"format": "entq-state-v1", "d": 2, "n": 2, "sparse": {"02": [1, 0]}})",
      R"({"format": "entq-state-v1", "d": 2, "n": 1, "sparse": {"0": [2, 0]}})",
      R"({"format": "entq-state-v1", "d": 2, "n": 1, "sparse": {}})",
      R"({"format": "entq-state-v1", "d": 2, "n": 40, "sparse": {}})",
  };
  for (const char* c : cases) {
    INFO(c);
    CHECK_THROWS_AS(decode_state(c), StateFileError);
  }
  // the norm violation is accepted when auto-normalizing
  CHECK_NOTHROW(decode_state(R"({"format": "entq-state-v1", "d": 2, "n": 1,
                                  "sparse": {"0": [2, 0]}})",
                             NormPolicy::kAutoNormalize));
}

TEST_CASE("save and load") {
  const auto dir = std::filesystem::temp_directory_path() / "entq_state_file_test";
  std::filesystem::create_directories(dir);
  const auto path = dir / "w4.json";
  const auto w = testing::w_state(4);
  save_state(path, w, Encoding::kSparse);
  const auto back = load_state(path);
  CHECK(std::equal(w.amplitudes().begin(), w.amplitudes().end(), back.amplitudes().begin()));
  CHECK_THROWS_AS(load_state(dir / "missing.json"), StateFileError);
  CHECK_THROWS_AS(save_state(dir / "no" / "such" / "dir.json", w, Encoding::kDense),
                  StateFileError);
  std::filesystem::remove_all(dir);
}
