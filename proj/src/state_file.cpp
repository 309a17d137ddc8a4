#include "entq/state_file.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace entq {

namespace {

using nlohmann::json;

char digit_char(int v) {
  return static_cast<char>(v < 10 ? '0' + v : 'a' + (v - 10));
}

int digit_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'z') return c - 'a' + 10;
  return -1;
}

// Shortest round-trip decimal; exact zeros (either sign) print as 0.
std::string number(double x) {
  if (x == 0.0) return "0";
  return json(x).dump();
}

std::string pair(const cplx& a) {
  return "[" + number(a.real()) + ", " + number(a.imag()) + "]";
}

cplx read_pair(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw StateFileError(where + ": expected [real, imaginary]");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

int read_int(const json& doc, const char* key) {
  if (!doc.contains(key) || !doc[key].is_number_integer()) {
    throw StateFileError(std::string("missing or non-integer field \"") + key + "\"");
  }
  return doc[key].get<int>();
}

}  // namespace

std::string digit_string(std::uint64_t index, int d, int n) {
  std::string s(static_cast<std::size_t>(n), '0');
  for (int i = n - 1; i >= 0; --i) {
    s[static_cast<std::size_t>(i)] = digit_char(static_cast<int>(index % d));
    index /= static_cast<std::uint64_t>(d);
  }
  return s;
}

std::string encode_state(const QuditState& state, Encoding encoding) {
  const int d = state.d();
  const int n = state.n();
  if (encoding == Encoding::kSparse && d > kMaxSparseDim) {
    throw StateFileError("sparse encoding needs d <= 36");
  }
  std::ostringstream out;
  out << "{\n"
      << "  \"format\": " << json(kStateFormatTag).dump() << ",\n"
      << "  \"d\": " << d << ",\n"
      << "  \"n\": " << n << ",\n";
  const auto amps = state.amplitudes();
  if (encoding == Encoding::kDense) {
    out << "  \"amplitudes\": [";
    for (std::size_t k = 0; k < amps.size(); ++k) {
      out << (k ? ",\n    " : "\n    ") << pair(amps[k]);
    }
    out << "\n  ]\n";
  } else {
    out << "  \"sparse\": {";
    bool first = true;
    for (std::size_t k = 0; k < amps.size(); ++k) {
      if (amps[k] == cplx(0.0)) continue;
      out << (first ? "\n    " : ",\n    ") << '"' << digit_string(k, d, n)
          << "\": " << pair(amps[k]);
      first = false;
    }
    out << "\n  }\n";
  }
  out << "}\n";
  return out.str();
}

QuditState decode_state(std::string_view text, NormPolicy policy) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw StateFileError(std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) throw StateFileError("state file must be a JSON object");
  if (!doc.contains("format") || doc["format"] != kStateFormatTag) {
    throw StateFileError("unsupported or missing \"format\" (expected entq-state-v1)");
  }
  const int d = read_int(doc, "d");
  const int n = read_int(doc, "n");
  if (d < 2 || n < 1) throw StateFileError("need d >= 2 and n >= 1");
  const auto dim = checked_dimension(d, n, size_cap());
  if (!dim) throw StateFileError("d^n exceeds the size cap");

  const bool dense = doc.contains("amplitudes");
  const bool sparse = doc.contains("sparse");
  if (dense == sparse) {
    throw StateFileError("exactly one of \"amplitudes\" and \"sparse\" is required");
  }

  std::vector<cplx> amps;
  if (dense) {
    const auto& list = doc["amplitudes"];
    if (!list.is_array() || list.size() != *dim) {
      throw StateFileError("\"amplitudes\" must hold d^n = " + std::to_string(*dim) +
                           " entries");
    }
    amps.reserve(*dim);
    for (std::size_t k = 0; k < list.size(); ++k) {
      amps.push_back(read_pair(list[k], "amplitudes[" + std::to_string(k) + "]"));
    }
  } else {
    const auto& map = doc["sparse"];
    if (!map.is_object()) throw StateFileError("\"sparse\" must be an object");
    if (d > kMaxSparseDim) throw StateFileError("sparse encoding needs d <= 36");
    amps.assign(*dim, cplx(0.0));
    for (const auto& [key, value] : map.items()) {
      if (key.size() != static_cast<std::size_t>(n)) {
        throw StateFileError("sparse key \"" + key + "\" must have n = " +
                             std::to_string(n) + " digits");
      }
      std::uint64_t k = 0;
      for (char c : key) {
        const int v = digit_value(c);
        if (v < 0 || v >= d) {
          throw StateFileError("sparse key \"" + key + "\" is not a base-" +
                               std::to_string(d) + " digit string");
        }
        k = k * static_cast<std::uint64_t>(d) + static_cast<std::uint64_t>(v);
      }
      amps[k] = read_pair(value, "sparse[\"" + key + "\"]");
    }
  }

  try {
    return QuditState::from_amplitudes(d, n, std::move(amps), policy);
  } catch (const std::exception& e) {
    throw StateFileError(e.what());
  }
}

void save_state(const std::filesystem::path& path, const QuditState& state,
                Encoding encoding) {
  const auto text = encode_state(state, encoding);
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw StateFileError("cannot open " + path.string() + " for writing");
  f << text;
  if (!f) throw StateFileError("write to " + path.string() + " failed");
}

QuditState load_state(const std::filesystem::path& path, NormPolicy policy) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw StateFileError("cannot open " + path.string());
  std::ostringstream buf;
  buf << f.rdbuf();
  return decode_state(buf.str(), policy);
}

}  // namespace entq
