#include "entq/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "entq/qstate.hpp"
#include "entq/reduce.hpp"
#include "entq/scott.hpp"
#include "entq/state_file.hpp"

namespace entq::cli {

namespace {

using nlohmann::ordered_json;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// JSON numbers carry the same 15 significant digits as the text output.
double rounded(double x) { return std::strtod(format_number(x).c_str(), nullptr); }

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) parts.push_back(cur);
  if (!s.empty() && s.back() == sep) parts.emplace_back();
  return parts;
}

double parse_double(const std::string& s) {
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size() || !std::isfinite(v)) {
    throw UsageError("not a number: '" + s + "'");
  }
  return v;
}

int parse_int(const std::string& s) {
  int v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw UsageError("not an integer: '" + s + "'");
  }
  return v;
}

// "re" or "re:im" entries separated by commas.
std::vector<cplx> parse_local_amplitudes(const std::string& s) {
  std::vector<cplx> out;
  for (const auto& item : split(s, ',')) {
    const auto colon = item.find(':');
    if (colon == std::string::npos) {
      out.emplace_back(parse_double(item), 0.0);
    } else {
      out.emplace_back(parse_double(item.substr(0, colon)),
                       parse_double(item.substr(colon + 1)));
    }
  }
  return out;
}

std::vector<int> parse_m_list(const std::string& s, int n) {
  std::vector<int> ms;
  if (s == "all") {
    for (int m = 1; m <= n - 1; ++m) ms.push_back(m);
    return ms;
  }
  for (const auto& item : split(s, ',')) {
    const int m = parse_int(item);
    if (m < 1 || m > n - 1) {
      throw UsageError("m = " + item + " outside 1.." + std::to_string(n - 1));
    }
    ms.push_back(m);
  }
  if (ms.empty()) throw UsageError("empty m list");
  return ms;
}

std::string redundancy_note(int n, int m) {
  return m > n / 2 ? "redundant: c*Q_" +
                         std::to_string(n - m)
                   : "";
}

ordered_json subset_json(const SubsetSpec& s) { return ordered_json(s.sites()); }

std::string subset_csv(const SubsetSpec& s) {
  std::string out;
  for (int site : s.sites()) {
    if (!out.empty()) out += ' ';
    out += std::to_string(site);
  }
  return out;
}

// ---------------------------------------------------------------------------

struct GenOptions {
  std::string family;
  int d = 2;
  int n = 1;
  std::string digits;
  std::vector<std::string> sites;
  std::uint64_t seed = 0;
  std::string output;
  bool dense = false;
  bool sparse = false;
};

int cmd_gen(const GenOptions& o, std::ostream& out) {
  const auto family = parse_family(o.family);
  if (!family) throw UsageError("unknown family '" + o.family + "'");

  StateSpec spec;
  spec.family = *family;
  spec.d = o.d;
  spec.n = o.n;
  spec.seed = o.seed;
  if (*family == Family::kBasis) {
    for (char c : o.digits) {
      if (c < '0' || c > '9') {
        if (c < 'a' || c > 'z') throw UsageError("bad digit '" + std::string(1, c) + "'");
        spec.digits.push_back(c - 'a' + 10);
      } else {
        spec.digits.push_back(c - '0');
      }
    }
  }
  if (*family == Family::kProduct) {
    if (o.sites.empty()) throw UsageError("product family needs --site");
    for (const auto& s : o.sites) spec.site_amplitudes.push_back(parse_local_amplitudes(s));
  }

  QuditState state = [&] {
    try {
      return build(spec);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    } catch (const std::out_of_range& e) {
      throw UsageError(e.what());
    }
  }();

  Encoding enc = (*family == Family::kHaar || *family == Family::kProduct)
                     ? Encoding::kDense
                     : Encoding::kSparse;
  if (o.dense) enc = Encoding::kDense;
  if (o.sparse) enc = Encoding::kSparse;

  if (o.output.empty() || o.output == "-") {
    out << encode_state(state, enc);
  } else {
    save_state(o.output, state, enc);
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------

struct MeasureOptions {
  std::string input;
  std::string m = "";
  bool per_subset = false;
  bool verify = false;
  bool normalize = false;
  std::string format = "text";
  unsigned workers = 0;
};

ordered_json verification_json(const ComplementReport& rep) {
  ordered_json rows = ordered_json::array();
  for (const auto& r : rep.rows) {
    rows.push_back({{"m", r.m},
                    {"n_minus_m", rep.n - r.m},
                    {"q_m", rounded(r.q_m)},
                    {"q_n_minus_m", rounded(r.q_complement)},
                    {"coefficient", rounded(r.coefficient)},
                    {"predicted", rounded(r.predicted)},
                    {"residual", rounded(r.residual)}});
  }
  return {{"tolerance", rep.tolerance},
          {"rows", rows},
          {"max_purity_residual", rounded(rep.max_purity_residual)},
          {"bipartitions_checked", rep.bipartitions_checked},
          {"bipartitions_skipped", rep.bipartitions_skipped},
          {"pass", rep.pass}};
}

void print_verification_text(const ComplementReport& rep, std::ostream& out) {
  out << "complement relation Q_{n-m} = c(d,n,m) * Q_m  (d=" << rep.d
      << ", n=" << rep.n << ", tolerance " << format_number(rep.tolerance) << ")\n";
  for (const auto& r : rep.rows) {
    out << "m=" << r.m << "  n-m=" << rep.n - r.m
        << "  Q_m = " << format_number(r.q_m)
        << "  Q_n-m = " << format_number(r.q_complement)
        << "  c = " << format_number(r.coefficient)
        << "  predicted = " << format_number(r.predicted)
        << "  residual = " << format_number(r.residual) << '\n';
  }
  out << "max complement purity residual = " << format_number(rep.max_purity_residual)
      << "  (bipartitions checked " << rep.bipartitions_checked << ", skipped "
      << rep.bipartitions_skipped << ")\n";
  out << "result: " << (rep.pass ? "PASS" : "FAIL") << '\n';
}

QuditState load_input(const std::string& path, bool normalize) {
  return load_state(path, normalize ? NormPolicy::kAutoNormalize : NormPolicy::kStrict);
}

int cmd_measure(const MeasureOptions& o, std::ostream& out) {
  const auto state = load_input(o.input, o.normalize);
  const int n = state.n();
  if (n < 2) throw UsageError("measure needs n >= 2");
  std::vector<int> ms;
  if (o.m.empty()) {
    for (int m = 1; m <= n / 2; ++m) ms.push_back(m);
  } else {
    ms = parse_m_list(o.m, n);
  }

  std::vector<ScottEntry> entries;
  std::vector<PurityReport> reports;
  for (int m : ms) {
    auto report = purity_report(state, m, o.workers);
    ScottEntry e;
    e.m = m;
    e.average_purity = report.average;
    e.q = scott_from_average_purity(state.d(), m, report.average);
    e.subset_count = report.per_subset.size();
    e.beyond_half = m > n / 2;
    entries.push_back(e);
    if (o.per_subset) reports.push_back(std::move(report));
  }
  std::optional<ComplementReport> verification;
  if (o.verify) verification = verify_complement_relation(state);

  if (o.format == "json") {
    ordered_json doc;
    doc["input"] = o.input;
    doc["d"] = state.d();
    doc["n"] = n;
    ordered_json rows = ordered_json::array();
    for (const auto& e : entries) {
      rows.push_back({{"m", e.m},
                      {"q", rounded(e.q)},
                      {"average_purity", rounded(e.average_purity)},
                      {"subset_count", e.subset_count},
                      {"beyond_half", e.beyond_half}});
    }
    doc["rows"] = rows;
    if (o.per_subset) {
      ordered_json subs = ordered_json::array();
      for (const auto& r : reports) {
        for (const auto& sp : r.per_subset) {
          subs.push_back({{"m", r.m},
                          {"subset", subset_json(sp.subset)},
                          {"purity", rounded(sp.purity)}});
        }
      }
      doc["per_subset"] = subs;
    }
    if (verification) doc["verification"] = verification_json(*verification);
    out << doc.dump(2) << '\n';
  } else if (o.format == "csv") {
    out << "m,q_m,average_purity,subset_count,beyond_half\n";
    for (const auto& e : entries) {
      out << e.m << ',' << format_number(e.q) << ',' << format_number(e.average_purity)
          << ',' << e.subset_count << ',' << (e.beyond_half ? "true" : "false") << '\n';
    }
    if (o.per_subset) {
      out << "\nm,subset,purity\n";
      for (const auto& r : reports) {
        for (const auto& sp : r.per_subset) {
          out << r.m << ',' << subset_csv(sp.subset) << ',' << format_number(sp.purity)
              << '\n';
        }
      }
    }
    if (verification) {
      out << "\nm,n_minus_m,q_m,q_n_minus_m,coefficient,predicted,residual\n";
      for (const auto& r : verification->rows) {
        out << r.m << ',' << n - r.m << ',' << format_number(r.q_m) << ','
            << format_number(r.q_complement) << ',' << format_number(r.coefficient)
            << ',' << format_number(r.predicted) << ',' << format_number(r.residual)
            << '\n';
      }
    }
  } else {
    out << "state: " << o.input << "  d=" << state.d() << "  n=" << n << '\n';
    out << std::left << std::setw(4) << "m" << std::setw(20) << "Q_m" << std::setw(20)
        << "average_purity" << std::setw(9) << "subsets" << "note\n";
    for (const auto& e : entries) {
      out << std::setw(4) << e.m << std::setw(20) << format_number(e.q) << std::setw(20)
          << format_number(e.average_purity) << std::setw(9) << e.subset_count
          << redundancy_note(n, e.m) << '\n';
    }
    if (o.per_subset) {
      for (const auto& r : reports) {
        out << "\npurities, m=" << r.m << '\n';
        for (const auto& sp : r.per_subset) {
          out << "  " << std::setw(24) << sp.subset.to_string() << format_number(sp.purity)
              << '\n';
        }
      }
    }
    if (verification) {
      out << '\n';
      print_verification_text(*verification, out);
    }
  }
  return verification && !verification->pass ? kExitVerifyFailed : kExitOk;
}

// ---------------------------------------------------------------------------

struct VerifyOptions {
  std::string input;
  double tolerance = kQTolerance;
  bool normalize = false;
  std::string format = "text";
};

int cmd_verify(const VerifyOptions& o, std::ostream& out) {
  const auto state = load_input(o.input, o.normalize);
  if (state.n() < 2) throw UsageError("verify needs n >= 2");
  const auto rep = verify_complement_relation(state, o.tolerance);
  if (o.format == "json") {
    ordered_json doc;
    doc["input"] = o.input;
    doc["d"] = state.d();
    doc["n"] = state.n();
    doc["verification"] = verification_json(rep);
    out << doc.dump(2) << '\n';
  } else {
    out << "state: " << o.input << '\n';
    print_verification_text(rep, out);
  }
  return rep.pass ? kExitOk : kExitVerifyFailed;
}

// ---------------------------------------------------------------------------

struct HaarOptions {
  int d = 2;
  int n = 2;
  std::string m;
  std::uint64_t samples = 1000;
  std::uint64_t seed = 0;
  std::string format = "text";
  unsigned workers = 0;
};

int cmd_haar(const HaarOptions& o, std::ostream& out) {
  if (o.d < 2 || o.n < 2) throw UsageError("haar needs d >= 2 and n >= 2");
  const auto ms = parse_m_list(o.m, o.n);
  if (o.samples < 1) throw UsageError("--samples must be >= 1");
  HaarStatistics stats;
  try {
    stats = haar_statistics(o.d, o.n, ms, o.samples, o.seed, o.workers);
  } catch (const std::length_error& e) {
    throw UsageError(e.what());
  }

  if (o.format == "json") {
    ordered_json doc;
    doc["d"] = stats.d;
    doc["n"] = stats.n;
    doc["samples"] = stats.samples;
    doc["seed"] = stats.seed;
    ordered_json rows = ordered_json::array();
    for (const auto& mo : stats.moments) {
      rows.push_back({{"m", mo.m},
                      {"mean", rounded(mo.mean)},
                      {"stddev", rounded(mo.stddev)},
                      {"std_error", rounded(mo.std_error)},
                      {"samples", mo.samples}});
    }
    doc["rows"] = rows;
    out << doc.dump(2) << '\n';
  } else if (o.format == "csv") {
    out << "m,mean,stddev,std_error,samples,seed\n";
    for (const auto& mo : stats.moments) {
      out << mo.m << ',' << format_number(mo.mean) << ',' << format_number(mo.stddev)
          << ',' << format_number(mo.std_error) << ',' << mo.samples << ',' << stats.seed
          << '\n';
    }
  } else {
    out << "haar ensemble  d=" << stats.d << "  n=" << stats.n << "  samples="
        << stats.samples << "  seed=" << stats.seed << '\n';
    out << std::left << std::setw(4) << "m" << std::setw(20) << "mean" << std::setw(20)
        << "stddev" << "std_error\n";
    for (const auto& mo : stats.moments) {
      out << std::setw(4) << mo.m << std::setw(20) << format_number(mo.mean)
          << std::setw(20) << format_number(mo.stddev) << format_number(mo.std_error)
          << '\n';
    }
  }
  return kExitOk;
}

}  // namespace

std::string format_number(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.15g", x);
  std::string s(buf);
  if (s == "-0") s = "0";
  return s;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Scott multipartite entanglement measures for pure qudit states", "entq"};
  app.require_subcommand(1);
  const std::vector<std::string> formats{"text", "csv", "json"};

  GenOptions gen;
  auto* g = app.add_subcommand("gen", "write a state file");
  g->add_option("--family", gen.family, "basis | product | ghz | w | haar")->required();
  g->add_option("--d", gen.d, "local dimension")->required();
  g->add_option("--n", gen.n, "number of sites")->required();
  g->add_option("--digits", gen.digits, "basis: digit string, site 1 first");
  g->add_option("--site", gen.sites,
                "product: local amplitudes 're[:im],...' (once, or once per site)");
  g->add_option("--seed", gen.seed, "haar: RNG seed");
  g->add_option("-o,--output", gen.output, "output path (default stdout)");
  g->add_flag("--dense", gen.dense, "force the dense encoding");
  g->add_flag("--sparse", gen.sparse, "force the sparse encoding");

  MeasureOptions meas;
  auto* m = app.add_subcommand("measure", "compute Q_m for a state file");
  m->add_option("input", meas.input, "state file")->required();
  m->add_option("--m", meas.m, "comma-separated subset sizes or 'all' (default 1..n/2)");
  m->add_flag("--per-subset", meas.per_subset, "list every subset purity");
  m->add_flag("--verify", meas.verify, "append the complement-relation check");
  m->add_flag("--normalize", meas.normalize, "rescale a non-normalized input");
  m->add_option("--format", meas.format)->check(CLI::IsMember(formats));
  m->add_option("--workers", meas.workers, "threads (0 = hardware)");

  VerifyOptions ver;
  auto* v = app.add_subcommand("verify", "check Q_{n-m} = c(d,n,m) Q_m");
  v->add_option("input", ver.input, "state file")->required();
  v->add_option("--tolerance", ver.tolerance, "residual tolerance");
  v->add_flag("--normalize", ver.normalize, "rescale a non-normalized input");
  v->add_option("--format", ver.format)->check(CLI::IsMember({"text", "json"}));

  HaarOptions haar;
  auto* h = app.add_subcommand("haar", "Haar-ensemble statistics of Q_m");
  h->add_option("--d", haar.d)->required();
  h->add_option("--n", haar.n)->required();
  h->add_option("--m", haar.m, "comma-separated subset sizes or 'all'")->required();
  h->add_option("--samples", haar.samples);
  h->add_option("--seed", haar.seed);
  h->add_option("--format", haar.format)->check(CLI::IsMember(formats));
  h->add_option("--workers", haar.workers, "threads (0 = hardware)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "entq: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (g->parsed()) return cmd_gen(gen, out);
    if (m->parsed()) return cmd_measure(meas, out);
    if (v->parsed()) return cmd_verify(ver, out);
    if (h->parsed()) return cmd_haar(haar, out);
  } catch (const StateFileError& e) {
    err << "entq: file error: " << e.what() << '\n';
  } catch (const UsageError& e) {
    err << "entq: " << e.what() << '\n';
  } catch (const std::exception& e) {
    err << "entq: " << e.what() << '\n';
  }
  return kExitUsage;
}

}  // namespace entq::cli
