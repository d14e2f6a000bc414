#pragma once

#include <qid/suites.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <array>
#include <chrono>
#include <cstdio>
#include <map>
#include <sstream>
#include <string>
#include <vector>

namespace qid {

inline constexpr const char* kToolVersion = "0.1.0";

enum class ReportFormat { text, json };

struct SuiteConfig {
  std::string identity = "all";
  int n_min = 1;
  int n_max = 3;
  int trials = 10;
  std::uint64_t seed = 0;
  ReportFormat format = ReportFormat::text;
  DetBackend backend = DetBackend::rational_elimination;
  std::string mutate;  // empty: no fault injection

  std::vector<Identity> selected() const {
    if (identity == "all")
      return {kAllIdentities.begin(), kAllIdentities.end()};
    return {*parse_identity(identity)};
  }
};

struct TrialRecord {
  std::string identity;
  int n = 0;
  int trial = 0;
  std::uint64_t cell_seed = 0;
  ParamList params;
  enum class Status { pass, fail, rejected } status = Status::fail;
  long long elapsed_us = 0;
  std::string lhs, rhs;  // serialized sides, populated on failure
};

struct Report {
  SuiteConfig config;
  std::vector<TrialRecord> records;

  int count(TrialRecord::Status s) const {
    int k = 0;
    for (const auto& r : records) k += r.status == s;
    return k;
  }
  bool all_pass() const { return count(TrialRecord::Status::fail) == 0; }
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct HelpRequested {
  std::string text;
};

namespace harness_detail {

inline const char* status_name(TrialRecord::Status s) {
  switch (s) {
    case TrialRecord::Status::pass: return "pass";
    case TrialRecord::Status::fail: return "fail";
    case TrialRecord::Status::rejected: return "rejected-sample";
  }
  return "?";
}

inline void build_cli(CLI::App& app, SuiteConfig& cfg, std::string& identity,
                      std::string& format, std::string& backend, std::string& mutate) {
  app.name("qid");
  CLI::App* verify = app.add_subcommand("verify", "run identity verification suites");
  app.require_subcommand(0, 1);
  verify->add_option("--identity", identity, "suite to run (default all)")
      ->check(CLI::IsMember({"theorem1", "newton-c0", "jackson-corollary", "jackson-8phi7",
                             "kara", "krattenthaler", "fnk", "lemma33", "cofactor",
                             "lemmas2x", "all"}));
  verify->add_option("--n-min", cfg.n_min, "smallest size parameter");
  verify->add_option("--n-max", cfg.n_max, "largest size parameter");
  verify->add_option("--trials", cfg.trials, "trials per (identity, n) cell");
  verify->add_option("--seed", cfg.seed, "base seed for parameter draws");
  verify->add_option("--format", format, "report format")
      ->check(CLI::IsMember({"text", "json"}));
  verify->add_option("--det-backend", backend, "determinant algorithm")
      ->check(CLI::IsMember({"rational", "fraction-free"}));
  verify->add_option("--mutate", mutate,
                     "inject a one-exponent defect into the named identity (self-test)")
      ->check(CLI::IsMember({"theorem1", "newton-c0", "jackson-corollary", "jackson-8phi7",
                             "kara", "krattenthaler", "fnk", "lemma33", "cofactor",
                             "lemmas2x"}));
}

}  // namespace harness_detail

/// Parses verify-subcommand arguments (argv without the program name).
/// Throws UsageError on invalid input, HelpRequested for --help.
inline SuiteConfig parse_args(const std::vector<std::string>& args) {
  SuiteConfig cfg;
  std::string identity = "all", format = "text", backend = "rational", mutate;
  CLI::App app;
  harness_detail::build_cli(app, cfg, identity, format, backend, mutate);
  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    throw HelpRequested{app.help()};
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }
  cfg.identity = identity;
  cfg.format = format == "json" ? ReportFormat::json : ReportFormat::text;
  cfg.backend = backend == "fraction-free" ? DetBackend::fraction_free
                                           : DetBackend::rational_elimination;
  cfg.mutate = mutate;
  if (cfg.n_min > cfg.n_max) throw UsageError("--n-min must not exceed --n-max");
  if (cfg.n_min < 0) throw UsageError("--n-min must be nonnegative");
  if (cfg.trials < 1) throw UsageError("--trials must be positive");
  return cfg;
}

/// Executes every (identity, n, trial) cell. Cells are independent (each
/// draws from its own derived seed) and a failing cell never aborts the run.
inline Report run_suite(const SuiteConfig& cfg) {
  Report report;
  report.config = cfg;
  for (Identity id : cfg.selected()) {
    const bool mutate_this = cfg.mutate == identity_name(id);
    for (int n = std::max(cfg.n_min, identity_min_n(id)); n <= cfg.n_max; ++n) {
      for (int trial = 0; trial < cfg.trials; ++trial) {
        TrialRecord rec;
        rec.identity = identity_name(id);
        rec.n = n;
        rec.trial = trial;
        rec.cell_seed = derive_seed(cfg.seed, rec.identity, n, trial);
        const auto start = std::chrono::steady_clock::now();
        try {
          CellResult cell = run_cell(id, n, rec.cell_seed, cfg.backend, mutate_this);
          rec.params = std::move(cell.params);
          if (cell.rejected) {
            rec.status = TrialRecord::Status::rejected;
          } else if (cell.pass) {
            rec.status = TrialRecord::Status::pass;
          } else {
            rec.status = TrialRecord::Status::fail;
            rec.lhs = std::move(cell.lhs);
            rec.rhs = std::move(cell.rhs);
          }
        } catch (const std::exception& e) {
          rec.status = TrialRecord::Status::fail;
          rec.lhs = std::string("exception: ") + e.what();
          rec.rhs = "";
        }
        rec.elapsed_us = std::chrono::duration_cast<std::chrono::microseconds>(
                             std::chrono::steady_clock::now() - start)
                             .count();
        report.records.push_back(std::move(rec));
      }
    }
  }
  return report;
}

inline nlohmann::ordered_json report_json(const Report& r) {
  using json = nlohmann::ordered_json;
  json out;
  out["schema"] = 1;
  out["tool"] = "qid";
  out["version"] = kToolVersion;
  out["config"] = {
      {"identity", r.config.identity},
      {"n_min", r.config.n_min},
      {"n_max", r.config.n_max},
      {"trials", r.config.trials},
      {"seed", r.config.seed},
      {"format", r.config.format == ReportFormat::json ? "json" : "text"},
      {"det_backend", r.config.backend == DetBackend::fraction_free ? "fraction-free"
                                                                    : "rational"},
      {"mutate", r.config.mutate},
  };
  out["conventions"] = {
      {"cj_index", "C_n = f(a_1)/prod(a_1-b_i)(a_1-c/b_i); middle C_j uses a_{n-j+1} and "
                   "the first n-j+1 a-nodes; basis_j pairs the first j b-nodes with the "
                   "first n-j a-nodes"},
      {"yjk_endpoints", "a-pairs (a q^{-t}, c q^t/a) t=0..n-j (j<k) else 0..n-j-1; "
                        "b-pairs (b q^{1-n+s}, c q^{n-1-s}/b) s=0..j-2 (j<k) else 0..j-1"},
      {"fnk_sign", "F_{n,k} = (-1)^{n+k+1+C(n,2)} det(h_{2n-i+1}(U-Y_{j,k}))"},
      {"leibniz_binding", "(fg)d1 = f(x1)(g d1) + (f d1) g(x2)"},
  };
  json records = json::array();
  for (const auto& rec : r.records) {
    json jr;
    jr["identity"] = rec.identity;
    jr["n"] = rec.n;
    jr["trial"] = rec.trial;
    char seedbuf[19];
    std::snprintf(seedbuf, sizeof seedbuf, "0x%016llx",
                  static_cast<unsigned long long>(rec.cell_seed));
    jr["seed_offset"] = seedbuf;
    json params = json::object();
    for (const auto& [k, v] : rec.params) params[k] = v;
    jr["params"] = params;
    jr["status"] = harness_detail::status_name(rec.status);
    jr["elapsed_us"] = rec.elapsed_us;
    if (rec.status == TrialRecord::Status::fail) {
      jr["lhs"] = rec.lhs;
      jr["rhs"] = rec.rhs;
    }
    records.push_back(std::move(jr));
  }
  out["records"] = std::move(records);
  std::map<std::string, std::array<int, 3>> per_identity;
  for (const auto& rec : r.records) {
    auto& tally = per_identity[rec.identity];
    tally[static_cast<int>(rec.status)] += 1;
  }
  json summary;
  summary["total"] = static_cast<int>(r.records.size());
  summary["pass"] = r.count(TrialRecord::Status::pass);
  summary["fail"] = r.count(TrialRecord::Status::fail);
  summary["rejected"] = r.count(TrialRecord::Status::rejected);
  json per = json::object();
  for (const auto& [name, tally] : per_identity)
    per[name] = {{"pass", tally[0]}, {"fail", tally[1]}, {"rejected", tally[2]}};
  summary["identities"] = std::move(per);
  out["summary"] = std::move(summary);
  return out;
}

/// Zeroes timing fields so two reports from identical configs compare equal.
inline nlohmann::ordered_json normalize_report_json(nlohmann::ordered_json j) {
  for (auto& rec : j["records"]) rec["elapsed_us"] = 0;
  return j;
}

inline std::string emit_report(const Report& r, ReportFormat format) {
  if (format == ReportFormat::json) return report_json(r).dump(2) + "\n";

  std::ostringstream os;
  os << "qid " << kToolVersion << "  seed=" << r.config.seed << "  backend="
     << (r.config.backend == DetBackend::fraction_free ? "fraction-free" : "rational");
  if (!r.config.mutate.empty()) os << "  mutate=" << r.config.mutate;
  os << "\n";
  std::map<std::string, std::array<int, 3>> per_identity;
  for (const auto& rec : r.records)
    per_identity[rec.identity][static_cast<int>(rec.status)] += 1;
  os << "identity             pass  fail  rejected\n";
  for (const auto& [name, tally] : per_identity) {
    os << name;
    for (std::size_t i = name.size(); i < 21; ++i) os << ' ';
    os << tally[0] << "     " << tally[1] << "     " << tally[2] << "\n";
  }
  for (const auto& rec : r.records)
    if (rec.status == TrialRecord::Status::fail) {
      os << "FAIL " << rec.identity << " n=" << rec.n << " trial=" << rec.trial << "\n";
      os << "  lhs: " << rec.lhs << "\n  rhs: " << rec.rhs << "\n";
    }
  os << "total: " << r.records.size() << "  pass: " << r.count(TrialRecord::Status::pass)
     << "  fail: " << r.count(TrialRecord::Status::fail)
     << "  rejected: " << r.count(TrialRecord::Status::rejected) << "\n";
  os << (r.all_pass() ? "PASS" : "FAIL") << "\n";
  return os.str();
}

inline int report_exit_code(const Report& r) { return r.all_pass() ? 0 : 1; }

}  // namespace qid
