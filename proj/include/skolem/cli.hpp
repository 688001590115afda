#pragma once

// Command-line front end. dispatch() takes argv-style arguments (without the
// program name) and writes to the supplied streams so it can run in-process.
//
// Exit codes: 0 success/verified, 1 verification-negative or not found,
// 2 invalid parameters or hypothesis violation, 3 timeout.

#include <chrono>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "skolem/constructions.hpp"
#include "skolem/json_io.hpp"
#include "skolem/search.hpp"
#include "skolem/starters.hpp"

namespace skolem::cli {

enum ExitCode : int { kOk = 0, kNegative = 1, kInvalid = 2, kTimeout = 3 };

/// "a,b;c,d;..." -> pairs reduced and canonicalized mod n.
inline std::vector<Pair> parse_inline_pairs(const std::string& text, u64 n) {
  std::vector<Pair> out;
  std::stringstream groups(text);
  std::string group;
  while (std::getline(groups, group, ';')) {
    if (group.find_first_not_of(" \t") == std::string::npos) continue;
    const auto comma = group.find(',');
    if (comma == std::string::npos) {
      fail(ErrorKind::MalformedStarter, "pair '" + group + "' needs the form a,b");
    }
    try {
      size_t used_a = 0, used_b = 0;
      const std::string a = group.substr(0, comma), b = group.substr(comma + 1);
      const u64 x = std::stoull(a, &used_a), y = std::stoull(b, &used_b);
      if (a.find_first_not_of(" \t", used_a) != std::string::npos ||
          b.find_first_not_of(" \t", used_b) != std::string::npos) {
        throw std::invalid_argument(group);
      }
      out.push_back(make_pair(x, y, n));
    } catch (const std::logic_error&) {
      fail(ErrorKind::MalformedStarter, "cannot parse pair '" + group + "'");
    }
  }
  return out;
}

inline void print_human(std::ostream& out, const Starter& s, const Classification& c) {
  out << "Z_" << s.modulus() << ": " << s.pairs().size() << " pairs\n";
  const auto pairs = c.is_skolem ? skolem_order(s)
                                 : std::vector<Pair>(s.pairs().begin(), s.pairs().end());
  const size_t shown = std::min<size_t>(pairs.size(), 64);
  for (size_t i = 0; i < shown; ++i) {
    out << (i ? " " : "  ") << "{" << pairs[i].lo << "," << pairs[i].hi << "}";
  }
  if (shown < pairs.size()) out << " ... (" << pairs.size() - shown << " more)";
  out << "\n";
  auto line = [&](const char* name, bool ok, const std::optional<Witness>& w) {
    out << "  " << name << ": " << (ok ? "yes" : "no");
    if (!ok && w) out << " (" << w->message << ")";
    out << "\n";
  };
  line("starter", c.is_starter, c.starter_witness);
  line("strong", c.is_strong, c.strong_witness);
  line("skolem", c.is_skolem, c.skolem_witness);
  line("cardioidal", c.is_cardioidal, c.cardioidal_witness);
  if (c.dependent) out << "  (strong/skolem verdicts are dependent: not a starter)\n";
}

struct SelftestOptions {
  // Replaces the embedded Z_19 reference pair set (used to exercise the failure path).
  std::optional<std::vector<std::pair<u64, u64>>> reference_override;
};

inline const std::vector<std::pair<u64, u64>>& reference_pairs() {
  static const std::vector<std::pair<u64, u64>> pairs = {
      {17, 18}, {2, 4}, {3, 6}, {11, 15}, {9, 14}, {7, 13}, {5, 12}, {8, 16}, {1, 10}};
  return pairs;
}

inline int selftest(std::ostream& out, std::ostream& err, const SelftestOptions& opts = {}) {
  int failures = 0;
  int total = 0;
  auto check = [&](const std::string& name, auto&& body) {
    ++total;
    std::string detail;
    bool ok = false;
    try {
      ok = body(detail);
    } catch (const std::exception& e) {
      detail = e.what();
    }
    out << (ok ? "PASS " : "FAIL ") << name;
    if (!ok && !detail.empty()) out << ": " << detail;
    out << "\n";
    if (!ok) ++failures;
  };
  auto all_true = [](const Classification& c, std::string& detail) {
    for (const auto* w : {&c.starter_witness, &c.strong_witness, &c.skolem_witness,
                          &c.cardioidal_witness}) {
      if (*w) {
        detail = (*w)->message;
        break;
      }
    }
    return c.all();
  };

  check("reference Z_19 strong Skolem cardioidal", [&](std::string& d) {
    const auto& raw = opts.reference_override ? *opts.reference_override : reference_pairs();
    std::vector<Pair> pairs;
    for (auto [a, b] : raw) pairs.push_back(make_pair(a, b, 19));
    return all_true(classify(Starter(19, pairs)), d);
  });
  check("qr_starter(11, 2)", [&](std::string& d) {
    const auto c = qr_starter(11, Beta::two());
    const Starter expected(11, {{1, 2}, {3, 6}, {4, 8}, {5, 10}, {7, 9}});
    if (c.starter != expected) {
      d = "unexpected pair set";
      return false;
    }
    return all_true(c.classification, d);
  });
  check("qr_starter(19, 2)", [&](std::string& d) {
    return all_true(qr_starter(19, Beta::two()).classification, d);
  });
  check("prime_power_starter(11, 2, 2) has 60 pairs", [&](std::string& d) {
    const auto c = prime_power_starter(11, 2, Beta::two());
    return c.starter.pairs().size() == 60 && all_true(c.classification, d);
  });
  check("pq_starter(11, 19, 2) has 104 pairs", [&](std::string& d) {
    const auto c = pq_starter(11, 19, Beta::two());
    return c.starter.pairs().size() == 104 && all_true(c.classification, d);
  });
  check("cardioidal {1,2} over Z_3 is Skolem but not strong", [&](std::string& d) {
    const auto c = classify(Starter(3, {{1, 2}}));
    d = "got strong=" + std::to_string(c.is_strong) + " skolem=" + std::to_string(c.is_skolem);
    return c.is_starter && c.is_cardioidal && c.is_skolem && !c.is_strong;
  });
  check("r^10780 = -1 mod 281*617", [&](std::string& d) {
    const u64 r = find_common_primitive_root(281, 617);
    const auto rep = check_lemma_4_1(281, 617, 3, r);
    d = "exponent " + std::to_string(rep.exponent);
    return rep.exponent == 10780 && rep.holds();
  });

  out << (total - failures) << "/" << total << " fixtures passed\n";
  if (failures) err << failures << " selftest fixture(s) failed\n";
  return failures ? kNegative : kOk;
}

namespace detail {

inline Beta parse_beta(const std::string& text, Method method, u64 p) {
  if (text == "2") return Beta::two();
  if (text == "2inv") return Beta::two_inverse();
  u64 v = 0;
  try {
    size_t used = 0;
    v = std::stoull(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
  } catch (const std::logic_error&) {
    fail(ErrorKind::HypothesisViolation, "--beta must be 2, 2inv, or an integer");
  }
  if (method == Method::Horton) return Beta::explicit_value(v);
  if (v == 2) return Beta::two();
  if (p > 2 && v % p == (p + 1) / 2) return Beta::two_inverse();
  fail(ErrorKind::HypothesisViolation, "this method takes --beta 2 or 2inv");
}

inline int error_exit(const Error& e, std::ostream& err) {
  err << "error: " << e.what() << "\n";
  switch (e.kind()) {
    case ErrorKind::VerificationFailure:
    case ErrorKind::CoverageFailure:
    case ErrorKind::NoCommonRoot:
      return kNegative;
    default:
      return kInvalid;
  }
}

}  // namespace detail

inline int dispatch(const std::vector<std::string>& args, std::ostream& out,
                    std::ostream& err) {
  CLI::App app{"Strong Skolem starter constructions and verification", "skolem"};
  app.require_subcommand(1);

  // construct
  auto* construct = app.add_subcommand("construct", "build a starter from a recipe");
  std::string method_name;
  u64 p = 0, q = 0;
  unsigned n = 1, k = 0;
  std::string beta_text = "2", out_file;
  bool json = false;
  const std::map<std::string, Method> methods = {
      {"horton", Method::Horton},
      {"qr", Method::Qr},
      {"cyclotomic", Method::Cyclotomic},
      {"prime-power", Method::PrimePower},
      {"prime-power-cyclotomic", Method::PrimePowerCyclotomic},
      {"pq", Method::Pq},
      {"pq-cyclotomic", Method::PqCyclotomic}};
  construct->add_option("--method", method_name)
      ->required()
      ->check(CLI::IsMember({"horton", "qr", "cyclotomic", "prime-power",
                             "prime-power-cyclotomic", "pq", "pq-cyclotomic"}));
  construct->add_option("--p", p)->required();
  construct->add_option("--q", q);
  construct->add_option("--n", n, "exponent for prime-power methods")->check(CLI::PositiveNumber);
  construct->add_option("--k", k, "2-adic exponent (default: valuation of p - 1)");
  construct->add_option("--beta", beta_text, "2, 2inv, or an explicit residue (horton)");
  construct->add_option("--out", out_file, "also write the Starter JSON to FILE");
  construct->add_flag("--json", json);

  // verify
  auto* verify = app.add_subcommand("verify", "classify a candidate starter");
  std::string in_file, pairs_text;
  u64 modulus = 0;
  auto* in_opt = verify->add_option("--in", in_file, "Starter JSON file");
  auto* mod_opt = verify->add_option("--modulus", modulus);
  auto* pairs_opt = verify->add_option("--pairs", pairs_text, "inline pairs a,b;c,d;...");
  in_opt->excludes(mod_opt)->excludes(pairs_opt);
  mod_opt->needs(pairs_opt);
  pairs_opt->needs(mod_opt);
  verify->add_flag("--json", json);

  // scan
  auto* scan = app.add_subcommand("scan", "list admissible parameters");
  std::string kind;
  u64 limit = 0;
  scan->add_option("--kind", kind)
      ->required()
      ->check(CLI::IsMember({"qr-primes", "cyclotomic-primes", "pq-pairs"}));
  auto* scan_k = scan->add_option("--k", k);
  scan->add_option("--limit", limit)->required();
  scan->add_flag("--json", json);

  // search
  auto* search = app.add_subcommand("search", "exhaustive Skolem starter search");
  bool strong = false, find_all = false, skolem_flag = false;
  double timeout_s = 60.0;
  search->add_option("--modulus", modulus)->required();
  search->add_flag("--strong", strong);
  search->add_flag("--all", find_all);
  search->add_flag("--skolem", skolem_flag, "accepted for readability; search is always Skolem");
  search->add_option("--timeout", timeout_s, "seconds")->check(CLI::PositiveNumber);
  search->add_flag("--json", json);

  auto* self = app.add_subcommand("selftest", "run the embedded fixture suite");

  std::vector<const char*> argv{"skolem"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kInvalid;
  }

  try {
    if (*construct) {
      const Method method = methods.at(method_name);
      const Beta beta = detail::parse_beta(beta_text, method, p);
      const bool needs_q = method == Method::Pq || method == Method::PqCyclotomic;
      if (needs_q && q == 0) fail(ErrorKind::HypothesisViolation, "--q is required");
      if (k == 0 && p > 1) k = two_adic_valuation(p - 1);
      std::optional<Construction> c;
      switch (method) {
        case Method::Horton: c = horton_starter(p, beta.resolve(p)); break;
        case Method::Qr: c = qr_starter(p, beta); break;
        case Method::Cyclotomic: c = cyclotomic_starter(p, k, beta); break;
        case Method::PrimePower: c = prime_power_starter(p, n, beta); break;
        case Method::PrimePowerCyclotomic:
          c = prime_power_cyclotomic_starter(p, k, n, beta);
          break;
        case Method::Pq: c = pq_starter(p, q, beta); break;
        case Method::PqCyclotomic: c = pq_cyclotomic_starter(p, q, k, beta); break;
      }
      const auto doc = to_json(*c);
      if (!out_file.empty()) {
        std::ofstream f(out_file);
        if (!f) fail(ErrorKind::HypothesisViolation, "cannot write " + out_file);
        f << doc.dump() << "\n";
      }
      if (json) {
        out << doc.dump() << "\n";
      } else {
        out << to_string(method) << " starter\n";
        print_human(out, c->starter, c->classification);
      }
      return kOk;
    }

    if (*verify) {
      std::optional<Starter> s;
      if (!in_file.empty()) {
        std::ifstream f(in_file);
        if (!f) fail(ErrorKind::HypothesisViolation, "cannot read " + in_file);
        ordered_json doc;
        try {
          doc = ordered_json::parse(f);
        } catch (const nlohmann::json::exception& e) {
          fail(ErrorKind::MalformedStarter, std::string("invalid JSON: ") + e.what());
        }
        s = starter_from_json(doc);
      } else if (modulus != 0) {
        s = Starter(modulus, parse_inline_pairs(pairs_text, modulus));
      } else {
        fail(ErrorKind::HypothesisViolation, "verify needs --in or --modulus/--pairs");
      }
      const auto c = classify(*s);
      if (json) {
        out << to_json(c).dump() << "\n";
      } else {
        print_human(out, *s, c);
      }
      return c.all() ? kOk : kNegative;
    }

    if (*scan) {
      ScanReport report;
      if (kind == "qr-primes") {
        report = scan_qr_primes(limit);
      } else if (kind == "cyclotomic-primes") {
        report = scan_cyclotomic_primes(scan_k->count() ? k : 3, limit);
      } else {
        report = scan_pq_pairs(limit, scan_k->count() ? PairScanMode::cyclotomic(k)
                                                      : PairScanMode::qr());
      }
      if (json) {
        out << to_json(report).dump() << "\n";
      } else {
        out << report.kind << " up to " << report.bound << ": " << report.hits.size()
            << " hit(s)\n";
        for (const auto& h : report.hits) {
          out << "  " << h.params.dump() << " " << h.certificates.dump() << "\n";
        }
      }
      return report.hits.empty() ? kNegative : kOk;
    }

    if (*search) {
      SearchOptions opts;
      opts.require_strong = strong;
      opts.find_all = find_all;
      opts.timeout = std::chrono::milliseconds(static_cast<long long>(timeout_s * 1000));
      const auto result = exhaustive_skolem_search(modulus, opts);
      if (json) {
        out << to_json(result, modulus, opts).dump() << "\n";
      } else {
        const char* what = strong ? "strong Skolem starter" : "Skolem starter";
        switch (result.status) {
          case SearchStatus::Found:
            out << result.starters.size() << " " << what << "(s) for Z_" << modulus << "\n";
            for (const auto& s : result.starters) print_human(out, s, classify(s));
            break;
          case SearchStatus::Exhausted:
            out << what << " for Z_" << modulus << ": nonexistent (exhausted, "
                << result.nodes << " nodes)\n";
            break;
          case SearchStatus::TimedOut:
            out << what << " for Z_" << modulus << ": timeout after " << timeout_s
                << " s (undecided)\n";
            break;
        }
      }
      switch (result.status) {
        case SearchStatus::Found: return kOk;
        case SearchStatus::Exhausted: return kNegative;
        case SearchStatus::TimedOut: return kTimeout;
      }
    }

    if (*self) return selftest(out, err);
  } catch (const Error& e) {
    return detail::error_exit(e, err);
  }
  return kInvalid;
}

}  // namespace skolem::cli
