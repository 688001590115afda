#pragma once

/**
 * @file search.hpp
 * @brief Parameter discovery and exhaustive oracles.
 *
 * Scans list primes (and prime pairs) meeting the hypotheses of the
 * constructions. The backtracking searcher and the full starter
 * enumerator are independent brute-force routes used to cross-check
 * existence claims at small moduli.
 */

#include <chrono>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "skolem/error.hpp"
#include "skolem/modnt.hpp"
#include "skolem/starters.hpp"

namespace skolem {

using ordered_json = nlohmann::ordered_json;

/// Smallest r >= 2 generating both Z_p^* and Z_q^*.
inline u64 find_common_primitive_root(u64 p, u64 q) {
  require_odd_prime(p, "p");
  require_odd_prime(q, "q");
  if (p == q) fail(ErrorKind::InvalidModulus, "p and q must be distinct");
  const auto fp = factorize(p - 1);
  const auto fq = factorize(q - 1);
  auto generates = [](u64 r, u64 prime, const std::vector<PrimePower>& factors) {
    r %= prime;
    if (r == 0) return false;
    for (auto [f, e] : factors) {
      if (mod_pow(r, (prime - 1) / f, prime) == 1) return false;
    }
    return true;
  };
  const u64 bound = p * q;
  for (u64 r = 2; r < bound; ++r) {
    if (generates(r, p, fp) && generates(r, q, fq)) return r;
  }
  fail(ErrorKind::NoCommonRoot, "no common primitive root of " + std::to_string(p) +
                                    " and " + std::to_string(q) + " below " +
                                    std::to_string(bound));
}

struct ScanHit {
  ordered_json params;
  ordered_json certificates;
};

struct ScanReport {
  std::string kind;
  u64 bound;
  std::vector<ScanHit> hits;
};

namespace detail {

inline std::vector<u64> primes_up_to(u64 limit) {
  std::vector<u64> out;
  if (limit < 2) return out;
  std::vector<bool> composite(limit + 1, false);
  for (u64 i = 2; i <= limit; ++i) {
    if (composite[i]) continue;
    out.push_back(i);
    for (u64 j = i * i; j <= limit; j += i) composite[j] = true;
  }
  return out;
}

}  // namespace detail

/// Primes p = 2^k t + 1 <= limit, t odd > 1, with 2 in C_{2^(k-1)}.
inline ScanReport scan_cyclotomic_primes(unsigned k, u64 limit) {
  if (k < 3 || k > 40) fail(ErrorKind::HypothesisViolation, "k must be in 3..40");
  const u64 delta = u64{1} << k;
  if (limit < delta * 3 + 1) {
    fail(ErrorKind::HypothesisViolation,
         "limit must be at least 2^k * 3 + 1 = " + std::to_string(delta * 3 + 1));
  }
  ScanReport report{"cyclotomic-primes", limit, {}};
  for (u64 p : detail::primes_up_to(limit)) {
    if (p < 3 || two_adic_valuation(p - 1) != k || (p - 1) / delta == 1) continue;
    const auto cs = CyclotomicStructure::make(p, k);
    const u64 index = cs.index_of(2);
    if (index != delta / 2) continue;
    const u64 ord2 = multiplicative_order(2, p);
    ScanHit hit;
    hit.params = {{"p", p}, {"k", k}};
    hit.certificates = {{"t", cs.t()},
                        {"root", cs.root()},
                        {"index_of_two", index},
                        {"ord2", ord2},
                        {"ord2_mod4", ord2 % 4}};
    report.hits.push_back(std::move(hit));
  }
  return report;
}

/// Primes p <= limit with p = 3 (mod 8), p != 3.
inline ScanReport scan_qr_primes(u64 limit) {
  ScanReport report{"qr-primes", limit, {}};
  for (u64 p : detail::primes_up_to(limit)) {
    if (p % 8 != 3 || p == 3) continue;
    const u64 ord2 = multiplicative_order(2, p);
    ScanHit hit;
    hit.params = {{"p", p}};
    hit.certificates = {{"ord2", ord2}, {"ord2_mod4", ord2 % 4}};
    report.hits.push_back(std::move(hit));
  }
  return report;
}

struct PairScanMode {
  enum class Kind { Qr, Cyclotomic } kind = Kind::Qr;
  unsigned k = 0;

  static PairScanMode qr() { return {Kind::Qr, 0}; }
  static PairScanMode cyclotomic(unsigned k) { return {Kind::Cyclotomic, k}; }
};

/// Pairs p < q <= limit from the matching prime scan with (p-1) not dividing (q-1).
/// Each hit carries its common primitive root and the index of <r> in G_pq.
inline ScanReport scan_pq_pairs(u64 limit, PairScanMode mode) {
  std::vector<u64> primes;
  ScanReport report;
  report.bound = limit;
  if (mode.kind == PairScanMode::Kind::Qr) {
    report.kind = "pq-pairs:qr";
    for (const auto& h : scan_qr_primes(limit).hits) primes.push_back(h.params["p"].get<u64>());
  } else {
    report.kind = "pq-pairs:cyclotomic";
    for (const auto& h : scan_cyclotomic_primes(mode.k, limit).hits) {
      primes.push_back(h.params["p"].get<u64>());
    }
  }
  for (size_t i = 0; i < primes.size(); ++i) {
    for (size_t j = i + 1; j < primes.size(); ++j) {
      const u64 p = primes[i], q = primes[j];
      if ((q - 1) % (p - 1) == 0) continue;
      ScanHit hit;
      hit.params = {{"p", p}, {"q", q}};
      if (mode.kind == PairScanMode::Kind::Cyclotomic) hit.params["k"] = mode.k;
      try {
        const u64 r = find_common_primitive_root(p, q);
        const u64 g = std::gcd(p - 1, q - 1);
        hit.certificates = {{"common_root", r},
                            {"root_order", (p - 1) / g * (q - 1)},
                            {"coset_count", g}};
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::NoCommonRoot) throw;
        hit.certificates = {{"common_root", nullptr}, {"error", "NoCommonRoot"}};
      }
      report.hits.push_back(std::move(hit));
    }
  }
  return report;
}

struct SearchOptions {
  bool require_strong = false;
  bool find_all = false;
  std::chrono::milliseconds timeout{60'000};
};

enum class SearchStatus { Found, Exhausted, TimedOut };

constexpr std::string_view to_string(SearchStatus s) {
  switch (s) {
    case SearchStatus::Found: return "found";
    case SearchStatus::Exhausted: return "exhausted";
    case SearchStatus::TimedOut: return "timeout";
  }
  return "unknown";
}

struct SearchResult {
  SearchStatus status;
  std::vector<Starter> starters;
  u64 nodes = 0;
};

namespace detail {

// Places difference d = k..1 in turn, lo ascending; each placement is a
// pair {lo, lo + d} of unused elements (and unused nonzero sum if strong).
class SkolemBacktracker {
 public:
  SkolemBacktracker(u64 n, const SearchOptions& opts)
      : n_(n),
        k_((n - 1) / 2),
        opts_(opts),
        used_(n, false),
        sum_used_(n, false),
        deadline_(std::chrono::steady_clock::now() + opts.timeout) {
    current_.reserve(k_);
  }

  SearchResult run() {
    descend(k_);
    SearchResult result;
    result.nodes = nodes_;
    result.starters = std::move(found_);
    if (timed_out_) {
      result.status = SearchStatus::TimedOut;
    } else {
      result.status = result.starters.empty() ? SearchStatus::Exhausted : SearchStatus::Found;
    }
    return result;
  }

 private:
  // Returns true to stop the whole search.
  bool descend(u64 d) {
    if (d == 0) {
      found_.emplace_back(n_, current_);
      return !opts_.find_all;
    }
    for (u64 lo = 1; lo + d < n_; ++lo) {
      const u64 hi = lo + d;
      if (used_[lo] || used_[hi]) continue;
      const u64 sum = (lo + hi) % n_;
      if (opts_.require_strong && (sum == 0 || sum_used_[sum])) continue;
      if ((++nodes_ & 0x3ff) == 0 && std::chrono::steady_clock::now() > deadline_) {
        timed_out_ = true;
        return true;
      }
      used_[lo] = used_[hi] = true;
      if (opts_.require_strong) sum_used_[sum] = true;
      current_.push_back({lo, hi});
      const bool stop = descend(d - 1);
      current_.pop_back();
      used_[lo] = used_[hi] = false;
      if (opts_.require_strong) sum_used_[sum] = false;
      if (stop) return true;
    }
    return false;
  }

  u64 n_;
  u64 k_;
  SearchOptions opts_;
  std::vector<bool> used_;
  std::vector<bool> sum_used_;
  std::vector<Pair> current_;
  std::vector<Starter> found_;
  std::chrono::steady_clock::time_point deadline_;
  u64 nodes_ = 0;
  bool timed_out_ = false;
};

}  // namespace detail

inline SearchResult exhaustive_skolem_search(u64 n, const SearchOptions& opts = {}) {
  if (n < 3 || n % 2 == 0) {
    fail(ErrorKind::InvalidModulus, "modulus must be odd and >= 3");
  }
  if (n > 1001) fail(ErrorKind::BoundExceeded, "search modulus capped at 1001");
  return detail::SkolemBacktracker(n, opts).run();
}

inline SearchResult exhaustive_skolem_search(u64 n, bool require_strong, bool find_all) {
  SearchOptions opts;
  opts.require_strong = require_strong;
  opts.find_all = find_all;
  return exhaustive_skolem_search(n, opts);
}

inline constexpr u64 kEnumerationBound = 15;

/// Every starter of Z_n, by pairing the smallest free element with each
/// admissible partner. Knows nothing about Skolem or strong structure.
inline std::vector<Starter> enumerate_starters(u64 n) {
  if (n < 3 || n % 2 == 0) fail(ErrorKind::InvalidModulus, "modulus must be odd and >= 3");
  if (n > kEnumerationBound) {
    fail(ErrorKind::BoundExceeded,
         "enumeration is limited to n <= " + std::to_string(kEnumerationBound));
  }
  std::vector<Starter> out;
  std::vector<bool> used(n, false);
  std::vector<bool> class_used(n / 2 + 1, false);
  std::vector<Pair> current;
  auto rec = [&](auto& self) -> void {
    u64 a = 1;
    while (a < n && used[a]) ++a;
    if (a == n) {
      out.emplace_back(n, current);
      return;
    }
    used[a] = true;
    for (u64 b = a + 1; b < n; ++b) {
      if (used[b]) continue;
      const u64 c = std::min(b - a, n - (b - a));
      if (class_used[c]) continue;
      used[b] = true;
      class_used[c] = true;
      current.push_back({a, b});
      self(self);
      current.pop_back();
      class_used[c] = false;
      used[b] = false;
    }
    used[a] = false;
  };
  rec(rec);
  return out;
}

}  // namespace skolem
