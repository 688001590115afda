#pragma once

#include <algorithm>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "skolem/error.hpp"
#include "skolem/modnt.hpp"

namespace skolem {

/// Unordered pair of distinct nonzero residues, stored with lo < hi.
struct Pair {
  u64 lo;
  u64 hi;

  auto operator<=>(const Pair&) const = default;

  u64 span() const { return hi - lo; }
};

// Reduces a and b mod n and orders them.
inline Pair make_pair(u64 a, u64 b, u64 n) {
  a %= n;
  b %= n;
  if (a == 0 || b == 0) {
    fail(ErrorKind::MalformedStarter, "pair contains 0 mod " + std::to_string(n));
  }
  if (a == b) {
    fail(ErrorKind::MalformedStarter, "degenerate pair {" + std::to_string(a) + ", " +
                                          std::to_string(a) + "}");
  }
  return a < b ? Pair{a, b} : Pair{b, a};
}

/// (n-1)/2 canonical pairs over Z_n, kept sorted by lo.
class Starter {
 public:
  Starter(u64 modulus, std::vector<Pair> pairs) : modulus_(modulus), pairs_(std::move(pairs)) {
    if (modulus_ < 3 || modulus_ % 2 == 0 || modulus_ > kMaxModulus) {
      fail(ErrorKind::MalformedStarter,
           "modulus " + std::to_string(modulus_) + " is not an odd integer >= 3");
    }
    if (pairs_.size() != (modulus_ - 1) / 2) {
      fail(ErrorKind::MalformedStarter,
           "expected " + std::to_string((modulus_ - 1) / 2) + " pairs for Z_" +
               std::to_string(modulus_) + ", got " + std::to_string(pairs_.size()));
    }
    for (const Pair& pr : pairs_) {
      if (pr.lo == 0 || pr.lo >= pr.hi || pr.hi >= modulus_) {
        fail(ErrorKind::MalformedStarter, "pair {" + std::to_string(pr.lo) + ", " +
                                              std::to_string(pr.hi) +
                                              "} is not canonical in Z_" +
                                              std::to_string(modulus_));
      }
    }
    std::sort(pairs_.begin(), pairs_.end());
  }

  u64 modulus() const { return modulus_; }
  u64 k() const { return (modulus_ - 1) / 2; }
  std::span<const Pair> pairs() const& { return pairs_; }
  std::span<const Pair> pairs() const&& = delete;

  bool operator==(const Starter&) const = default;

 private:
  u64 modulus_;
  std::vector<Pair> pairs_;
};

enum class WitnessKind {
  ElementRepeated,
  DifferenceRepeated,
  SumZero,
  SumRepeated,
  SkolemDifferenceOutOfRange,
  SkolemDifferenceRepeated,
  NotCardioidal,
};

constexpr std::string_view to_string(WitnessKind kind) {
  switch (kind) {
    case WitnessKind::ElementRepeated: return "element_repeated";
    case WitnessKind::DifferenceRepeated: return "difference_repeated";
    case WitnessKind::SumZero: return "sum_zero";
    case WitnessKind::SumRepeated: return "sum_repeated";
    case WitnessKind::SkolemDifferenceOutOfRange: return "skolem_difference_out_of_range";
    case WitnessKind::SkolemDifferenceRepeated: return "skolem_difference_repeated";
    case WitnessKind::NotCardioidal: return "not_cardioidal";
  }
  return "unknown";
}

/// First failure found by a verifier. `values` holds the offending
/// element, difference class {d, n-d}, sum, or pair.
struct Witness {
  WitnessKind kind;
  std::vector<u64> values;
  std::string message;

  bool operator==(const Witness&) const = default;
};

struct Verdict {
  bool ok = true;
  std::optional<Witness> witness;

  explicit operator bool() const { return ok; }
  bool operator==(const Verdict&) const = default;

  static Verdict pass() { return {}; }
  static Verdict failure(WitnessKind kind, std::vector<u64> values, std::string message) {
    return {false, Witness{kind, std::move(values), std::move(message)}};
  }
};

namespace detail {

inline std::string pair_text(const Pair& pr) {
  return "{" + std::to_string(pr.lo) + ", " + std::to_string(pr.hi) + "}";
}

}  // namespace detail

/// Endpoints cover Z_n^* once and the classes {d, n-d} of differences do too.
/// With exactly (n-1)/2 pairs, no repeats implies full coverage.
inline Verdict verify_starter(const Starter& s) {
  const u64 n = s.modulus();
  std::vector<bool> element_seen(n, false);
  for (const Pair& pr : s.pairs()) {
    for (u64 v : {pr.lo, pr.hi}) {
      if (element_seen[v]) {
        return Verdict::failure(WitnessKind::ElementRepeated, {v},
                                "element " + std::to_string(v) + " appears twice");
      }
      element_seen[v] = true;
    }
  }
  std::vector<bool> class_seen(n / 2 + 1, false);
  for (const Pair& pr : s.pairs()) {
    const u64 d = pr.span();
    const u64 c = std::min(d, n - d);
    if (class_seen[c]) {
      return Verdict::failure(WitnessKind::DifferenceRepeated, {c, n - c},
                              "difference class {" + std::to_string(c) + ", " +
                                  std::to_string(n - c) + "} repeated at " +
                                  detail::pair_text(pr));
    }
    class_seen[c] = true;
  }
  return Verdict::pass();
}

inline Verdict verify_strong(const Starter& s) {
  const u64 n = s.modulus();
  std::vector<bool> sum_seen(n, false);
  for (const Pair& pr : s.pairs()) {
    const u64 sum = (pr.lo + pr.hi) % n;
    if (sum == 0) {
      return Verdict::failure(WitnessKind::SumZero, {pr.lo, pr.hi},
                              detail::pair_text(pr) + " sums to 0");
    }
    if (sum_seen[sum]) {
      return Verdict::failure(WitnessKind::SumRepeated, {sum},
                              "sum " + std::to_string(sum) + " repeated at " +
                                  detail::pair_text(pr));
    }
    sum_seen[sum] = true;
  }
  return Verdict::pass();
}

/// Integer differences hi - lo are exactly {1, ..., k}.
inline Verdict verify_skolem(const Starter& s) {
  const u64 k = s.k();
  std::vector<bool> seen(k + 1, false);
  for (const Pair& pr : s.pairs()) {
    const u64 d = pr.span();
    if (d > k) {
      return Verdict::failure(WitnessKind::SkolemDifferenceOutOfRange, {pr.lo, pr.hi},
                              detail::pair_text(pr) + " has difference " + std::to_string(d) +
                                  " > k = " + std::to_string(k));
    }
    if (seen[d]) {
      return Verdict::failure(WitnessKind::SkolemDifferenceRepeated, {d},
                              "difference " + std::to_string(d) + " repeated at " +
                                  detail::pair_text(pr));
    }
    seen[d] = true;
  }
  return Verdict::pass();
}

inline bool is_cardioidal_pair(const Pair& pr, u64 n) {
  return mul_mod(2, pr.lo, n) == pr.hi || mul_mod(2, pr.hi, n) == pr.lo;
}

inline Verdict verify_cardioidal(const Starter& s) {
  const u64 n = s.modulus();
  for (const Pair& pr : s.pairs()) {
    if (!is_cardioidal_pair(pr, n)) {
      return Verdict::failure(WitnessKind::NotCardioidal, {pr.lo, pr.hi},
                              detail::pair_text(pr) + " is not of the form {i, 2i}");
    }
  }
  return Verdict::pass();
}

inline Starter negate_starter(const Starter& s) {
  const u64 n = s.modulus();
  std::vector<Pair> out;
  out.reserve(s.pairs().size());
  for (const Pair& pr : s.pairs()) out.push_back(make_pair(n - pr.lo, n - pr.hi, n));
  return Starter(n, std::move(out));
}

struct Classification {
  bool is_starter = false;
  bool is_strong = false;
  bool is_skolem = false;
  bool is_cardioidal = false;
  // Strong/Skolem verdicts on a non-starter are reported but not meaningful.
  bool dependent = false;
  std::optional<Witness> starter_witness;
  std::optional<Witness> strong_witness;
  std::optional<Witness> skolem_witness;
  std::optional<Witness> cardioidal_witness;

  bool all() const { return is_starter && is_strong && is_skolem && is_cardioidal; }
  bool operator==(const Classification&) const = default;
};

inline Classification classify(const Starter& s) {
  Classification c;
  auto starter = verify_starter(s);
  auto strong = verify_strong(s);
  auto skolem = verify_skolem(s);
  auto cardioidal = verify_cardioidal(s);
  c.is_starter = starter.ok;
  c.is_strong = strong.ok;
  c.is_skolem = skolem.ok;
  c.is_cardioidal = cardioidal.ok;
  c.dependent = !starter.ok;
  c.starter_witness = std::move(starter.witness);
  c.strong_witness = std::move(strong.witness);
  c.skolem_witness = std::move(skolem.witness);
  c.cardioidal_witness = std::move(cardioidal.witness);
  return c;
}

/// Pairs ordered by ascending difference, ties by lo.
inline std::vector<Pair> skolem_order(const Starter& s) {
  std::vector<Pair> out(s.pairs().begin(), s.pairs().end());
  std::stable_sort(out.begin(), out.end(),
                   [](const Pair& a, const Pair& b) { return a.span() < b.span(); });
  return out;
}

}  // namespace skolem
