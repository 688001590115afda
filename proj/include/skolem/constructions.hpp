#pragma once

/**
 * @file constructions.hpp
 * @brief Explicit strong Skolem (cardioidal) starters for Z_p, Z_{p^n}, Z_pq.
 *
 * Every builder validates its hypotheses up front, assembles the pair set
 * {x, beta x} over the prescribed base set, and certifies the result with
 * the verifiers before returning it. A failed certificate throws; no
 * builder ever hands back an unverified object.
 *
 * Base sets by method:
 *   horton / qr              QR(p)
 *   cyclotomic               union of C_j, j < 2^(k-1)
 *   prime_power              per stratum i: p^i <r^2> mod p^(n-i)
 *   prime_power_cyclotomic   per stratum i: p^i r^j <r^(2^k)> mod p^(n-i), j < 2^(k-1)
 *   pq / pq_cyclotomic       p * (base mod q), q * (base mod p), and for G_pq
 *                            lambda * (base mod pq) over a transversal of G_pq / <r>
 */

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "skolem/error.hpp"
#include "skolem/modnt.hpp"
#include "skolem/search.hpp"
#include "skolem/starters.hpp"

namespace skolem {

enum class Method { Horton, Qr, Cyclotomic, PrimePower, PrimePowerCyclotomic, Pq, PqCyclotomic };

constexpr std::string_view to_string(Method m) {
  switch (m) {
    case Method::Horton: return "horton";
    case Method::Qr: return "qr";
    case Method::Cyclotomic: return "cyclotomic";
    case Method::PrimePower: return "prime_power";
    case Method::PrimePowerCyclotomic: return "prime_power_cyclotomic";
    case Method::Pq: return "pq";
    case Method::PqCyclotomic: return "pq_cyclotomic";
  }
  return "unknown";
}

/// The multiplier beta: 2, 2^-1, or an explicit residue (Horton only).
struct Beta {
  enum class Kind { Two, TwoInverse, Explicit };
  Kind kind = Kind::Two;
  u64 value = 2;

  static Beta two() { return {Kind::Two, 2}; }
  static Beta two_inverse() { return {Kind::TwoInverse, 0}; }
  static Beta explicit_value(u64 v) { return {Kind::Explicit, v}; }

  u64 resolve(u64 m) const {
    switch (kind) {
      case Kind::Two: return 2 % m;
      case Kind::TwoInverse: return (m + 1) / 2;
      case Kind::Explicit: return value % m;
    }
    return 0;
  }

  bool operator==(const Beta&) const = default;
};

struct Recipe {
  Method method;
  u64 p;
  std::optional<u64> q;
  std::optional<unsigned> n;
  std::optional<unsigned> k;
  Beta beta;
  std::vector<u64> lambdas;  // G_pq multipliers beyond 1 (pq methods)
  u64 root = 0;

  bool operator==(const Recipe&) const = default;
};

struct Construction {
  Starter starter;
  Recipe recipe;
  Classification classification;
};

namespace detail {

[[noreturn]] inline void hypothesis(const std::string& what) {
  fail(ErrorKind::HypothesisViolation, what);
}

inline void require_two_or_inverse(const Beta& beta) {
  if (beta.kind == Beta::Kind::Explicit) {
    hypothesis("this construction takes beta in {2, 2^-1}");
  }
}

// Appends {a, beta a} mod m for every a in xs scaled by `scale`.
inline void append_pairs(std::vector<Pair>& out, std::span<const u64> xs, u64 scale,
                         u64 beta, u64 m) {
  for (u64 x : xs) {
    const u64 a = mul_mod(scale, x, m);
    out.push_back(make_pair(a, mul_mod(beta, a, m), m));
  }
}

// Union of r^j <r^(2^k)> mod m for j < 2^(k-1).
inline std::vector<u64> half_coset_union(u64 r, unsigned k, u64 m) {
  const u64 delta = u64{1} << k;
  const u64 h = mod_pow(r, delta, m);
  std::vector<u64> out;
  for (u64 j = 0; j < delta / 2; ++j) {
    auto coset = cyclic_coset(h, mod_pow(r, j, m), m);
    out.insert(out.end(), coset.begin(), coset.end());
  }
  return out;
}

inline void require_in_upper_coset(u64 x, u64 r, unsigned k, u64 m, u64 order,
                                   const char* label) {
  const u64 delta = u64{1} << k;
  if (order % delta != 0) {
    hypothesis("order of r mod " + std::to_string(m) + " is not divisible by 2^k");
  }
  u64 e;
  try {
    e = discrete_log(x, r, m, order);
  } catch (const Error&) {
    hypothesis(std::string(label) + " is not a power of r mod " + std::to_string(m));
  }
  if (e % delta != delta / 2) {
    hypothesis(std::string(label) + " lies in r^" + std::to_string(e % delta) +
               "<r^(2^k)> mod " + std::to_string(m) + ", not r^(2^(k-1))<r^(2^k)>");
  }
}

inline Construction certify(std::vector<Pair> pairs, u64 m, Recipe recipe, bool full) {
  if (pairs.size() != (m - 1) / 2) {
    fail(ErrorKind::CoverageFailure, "assembled " + std::to_string(pairs.size()) +
                                         " pairs, expected " + std::to_string((m - 1) / 2));
  }
  Starter s(m, std::move(pairs));
  Classification c = classify(s);
  const bool ok = full ? c.all() : (c.is_starter && c.is_strong);
  if (!ok) {
    std::string why = "constructed object failed verification";
    for (const auto* w : {&c.starter_witness, &c.strong_witness, &c.skolem_witness,
                          &c.cardioidal_witness}) {
      if (*w && (full || w == &c.starter_witness || w == &c.strong_witness)) {
        why += "; " + (*w)->message;
      }
    }
    fail(ErrorKind::VerificationFailure, why);
  }
  return {std::move(s), std::move(recipe), std::move(c)};
}

inline std::vector<u64> quadratic_residues(u64 p) {
  return cyclic_coset(mod_pow(find_primitive_root(p), 2, p), 1, p);
}

// Greedy transversal of G_m / <r>: 1, then the smallest unit outside every
// coset chosen so far. Index 2 gives exactly {1, smallest lambda not in <r>}.
inline std::vector<u64> coset_transversal(u64 r, u64 m, u64 p, u64 q) {
  std::vector<bool> covered(m, false);
  const auto base = cyclic_coset(r, 1, m);
  std::vector<u64> reps;
  for (u64 lambda = 1; lambda < m; ++lambda) {
    if (lambda % p == 0 || lambda % q == 0 || covered[lambda]) continue;
    reps.push_back(lambda);
    for (u64 x : base) covered[mul_mod(lambda, x, m)] = true;
  }
  return reps;
}

}  // namespace detail

/// Horton: {x, beta x} over QR(p); a strong starter (not necessarily Skolem).
inline Construction horton_starter(u64 p, u64 beta) {
  require_odd_prime(p, "p");
  if (p % 4 != 3) detail::hypothesis("p must be 3 mod 4");
  if (p == 3) detail::hypothesis("p = 3 is excluded");
  beta %= p;
  if (beta == 0 || is_quadratic_residue(beta, p)) detail::hypothesis("beta must be in NQR(p)");
  if (beta == p - 1) detail::hypothesis("beta = -1 is excluded");
  std::vector<Pair> pairs;
  detail::append_pairs(pairs, detail::quadratic_residues(p), 1, beta, p);
  Recipe recipe{Method::Horton, p, {}, {}, {}, Beta::explicit_value(beta), {},
                find_primitive_root(p)};
  return detail::certify(std::move(pairs), p, std::move(recipe), false);
}

/// Horton with beta in {2, 2^-1}, p = 3 (mod 8): cardioidal, hence strong Skolem.
inline Construction qr_starter(u64 p, Beta beta) {
  require_odd_prime(p, "p");
  detail::require_two_or_inverse(beta);
  if (p % 8 != 3) detail::hypothesis("p must be 3 mod 8");
  if (p == 3) detail::hypothesis("p = 3 is excluded");
  std::vector<Pair> pairs;
  detail::append_pairs(pairs, detail::quadratic_residues(p), 1, beta.resolve(p), p);
  Recipe recipe{Method::Qr, p, {}, {}, {}, beta, {}, find_primitive_root(p)};
  return detail::certify(std::move(pairs), p, std::move(recipe), true);
}

/// {x, beta x} over B = C_0 u ... u C_{2^(k-1)-1}, requiring 2 in C_{2^(k-1)}.
inline Construction cyclotomic_starter(u64 p, unsigned k, Beta beta = Beta::two()) {
  detail::require_two_or_inverse(beta);
  if (k < 3) detail::hypothesis("k must be >= 3");
  const auto cs = CyclotomicStructure::make(p, k);
  if (cs.index_of(2) != cs.delta() / 2) {
    detail::hypothesis("2 lies in C_" + std::to_string(cs.index_of(2)) + ", not C_" +
                       std::to_string(cs.delta() / 2));
  }
  std::vector<Pair> pairs;
  pairs.reserve((p - 1) / 2);
  for (u64 j = 0; j < cs.delta() / 2; ++j) {
    detail::append_pairs(pairs, cs.class_members(j), 1, beta.resolve(p), p);
  }
  Recipe recipe{Method::Cyclotomic, p, {}, {}, k, beta, {}, cs.root()};
  return detail::certify(std::move(pairs), p, std::move(recipe), true);
}

/// Union over strata i of {p^i x, beta p^i x}, x in <r^2> mod p^(n-i).
inline Construction prime_power_starter(u64 p, unsigned n, Beta beta) {
  require_odd_prime(p, "p");
  detail::require_two_or_inverse(beta);
  if (p % 8 != 3) detail::hypothesis("p must be 3 mod 8");
  if (p == 3) detail::hypothesis("p = 3 is excluded");
  if (n < 1) detail::hypothesis("n must be >= 1");
  const u64 m = ipow(p, n);
  const u64 r = lift_primitive_root(find_primitive_root(p), p, n);
  const u64 b = beta.resolve(m);
  std::vector<Pair> pairs;
  pairs.reserve((m - 1) / 2);
  for (unsigned i = 0; i < n; ++i) {
    const u64 inner = ipow(p, n - i);
    const auto xs = cyclic_coset(mod_pow(r, 2, inner), 1, inner);
    detail::append_pairs(pairs, xs, ipow(p, i), b, m);
  }
  Recipe recipe{Method::PrimePower, p, {}, n, {}, beta, {}, r};
  return detail::certify(std::move(pairs), m, std::move(recipe), true);
}

/// Union over strata i of {p^i x, beta p^i x}, x in r^j <r^(2^k)> mod p^(n-i),
/// j < 2^(k-1). n = 1 coincides with cyclotomic_starter.
inline Construction prime_power_cyclotomic_starter(u64 p, unsigned k, unsigned n,
                                                   Beta beta = Beta::two()) {
  detail::require_two_or_inverse(beta);
  if (k < 3) detail::hypothesis("k must be >= 3");
  if (n < 1) detail::hypothesis("n must be >= 1");
  const auto cs = CyclotomicStructure::make(p, k);
  if (cs.index_of(2) != cs.delta() / 2) {
    detail::hypothesis("2 is not in C_" + std::to_string(cs.delta() / 2));
  }
  const u64 m = ipow(p, n);
  const u64 r = lift_primitive_root(cs.root(), p, n);
  const u64 b = beta.resolve(m);
  std::vector<Pair> pairs;
  pairs.reserve((m - 1) / 2);
  for (unsigned i = 0; i < n; ++i) {
    const u64 inner = ipow(p, n - i);
    const u64 order = inner / p * (p - 1);
    detail::require_in_upper_coset(inner - 1, r, k, inner, order, "-1");
    detail::require_in_upper_coset(2, r, k, inner, order, "2");
    detail::append_pairs(pairs, detail::half_coset_union(r, k, inner), ipow(p, i), b, m);
  }
  Recipe recipe{Method::PrimePowerCyclotomic, p, {}, n, k, beta, {}, r};
  return detail::certify(std::move(pairs), m, std::move(recipe), true);
}

/// pS_q u qS_p u S_pq with S_pq over <r^2>_pq and its translates by a
/// transversal of G_pq / <r>_pq.
inline Construction pq_starter(u64 p, u64 q, Beta beta) {
  require_odd_prime(p, "p");
  require_odd_prime(q, "q");
  detail::require_two_or_inverse(beta);
  if (p % 8 != 3 || q % 8 != 3) detail::hypothesis("p and q must be 3 mod 8");
  if (p == 3) detail::hypothesis("p = 3 is excluded (3 | pq rules out strong)");
  if (p >= q) detail::hypothesis("require p < q");
  if ((q - 1) % (p - 1) == 0) detail::hypothesis("require (p - 1) not dividing (q - 1)");
  const u64 r = find_common_primitive_root(p, q);
  const auto ctx = GroupContext::product(p, q, r);
  const u64 m = ctx.modulus;
  const u64 b = beta.resolve(m);
  const u64 order = (p - 1) / std::gcd(p - 1, q - 1) * (q - 1);

  // 2 and -1 must sit in r<r^2>_pq so that {x, 2x} and {x, -x} both split <r>.
  for (auto [x, label] : {std::pair<u64, const char*>{2, "2"}, {m - 1, "-1"}}) {
    u64 e;
    try {
      e = discrete_log(x, r, m, order);
    } catch (const Error&) {
      detail::hypothesis(std::string(label) + " is not in <r>_pq");
    }
    if (e % 2 != 1) detail::hypothesis(std::string(label) + " is not in r<r^2>_pq");
  }

  std::vector<Pair> pairs;
  pairs.reserve((m - 1) / 2);
  detail::append_pairs(pairs, detail::quadratic_residues(q), p, b, m);
  detail::append_pairs(pairs, detail::quadratic_residues(p), q, b, m);
  const auto base = cyclic_coset(mod_pow(r, 2, m), 1, m);
  const auto multipliers = detail::coset_transversal(r, m, p, q);
  for (u64 lambda : multipliers) detail::append_pairs(pairs, base, lambda, b, m);
  Recipe recipe{Method::Pq, p, q, {}, {}, beta,
                std::vector<u64>(multipliers.begin() + 1, multipliers.end()), r};
  return detail::certify(std::move(pairs), m, std::move(recipe), true);
}

struct PqCyclotomicParams {
  u64 p;
  u64 q;
  unsigned k;
  u64 root;
  u64 modulus;
  u64 root_order;  // |<r>_pq| = lcm(p - 1, q - 1)
};

/// Validates the hypotheses shared by the Z_pq cyclotomic construction and
/// the two lemma checks' instance shape.
inline PqCyclotomicParams pq_cyclotomic_params(u64 p, u64 q, unsigned k) {
  require_odd_prime(p, "p");
  require_odd_prime(q, "q");
  if (k < 3) detail::hypothesis("k must be >= 3");
  if (p >= q) detail::hypothesis("require p < q");
  const auto cp = CyclotomicStructure::make(p, k);
  const auto cq = CyclotomicStructure::make(q, k);
  if ((q - 1) % (p - 1) == 0) detail::hypothesis("require (p - 1) not dividing (q - 1)");
  if (cp.index_of(2) != cp.delta() / 2) detail::hypothesis("2 is not in C_{2^(k-1)} mod p");
  if (cq.index_of(2) != cq.delta() / 2) detail::hypothesis("2 is not in C_{2^(k-1)} mod q");
  const u64 r = find_common_primitive_root(p, q);
  const auto ctx = GroupContext::product(p, q, r);
  return {p, q, k, r, ctx.modulus, (p - 1) / std::gcd(p - 1, q - 1) * (q - 1)};
}

/// The raw pair list for given G_pq multipliers, without certification.
inline std::vector<Pair> pq_cyclotomic_pairs(const PqCyclotomicParams& prm, Beta beta,
                                             std::span<const u64> multipliers) {
  const u64 m = prm.modulus;
  const u64 b = beta.resolve(m);
  std::vector<Pair> pairs;
  detail::append_pairs(pairs, detail::half_coset_union(prm.root, prm.k, prm.q), prm.p, b, m);
  detail::append_pairs(pairs, detail::half_coset_union(prm.root, prm.k, prm.p), prm.q, b, m);
  const auto base = detail::half_coset_union(prm.root, prm.k, m);
  for (u64 lambda : multipliers) detail::append_pairs(pairs, base, lambda, b, m);
  return pairs;
}

/// Smallest lambda in r^(2^(k-1)) <r^(2^k)>_pq other than 2.
inline u64 printed_condition_lambda(const PqCyclotomicParams& prm) {
  const u64 delta = u64{1} << prm.k;
  const u64 h = mod_pow(prm.root, delta, prm.modulus);
  auto coset = cyclic_coset(h, mod_pow(prm.root, delta / 2, prm.modulus), prm.modulus);
  std::sort(coset.begin(), coset.end());
  for (u64 x : coset) {
    if (x != 2) return x;
  }
  detail::hypothesis("coset has no element other than 2");
}

/// pT_q u qT_p u T_pq; T_pq is {x, beta x} over the half-coset union mod pq,
/// translated by a transversal of G_pq / <r>_pq.
inline Construction pq_cyclotomic_starter(u64 p, u64 q, unsigned k, Beta beta = Beta::two()) {
  detail::require_two_or_inverse(beta);
  const auto prm = pq_cyclotomic_params(p, q, k);
  detail::require_in_upper_coset(prm.modulus - 1, prm.root, k, prm.modulus, prm.root_order,
                                 "-1");
  detail::require_in_upper_coset(2, prm.root, k, prm.modulus, prm.root_order, "2");
  const auto multipliers = detail::coset_transversal(prm.root, prm.modulus, p, q);
  auto pairs = pq_cyclotomic_pairs(prm, beta, multipliers);
  if (multipliers.size() * prm.root_order != (p - 1) * (q - 1)) {
    fail(ErrorKind::CoverageFailure, "multipliers do not cover G_pq");
  }
  Recipe recipe{Method::PqCyclotomic, p, q, {}, k, beta,
                std::vector<u64>(multipliers.begin() + 1, multipliers.end()), prm.root};
  return detail::certify(std::move(pairs), prm.modulus, std::move(recipe), true);
}

struct Lemma41Report {
  u64 exponent;                         // (p-1)(q-1) / 2^(k+1)
  bool congruence_holds;                // r^exponent = -1 (mod pq)
  std::optional<bool> minus_one_in_coset;  // set when r is a common primitive root

  bool holds() const { return congruence_holds && minus_one_in_coset.value_or(true); }
};

namespace detail {

inline void require_pq_shape(u64 p, u64 q, unsigned k) {
  require_odd_prime(p, "p");
  require_odd_prime(q, "q");
  if (k < 3) hypothesis("k must be >= 3");
  const u64 delta = u64{1} << k;
  if ((p - 1) % delta != 0 || (q - 1) % delta != 0) hypothesis("p, q must be 2^k t + 1");
  const u64 t1 = (p - 1) / delta, t2 = (q - 1) / delta;
  if (t1 % 2 == 0 || t2 % 2 == 0 || t1 <= 1) hypothesis("t1, t2 must be odd and > 1");
  if (t1 >= t2) hypothesis("require t1 < t2");
}

// Exponent e mod lcm(p-1, q-1) with r^e = x (mod pq), split through Psi.
inline std::optional<u64> crt_split_log(u64 x, u64 r, u64 p, u64 q) {
  const u64 ep = discrete_log(x % p, r % p, p, p - 1);
  const u64 eq = discrete_log(x % q, r % q, q, q - 1);
  auto joined = crt_general(ep, p - 1, eq, q - 1);
  if (!joined) return std::nullopt;
  return joined->first;
}

}  // namespace detail

inline Lemma41Report check_lemma_4_1(u64 p, u64 q, unsigned k, u64 r) {
  detail::require_pq_shape(p, q, k);
  if (r % p == 0 || r % q == 0 || is_quadratic_residue(r, p) || is_quadratic_residue(r, q)) {
    detail::hypothesis("r must be a non-residue mod p and mod q");
  }
  const u64 m = p * q;
  Lemma41Report report;
  report.exponent = (p - 1) * (q - 1) / (u64{2} << k);
  report.congruence_holds = mod_pow(r, report.exponent, m) == m - 1;
  if (is_primitive_root_mod_prime(r, p) && is_primitive_root_mod_prime(r, q)) {
    const u64 delta = u64{1} << k;
    auto e = detail::crt_split_log(m - 1, r, p, q);
    report.minus_one_in_coset = e && (*e % delta == delta / 2);
  }
  return report;
}

inline bool check_lemma_4_2(u64 p, u64 q, unsigned k, u64 r) {
  detail::require_pq_shape(p, q, k);
  if (!is_primitive_root_mod_prime(r, p) || !is_primitive_root_mod_prime(r, q)) {
    detail::hypothesis("r must be a common primitive root");
  }
  const u64 delta = u64{1} << k;
  if (discrete_log(2, r, p, p - 1) % delta != delta / 2 ||
      discrete_log(2, r, q, q - 1) % delta != delta / 2) {
    detail::hypothesis("2 must lie in r^(2^(k-1)) <r^(2^k)> mod p and mod q");
  }
  auto e = detail::crt_split_log(2, r, p, q);
  return e && (*e % delta == delta / 2);
}

}  // namespace skolem
