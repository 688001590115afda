#pragma once

/**
 * @file modnt.hpp
 * @brief Exact 64-bit modular arithmetic for starter constructions.
 *
 * Residues are canonical representatives in 0..m-1. Every product is taken
 * in unsigned __int128, so all routines are exact for moduli below 2^63.
 *
 * Contents:
 * - mod_pow / mod_inverse / deterministic Miller-Rabin
 * - multiplicative order by descent through the prime factors of phi(m)
 * - primitive roots mod p and their lift to p^n
 * - Euler's criterion, baby-step/giant-step discrete log
 * - cyclotomic classes C_j = r^j <r^(2^k)> of Z_p^*
 * - cosets of cyclic subgroups, the CRT map Z_pq -> Z_p x Z_q
 * - the gcd-strata partition of Z_{p^n} \ {0} and the three-part
 *   partition of Z_pq \ {0}
 */

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "skolem/error.hpp"

namespace skolem {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

inline constexpr u64 kMaxModulus = (u64{1} << 63) - 1;

constexpr u64 mul_mod(u64 a, u64 b, u64 m) {
  return static_cast<u64>(static_cast<u128>(a) * b % m);
}

constexpr u64 add_mod(u64 a, u64 b, u64 m) {
  return static_cast<u64>((static_cast<u128>(a) + b) % m);
}

constexpr u64 mod_pow(u64 base, u64 exp, u64 m) {
  if (m == 1) return 0;
  u64 result = 1;
  base %= m;
  while (exp > 0) {
    if (exp & 1) result = mul_mod(result, base, m);
    base = mul_mod(base, base, m);
    exp >>= 1;
  }
  return result;
}

// Checked integer power; throws InvalidModulus past kMaxModulus.
inline u64 ipow(u64 base, unsigned exp) {
  u128 result = 1;
  for (unsigned i = 0; i < exp; ++i) {
    result *= base;
    if (result > kMaxModulus) {
      fail(ErrorKind::InvalidModulus, std::to_string(base) + "^" +
                                          std::to_string(exp) +
                                          " exceeds 2^63 - 1");
    }
  }
  return static_cast<u64>(result);
}

inline u64 mod_inverse(u64 a, u64 m) {
  // Extended Euclid on signed 128-bit to keep Bezout coefficients exact.
  __int128 old_r = static_cast<__int128>(a % m), r = m;
  __int128 old_s = 1, s = 0;
  while (r != 0) {
    __int128 q = old_r / r;
    std::swap(old_r, r);
    r -= q * old_r;
    std::swap(old_s, s);
    s -= q * old_s;
  }
  if (old_r != 1) {
    fail(ErrorKind::InverseUndefined,
         std::to_string(a) + " is not invertible mod " + std::to_string(m));
  }
  __int128 inv = old_s % static_cast<__int128>(m);
  if (inv < 0) inv += m;
  return static_cast<u64>(inv);
}

namespace detail {

constexpr bool miller_rabin_witness(u64 n, u64 a, u64 d, int s) {
  u64 x = mod_pow(a, d, n);
  if (x == 1 || x == n - 1) return true;
  for (int i = 1; i < s; ++i) {
    x = mul_mod(x, x, n);
    if (x == n - 1) return true;
  }
  return false;
}

}  // namespace detail

// Deterministic for every 64-bit n (first twelve primes as witnesses).
constexpr bool is_prime(u64 n) {
  if (n < 2) return false;
  constexpr u64 small[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  for (u64 p : small) {
    if (n % p == 0) return n == p;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (u64 a : small) {
    if (!detail::miller_rabin_witness(n, a, d, s)) return false;
  }
  return true;
}

namespace detail {

inline u64 pollard_brent(u64 n) {
  if (n % 2 == 0) return 2;
  for (u64 c = 1;; ++c) {
    auto f = [&](u64 x) { return add_mod(mul_mod(x, x, n), c, n); };
    u64 y = 2, x = 2, g = 1, q = 1, ys = 2;
    u64 r = 1;
    constexpr u64 m = 128;
    do {
      x = y;
      for (u64 i = 0; i < r; ++i) y = f(y);
      u64 k = 0;
      do {
        ys = y;
        for (u64 i = 0; i < std::min(m, r - k); ++i) {
          y = f(y);
          q = mul_mod(q, x > y ? x - y : y - x, n);
        }
        g = std::gcd(q, n);
        k += m;
      } while (k < r && g == 1);
      r <<= 1;
    } while (g == 1);
    if (g == n) {
      do {
        ys = f(ys);
        g = std::gcd(x > ys ? x - ys : ys - x, n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

inline void factor_into(u64 n, std::vector<u64>& out) {
  if (n == 1) return;
  if (is_prime(n)) {
    out.push_back(n);
    return;
  }
  u64 d = pollard_brent(n);
  factor_into(d, out);
  factor_into(n / d, out);
}

}  // namespace detail

struct PrimePower {
  u64 prime;
  unsigned exponent;
  bool operator==(const PrimePower&) const = default;
};

// Prime factorization, ascending by prime.
inline std::vector<PrimePower> factorize(u64 n) {
  std::vector<u64> primes;
  for (u64 p : {2, 3, 5, 7, 11, 13}) {
    while (n % p == 0) {
      primes.push_back(p);
      n /= p;
    }
  }
  detail::factor_into(n, primes);
  std::sort(primes.begin(), primes.end());
  std::vector<PrimePower> out;
  for (u64 p : primes) {
    if (!out.empty() && out.back().prime == p) {
      ++out.back().exponent;
    } else {
      out.push_back({p, 1});
    }
  }
  return out;
}

inline u64 euler_phi(u64 n) {
  u64 phi = n;
  for (auto [p, e] : factorize(n)) phi = phi / p * (p - 1);
  return phi;
}

// 2-adic valuation; v2(0) is reported as 64.
constexpr unsigned two_adic_valuation(u64 x) {
  if (x == 0) return 64;
  unsigned v = 0;
  while ((x & 1) == 0) {
    x >>= 1;
    ++v;
  }
  return v;
}

inline void require_unit(u64 x, u64 m) {
  if (std::gcd(x % m, m) != 1) {
    fail(ErrorKind::NotAUnit,
         std::to_string(x) + " is not a unit mod " + std::to_string(m));
  }
}

// Least e >= 1 with x^e = 1 (mod m), given the order of the ambient group.
inline u64 order_in_group(u64 x, u64 m, u64 group_order) {
  u64 order = group_order;
  for (auto [f, e] : factorize(group_order)) {
    for (unsigned i = 0; i < e && order % f == 0; ++i) {
      if (mod_pow(x, order / f, m) != 1) break;
      order /= f;
    }
  }
  return order;
}

inline u64 multiplicative_order(u64 x, u64 m) {
  if (m < 2) fail(ErrorKind::InvalidModulus, "modulus must be >= 2");
  require_unit(x, m);
  return order_in_group(x % m, m, euler_phi(m));
}

inline bool is_primitive_root_mod_prime(u64 r, u64 p) {
  r %= p;
  if (r == 0) return false;
  for (auto [f, e] : factorize(p - 1)) {
    if (mod_pow(r, (p - 1) / f, p) == 1) return false;
  }
  return true;
}

inline void require_odd_prime(u64 p, const char* what = "modulus") {
  if (p < 3 || !is_prime(p)) {
    fail(ErrorKind::InvalidModulus,
         std::string(what) + " " + std::to_string(p) + " is not an odd prime");
  }
}

// Smallest primitive root of Z_p^*.
inline u64 find_primitive_root(u64 p) {
  require_odd_prime(p);
  const auto factors = factorize(p - 1);
  for (u64 r = 2; r < p; ++r) {
    bool ok = true;
    for (auto [f, e] : factors) {
      if (mod_pow(r, (p - 1) / f, p) == 1) {
        ok = false;
        break;
      }
    }
    if (ok) return r;
  }
  fail(ErrorKind::InvalidModulus, "no primitive root mod " + std::to_string(p));
}

// r if it still generates G_{p^n}; r + p when r^(p-1) = 1 (mod p^2).
inline u64 lift_primitive_root(u64 r, u64 p, unsigned n) {
  require_odd_prime(p);
  if (n < 1) fail(ErrorKind::InvalidModulus, "exponent must be >= 1");
  if (!is_primitive_root_mod_prime(r, p)) {
    fail(ErrorKind::NotPrimitiveRoot,
         std::to_string(r) + " does not generate Z_" + std::to_string(p) + "^*");
  }
  if (n == 1) return r;
  const u64 p2 = ipow(p, 2);
  return mod_pow(r, p - 1, p2) == 1 ? r + p : r;
}

enum class ResidueClass { QuadraticResidue, NonResidue };

inline ResidueClass euler_class(u64 x, u64 p) {
  require_odd_prime(p);
  if (x % p == 0) fail(ErrorKind::NotAUnit, "0 has no quadratic character");
  return mod_pow(x, (p - 1) / 2, p) == 1 ? ResidueClass::QuadraticResidue
                                         : ResidueClass::NonResidue;
}

inline bool is_quadratic_residue(u64 x, u64 p) {
  return euler_class(x, p) == ResidueClass::QuadraticResidue;
}

/// Baby-step/giant-step. Returns the unique e in [0, order) with g^e = x.
inline u64 discrete_log(u64 x, u64 g, u64 m, u64 order) {
  x %= m;
  g %= m;
  if (order == 0) fail(ErrorKind::InvalidModulus, "group order must be >= 1");
  if (std::gcd(x, m) != 1) {
    fail(ErrorKind::NotInSubgroup, std::to_string(x) + " is not a unit");
  }
  const u64 step = static_cast<u64>(std::ceil(std::sqrt(static_cast<double>(order))));
  std::unordered_map<u64, u64> baby;
  baby.reserve(step * 2);
  u64 y = 1;
  for (u64 j = 0; j < step; ++j) {
    baby.try_emplace(y, j);
    y = mul_mod(y, g, m);
  }
  const u64 giant = mod_pow(g, (order - step % order) % order, m);
  u64 z = x;
  for (u64 i = 0; i <= step; ++i) {
    if (auto it = baby.find(z); it != baby.end()) {
      const u64 e = i * step + it->second;
      if (e < order) return e;
    }
    z = mul_mod(z, giant, m);
  }
  fail(ErrorKind::NotInSubgroup, std::to_string(x) + " is not a power of " +
                                     std::to_string(g) + " mod " +
                                     std::to_string(m));
}

/// Set-theoretic coset shift * <g> mod m, listed in generation order.
inline std::vector<u64> cyclic_coset(u64 g, u64 shift, u64 m) {
  require_unit(g, m);
  require_unit(shift, m);
  g %= m;
  shift %= m;
  std::vector<u64> out;
  u64 y = shift;
  do {
    out.push_back(y);
    y = mul_mod(y, g, m);
  } while (y != shift);
  return out;
}

/// Cyclotomic classes of order 2^k for p = 2^k t + 1 with t odd, t > 1.
class CyclotomicStructure {
 public:
  // root = 0 selects the smallest primitive root.
  static CyclotomicStructure make(u64 p, unsigned k, u64 root = 0) {
    require_odd_prime(p);
    if (k < 1 || k > 62) fail(ErrorKind::HypothesisViolation, "k must be in 1..62");
    const u64 delta = u64{1} << k;
    if ((p - 1) % delta != 0) {
      fail(ErrorKind::HypothesisViolation,
           std::to_string(p) + " - 1 is not divisible by 2^" + std::to_string(k));
    }
    const u64 t = (p - 1) / delta;
    if (t % 2 == 0) {
      fail(ErrorKind::HypothesisViolation,
           "t = " + std::to_string(t) + " is even (2^" + std::to_string(k) +
               " is not the full 2-part of p - 1)");
    }
    if (t == 1) fail(ErrorKind::HypothesisViolation, "t must exceed 1");
    if (root == 0) {
      root = find_primitive_root(p);
    } else if (!is_primitive_root_mod_prime(root, p)) {
      fail(ErrorKind::NotPrimitiveRoot, std::to_string(root) + " mod " + std::to_string(p));
    }
    return CyclotomicStructure(p, k, delta, t, root % p);
  }

  u64 p() const { return p_; }
  unsigned k() const { return k_; }
  u64 delta() const { return delta_; }
  u64 t() const { return t_; }
  u64 root() const { return root_; }

  /// j in [0, 2^k) with x in C_j.
  u64 index_of(u64 x) const {
    if (x % p_ == 0) fail(ErrorKind::NotAUnit, "0 lies in no cyclotomic class");
    return discrete_log(x, root_, p_, p_ - 1) % delta_;
  }

  /// C_j = r^j <r^(2^k)>, size t.
  std::vector<u64> class_members(u64 j) const {
    return cyclic_coset(mod_pow(root_, delta_, p_), mod_pow(root_, j, p_), p_);
  }

 private:
  CyclotomicStructure(u64 p, unsigned k, u64 delta, u64 t, u64 root)
      : p_(p), k_(k), delta_(delta), t_(t), root_(root) {}

  u64 p_;
  unsigned k_;
  u64 delta_;
  u64 t_;
  u64 root_;
};

inline u64 cyclotomic_index(u64 x, const CyclotomicStructure& cs) {
  return cs.index_of(x);
}

// Psi: Z_pq -> Z_p x Z_q.
inline std::pair<u64, u64> crt_map(u64 x, u64 p, u64 q) { return {x % p, x % q}; }

inline u64 crt_inverse(u64 a, u64 b, u64 p, u64 q) {
  if (std::gcd(p, q) != 1) {
    fail(ErrorKind::InverseUndefined, "moduli " + std::to_string(p) + " and " +
                                          std::to_string(q) + " are not coprime");
  }
  a %= p;
  b %= q;
  const u64 pinv = mod_inverse(p % q, q);
  const u64 t = mul_mod((b + q - a % q) % q, pinv, q);
  return a + p * t;
}

/// x = a (mod m1), x = b (mod m2) for possibly non-coprime moduli.
/// Returns (x mod lcm, lcm), or nullopt when the system is inconsistent.
inline std::optional<std::pair<u64, u64>> crt_general(u64 a, u64 m1, u64 b, u64 m2) {
  const u64 g = std::gcd(m1, m2);
  a %= m1;
  b %= m2;
  if ((a % g) != (b % g)) return std::nullopt;
  const u64 l = m1 / g * m2;
  const u64 m2g = m2 / g;
  if (m2g == 1) return std::make_pair(a, l);
  const u64 diff = ((b + m2 - a % m2) % m2) / g;
  const u64 t = mul_mod(diff % m2g, mod_inverse((m1 / g) % m2g, m2g), m2g);
  return std::make_pair((a + static_cast<u64>(static_cast<u128>(m1) * t % l)) % l, l);
}

enum class ModulusShape { Prime, PrimePower, Product };

/// A modulus of shape p, p^n or pq with a generator for its cyclic part(s).
struct GroupContext {
  u64 modulus;
  ModulusShape shape;
  u64 primitive_root;
  u64 p;
  unsigned exponent = 1;
  std::optional<u64> q;

  static GroupContext prime(u64 p) {
    require_odd_prime(p);
    return {p, ModulusShape::Prime, find_primitive_root(p), p, 1, std::nullopt};
  }

  static GroupContext prime_power(u64 p, unsigned n) {
    require_odd_prime(p);
    const u64 m = ipow(p, n);
    const u64 r = lift_primitive_root(find_primitive_root(p), p, n);
    return {m, n == 1 ? ModulusShape::Prime : ModulusShape::PrimePower, r, p, n, std::nullopt};
  }

  static GroupContext product(u64 p, u64 q, u64 root) {
    require_odd_prime(p);
    require_odd_prime(q);
    if (p == q) fail(ErrorKind::InvalidModulus, "p and q must be distinct");
    if (!is_primitive_root_mod_prime(root, p) || !is_primitive_root_mod_prime(root, q)) {
      fail(ErrorKind::NotPrimitiveRoot,
           std::to_string(root) + " is not a common primitive root");
    }
    const u128 m = static_cast<u128>(p) * q;
    if (m > kMaxModulus) fail(ErrorKind::InvalidModulus, "pq exceeds 2^63 - 1");
    return {static_cast<u64>(m), ModulusShape::Product, root, p, 1, q};
  }
};

/// p^i G_{p^(n-i)}: residues mod p^n whose gcd with p^n is exactly p^i.
struct UnitStratum {
  unsigned level;
  std::vector<u64> elements;
};

inline std::vector<UnitStratum> unit_partition_ppow(u64 p, unsigned n) {
  require_odd_prime(p);
  if (n < 1) fail(ErrorKind::InvalidModulus, "exponent must be >= 1");
  std::vector<UnitStratum> strata;
  strata.reserve(n);
  for (unsigned i = 0; i < n; ++i) {
    const u64 scale = ipow(p, i);
    const u64 inner = ipow(p, n - i);
    UnitStratum s{i, {}};
    s.elements.reserve(inner - inner / p);
    for (u64 x = 1; x < inner; ++x) {
      if (x % p != 0) s.elements.push_back(scale * x);
    }
    strata.push_back(std::move(s));
  }
  return strata;
}

struct PqPartition {
  std::vector<u64> p_multiples;  // p Z_q^*
  std::vector<u64> q_multiples;  // q Z_p^*
  std::vector<u64> units;        // G_pq
};

inline PqPartition unit_partition_pq(u64 p, u64 q) {
  require_odd_prime(p);
  require_odd_prime(q);
  if (p >= q) fail(ErrorKind::InvalidModulus, "require p < q");
  const u64 m = p * q;
  PqPartition out;
  out.p_multiples.reserve(q - 1);
  out.q_multiples.reserve(p - 1);
  out.units.reserve((p - 1) * (q - 1));
  for (u64 x = 1; x < m; ++x) {
    if (x % p == 0) {
      out.p_multiples.push_back(x);
    } else if (x % q == 0) {
      out.q_multiples.push_back(x);
    } else {
      out.units.push_back(x);
    }
  }
  return out;
}

}  // namespace skolem
