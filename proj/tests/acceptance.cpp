// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
// failure. Runtime budgets are part of each criterion.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "skolem/skolem.hpp"

using namespace skolem;

namespace {

struct Outcome {
  bool ok = true;
  std::string note;

  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      note = what;
    }
  }
};

using Clock = std::chrono::steady_clock;

bool is_cardioidal_strong_skolem(const Classification& c) { return c.all(); }

std::vector<Construction>& constructed_corpus() {
  static std::vector<Construction> corpus;
  return corpus;
}

Outcome criterion_1() {
  Outcome o;
  const Starter s(19, {make_pair(17, 18, 19), make_pair(2, 4, 19), make_pair(3, 6, 19),
                       make_pair(11, 15, 19), make_pair(9, 14, 19), make_pair(7, 13, 19),
                       make_pair(5, 12, 19), make_pair(8, 16, 19), make_pair(1, 10, 19)});
  const auto t0 = Clock::now();
  const auto c = classify(s);
  const auto us = std::chrono::duration_cast<std::chrono::microseconds>(Clock::now() - t0);
  o.require(c.is_starter, "not a starter");
  o.require(c.is_strong, "not strong");
  o.require(c.is_skolem, "not Skolem");
  o.require(c.is_cardioidal, "not cardioidal");
  o.require(us.count() < 1000, "took " + std::to_string(us.count()) + " us (budget 1 ms)");
  return o;
}

Outcome criterion_2() {
  Outcome o;
  const auto t0 = Clock::now();
  int primes = 0;
  for (u64 p = 5; p < 1000; ++p) {
    if (!is_prime(p) || p % 8 != 3) continue;
    ++primes;
    const auto a = qr_starter(p, Beta::two());
    const auto b = qr_starter(p, Beta::two_inverse());
    const std::string at = " at p = " + std::to_string(p);
    o.require(a.starter.pairs().size() == (p - 1) / 2, "pair count" + at);
    o.require(b.starter.pairs().size() == (p - 1) / 2, "pair count (2inv)" + at);
    o.require(is_cardioidal_strong_skolem(classify(a.starter)), "S_2 verdicts" + at);
    o.require(is_cardioidal_strong_skolem(classify(b.starter)), "S_2inv verdicts" + at);
    o.require(b.starter == negate_starter(a.starter), "S_2inv != -S_2" + at);
    constructed_corpus().push_back(a);
    constructed_corpus().push_back(b);
  }
  const double s = std::chrono::duration<double>(Clock::now() - t0).count();
  o.require(primes == 43, "expected 43 primes, saw " + std::to_string(primes));
  o.require(s < 5.0, "took " + std::to_string(s) + " s (budget 5 s)");
  o.note = o.ok ? std::to_string(primes) + " primes" : o.note;
  return o;
}

Outcome criterion_3() {
  Outcome o;
  const auto t0 = Clock::now();
  const auto a = prime_power_starter(11, 2, Beta::two());
  const auto b = prime_power_starter(11, 3, Beta::two());
  const double s = std::chrono::duration<double>(Clock::now() - t0).count();
  o.require(a.starter.modulus() == 121 && a.starter.pairs().size() == 60, "Z_121 shape");
  o.require(is_cardioidal_strong_skolem(classify(a.starter)), "Z_121 verdicts");
  o.require(b.starter.modulus() == 1331 && b.starter.pairs().size() == 665, "Z_1331 shape");
  o.require(is_cardioidal_strong_skolem(classify(b.starter)), "Z_1331 verdicts");
  o.require(s < 1.0, "took " + std::to_string(s) + " s (budget 1 s)");
  constructed_corpus().push_back(a);
  constructed_corpus().push_back(b);
  return o;
}

Outcome criterion_4() {
  Outcome o;
  const auto t0 = Clock::now();
  const auto c = cyclotomic_starter(281, 3);
  const auto report = scan_cyclotomic_primes(3, 300);
  const double s = std::chrono::duration<double>(Clock::now() - t0).count();
  o.require(c.starter.pairs().size() == 140, "pair count");
  o.require(is_cardioidal_strong_skolem(classify(c.starter)), "verdicts");
  // Predicate re-evaluated independently: p = 8t + 1, t odd > 1, 2^t = -1 (mod p).
  std::vector<u64> expected, got;
  for (u64 p = 3; p < 300; p += 2) {
    if (!is_prime(p) || (p - 1) % 8 != 0) continue;
    const u64 t = (p - 1) / 8;
    if (t % 2 == 1 && t > 1 && mod_pow(2, t, p) == p - 1) expected.push_back(p);
  }
  for (const auto& h : report.hits) {
    const u64 p = h.params["p"].get<u64>();
    got.push_back(p);
    o.require(multiplicative_order(2, p) % 4 == 2, "ord(2) mod 4 at " + std::to_string(p));
  }
  o.require(got == expected, "scan set differs from predicate");
  o.require(std::find(got.begin(), got.end(), 281u) != got.end(), "281 missing");
  o.require(s < 1.0, "took " + std::to_string(s) + " s (budget 1 s)");
  constructed_corpus().push_back(c);
  return o;
}

Outcome criterion_5() {
  Outcome o;
  const auto t0 = Clock::now();
  const auto c = pq_starter(11, 19, Beta::two());
  const double s = std::chrono::duration<double>(Clock::now() - t0).count();
  size_t pf = 0, qf = 0, uf = 0;
  for (const auto& pr : c.starter.pairs()) {
    if (pr.lo % 11 == 0) ++pf;
    else if (pr.lo % 19 == 0) ++qf;
    else ++uf;
  }
  o.require(c.starter.modulus() == 209 && c.starter.pairs().size() == 104, "shape");
  o.require(pf == 9 && qf == 5 && uf == 90, "family sizes");
  o.require(is_cardioidal_strong_skolem(classify(c.starter)), "verdicts");
  o.require(s < 1.0, "took " + std::to_string(s) + " s (budget 1 s)");
  constructed_corpus().push_back(c);
  return o;
}

Outcome criterion_6() {
  Outcome o;
  const auto t0 = Clock::now();
  const auto c = pq_cyclotomic_starter(281, 617, 3, Beta::two());
  const u64 r = c.recipe.root;
  const auto l41 = check_lemma_4_1(281, 617, 3, r);
  const bool l42 = check_lemma_4_2(281, 617, 3, r);
  const double s = std::chrono::duration<double>(Clock::now() - t0).count();
  o.require(c.starter.modulus() == 173377 && c.starter.pairs().size() == 86688, "shape");
  o.require(is_cardioidal_strong_skolem(classify(c.starter)), "verdicts");
  o.require(l41.exponent == 10780, "half-order exponent " + std::to_string(l41.exponent));
  o.require(l41.holds(), "-1 power congruence check false");
  o.require(l42, "2 coset membership check false");
  o.require(s < 30.0, "took " + std::to_string(s) + " s (budget 30 s)");
  constructed_corpus().push_back(c);
  return o;
}

Outcome criterion_7() {
  Outcome o;
  const auto three = classify(Starter(3, {{1, 2}}));
  o.require(three.is_starter && three.is_cardioidal, "n = 3 fixture is not a cardioidal starter");
  o.require(three.is_skolem, "n = 3 fixture is not Skolem");
  o.require(!three.is_strong, "n = 3 fixture is strong");
  o.require(constructed_corpus().size() >= 86, "corpus from criteria 2-6 incomplete");
  for (const auto& c : constructed_corpus()) {
    const u64 n = c.starter.modulus();
    const auto v = classify(c.starter);
    o.require(n % 3 != 0, "corpus modulus divisible by 3");
    o.require(v.is_cardioidal && v.is_skolem && v.is_strong,
              "corpus member Z_" + std::to_string(n) + " is not a strong Skolem starter");
  }
  return o;
}

Outcome criterion_8() {
  Outcome o;
  const auto t0 = Clock::now();
  for (u64 n = 3; n <= 27; n += 2) {
    SearchOptions opts;
    opts.timeout = std::chrono::seconds(60);
    const auto r = exhaustive_skolem_search(n, opts);
    const bool admissible = n % 8 == 1 || n % 8 == 3;
    const std::string at = " at n = " + std::to_string(n);
    o.require(r.status != SearchStatus::TimedOut, "timeout" + at);
    if (admissible) {
      o.require(r.status == SearchStatus::Found, "no Skolem starter found" + at);
      if (!r.starters.empty()) {
        const auto v = classify(r.starters[0]);
        o.require(v.is_starter && v.is_skolem, "search output fails verification" + at);
      }
    } else {
      o.require(r.status == SearchStatus::Exhausted, "nonexistence not proven" + at);
    }
  }
  const double s = std::chrono::duration<double>(Clock::now() - t0).count();
  o.require(s < 60.0, "took " + std::to_string(s) + " s (budget 60 s)");
  return o;
}

Outcome criterion_9() {
  Outcome o;
  std::string found;
  for (u64 n = 11; n <= 33; n += 2) {
    if (n % 8 != 1 && n % 8 != 3) continue;
    SearchOptions opts;
    opts.require_strong = true;
    opts.timeout = std::chrono::seconds(60);
    const auto r = exhaustive_skolem_search(n, opts);
    const std::string at = " at n = " + std::to_string(n);
    o.require(r.status != SearchStatus::TimedOut, "timeout" + at);
    o.require(r.status == SearchStatus::Found, "no strong Skolem starter" + at);
    if (!r.starters.empty()) {
      const auto v = classify(r.starters[0]);
      o.require(v.is_starter && v.is_strong && v.is_skolem, "re-verification failed" + at);
      found += (found.empty() ? "" : ",") + std::to_string(n);
    }
  }
  if (o.ok) o.note = "n = " + found;
  return o;
}

Outcome criterion_10() {
  Outcome o;
  const auto t0 = Clock::now();
  for (u64 n = 3; n <= 15; n += 2) {
    const auto all = enumerate_starters(n);
    bool enum_skolem = false, enum_strong_skolem = false;
    for (const auto& s : all) {
      const auto a = classify(s);
      const auto b = classify(negate_starter(s));
      const std::string at = " at n = " + std::to_string(n);
      o.require(a.is_starter, "enumerated non-starter" + at);
      o.require(a.is_starter == b.is_starter && a.is_strong == b.is_strong &&
                    a.is_cardioidal == b.is_cardioidal,
                "negation changed a verdict" + at);
      enum_skolem |= a.is_skolem;
      enum_strong_skolem |= a.is_skolem && a.is_strong;
    }
    const bool bt_skolem = exhaustive_skolem_search(n, false, false).status == SearchStatus::Found;
    const bool bt_strong = exhaustive_skolem_search(n, true, false).status == SearchStatus::Found;
    o.require(enum_skolem == bt_skolem, "Skolem existence disagrees at n = " + std::to_string(n));
    o.require(enum_strong_skolem == bt_strong,
              "strong Skolem existence disagrees at n = " + std::to_string(n));
  }
  const double s = std::chrono::duration<double>(Clock::now() - t0).count();
  o.require(s < 10.0, "took " + std::to_string(s) + " s (budget 10 s)");
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"AC1  reference Z_19 starter is a strong Skolem cardioidal starter for Z_19", criterion_1},
      {"AC2  QR construction sweep, p = 3 mod 8, 3 < p < 1000", criterion_2},
      {"AC3  prime-power construction for Z_121 and Z_1331", criterion_3},
      {"AC4  cyclotomic construction for Z_281 and admissible-prime scan", criterion_4},
      {"AC5  pq construction for Z_209", criterion_5},
      {"AC6  pq cyclotomic construction for Z_173377 and lemma checks", criterion_6},
      {"AC7  cardioidal => Skolem; strong iff 3 does not divide n", criterion_7},
      {"AC8  Skolem starters exist iff n = 1, 3 mod 8 (n = 3..27)", criterion_8},
      {"AC9  strong Skolem starters for admissible n = 11..33", criterion_9},
      {"AC10 enumeration and backtracking agree (n <= 15)", criterion_10},
  };
  int failed = 0;
  for (const auto& [name, run] : criteria) {
    const auto t0 = Clock::now();
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o.ok = false;
      o.note = std::string("exception: ") + e.what();
    }
    const double ms = std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
    std::printf("[%s] %s (%.1f ms)%s%s\n", o.ok ? "PASS" : "FAIL", name.c_str(), ms,
                o.note.empty() ? "" : ": ", o.note.c_str());
    failed += !o.ok;
  }
  std::printf("%zu/%zu acceptance criteria passed\n", criteria.size() - failed, criteria.size());
  return failed ? 1 : 0;
}
