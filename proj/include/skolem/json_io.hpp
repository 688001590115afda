#pragma once

// JSON documents shared by the CLI and the library:
//   Starter:     {"modulus", "pairs": [[lo,hi],...], "recipe", "classification"}
//   ScanReport:  {"kind", "bound", "hits": [{"params", "certificates"}]}
// Keys are emitted in a fixed order and pairs ascending by lo, so identical
// inputs always serialize to identical bytes.

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "skolem/constructions.hpp"
#include "skolem/search.hpp"
#include "skolem/starters.hpp"

namespace skolem {

using ordered_json = nlohmann::ordered_json;

inline ordered_json to_json(const Witness& w) {
  return ordered_json{{"kind", to_string(w.kind)}, {"values", w.values}, {"message", w.message}};
}

inline ordered_json to_json(const std::optional<Witness>& w) {
  return w ? to_json(*w) : ordered_json(nullptr);
}

inline ordered_json to_json(const Classification& c) {
  return ordered_json{{"is_starter", c.is_starter},
                      {"is_strong", c.is_strong},
                      {"is_skolem", c.is_skolem},
                      {"is_cardioidal", c.is_cardioidal},
                      {"dependent", c.dependent},
                      {"witnesses",
                       {{"starter", to_json(c.starter_witness)},
                        {"strong", to_json(c.strong_witness)},
                        {"skolem", to_json(c.skolem_witness)},
                        {"cardioidal", to_json(c.cardioidal_witness)}}}};
}

inline ordered_json to_json(const Beta& b) {
  switch (b.kind) {
    case Beta::Kind::Two: return "2";
    case Beta::Kind::TwoInverse: return "2inv";
    case Beta::Kind::Explicit: return b.value;
  }
  return nullptr;
}

inline ordered_json to_json(const Recipe& r) {
  ordered_json j;
  j["method"] = to_string(r.method);
  j["p"] = r.p;
  if (r.q) j["q"] = *r.q;
  if (r.n) j["n"] = *r.n;
  if (r.k) j["k"] = *r.k;
  j["beta"] = to_json(r.beta);
  j["root"] = r.root;
  if (r.method == Method::Pq || r.method == Method::PqCyclotomic) j["lambda"] = r.lambdas;
  return j;
}

inline ordered_json to_json(const Starter& s, const Recipe* recipe = nullptr,
                            const Classification* classification = nullptr) {
  ordered_json pairs = ordered_json::array();
  for (const Pair& pr : s.pairs()) pairs.push_back({pr.lo, pr.hi});
  return ordered_json{{"modulus", s.modulus()},
                      {"pairs", std::move(pairs)},
                      {"recipe", recipe ? to_json(*recipe) : ordered_json(nullptr)},
                      {"classification",
                       classification ? to_json(*classification) : ordered_json(nullptr)}};
}

inline ordered_json to_json(const Construction& c) {
  return to_json(c.starter, &c.recipe, &c.classification);
}

/// Reads {"modulus", "pairs"}; other keys are ignored.
inline Starter starter_from_json(const ordered_json& j) {
  try {
    const u64 n = j.at("modulus").get<u64>();
    std::vector<Pair> pairs;
    for (const auto& pr : j.at("pairs")) {
      if (!pr.is_array() || pr.size() != 2) {
        fail(ErrorKind::MalformedStarter, "each pair must be a 2-element array");
      }
      pairs.push_back(make_pair(pr[0].get<u64>(), pr[1].get<u64>(), n));
    }
    return Starter(n, std::move(pairs));
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::MalformedStarter, std::string("bad starter document: ") + e.what());
  }
}

inline ordered_json to_json(const ScanReport& r) {
  ordered_json hits = ordered_json::array();
  for (const auto& h : r.hits) {
    hits.push_back({{"params", h.params}, {"certificates", h.certificates}});
  }
  return ordered_json{{"kind", r.kind}, {"bound", r.bound}, {"hits", std::move(hits)}};
}

inline ordered_json to_json(const SearchResult& r, u64 n, const SearchOptions& opts) {
  ordered_json starters = ordered_json::array();
  for (const auto& s : r.starters) {
    const auto c = classify(s);
    starters.push_back(to_json(s, nullptr, &c));
  }
  return ordered_json{{"modulus", n},
                      {"require_strong", opts.require_strong},
                      {"find_all", opts.find_all},
                      {"status", to_string(r.status)},
                      {"nodes", r.nodes},
                      {"starters", std::move(starters)}};
}

}  // namespace skolem
