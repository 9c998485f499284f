#pragma once

// Linear-scan reference answers for concept-index queries, and a random
// corpus generator to drive them.

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "fixtures.hpp"

namespace index_oracle {

using namespace ehrner;
using fixtures::mention;

inline AnnotatedDocument annotated(Document d, std::vector<Mention> ms, std::string annotator = "gold") {
  AnnotatedDocument ad;
  ad.doc = std::move(d);
  AnnotationSet s;
  s.doc_id = ad.doc.id;
  s.annotator_id = std::move(annotator);
  s.mentions = std::move(ms);
  ad.annotations.push_back(std::move(s));
  return ad;
}

inline bool is_under(const Ontology& o, const std::string& node, const std::string& ancestor) {
  if (node == ancestor) return true;
  if (!o.contains(node)) return false;
  for (const auto& p : o.node(node).parent_ids) {
    if (is_under(o, p, ancestor)) return true;
  }
  return false;
}

inline std::vector<std::pair<std::string, std::size_t>> oracle_frequencies(const Corpus& c, const std::string& patient) {
  std::map<std::string, std::size_t> counts;
  for (const auto& d : c) {
    if (d.doc.patient_id != patient || d.annotations.empty()) continue;
    for (const auto& m : d.annotations[0].mentions) ++counts[m.node_id];
  }
  std::vector<std::pair<std::string, std::size_t>> out(counts.begin(), counts.end());
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return a.second != b.second ? a.second > b.second : a.first < b.first;
  });
  return out;
}

using CitationKey = std::tuple<std::string, std::string, std::size_t, std::size_t, std::string>;

inline std::vector<CitationKey> oracle_timeline(const Corpus& c, const std::string& patient, const std::string& node,
                                         bool descendants) {
  std::vector<CitationKey> out;
  for (const auto& d : c) {
    if (d.doc.patient_id != patient || d.annotations.empty()) continue;
    for (const auto& m : d.annotations[0].mentions) {
      const bool hit = descendants ? is_under(fixtures::seed(), m.node_id, node) : m.node_id == node;
      if (hit) out.emplace_back(d.doc.date.str(), d.doc.id, m.span.start, m.span.end, m.node_id);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline std::vector<std::string> oracle_texts(const Corpus& c, const std::string& patient, const std::set<std::string>& nodes,
                                      bool all, bool descendants) {
  std::vector<std::pair<std::string, std::string>> hits;
  for (const auto& d : c) {
    if (d.doc.patient_id != patient) continue;
    std::size_t matched = 0;
    for (const auto& n : nodes) {
      bool found = false;
      for (const auto& m : d.annotations.empty() ? std::vector<Mention>{} : d.annotations[0].mentions) {
        if (descendants ? is_under(fixtures::seed(), m.node_id, n) : m.node_id == n) found = true;
      }
      if (found) ++matched;
    }
    if (all ? matched == nodes.size() : matched > 0) hits.emplace_back(d.doc.date.str(), d.doc.id);
  }
  std::sort(hits.begin(), hits.end());
  std::vector<std::string> out;
  for (const auto& h : hits) out.push_back(h.second);
  return out;
}

inline std::vector<std::string> all_node_ids() {
  std::vector<std::string> out;
  for (const auto& [id, unused] : fixtures::seed().nodes) out.push_back(id);
  return out;
}

inline Corpus random_corpus(std::mt19937_64& rng) {
  const auto nodes = all_node_ids();
  Corpus c;
  const auto docs = 1 + rng() % 50;
  for (std::size_t i = 0; i < docs; ++i) {
    const std::string patient = "P" + std::to_string(rng() % 4);
    const std::string date = "2020-0" + std::to_string(1 + rng() % 9) + "-1" + std::to_string(rng() % 10);
    std::vector<Mention> ms;
    std::set<std::pair<std::size_t, std::string>> seen;
    const auto n = rng() % 7;
    for (std::size_t k = 0; k < n; ++k) {
      const std::size_t s = rng() % 40;
      const auto& node = nodes[rng() % nodes.size()];
      if (!seen.insert({s, node}).second) continue;
      std::set<std::string> mods;
      if (rng() % 4 == 0) mods.insert("negation");
      ms.push_back(mention(s, s + 1 + rng() % 3, node, mods));
    }
    char id[8];
    std::snprintf(id, sizeof id, "D%03zu", i);
    c.push_back(annotated(fixtures::doc(id, std::string(50, 'a'), patient, date), ms));
  }
  return c;
}

inline std::vector<CitationKey> keys(const std::vector<Citation>& cs) {
  std::vector<CitationKey> out;
  for (const auto& c : cs) out.emplace_back(c.date.str(), c.doc_id, c.span.start, c.span.end, c.node_id);
  return out;
}

struct OracleTally {
  std::size_t queries = 0;
  std::size_t mismatches = 0;
};

// Runs frequency, timeline and texts queries on `corpora` random corpora and
// counts disagreements with the linear scan.
inline OracleTally compare_random_queries(std::mt19937_64& rng, int corpora, int rounds_per_corpus) {
  const auto nodes = all_node_ids();
  OracleTally t;
  for (int trial = 0; trial < corpora; ++trial) {
    const auto c = random_corpus(rng);
    const auto idx = index::build_index(c, IndexSource::gold);
    for (int q = 0; q < rounds_per_corpus; ++q) {
      const std::string patient = "P" + std::to_string(rng() % 5);
      std::vector<std::pair<std::string, std::size_t>> got;
      for (const auto& f : index::concept_frequencies(idx, patient)) got.emplace_back(f.node_id, f.count);
      t.mismatches += got != oracle_frequencies(c, patient);

      const auto& node = nodes[rng() % nodes.size()];
      const bool desc = rng() % 2 == 0;
      t.mismatches += keys(index::timeline(idx, patient, node, desc, &fixtures::seed())) !=
                      oracle_timeline(c, patient, node, desc);

      std::set<std::string> wanted;
      const auto k = 1 + rng() % 3;
      while (wanted.size() < k) wanted.insert(nodes[rng() % nodes.size()]);
      const bool all = rng() % 2 == 0;
      const auto tx =
          index::texts_with_concepts(idx, patient, wanted, all ? MatchMode::all : MatchMode::any, desc, &fixtures::seed());
      t.mismatches += tx.doc_ids != oracle_texts(c, patient, wanted, all, desc) || tx.count != tx.doc_ids.size();
      t.queries += 3;
    }
  }
  return t;
}

}  // namespace index_oracle
