#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include <json.hpp>

#include "ehrner/corpus.hpp"
#include "ehrner/ontology.hpp"

namespace ehrner {

struct Counts {
  std::size_t gold = 0;
  std::size_t predicted = 0;
  std::size_t correct = 0;

  Counts& operator+=(const Counts& o) {
    gold += o.gold;
    predicted += o.predicted;
    correct += o.correct;
    return *this;
  }
  bool operator==(const Counts&) const = default;
};

struct PRF {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;

  bool operator==(const PRF&) const = default;
};

inline double harmonic_f1(double p, double r) { return p + r == 0.0 ? 0.0 : 2.0 * p * r / (p + r); }

inline PRF prf(const Counts& c) {
  PRF out;
  out.precision = c.predicted == 0 ? 0.0 : static_cast<double>(c.correct) / static_cast<double>(c.predicted);
  out.recall = c.gold == 0 ? 0.0 : static_cast<double>(c.correct) / static_cast<double>(c.gold);
  out.f1 = harmonic_f1(out.precision, out.recall);
  return out;
}

struct EvalReport {
  Counts counts;
  PRF micro;
  std::map<std::string, Counts> level1_counts;
  std::map<std::string, PRF> macro_by_level1;
  std::map<int, Counts> depth_counts;
  std::map<int, PRF> by_depth;
  double modifier_accuracy = 0.0;  // exact modifier-set match over correct mentions
  std::map<std::string, double> modifier_accuracy_by_id;  // per-modifier presence agreement

  bool operator==(const EvalReport&) const = default;
};

// Mentions per document id.
using DocumentMentions = std::map<std::string, std::vector<Mention>>;

namespace evaluation {

// Depth of each distinct span inside one document's mention forest.
inline std::map<Span, int> span_depths(const std::vector<Mention>& mentions) {
  std::set<Span> spans;
  for (const auto& m : mentions) spans.insert(m.span);
  std::map<Span, int> out;
  for (const auto& s : spans) {
    int d = 0;
    for (const auto& o : spans) {
      if (o != s && o.contains(s)) ++d;
    }
    out[s] = d;
  }
  return out;
}

// Exact-match NERC: a prediction is correct iff its (span, node) equals a
// distinct gold mention of the same document.
inline EvalReport nerc_scores(const DocumentMentions& gold, const DocumentMentions& pred, const Ontology& ontology) {
  std::set<std::string> gold_docs, pred_docs;
  for (const auto& [k, unused] : gold) gold_docs.insert(k);
  for (const auto& [k, unused] : pred) pred_docs.insert(k);
  if (gold_docs != pred_docs) throw Error("evaluation", "DocMismatch", "gold and predicted cover different documents");

  EvalReport r;
  std::size_t mod_total = 0, mod_exact = 0;
  std::map<std::string, std::pair<std::size_t, std::size_t>> per_mod;  // id -> (agree, total)
  for (const auto& [mid, unused] : ontology.modifiers) per_mod[mid] = {0, 0};

  auto classes = [&](const std::string& node) {
    return ontology.contains(node) ? ontology::level1_ancestors(ontology, node) : std::set<std::string>{"<unknown>"};
  };

  for (const auto& [doc_id, gold_mentions] : gold) {
    const auto& pred_mentions = pred.at(doc_id);
    const auto gold_depth = span_depths(gold_mentions);
    const auto pred_depth = span_depths(pred_mentions);
    std::map<std::pair<Span, std::string>, const Mention*> gold_index;
    for (const auto& g : gold_mentions) gold_index.emplace(std::make_pair(g.span, g.node_id), &g);
    std::set<std::pair<Span, std::string>> pred_seen;

    for (const auto& [key, g] : gold_index) {
      ++r.counts.gold;
      ++r.depth_counts[gold_depth.at(key.first)].gold;
      for (const auto& c : classes(key.second)) ++r.level1_counts[c].gold;
    }
    for (const auto& p : pred_mentions) {
      auto key = std::make_pair(p.span, p.node_id);
      if (!pred_seen.insert(key).second) continue;
      auto hit = gold_index.find(key);
      const int depth = hit != gold_index.end() ? gold_depth.at(p.span) : pred_depth.at(p.span);
      ++r.counts.predicted;
      ++r.depth_counts[depth].predicted;
      for (const auto& c : classes(p.node_id)) ++r.level1_counts[c].predicted;
      if (hit == gold_index.end()) continue;
      ++r.counts.correct;
      ++r.depth_counts[depth].correct;
      for (const auto& c : classes(p.node_id)) ++r.level1_counts[c].correct;
      ++mod_total;
      if (hit->second->modifier_ids == p.modifier_ids) ++mod_exact;
      for (auto& [mid, agree] : per_mod) {
        ++agree.second;
        if (hit->second->modifier_ids.count(mid) == p.modifier_ids.count(mid)) ++agree.first;
      }
    }
  }
  r.micro = prf(r.counts);
  for (const auto& [k, c] : r.level1_counts) r.macro_by_level1[k] = prf(c);
  for (const auto& [k, c] : r.depth_counts) r.by_depth[k] = prf(c);
  r.modifier_accuracy = mod_total == 0 ? 0.0 : static_cast<double>(mod_exact) / static_cast<double>(mod_total);
  for (const auto& [mid, agree] : per_mod) {
    r.modifier_accuracy_by_id[mid] =
        agree.second == 0 ? 0.0 : static_cast<double>(agree.first) / static_cast<double>(agree.second);
  }
  return r;
}

inline nlohmann::json to_json(const PRF& p) {
  return {{"precision", p.precision}, {"recall", p.recall}, {"f1", p.f1}};
}

inline nlohmann::json to_json(const EvalReport& r) {
  nlohmann::json by_class = nlohmann::json::object();
  for (const auto& [k, v] : r.macro_by_level1) by_class[k] = to_json(v);
  nlohmann::json by_depth = nlohmann::json::object();
  for (const auto& [k, v] : r.by_depth) {
    auto j = to_json(v);
    const auto& c = r.depth_counts.at(k);
    j["gold"] = c.gold;
    j["predicted"] = c.predicted;
    j["correct"] = c.correct;
    by_depth[std::to_string(k)] = j;
  }
  return {{"micro", to_json(r.micro)},
          {"counts", {{"gold", r.counts.gold}, {"predicted", r.counts.predicted}, {"correct", r.counts.correct}}},
          {"macro_by_level1", by_class},
          {"by_depth", by_depth},
          {"modifier_accuracy", r.modifier_accuracy},
          {"modifier_accuracy_by_id", r.modifier_accuracy_by_id}};
}

inline std::string format_table(const EvalReport& r) {
  std::ostringstream os;
  char line[160];
  auto row = [&](const std::string& name, const PRF& p, const Counts& c) {
    std::snprintf(line, sizeof line, "%-32s %7.4f %7.4f %7.4f %7zu %7zu %7zu\n", name.c_str(), p.precision, p.recall,
                  p.f1, c.gold, c.predicted, c.correct);
    os << line;
  };
  std::snprintf(line, sizeof line, "%-32s %7s %7s %7s %7s %7s %7s\n", "scope", "P", "R", "F1", "gold", "pred", "ok");
  os << line;
  row("micro", r.micro, r.counts);
  for (const auto& [k, p] : r.macro_by_level1) row("class " + k, p, r.level1_counts.at(k));
  for (const auto& [k, p] : r.by_depth) row("depth " + std::to_string(k), p, r.depth_counts.at(k));
  std::snprintf(line, sizeof line, "modifier accuracy %.4f", r.modifier_accuracy);
  os << line;
  if (r.modifier_accuracy_by_id.count("negation")) {
    std::snprintf(line, sizeof line, "  (negation %.4f)", r.modifier_accuracy_by_id.at("negation"));
    os << line;
  }
  os << '\n';
  return os.str();
}

}  // namespace evaluation
}  // namespace ehrner
