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
#include "ehrner/evaluation.hpp"
#include "ehrner/ontology.hpp"

namespace ehrner {

enum class AgreementMode { exact, relaxed, class_only };

inline std::string_view to_string(AgreementMode m) {
  switch (m) {
    case AgreementMode::exact: return "exact";
    case AgreementMode::relaxed: return "relaxed";
    case AgreementMode::class_only: return "class_only";
  }
  return "exact";
}

inline AgreementMode parse_agreement_mode(std::string_view s) {
  if (s == "exact") return AgreementMode::exact;
  if (s == "relaxed") return AgreementMode::relaxed;
  if (s == "class_only") return AgreementMode::class_only;
  throw Error("agreement", "BadMode", "unknown agreement mode '" + std::string(s) + "'");
}

// Raw counts for one comparison: a_total/b_total mentions, matched pairs.
struct PairCounts {
  std::size_t a_total = 0;
  std::size_t b_total = 0;
  std::size_t matched = 0;
  std::size_t exact_matched = 0;     // matched pairs with identical (span, node)
  std::size_t modifier_agreed = 0;   // of those, identical modifier sets

  PairCounts& operator+=(const PairCounts& o) {
    a_total += o.a_total;
    b_total += o.b_total;
    matched += o.matched;
    exact_matched += o.exact_matched;
    modifier_agreed += o.modifier_agreed;
    return *this;
  }
  bool operator==(const PairCounts&) const = default;
};

// Precision divides by b's mentions, recall by a's.
inline PRF agreement_prf(const PairCounts& c) {
  PRF p;
  p.precision = c.b_total == 0 ? 0.0 : static_cast<double>(c.matched) / static_cast<double>(c.b_total);
  p.recall = c.a_total == 0 ? 0.0 : static_cast<double>(c.matched) / static_cast<double>(c.a_total);
  p.f1 = harmonic_f1(p.precision, p.recall);
  return p;
}

struct PairAgreement {
  std::string annotator_a;
  std::string annotator_b;
  PairCounts counts;
  PRF scores;
  std::size_t support = 0;  // documents compared
  double modifier_accuracy = 0.0;
};

struct AgreementReport {
  AgreementMode mode = AgreementMode::exact;
  std::vector<PairAgreement> pairs;
  std::map<std::string, double> per_class;  // level-1 node -> F1
  std::map<std::string, PairCounts> per_class_counts;
};

namespace agreement {

namespace detail {

inline std::set<std::string> classes_of(const Ontology* o, const std::string& node) {
  if (o && o->contains(node)) return ontology::level1_ancestors(*o, node);
  return {node};
}

struct Matching {
  PairCounts counts;
  std::vector<std::pair<std::size_t, std::size_t>> pairs;  // indices into a, b
};

inline Matching match(const std::vector<Mention>& a, const std::vector<Mention>& b, AgreementMode mode,
                      const Ontology* o) {
  Matching out;
  out.counts.a_total = a.size();
  out.counts.b_total = b.size();
  using Key = std::tuple<std::size_t, std::size_t, std::string>;
  auto key = [](const Mention& m) { return Key{m.span.start, m.span.end, m.node_id}; };

  struct Candidate {
    bool identical;
    Key lo, hi;
    std::size_t i, j;
  };
  std::vector<Candidate> cands;
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) {
      const auto& x = a[i];
      const auto& y = b[j];
      bool ok = false;
      switch (mode) {
        case AgreementMode::exact: ok = x.span == y.span && x.node_id == y.node_id; break;
        case AgreementMode::relaxed: ok = x.span.overlaps(y.span) && x.node_id == y.node_id; break;
        case AgreementMode::class_only:
          ok = x.span == y.span && classes_of(o, x.node_id) == classes_of(o, y.node_id);
          break;
      }
      if (!ok) continue;
      auto kx = key(x), ky = key(y);
      cands.push_back({x.span == y.span && x.node_id == y.node_id, std::min(kx, ky), std::max(kx, ky), i, j});
    }
  }
  // Identical pairs first, then document order of the pair's mentions. The
  // order does not depend on which side is a, so the match count is
  // symmetric, and every identical pair is always taken.
  std::stable_sort(cands.begin(), cands.end(), [](const Candidate& p, const Candidate& q) {
    return std::tie(q.identical, p.lo, p.hi) < std::tie(p.identical, q.lo, q.hi);
  });
  std::vector<bool> used_a(a.size()), used_b(b.size());
  for (const auto& c : cands) {
    if (used_a[c.i] || used_b[c.j]) continue;
    used_a[c.i] = used_b[c.j] = true;
    out.pairs.emplace_back(c.i, c.j);
    ++out.counts.matched;
    if (c.identical) {
      ++out.counts.exact_matched;
      if (a[c.i].modifier_ids == b[c.j].modifier_ids) ++out.counts.modifier_agreed;
    }
  }
  return out;
}

}  // namespace detail

inline PairCounts pairwise_counts(const AnnotationSet& a, const AnnotationSet& b, AgreementMode mode,
                                  const Ontology* ontology = nullptr) {
  if (a.doc_id != b.doc_id) {
    throw Error("agreement", "DocMismatch", "sets annotate '" + a.doc_id + "' and '" + b.doc_id + "'");
  }
  return detail::match(a.mentions, b.mentions, mode, ontology).counts;
}

// Greedy one-to-one matching; precision treats b as the compared side and
// recall treats a as the reference.
inline PRF pairwise_agreement(const AnnotationSet& a, const AnnotationSet& b, AgreementMode mode,
                              const Ontology* ontology = nullptr) {
  return agreement_prf(pairwise_counts(a, b, mode, ontology));
}

// Micro-averages every annotator pair across doubly annotated documents.
inline AgreementReport agreement_report(const Corpus& corpus, AgreementMode mode, const Ontology* ontology = nullptr) {
  AgreementReport report;
  report.mode = mode;
  std::map<std::pair<std::string, std::string>, PairAgreement> pairs;
  for (const auto& d : corpus) {
    std::vector<const AnnotationSet*> sets;
    for (const auto& s : d.annotations) sets.push_back(&s);
    std::sort(sets.begin(), sets.end(),
              [](const AnnotationSet* x, const AnnotationSet* y) { return x->annotator_id < y->annotator_id; });
    for (std::size_t i = 0; i < sets.size(); ++i) {
      for (std::size_t j = i + 1; j < sets.size(); ++j) {
        AnnotationSet a = *sets[i], b = *sets[j];
        a.doc_id = b.doc_id = d.doc.id;
        const auto m = detail::match(a.mentions, b.mentions, mode, ontology);
        auto& pa = pairs[{a.annotator_id, b.annotator_id}];
        pa.annotator_a = a.annotator_id;
        pa.annotator_b = b.annotator_id;
        pa.counts += m.counts;
        ++pa.support;

        // Per-class: mentions counted under every level-1 class of their
        // node; a matched pair is credited to the classes of a's mention.
        for (const auto& x : a.mentions) {
          for (const auto& c : detail::classes_of(ontology, x.node_id)) ++report.per_class_counts[c].a_total;
        }
        for (const auto& y : b.mentions) {
          for (const auto& c : detail::classes_of(ontology, y.node_id)) ++report.per_class_counts[c].b_total;
        }
        for (const auto& [ia, ib] : m.pairs) {
          for (const auto& c : detail::classes_of(ontology, a.mentions[ia].node_id)) {
            ++report.per_class_counts[c].matched;
          }
        }
      }
    }
  }
  if (pairs.empty()) throw Error("agreement", "NoOverlap", "no document has two annotators");
  for (auto& [k, pa] : pairs) {
    pa.scores = agreement_prf(pa.counts);
    pa.modifier_accuracy = pa.counts.exact_matched == 0 ? 0.0
                                                        : static_cast<double>(pa.counts.modifier_agreed) /
                                                              static_cast<double>(pa.counts.exact_matched);
    report.pairs.push_back(pa);
  }
  for (const auto& [c, counts] : report.per_class_counts) report.per_class[c] = agreement_prf(counts).f1;
  return report;
}

inline nlohmann::json to_json(const AgreementReport& r) {
  nlohmann::json pairs = nlohmann::json::array();
  for (const auto& p : r.pairs) {
    pairs.push_back({{"annotator_a", p.annotator_a},
                     {"annotator_b", p.annotator_b},
                     {"precision", p.scores.precision},
                     {"recall", p.scores.recall},
                     {"f1", p.scores.f1},
                     {"support", p.support},
                     {"matched", p.counts.matched},
                     {"a_mentions", p.counts.a_total},
                     {"b_mentions", p.counts.b_total},
                     {"modifier_accuracy", p.modifier_accuracy}});
  }
  return {{"mode", std::string(to_string(r.mode))}, {"pairs", pairs}, {"per_class", r.per_class}};
}

inline std::string format_table(const AgreementReport& r) {
  std::ostringstream os;
  char line[200];
  os << "mode: " << to_string(r.mode) << '\n';
  std::snprintf(line, sizeof line, "%-14s %-14s %7s %7s %7s %7s %9s\n", "annotator_a", "annotator_b", "P", "R", "F1",
                "docs", "mod_acc");
  os << line;
  for (const auto& p : r.pairs) {
    std::snprintf(line, sizeof line, "%-14s %-14s %7.4f %7.4f %7.4f %7zu %9.4f\n", p.annotator_a.c_str(),
                  p.annotator_b.c_str(), p.scores.precision, p.scores.recall, p.scores.f1, p.support,
                  p.modifier_accuracy);
    os << line;
  }
  for (const auto& [c, f1] : r.per_class) {
    std::snprintf(line, sizeof line, "  class %-28s F1 %.4f\n", c.c_str(), f1);
    os << line;
  }
  return os.str();
}

}  // namespace agreement
}  // namespace ehrner
