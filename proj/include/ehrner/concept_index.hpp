#pragma once

#include <algorithm>
#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include <json.hpp>

#include "ehrner/corpus.hpp"
#include "ehrner/model.hpp"
#include "ehrner/ontology.hpp"

namespace ehrner {

struct Citation {
  std::string patient_id;
  std::string doc_id;
  Date date;
  RecordType record_type = RecordType::daily_note;
  std::string specialty;
  Span span;
  std::string node_id;
  std::set<std::string> modifier_ids;
  std::string surface;  // covered text, for display

  bool negated() const { return modifier_ids.count("negation") > 0; }

  bool operator==(const Citation&) const = default;
};

// Chronological citation order used by postings and timelines.
inline bool citation_less(const Citation& a, const Citation& b) {
  return std::tie(a.date, a.doc_id, a.span.start, a.span.end, a.node_id) <
         std::tie(b.date, b.doc_id, b.span.start, b.span.end, b.node_id);
}

struct DocumentInfo {
  std::string patient_id;
  Date date;
  RecordType record_type = RecordType::daily_note;
  std::string specialty;

  bool operator==(const DocumentInfo&) const = default;
};

enum class IndexSource { gold, predicted };

inline std::string_view to_string(IndexSource s) { return s == IndexSource::gold ? "gold" : "predicted"; }

inline IndexSource parse_index_source(std::string_view s) {
  if (s == "gold") return IndexSource::gold;
  if (s == "predicted") return IndexSource::predicted;
  throw Error("index", "BadSource", "index source must be 'gold' or 'predicted'");
}

struct ConceptIndex {
  IndexSource source = IndexSource::gold;
  std::map<std::pair<std::string, std::string>, std::vector<Citation>> postings;  // (patient, node)
  std::map<std::string, std::set<std::string>> doc_concepts;
  std::map<std::string, DocumentInfo> documents;

  std::size_t citation_count() const {
    std::size_t n = 0;
    for (const auto& [k, v] : postings) n += v.size();
    return n;
  }

  bool operator==(const ConceptIndex&) const = default;
};

struct ConceptCount {
  std::string node_id;
  std::string label;       // most frequent surface form for this patient
  std::string node_label;  // catalog label, when a catalog is supplied
  std::size_t count = 0;
  std::size_t negated = 0;

  bool operator==(const ConceptCount&) const = default;
};

enum class MatchMode { any, all };

inline MatchMode parse_match_mode(std::string_view s) {
  if (s == "any") return MatchMode::any;
  if (s == "all") return MatchMode::all;
  throw Error("index", "BadMode", "mode must be 'any' or 'all'");
}

struct TextsResult {
  std::size_t count = 0;
  std::vector<std::string> doc_ids;

  bool operator==(const TextsResult&) const = default;
};

namespace index {

struct BuildOptions {
  std::string canonical_annotator;  // gold source; empty = first set per document
  const Model* model = nullptr;     // predicted source
  const Ontology* ontology = nullptr;
};

inline void add_document(ConceptIndex& idx, const Document& d, const std::vector<Mention>& mentions) {
  if (d.patient_id.empty() || d.specialty.empty()) {
    throw Error("index", "MissingMetadata", "document '" + d.id + "' lacks patient or specialty");
  }
  idx.documents[d.id] = {d.patient_id, d.date, d.record_type, d.specialty};
  auto& concepts = idx.doc_concepts[d.id];
  const auto cps = text::decode_utf8(d.text);
  for (const auto& m : mentions) {
    Citation c{d.patient_id, d.id, d.date, d.record_type, d.specialty, m.span, m.node_id, m.modifier_ids, {}};
    if (m.span.end <= cps.size() && m.span.start < m.span.end) {
      c.surface = text::encode_utf8(std::u32string_view(cps).substr(m.span.start, m.span.length()));
    }
    idx.postings[{d.patient_id, m.node_id}].push_back(std::move(c));
    concepts.insert(m.node_id);
  }
}

inline void finalize(ConceptIndex& idx) {
  for (auto& [k, list] : idx.postings) {
    std::sort(list.begin(), list.end(), citation_less);
    list.erase(std::unique(list.begin(), list.end()), list.end());
  }
}

inline ConceptIndex build_index(const Corpus& corpus, IndexSource source, const BuildOptions& opts = {}) {
  ConceptIndex idx;
  idx.source = source;
  if (source == IndexSource::predicted && (!opts.model || !opts.ontology)) {
    throw Error("index", "NoModel", "a predicted index needs a model and a catalog");
  }
  for (const auto& d : corpus) {
    if (source == IndexSource::gold) {
      const AnnotationSet* set = opts.canonical_annotator.empty()
                                     ? (d.annotations.empty() ? nullptr : &d.annotations.front())
                                     : d.annotations_by(opts.canonical_annotator);
      add_document(idx, d.doc, set ? set->mentions : std::vector<Mention>{});
    } else {
      add_document(idx, d.doc, model::predict_text(*opts.model, d.doc.text, *opts.ontology));
    }
  }
  finalize(idx);
  return idx;
}

inline std::set<std::string> widen(const std::set<std::string>& nodes, const Ontology* ontology) {
  if (!ontology) throw Error("index", "NoCatalog", "descendant widening needs a catalog");
  std::set<std::string> out = nodes;
  for (const auto& n : nodes) {
    if (!ontology->contains(n)) continue;
    auto d = ontology::descendants(*ontology, n);
    out.insert(d.begin(), d.end());
  }
  return out;
}

// Citation counts per concept for one patient, largest first, ties by id.
inline std::vector<ConceptCount> concept_frequencies(const ConceptIndex& idx, const std::string& patient_id,
                                                     const Ontology* ontology = nullptr) {
  std::vector<ConceptCount> out;
  for (auto it = idx.postings.lower_bound({patient_id, ""}); it != idx.postings.end() && it->first.first == patient_id;
       ++it) {
    ConceptCount c;
    c.node_id = it->first.second;
    c.count = it->second.size();
    std::map<std::string, std::size_t> surfaces;
    for (const auto& cit : it->second) {
      ++surfaces[cit.surface];
      if (cit.negated()) ++c.negated;
    }
    std::size_t best = 0;
    for (const auto& [s, n] : surfaces) {
      if (n > best) {
        best = n;
        c.label = s;
      }
    }
    if (ontology && ontology->contains(c.node_id)) c.node_label = ontology->node(c.node_id).label;
    out.push_back(std::move(c));
  }
  std::stable_sort(out.begin(), out.end(), [](const ConceptCount& a, const ConceptCount& b) {
    return a.count != b.count ? a.count > b.count : a.node_id < b.node_id;
  });
  return out;
}

inline std::vector<Citation> timeline(const ConceptIndex& idx, const std::string& patient_id, const std::string& node_id,
                                      bool include_descendants = false, const Ontology* ontology = nullptr) {
  std::set<std::string> nodes{node_id};
  if (include_descendants) nodes = widen(nodes, ontology);
  std::vector<Citation> out;
  for (const auto& n : nodes) {
    auto it = idx.postings.find({patient_id, n});
    if (it != idx.postings.end()) out.insert(out.end(), it->second.begin(), it->second.end());
  }
  std::sort(out.begin(), out.end(), citation_less);
  return out;
}

inline TextsResult texts_with_concepts(const ConceptIndex& idx, const std::string& patient_id,
                                       const std::set<std::string>& node_ids, MatchMode mode,
                                       bool include_descendants = false, const Ontology* ontology = nullptr) {
  if (node_ids.empty()) throw Error("index", "EmptyQuery", "at least one concept is required");
  std::vector<std::pair<Date, std::string>> hits;
  for (const auto& [doc_id, info] : idx.documents) {
    if (info.patient_id != patient_id) continue;
    auto cit = idx.doc_concepts.find(doc_id);
    const std::set<std::string> empty;
    const auto& concepts = cit == idx.doc_concepts.end() ? empty : cit->second;
    auto has = [&](const std::string& n) {
      if (concepts.count(n)) return true;
      if (!include_descendants) return false;
      for (const auto& d : widen({n}, ontology)) {
        if (concepts.count(d)) return true;
      }
      return false;
    };
    bool match = mode == MatchMode::all;
    for (const auto& n : node_ids) {
      if (mode == MatchMode::any && has(n)) {
        match = true;
        break;
      }
      if (mode == MatchMode::all && !has(n)) {
        match = false;
        break;
      }
    }
    if (match) hits.emplace_back(info.date, doc_id);
  }
  std::sort(hits.begin(), hits.end());
  TextsResult r;
  for (auto& h : hits) r.doc_ids.push_back(std::move(h.second));
  r.count = r.doc_ids.size();
  return r;
}

// ---- persistence ----
//
//   ehrner-index<TAB>1
//   {"source": ..., "documents": N, "citations": M}
//   D ["doc_id","patient","YYYY-MM-DD","record_type","specialty"]     sorted by doc id
//   C ["patient","node","doc_id","YYYY-MM-DD","record_type","specialty",start,end,[modifiers],"surface"]
//     sorted by (patient, node), then chronologically
//   end

inline void save_index(const ConceptIndex& idx, std::ostream& out) {
  using nlohmann::json;
  out << "ehrner-index\t1\n";
  out << json{{"source", std::string(to_string(idx.source))},
              {"documents", idx.documents.size()},
              {"citations", idx.citation_count()}}
             .dump()
      << '\n';
  for (const auto& [id, d] : idx.documents) {
    out << "D " << json::array({id, d.patient_id, d.date.str(), std::string(to_string(d.record_type)), d.specialty}).dump()
        << '\n';
  }
  for (const auto& [key, list] : idx.postings) {
    for (const auto& c : list) {
      json mods = std::vector<std::string>(c.modifier_ids.begin(), c.modifier_ids.end());
      out << "C "
          << json::array({c.patient_id, c.node_id, c.doc_id, c.date.str(), std::string(to_string(c.record_type)),
                          c.specialty, c.span.start, c.span.end, mods, c.surface})
                 .dump()
          << '\n';
    }
  }
  out << "end\n";
}

inline ConceptIndex load_index(std::istream& in) {
  using nlohmann::json;
  auto fail = [](const std::string& what) { return Error("index", "FormatError", "index file: " + what); };
  std::string line;
  if (!std::getline(in, line) || line != "ehrner-index\t1") throw fail("bad header");
  if (!std::getline(in, line)) throw fail("missing summary");
  ConceptIndex idx;
  std::size_t want_docs = 0, want_cits = 0;
  try {
    auto summary = json::parse(line);
    idx.source = parse_index_source(summary.at("source").get<std::string>());
    want_docs = summary.at("documents").get<std::size_t>();
    want_cits = summary.at("citations").get<std::size_t>();
    bool ended = false;
    while (std::getline(in, line)) {
      if (line == "end") {
        ended = true;
        break;
      }
      if (line.size() < 3 || line[1] != ' ') throw fail("bad record");
      auto rec = json::parse(line.substr(2));
      if (line[0] == 'D') {
        idx.documents[rec.at(0).get<std::string>()] = {rec.at(1).get<std::string>(),
                                                       Date::parse(rec.at(2).get<std::string>()),
                                                       parse_record_type(rec.at(3).get<std::string>()),
                                                       rec.at(4).get<std::string>()};
        idx.doc_concepts[rec.at(0).get<std::string>()];
      } else if (line[0] == 'C') {
        Citation c;
        c.patient_id = rec.at(0).get<std::string>();
        c.node_id = rec.at(1).get<std::string>();
        c.doc_id = rec.at(2).get<std::string>();
        c.date = Date::parse(rec.at(3).get<std::string>());
        c.record_type = parse_record_type(rec.at(4).get<std::string>());
        c.specialty = rec.at(5).get<std::string>();
        c.span = {rec.at(6).get<std::size_t>(), rec.at(7).get<std::size_t>()};
        for (const auto& m : rec.at(8)) c.modifier_ids.insert(m.get<std::string>());
        c.surface = rec.at(9).get<std::string>();
        idx.doc_concepts[c.doc_id].insert(c.node_id);
        idx.postings[{c.patient_id, c.node_id}].push_back(std::move(c));
      } else {
        throw fail("unknown record type");
      }
    }
    if (!ended) throw fail("truncated (no end marker)");
  } catch (const json::exception& e) {
    throw fail(e.what());
  }
  if (idx.documents.size() != want_docs || idx.citation_count() != want_cits) throw fail("record counts disagree");
  finalize(idx);
  return idx;
}

inline std::string serialize_index(const ConceptIndex& idx) {
  std::ostringstream os;
  save_index(idx, os);
  return os.str();
}

inline ConceptIndex parse_index(std::string_view bytes) {
  std::istringstream in{std::string(bytes)};
  return load_index(in);
}

inline nlohmann::json to_json(const Citation& c) {
  return {{"patient_id", c.patient_id},
          {"doc_id", c.doc_id},
          {"date", c.date.str()},
          {"record_type", std::string(to_string(c.record_type))},
          {"specialty", c.specialty},
          {"start", c.span.start},
          {"end", c.span.end},
          {"node_id", c.node_id},
          {"modifiers", std::vector<std::string>(c.modifier_ids.begin(), c.modifier_ids.end())},
          {"negated", c.negated()},
          {"surface", c.surface}};
}

inline nlohmann::json to_json(const ConceptCount& c) {
  return {{"node_id", c.node_id},
          {"label", c.label},
          {"node_label", c.node_label},
          {"count", c.count},
          {"negated", c.negated}};
}

}  // namespace index
}  // namespace ehrner
