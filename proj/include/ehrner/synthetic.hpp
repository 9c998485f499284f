#pragma once

#include <algorithm>
#include <chrono>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "ehrner/corpus.hpp"
#include "ehrner/ontology.hpp"
#include "ehrner/synthetic_config.hpp"
#include "ehrner/text.hpp"

namespace ehrner {

struct NestedSpec {
  std::string surface;
  std::string node_id;
};

struct LexiconEntry {
  std::string category;
  std::string surface;
  std::string node_id;
  std::vector<NestedSpec> nested;
};

// Template slots are written {category} or {category|modifier|modifier...};
// everything else is literal text, tokens separated by single spaces.
struct GeneratorConfig {
  std::vector<std::string> templates;
  std::vector<LexiconEntry> lexicon;
  std::size_t sentence_count = 0;
  std::size_t sentences_per_document = 4;
  std::size_t patients = 20;
  std::string annotator_id = "gold";
  Date start_date{2016, 1, 1};
  std::size_t date_span_days = 1800;
  std::vector<std::string> specialties;
  // Entries in these categories are annotated wherever their surface occurs
  // token-aligned inside another inserted entry.
  std::vector<std::string> auto_nest_categories;
};

namespace synthetic {

inline GeneratorConfig parse_config(std::string_view json_text) {
  GeneratorConfig c;
  try {
    const auto j = nlohmann::json::parse(json_text);
    c.templates = j.at("templates").get<std::vector<std::string>>();
    for (const auto& e : j.at("lexicon")) {
      LexiconEntry le{e.at("category").get<std::string>(), e.at("surface").get<std::string>(),
                      e.at("node").get<std::string>(), {}};
      if (e.contains("nested")) {
        for (const auto& n : e.at("nested")) le.nested.push_back({n.at("surface"), n.at("node")});
      }
      c.lexicon.push_back(std::move(le));
    }
    c.sentence_count = j.at("sentence_count").get<std::size_t>();
    c.sentences_per_document = j.value("sentences_per_document", c.sentences_per_document);
    c.patients = j.value("patients", c.patients);
    c.annotator_id = j.value("annotator_id", c.annotator_id);
    if (j.contains("start_date")) c.start_date = Date::parse(j.at("start_date").get<std::string>());
    c.date_span_days = j.value("date_span_days", c.date_span_days);
    c.specialties = j.value("specialties", std::vector<std::string>{});
    c.auto_nest_categories = j.value("auto_nest_categories", std::vector<std::string>{});
  } catch (const nlohmann::json::exception& e) {
    throw Error("synthetic", "BadConfig", std::string("generator config: ") + e.what());
  } catch (const Error& e) {
    throw Error("synthetic", "BadConfig", e.what());
  }
  return c;
}

inline GeneratorConfig default_config() { return parse_config(default_generator_config_json); }

namespace detail {

struct Slot {
  std::string category;
  std::set<std::string> modifiers;
};

struct Piece {
  bool is_slot = false;
  std::string literal;
  Slot slot;
};

inline std::vector<Piece> parse_template(const std::string& t) {
  std::vector<Piece> out;
  std::size_t i = 0;
  while (i < t.size()) {
    auto open = t.find('{', i);
    if (open == std::string::npos) {
      out.push_back({false, t.substr(i), {}});
      break;
    }
    if (open > i) out.push_back({false, t.substr(i, open - i), {}});
    auto close = t.find('}', open);
    if (close == std::string::npos) throw Error("synthetic", "BadConfig", "unclosed slot in template '" + t + "'");
    auto parts = text::split(t.substr(open + 1, close - open - 1), '|');
    if (parts.empty() || parts[0].empty()) throw Error("synthetic", "BadConfig", "empty slot in template '" + t + "'");
    Piece p{true, {}, {parts[0], {}}};
    for (std::size_t k = 1; k < parts.size(); ++k) p.slot.modifiers.insert(parts[k]);
    out.push_back(std::move(p));
    i = close + 1;
  }
  return out;
}

// Token-aligned occurrences of `needle` inside `hay` (both code points).
inline std::vector<std::size_t> aligned_occurrences(const std::u32string& hay, const std::u32string& needle) {
  std::vector<std::size_t> out;
  if (needle.empty()) return out;
  for (std::size_t pos = hay.find(needle); pos != std::u32string::npos; pos = hay.find(needle, pos + 1)) {
    const bool left = pos == 0 || text::is_space(hay[pos - 1]);
    const std::size_t end = pos + needle.size();
    const bool right = end == hay.size() || text::is_space(hay[end]);
    if (left && right) out.push_back(pos);
  }
  return out;
}

struct Compiled {
  std::vector<std::vector<Piece>> templates;
  // (category, modifier set) -> eligible lexicon indices
  std::map<std::pair<std::string, std::set<std::string>>, std::vector<std::size_t>> pools;
  std::vector<std::size_t> auto_nest;
};

inline Compiled compile(const GeneratorConfig& config, const Ontology& ontology) {
  if (config.templates.empty()) throw Error("synthetic", "BadConfig", "no templates");
  if (config.sentences_per_document == 0) throw Error("synthetic", "BadConfig", "sentences_per_document is 0");
  if (config.patients == 0) throw Error("synthetic", "BadConfig", "patients is 0");
  for (const auto& e : config.lexicon) {
    if (!ontology.contains(e.node_id)) {
      throw Error("synthetic", "BadConfig", "lexicon entry '" + e.surface + "' names unknown node '" + e.node_id + "'");
    }
    if (text::trim(e.surface).empty()) throw Error("synthetic", "BadConfig", "empty lexicon surface");
    const auto s = text::decode_utf8(e.surface);
    for (const auto& n : e.nested) {
      if (!ontology.contains(n.node_id)) {
        throw Error("synthetic", "BadConfig", "nested span names unknown node '" + n.node_id + "'");
      }
      if (aligned_occurrences(s, text::decode_utf8(n.surface)).empty()) {
        throw Error("synthetic", "BadConfig", "nested '" + n.surface + "' not found in '" + e.surface + "'");
      }
    }
  }
  Compiled c;
  for (const auto& t : config.templates) c.templates.push_back(parse_template(t));
  for (const auto& pieces : c.templates) {
    for (const auto& p : pieces) {
      if (!p.is_slot) continue;
      auto key = std::make_pair(p.slot.category, p.slot.modifiers);
      if (c.pools.count(key)) continue;
      auto& pool = c.pools[key];
      for (std::size_t i = 0; i < config.lexicon.size(); ++i) {
        const auto& e = config.lexicon[i];
        if (e.category != p.slot.category) continue;
        const auto& mods = ontology.node(e.node_id).modifier_ids;
        if (std::all_of(p.slot.modifiers.begin(), p.slot.modifiers.end(),
                        [&](const std::string& m) { return mods.count(m) > 0; })) {
          pool.push_back(i);
        }
      }
      if (pool.empty()) {
        throw Error("synthetic", "BadConfig", "no lexicon entry fits slot '" + p.slot.category + "'");
      }
    }
  }
  for (std::size_t i = 0; i < config.lexicon.size(); ++i) {
    const auto& cat = config.lexicon[i].category;
    if (std::find(config.auto_nest_categories.begin(), config.auto_nest_categories.end(), cat) !=
        config.auto_nest_categories.end()) {
      c.auto_nest.push_back(i);
    }
  }
  // Longer surfaces first so that inner matches nest inside outer ones.
  std::stable_sort(c.auto_nest.begin(), c.auto_nest.end(), [&](std::size_t a, std::size_t b) {
    return text::char_length(config.lexicon[a].surface) > text::char_length(config.lexicon[b].surface);
  });
  return c;
}

struct PendingMention {
  Span span;
  std::string node_id;
  std::set<std::string> modifiers;
};

inline void add_if_fits(std::vector<PendingMention>& out, PendingMention m) {
  for (const auto& o : out) {
    if (spans_cross(o.span, m.span)) return;
    if (o.span == m.span && o.node_id == m.node_id) return;
  }
  out.push_back(std::move(m));
}

}  // namespace detail

// Generates config.sentence_count sentences grouped into documents of
// config.sentences_per_document sentences (the last may be shorter).
inline Corpus generate_synthetic(const GeneratorConfig& config, std::uint64_t seed, const Ontology& ontology) {
  const auto compiled = detail::compile(config, ontology);
  std::mt19937_64 rng(seed);
  auto pick = [&](std::size_t n) { return static_cast<std::size_t>(corpus::bounded(rng, n)); };

  Corpus out;
  std::size_t produced = 0;
  const auto base = std::chrono::sys_days(config.start_date.ymd());
  while (produced < config.sentence_count) {
    AnnotatedDocument ad;
    Document& doc = ad.doc;
    doc.id = "D" + std::to_string(100000 + out.size()).substr(1);
    doc.patient_id = "P" + std::to_string(1000 + pick(config.patients)).substr(1);
    doc.date = Date::from_days(base + std::chrono::days(
                                          static_cast<long>(pick(std::max<std::size_t>(config.date_span_days, 1)))));
    doc.record_type = all_record_types[pick(all_record_types.size())];
    doc.specialty = config.specialties.empty() ? "general" : config.specialties[pick(config.specialties.size())];

    std::u32string text_cp;
    std::vector<detail::PendingMention> pending;
    const std::size_t n = std::min(config.sentences_per_document, config.sentence_count - produced);
    for (std::size_t s = 0; s < n; ++s) {
      if (s > 0) text_cp.push_back(U'\n');
      const auto& pieces = compiled.templates[pick(compiled.templates.size())];
      for (const auto& p : pieces) {
        if (!p.is_slot) {
          text_cp += text::decode_utf8(p.literal);
          continue;
        }
        const auto& pool = compiled.pools.at({p.slot.category, p.slot.modifiers});
        const auto& entry = config.lexicon[pool[pick(pool.size())]];
        const auto surface = text::decode_utf8(entry.surface);
        const std::size_t start = text_cp.size();
        text_cp += surface;
        detail::add_if_fits(pending, {{start, start + surface.size()}, entry.node_id, p.slot.modifiers});
        for (const auto& nested : entry.nested) {
          const auto ns = text::decode_utf8(nested.surface);
          for (auto pos : detail::aligned_occurrences(surface, ns)) {
            detail::add_if_fits(pending, {{start + pos, start + pos + ns.size()}, nested.node_id, {}});
          }
        }
        for (auto idx : compiled.auto_nest) {
          const auto& inner = config.lexicon[idx];
          const auto ns = text::decode_utf8(inner.surface);
          for (auto pos : detail::aligned_occurrences(surface, ns)) {
            if (pos == 0 && ns.size() == surface.size() && inner.node_id == entry.node_id) continue;
            detail::add_if_fits(pending, {{start + pos, start + pos + ns.size()}, inner.node_id, {}});
          }
        }
      }
      ++produced;
    }
    doc.text = text::encode_utf8(text_cp);

    std::stable_sort(pending.begin(), pending.end(), [](const auto& a, const auto& b) {
      return std::make_tuple(a.span.start, b.span.end, a.node_id) <
             std::make_tuple(b.span.start, a.span.end, b.node_id);
    });
    AnnotationSet set{doc.id, config.annotator_id, {}};
    for (auto& m : pending) {
      Mention mention{"", m.span, m.node_id, m.modifiers, config.annotator_id};
      set = corpus::add_mention(std::move(set), std::move(mention), ontology, doc);
    }
    ad.annotations.push_back(std::move(set));
    out.push_back(std::move(ad));
  }
  return out;
}

struct CorpusProfile {
  std::size_t sentences = 0;
  std::size_t nested_sentences = 0;   // containing a mention inside another mention
  std::size_t negated_sentences = 0;  // containing a mention with the negation modifier
  std::size_t mentions = 0;
};

inline CorpusProfile profile(const Corpus& c) {
  CorpusProfile p;
  for (const auto& d : c) {
    const auto tok = tokenize(d.doc.text);
    const AnnotationSet* set = d.annotations.empty() ? nullptr : &d.annotations.front();
    for (const auto& [b, e] : tok.sentences) {
      ++p.sentences;
      if (!set || b == e) continue;
      const Span range{tok.tokens[b].span.start, tok.tokens[e - 1].span.end};
      std::vector<const Mention*> in;
      for (const auto& m : set->mentions) {
        if (range.contains(m.span)) in.push_back(&m);
      }
      p.mentions += in.size();
      bool nested = false, negated = false;
      for (const auto* x : in) {
        if (x->modifier_ids.count("negation")) negated = true;
        for (const auto* y : in) {
          if (x != y && x->span != y->span && x->span.contains(y->span)) nested = true;
        }
      }
      p.nested_sentences += nested;
      p.negated_sentences += negated;
    }
  }
  return p;
}

}  // namespace synthetic
}  // namespace ehrner
