#pragma once

#include <string>
#include <vector>

#include "ehrner/ehrner.hpp"
#include "ehrner/seed_catalog.hpp"

namespace fixtures {

inline const ehrner::Ontology& seed() {
  static const ehrner::Ontology o = ehrner::ontology::load_catalog(ehrner::seed_catalog_json);
  return o;
}

inline ehrner::Document doc(std::string id, std::string text, std::string patient = "P01",
                            std::string date = "2020-01-01") {
  ehrner::Document d;
  d.id = std::move(id);
  d.patient_id = std::move(patient);
  d.date = ehrner::Date::parse(date);
  d.record_type = ehrner::RecordType::daily_note;
  d.specialty = "Medicina Interna";
  d.text = std::move(text);
  return d;
}

inline ehrner::Mention mention(std::size_t s, std::size_t e, std::string node, std::set<std::string> mods = {},
                               std::string id = "") {
  ehrner::Mention m;
  m.id = std::move(id);
  m.span = {s, e};
  m.node_id = std::move(node);
  m.modifier_ids = std::move(mods);
  return m;
}

// Character span of the first occurrence of `needle` in `text`.
inline ehrner::Span find_span(const std::string& text, const std::string& needle, std::size_t from_char = 0) {
  const auto hay = ehrner::text::decode_utf8(text);
  const auto n = ehrner::text::decode_utf8(needle);
  const auto pos = hay.find(n, from_char);
  return {pos, pos + n.size()};
}

}  // namespace fixtures
