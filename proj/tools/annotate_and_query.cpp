// Builds a tiny annotated corpus, indexes it, and queries one patient.

#include <iostream>

#include "ehrner/ehrner.hpp"
#include "ehrner/seed_catalog.hpp"

using namespace ehrner;

int main() {
  const auto catalog = ontology::load_catalog(seed_catalog_json);

  Document doc;
  doc.id = "note-1";
  doc.patient_id = "patient-a";
  doc.date = Date::parse("2021-05-02");
  doc.record_type = RecordType::daily_note;
  doc.specialty = "Pneumologia";
  doc.text = "Derrame pleural à direita. Sem febre.";

  AnnotationSet set{doc.id, "annotator-1", {}};
  set = corpus::add_mention(set, {"", {0, 15}, "clinical_findings", {}, ""}, catalog, doc);
  set = corpus::add_mention(set, {"", {8, 15}, "anatomic_structure", {}, ""}, catalog, doc);
  set = corpus::add_mention(set, {"", {31, 36}, "clinical_findings/symptoms_signs", {"negation"}, ""}, catalog, doc);

  try {
    corpus::add_mention(set, {"", {0, 15}, "tests", {"chronic"}, ""}, catalog, doc);
  } catch (const Error& e) {
    std::cout << "rejected: " << e.qualified() << '\n';
  }

  const Corpus corpus{{doc, {set}}};
  const auto idx = index::build_index(corpus, IndexSource::gold);
  for (const auto& c : index::concept_frequencies(idx, "patient-a", &catalog)) {
    std::cout << c.count << "  " << c.node_id << "  \"" << c.label << "\"" << (c.negated ? "  (negated)" : "") << '\n';
  }
  for (const auto& c : index::timeline(idx, "patient-a", "anatomic_structure")) {
    std::cout << c.date.str() << ' ' << c.doc_id << " [" << c.span.start << ',' << c.span.end << ") " << c.surface
              << '\n';
  }
}
