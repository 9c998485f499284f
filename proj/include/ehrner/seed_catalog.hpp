#pragma once

// Generated from data/seed_catalog.json by tools/embed_data.py. Do not edit by hand.

#include <string_view>

namespace ehrner {

inline constexpr std::string_view seed_catalog_json = R"json({
  "version": "seed-1.0",
  "modifiers": [
    {"id": "negation", "label": "Negação", "scope": "universal"},
    {"id": "plan", "label": "Plano", "scope": ["interventions", "tests"]},
    {"id": "acute", "label": "Agudo", "scope": ["pathological_conditions", "clinical_findings"]},
    {"id": "chronic", "label": "Crónico", "scope": ["pathological_conditions", "clinical_findings", "interventions"]},
    {"id": "worsened", "label": "Agravado", "scope": ["pathological_conditions", "clinical_findings"]},
    {"id": "probable_possible", "label": "Provável/possível", "scope": ["pathological_conditions", "clinical_findings"]},
    {"id": "normal", "label": "Normal", "scope": ["clinical_findings", "tests"]},
    {"id": "augmented", "label": "Aumentado", "scope": ["clinical_findings", "tests"]},
    {"id": "diminished", "label": "Diminuído", "scope": ["clinical_findings", "tests"]},
    {"id": "beginning", "label": "Início", "scope": ["interventions"]},
    {"id": "suspension", "label": "Suspensão", "scope": ["interventions"]},
    {"id": "ongoing", "label": "Em curso", "scope": ["interventions"]},
    {"id": "past", "label": "Passado", "scope": ["interventions"]}
  ],
  "nodes": [
    {"id": "pathological_conditions", "label": "Condições patológicas", "level": 1, "parents": []},
    {"id": "pathological_conditions/cardiovascular", "label": "Cardiovascular", "level": 2, "parents": ["pathological_conditions"]},
    {"id": "pathological_conditions/respiratory", "label": "Respiratória", "level": 2, "parents": ["pathological_conditions"]},
    {"id": "pathological_conditions/neurological", "label": "Neurológica", "level": 2, "parents": ["pathological_conditions"]},
    {"id": "pathological_conditions/oncological", "label": "Oncológica", "level": 2, "parents": ["pathological_conditions"]},
    {"id": "pathological_conditions/infectious", "label": "Infeciosa", "level": 2, "parents": ["pathological_conditions"]},
    {"id": "pathological_conditions/degenerative", "label": "Degenerativa", "level": 2, "parents": ["pathological_conditions"]},
    {"id": "pathological_conditions/oncological/lung_cancer", "label": "Cancro do pulmão", "level": 3, "parents": ["pathological_conditions/oncological", "pathological_conditions/respiratory"]},
    {"id": "pathological_conditions/infectious/pneumonia", "label": "Pneumonia", "level": 3, "parents": ["pathological_conditions/infectious", "pathological_conditions/respiratory"]},
    {"id": "pathological_conditions/cardiovascular/hypertension", "label": "Hipertensão arterial", "level": 3, "parents": ["pathological_conditions/cardiovascular"]},
    {"id": "pathological_conditions/degenerative/osteoarthritis", "label": "Osteoartrose", "level": 3, "parents": ["pathological_conditions/degenerative"]},
    {"id": "devices", "label": "Dispositivos", "level": 1, "parents": []},
    {"id": "interventions", "label": "Intervenções", "level": 1, "parents": []},
    {"id": "interventions/surgeries", "label": "Cirurgias", "level": 2, "parents": ["interventions"]},
    {"id": "interventions/medication", "label": "Medicação", "level": 2, "parents": ["interventions"]},
    {"id": "interventions/chemotherapy", "label": "Quimioterapia", "level": 2, "parents": ["interventions"]},
    {"id": "interventions/radiotherapy", "label": "Radioterapia", "level": 2, "parents": ["interventions"]},
    {"id": "interventions/physiotherapy", "label": "Fisioterapia", "level": 2, "parents": ["interventions"]},
    {"id": "interventions/ventilatory_support", "label": "Suporte ventilatório", "level": 2, "parents": ["interventions"]},
    {"id": "interventions/renal_replacement_therapy", "label": "Terapêutica de substituição renal", "level": 2, "parents": ["interventions"]},
    {"id": "interventions/medication/anticoagulants", "label": "Anticoagulantes", "level": 3, "parents": ["interventions/medication"]},
    {"id": "clinical_findings", "label": "Achados clínicos", "level": 1, "parents": []},
    {"id": "clinical_findings/symptoms_signs", "label": "Sintomas/sinais", "level": 2, "parents": ["clinical_findings"]},
    {"id": "clinical_findings/test_results", "label": "Resultados de exames", "level": 2, "parents": ["clinical_findings"]},
    {"id": "anatomic_structure", "label": "Estrutura anatómica", "level": 1, "parents": []},
    {"id": "gyn_obstetric_history", "label": "Antecedentes ginecológicos/obstétricos", "level": 1, "parents": []},
    {"id": "tests", "label": "Exames", "level": 1, "parents": []},
    {"id": "time", "label": "Tempo", "level": 1, "parents": []},
    {"id": "time/frequency", "label": "Frequência", "level": 2, "parents": ["time"]},
    {"id": "time/duration", "label": "Duração", "level": 2, "parents": ["time"]},
    {"id": "time/date", "label": "Data", "level": 2, "parents": ["time"]},
    {"id": "time/general_temporal", "label": "Temporal geral", "level": 2, "parents": ["time"]}
  ]
}
)json";

}  // namespace ehrner
