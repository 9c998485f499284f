#pragma once

// Generated from data/synthetic_config.json by tools/embed_data.py. Do not edit by hand.

#include <string_view>

namespace ehrner {

inline constexpr std::string_view default_generator_config_json = R"json({
  "sentence_count": 2400,
  "sentences_per_document": 4,
  "patients": 20,
  "annotator_id": "gold",
  "start_date": "2016-01-01",
  "date_span_days": 1800,
  "specialties": ["Medicina Interna", "Cardiologia", "Pneumologia", "Neurologia", "Oncologia", "Ortopedia", "Ginecologia", "Nefrologia"],
  "auto_nest_categories": ["anatomy"],
  "templates": [
    "Doente com antecedentes de {condition} .",
    "Sem {finding|negation} .",
    "Nega {finding|negation} .",
    "Refere {finding} há {time_dur} .",
    "Medicado com {medication} {time_freq} .",
    "Suspendeu {medication|suspension} .",
    "Iniciou {medication|beginning} {time_gen} .",
    "Realizou {test} que revelou {finding} .",
    "Submetido a {surgery|past} em {time_date} .",
    "Sem {condition|negation} conhecida .",
    "Portador de {device} .",
    "{test} : {result} .",
    "Agravamento de {finding|worsened} .",
    "Provável {condition|probable_possible} .",
    "Mantém {medication|ongoing} .",
    "Sem {allergy|negation} .",
    "Plano : {test|plan} amanhã .",
    "Com {condition|chronic} de longa data .",
    "Antecedentes de {gyn} .",
    "Ao exame objetivo apresenta {finding} e {finding} .",
    "Sem {finding|negation} nem {finding|negation} .",
    "Fez {procedure} durante {time_dur} .",
    "Exame do {anatomy} sem alterações .",
    "Internado por {condition|acute} .",
    "Cumpre {procedure|ongoing} {time_freq} .",
    "Diagnóstico de {condition} em {time_date} ."
  ],
  "lexicon": [
    {"category": "condition", "surface": "insuficiência cardíaca", "node": "pathological_conditions/cardiovascular"},
    {"category": "condition", "surface": "fibrilhação auricular", "node": "pathological_conditions/cardiovascular"},
    {"category": "condition", "surface": "cardiopatia isquémica", "node": "pathological_conditions/cardiovascular"},
    {"category": "condition", "surface": "enfarte agudo do miocárdio", "node": "pathological_conditions/cardiovascular"},
    {"category": "condition", "surface": "estenose aórtica", "node": "pathological_conditions/cardiovascular"},
    {"category": "condition", "surface": "flutter auricular", "node": "pathological_conditions/cardiovascular"},
    {"category": "condition", "surface": "miocardiopatia dilatada", "node": "pathological_conditions/cardiovascular"},
    {"category": "condition", "surface": "trombose venosa profunda", "node": "pathological_conditions/cardiovascular"},
    {"category": "condition", "surface": "hipertensão arterial", "node": "pathological_conditions/cardiovascular/hypertension"},
    {"category": "condition", "surface": "HTA", "node": "pathological_conditions/cardiovascular/hypertension"},
    {"category": "condition", "surface": "asma brônquica", "node": "pathological_conditions/respiratory"},
    {"category": "condition", "surface": "DPOC", "node": "pathological_conditions/respiratory"},
    {"category": "condition", "surface": "bronquiectasias", "node": "pathological_conditions/respiratory"},
    {"category": "condition", "surface": "fibrose pulmonar", "node": "pathological_conditions/respiratory"},
    {"category": "condition", "surface": "insuficiência respiratória", "node": "pathological_conditions/respiratory"},
    {"category": "condition", "surface": "apneia do sono", "node": "pathological_conditions/respiratory"},
    {"category": "condition", "surface": "cancro do pulmão", "node": "pathological_conditions/oncological/lung_cancer"},
    {"category": "condition", "surface": "adenocarcinoma do pulmão", "node": "pathological_conditions/oncological/lung_cancer"},
    {"category": "condition", "surface": "carcinoma pulmonar", "node": "pathological_conditions/oncological/lung_cancer"},
    {"category": "condition", "surface": "pneumonia", "node": "pathological_conditions/infectious/pneumonia"},
    {"category": "condition", "surface": "broncopneumonia", "node": "pathological_conditions/infectious/pneumonia"},
    {"category": "condition", "surface": "epilepsia", "node": "pathological_conditions/neurological"},
    {"category": "condition", "surface": "doença de Parkinson", "node": "pathological_conditions/neurological"},
    {"category": "condition", "surface": "AVC isquémico", "node": "pathological_conditions/neurological"},
    {"category": "condition", "surface": "esclerose múltipla", "node": "pathological_conditions/neurological"},
    {"category": "condition", "surface": "demência", "node": "pathological_conditions/neurological"},
    {"category": "condition", "surface": "enxaqueca", "node": "pathological_conditions/neurological"},
    {"category": "condition", "surface": "neuropatia periférica", "node": "pathological_conditions/neurological"},
    {"category": "condition", "surface": "cancro da mama", "node": "pathological_conditions/oncological"},
    {"category": "condition", "surface": "linfoma", "node": "pathological_conditions/oncological"},
    {"category": "condition", "surface": "leucemia mieloide", "node": "pathological_conditions/oncological"},
    {"category": "condition", "surface": "carcinoma do cólon", "node": "pathological_conditions/oncological"},
    {"category": "condition", "surface": "melanoma", "node": "pathological_conditions/oncological"},
    {"category": "condition", "surface": "mieloma múltiplo", "node": "pathological_conditions/oncological"},
    {"category": "condition", "surface": "tuberculose", "node": "pathological_conditions/infectious"},
    {"category": "condition", "surface": "infeção urinária", "node": "pathological_conditions/infectious"},
    {"category": "condition", "surface": "hepatite C", "node": "pathological_conditions/infectious"},
    {"category": "condition", "surface": "VIH", "node": "pathological_conditions/infectious"},
    {"category": "condition", "surface": "sépsis", "node": "pathological_conditions/infectious"},
    {"category": "condition", "surface": "celulite", "node": "pathological_conditions/infectious"},
    {"category": "condition", "surface": "artrose do joelho", "node": "pathological_conditions/degenerative/osteoarthritis"},
    {"category": "condition", "surface": "osteoartrose", "node": "pathological_conditions/degenerative/osteoarthritis"},
    {"category": "condition", "surface": "doença degenerativa discal", "node": "pathological_conditions/degenerative"},
    {"category": "condition", "surface": "osteoporose", "node": "pathological_conditions/degenerative"},
    {"category": "condition", "surface": "esclerodermia", "node": "pathological_conditions"},
    {"category": "condition", "surface": "lúpus eritematoso sistémico", "node": "pathological_conditions"},
    {"category": "condition", "surface": "diabetes mellitus tipo 2", "node": "pathological_conditions"},
    {"category": "condition", "surface": "dislipidemia", "node": "pathological_conditions"},
    {"category": "condition", "surface": "obesidade", "node": "pathological_conditions"},
    {"category": "condition", "surface": "hipotiroidismo", "node": "pathological_conditions"},
    {"category": "condition", "surface": "doença renal crónica", "node": "pathological_conditions"},
    {"category": "condition", "surface": "gota", "node": "pathological_conditions"},
    {"category": "allergy", "surface": "alergias alimentares", "node": "pathological_conditions"},
    {"category": "allergy", "surface": "alergias medicamentosas", "node": "pathological_conditions"},
    {"category": "allergy", "surface": "alergia à penicilina", "node": "pathological_conditions"},
    {"category": "finding", "surface": "derrame pleural", "node": "clinical_findings"},
    {"category": "finding", "surface": "dor torácica", "node": "clinical_findings/symptoms_signs"},
    {"category": "finding", "surface": "dor abdominal", "node": "clinical_findings/symptoms_signs"},
    {"category": "finding", "surface": "febre", "node": "clinical_findings/symptoms_signs"},
    {"category": "finding", "surface": "tosse", "node": "clinical_findings/symptoms_signs"},
    {"category": "finding", "surface": "dispneia", "node": "clinical_findings/symptoms_signs"},
    {"category": "finding", "surface": "cefaleia", "node": "clinical_findings/symptoms_signs"},
    {"category": "finding", "surface": "náuseas", "node": "clinical_findings/symptoms_signs"},
    {"category": "finding", "surface": "vómitos", "node": "clinical_findings/symptoms_signs"},
    {"category": "finding", "surface": "edema dos membros inferiores", "node": "clinical_findings/symptoms_signs"},
    {"category": "finding", "surface": "astenia", "node": "clinical_findings/symptoms_signs"},
    {"category": "finding", "surface": "perda ponderal", "node": "clinical_findings/symptoms_signs"},
    {"category": "finding", "surface": "icterícia", "node": "clinical_findings/symptoms_signs"},
    {"category": "finding", "surface": "hemoptises", "node": "clinical_findings/symptoms_signs"},
    {"category": "finding", "surface": "palpitações", "node": "clinical_findings/symptoms_signs"},
    {"category": "finding", "surface": "tonturas", "node": "clinical_findings/symptoms_signs"},
    {"category": "finding", "surface": "dor lombar", "node": "clinical_findings/symptoms_signs"},
    {"category": "finding", "surface": "sudorese noturna", "node": "clinical_findings/symptoms_signs"},
    {"category": "finding", "surface": "diarreia", "node": "clinical_findings/symptoms_signs"},
    {"category": "finding", "surface": "obstipação", "node": "clinical_findings/symptoms_signs"},
    {"category": "finding", "surface": "prurido", "node": "clinical_findings/symptoms_signs"},
    {"category": "finding", "surface": "lesão cutânea", "node": "clinical_findings/symptoms_signs"},
    {"category": "finding", "surface": "adenopatias cervicais", "node": "clinical_findings/symptoms_signs"},
    {"category": "finding", "surface": "dor no joelho", "node": "clinical_findings/symptoms_signs"},
    {"category": "finding", "surface": "dor na anca", "node": "clinical_findings/symptoms_signs"},
    {"category": "finding", "surface": "edema do tornozelo", "node": "clinical_findings/symptoms_signs"},
    {"category": "finding", "surface": "fratura do fémur", "node": "clinical_findings"},
    {"category": "finding", "surface": "sopro sistólico", "node": "clinical_findings/symptoms_signs"},
    {"category": "finding", "surface": "crepitações bibasais", "node": "clinical_findings/symptoms_signs"},
    {"category": "finding", "surface": "hepatomegalia", "node": "clinical_findings/symptoms_signs"},
    {"category": "finding", "surface": "derrame pericárdico", "node": "clinical_findings"},
    {"category": "finding", "surface": "nódulo da tiroide", "node": "clinical_findings"},
    {"category": "finding", "surface": "dor no ombro", "node": "clinical_findings/symptoms_signs"},
    {"category": "finding", "surface": "edema pulmonar", "node": "clinical_findings"},
    {"category": "finding", "surface": "nódulo pulmonar", "node": "clinical_findings"},
    {"category": "finding", "surface": "massa abdominal", "node": "clinical_findings"},
    {"category": "finding", "surface": "dor no tórax", "node": "clinical_findings/symptoms_signs"},
    {"category": "finding", "surface": "hemorragia cerebral", "node": "clinical_findings"},
    {"category": "anatomy", "surface": "pleural", "node": "anatomic_structure"},
    {"category": "anatomy", "surface": "torácica", "node": "anatomic_structure"},
    {"category": "anatomy", "surface": "abdominal", "node": "anatomic_structure"},
    {"category": "anatomy", "surface": "membros inferiores", "node": "anatomic_structure"},
    {"category": "anatomy", "surface": "pulmão", "node": "anatomic_structure"},
    {"category": "anatomy", "surface": "pulmonar", "node": "anatomic_structure"},
    {"category": "anatomy", "surface": "mama", "node": "anatomic_structure"},
    {"category": "anatomy", "surface": "cólon", "node": "anatomic_structure"},
    {"category": "anatomy", "surface": "joelho", "node": "anatomic_structure"},
    {"category": "anatomy", "surface": "anca", "node": "anatomic_structure"},
    {"category": "anatomy", "surface": "tornozelo", "node": "anatomic_structure"},
    {"category": "anatomy", "surface": "fémur", "node": "anatomic_structure"},
    {"category": "anatomy", "surface": "tórax", "node": "anatomic_structure"},
    {"category": "anatomy", "surface": "cerebral", "node": "anatomic_structure"},
    {"category": "anatomy", "surface": "cardíaca", "node": "anatomic_structure"},
    {"category": "anatomy", "surface": "renal", "node": "anatomic_structure"},
    {"category": "anatomy", "surface": "lombar", "node": "anatomic_structure"},
    {"category": "anatomy", "surface": "miocárdio", "node": "anatomic_structure"},
    {"category": "anatomy", "surface": "aórtica", "node": "anatomic_structure"},
    {"category": "anatomy", "surface": "coronário", "node": "anatomic_structure"},
    {"category": "anatomy", "surface": "inguinal", "node": "anatomic_structure"},
    {"category": "anatomy", "surface": "cervicais", "node": "anatomic_structure"},
    {"category": "anatomy", "surface": "pericárdico", "node": "anatomic_structure"},
    {"category": "anatomy", "surface": "tiroide", "node": "anatomic_structure"},
    {"category": "anatomy", "surface": "fígado", "node": "anatomic_structure"},
    {"category": "anatomy", "surface": "abdómen", "node": "anatomic_structure"},
    {"category": "anatomy", "surface": "ombro", "node": "anatomic_structure"},
    {"category": "anatomy", "surface": "coração", "node": "anatomic_structure"},
    {"category": "medication", "surface": "paracetamol", "node": "interventions/medication"},
    {"category": "medication", "surface": "ibuprofeno", "node": "interventions/medication"},
    {"category": "medication", "surface": "metformina", "node": "interventions/medication"},
    {"category": "medication", "surface": "insulina", "node": "interventions/medication"},
    {"category": "medication", "surface": "omeprazol", "node": "interventions/medication"},
    {"category": "medication", "surface": "sinvastatina", "node": "interventions/medication"},
    {"category": "medication", "surface": "atorvastatina", "node": "interventions/medication"},
    {"category": "medication", "surface": "amlodipina", "node": "interventions/medication"},
    {"category": "medication", "surface": "furosemida", "node": "interventions/medication"},
    {"category": "medication", "surface": "bisoprolol", "node": "interventions/medication"},
    {"category": "medication", "surface": "ramipril", "node": "interventions/medication"},
    {"category": "medication", "surface": "levotiroxina", "node": "interventions/medication"},
    {"category": "medication", "surface": "salbutamol", "node": "interventions/medication"},
    {"category": "medication", "surface": "amoxicilina", "node": "interventions/medication"},
    {"category": "medication", "surface": "ceftriaxone", "node": "interventions/medication"},
    {"category": "medication", "surface": "prednisolona", "node": "interventions/medication"},
    {"category": "medication", "surface": "tramadol", "node": "interventions/medication"},
    {"category": "medication", "surface": "sertralina", "node": "interventions/medication"},
    {"category": "medication", "surface": "alprazolam", "node": "interventions/medication"},
    {"category": "medication", "surface": "ácido acetilsalicílico", "node": "interventions/medication"},
    {"category": "medication", "surface": "varfarina", "node": "interventions/medication/anticoagulants"},
    {"category": "medication", "surface": "apixabano", "node": "interventions/medication/anticoagulants"},
    {"category": "medication", "surface": "rivaroxabano", "node": "interventions/medication/anticoagulants"},
    {"category": "medication", "surface": "enoxaparina", "node": "interventions/medication/anticoagulants"},
    {"category": "surgery", "surface": "colecistectomia", "node": "interventions/surgeries"},
    {"category": "surgery", "surface": "apendicectomia", "node": "interventions/surgeries"},
    {"category": "surgery", "surface": "artroplastia da anca", "node": "interventions/surgeries"},
    {"category": "surgery", "surface": "mastectomia", "node": "interventions/surgeries"},
    {"category": "surgery", "surface": "cirurgia cardíaca", "node": "interventions/surgeries"},
    {"category": "surgery", "surface": "histerectomia", "node": "interventions/surgeries"},
    {"category": "surgery", "surface": "bypass coronário", "node": "interventions/surgeries"},
    {"category": "surgery", "surface": "tiroidectomia", "node": "interventions/surgeries"},
    {"category": "surgery", "surface": "lobectomia pulmonar", "node": "interventions/surgeries"},
    {"category": "surgery", "surface": "hernioplastia inguinal", "node": "interventions/surgeries"},
    {"category": "procedure", "surface": "quimioterapia", "node": "interventions/chemotherapy"},
    {"category": "procedure", "surface": "quimioterapia adjuvante", "node": "interventions/chemotherapy"},
    {"category": "procedure", "surface": "radioterapia", "node": "interventions/radiotherapy"},
    {"category": "procedure", "surface": "radioterapia torácica", "node": "interventions/radiotherapy"},
    {"category": "procedure", "surface": "fisioterapia", "node": "interventions/physiotherapy"},
    {"category": "procedure", "surface": "reabilitação motora", "node": "interventions/physiotherapy"},
    {"category": "procedure", "surface": "ventilação não invasiva", "node": "interventions/ventilatory_support"},
    {"category": "procedure", "surface": "oxigenoterapia", "node": "interventions/ventilatory_support"},
    {"category": "procedure", "surface": "ventilação mecânica", "node": "interventions/ventilatory_support"},
    {"category": "procedure", "surface": "hemodiálise", "node": "interventions/renal_replacement_therapy"},
    {"category": "procedure", "surface": "diálise peritoneal", "node": "interventions/renal_replacement_therapy"},
    {"category": "procedure", "surface": "terapêutica de substituição renal", "node": "interventions/renal_replacement_therapy"},
    {"category": "test", "surface": "radiografia do tórax", "node": "tests"},
    {"category": "test", "surface": "TAC cerebral", "node": "tests"},
    {"category": "test", "surface": "ecografia abdominal", "node": "tests"},
    {"category": "test", "surface": "ecocardiograma", "node": "tests"},
    {"category": "test", "surface": "eletrocardiograma", "node": "tests"},
    {"category": "test", "surface": "hemograma", "node": "tests"},
    {"category": "test", "surface": "colesterol total", "node": "tests"},
    {"category": "test", "surface": "ressonância magnética", "node": "tests"},
    {"category": "test", "surface": "colonoscopia", "node": "tests"},
    {"category": "test", "surface": "endoscopia digestiva alta", "node": "tests"},
    {"category": "test", "surface": "espirometria", "node": "tests"},
    {"category": "test", "surface": "gasimetria arterial", "node": "tests"},
    {"category": "test", "surface": "ionograma", "node": "tests"},
    {"category": "test", "surface": "biópsia", "node": "tests"},
    {"category": "test", "surface": "cintigrafia óssea", "node": "tests"},
    {"category": "result", "surface": "hemoglobina baixa", "node": "clinical_findings/test_results"},
    {"category": "result", "surface": "leucocitose", "node": "clinical_findings/test_results"},
    {"category": "result", "surface": "neutropenia ligeira", "node": "clinical_findings/test_results"},
    {"category": "result", "surface": "monocitose", "node": "clinical_findings/test_results"},
    {"category": "result", "surface": "PCR elevada", "node": "clinical_findings/test_results"},
    {"category": "result", "surface": "creatinina elevada", "node": "clinical_findings/test_results"},
    {"category": "result", "surface": "hiponatremia", "node": "clinical_findings/test_results"},
    {"category": "result", "surface": "hipercaliemia", "node": "clinical_findings/test_results"},
    {"category": "result", "surface": "anemia microcítica", "node": "clinical_findings/test_results"},
    {"category": "result", "surface": "trombocitopenia", "node": "clinical_findings/test_results"},
    {"category": "result", "surface": "transaminases normais", "node": "clinical_findings/test_results"},
    {"category": "result", "surface": "glicemia elevada", "node": "clinical_findings/test_results"},
    {"category": "device", "surface": "pacemaker", "node": "devices"},
    {"category": "device", "surface": "cateter venoso central", "node": "devices"},
    {"category": "device", "surface": "algália", "node": "devices"},
    {"category": "device", "surface": "prótese da anca", "node": "devices"},
    {"category": "device", "surface": "stent coronário", "node": "devices"},
    {"category": "device", "surface": "CDI", "node": "devices"},
    {"category": "device", "surface": "sonda nasogástrica", "node": "devices"},
    {"category": "gyn", "surface": "duas gestações", "node": "gyn_obstetric_history"},
    {"category": "gyn", "surface": "menopausa", "node": "gyn_obstetric_history"},
    {"category": "gyn", "surface": "parto por cesariana", "node": "gyn_obstetric_history"},
    {"category": "gyn", "surface": "aborto espontâneo", "node": "gyn_obstetric_history"},
    {"category": "gyn", "surface": "G2P2", "node": "gyn_obstetric_history"},
    {"category": "time_freq", "surface": "diariamente", "node": "time/frequency"},
    {"category": "time_freq", "surface": "duas vezes por dia", "node": "time/frequency"},
    {"category": "time_freq", "surface": "três vezes por semana", "node": "time/frequency"},
    {"category": "time_freq", "surface": "de 8 em 8 horas", "node": "time/frequency"},
    {"category": "time_freq", "surface": "semanalmente", "node": "time/frequency"},
    {"category": "time_freq", "surface": "ao deitar", "node": "time/frequency"},
    {"category": "time_dur", "surface": "3 dias", "node": "time/duration"},
    {"category": "time_dur", "surface": "duas semanas", "node": "time/duration"},
    {"category": "time_dur", "surface": "vários meses", "node": "time/duration"},
    {"category": "time_dur", "surface": "5 anos", "node": "time/duration"},
    {"category": "time_dur", "surface": "uma semana", "node": "time/duration"},
    {"category": "time_dur", "surface": "10 dias", "node": "time/duration"},
    {"category": "time_date", "surface": "março de 2019", "node": "time/date"},
    {"category": "time_date", "surface": "janeiro de 2020", "node": "time/date"},
    {"category": "time_date", "surface": "2015", "node": "time/date"},
    {"category": "time_date", "surface": "outubro de 2018", "node": "time/date"},
    {"category": "time_date", "surface": "junho de 2021", "node": "time/date"},
    {"category": "time_gen", "surface": "recentemente", "node": "time/general_temporal"},
    {"category": "time_gen", "surface": "ontem", "node": "time/general_temporal"},
    {"category": "time_gen", "surface": "hoje", "node": "time/general_temporal"},
    {"category": "time_gen", "surface": "na semana passada", "node": "time/general_temporal"},
    {"category": "time_gen", "surface": "esta manhã", "node": "time/general_temporal"}
  ]
}
)json";

}  // namespace ehrner
