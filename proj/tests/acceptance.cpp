// Acceptance run: one line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>

#include "ehrner/service.hpp"
#include "fixtures.hpp"
#include "forests.hpp"
#include "index_oracle.hpp"
#include "perceptron_reference.hpp"
#include "schema_check.hpp"

using namespace ehrner;
using nlohmann::json;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

// ---- 1: oracle round-trip ----

Outcome oracle_round_trip() {
  std::mt19937_64 rng(1);
  const auto t0 = std::chrono::steady_clock::now();
  const int n = 2000;
  int ok = 0;
  for (int i = 0; i < n; ++i) {
    const auto f = forests::random_forest(rng, 40, 4);
    const auto s = parser::replay(f.tokens, parser::oracle_actions(f.tokens, f.gold));
    ok += s.done && parser::normalize(s.emitted) == parser::normalize(f.gold);
  }
  const double secs = seconds_since(t0);
  return {ok == n && secs < 10.0,
          std::to_string(ok) + "/" + std::to_string(n) + " forests reproduced in " + fmt("%.2f s", secs)};
}

// ---- 2: ontology gate ----

Outcome ontology_gate() {
  const auto& o = fixtures::seed();
  const auto violations = ontology::validate(o);
  std::size_t breaches = 0;
  for (const auto& [id, node] : o.nodes) {
    const auto mods = ontology::applicable_modifiers(o, id);
    breaches += !mods.count("negation");
    const auto anc = ontology::ancestors(o, id);
    const bool intervention = id == "interventions" || anc.count("interventions");
    if (!intervention) {
      for (const auto& m : ontology::intervention_only_modifiers()) breaches += mods.count(m);
    }
    const bool test = id == "tests" || anc.count("tests");
    if (test) breaches += mods.count("chronic");
  }
  return {violations.empty() && breaches == 0,
          std::to_string(violations.size()) + " violations, " + std::to_string(breaches) +
              " modifier applicability breaches over " + std::to_string(o.nodes.size()) + " nodes"};
}

// ---- 3: soundness ----

Outcome soundness() {
  std::mt19937_64 rng(3);
  const std::vector<std::string> labels{"a", "b", "c"};
  std::size_t crossing = 0, stuck = 0;
  for (int i = 0; i < 10000; ++i) {
    auto s = parser::initial_state(1 + uniform_below(rng, 12));
    std::size_t steps = 0;
    while (!s.done && steps < 1000) {
      const auto v = parser::enumerate_valid(s, labels);
      if (v.empty()) break;
      s = parser::apply(std::move(s), v[uniform_below(rng, v.size())]);
      ++steps;
    }
    stuck += !s.done;
    crossing += parser::find_crossing(parser::normalize(s.emitted)).has_value();
  }

  const auto& o = fixtures::seed();
  const auto d = fixtures::doc("d1", std::string(60, 'x'));
  std::vector<std::string> nodes;
  for (const auto& [id, unused] : o.nodes) nodes.push_back(id);
  std::size_t store_crossing = 0;
  for (int iter = 0; iter < 10000; ++iter) {
    AnnotationSet set{d.id, "gold", {}};
    for (int k = 0; k < 8; ++k) {
      const auto st = corpus::bounded(rng, 59);
      const auto en = st + 1 + corpus::bounded(rng, 60 - st);
      try {
        set = corpus::add_mention(set, fixtures::mention(st, en, nodes[corpus::bounded(rng, nodes.size())]), o, d);
      } catch (const Error&) {
      }
    }
    for (std::size_t i = 0; i < set.mentions.size(); ++i) {
      for (std::size_t j = i + 1; j < set.mentions.size(); ++j) {
        store_crossing += spans_cross(set.mentions[i].span, set.mentions[j].span);
      }
    }
  }
  return {crossing == 0 && stuck == 0 && store_crossing == 0,
          "10000 action sequences: " + std::to_string(crossing) + " crossing, " + std::to_string(stuck) +
              " stuck; 10000 store edit runs: " + std::to_string(store_crossing) + " crossing pairs"};
}

// ---- 4: learning benchmark ----

struct Benchmark {
  std::optional<Model> model;
  EvalReport report;
};

Outcome learning(Benchmark& out) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto& o = fixtures::seed();
  auto cfg = synthetic::default_config();
  cfg.sentence_count = 2400;
  cfg.sentences_per_document = 4;
  const auto c = synthetic::generate_synthetic(cfg, 42, o);
  const auto prof = synthetic::profile(c);
  const double nested = static_cast<double>(prof.nested_sentences) / static_cast<double>(prof.sentences);
  const double negated = static_cast<double>(prof.negated_sentences) / static_cast<double>(prof.sentences);

  const auto split = corpus::split_dataset(c, {2000.0 / 2400.0, 200.0 / 2400.0, 200.0 / 2400.0}, 42);
  const auto [m, train_report] = model::train(split.train, split.dev, o, Hyperparams{});
  DocumentMentions gold, pred;
  for (const auto& d : split.test) {
    const auto* set = d.annotations_by("gold");
    gold[d.doc.id] = set ? set->mentions : std::vector<Mention>{};
    pred[d.doc.id] = model::predict_text(m, d.doc.text, o);
  }
  out.report = evaluation::nerc_scores(gold, pred, o);
  out.model = m;
  const double secs = seconds_since(t0);
  const double neg_acc = out.report.modifier_accuracy_by_id.at("negation");
  const auto sizes = split_stats(split);

  std::ostringstream os;
  os << "lexicon " << cfg.lexicon.size() << ", sentences " << sizes[0].sentences << "/" << sizes[1].sentences << "/"
     << sizes[2].sentences << ", nested " << fmt("%.1f%%", 100 * nested) << ", negated "
     << fmt("%.1f%%", 100 * negated) << ", test F1 " << fmt("%.3f", out.report.micro.f1) << ", negation accuracy "
     << fmt("%.3f", neg_acc) << ", best epoch " << train_report.best_epoch << ", " << fmt("%.1f s", secs);
  const bool pass = cfg.lexicon.size() >= 150 && nested >= 0.2 && negated >= 0.1 && out.report.micro.f1 >= 0.9 &&
                    neg_acc >= 0.9 && secs <= 300.0;
  return {pass, os.str()};
}

// ---- 5: depth weighting ----

Outcome depth_weighting(const Benchmark& bench) {
  auto cfg = synthetic::default_config();
  cfg.sentence_count = 50;
  cfg.sentences_per_document = 1;
  const auto data = instances::prepare(synthetic::generate_synthetic(cfg, 11, fixtures::seed()), "gold").instances;
  Hyperparams hp;
  hp.epochs = 3;
  hp.depth_weight_alpha = 0.0;
  hp.averaging = false;
  hp.seed = 5;
  const auto m = model::train_instances(data, {}, fixtures::seed(), hp).first;
  const auto ref = perceptron_reference::reference_perceptron(data, fixtures::seed(), hp.epochs, hp.seed);
  const bool same = !ref.actions.empty() && m.action_weights.entries() == ref.actions &&
                    m.modifier_weights.entries() == ref.modifiers;

  std::ostringstream os;
  os << "alpha 0 on " << data.size() << " sentences " << (same ? "matches" : "differs from")
     << " the plain perceptron bit for bit; by depth at default alpha:";
  for (const auto& [depth, p] : bench.report.by_depth) os << " d" << depth << " F1 " << fmt("%.3f", p.f1);
  return {same && bench.report.by_depth.count(0) && bench.report.by_depth.count(1), os.str()};
}

// ---- 6: index vs linear scan ----

Outcome index_oracle_check() {
  std::mt19937_64 rng(6);
  const auto t = index_oracle::compare_random_queries(rng, 80, 1);
  return {t.queries >= 200 && t.mismatches == 0,
          std::to_string(t.queries) + " queries, " + std::to_string(t.mismatches) + " mismatches"};
}

// ---- 7: split reproducibility ----

Outcome split_reproducible() {
  auto cfg = synthetic::default_config();
  cfg.sentences_per_document = 4;
  cfg.sentence_count = 3000 * cfg.sentences_per_document;
  const auto c = synthetic::generate_synthetic(cfg, 7, fixtures::seed());
  const auto a = corpus::split_dataset(c, {}, 13);
  const auto b = corpus::split_dataset(c, {}, 13);
  auto ids = [](const Corpus& x) {
    std::vector<std::string> v;
    for (const auto& d : x) v.push_back(d.doc.id);
    return v;
  };
  const bool same = ids(a.train) == ids(b.train) && ids(a.dev) == ids(b.dev) && ids(a.test) == ids(b.test);
  const bool sizes = c.size() == 3000 && a.train.size() == 2697 && a.dev.size() == 156 && a.test.size() == 147;
  std::cout << corpus::format_stats_table(split_stats(a));
  return {same && sizes, std::to_string(a.train.size()) + "/" + std::to_string(a.dev.size()) + "/" +
                             std::to_string(a.test.size()) + " documents, " +
                             (same ? "identical" : "different") + " across two runs"};
}

// ---- 8: agreement ----

Outcome agreement_check() {
  using fixtures::mention;
  auto set_of = [](std::string ann, std::vector<Mention> ms) { return AnnotationSet{"D1", std::move(ann), std::move(ms)}; };
  const std::vector<Mention> four{mention(0, 7, "clinical_findings"), mention(8, 15, "anatomic_structure"),
                                  mention(20, 29, "tests"), mention(30, 40, "pathological_conditions/respiratory")};
  auto half = four;
  half[2] = mention(50, 55, "tests");
  half[3] = mention(60, 65, "devices");
  const double same = agreement::pairwise_agreement(set_of("a", four), set_of("b", four), AgreementMode::exact).f1;
  const double h = agreement::pairwise_agreement(set_of("a", four), set_of("b", half), AgreementMode::exact).f1;

  std::mt19937_64 rng(8);
  const std::vector<std::string> nodes{"clinical_findings", "anatomic_structure", "pathological_conditions/respiratory",
                                       "pathological_conditions/infectious"};
  auto random_set = [&](std::string ann) {
    std::vector<Mention> ms;
    const auto n = rng() % 8;
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t s = rng() % 20;
      ms.push_back(mention(s, s + 1 + rng() % 6, nodes[rng() % nodes.size()]));
    }
    return set_of(std::move(ann), std::move(ms));
  };
  int ordered = 0;
  for (int i = 0; i < 100; ++i) {
    const auto a = random_set("a");
    const auto b = random_set("b");
    ordered += agreement::pairwise_agreement(a, b, AgreementMode::exact).f1 <=
               agreement::pairwise_agreement(a, b, AgreementMode::relaxed).f1;
  }
  return {same == 1.0 && h == 0.5 && ordered == 100,
          "identical " + fmt("%.2f", same) + ", half overlap " + fmt("%.2f", h) + ", exact <= relaxed on " +
              std::to_string(ordered) + "/100 random pairs"};
}

// ---- 9: API contract ----

Outcome api_contract(Benchmark& bench) {
  const auto checker = schema::Checker::from_file(std::string(EHRNER_DOCS_DIR) + "/api_schema.json");
  const auto& o = fixtures::seed();
  const std::string note = "Sem alergias alimentares. Hemograma sem alterações. Derrame pleural à direita.";
  Corpus c;
  AnnotatedDocument seeded;
  seeded.doc = fixtures::doc("N1", "esclerodermia e hemograma", "P1", "2019-03-01");
  seeded.annotations.push_back({"N1", "gold", {fixtures::mention(0, 13, "clinical_findings/symptoms_signs", {}, "m1"),
                                               fixtures::mention(16, 25, "tests", {"negation"}, "m2")}});
  for (auto& m : seeded.annotations[0].mentions) m.annotator_id = "gold";
  c.push_back(seeded);
  AnnotatedDocument blank;
  blank.doc = fixtures::doc("S1", note, "P2", "2021-05-05");
  c.push_back(blank);

  Service svc(o, c, bench.model, {"", "gold", ""});
  std::size_t calls = 0;
  std::vector<std::string> problems;
  auto call = [&](std::string method, std::string path, const std::string& route, std::map<std::string, std::string> q,
                  std::string body, int expected) {
    const auto r = svc.handle({method, path, std::move(q), {}, std::move(body)});
    ++calls;
    std::transform(method.begin(), method.end(), method.begin(), ::tolower);
    if (r.status != expected) problems.push_back(path + " gave " + std::to_string(r.status));
    const auto* s = checker.response_schema(route, method, r.status);
    if (!checker.has_response(route, method, r.status)) {
      problems.push_back(route + " " + std::to_string(r.status) + " undocumented");
    } else if (s) {
      for (const auto& e : checker.validate(r.json(), *s)) problems.push_back(route + ": " + e);
    }
    return r;
  };
  auto body = [](std::size_t s, std::size_t e, const std::string& node, std::vector<std::string> mods = {}) {
    return json{{"start", s}, {"end", e}, {"node", node}, {"modifiers", mods}}.dump();
  };
  auto span = [&](const std::string& needle) { return fixtures::find_span(note, needle); };

  call("GET", "/catalog", "/catalog", {}, "", 200);
  call("GET", "/patients/P1/concepts", "/patients/{patient_id}/concepts", {}, "", 200);
  call("GET", "/patients/P1/timeline", "/patients/{patient_id}/timeline", {{"node", "clinical_findings"}, {"descendants", "true"}}, "", 200);
  call("GET", "/patients/P1/texts", "/patients/{patient_id}/texts", {{"nodes", "tests"}, {"mode", "any"}}, "", 200);
  call("GET", "/patients/P1/texts", "/patients/{patient_id}/texts", {{"nodes", ""}}, "", 400);
  call("GET", "/documents/N1", "/documents/{doc_id}", {}, "", 200);
  call("GET", "/documents/none", "/documents/{doc_id}", {}, "", 404);
  const auto outer = span("Derrame pleural");
  call("POST", "/documents/S1/annotations", "/documents/{doc_id}/annotations", {},
       body(outer.start, outer.end, "clinical_findings"), 201);
  call("POST", "/documents/S1/annotations", "/documents/{doc_id}/annotations", {},
       json{{"all_occurrences", true}, {"surface", "Hemograma"}, {"node", "tests"}}.dump(), 201);

  const auto hash = svc.store_hash();
  const auto crossing = span("pleural à direita");
  const auto r1 = call("POST", "/documents/S1/annotations", "/documents/{doc_id}/annotations", {},
                       body(crossing.start, crossing.end, "anatomic_structure"), 422);
  const auto allergy = span("alergias alimentares");
  const auto r2 = call("POST", "/documents/S1/annotations", "/documents/{doc_id}/annotations", {},
                       body(allergy.start, allergy.end, "tests", {"chronic"}), 422);
  const bool codes = r1.status == 422 && r1.json().at("error") == "CrossingSpan" && r2.status == 422 &&
                     r2.json().at("error") == "InapplicableModifier";
  const bool unchanged = svc.store_hash() == hash;

  call("DELETE", "/documents/N1/annotations/m2", "/documents/{doc_id}/annotations/{mention_id}", {}, "", 204);
  call("POST", "/predict", "/predict", {}, R"({"text":"Sem derrame pleural."})", 200);
  call("POST", "/admin/reindex", "/admin/reindex", {}, "", 200);

  // A failed write to disk leaves the store as it was.
  const auto dir = std::filesystem::temp_directory_path() / "ehrner_acceptance";
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  std::ofstream((dir / "blocker").string()) << "x";
  Service blocked(o, c, std::nullopt, {(dir / "blocker" / "corpus.jsonl").string(), "gold", ""});
  const auto blocked_hash = blocked.store_hash();
  const auto io = blocked.handle({"POST", "/documents/S1/annotations", {}, {}, body(outer.start, outer.end, "clinical_findings")});
  const bool io_unchanged = io.status == 500 && blocked.store_hash() == blocked_hash;
  std::filesystem::remove_all(dir);

  std::string detail = std::to_string(calls) + " calls checked against the schema, " +
                       std::to_string(problems.size()) + " problems";
  if (!problems.empty()) detail += " (first: " + problems.front() + ")";
  detail += std::string(", 422 codes ") + (codes ? "ok" : "wrong") + ", store hash " +
            (unchanged && io_unchanged ? "unchanged" : "changed") + " after failed writes";
  return {problems.empty() && codes && unchanged && io_unchanged, detail};
}

}  // namespace

int main() {
  Benchmark bench;
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"transition oracle round-trip", oracle_round_trip},
      {"ontology validation gate", ontology_gate},
      {"non-crossing soundness", soundness},
      {"learning benchmark", [&] { return learning(bench); }},
      {"depth-weighted update", [&] { return depth_weighting(bench); }},
      {"concept index vs linear scan", index_oracle_check},
      {"reproducible split", split_reproducible},
      {"agreement metrics", agreement_check},
      {"API contract", [&] { return api_contract(bench); }},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome r;
    try {
      r = criteria[i].second();
    } catch (const std::exception& e) {
      r = {false, std::string("exception: ") + e.what()};
    }
    failures += !r.pass;
    std::cout << "criterion " << i + 1 << " (" << criteria[i].first << "): " << (r.pass ? "PASS" : "FAIL") << ": "
              << r.detail << std::endl;
  }
  std::cout << (failures ? std::to_string(failures) + " criteria failed" : std::string("all criteria passed"))
            << std::endl;
  return failures ? 1 : 0;
}
