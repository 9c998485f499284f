// ehrner command-line front end.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "ehrner/ehrner.hpp"
#include "ehrner/seed_catalog.hpp"
#include "ehrner/service.hpp"
#include "ehrner/service_http.hpp"

using namespace ehrner;
using nlohmann::json;

namespace {

struct Flags {
  std::string catalog;
  std::string corpus;
  std::string dev;
  std::string model;
  std::string out;
  std::string config;
  std::string ratios = "0.899,0.052,0.049";
  std::string mode;
  std::string annotator;
  std::string input;
  std::string index_path;
  std::string patient;
  std::string node;
  std::string nodes;
  std::string query_kind = "concepts";
  std::string source = "gold";
  std::string host = "127.0.0.1";
  std::string token;
  std::uint64_t seed = 1;
  int epochs = 5;
  int beam = 1;
  int port = 8080;
  double alpha = 0.5;
  std::size_t sentences = 0;
  std::size_t documents = 0;
  std::size_t per_doc = 0;
  bool no_averaging = false;
  bool descendants = false;
  bool as_json = false;
  bool trace = false;
};

Ontology load_ontology(const Flags& f) {
  if (f.catalog.empty()) return ontology::load_catalog(seed_catalog_json);
  return ontology::load_catalog(read_file(f.catalog, "cli"));
}

Corpus load_corpus(const std::string& path) {
  if (path.empty()) throw Error("cli", "MissingFlag", "--corpus is required");
  return corpus::parse_corpus(read_file(path, "cli"));
}

void write_text(const std::string& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cli", "IoError", "cannot write '" + path + "'");
  out << bytes;
}

Model load_model_file(const Flags& f, const Ontology& o) {
  if (f.model.empty()) throw Error("cli", "MissingFlag", "--model is required");
  auto m = model::load_model(read_file(f.model, "cli"), {o.version, false});
  return m;
}

void print_json(const json& j) { std::cout << j.dump(2) << '\n'; }

int cmd_validate(const Flags& f) {
  std::vector<Violation> violations;
  std::string version;
  try {
    auto o = load_ontology(f);
    version = o.version;
    violations = ontology::validate(o);
  } catch (const ontology::ValidationError& e) {
    violations = e.violations();
  }
  if (f.as_json) {
    json v = json::array();
    for (const auto& x : violations) v.push_back({{"subject", x.subject}, {"rule", x.rule}, {"detail", x.detail}});
    print_json({{"version", version}, {"violations", v}});
  } else {
    for (const auto& x : violations) std::cout << x.subject << ": " << x.rule << " (" << x.detail << ")\n";
    std::cout << violations.size() << " violations\n";
  }
  return violations.empty() ? 0 : 1;
}

int cmd_gen(const Flags& f) {
  const auto o = load_ontology(f);
  auto cfg = f.config.empty() ? synthetic::default_config() : synthetic::parse_config(read_file(f.config, "cli"));
  if (f.per_doc) cfg.sentences_per_document = f.per_doc;
  if (f.sentences) cfg.sentence_count = f.sentences;
  if (f.documents) cfg.sentence_count = f.documents * cfg.sentences_per_document;
  const auto c = synthetic::generate_synthetic(cfg, f.seed, o);
  if (f.out.empty()) throw Error("cli", "MissingFlag", "--out is required");
  write_text(f.out, corpus::serialize_corpus(c));
  const auto p = synthetic::profile(c);
  std::size_t findings = 0;
  for (const auto& d : c) findings += audit::pseudonymization_audit(d.doc, audit::default_rules()).size();
  if (f.as_json) {
    print_json({{"seed", f.seed},
                {"documents", c.size()},
                {"sentences", p.sentences},
                {"mentions", p.mentions},
                {"nested_sentences", p.nested_sentences},
                {"negated_sentences", p.negated_sentences},
                {"audit_findings", findings}});
  } else {
    std::cout << "# seed " << f.seed << '\n'
              << "documents " << c.size() << "\nsentences " << p.sentences << "\nmentions " << p.mentions
              << "\nnested sentences " << p.nested_sentences << "\nnegated sentences " << p.negated_sentences
              << "\naudit findings " << findings << '\n';
  }
  return 0;
}

corpus::SplitRatios parse_ratios(const std::string& s) {
  const auto parts = text::split(s, ',');
  double v[3];
  if (parts.size() != 3) throw Error("corpus", "BadRatios", "--ratios needs three comma-separated values");
  for (int i = 0; i < 3; ++i) {
    if (!text::parse_double(text::trim(parts[i]), v[i])) {
      throw Error("corpus", "BadRatios", "not a number: '" + parts[i] + "'");
    }
  }
  return {v[0], v[1], v[2]};
}

int cmd_split(const Flags& f) {
  auto split = corpus::split_dataset(load_corpus(f.corpus), parse_ratios(f.ratios), f.seed);
  if (!f.out.empty()) {
    std::filesystem::create_directories(f.out);
    write_text(f.out + "/train.jsonl", corpus::serialize_corpus(split.train));
    write_text(f.out + "/dev.jsonl", corpus::serialize_corpus(split.dev));
    write_text(f.out + "/test.jsonl", corpus::serialize_corpus(split.test));
  }
  const auto stats = corpus::split_stats(split);
  if (f.as_json) {
    json rows = json::array();
    for (const auto& s : stats) {
      rows.push_back(json{{"set", s.name}, {"documents", s.documents}, {"sentences", s.sentences}, {"vocabulary", s.vocabulary}});
    }
    print_json({{"seed", f.seed}, {"splits", rows}});
  } else {
    std::cout << "# seed " << f.seed << '\n' << corpus::format_stats_table(stats);
  }
  return 0;
}

int cmd_train(const Flags& f) {
  const auto o = load_ontology(f);
  const auto train_c = load_corpus(f.corpus);
  const Corpus dev_c = f.dev.empty() ? Corpus{} : load_corpus(f.dev);
  Hyperparams hp;
  hp.epochs = f.epochs;
  hp.beam_width = f.beam;
  hp.depth_weight_alpha = f.alpha;
  hp.seed = f.seed;
  hp.averaging = !f.no_averaging;
  model::TrainOptions opts;
  opts.annotator = f.annotator;
  json epochs = json::array();
  if (!f.as_json) std::cout << "# seed " << f.seed << '\n';
  opts.on_epoch = [&](const EpochReport& e) {
    epochs.push_back({{"epoch", e.epoch}, {"dev_f1", e.dev_f1}, {"updates", e.updates}});
    if (!f.as_json) {
      std::printf("epoch %d  dev F1 %.4f  updates %zu\n", e.epoch, e.dev_f1, e.updates);
      std::fflush(stdout);
    }
  };
  auto [m, report] = model::train(train_c, dev_c, o, hp, opts);
  if (f.model.empty()) throw Error("cli", "MissingFlag", "--model is required");
  write_text(f.model, model::save_model(m));
  if (report.warnings) std::cerr << "warning: " << report.warnings << " gold mentions adjusted or dropped while preparing data\n";
  if (f.as_json) {
    print_json({{"seed", f.seed}, {"epochs", epochs}, {"best_epoch", report.best_epoch}, {"warnings", report.warnings}});
  } else {
    std::cout << "best epoch " << report.best_epoch << "\nmodel written to " << f.model << '\n';
  }
  return 0;
}

int cmd_evaluate(const Flags& f) {
  const auto o = load_ontology(f);
  auto m = load_model_file(f, o);
  if (f.beam > 0) m.hyperparams.beam_width = f.beam;
  DocumentMentions gold, pred;
  for (const auto& d : load_corpus(f.corpus)) {
    const AnnotationSet* set = f.annotator.empty() ? (d.annotations.empty() ? nullptr : &d.annotations.front())
                                                   : d.annotations_by(f.annotator);
    gold[d.doc.id] = set ? set->mentions : std::vector<Mention>{};
    pred[d.doc.id] = model::predict_text(m, d.doc.text, o);
  }
  const auto r = evaluation::nerc_scores(gold, pred, o);
  if (f.as_json) {
    print_json(evaluation::to_json(r));
  } else {
    std::cout << evaluation::format_table(r);
  }
  return 0;
}

int cmd_agreement(const Flags& f) {
  const auto o = load_ontology(f);
  const auto r = agreement::agreement_report(load_corpus(f.corpus), parse_agreement_mode(f.mode.empty() ? "exact" : f.mode), &o);
  if (f.as_json) {
    print_json(agreement::to_json(r));
  } else {
    std::cout << agreement::format_table(r);
  }
  return 0;
}

int cmd_index(const Flags& f) {
  const auto o = load_ontology(f);
  index::BuildOptions bo;
  bo.canonical_annotator = f.annotator;
  bo.ontology = &o;
  std::optional<Model> m;
  const auto source = parse_index_source(f.source);
  if (source == IndexSource::predicted) {
    m = load_model_file(f, o);
    bo.model = &*m;
  }
  const auto idx = index::build_index(load_corpus(f.corpus), source, bo);
  if (f.out.empty()) throw Error("cli", "MissingFlag", "--out is required");
  write_text(f.out, index::serialize_index(idx));
  if (f.as_json) {
    print_json({{"source", f.source}, {"documents", idx.documents.size()}, {"citations", idx.citation_count()}});
  } else {
    std::cout << "indexed " << idx.documents.size() << " documents, " << idx.citation_count() << " citations\n";
  }
  return 0;
}

int cmd_query(const Flags& f) {
  const auto o = load_ontology(f);
  if (f.index_path.empty()) throw Error("cli", "MissingFlag", "--index is required");
  const auto idx = index::parse_index(read_file(f.index_path, "cli"));
  json out;
  std::ostringstream table;
  if (f.query_kind == "concepts") {
    out = json::array();
    for (const auto& c : index::concept_frequencies(idx, f.patient, &o)) {
      out.push_back(index::to_json(c));
      table << c.count << '\t' << c.node_id << '\t' << c.label << (c.negated ? "\t(negated " + std::to_string(c.negated) + ")" : "") << '\n';
    }
  } else if (f.query_kind == "timeline") {
    if (f.node.empty()) throw Error("index", "EmptyQuery", "--node is required for a timeline");
    out = json::array();
    for (const auto& c : index::timeline(idx, f.patient, f.node, f.descendants, &o)) {
      out.push_back(index::to_json(c));
      table << c.date.str() << '\t' << to_string(c.record_type) << '\t' << c.specialty << '\t' << c.doc_id << " ["
            << c.span.start << ',' << c.span.end << ")\t" << c.surface << (c.negated() ? "\t(negated)" : "") << '\n';
    }
  } else if (f.query_kind == "texts") {
    std::set<std::string> nodes;
    for (auto& n : text::split(f.nodes, ',')) {
      if (auto t = text::trim(n); !t.empty()) nodes.insert(t);
    }
    const auto r = index::texts_with_concepts(idx, f.patient, nodes, parse_match_mode(f.mode.empty() ? "any" : f.mode),
                                              f.descendants, &o);
    out = {{"count", r.count}, {"doc_ids", r.doc_ids}};
    table << r.count << " texts\n";
    for (const auto& d : r.doc_ids) table << d << '\n';
  } else {
    throw Error("cli", "BadFlag", "--kind must be concepts, timeline or texts");
  }
  if (f.as_json) {
    print_json(out);
  } else {
    std::cout << table.str();
  }
  return 0;
}

int cmd_serve(const Flags& f) {
  ServiceConfig c;
  c.host = f.host;
  c.port = f.port;
  c.corpus_path = f.corpus;
  c.catalog_path = f.catalog;
  c.model_path = f.model;
  if (!f.annotator.empty()) c.canonical_annotator = f.annotator;
  c.auth_token = f.token;
  if (c.corpus_path.empty()) throw Error("cli", "MissingFlag", "--corpus is required");
  std::optional<Service> svc;
  if (c.catalog_path.empty()) {
    const auto o = load_ontology(f);
    std::optional<Model> m;
    if (!f.model.empty()) m = load_model_file(f, o);
    svc.emplace(o, load_corpus(f.corpus), std::move(m), Service::Options{c.corpus_path, c.canonical_annotator, c.auth_token});
  } else {
    svc.emplace(Service::from_config(c));
  }
  std::cout << "listening on " << c.host << ':' << c.port << std::endl;
  return serve(*svc, c.host, c.port) ? 0 : 1;
}

int cmd_predict(const Flags& f) {
  const auto o = load_ontology(f);
  auto m = load_model_file(f, o);
  if (f.beam > 0) m.hyperparams.beam_width = f.beam;
  if (f.input.empty()) throw Error("cli", "MissingFlag", "--input is required");
  const auto txt = read_file(f.input, "cli");
  const auto mentions = model::predict_text(m, txt, o);
  const auto cps = text::decode_utf8(txt);
  if (f.trace) {
    // one line per sentence: the decoded action sequence
    Document doc;
    doc.text = txt;
    PreparedCorpus prepared;
    instances::prepare_document(doc, nullptr, prepared);
    for (const auto& inst : prepared.instances) {
      if (inst.tokens.empty()) continue;
      const auto r = model::decode_beam(m, model::TokenView(inst.tokens), m.hyperparams.beam_width);
      std::cerr << "trace: " << format_actions(r.actions) << '\n';
    }
  }
  std::ostringstream os;
  if (f.as_json) {
    json arr = json::array();
    for (const auto& x : mentions) {
      auto j = corpus::to_json(x);
      j["text"] = text::encode_utf8(std::u32string_view(cps).substr(x.span.start, x.span.length()));
      arr.push_back(j);
    }
    os << json{{"mentions", arr}}.dump(2) << '\n';
  } else {
    // brat-style standoff: T lines for mentions, A lines for modifiers
    std::size_t attr = 0;
    for (std::size_t i = 0; i < mentions.size(); ++i) {
      const auto& x = mentions[i];
      os << 'T' << i + 1 << '\t' << x.node_id << ' ' << x.span.start << ' ' << x.span.end << '\t'
         << text::encode_utf8(std::u32string_view(cps).substr(x.span.start, x.span.length())) << '\n';
      for (const auto& mod : x.modifier_ids) os << 'A' << ++attr << '\t' << mod << " T" << i + 1 << '\n';
    }
  }
  if (f.out.empty()) {
    std::cout << os.str();
  } else {
    write_text(f.out, os.str());
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Nested clinical named-entity recognition: annotation corpus, parser training, concept index"};
  app.require_subcommand(1);
  Flags f;

  auto catalog = [&](CLI::App* s) {
    s->add_option("--catalog", f.catalog, "Ontology catalog JSON (default: built-in seed catalog)");
  };
  auto json_flag = [&](CLI::App* s) { s->add_flag("--json", f.as_json, "Machine-readable JSON output"); };

  auto* validate = app.add_subcommand("validate-ontology", "Check a catalog and print its violations");
  catalog(validate);
  json_flag(validate);

  auto* gen = app.add_subcommand("gen-synthetic", "Generate a synthetic annotated corpus");
  catalog(gen);
  gen->add_option("--config", f.config, "Generator config JSON (default: built-in config)");
  gen->add_option("--seed", f.seed, "PRNG seed");
  gen->add_option("--sentences", f.sentences, "Override the sentence count");
  gen->add_option("--documents", f.documents, "Generate this many documents");
  gen->add_option("--per-doc", f.per_doc, "Sentences per document");
  gen->add_option("--out", f.out, "Output corpus file (JSON lines)")->required();
  json_flag(gen);

  auto* split = app.add_subcommand("split", "Split a corpus into train/dev/test by document");
  split->add_option("--corpus", f.corpus, "Input corpus file")->required();
  split->add_option("--ratios", f.ratios, "train,dev,test ratios summing to 1");
  split->add_option("--seed", f.seed, "PRNG seed");
  split->add_option("--out", f.out, "Output directory for train/dev/test.jsonl");
  json_flag(split);

  auto* train = app.add_subcommand("train", "Train a nested NER model");
  catalog(train);
  train->add_option("--corpus", f.corpus, "Training corpus file")->required();
  train->add_option("--dev", f.dev, "Development corpus file for model selection");
  train->add_option("--model", f.model, "Output model file")->required();
  train->add_option("--seed", f.seed, "PRNG seed for instance shuffling");
  train->add_option("--epochs", f.epochs, "Training epochs");
  train->add_option("--beam", f.beam, "Beam width used for decoding");
  train->add_option("--alpha", f.alpha, "Depth weight alpha (0 disables depth weighting)");
  train->add_flag("--no-averaging", f.no_averaging, "Use the last weights instead of averaged weights");
  train->add_option("--annotator", f.annotator, "Gold annotator id (default: first set per document)");
  json_flag(train);

  auto* evaluate = app.add_subcommand("evaluate", "Score a model against a gold corpus");
  catalog(evaluate);
  evaluate->add_option("--corpus", f.corpus, "Gold corpus file")->required();
  evaluate->add_option("--model", f.model, "Model file")->required();
  evaluate->add_option("--beam", f.beam, "Override the beam width");
  evaluate->add_option("--annotator", f.annotator, "Gold annotator id (default: first set per document)");
  json_flag(evaluate);

  auto* agree = app.add_subcommand("agreement", "Inter-annotator agreement on doubly annotated documents");
  catalog(agree);
  agree->add_option("--corpus", f.corpus, "Corpus with two or more annotation sets per document")->required();
  agree->add_option("--mode", f.mode, "exact, relaxed or class_only")->check(CLI::IsMember({"exact", "relaxed", "class_only"}));
  json_flag(agree);

  auto* idx = app.add_subcommand("index", "Build and save a patient concept index");
  catalog(idx);
  idx->add_option("--corpus", f.corpus, "Corpus file")->required();
  idx->add_option("--source", f.source, "gold or predicted")->check(CLI::IsMember({"gold", "predicted"}));
  idx->add_option("--model", f.model, "Model file (predicted source)");
  idx->add_option("--annotator", f.annotator, "Canonical annotator id (default: first set per document)");
  idx->add_option("--out", f.out, "Output index file")->required();
  json_flag(idx);

  auto* query = app.add_subcommand("query", "Query a saved concept index");
  catalog(query);
  query->add_option("--index", f.index_path, "Index file")->required();
  query->add_option("--patient", f.patient, "Patient id")->required();
  query->add_option("--kind", f.query_kind, "concepts, timeline or texts")
      ->check(CLI::IsMember({"concepts", "timeline", "texts"}));
  query->add_option("--node", f.node, "Concept id (timeline)");
  query->add_option("--nodes", f.nodes, "Comma-separated concept ids (texts)");
  query->add_option("--mode", f.mode, "any or all (texts)")->check(CLI::IsMember({"any", "all"}));
  query->add_flag("--descendants", f.descendants, "Include descendant concepts");
  json_flag(query);

  auto* srv = app.add_subcommand("serve", "Run the HTTP JSON API");
  catalog(srv);
  srv->add_option("--corpus", f.corpus, "Corpus store file (rewritten on edits)")->required();
  srv->add_option("--model", f.model, "Model file enabling POST /predict");
  srv->add_option("--annotator", f.annotator, "Canonical annotator id (default: gold)");
  srv->add_option("--host", f.host, "Listen address");
  srv->add_option("--port", f.port, "Listen port");
  srv->add_option("--token", f.token, "Require this bearer token");

  auto* pred = app.add_subcommand("predict", "Annotate a text file with a trained model");
  catalog(pred);
  pred->add_option("--model", f.model, "Model file")->required();
  pred->add_option("--input", f.input, "UTF-8 text file")->required();
  pred->add_option("--beam", f.beam, "Override the beam width");
  pred->add_option("--out", f.out, "Output file (default: stdout)");
  pred->add_flag("--trace", f.trace, "Print each sentence's decoded action sequence to stderr");
  json_flag(pred);

  // --beam 0 on evaluate/predict keeps the model's own width
  f.beam = 0;
  CLI11_PARSE(app, argc, argv);
  if (train->parsed() && f.beam == 0) f.beam = 1;

  try {
    if (validate->parsed()) return cmd_validate(f);
    if (gen->parsed()) return cmd_gen(f);
    if (split->parsed()) return cmd_split(f);
    if (train->parsed()) return cmd_train(f);
    if (evaluate->parsed()) return cmd_evaluate(f);
    if (agree->parsed()) return cmd_agreement(f);
    if (idx->parsed()) return cmd_index(f);
    if (query->parsed()) return cmd_query(f);
    if (srv->parsed()) return cmd_serve(f);
    if (pred->parsed()) return cmd_predict(f);
  } catch (const Error& e) {
    std::cerr << "error: " << e.qualified() << ": " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 1;
}
