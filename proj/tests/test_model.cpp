#include <gtest/gtest.h>

#include <map>
#include <random>
#include <sstream>

#include "fixtures.hpp"
#include "perceptron_reference.hpp"

using namespace ehrner;
using perceptron_reference::reference_perceptron;

namespace {

std::vector<Token> toks(const std::string& s) { return tokenize(s).tokens; }

struct Trained {
  corpus::DatasetSplit split;
  PreparedCorpus train, dev, test;
  Model model;
  TrainReport report;
};

// One shared training run on the default synthetic corpus.
const Trained& trained() {
  static const Trained t = [] {
    Trained r;
    const auto c = synthetic::generate_synthetic(synthetic::default_config(), 7, fixtures::seed());
    r.split = corpus::split_dataset(c, {0.8, 0.1, 0.1}, 7);
    r.train = instances::prepare(r.split.train, "gold");
    r.dev = instances::prepare(r.split.dev, "gold");
    r.test = instances::prepare(r.split.test, "gold");
    Hyperparams hp;
    hp.epochs = 4;
    std::tie(r.model, r.report) = model::train_instances(r.train.instances, r.dev.instances, fixtures::seed(), hp);
    return r;
  }();
  return t;
}

std::vector<SentenceInstance> small_fixture(std::size_t sentences) {
  auto cfg = synthetic::default_config();
  cfg.sentence_count = sentences;
  cfg.sentences_per_document = 1;
  const auto c = synthetic::generate_synthetic(cfg, 11, fixtures::seed());
  return instances::prepare(c, "gold").instances;
}

Model random_model(std::mt19937_64& rng, const std::vector<std::string>& labels, const std::vector<Token>& tokens) {
  Model m;
  m.ontology_version = fixtures::seed().version;
  m.labels = labels;
  m.action_weights.columns = model::action_columns(labels);
  std::normal_distribution<double> nd(0.0, 1.0);
  auto state = parser::initial_state(tokens.size());
  const model::TokenView tv(tokens);
  std::vector<std::string> feats;
  // Weights on features reachable from the first few states.
  for (int step = 0; step < 40 && !state.done; ++step) {
    model::featurize_into(state, tv, feats);
    for (const auto& f : feats) {
      auto& row = m.action_weights.rows[f];
      row.resize(m.action_weights.columns.size());
      for (auto& x : row) x = nd(rng);
    }
    const auto valid = parser::enumerate_valid(state, labels);
    state = parser::apply(std::move(state), valid[rng() % valid.size()]);
  }
  return m;
}

}  // namespace

TEST(Featurize, FreshStateHasBufferForm) {
  const auto tokens = toks("derrame pleural");
  const auto s = parser::initial_state(tokens.size());
  const auto fv = model::featurize(s, tokens);
  EXPECT_TRUE(fv.contains("buf0=derrame"));
  EXPECT_TRUE(fv.contains("buf1=pleural"));
  EXPECT_TRUE(fv.contains("stklen=0"));
}

TEST(Featurize, Deterministic) {
  const auto tokens = toks("Derrame pleural à direita .");
  auto s = parser::replay(tokens.size(), parse_actions("SHIFT SHIFT"));
  EXPECT_EQ(model::featurize(s, tokens).keys, model::featurize(s, tokens).keys);
}

TEST(Featurize, EmittedTopAndPrevAction) {
  const auto tokens = toks("derrame pleural");
  auto s = parser::replay(tokens.size(), parse_actions("SHIFT SHIFT LABEL:anatomic_structure"));
  const auto fv = model::featurize(s, tokens);
  EXPECT_TRUE(fv.contains("emitted_top=anatomic_structure"));
  EXPECT_TRUE(fv.contains("prev_action=LABEL"));
  EXPECT_TRUE(fv.contains("stktop_last=pleural"));
}

TEST(Featurize, TerminalStateThrows) {
  const auto tokens = toks("derrame");
  auto s = parser::replay(tokens.size(), parse_actions("SHIFT POP"));
  ASSERT_TRUE(s.done);
  try {
    model::featurize(s, tokens);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.qualified(), "model.Terminal");
  }
}

TEST(Train, AlphaZeroNoAveragingMatchesPlainPerceptron) {
  const auto data = small_fixture(50);
  ASSERT_EQ(data.size(), 50u);
  Hyperparams hp;
  hp.epochs = 3;
  hp.depth_weight_alpha = 0.0;
  hp.averaging = false;
  hp.seed = 5;
  const auto [m, report] = model::train_instances(data, {}, fixtures::seed(), hp);
  const auto ref = reference_perceptron(data, fixtures::seed(), hp.epochs, hp.seed);
  ASSERT_FALSE(ref.actions.empty());
  EXPECT_EQ(m.action_weights.entries(), ref.actions);
  EXPECT_EQ(m.modifier_weights.entries(), ref.modifiers);
  EXPECT_EQ(report.best_epoch, 3);
}

TEST(Train, DepthWeightingChangesUpdatesOnNestedData) {
  const auto data = small_fixture(50);
  Hyperparams a;
  a.epochs = 2;
  a.depth_weight_alpha = 0.0;
  Hyperparams b = a;
  b.depth_weight_alpha = 2.0;
  const auto ma = model::train_instances(data, {}, fixtures::seed(), a).first;
  const auto mb = model::train_instances(data, {}, fixtures::seed(), b).first;
  EXPECT_FALSE(ma.action_weights == mb.action_weights);
}

TEST(Train, SameSeedSameModel) {
  const auto data = small_fixture(80);
  Hyperparams hp;
  hp.epochs = 2;
  hp.seed = 9;
  const auto a = model::train_instances(data, {}, fixtures::seed(), hp).first;
  const auto b = model::train_instances(data, {}, fixtures::seed(), hp).first;
  EXPECT_TRUE(a == b);
  EXPECT_EQ(model::save_model(a), model::save_model(b));
}

TEST(Train, UpdateScale) {
  const std::vector<LabeledRange> gold{{{0, 3}, "a"}, {{1, 3}, "b"}, {{2, 3}, "c"}};
  const auto depths = parser::range_depths(gold);
  const TokenRange outer{0, 3}, mid{1, 3}, inner{2, 3};
  EXPECT_DOUBLE_EQ(model::update_scale(Action::label("a"), &outer, depths, 2, 0.5), 2.0);
  EXPECT_DOUBLE_EQ(model::update_scale(Action::label("b"), &mid, depths, 2, 0.5), 1.5);
  EXPECT_DOUBLE_EQ(model::update_scale(Action::label("c"), &inner, depths, 2, 0.5), 1.0);
  EXPECT_DOUBLE_EQ(model::update_scale(Action::shift(), &outer, depths, 2, 0.5), 1.0);
  EXPECT_DOUBLE_EQ(model::update_scale(Action::label("a"), &outer, depths, 2, 0.0), 1.0);
}

TEST(Train, BadHyperparams) {
  const auto data = small_fixture(10);
  for (auto mutate : std::vector<std::function<void(Hyperparams&)>>{
           [](Hyperparams& h) { h.epochs = 0; }, [](Hyperparams& h) { h.beam_width = 0; },
           [](Hyperparams& h) { h.depth_weight_alpha = -0.1; }}) {
    Hyperparams hp;
    mutate(hp);
    try {
      model::train_instances(data, {}, fixtures::seed(), hp);
      FAIL();
    } catch (const Error& e) {
      EXPECT_EQ(e.qualified(), "model.BadHyperparams");
    }
  }
}

TEST(Train, EmptyCorpus) {
  try {
    model::train(Corpus{}, Corpus{}, fixtures::seed(), {});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.qualified(), "model.EmptyCorpus");
  }
}

TEST(Train, GoldNodeOutsideCatalog) {
  auto data = small_fixture(5);
  data[0].gold.push_back({{0, 1}, "no/such/node"});
  try {
    model::train_instances(data, {}, fixtures::seed(), {});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.qualified(), "model.OntologyMismatch");
  }
}

TEST(Train, ReportsDevF1PerEpochAndPicksBest) {
  const auto& t = trained();
  ASSERT_EQ(t.report.epochs.size(), 4u);
  double best = -1;
  int best_epoch = 0;
  for (const auto& e : t.report.epochs) {
    if (e.dev_f1 > best) {
      best = e.dev_f1;
      best_epoch = e.epoch;
    }
  }
  EXPECT_EQ(t.report.best_epoch, best_epoch);
  EXPECT_GE(best, 0.9);
  EXPECT_DOUBLE_EQ(model::instances_f1(t.model, t.dev.instances), best);
}

TEST(Predict, EmptyTokens) {
  const auto& t = trained();
  EXPECT_TRUE(model::predict(t.model, {}, fixtures::seed()).empty());
}

TEST(Predict, VersionMismatch) {
  auto m = trained().model;
  m.ontology_version = "other";
  try {
    model::predict(m, toks("febre"), fixtures::seed());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.qualified(), "model.OntologyMismatch");
  }
}

TEST(Predict, RecoversNestedPleuralEffusion) {
  const auto& t = trained();
  const std::string text = "Sem derrame pleural .";
  const auto ms = model::predict(t.model, toks(text), fixtures::seed());
  const auto outer = fixtures::find_span(text, "derrame pleural");
  const auto inner = fixtures::find_span(text, "pleural");
  bool got_outer = false, got_inner = false;
  for (const auto& m : ms) {
    if (m.span == outer && m.node_id == "clinical_findings") got_outer = true;
    if (m.span == inner && m.node_id == "anatomic_structure") got_inner = true;
  }
  EXPECT_TRUE(got_outer);
  EXPECT_TRUE(got_inner);
}

TEST(Predict, HeldOutNestedInstancesRecovered) {
  const auto& t = trained();
  std::size_t nested = 0, recovered = 0;
  for (const auto& inst : t.test.instances) {
    bool has_nested = false;
    for (const auto& a : inst.gold) {
      for (const auto& b : inst.gold) {
        if (a.range != b.range && a.range.contains(b.range)) has_nested = true;
      }
    }
    if (!has_nested) continue;
    ++nested;
    const auto pred = parser::normalize(
        model::decode_beam(t.model, model::TokenView(inst.tokens), 1).state.emitted);
    if (pred == parser::normalize(inst.gold)) ++recovered;
  }
  ASSERT_GT(nested, 10u);
  EXPECT_GE(static_cast<double>(recovered) / static_cast<double>(nested), 0.9);
}

TEST(Predict, BeamNeverScoresBelowGreedyOnDev) {
  const auto& t = trained();
  double greedy = 0.0, beam = 0.0;
  for (const auto& inst : t.dev.instances) {
    const model::TokenView tv(inst.tokens);
    const auto g = model::decode_greedy(t.model, tv);
    const auto b = model::decode_beam(t.model, tv, 4);
    EXPECT_GE(b.score, g.score);
    greedy += g.score;
    beam += b.score;
  }
  EXPECT_GE(beam, greedy);
}

TEST(Predict, DecodingAppliesOnlyValidActionsWithRandomModels) {
  std::mt19937_64 rng(3);
  const std::vector<std::string> labels{"anatomic_structure", "clinical_findings", "tests"};
  const std::vector<std::string> sentences{"derrame pleural à direita", "a b c d e f g", "x",
                                           "dor torácica com irradiação para o braço esquerdo"};
  for (int trial = 0; trial < 200; ++trial) {
    const auto tokens = toks(sentences[static_cast<std::size_t>(trial) % sentences.size()]);
    const auto m = random_model(rng, labels, tokens);
    for (int width : {1, 3}) {
      const auto r = model::decode_beam(m, model::TokenView(tokens), width);
      auto s = parser::initial_state(tokens.size());
      for (const auto& a : r.actions) {
        ASSERT_TRUE(parser::is_valid(s, a)) << a.key();
        s = parser::apply(std::move(s), a);
      }
      ASSERT_TRUE(s.done);
      EXPECT_FALSE(parser::find_crossing(s.emitted).has_value());
    }
  }
}

TEST(Modifiers, NegatedAllergy) {
  const auto& t = trained();
  const std::string text = "Sem alergias alimentares .";
  const auto tokens = toks(text);
  const auto ms = model::predict(t.model, tokens, fixtures::seed());
  const auto want = fixtures::find_span(text, "alergias alimentares");
  bool found = false;
  for (const auto& m : ms) {
    if (m.span == want) {
      found = true;
      EXPECT_EQ(m.modifier_ids, std::set<std::string>{"negation"});
    }
  }
  EXPECT_TRUE(found);
}

TEST(Modifiers, ZeroModelEmitsNothing) {
  Model m;
  m.ontology_version = fixtures::seed().version;
  for (const auto& [id, unused] : fixtures::seed().modifiers) m.modifier_weights.columns.push_back(id);
  const auto tokens = toks("sem febre");
  EXPECT_TRUE(model::classify_modifiers(m, {1, 2}, "clinical_findings", tokens, fixtures::seed()).empty());
}

TEST(Modifiers, TestsNeverChronicWhateverTheWeights) {
  Model m;
  m.ontology_version = fixtures::seed().version;
  for (const auto& [id, unused] : fixtures::seed().modifiers) m.modifier_weights.columns.push_back(id);
  m.modifier_weights.rows["bias"] = std::vector<double>(m.modifier_weights.columns.size(), 100.0);
  const auto tokens = toks("hemograma sem alterações");
  const auto mods = model::classify_modifiers(m, {0, 1}, "tests", tokens, fixtures::seed());
  EXPECT_FALSE(mods.count("chronic"));
  EXPECT_TRUE(mods.count("negation"));
  for (const auto& mod : mods) EXPECT_TRUE(fixtures::seed().node("tests").modifier_ids.count(mod)) << mod;
}

TEST(Modifiers, PredictionsAlwaysApplicable) {
  const auto& t = trained();
  for (const auto& inst : t.test.instances) {
    for (const auto& m : model::predict(t.model, inst.tokens, fixtures::seed())) {
      for (const auto& mod : m.modifier_ids) {
        EXPECT_TRUE(fixtures::seed().node(m.node_id).modifier_ids.count(mod));
      }
    }
  }
}

TEST(Persistence, RoundTrip) {
  const auto& m = trained().model;
  const auto bytes = model::save_model(m);
  const auto back = model::load_model(bytes);
  EXPECT_TRUE(back == m);
  EXPECT_EQ(model::save_model(back), bytes);
}

TEST(Persistence, TruncatedFile) {
  const auto bytes = model::save_model(trained().model);
  for (std::size_t cut : {std::size_t{0}, std::size_t{5}, bytes.size() / 2, bytes.size() - 3}) {
    try {
      model::load_model(std::string_view(bytes).substr(0, cut));
      FAIL() << "cut at " << cut;
    } catch (const Error& e) {
      EXPECT_EQ(e.qualified(), "model.FormatError");
    }
  }
}

TEST(Persistence, CatalogVersionMismatch) {
  const auto bytes = model::save_model(trained().model);
  try {
    model::load_model(bytes, {"seed-2.0", false});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.qualified(), "model.VersionMismatch");
  }
  EXPECT_NO_THROW(model::load_model(bytes, {"seed-2.0", true}));
  EXPECT_NO_THROW(model::load_model(bytes, {fixtures::seed().version, false}));
}
