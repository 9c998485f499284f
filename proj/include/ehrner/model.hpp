#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <istream>
#include <limits>
#include <map>
#include <numeric>
#include <ostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "ehrner/corpus.hpp"
#include "ehrner/instances.hpp"
#include "ehrner/ontology.hpp"
#include "ehrner/text.hpp"
#include "ehrner/transition.hpp"

namespace ehrner {

struct Hyperparams {
  int epochs = 5;
  int beam_width = 1;
  double depth_weight_alpha = 0.5;
  std::uint64_t seed = 1;
  bool averaging = true;

  bool operator==(const Hyperparams&) const = default;
};

// Indicator features; the key set is the vector.
struct FeatureVector {
  std::vector<std::string> keys;

  bool contains(std::string_view k) const { return std::find(keys.begin(), keys.end(), k) != keys.end(); }
};

// Dense weight rows keyed by feature string; one column per action or
// modifier.
struct WeightTable {
  std::vector<std::string> columns;
  std::unordered_map<std::string, std::vector<double>> rows;

  std::size_t column_index(std::string_view key) const {
    for (std::size_t i = 0; i < columns.size(); ++i) {
      if (columns[i] == key) return i;
    }
    return columns.size();
  }

  double get(const std::string& feature, std::string_view column) const {
    auto it = rows.find(feature);
    auto c = column_index(column);
    if (it == rows.end() || c == columns.size()) return 0.0;
    return it->second[c];
  }

  // Nonzero entries as (feature, column) -> weight, for comparison and I/O.
  std::map<std::pair<std::string, std::string>, double> entries() const {
    std::map<std::pair<std::string, std::string>, double> out;
    for (const auto& [f, row] : rows) {
      for (std::size_t c = 0; c < row.size(); ++c) {
        if (row[c] != 0.0) out[{f, columns[c]}] = row[c];
      }
    }
    return out;
  }

  bool operator==(const WeightTable& o) const { return columns == o.columns && entries() == o.entries(); }
};

struct Model {
  std::string ontology_version;
  Hyperparams hyperparams;
  std::vector<std::string> labels;  // LABEL inventory, sorted
  WeightTable action_weights;       // columns: SHIFT, MERGE, POP, LABEL:<label>...
  WeightTable modifier_weights;     // columns: modifier ids, sorted

  bool operator==(const Model&) const = default;
};

struct EpochReport {
  int epoch = 0;
  double dev_f1 = 0.0;
  std::size_t updates = 0;
};

struct TrainReport {
  std::vector<EpochReport> epochs;
  int best_epoch = 0;
  std::size_t warnings = 0;
};

namespace model {

// ---- features ----

inline std::string word_shape(std::string_view form) {
  std::string out;
  char prev = 0;
  for (char32_t c : text::decode_utf8(form)) {
    char k;
    if (text::is_digit(c)) {
      k = 'd';
    } else if (text::is_letter(c)) {
      const bool upper = (c >= U'A' && c <= U'Z') || (c >= 0xC0 && c <= 0xDE && c != 0xD7);
      k = upper ? 'X' : 'x';
    } else {
      k = '.';
    }
    if (k != prev) out.push_back(k);
    prev = k;
  }
  return out;
}

// Per-token strings precomputed once per sentence.
struct TokenView {
  std::vector<std::string> form;
  std::vector<std::string> lower;
  std::vector<std::string> shape;

  explicit TokenView(const std::vector<Token>& tokens) {
    for (const auto& t : tokens) {
      form.push_back(t.form);
      lower.push_back(text::fold(t.form));
      shape.push_back(word_shape(t.form));
    }
  }

  std::size_t size() const { return form.size(); }
};

inline std::string_view action_kind_name(ActionKind k) {
  switch (k) {
    case ActionKind::shift: return "SHIFT";
    case ActionKind::merge: return "MERGE";
    case ActionKind::pop: return "POP";
    case ActionKind::label: return "LABEL";
  }
  return "";
}

inline void featurize_into(const ParserState& s, const TokenView& tv, std::vector<std::string>& out) {
  out.clear();
  auto buf = [&](std::size_t k) -> std::optional<std::size_t> {
    auto i = s.buffer_pos + k;
    if (i < tv.size()) return i;
    return std::nullopt;
  };
  out.emplace_back("bias");
  for (std::size_t k = 0; k < 3; ++k) {
    const auto i = buf(k);
    const auto p = "buf" + std::to_string(k);
    out.push_back(p + "=" + (i ? tv.form[*i] : "<end>"));
    out.push_back(p + "_lc=" + (i ? tv.lower[*i] : "<end>"));
    if (k < 2) out.push_back(p + "_shape=" + (i ? tv.shape[*i] : "<end>"));
  }
  const auto segment = [&](std::size_t depth, const char* name) {
    const std::string p(name);
    if (s.stack.size() <= depth) {
      out.push_back(p + "=<none>");
      return;
    }
    const auto& seg = s.stack[s.stack.size() - 1 - depth];
    const auto len = seg.end - seg.begin;
    out.push_back(p + "_first=" + tv.lower[seg.begin]);
    out.push_back(p + "_last=" + tv.lower[seg.end - 1]);
    out.push_back(p + "_len=" + std::to_string(std::min<std::size_t>(len, 5)));
    if (len <= 4) {
      std::string whole;
      for (auto i = seg.begin; i < seg.end; ++i) {
        if (i > seg.begin) whole += '_';
        whole += tv.lower[i];
      }
      out.push_back(p + "_form=" + whole);
    }
  };
  segment(0, "stktop");
  segment(1, "stk1");
  if (const auto* top = s.top()) {
    out.push_back("stktop_prev=" + (top->begin > 0 ? tv.lower[top->begin - 1] : std::string("<start>")));
    const auto b0 = buf(0);
    out.push_back("stktop_last|buf0=" + tv.lower[top->end - 1] + "|" + (b0 ? tv.lower[*b0] : "<end>"));
    out.push_back(std::string("stktop_adj_buf=") + (top->end == s.buffer_pos ? "1" : "0"));
    if (s.stack.size() >= 2) {
      const auto& below = s.stack[s.stack.size() - 2];
      out.push_back(std::string("stk_adjacent=") + (below.end == top->begin ? "1" : "0"));
      out.push_back("stk1_last|stktop_first=" + tv.lower[below.end - 1] + "|" + tv.lower[top->begin]);
    }
    std::size_t count = 0;
    for (const auto& e : s.emitted) {
      if (e.range == *top) {
        out.push_back("emitted_top=" + e.node_id);
        ++count;
      }
    }
    out.push_back("emitted_top_n=" + std::to_string(std::min<std::size_t>(count, 3)));
  }
  out.push_back("stklen=" + std::to_string(std::min<std::size_t>(s.stack.size(), 4)));
  out.push_back("prev_action=" + std::string(s.last_action ? action_kind_name(*s.last_action) : "<none>"));
}

inline FeatureVector featurize(const ParserState& s, const std::vector<Token>& tokens) {
  if (s.done) throw Error("model", "Terminal", "cannot featurize a terminal state");
  FeatureVector fv;
  featurize_into(s, TokenView(tokens), fv.keys);
  return fv;
}

inline void modifier_features_into(const TokenView& tv, const TokenRange& r, const std::set<std::string>& classes,
                                   const std::string& node, std::vector<std::string>& out) {
  out.clear();
  out.emplace_back("bias");
  for (std::size_t k = 1; k <= 3; ++k) {
    const bool has_left = r.begin >= k;
    const auto right = r.end + k - 1;
    out.push_back("left" + std::to_string(k) + "=" + (has_left ? tv.lower[r.begin - k] : "<start>"));
    out.push_back("right" + std::to_string(k) + "=" + (right < tv.size() ? tv.lower[right] : "<end>"));
    if (has_left) out.push_back("left_win=" + tv.lower[r.begin - k]);
    if (right < tv.size()) out.push_back("right_win=" + tv.lower[right]);
  }
  for (auto i = r.begin; i < r.end; ++i) out.push_back("inside=" + tv.lower[i]);
  for (const auto& c : classes) out.push_back("class=" + c);
  out.push_back("node=" + node);
}

// ---- scoring ----

inline std::vector<std::string> action_columns(const std::vector<std::string>& labels) {
  std::vector<std::string> cols{"SHIFT", "MERGE", "POP"};
  for (const auto& l : labels) cols.push_back("LABEL:" + l);
  return cols;
}

inline Action column_action(const Model& m, std::size_t col) {
  switch (col) {
    case 0: return Action::shift();
    case 1: return Action::merge();
    case 2: return Action::pop();
    default: return Action::label(m.labels[col - 3]);
  }
}

inline std::size_t action_column(const Model& m, const Action& a) {
  switch (a.kind) {
    case ActionKind::shift: return 0;
    case ActionKind::merge: return 1;
    case ActionKind::pop: return 2;
    case ActionKind::label: {
      auto it = std::lower_bound(m.labels.begin(), m.labels.end(), a.node_id);
      if (it == m.labels.end() || *it != a.node_id) return m.action_weights.columns.size();
      return 3 + static_cast<std::size_t>(it - m.labels.begin());
    }
  }
  return m.action_weights.columns.size();
}

inline std::vector<bool> valid_mask(const Model& m, const ParserState& s) {
  std::vector<bool> mask(m.action_weights.columns.size(), false);
  if (s.done) return mask;
  const auto v = parser::valid_actions(s);
  mask[0] = v.shift;
  mask[1] = v.merge;
  mask[2] = v.pop;
  if (v.label) {
    for (std::size_t i = 0; i < m.labels.size(); ++i) mask[3 + i] = !s.emitted_on(s.stack.back(), m.labels[i]);
  }
  return mask;
}

inline void score_into(const WeightTable& t, const std::vector<std::string>& features, std::vector<double>& scores) {
  scores.assign(t.columns.size(), 0.0);
  for (const auto& f : features) {
    auto it = t.rows.find(f);
    if (it == t.rows.end()) continue;
    const auto& row = it->second;
    for (std::size_t c = 0; c < row.size(); ++c) scores[c] += row[c];
  }
}

// First maximum in column order, which is the fixed action tie order.
inline std::size_t best_valid(const std::vector<double>& scores, const std::vector<bool>& mask) {
  std::size_t best = scores.size();
  for (std::size_t c = 0; c < scores.size(); ++c) {
    if (mask[c] && (best == scores.size() || scores[c] > scores[best])) best = c;
  }
  return best;
}

// ---- decoding ----

struct DecodeResult {
  ParserState state;
  double score = 0.0;
  std::vector<Action> actions;
};

inline DecodeResult decode_greedy(const Model& m, const TokenView& tv) {
  DecodeResult r{parser::initial_state(tv.size()), 0.0, {}};
  std::vector<std::string> feats;
  std::vector<double> scores;
  while (!r.state.done) {
    featurize_into(r.state, tv, feats);
    score_into(m.action_weights, feats, scores);
    const auto best = best_valid(scores, valid_mask(m, r.state));
    const auto a = column_action(m, best);
    r.score += scores[best];
    r.state = parser::apply(std::move(r.state), a);
    r.actions.push_back(a);
  }
  return r;
}

// Beam search over valid actions. The greedy path is always a candidate,
// so a wider beam never returns a lower-scoring parse than greedy.
inline DecodeResult decode_beam(const Model& m, const TokenView& tv, int width) {
  auto greedy = decode_greedy(m, tv);
  if (width <= 1) return greedy;
  std::vector<DecodeResult> beam{{parser::initial_state(tv.size()), 0.0, {}}};
  std::optional<DecodeResult> best_done;
  std::vector<std::string> feats;
  std::vector<double> scores;
  struct Candidate {
    double score;
    std::size_t hyp;
    std::size_t col;
  };
  while (!beam.empty()) {
    std::vector<Candidate> cands;
    for (std::size_t h = 0; h < beam.size(); ++h) {
      if (beam[h].state.done) {
        if (!best_done || beam[h].score > best_done->score) best_done = beam[h];
        continue;
      }
      featurize_into(beam[h].state, tv, feats);
      score_into(m.action_weights, feats, scores);
      const auto mask = valid_mask(m, beam[h].state);
      for (std::size_t c = 0; c < scores.size(); ++c) {
        if (mask[c]) cands.push_back({beam[h].score + scores[c], h, c});
      }
    }
    std::stable_sort(cands.begin(), cands.end(),
                     [](const Candidate& a, const Candidate& b) { return a.score > b.score; });
    if (cands.size() > static_cast<std::size_t>(width)) cands.resize(static_cast<std::size_t>(width));
    std::vector<DecodeResult> next;
    next.reserve(cands.size());
    for (const auto& c : cands) {
      auto a = column_action(m, c.col);
      DecodeResult r{parser::apply(beam[c.hyp].state, a), c.score, beam[c.hyp].actions};
      r.actions.push_back(std::move(a));
      next.push_back(std::move(r));
    }
    beam = std::move(next);
  }
  if (!best_done || greedy.score >= best_done->score) return greedy;
  return *best_done;
}

// ---- modifiers ----

inline std::set<std::string> classify_modifiers_tokens(const Model& m, const TokenView& tv, const TokenRange& r,
                                                       const std::string& node, const Ontology& ontology) {
  const auto& n = ontology.node(node);
  std::vector<std::string> feats;
  modifier_features_into(tv, r, ontology::level1_ancestors(ontology, node), node, feats);
  std::vector<double> scores;
  score_into(m.modifier_weights, feats, scores);
  std::set<std::string> out;
  for (std::size_t c = 0; c < scores.size(); ++c) {
    if (scores[c] > 0.0 && n.modifier_ids.count(m.modifier_weights.columns[c])) out.insert(m.modifier_weights.columns[c]);
  }
  return out;
}

// Modifier set for a token-range mention; only modifiers applicable to the
// node can be returned.
inline std::set<std::string> classify_modifiers(const Model& m, const TokenRange& mention, const std::string& node,
                                                const std::vector<Token>& tokens, const Ontology& ontology) {
  return classify_modifiers_tokens(m, TokenView(tokens), mention, node, ontology);
}

inline void check_version(const Model& m, const Ontology& ontology) {
  if (m.ontology_version != ontology.version) {
    throw Error("model", "OntologyMismatch",
                "model was trained against catalog '" + m.ontology_version + "', loaded catalog is '" +
                    ontology.version + "'");
  }
}

// Decodes one token sequence; mentions carry character spans taken from
// the tokens and their classified modifiers.
inline std::vector<Mention> predict(const Model& m, const std::vector<Token>& tokens, const Ontology& ontology) {
  check_version(m, ontology);
  if (tokens.empty()) return {};
  const TokenView tv(tokens);
  const auto result = decode_beam(m, tv, m.hyperparams.beam_width);
  auto emitted = parser::normalize(result.state.emitted);
  std::vector<Mention> out;
  for (const auto& e : emitted) {
    Mention men;
    men.span = instances::char_span(tokens, e.range);
    men.node_id = e.node_id;
    men.modifier_ids = classify_modifiers_tokens(m, tv, e.range, e.node_id, ontology);
    out.push_back(std::move(men));
  }
  return out;
}

// Tokenizes, splits into sentences, and predicts; mention ids are p1, p2, ...
inline std::vector<Mention> predict_text(const Model& m, std::string_view text, const Ontology& ontology,
                                         const std::string& annotator = "model") {
  check_version(m, ontology);
  Document doc;
  doc.text = std::string(text);
  PreparedCorpus prepared;
  instances::prepare_document(doc, nullptr, prepared);
  std::vector<Mention> out;
  for (const auto& inst : prepared.instances) {
    for (auto& men : predict(m, inst.tokens, ontology)) {
      men.id = "p" + std::to_string(out.size() + 1);
      men.annotator_id = annotator;
      out.push_back(std::move(men));
    }
  }
  return out;
}

// ---- training ----

namespace detail {

// Perceptron weights with the w/u averaging trick: averaged = w - u / c.
struct Trainable {
  std::vector<std::string> columns;
  std::unordered_map<std::string, std::pair<std::vector<double>, std::vector<double>>> rows;
  double clock = 1.0;

  void update(const std::vector<std::string>& feats, std::size_t col, double delta) {
    for (const auto& f : feats) {
      auto& row = rows[f];
      if (row.first.empty()) {
        row.first.assign(columns.size(), 0.0);
        row.second.assign(columns.size(), 0.0);
      }
      row.first[col] += delta;
      row.second[col] += clock * delta;
    }
  }

  WeightTable snapshot(bool averaged) const {
    WeightTable t;
    t.columns = columns;
    for (const auto& [f, row] : rows) {
      std::vector<double> w = row.first;
      if (averaged) {
        for (std::size_t c = 0; c < w.size(); ++c) w[c] = row.first[c] - row.second[c] / clock;
      }
      if (std::any_of(w.begin(), w.end(), [](double x) { return x != 0.0; })) t.rows.emplace(f, std::move(w));
    }
    return t;
  }

  // Live weights without averaging, used for decoding during training.
  void score(const std::vector<std::string>& feats, std::vector<double>& scores) const {
    scores.assign(columns.size(), 0.0);
    for (const auto& f : feats) {
      auto it = rows.find(f);
      if (it == rows.end()) continue;
      for (std::size_t c = 0; c < columns.size(); ++c) scores[c] += it->second.first[c];
    }
  }
};

inline double exact_f1(std::size_t gold, std::size_t pred, std::size_t correct) {
  if (gold + pred == 0) return 1.0;
  return 2.0 * static_cast<double>(correct) / static_cast<double>(gold + pred);
}

}  // namespace detail

// Micro-F1 of exact (range, node) matches over prepared instances.
inline double instances_f1(const Model& m, const std::vector<SentenceInstance>& data) {
  std::size_t gold = 0, pred = 0, correct = 0;
  for (const auto& inst : data) {
    if (inst.tokens.empty()) continue;
    const TokenView tv(inst.tokens);
    auto emitted = parser::normalize(decode_beam(m, tv, m.hyperparams.beam_width).state.emitted);
    gold += inst.gold.size();
    pred += emitted.size();
    for (const auto& e : emitted) {
      if (std::binary_search(inst.gold.begin(), inst.gold.end(), e)) ++correct;
    }
  }
  return detail::exact_f1(gold, pred, correct);
}

// Per-step update scale: LABEL of a mention at depth d in a forest of
// maximum depth D is weighted 1 + alpha * (D - d); everything else 1.
inline double update_scale(const Action& oracle, const TokenRange* top, const std::map<TokenRange, int>& depths,
                           int max_depth, double alpha) {
  if (oracle.kind != ActionKind::label || top == nullptr || alpha == 0.0) return 1.0;
  auto it = depths.find(*top);
  if (it == depths.end()) return 1.0;
  return 1.0 + alpha * static_cast<double>(max_depth - it->second);
}

struct TrainOptions {
  std::string annotator;  // gold annotator; empty = first set per document
  std::function<void(const EpochReport&)> on_epoch;
};

inline std::pair<Model, TrainReport> train_instances(const std::vector<SentenceInstance>& train_data,
                                                     const std::vector<SentenceInstance>& dev_data,
                                                     const Ontology& ontology, const Hyperparams& hp,
                                                     const TrainOptions& opts = {}) {
  if (hp.epochs <= 0 || hp.beam_width <= 0 || hp.depth_weight_alpha < 0.0) {
    throw Error("model", "BadHyperparams", "epochs and beam width must be positive, alpha non-negative");
  }
  std::set<std::string> label_set;
  std::size_t gold_total = 0;
  for (const auto& inst : train_data) {
    for (const auto& g : inst.gold) {
      if (!ontology.contains(g.node_id)) {
        throw Error("model", "OntologyMismatch", "gold node '" + g.node_id + "' is not in catalog " + ontology.version);
      }
      label_set.insert(g.node_id);
      ++gold_total;
    }
  }
  if (train_data.empty() || gold_total == 0) throw Error("model", "EmptyCorpus", "no gold mentions to train on");

  Model model;
  model.ontology_version = ontology.version;
  model.hyperparams = hp;
  model.labels.assign(label_set.begin(), label_set.end());
  detail::Trainable actions;
  actions.columns = action_columns(model.labels);
  detail::Trainable modifiers;
  for (const auto& [id, unused] : ontology.modifiers) modifiers.columns.push_back(id);

  // Oracle sequences and depth maps are fixed across epochs.
  struct Prepared {
    const SentenceInstance* inst;
    TokenView view;
    std::vector<Action> oracle;
    std::map<TokenRange, int> depths;
    int max_depth = 0;
  };
  std::vector<Prepared> prepared;
  prepared.reserve(train_data.size());
  for (const auto& inst : train_data) {
    if (inst.tokens.empty()) continue;
    Prepared p{&inst, TokenView(inst.tokens), parser::oracle_actions(inst.tokens.size(), inst.gold),
               parser::range_depths(inst.gold), 0};
    for (const auto& [r, d] : p.depths) p.max_depth = std::max(p.max_depth, d);
    prepared.push_back(std::move(p));
  }

  std::vector<std::size_t> order(prepared.size());
  std::iota(order.begin(), order.end(), 0);
  std::mt19937_64 rng(hp.seed);

  TrainReport report;
  std::optional<Model> best;
  double best_f1 = -1.0;
  std::vector<std::string> feats;
  std::vector<double> scores;
  Model probe = model;  // column layout for masks
  probe.action_weights.columns = actions.columns;

  for (int epoch = 1; epoch <= hp.epochs; ++epoch) {
    corpus::seeded_shuffle(order, rng);
    std::size_t updates = 0;
    for (auto idx : order) {
      const auto& p = prepared[idx];
      auto state = parser::initial_state(p.view.size());
      for (const auto& oracle : p.oracle) {
        featurize_into(state, p.view, feats);
        actions.score(feats, scores);
        const auto predicted = best_valid(scores, valid_mask(probe, state));
        const auto gold_col = action_column(probe, oracle);
        if (predicted != gold_col) {
          const double w = update_scale(oracle, state.top(), p.depths, p.max_depth, hp.depth_weight_alpha);
          actions.update(feats, gold_col, w);
          actions.update(feats, predicted, -w);
          ++updates;
        }
        actions.clock += 1.0;
        state = parser::apply(std::move(state), oracle);
      }
      for (const auto& g : p.inst->gold) {
        const auto& node = ontology.node(g.node_id);
        modifier_features_into(p.view, g.range, ontology::level1_ancestors(ontology, g.node_id), g.node_id, feats);
        modifiers.score(feats, scores);
        const auto gold_mods = p.inst->gold_modifiers.find(g);
        for (std::size_t c = 0; c < modifiers.columns.size(); ++c) {
          const auto& mod = modifiers.columns[c];
          if (!node.modifier_ids.count(mod)) continue;
          const bool want = gold_mods != p.inst->gold_modifiers.end() && gold_mods->second.count(mod);
          const bool got = scores[c] > 0.0;
          if (want != got) modifiers.update(feats, c, want ? 1.0 : -1.0);
        }
        modifiers.clock += 1.0;
      }
    }

    Model current = model;
    current.action_weights = actions.snapshot(hp.averaging);
    current.modifier_weights = modifiers.snapshot(hp.averaging);
    EpochReport er{epoch, dev_data.empty() ? 0.0 : instances_f1(current, dev_data), updates};
    report.epochs.push_back(er);
    if (opts.on_epoch) opts.on_epoch(er);
    if (dev_data.empty() || er.dev_f1 > best_f1) {
      best_f1 = er.dev_f1;
      report.best_epoch = epoch;
      best = std::move(current);
    }
  }
  return {std::move(*best), report};
}

inline std::pair<Model, TrainReport> train(const Corpus& train_corpus, const Corpus& dev_corpus,
                                           const Ontology& ontology, const Hyperparams& hp,
                                           const TrainOptions& opts = {}) {
  if (!ontology::validate(ontology).empty()) throw Error("model", "OntologyMismatch", "catalog does not validate");
  auto tr = instances::prepare(train_corpus, opts.annotator);
  auto dv = instances::prepare(dev_corpus, opts.annotator);
  auto result = train_instances(tr.instances, dv.instances, ontology, hp, opts);
  result.second.warnings = tr.warnings.size() + dv.warnings.size();
  return result;
}

// ---- persistence ----

inline constexpr std::string_view model_magic = "ehrner-model";
inline constexpr int model_format_version = 1;

inline void save_model(const Model& m, std::ostream& out) {
  const auto& hp = m.hyperparams;
  out << model_magic << '\t' << model_format_version << '\n';
  out << "ontology_version\t" << m.ontology_version << '\n';
  out << "hyperparams\tepochs=" << hp.epochs << "\tbeam_width=" << hp.beam_width
      << "\tdepth_weight_alpha=" << text::format_double(hp.depth_weight_alpha) << "\tseed=" << hp.seed
      << "\taveraging=" << (hp.averaging ? 1 : 0) << '\n';
  out << "labels";
  for (const auto& l : m.labels) out << '\t' << l;
  out << "\nmodifiers";
  for (const auto& c : m.modifier_weights.columns) out << '\t' << c;
  out << '\n';
  const auto a = m.action_weights.entries();
  const auto mo = m.modifier_weights.entries();
  out << "weights\t" << a.size() + mo.size() << '\n';
  for (const auto& [k, v] : a) out << "A\t" << k.first << '\t' << k.second << '\t' << text::format_double(v) << '\n';
  for (const auto& [k, v] : mo) out << "M\t" << k.first << '\t' << k.second << '\t' << text::format_double(v) << '\n';
  out << "end\n";
}

inline std::string save_model(const Model& m) {
  std::ostringstream os;
  save_model(m, os);
  return os.str();
}

struct LoadOptions {
  std::string expected_ontology_version;  // empty: accept any
  bool force = false;
};

inline Model load_model(std::istream& in, const LoadOptions& opts = {}) {
  auto fail = [](const std::string& what) { return Error("model", "FormatError", "model file: " + what); };
  std::string line;
  auto next = [&](const char* what) {
    if (!std::getline(in, line)) throw fail(std::string("truncated before ") + what);
    return text::split(line, '\t');
  };
  auto head = next("header");
  if (head.size() != 2 || head[0] != model_magic) throw fail("not a model file");
  if (head[1] != std::to_string(model_format_version)) {
    throw Error("model", "VersionMismatch", "unsupported model format version " + head[1]);
  }
  Model m;
  auto ov = next("ontology_version");
  if (ov.size() != 2 || ov[0] != "ontology_version") throw fail("missing ontology_version");
  m.ontology_version = ov[1];
  if (!opts.expected_ontology_version.empty() && m.ontology_version != opts.expected_ontology_version &&
      !opts.force) {
    throw Error("model", "VersionMismatch",
                "model catalog version '" + m.ontology_version + "' differs from '" + opts.expected_ontology_version + "'");
  }
  auto hp = next("hyperparams");
  if (hp.empty() || hp[0] != "hyperparams") throw fail("missing hyperparams");
  std::set<std::string> seen;
  for (std::size_t i = 1; i < hp.size(); ++i) {
    auto eq = hp[i].find('=');
    if (eq == std::string::npos) throw fail("bad hyperparameter '" + hp[i] + "'");
    auto key = hp[i].substr(0, eq);
    auto val = hp[i].substr(eq + 1);
    seen.insert(key);
    try {
      if (key == "epochs") m.hyperparams.epochs = std::stoi(val);
      else if (key == "beam_width") m.hyperparams.beam_width = std::stoi(val);
      else if (key == "seed") m.hyperparams.seed = std::stoull(val);
      else if (key == "averaging") m.hyperparams.averaging = val == "1";
      else if (key == "depth_weight_alpha") {
        if (!text::parse_double(val, m.hyperparams.depth_weight_alpha)) throw fail("bad alpha");
      } else {
        throw fail("unknown hyperparameter '" + key + "'");
      }
    } catch (const std::logic_error&) {
      throw fail("bad hyperparameter value '" + hp[i] + "'");
    }
  }
  if (seen.size() != 5) throw fail("incomplete hyperparams");
  auto labels = next("labels");
  if (labels.empty() || labels[0] != "labels") throw fail("missing labels");
  m.labels.assign(labels.begin() + 1, labels.end());
  if (!std::is_sorted(m.labels.begin(), m.labels.end())) throw fail("labels not sorted");
  auto mods = next("modifiers");
  if (mods.empty() || mods[0] != "modifiers") throw fail("missing modifiers");
  m.action_weights.columns = action_columns(m.labels);
  m.modifier_weights.columns.assign(mods.begin() + 1, mods.end());
  auto count_line = next("weights");
  if (count_line.size() != 2 || count_line[0] != "weights") throw fail("missing weight count");
  std::size_t count = 0;
  try {
    count = std::stoull(count_line[1]);
  } catch (const std::logic_error&) {
    throw fail("bad weight count");
  }
  for (std::size_t i = 0; i < count; ++i) {
    auto f = next("end of weights");
    if (f.size() != 4 || (f[0] != "A" && f[0] != "M")) throw fail("bad weight line " + std::to_string(i + 1));
    auto& table = f[0] == "A" ? m.action_weights : m.modifier_weights;
    const auto col = table.column_index(f[2]);
    if (col == table.columns.size()) throw fail("weight references unknown column '" + f[2] + "'");
    double v = 0;
    if (!text::parse_double(f[3], v)) throw fail("bad weight value '" + f[3] + "'");
    auto& row = table.rows[f[1]];
    if (row.empty()) row.assign(table.columns.size(), 0.0);
    row[col] = v;
  }
  auto end = next("end marker");
  if (end.size() != 1 || end[0] != "end") throw fail("missing end marker");
  return m;
}

inline Model load_model(std::string_view bytes, const LoadOptions& opts = {}) {
  std::istringstream in{std::string(bytes)};
  return load_model(in, opts);
}

}  // namespace model
}  // namespace ehrner
