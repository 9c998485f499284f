#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <tuple>
#include <type_traits>
#include <vector>

#include "ehrner/error.hpp"

namespace ehrner {

// Half-open range of token indices.
struct TokenRange {
  std::size_t begin = 0;
  std::size_t end = 0;

  bool contains(const TokenRange& o) const { return begin <= o.begin && o.end <= end; }
  bool overlaps(const TokenRange& o) const { return begin < o.end && o.begin < end; }
  bool crosses(const TokenRange& o) const { return overlaps(o) && !contains(o) && !o.contains(*this); }

  auto operator<=>(const TokenRange&) const = default;
};

struct LabeledRange {
  TokenRange range;
  std::string node_id;

  auto operator<=>(const LabeledRange&) const = default;
};

enum class ActionKind { shift, merge, label, pop };

struct Action {
  ActionKind kind = ActionKind::shift;
  std::string node_id;  // LABEL only

  static Action shift() { return {ActionKind::shift, {}}; }
  static Action merge() { return {ActionKind::merge, {}}; }
  static Action pop() { return {ActionKind::pop, {}}; }
  static Action label(std::string node) { return {ActionKind::label, std::move(node)}; }

  // Trace form: SHIFT, MERGE, POP, LABEL:<node_id>.
  std::string key() const {
    switch (kind) {
      case ActionKind::shift: return "SHIFT";
      case ActionKind::merge: return "MERGE";
      case ActionKind::pop: return "POP";
      case ActionKind::label: return "LABEL:" + node_id;
    }
    return {};
  }

  static Action parse(std::string_view s) {
    if (s == "SHIFT") return shift();
    if (s == "MERGE") return merge();
    if (s == "POP") return pop();
    if (s.starts_with("LABEL:") && s.size() > 6) return label(std::string(s.substr(6)));
    throw Error("parser", "BadAction", "unknown action '" + std::string(s) + "'");
  }

  bool operator==(const Action&) const = default;
};

// Fixed tie order: SHIFT < MERGE < POP < LABEL, labels by node id.
inline bool action_order_less(const Action& a, const Action& b) {
  auto rank = [](ActionKind k) {
    switch (k) {
      case ActionKind::shift: return 0;
      case ActionKind::merge: return 1;
      case ActionKind::pop: return 2;
      case ActionKind::label: return 3;
    }
    return 4;
  };
  return std::make_tuple(rank(a.kind), std::string_view(a.node_id)) <
         std::make_tuple(rank(b.kind), std::string_view(b.node_id));
}

inline std::string format_actions(const std::vector<Action>& actions) {
  std::string out;
  for (const auto& a : actions) {
    if (!out.empty()) out += ' ';
    out += a.key();
  }
  return out;
}

inline std::vector<Action> parse_actions(std::string_view s) {
  std::vector<Action> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\n')) ++i;
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t' && s[j] != '\n') ++j;
    if (j > i) out.push_back(Action::parse(s.substr(i, j - i)));
    i = j;
  }
  return out;
}

struct ParserState {
  std::vector<TokenRange> stack;
  std::size_t buffer_pos = 0;
  std::size_t token_count = 0;
  std::vector<LabeledRange> emitted;
  bool done = false;
  // Kind of the action that produced this state; history, not structure.
  std::optional<ActionKind> last_action;

  const TokenRange* top() const { return stack.empty() ? nullptr : &stack.back(); }

  bool emitted_on(const TokenRange& r, std::string_view node) const {
    for (const auto& e : emitted) {
      if (e.range == r && e.node_id == node) return true;
    }
    return false;
  }

  bool operator==(const ParserState& o) const {
    return stack == o.stack && buffer_pos == o.buffer_pos && token_count == o.token_count &&
           emitted == o.emitted && done == o.done;
  }
};

namespace parser {

inline ParserState initial_state(std::size_t token_count) {
  ParserState s;
  s.token_count = token_count;
  s.done = token_count == 0;
  return s;
}

template <typename TokenSeq>
  requires(!std::is_arithmetic_v<TokenSeq>)
ParserState initial_state(const TokenSeq& tokens) {
  return initial_state(static_cast<std::size_t>(std::size(tokens)));
}

struct ValidKinds {
  bool shift = false;
  bool merge = false;
  bool label = false;  // at least one LABEL is possible; see label_valid
  bool pop = false;
};

inline ValidKinds valid_actions(const ParserState& s) {
  if (s.done) throw Error("parser", "Terminal", "state is already terminal");
  ValidKinds v;
  v.shift = s.buffer_pos < s.token_count;
  v.merge = s.stack.size() >= 2 && s.stack[s.stack.size() - 2].end == s.stack.back().begin;
  v.label = !s.stack.empty();
  v.pop = !s.stack.empty();
  return v;
}

inline bool label_valid(const ParserState& s, std::string_view node) {
  return !s.done && !s.stack.empty() && !s.emitted_on(s.stack.back(), node);
}

inline bool is_valid(const ParserState& s, const Action& a) {
  if (s.done) return false;
  const auto v = valid_actions(s);
  switch (a.kind) {
    case ActionKind::shift: return v.shift;
    case ActionKind::merge: return v.merge;
    case ActionKind::pop: return v.pop;
    case ActionKind::label: return !a.node_id.empty() && label_valid(s, a.node_id);
  }
  return false;
}

// Every valid action for a state given the candidate label inventory, in
// the fixed tie order.
inline std::vector<Action> enumerate_valid(const ParserState& s, const std::vector<std::string>& labels) {
  std::vector<Action> out;
  if (s.done) return out;
  const auto v = valid_actions(s);
  if (v.shift) out.push_back(Action::shift());
  if (v.merge) out.push_back(Action::merge());
  if (v.pop) out.push_back(Action::pop());
  if (v.label) {
    std::vector<std::string> sorted = labels;
    std::sort(sorted.begin(), sorted.end());
    for (const auto& l : sorted) {
      if (!s.emitted_on(s.stack.back(), l)) out.push_back(Action::label(l));
    }
  }
  return out;
}

inline ParserState apply(ParserState s, const Action& a) {
  if (!is_valid(s, a)) throw Error("parser", "InvalidAction", "action " + a.key() + " is not valid here");
  switch (a.kind) {
    case ActionKind::shift:
      s.stack.push_back({s.buffer_pos, s.buffer_pos + 1});
      ++s.buffer_pos;
      break;
    case ActionKind::merge: {
      const auto right = s.stack.back();
      s.stack.pop_back();
      s.stack.back().end = right.end;
      break;
    }
    case ActionKind::label:
      s.emitted.push_back({s.stack.back(), a.node_id});
      break;
    case ActionKind::pop:
      s.stack.pop_back();
      break;
  }
  s.last_action = a.kind;
  s.done = s.stack.empty() && s.buffer_pos >= s.token_count;
  return s;
}

inline ParserState replay(std::size_t token_count, const std::vector<Action>& actions) {
  auto s = initial_state(token_count);
  for (const auto& a : actions) s = apply(std::move(s), a);
  return s;
}

inline std::vector<LabeledRange> normalize(std::vector<LabeledRange> gold) {
  std::sort(gold.begin(), gold.end());
  gold.erase(std::unique(gold.begin(), gold.end()), gold.end());
  return gold;
}

inline std::optional<std::pair<LabeledRange, LabeledRange>> find_crossing(const std::vector<LabeledRange>& gold) {
  for (std::size_t i = 0; i < gold.size(); ++i) {
    for (std::size_t j = i + 1; j < gold.size(); ++j) {
      if (gold[i].range.crosses(gold[j].range)) return std::make_pair(gold[i], gold[j]);
    }
  }
  return std::nullopt;
}

// Nesting depth of every distinct gold range: the number of distinct gold
// ranges strictly containing it (0 = outermost).
inline std::map<TokenRange, int> range_depths(const std::vector<LabeledRange>& gold) {
  std::set<TokenRange> ranges;
  for (const auto& g : gold) ranges.insert(g.range);
  std::map<TokenRange, int> depth;
  for (const auto& r : ranges) {
    int d = 0;
    for (const auto& o : ranges) {
      if (o != r && o.contains(r)) ++d;
    }
    depth[r] = d;
  }
  return depth;
}

// Derives the action sequence that rebuilds exactly `gold`.
//
// At each state: LABEL the top segment with its smallest pending node id;
// else MERGE the top two segments when they are adjacent, their union lies
// inside a gold range, and no pending gold range starts at the top
// segment and extends past it; else SHIFT when the stack is empty or the
// top is a proper prefix-in-progress of a gold range whose remaining
// tokens are still in the buffer; else POP.
inline std::vector<Action> oracle_actions(std::size_t token_count, std::vector<LabeledRange> gold_in) {
  const auto gold = normalize(std::move(gold_in));
  for (const auto& g : gold) {
    if (g.range.begin >= g.range.end || g.range.end > token_count) {
      throw Error("parser", "NotDerivable", "gold range outside the token sequence");
    }
  }
  if (auto c = find_crossing(gold)) {
    throw Error("parser", "CrossingGold",
                "gold ranges [" + std::to_string(c->first.range.begin) + "," + std::to_string(c->first.range.end) +
                    ") and [" + std::to_string(c->second.range.begin) + "," + std::to_string(c->second.range.end) +
                    ") cross");
  }
  std::set<TokenRange> ranges;
  for (const auto& g : gold) ranges.insert(g.range);

  auto pending_labels = [&](const ParserState& s, const TokenRange& r) {
    std::vector<std::string> out;
    for (const auto& g : gold) {
      if (g.range == r && !s.emitted_on(r, g.node_id)) out.push_back(g.node_id);
    }
    return out;  // already sorted: gold is sorted by (range, node)
  };
  auto range_pending = [&](const ParserState& s, const TokenRange& r) { return !pending_labels(s, r).empty(); };

  std::vector<Action> actions;
  auto s = initial_state(token_count);
  const std::size_t limit = 2 * token_count + gold.size() + token_count + 1;
  while (!s.done) {
    if (actions.size() > limit) throw Error("parser", "NotDerivable", "oracle exceeded its step bound");
    std::optional<Action> next;
    const TokenRange* top = s.top();
    if (top) {
      auto labels = pending_labels(s, *top);
      if (!labels.empty()) next = Action::label(labels.front());
    }
    if (!next && s.stack.size() >= 2) {
      const auto& below = s.stack[s.stack.size() - 2];
      if (below.end == top->begin) {
        const TokenRange uni{below.begin, top->end};
        bool inside = false;
        bool blocked = false;
        for (const auto& r : ranges) {
          if (r.contains(uni)) inside = true;
          if (r.begin == top->begin && r.end > top->end && range_pending(s, r)) blocked = true;
        }
        if (inside && !blocked) next = Action::merge();
      }
    }
    if (!next && s.buffer_pos < token_count) {
      bool shift = top == nullptr;
      if (!shift && top->end == s.buffer_pos) {
        for (const auto& r : ranges) {
          if (r.contains(*top) && r != *top && r.end > top->end) {
            shift = true;
            break;
          }
        }
      }
      if (shift) next = Action::shift();
    }
    if (!next) {
      if (!top) throw Error("parser", "NotDerivable", "oracle reached an empty stack with no action");
      next = Action::pop();
    }
    s = apply(std::move(s), *next);
    actions.push_back(std::move(*next));
  }
  if (normalize(s.emitted) != gold) throw Error("parser", "NotDerivable", "oracle replay does not reproduce the gold set");
  return actions;
}

}  // namespace parser
}  // namespace ehrner
