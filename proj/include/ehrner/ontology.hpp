#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include <json.hpp>

#include "ehrner/error.hpp"
#include "ehrner/text.hpp"

namespace ehrner {

struct OntologyNode {
  std::string id;
  std::string label;
  int level = 1;
  std::vector<std::string> parent_ids;
  // Resolved applicability: universal modifiers plus those scoped to any
  // level-1 ancestor (or to the node itself when it is level 1).
  std::set<std::string> modifier_ids;

  bool operator==(const OntologyNode&) const = default;
};

struct Modifier {
  std::string id;
  std::string label;
  bool universal = false;
  std::set<std::string> scope;  // level-1 node ids; empty when universal

  bool operator==(const Modifier&) const = default;
};

struct Ontology {
  std::string version;
  std::map<std::string, OntologyNode> nodes;
  std::map<std::string, Modifier> modifiers;

  bool contains(std::string_view id) const { return nodes.find(std::string(id)) != nodes.end(); }

  const OntologyNode& node(std::string_view id) const {
    auto it = nodes.find(std::string(id));
    if (it == nodes.end()) throw Error("ontology", "UnknownNode", "unknown ontology node '" + std::string(id) + "'");
    return it->second;
  }

  bool operator==(const Ontology&) const = default;
};

struct Violation {
  std::string subject;  // node or modifier id
  std::string rule;
  std::string detail;

  bool operator==(const Violation&) const = default;
};

namespace ontology {

// The thirteen modifiers every catalog must define.
inline const std::set<std::string>& required_modifiers() {
  static const std::set<std::string> ids = {
      "negation", "plan", "acute", "chronic", "worsened", "probable_possible", "normal",
      "augmented", "diminished", "beginning", "suspension", "ongoing", "past"};
  return ids;
}

inline const std::set<std::string>& intervention_only_modifiers() {
  static const std::set<std::string> ids = {"beginning", "suspension", "ongoing", "past"};
  return ids;
}

inline std::set<std::string> ancestors(const Ontology& o, std::string_view node_id) {
  const auto& start = o.node(node_id);
  std::set<std::string> seen;
  std::vector<const OntologyNode*> todo{&start};
  while (!todo.empty()) {
    const auto* n = todo.back();
    todo.pop_back();
    for (const auto& p : n->parent_ids) {
      if (p == start.id || !seen.insert(p).second) continue;
      auto it = o.nodes.find(p);
      if (it != o.nodes.end()) todo.push_back(&it->second);
    }
  }
  return seen;
}

inline std::set<std::string> descendants(const Ontology& o, std::string_view node_id) {
  o.node(node_id);
  std::set<std::string> out;
  for (const auto& [id, n] : o.nodes) {
    if (id == node_id) continue;
    auto anc = ancestors(o, id);
    if (anc.count(std::string(node_id))) out.insert(id);
  }
  return out;
}

// Level-1 classes a node belongs to; itself when it is level 1.
inline std::set<std::string> level1_ancestors(const Ontology& o, std::string_view node_id) {
  const auto& n = o.node(node_id);
  if (n.level == 1) return {n.id};
  std::set<std::string> out;
  for (const auto& a : ancestors(o, node_id)) {
    auto it = o.nodes.find(a);
    if (it != o.nodes.end() && it->second.level == 1) out.insert(a);
  }
  return out;
}

inline std::set<std::string> applicable_modifiers(const Ontology& o, std::string_view node_id) {
  const auto roots = level1_ancestors(o, node_id);
  std::set<std::string> out;
  for (const auto& [id, m] : o.modifiers) {
    if (m.universal) {
      out.insert(id);
      continue;
    }
    for (const auto& r : roots) {
      if (m.scope.count(r)) {
        out.insert(id);
        break;
      }
    }
  }
  return out;
}

namespace detail {

inline bool valid_node_id(std::string_view id) {
  if (id.empty() || id.front() == '/' || id.back() == '/') return false;
  char prev = 0;
  for (char c : id) {
    bool ok = (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_' || c == '/';
    if (!ok || (c == '/' && prev == '/')) return false;
    prev = c;
  }
  return true;
}

}  // namespace detail

// Returns every broken invariant, sorted by subject then rule name.
inline std::vector<Violation> validate(const Ontology& o) {
  std::vector<Violation> out;
  auto add = [&](const std::string& subject, std::string rule, std::string detail) {
    out.push_back({subject, std::move(rule), std::move(detail)});
  };

  for (const auto& [id, n] : o.nodes) {
    if (!detail::valid_node_id(id)) add(id, "invalid id", "node ids are lowercase ASCII segments separated by '/'");
    if (n.level < 1 || n.level > 3) {
      add(id, "level out of range", "level " + std::to_string(n.level) + " is outside 1..3");
    }
    if (n.level == 1 && !n.parent_ids.empty()) add(id, "level-1 has parents", "level-1 nodes cannot have parents");
    if (n.level > 1 && n.parent_ids.empty()) add(id, "missing parents", "nodes below level 1 need at least one parent");
    bool mismatch = false;
    for (const auto& p : n.parent_ids) {
      auto it = o.nodes.find(p);
      if (it == o.nodes.end()) {
        add(id, "unknown parent", "parent '" + p + "' is not defined");
      } else if (it->second.level != n.level - 1) {
        mismatch = true;
      }
    }
    if (mismatch) add(id, "parent level mismatch", "every parent must sit exactly one level above");
  }

  // Cycles: iterative three-colour DFS over parent edges.
  std::map<std::string, int> colour;
  std::set<std::string> on_cycle;
  for (const auto& [root, unused] : o.nodes) {
    if (colour[root] != 0) continue;
    std::vector<std::pair<std::string, std::size_t>> stack{{root, 0}};
    colour[root] = 1;
    while (!stack.empty()) {
      auto& [cur, next] = stack.back();
      const auto& parents = o.nodes.at(cur).parent_ids;
      if (next < parents.size()) {
        const auto p = parents[next++];
        if (!o.nodes.count(p)) continue;
        if (colour[p] == 1) {
          // everything on the stack from p upwards is on a cycle
          bool inside = false;
          for (const auto& [sid, unused2] : stack) {
            if (sid == p) inside = true;
            if (inside) on_cycle.insert(sid);
          }
        } else if (colour[p] == 0) {
          colour[p] = 1;
          stack.emplace_back(p, 0);
        }
      } else {
        colour[cur] = 2;
        stack.pop_back();
      }
    }
  }
  for (const auto& id : on_cycle) add(id, "cycle", "node is its own ancestor");

  // Reachability from level-1 roots along child edges.
  std::map<std::string, std::vector<std::string>> children;
  for (const auto& [id, n] : o.nodes) {
    for (const auto& p : n.parent_ids) children[p].push_back(id);
  }
  std::set<std::string> reached;
  std::vector<std::string> todo;
  for (const auto& [id, n] : o.nodes) {
    if (n.level == 1 && n.parent_ids.empty()) {
      reached.insert(id);
      todo.push_back(id);
    }
  }
  while (!todo.empty()) {
    auto cur = todo.back();
    todo.pop_back();
    for (const auto& c : children[cur]) {
      if (reached.insert(c).second) todo.push_back(c);
    }
  }
  for (const auto& [id, n] : o.nodes) {
    if (!reached.count(id)) add(id, "unreachable", "no path from a level-1 node");
  }

  const auto& required = required_modifiers();
  for (const auto& r : required) {
    if (!o.modifiers.count(r)) add(r, "missing modifier", "the modifier catalog must define '" + r + "'");
  }
  for (const auto& [id, m] : o.modifiers) {
    if (!required.count(id)) add(id, "unexpected modifier", "not part of the modifier catalog");
    if (!m.universal && m.scope.empty()) add(id, "empty scope", "scoped modifiers need at least one level-1 node");
    for (const auto& s : m.scope) {
      auto it = o.nodes.find(s);
      if (it == o.nodes.end()) {
        add(id, "unknown scope node", "scope node '" + s + "' is not defined");
      } else if (it->second.level != 1) {
        add(id, "scope not level-1", "scope node '" + s + "' is not a level-1 node");
      }
    }
    if (id == "negation" && !m.universal) add(id, "negation not universal", "negation applies to every class");
    if (intervention_only_modifiers().count(id) &&
        (m.universal || m.scope != std::set<std::string>{"interventions"})) {
      add(id, "intervention-only scope", "'" + id + "' is restricted to interventions");
    }
  }

  std::sort(out.begin(), out.end(), [](const Violation& a, const Violation& b) {
    return std::tie(a.subject, a.rule) < std::tie(b.subject, b.rule);
  });
  out.erase(std::unique(out.begin(), out.end(),
                        [](const Violation& a, const Violation& b) {
                          return a.subject == b.subject && a.rule == b.rule;
                        }),
            out.end());
  return out;
}

class ValidationError : public Error {
 public:
  explicit ValidationError(std::vector<Violation> violations)
      : Error("ontology", "ValidationError", summarize(violations)), violations_(std::move(violations)) {}

  const std::vector<Violation>& violations() const noexcept { return violations_; }

 private:
  static std::string summarize(const std::vector<Violation>& v) {
    std::string s = std::to_string(v.size()) + " violation(s)";
    for (std::size_t i = 0; i < v.size() && i < 5; ++i) s += "; " + v[i].subject + ": " + v[i].rule;
    return s;
  }

  std::vector<Violation> violations_;
};

inline void resolve_modifiers(Ontology& o) {
  for (auto& [id, n] : o.nodes) n.modifier_ids = applicable_modifiers(o, id);
}

// Parses a catalog document, validates it, and resolves modifier applicability.
inline Ontology load_catalog(std::string_view bytes) {
  using nlohmann::json;
  json doc;
  try {
    doc = json::parse(bytes);
  } catch (const json::parse_error& e) {
    throw Error("ontology", "ParseError", std::string("catalog is not valid JSON: ") + e.what());
  }
  auto need = [](bool ok, const std::string& what) {
    if (!ok) throw Error("ontology", "ParseError", "malformed catalog: " + what);
  };
  need(doc.is_object(), "top level must be an object");
  need(doc.contains("version") && doc["version"].is_string(), "missing string 'version'");
  need(doc.contains("modifiers") && doc["modifiers"].is_array(), "missing array 'modifiers'");
  need(doc.contains("nodes") && doc["nodes"].is_array(), "missing array 'nodes'");

  Ontology o;
  o.version = doc["version"].get<std::string>();
  std::vector<Violation> dupes;
  for (const auto& m : doc["modifiers"]) {
    need(m.is_object() && m.contains("id") && m["id"].is_string(), "modifier without string 'id'");
    Modifier mod;
    mod.id = m["id"].get<std::string>();
    mod.label = m.value("label", mod.id);
    need(m.contains("scope"), "modifier '" + mod.id + "' without 'scope'");
    const auto& scope = m["scope"];
    if (scope.is_string()) {
      need(scope.get<std::string>() == "universal", "modifier scope must be \"universal\" or a list");
      mod.universal = true;
    } else {
      need(scope.is_array(), "modifier scope must be \"universal\" or a list");
      for (const auto& s : scope) {
        need(s.is_string(), "scope entries must be strings");
        mod.scope.insert(s.get<std::string>());
      }
    }
    if (o.modifiers.count(mod.id)) dupes.push_back({mod.id, "duplicate id", "modifier defined twice"});
    o.modifiers[mod.id] = std::move(mod);
  }
  for (const auto& n : doc["nodes"]) {
    need(n.is_object() && n.contains("id") && n["id"].is_string(), "node without string 'id'");
    OntologyNode node;
    node.id = n["id"].get<std::string>();
    need(n.contains("level") && n["level"].is_number_integer(), "node '" + node.id + "' without integer 'level'");
    node.label = n.value("label", node.id);
    node.level = n["level"].get<int>();
    if (n.contains("parents")) {
      need(n["parents"].is_array(), "node '" + node.id + "' parents must be a list");
      for (const auto& p : n["parents"]) {
        need(p.is_string(), "parent ids must be strings");
        node.parent_ids.push_back(p.get<std::string>());
      }
    }
    if (o.nodes.count(node.id)) dupes.push_back({node.id, "duplicate id", "node defined twice"});
    o.nodes[node.id] = std::move(node);
  }

  auto violations = validate(o);
  violations.insert(violations.end(), dupes.begin(), dupes.end());
  if (!violations.empty()) {
    std::sort(violations.begin(), violations.end(), [](const Violation& a, const Violation& b) {
      return std::tie(a.subject, a.rule) < std::tie(b.subject, b.rule);
    });
    throw ValidationError(std::move(violations));
  }
  resolve_modifiers(o);
  return o;
}

inline nlohmann::json to_json(const Ontology& o) {
  using nlohmann::json;
  json mods = json::array();
  for (const auto& [id, m] : o.modifiers) {
    json scope = m.universal ? json("universal") : json(std::vector<std::string>(m.scope.begin(), m.scope.end()));
    mods.push_back({{"id", id}, {"label", m.label}, {"scope", scope}});
  }
  json nodes = json::array();
  for (const auto& [id, n] : o.nodes) {
    nodes.push_back({{"id", id}, {"label", n.label}, {"level", n.level}, {"parents", n.parent_ids}});
  }
  return {{"version", o.version}, {"modifiers", mods}, {"nodes", nodes}};
}

inline std::string serialize_catalog(const Ontology& o) { return to_json(o).dump(2) + "\n"; }

// Case- and diacritic-insensitive lookup. Exact label (or id leaf) matches
// rank first, then prefix matches, then substrings of label or id.
inline std::vector<std::string> search(const Ontology& o, std::string_view query) {
  const auto q = text::fold(text::trim(query));
  if (q.empty()) return {};
  std::vector<std::pair<int, std::string>> hits;
  for (const auto& [id, n] : o.nodes) {
    const auto label = text::fold(n.label);
    const auto leaf = id.substr(id.rfind('/') == std::string::npos ? 0 : id.rfind('/') + 1);
    int rank = -1;
    if (label == q || leaf == q) {
      rank = 0;
    } else if (label.starts_with(q) || leaf.starts_with(q)) {
      rank = 1;
    } else if (label.find(q) != std::string::npos || id.find(q) != std::string::npos) {
      rank = 2;
    }
    if (rank >= 0) hits.emplace_back(rank, id);
  }
  std::sort(hits.begin(), hits.end());
  std::vector<std::string> out;
  out.reserve(hits.size());
  for (auto& h : hits) out.push_back(std::move(h.second));
  return out;
}

inline std::vector<std::string> children(const Ontology& o, std::string_view node_id) {
  std::vector<std::string> out;
  for (const auto& [id, n] : o.nodes) {
    if (std::find(n.parent_ids.begin(), n.parent_ids.end(), node_id) != n.parent_ids.end()) out.push_back(id);
  }
  return out;
}

}  // namespace ontology
}  // namespace ehrner
