#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "ehrner/corpus.hpp"
#include "ehrner/transition.hpp"

namespace ehrner {

// One parser input: a sentence (or a run of sentences joined because a
// gold mention spans them) with token-aligned gold mentions.
struct SentenceInstance {
  std::string doc_id;
  std::vector<Token> tokens;  // character spans are document offsets
  std::vector<LabeledRange> gold;
  std::map<LabeledRange, std::set<std::string>> gold_modifiers;
};

struct PreparedCorpus {
  std::vector<SentenceInstance> instances;
  std::vector<std::string> warnings;
};

namespace instances {

// Smallest token range covering a character span; nullopt when the span
// touches no token.
inline std::optional<TokenRange> snap_to_tokens(const std::vector<Token>& tokens, const Span& span) {
  std::optional<std::size_t> first;
  std::size_t last = 0;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (tokens[i].span.end > span.start && tokens[i].span.start < span.end) {
      if (!first) first = i;
      last = i;
    }
  }
  if (!first) return std::nullopt;
  return TokenRange{*first, last + 1};
}

inline Span char_span(const std::vector<Token>& tokens, const TokenRange& r) {
  return {tokens[r.begin].span.start, tokens[r.end - 1].span.end};
}

// Builds parser instances for one document from the mentions of one
// annotator (or none, yielding instances without gold).
inline void prepare_document(const Document& doc, const AnnotationSet* set, PreparedCorpus& out) {
  const auto tok = tokenize(doc.text);
  if (tok.tokens.empty()) return;

  struct Gold {
    TokenRange range;
    const Mention* mention;
  };
  std::vector<Gold> golds;
  if (set) {
    for (const auto& m : set->mentions) {
      auto r = snap_to_tokens(tok.tokens, m.span);
      if (!r) {
        out.warnings.push_back(doc.id + ": mention '" + m.id + "' covers no token; dropped");
        continue;
      }
      if (char_span(tok.tokens, *r) != m.span) {
        out.warnings.push_back(doc.id + ": mention '" + m.id + "' snapped outward to token boundaries");
      }
      golds.push_back({*r, &m});
    }
  }

  // Join sentences that a gold range straddles.
  std::vector<std::pair<std::size_t, std::size_t>> groups;
  for (const auto& s : tok.sentences) {
    if (!groups.empty()) {
      bool straddle = false;
      for (const auto& g : golds) {
        if (g.range.begin < groups.back().second && g.range.end > groups.back().second) straddle = true;
      }
      if (straddle) {
        groups.back().second = s.second;
        continue;
      }
    }
    groups.push_back(s);
  }

  for (const auto& [first, last] : groups) {
    SentenceInstance inst;
    inst.doc_id = doc.id;
    inst.tokens.assign(tok.tokens.begin() + static_cast<std::ptrdiff_t>(first),
                       tok.tokens.begin() + static_cast<std::ptrdiff_t>(last));
    for (const auto& g : golds) {
      if (g.range.begin < first || g.range.end > last) continue;
      LabeledRange lr{{g.range.begin - first, g.range.end - first}, g.mention->node_id};
      bool crossing = false;
      for (const auto& existing : inst.gold) {
        if (existing.range.crosses(lr.range)) crossing = true;
      }
      if (crossing) {
        out.warnings.push_back(doc.id + ": mention '" + g.mention->id + "' crosses another after snapping; dropped");
        continue;
      }
      auto [it, fresh] = inst.gold_modifiers.try_emplace(lr, g.mention->modifier_ids);
      if (fresh) {
        inst.gold.push_back(lr);
      } else {
        it->second.insert(g.mention->modifier_ids.begin(), g.mention->modifier_ids.end());
      }
    }
    std::sort(inst.gold.begin(), inst.gold.end());
    out.instances.push_back(std::move(inst));
  }
}

inline PreparedCorpus prepare(const Corpus& corpus, const std::string& annotator) {
  PreparedCorpus out;
  for (const auto& d : corpus) {
    const AnnotationSet* set = annotator.empty() ? (d.annotations.empty() ? nullptr : &d.annotations.front())
                                                 : d.annotations_by(annotator);
    prepare_document(d.doc, set, out);
  }
  return out;
}

}  // namespace instances
}  // namespace ehrner
