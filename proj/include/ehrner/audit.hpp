#pragma once

#include <limits>
#include <regex>
#include <string>
#include <vector>

#include <json.hpp>

#include "ehrner/corpus.hpp"
#include "ehrner/text.hpp"

namespace ehrner {

// Restricted pattern syntax:
//   digits{N,}  digits{N,M}   maximal digit run with length in [N, M]
//   date:dmy                  d{1,2}[/.-]m{1,2}[/.-]yyyy
//   date:ymd                  yyyy[/.-]m{1,2}[/.-]d{1,2}
//   names                     any entry of the supplied name list
//                             (case- and diacritic-insensitive, whole tokens)
struct AuditRule {
  std::string id;
  std::string pattern;
};

struct Finding {
  Span span;
  std::string rule_id;
  std::string text;

  bool operator==(const Finding&) const = default;
};

namespace audit {

inline std::vector<AuditRule> default_rules() {
  return {{"long_digit_run", "digits{7,}"}, {"birth_date_dmy", "date:dmy"}, {"birth_date_ymd", "date:ymd"},
          {"name_list", "names"}};
}

inline std::vector<AuditRule> parse_rules(std::string_view json_text) {
  std::vector<AuditRule> out;
  try {
    for (const auto& r : nlohmann::json::parse(json_text)) {
      out.push_back({r.at("id").get<std::string>(), r.at("pattern").get<std::string>()});
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error("audit", "BadRules", std::string("audit rules: ") + e.what());
  }
  return out;
}

namespace detail {

inline bool parse_digit_bounds(const std::string& p, std::size_t& lo, std::size_t& hi) {
  if (!p.starts_with("digits{") || p.back() != '}') return false;
  auto body = p.substr(7, p.size() - 8);
  auto comma = body.find(',');
  try {
    if (comma == std::string::npos) {
      lo = hi = std::stoul(body);
    } else {
      lo = std::stoul(body.substr(0, comma));
      auto rest = body.substr(comma + 1);
      hi = rest.empty() ? std::numeric_limits<std::size_t>::max() : std::stoul(rest);
    }
  } catch (const std::logic_error&) {
    return false;
  }
  return lo >= 1 && lo <= hi;
}

}  // namespace detail

inline std::vector<Finding> pseudonymization_audit(const Document& doc, const std::vector<AuditRule>& rules,
                                                   const std::vector<std::string>& names = {}) {
  std::vector<Finding> out;
  const auto cps = text::decode_utf8(doc.text);
  auto emit = [&](std::size_t s, std::size_t e, const std::string& id) {
    out.push_back({{s, e}, id, text::encode_utf8(std::u32string_view(cps).substr(s, e - s))});
  };
  for (const auto& rule : rules) {
    std::size_t lo = 0, hi = 0;
    if (detail::parse_digit_bounds(rule.pattern, lo, hi)) {
      std::size_t i = 0;
      while (i < cps.size()) {
        if (!text::is_digit(cps[i])) {
          ++i;
          continue;
        }
        std::size_t j = i;
        while (j < cps.size() && text::is_digit(cps[j])) ++j;
        if (j - i >= lo && j - i <= hi) emit(i, j, rule.id);
        i = j;
      }
    } else if (rule.pattern == "date:dmy" || rule.pattern == "date:ymd") {
      // ASCII-only pattern over a code-point string mapped back to ASCII
      std::string ascii;
      for (char32_t c : cps) ascii.push_back(c < 0x80 ? static_cast<char>(c) : '\x01');
      static const std::regex dmy(R"((^|[^0-9])([0-9]{1,2}[/.-][0-9]{1,2}[/.-][0-9]{4})(?![0-9]))");
      static const std::regex ymd(R"((^|[^0-9])([0-9]{4}[/.-][0-9]{1,2}[/.-][0-9]{1,2})(?![0-9]))");
      const auto& re = rule.pattern == "date:dmy" ? dmy : ymd;
      for (auto it = std::sregex_iterator(ascii.begin(), ascii.end(), re); it != std::sregex_iterator(); ++it) {
        const auto s = static_cast<std::size_t>(it->position(2));
        emit(s, s + static_cast<std::size_t>(it->length(2)), rule.id);
      }
    } else if (rule.pattern == "names") {
      const auto tokens = tokenize(doc.text).tokens;
      std::vector<std::string> folded;
      for (const auto& t : tokens) folded.push_back(text::fold(t.form));
      for (const auto& name : names) {
        std::vector<std::string> parts;
        for (const auto& t : tokenize(name).tokens) parts.push_back(text::fold(t.form));
        if (parts.empty()) continue;
        for (std::size_t i = 0; i + parts.size() <= folded.size(); ++i) {
          if (std::equal(parts.begin(), parts.end(), folded.begin() + static_cast<std::ptrdiff_t>(i))) {
            emit(tokens[i].span.start, tokens[i + parts.size() - 1].span.end, rule.id);
          }
        }
      }
    } else {
      throw Error("audit", "BadRules", "unsupported audit pattern '" + rule.pattern + "'");
    }
  }
  std::sort(out.begin(), out.end(), [](const Finding& a, const Finding& b) {
    return std::tie(a.span, a.rule_id) < std::tie(b.span, b.rule_id);
  });
  return out;
}

}  // namespace audit
}  // namespace ehrner
