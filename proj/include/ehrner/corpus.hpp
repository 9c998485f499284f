#pragma once

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include <json.hpp>

#include "ehrner/error.hpp"
#include "ehrner/ontology.hpp"
#include "ehrner/text.hpp"

namespace ehrner {

struct Date {
  int year = 1970;
  unsigned month = 1;
  unsigned day = 1;

  static Date parse(std::string_view s) {
    auto bad = [&] { return Error("corpus", "BadDate", "expected YYYY-MM-DD, got '" + std::string(s) + "'"); };
    if (s.size() != 10 || s[4] != '-' || s[7] != '-') throw bad();
    for (std::size_t i : {0, 1, 2, 3, 5, 6, 8, 9}) {
      if (!text::is_digit(static_cast<char32_t>(s[i]))) throw bad();
    }
    Date d{std::stoi(std::string(s.substr(0, 4))), static_cast<unsigned>(std::stoi(std::string(s.substr(5, 2)))),
           static_cast<unsigned>(std::stoi(std::string(s.substr(8, 2))))};
    if (!d.ymd().ok()) throw bad();
    return d;
  }

  static Date from_days(std::chrono::sys_days days) {
    std::chrono::year_month_day ymd{days};
    return {static_cast<int>(ymd.year()), static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day())};
  }

  std::chrono::year_month_day ymd() const {
    return std::chrono::year{year} / std::chrono::month{month} / std::chrono::day{day};
  }

  std::string str() const {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", year, month, day);
    return buf;
  }

  auto operator<=>(const Date&) const = default;
};

enum class RecordType { daily_note, test_result, discharge_summary, medical_history };

inline constexpr std::array<RecordType, 4> all_record_types = {
    RecordType::daily_note, RecordType::test_result, RecordType::discharge_summary, RecordType::medical_history};

inline std::string_view to_string(RecordType r) {
  switch (r) {
    case RecordType::daily_note: return "daily_note";
    case RecordType::test_result: return "test_result";
    case RecordType::discharge_summary: return "discharge_summary";
    case RecordType::medical_history: return "medical_history";
  }
  return "daily_note";
}

inline RecordType parse_record_type(std::string_view s) {
  for (auto r : all_record_types) {
    if (to_string(r) == s) return r;
  }
  throw Error("corpus", "BadRecordType", "unknown record type '" + std::string(s) + "'");
}

struct Document {
  std::string id;
  std::string patient_id;
  Date date;
  RecordType record_type = RecordType::daily_note;
  std::string specialty;
  std::string text;

  bool operator==(const Document&) const = default;
};

// Half-open range of Unicode scalar-value offsets.
struct Span {
  std::size_t start = 0;
  std::size_t end = 0;

  std::size_t length() const { return end - start; }
  bool contains(const Span& o) const { return start <= o.start && o.end <= end; }
  bool overlaps(const Span& o) const { return start < o.end && o.start < end; }

  auto operator<=>(const Span&) const = default;
};

// Overlap without containment in either direction.
inline bool spans_cross(const Span& a, const Span& b) {
  return a.overlaps(b) && !a.contains(b) && !b.contains(a);
}

struct Mention {
  std::string id;
  Span span;
  std::string node_id;
  std::set<std::string> modifier_ids;
  std::string annotator_id;

  bool operator==(const Mention&) const = default;
};

struct AnnotationSet {
  std::string doc_id;
  std::string annotator_id;
  std::vector<Mention> mentions;

  const Mention* find(std::string_view mention_id) const {
    for (const auto& m : mentions) {
      if (m.id == mention_id) return &m;
    }
    return nullptr;
  }

  bool operator==(const AnnotationSet&) const = default;
};

struct AnnotatedDocument {
  Document doc;
  std::vector<AnnotationSet> annotations;

  const AnnotationSet* annotations_by(std::string_view annotator) const {
    for (const auto& s : annotations) {
      if (s.annotator_id == annotator) return &s;
    }
    return nullptr;
  }

  bool operator==(const AnnotatedDocument&) const = default;
};

using Corpus = std::vector<AnnotatedDocument>;

struct Token {
  Span span;
  std::string form;

  bool operator==(const Token&) const = default;
};

struct Tokenization {
  std::vector<Token> tokens;
  // Token-index ranges [first, second) of each sentence.
  std::vector<std::pair<std::size_t, std::size_t>> sentences;
};

// Letter/digit runs are tokens (a '.' between two digits stays inside the
// run); any other non-space character is a token on its own. Sentences end
// after '.', '!', '?' tokens and at newlines.
inline Tokenization tokenize(std::string_view input) {
  const auto cps = text::decode_utf8(input);
  const std::size_t n = cps.size();
  Tokenization out;
  std::vector<bool> newline_before;  // newline between token k-1 and k
  bool saw_newline = false;
  std::size_t i = 0;
  while (i < n) {
    const char32_t c = cps[i];
    if (text::is_space(c)) {
      if (c == U'\n' || c == 0x2028 || c == 0x2029 || c == 0x85) saw_newline = true;
      ++i;
      continue;
    }
    std::size_t j = i + 1;
    if (text::is_word_char(c)) {
      while (j < n) {
        if (text::is_word_char(cps[j])) {
          ++j;
        } else if (cps[j] == U'.' && text::is_digit(cps[j - 1]) && j + 1 < n && text::is_digit(cps[j + 1])) {
          j += 2;
        } else {
          break;
        }
      }
    }
    out.tokens.push_back({{i, j}, text::encode_utf8(std::u32string_view(cps).substr(i, j - i))});
    newline_before.push_back(saw_newline);
    saw_newline = false;
    i = j;
  }
  std::size_t begin = 0;
  for (std::size_t k = 0; k < out.tokens.size(); ++k) {
    const bool terminal = out.tokens[k].form == "." || out.tokens[k].form == "!" || out.tokens[k].form == "?";
    const bool newline_next = k + 1 < out.tokens.size() && newline_before[k + 1];
    if (terminal || newline_next || k + 1 == out.tokens.size()) {
      out.sentences.emplace_back(begin, k + 1);
      begin = k + 1;
    }
  }
  return out;
}

namespace corpus {

inline std::string next_mention_id(const AnnotationSet& set) {
  std::size_t n = set.mentions.size() + 1;
  while (true) {
    auto id = "m" + std::to_string(n);
    if (!set.find(id)) return id;
    ++n;
  }
}

inline void check_mention(const AnnotationSet& set, const Mention& m, const Ontology& ontology,
                          const std::u32string& text) {
  if (m.span.start >= m.span.end || m.span.end > text.size()) {
    throw Error("corpus", "OutOfBounds",
                "span [" + std::to_string(m.span.start) + "," + std::to_string(m.span.end) +
                    ") is empty or outside a text of length " + std::to_string(text.size()));
  }
  bool content = false;
  for (std::size_t i = m.span.start; i < m.span.end && !content; ++i) content = !text::is_space(text[i]);
  if (!content) throw Error("corpus", "EmptySpan", "span covers only whitespace");
  const auto node_it = ontology.nodes.find(m.node_id);
  if (node_it == ontology.nodes.end()) throw Error("corpus", "UnknownNode", "unknown ontology node '" + m.node_id + "'");
  for (const auto& mod : m.modifier_ids) {
    if (!node_it->second.modifier_ids.count(mod)) {
      throw Error("corpus", "InapplicableModifier",
                  "modifier '" + mod + "' does not apply to node '" + m.node_id + "'");
    }
  }
  for (const auto& other : set.mentions) {
    if (other.span == m.span && other.node_id == m.node_id) {
      throw Error("corpus", "DuplicateMention", "span already annotated with '" + m.node_id + "'");
    }
    if (!m.id.empty() && other.id == m.id) {
      throw Error("corpus", "DuplicateMention", "mention id '" + m.id + "' already in use");
    }
    if (spans_cross(other.span, m.span)) {
      throw Error("corpus", "CrossingSpan",
                  "span [" + std::to_string(m.span.start) + "," + std::to_string(m.span.end) + ") crosses mention '" +
                      other.id + "' at [" + std::to_string(other.span.start) + "," +
                      std::to_string(other.span.end) + ")");
    }
  }
}

// Returns `set` with `mention` appended, or throws with the rejection reason.
inline AnnotationSet add_mention(AnnotationSet set, Mention mention, const Ontology& ontology, const Document& doc) {
  if (set.doc_id.empty()) set.doc_id = doc.id;
  if (set.doc_id != doc.id) throw Error("corpus", "DocMismatch", "annotation set belongs to '" + set.doc_id + "'");
  if (mention.annotator_id.empty()) mention.annotator_id = set.annotator_id;
  if (mention.annotator_id != set.annotator_id) {
    throw Error("corpus", "AnnotatorMismatch", "mention annotator differs from the set's annotator");
  }
  check_mention(set, mention, ontology, text::decode_utf8(doc.text));
  if (mention.id.empty()) mention.id = next_mention_id(set);
  set.mentions.push_back(std::move(mention));
  return set;
}

struct SkippedOccurrence {
  Span span;
  std::string reason;  // error code, e.g. "CrossingSpan"
};

struct OccurrenceResult {
  AnnotationSet set;
  std::vector<Mention> added;
  std::vector<SkippedOccurrence> skipped;
};

// Annotates every case-sensitive, token-aligned occurrence of `surface`.
inline OccurrenceResult annotate_all_occurrences(AnnotationSet set, const Document& doc, std::string_view surface,
                                                 const std::string& node_id,
                                                 const std::set<std::string>& modifier_ids,
                                                 const Ontology& ontology) {
  if (surface.empty()) throw Error("corpus", "EmptySurface", "surface must not be empty");
  const auto text = text::decode_utf8(doc.text);
  const auto needle = text::decode_utf8(surface);
  const auto tokens = tokenize(doc.text).tokens;
  std::unordered_set<std::size_t> starts, ends;
  for (const auto& t : tokens) {
    starts.insert(t.span.start);
    ends.insert(t.span.end);
  }
  OccurrenceResult result{std::move(set), {}, {}};
  for (auto pos = text.find(needle); pos != std::u32string::npos; pos = text.find(needle, pos + 1)) {
    Span span{pos, pos + needle.size()};
    if (!starts.count(span.start) || !ends.count(span.end)) continue;
    Mention m{"", span, node_id, modifier_ids, result.set.annotator_id};
    try {
      result.set = add_mention(result.set, m, ontology, doc);  // copy: a rejection must not lose the set
      result.added.push_back(result.set.mentions.back());
    } catch (const Error& e) {
      result.skipped.push_back({span, e.code()});
    }
  }
  return result;
}

// Validates every annotation set against the mention invariants, replaying
// mentions through add_mention in stored order.
inline void validate_annotations(const AnnotatedDocument& d, const Ontology& ontology) {
  for (const auto& set : d.annotations) {
    AnnotationSet rebuilt{set.doc_id.empty() ? d.doc.id : set.doc_id, set.annotator_id, {}};
    for (const auto& m : set.mentions) {
      try {
        rebuilt = add_mention(std::move(rebuilt), m, ontology, d.doc);
      } catch (const Error& e) {
        throw Error("corpus", e.code(), "document '" + d.doc.id + "', annotator '" + set.annotator_id + "': " + e.what());
      }
    }
  }
}

// ---- dataset splitting ----

struct SplitRatios {
  double train = 0.899;
  double dev = 0.052;
  double test = 0.049;
};

struct DatasetSplit {
  Corpus train;
  Corpus dev;
  Corpus test;
};

// Uniform integer in [0, bound) via rejection sampling on mt19937_64 output;
// the standard distributions are not portable across library vendors.
inline std::uint64_t bounded(std::mt19937_64& rng, std::uint64_t bound) {
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % bound;
}

template <typename T>
void seeded_shuffle(std::vector<T>& items, std::mt19937_64& rng) {
  for (std::size_t i = items.size(); i > 1; --i) {
    std::swap(items[i - 1], items[bounded(rng, i)]);
  }
}

// Floor each share, then hand the remainder to the largest fractional parts
// (ties to the earlier split).
inline std::array<std::size_t, 3> split_sizes(std::size_t n, const SplitRatios& r) {
  const std::array<double, 3> ratios{r.train, r.dev, r.test};
  for (double x : ratios) {
    if (!(x > 0.0) || !std::isfinite(x)) throw Error("corpus", "BadRatios", "every split ratio must be positive");
  }
  if (std::abs(ratios[0] + ratios[1] + ratios[2] - 1.0) > 1e-9) {
    throw Error("corpus", "BadRatios", "split ratios must sum to 1");
  }
  std::array<std::size_t, 3> sizes{};
  std::array<double, 3> frac{};
  std::size_t used = 0;
  for (int i = 0; i < 3; ++i) {
    const double exact = ratios[i] * static_cast<double>(n);
    const double fl = std::floor(exact + 1e-9);
    sizes[i] = static_cast<std::size_t>(fl);
    frac[i] = std::max(0.0, exact - fl);
    used += sizes[i];
  }
  std::array<int, 3> order{0, 1, 2};
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return frac[a] > frac[b]; });
  for (std::size_t k = 0; used < n; ++k, ++used) ++sizes[order[k % 3]];
  return sizes;
}

inline DatasetSplit split_dataset(Corpus corpus, const SplitRatios& ratios, std::uint64_t seed) {
  const auto sizes = split_sizes(corpus.size(), ratios);
  std::mt19937_64 rng(seed);
  seeded_shuffle(corpus, rng);
  DatasetSplit out;
  auto it = std::make_move_iterator(corpus.begin());
  out.train.assign(it, it + static_cast<std::ptrdiff_t>(sizes[0]));
  it += static_cast<std::ptrdiff_t>(sizes[0]);
  out.dev.assign(it, it + static_cast<std::ptrdiff_t>(sizes[1]));
  it += static_cast<std::ptrdiff_t>(sizes[1]);
  out.test.assign(it, std::make_move_iterator(corpus.end()));
  return out;
}

struct SplitStats {
  std::string name;
  std::size_t documents = 0;
  std::size_t sentences = 0;
  std::size_t vocabulary = 0;
};

inline SplitStats split_stats(std::string name, const Corpus& c) {
  SplitStats s{std::move(name), c.size(), 0, 0};
  std::set<std::string> vocab;
  for (const auto& d : c) {
    auto tok = tokenize(d.doc.text);
    s.sentences += tok.sentences.size();
    for (auto& t : tok.tokens) vocab.insert(std::move(t.form));
  }
  s.vocabulary = vocab.size();
  return s;
}

inline std::vector<SplitStats> split_stats(const DatasetSplit& split) {
  return {split_stats("Train", split.train), split_stats("Dev", split.dev), split_stats("Test", split.test)};
}

inline std::string format_stats_table(const std::vector<SplitStats>& rows) {
  std::ostringstream os;
  char line[128];
  std::snprintf(line, sizeof line, "%-6s %10s %10s %10s\n", "Set", "documents", "vocabulary", "sentences");
  os << line;
  for (const auto& r : rows) {
    std::snprintf(line, sizeof line, "%-6s %10zu %10zu %10zu\n", r.name.c_str(), r.documents, r.vocabulary,
                  r.sentences);
    os << line;
  }
  return os.str();
}

// ---- corpus file format (JSON lines) ----

inline nlohmann::json to_json(const Document& d) {
  return {{"id", d.id},
          {"patient_id", d.patient_id},
          {"date", d.date.str()},
          {"record_type", std::string(to_string(d.record_type))},
          {"specialty", d.specialty},
          {"text", d.text}};
}

inline nlohmann::json to_json(const Mention& m) {
  return {{"id", m.id},
          {"start", m.span.start},
          {"end", m.span.end},
          {"node", m.node_id},
          {"modifiers", std::vector<std::string>(m.modifier_ids.begin(), m.modifier_ids.end())}};
}

inline nlohmann::json to_json(const AnnotatedDocument& d) {
  nlohmann::json sets = nlohmann::json::array();
  for (const auto& s : d.annotations) {
    nlohmann::json ms = nlohmann::json::array();
    for (const auto& m : s.mentions) ms.push_back(to_json(m));
    sets.push_back({{"annotator_id", s.annotator_id}, {"mentions", ms}});
  }
  return {{"doc", to_json(d.doc)}, {"annotations", sets}};
}

inline Document document_from_json(const nlohmann::json& j) {
  Document d;
  d.id = j.at("id").get<std::string>();
  d.patient_id = j.at("patient_id").get<std::string>();
  d.date = Date::parse(j.at("date").get<std::string>());
  d.record_type = parse_record_type(j.at("record_type").get<std::string>());
  d.specialty = j.at("specialty").get<std::string>();
  d.text = j.at("text").get<std::string>();
  if (d.text.empty()) throw Error("corpus", "ParseError", "document '" + d.id + "' has empty text");
  return d;
}

inline Mention mention_from_json(const nlohmann::json& j, const std::string& annotator) {
  Mention m;
  m.id = j.at("id").get<std::string>();
  m.span = {j.at("start").get<std::size_t>(), j.at("end").get<std::size_t>()};
  m.node_id = j.at("node").get<std::string>();
  for (const auto& x : j.value("modifiers", nlohmann::json::array())) m.modifier_ids.insert(x.get<std::string>());
  m.annotator_id = annotator;
  return m;
}

inline AnnotatedDocument annotated_document_from_json(const nlohmann::json& j) {
  AnnotatedDocument d;
  d.doc = document_from_json(j.at("doc"));
  for (const auto& s : j.value("annotations", nlohmann::json::array())) {
    AnnotationSet set{d.doc.id, s.at("annotator_id").get<std::string>(), {}};
    for (const auto& m : s.value("mentions", nlohmann::json::array())) {
      set.mentions.push_back(mention_from_json(m, set.annotator_id));
    }
    d.annotations.push_back(std::move(set));
  }
  return d;
}

inline Corpus read_corpus(std::istream& in) {
  Corpus out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (text::trim(line).empty()) continue;
    try {
      out.push_back(annotated_document_from_json(nlohmann::json::parse(line)));
    } catch (const nlohmann::json::exception& e) {
      throw Error("corpus", "ParseError", "line " + std::to_string(lineno) + ": " + e.what());
    } catch (const Error& e) {
      throw Error("corpus", "ParseError", "line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return out;
}

inline Corpus parse_corpus(std::string_view bytes) {
  std::istringstream in{std::string(bytes)};
  return read_corpus(in);
}

inline void write_corpus(std::ostream& out, const Corpus& c) {
  for (const auto& d : c) out << to_json(d).dump() << '\n';
}

inline std::string serialize_corpus(const Corpus& c) {
  std::ostringstream os;
  write_corpus(os, c);
  return os.str();
}

}  // namespace corpus
}  // namespace ehrner
