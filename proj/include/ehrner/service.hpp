#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <fstream>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "ehrner/concept_index.hpp"
#include "ehrner/corpus.hpp"
#include "ehrner/model.hpp"
#include "ehrner/ontology.hpp"
#include "ehrner/text.hpp"

namespace ehrner {

struct ServiceConfig {
  std::string host = "127.0.0.1";
  int port = 8080;
  std::string corpus_path;
  std::string catalog_path;
  std::string model_path;  // optional
  std::string canonical_annotator = "gold";
  std::string auth_token;  // optional static bearer token
};

struct ApiRequest {
  std::string method;
  std::string path;
  std::map<std::string, std::string> query;
  std::map<std::string, std::string> headers;  // lower-case names
  std::string body;
};

struct ApiResponse {
  int status = 200;
  std::string body;
  std::map<std::string, std::string> headers;

  nlohmann::json json() const { return body.empty() ? nlohmann::json() : nlohmann::json::parse(body); }
};

inline std::string read_file(const std::string& path, const char* module) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(module, "IoError", "cannot read '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

// FNV-1a over the store bytes, as 16 hex digits.
inline std::string content_hash(std::string_view bytes) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

// Writes to a sibling temp file and renames it over `path`.
inline void atomic_write(const std::string& path, std::string_view bytes) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("service", "IoError", "cannot write '" + tmp + "'");
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    out.flush();
    if (!out) {
      std::error_code ec;
      std::filesystem::remove(tmp, ec);
      throw Error("service", "IoError", "short write to '" + tmp + "'");
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw Error("service", "IoError", "cannot replace '" + path + "'");
  }
}

class Service {
 public:
  struct Options {
    std::string corpus_path;  // empty: in-memory store
    std::string canonical_annotator = "gold";
    std::string auth_token;
  };

  Service(Ontology ontology, Corpus corpus, std::optional<Model> model, Options opts)
      : ontology_(std::move(ontology)), corpus_(std::move(corpus)), model_(std::move(model)), opts_(std::move(opts)) {
    if (auto v = ontology::validate(ontology_); !v.empty()) throw ontology::ValidationError(std::move(v));
    for (const auto& d : corpus_) corpus::validate_annotations(d, ontology_);
    if (model_) model::check_version(*model_, ontology_);
    for (std::size_t i = 0; i < corpus_.size(); ++i) by_id_[corpus_[i].doc.id] = i;
    index_ = std::make_shared<const ConceptIndex>(rebuild());
  }

  static Service from_config(const ServiceConfig& c) {
    auto ontology = ontology::load_catalog(read_file(c.catalog_path, "service"));
    auto corpus = corpus::parse_corpus(read_file(c.corpus_path, "service"));
    std::optional<Model> model;
    if (!c.model_path.empty()) {
      model = model::load_model(read_file(c.model_path, "service"), {ontology.version, false});
    }
    return Service(std::move(ontology), std::move(corpus), std::move(model),
                   {c.corpus_path, c.canonical_annotator, c.auth_token});
  }

  Service(Service&& o) noexcept
      : ontology_(std::move(o.ontology_)),
        corpus_(std::move(o.corpus_)),
        by_id_(std::move(o.by_id_)),
        model_(std::move(o.model_)),
        opts_(std::move(o.opts_)),
        index_(std::move(o.index_)),
        stale_(o.stale_) {}

  ApiResponse handle(const ApiRequest& req) {
    try {
      if (!opts_.auth_token.empty()) {
        auto it = req.headers.find("authorization");
        if (it == req.headers.end() || it->second != "Bearer " + opts_.auth_token) {
          return error(401, "Unauthorized", "missing or wrong bearer token");
        }
      }
      return route(req);
    } catch (const Error& e) {
      return error(status_for(e.code()), e.code(), e.what());
    } catch (const nlohmann::json::exception& e) {
      return error(400, "BadRequest", e.what());
    }
  }

  // Hash of the serialized store; equal to the file hash when file-backed.
  std::string store_hash() const {
    std::shared_lock lock(store_mutex_);
    return content_hash(corpus::serialize_corpus(corpus_));
  }

  bool index_stale() const {
    std::lock_guard lock(index_mutex_);
    return stale_;
  }

  std::shared_ptr<const ConceptIndex> index() const {
    std::lock_guard lock(index_mutex_);
    return index_;
  }

  const Ontology& ontology() const { return ontology_; }
  bool has_model() const { return model_.has_value(); }

 private:
  static int status_for(const std::string& code) {
    if (code == "NotFound") return 404;
    if (code == "NoModel") return 503;
    if (code == "IoError") return 500;
    if (code == "EmptyQuery" || code == "BadMode" || code == "BadRequest" || code == "EmptySurface") return 400;
    return 422;
  }

  static ApiResponse error(int status, const std::string& code, const std::string& detail) {
    return {status, nlohmann::json{{"error", code}, {"detail", detail}}.dump(), {{"Content-Type", "application/json"}}};
  }

  static ApiResponse ok(const nlohmann::json& j, int status = 200) {
    return {status, j.dump(), {{"Content-Type", "application/json"}}};
  }

  static std::vector<std::string> segments(const std::string& path) {
    std::vector<std::string> out;
    for (auto& s : text::split(path, '/')) {
      if (!s.empty()) out.push_back(std::move(s));
    }
    return out;
  }

  static std::string query_or(const ApiRequest& r, const std::string& k, std::string fallback = {}) {
    auto it = r.query.find(k);
    return it == r.query.end() ? fallback : it->second;
  }

  ApiResponse route(const ApiRequest& req) {
    const auto seg = segments(req.path);
    const auto& m = req.method;
    auto not_allowed = [&] { return error(405, "MethodNotAllowed", m + " not supported on " + req.path); };

    if (seg.size() == 1 && seg[0] == "catalog") return m == "GET" ? get_catalog(req) : not_allowed();
    if (seg.size() == 3 && seg[0] == "patients") {
      if (m != "GET") return not_allowed();
      if (seg[2] == "concepts") return get_concepts(seg[1]);
      if (seg[2] == "timeline") return get_timeline(seg[1], req);
      if (seg[2] == "texts") return get_texts(seg[1], req);
    }
    if (seg.size() == 2 && seg[0] == "documents") return m == "GET" ? get_document(seg[1]) : not_allowed();
    if (seg.size() == 3 && seg[0] == "documents" && seg[2] == "annotations") {
      return m == "POST" ? post_annotation(seg[1], req) : not_allowed();
    }
    if (seg.size() == 4 && seg[0] == "documents" && seg[2] == "annotations") {
      return m == "DELETE" ? delete_annotation(seg[1], seg[3]) : not_allowed();
    }
    if (seg.size() == 1 && seg[0] == "predict") return m == "POST" ? post_predict(req) : not_allowed();
    if (seg.size() == 2 && seg[0] == "admin" && seg[1] == "reindex") return m == "POST" ? reindex() : not_allowed();
    return error(404, "NotFound", "no route for " + req.path);
  }

  // ---- catalog ----

  nlohmann::json catalog_payload() const {
    using nlohmann::json;
    json mods = json::array();
    for (const auto& [id, mod] : ontology_.modifiers) {
      json scope = mod.universal ? json("universal") : json(std::vector<std::string>(mod.scope.begin(), mod.scope.end()));
      mods.push_back({{"id", id}, {"label", mod.label}, {"scope", scope}});
    }
    std::function<json(const std::string&)> subtree = [&](const std::string& id) {
      const auto& n = ontology_.node(id);
      json kids = json::array();
      for (const auto& c : ontology::children(ontology_, id)) kids.push_back(subtree(c));
      return json{{"id", n.id},
                  {"label", n.label},
                  {"level", n.level},
                  {"parents", n.parent_ids},
                  {"modifiers", std::vector<std::string>(n.modifier_ids.begin(), n.modifier_ids.end())},
                  {"children", kids}};
    };
    json roots = json::array();
    for (const auto& [id, n] : ontology_.nodes) {
      if (n.level == 1) roots.push_back(subtree(id));
    }
    return {{"version", ontology_.version}, {"modifiers", mods}, {"roots", roots}};
  }

  ApiResponse get_catalog(const ApiRequest& req) const {
    const std::string etag = "\"" + ontology_.version + "\"";
    auto it = req.headers.find("if-none-match");
    if (it != req.headers.end() && (it->second == etag || it->second == ontology_.version)) {
      return {304, "", {{"ETag", etag}}};
    }
    auto r = ok(catalog_payload());
    r.headers["ETag"] = etag;
    return r;
  }

  // ---- index queries ----

  ApiResponse get_concepts(const std::string& patient) const {
    auto idx = index();
    nlohmann::json out = nlohmann::json::array();
    for (const auto& c : index::concept_frequencies(*idx, patient, &ontology_)) out.push_back(index::to_json(c));
    return ok(out);
  }

  ApiResponse get_timeline(const std::string& patient, const ApiRequest& req) const {
    const auto node = query_or(req, "node");
    if (node.empty()) return error(400, "BadRequest", "query parameter 'node' is required");
    const bool desc = query_or(req, "descendants") == "true";
    auto idx = index();
    nlohmann::json out = nlohmann::json::array();
    for (const auto& c : index::timeline(*idx, patient, node, desc, &ontology_)) out.push_back(index::to_json(c));
    return ok(out);
  }

  ApiResponse get_texts(const std::string& patient, const ApiRequest& req) const {
    std::set<std::string> nodes;
    for (auto& n : text::split(query_or(req, "nodes"), ',')) {
      auto t = text::trim(n);
      if (!t.empty()) nodes.insert(t);
    }
    const auto mode_s = query_or(req, "mode", "any");
    if (mode_s != "any" && mode_s != "all") return error(400, "BadMode", "mode must be 'any' or 'all'");
    const bool desc = query_or(req, "descendants") == "true";
    auto idx = index();
    const auto r = index::texts_with_concepts(*idx, patient, nodes, parse_match_mode(mode_s), desc, &ontology_);
    return ok({{"count", r.count}, {"doc_ids", r.doc_ids}});
  }

  // ---- documents ----

  const AnnotatedDocument& doc_or_throw(const std::string& id) const {
    auto it = by_id_.find(id);
    if (it == by_id_.end()) throw Error("service", "NotFound", "unknown document '" + id + "'");
    return corpus_[it->second];
  }

  nlohmann::json document_payload(const AnnotatedDocument& d) const {
    nlohmann::json mentions = nlohmann::json::array();
    if (const auto* set = d.annotations_by(opts_.canonical_annotator)) {
      auto sorted = set->mentions;
      std::stable_sort(sorted.begin(), sorted.end(), [](const Mention& a, const Mention& b) {
        return std::make_tuple(a.span.start, b.span.end, a.node_id) <
               std::make_tuple(b.span.start, a.span.end, b.node_id);
      });
      for (const auto& m : sorted) mentions.push_back(corpus::to_json(m));
    }
    return {{"doc", corpus::to_json(d.doc)}, {"annotator_id", opts_.canonical_annotator}, {"mentions", mentions}};
  }

  ApiResponse get_document(const std::string& id) const {
    std::shared_lock lock(store_mutex_);
    return ok(document_payload(doc_or_throw(id)));
  }

  // Applies `edit` to a copy of the document, persists, then commits; on any
  // failure the in-memory store and the file are left untouched.
  template <typename Edit>
  auto mutate(const std::string& doc_id, Edit edit) {
    std::unique_lock lock(store_mutex_);
    const auto pos = by_id_.find(doc_id);
    if (pos == by_id_.end()) throw Error("service", "NotFound", "unknown document '" + doc_id + "'");
    AnnotatedDocument updated = corpus_[pos->second];
    auto result = edit(updated);
    std::swap(corpus_[pos->second], updated);
    if (!opts_.corpus_path.empty()) {
      try {
        atomic_write(opts_.corpus_path, corpus::serialize_corpus(corpus_));
      } catch (...) {
        std::swap(corpus_[pos->second], updated);
        throw;
      }
    }
    lock.unlock();
    std::lock_guard il(index_mutex_);
    stale_ = true;
    return result;
  }

  AnnotationSet& set_for(AnnotatedDocument& d, const std::string& annotator) {
    for (auto& s : d.annotations) {
      if (s.annotator_id == annotator) return s;
    }
    d.annotations.push_back({d.doc.id, annotator, {}});
    return d.annotations.back();
  }

  ApiResponse post_annotation(const std::string& doc_id, const ApiRequest& req) {
    nlohmann::json body;
    try {
      body = nlohmann::json::parse(req.body);
    } catch (const nlohmann::json::exception& e) {
      return error(400, "BadRequest", std::string("body is not JSON: ") + e.what());
    }
    if (!body.is_object()) return error(400, "BadRequest", "body must be an object");
    const auto annotator = body.value("annotator_id", opts_.canonical_annotator);
    std::set<std::string> mods;
    for (const auto& x : body.value("modifiers", nlohmann::json::array())) mods.insert(x.get<std::string>());
    const auto node = body.at("node").get<std::string>();

    if (body.value("all_occurrences", false)) {
      const auto surface = body.at("surface").get<std::string>();
      auto res = mutate(doc_id, [&](AnnotatedDocument& d) {
        auto& set = set_for(d, annotator);
        auto r = corpus::annotate_all_occurrences(set, d.doc, surface, node, mods, ontology_);
        set = r.set;
        return r;
      });
      nlohmann::json added = nlohmann::json::array(), skipped = nlohmann::json::array();
      for (const auto& m : res.added) added.push_back(corpus::to_json(m));
      for (const auto& s : res.skipped) skipped.push_back({{"start", s.span.start}, {"end", s.span.end}, {"reason", s.reason}});
      return ok({{"added", added}, {"skipped", skipped}}, 201);
    }

    Mention m;
    m.id = body.value("id", std::string());
    m.span = {body.at("start").get<std::size_t>(), body.at("end").get<std::size_t>()};
    m.node_id = node;
    m.modifier_ids = mods;
    m.annotator_id = annotator;
    auto stored = mutate(doc_id, [&](AnnotatedDocument& d) {
      auto& set = set_for(d, annotator);
      set = corpus::add_mention(set, m, ontology_, d.doc);
      return set.mentions.back();
    });
    return ok(corpus::to_json(stored), 201);
  }

  ApiResponse delete_annotation(const std::string& doc_id, const std::string& mention_id) {
    mutate(doc_id, [&](AnnotatedDocument& d) {
      for (auto& s : d.annotations) {
        if (s.annotator_id != opts_.canonical_annotator) continue;
        auto it = std::find_if(s.mentions.begin(), s.mentions.end(), [&](const Mention& x) { return x.id == mention_id; });
        if (it != s.mentions.end()) {
          s.mentions.erase(it);
          return 0;
        }
      }
      throw Error("service", "NotFound", "no mention '" + mention_id + "' in '" + doc_id + "'");
    });
    return {204, "", {}};
  }

  // ---- prediction and index maintenance ----

  ApiResponse post_predict(const ApiRequest& req) const {
    if (!model_) return error(503, "NoModel", "no model is loaded");
    nlohmann::json body;
    try {
      body = nlohmann::json::parse(req.body);
    } catch (const nlohmann::json::exception& e) {
      return error(400, "BadRequest", std::string("body is not JSON: ") + e.what());
    }
    if (!body.is_object() || !body.contains("text") || !body["text"].is_string()) {
      return error(400, "BadRequest", "body needs a string field 'text'");
    }
    const auto txt = body["text"].get<std::string>();
    const auto cps = text::decode_utf8(txt);
    nlohmann::json out = nlohmann::json::array();
    for (const auto& m : model::predict_text(*model_, txt, ontology_)) {
      auto j = corpus::to_json(m);
      j["text"] = text::encode_utf8(std::u32string_view(cps).substr(m.span.start, m.span.length()));
      out.push_back(j);
    }
    return ok({{"mentions", out}});
  }

  ConceptIndex rebuild() const {
    index::BuildOptions bo;
    bo.canonical_annotator = opts_.canonical_annotator;
    ConceptIndex idx;
    idx.source = IndexSource::gold;
    for (const auto& d : corpus_) {
      const auto* set = d.annotations_by(opts_.canonical_annotator);
      index::add_document(idx, d.doc, set ? set->mentions : std::vector<Mention>{});
    }
    index::finalize(idx);
    return idx;
  }

  ApiResponse reindex() {
    std::shared_ptr<const ConceptIndex> fresh;
    {
      std::shared_lock lock(store_mutex_);
      fresh = std::make_shared<const ConceptIndex>(rebuild());
    }
    {
      std::lock_guard il(index_mutex_);
      index_ = fresh;
      stale_ = false;
    }
    return ok({{"source", "gold"}, {"documents", fresh->documents.size()}, {"citations", fresh->citation_count()}});
  }

  Ontology ontology_;
  Corpus corpus_;
  std::map<std::string, std::size_t> by_id_;
  std::optional<Model> model_;
  Options opts_;
  mutable std::shared_mutex store_mutex_;
  mutable std::mutex index_mutex_;
  std::shared_ptr<const ConceptIndex> index_;
  bool stale_ = false;
};

}  // namespace ehrner
