#pragma once

#include <cctype>
#include <string>

#include <httplib.h>

#include "ehrner/service.hpp"

namespace ehrner {

inline ApiRequest to_api_request(const httplib::Request& r) {
  ApiRequest out{r.method, r.path, {}, {}, r.body};
  for (const auto& [k, v] : r.params) out.query.emplace(k, v);
  for (const auto& [k, v] : r.headers) {
    std::string lower = k;
    for (auto& c : lower) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    out.headers.emplace(lower, v);
  }
  return out;
}

inline void bind_routes(httplib::Server& server, Service& service) {
  auto handler = [&service](const httplib::Request& req, httplib::Response& res) {
    const auto r = service.handle(to_api_request(req));
    res.status = r.status;
    std::string type = "application/json";
    for (const auto& [k, v] : r.headers) {
      if (k == "Content-Type") {
        type = v;
      } else {
        res.set_header(k, v);
      }
    }
    if (!r.body.empty()) res.set_content(r.body, type);
  };
  server.Get(".*", handler);
  server.Post(".*", handler);
  server.Delete(".*", handler);
  server.Put(".*", handler);
}

// Blocks until the server stops.
inline bool serve(Service& service, const std::string& host, int port) {
  httplib::Server server;
  bind_routes(server, service);
  return server.listen(host, port);
}

}  // namespace ehrner
