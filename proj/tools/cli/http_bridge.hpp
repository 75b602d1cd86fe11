#pragma once

// Mounts the layout service routes on a cpp-httplib server. Shared by the
// CLI `serve` command and the HTTP integration tests.

#include <string>
#include <vector>

#include <httplib.h>

#include "intercept_graph.h"

namespace intercept::cli {

inline void forward(ig_service* service, const httplib::Request& req, httplib::Response& res) {
  std::vector<const char*> keys;
  std::vector<const char*> values;
  for (const auto& [key, value] : req.params) {
    keys.push_back(key.c_str());
    values.push_back(value.c_str());
  }
  ig_response out{};
  const ig_status status =
      ig_service_handle(service, req.method.c_str(), req.path.c_str(), keys.data(), values.data(),
                        keys.size(), req.body.data(), req.body.size(), &out);
  if (status != IG_OK) {
    res.status = 500;
    res.set_content(std::string("{\"error\":\"internal error\"}"), "application/json");
    return;
  }
  res.status = out.status;
  res.set_header("X-Snapshot-Version", std::to_string(out.version));
  if (out.status != 204) res.set_content(std::string(out.body, out.body_size), out.content_type);
  ig_response_free(&out);
}

// SO_REUSEADDR only; the library default of SO_REUSEPORT would let a second
// server bind a port that is already in use.
inline void exclusive_socket_options(socket_t sock) {
  int yes = 1;
#ifdef _WIN32
  setsockopt(sock, SOL_SOCKET, SO_EXCLUSIVEADDRUSE, reinterpret_cast<const char*>(&yes), sizeof(yes));
#else
  setsockopt(sock, SOL_SOCKET, SO_REUSEADDR, reinterpret_cast<const void*>(&yes), sizeof(yes));
#endif
}

inline void mount(httplib::Server& server, ig_service* service) {
  server.set_socket_options(exclusive_socket_options);
  auto handler = [service](const httplib::Request& req, httplib::Response& res) {
    forward(service, req, res);
  };
  server.Get(".*", handler);
  server.Post(".*", handler);
}

}  // namespace intercept::cli
