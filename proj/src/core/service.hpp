#pragma once

#include <cstdint>
#include <memory>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include "layout.hpp"
#include "model.hpp"
#include "render.hpp"

namespace intercept {

struct Request {
  std::string method;
  std::string path;
  std::vector<std::pair<std::string, std::string>> params;
  std::string body;
};

struct Response {
  int status = 200;
  std::string contentType = "application/json";
  std::string body;
  std::uint64_t version = 0;
};

// Routes the layout endpoints against an immutable dataset snapshot.
// Requests copy the current snapshot pointer and never see a partially
// replaced dataset; POST /api/dataset swaps it and bumps the version.
class Service {
 public:
  Service(Dataset dataset, LayoutConfig base, RenderStyle style = {});

  Response handle(const Request& request);

  void replace_dataset(Dataset dataset);
  std::uint64_t version() const;

 private:
  struct Snapshot {
    Dataset dataset;
    std::uint64_t version;
  };

  std::shared_ptr<const Snapshot> current() const;

  Response get_dataset(const Snapshot& snap) const;
  Response post_dataset(const Request& request);
  Response get_layout(const Snapshot& snap, const Request& request) const;
  Response get_render(const Snapshot& snap, const Request& request) const;
  Response get_metrics(const Snapshot& snap, const Request& request) const;

  LayoutConfig base_;
  RenderStyle style_;
  mutable std::mutex mutex_;
  std::shared_ptr<const Snapshot> snapshot_;
};

}  // namespace intercept
