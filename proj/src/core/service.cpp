#include "service.hpp"

#include <charconv>
#include <cmath>
#include <map>
#include <optional>
#include <set>

#include <json.hpp>

#include "error.hpp"
#include "metrics.hpp"
#include "protocol.hpp"

namespace intercept {

namespace {

using nlohmann::ordered_json;

Response json_error(int status, const std::string& message) {
  Response response;
  response.status = status;
  response.body = ordered_json{{"error", message}}.dump();
  return response;
}

int status_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NotFound: return 404;
    case ErrorKind::Parse:
    case ErrorKind::Schema:
    case ErrorKind::Validation:
    case ErrorKind::Range:
    case ErrorKind::Argument:
    case ErrorKind::Layout:
    case ErrorKind::Render:
    case ErrorKind::UndefinedMeasure: return 400;
    case ErrorKind::Io: return 500;
  }
  return 500;
}

class Query {
 public:
  Query(const Request& request, std::set<std::string> allowed) {
    for (const auto& [key, value] : request.params) {
      if (!allowed.count(key)) fail(ErrorKind::Argument, "unknown query parameter '" + key + "'");
      if (values_.count(key)) fail(ErrorKind::Argument, "repeated query parameter '" + key + "'");
      values_.emplace(key, value);
    }
  }

  std::optional<std::string> text(const std::string& key) const {
    const auto it = values_.find(key);
    if (it == values_.end()) return std::nullopt;
    return it->second;
  }

  std::optional<double> real(const std::string& key) const {
    const auto value = text(key);
    if (!value) return std::nullopt;
    double out = 0.0;
    const auto* end = value->data() + value->size();
    auto [ptr, ec] = std::from_chars(value->data(), end, out);
    if (value->empty() || ec != std::errc() || ptr != end || !std::isfinite(out)) {
      fail(ErrorKind::Argument, key + " is not a number");
    }
    return out;
  }

  std::optional<std::size_t> count(const std::string& key) const {
    const auto value = text(key);
    if (!value) return std::nullopt;
    long long out = 0;
    const auto* end = value->data() + value->size();
    auto [ptr, ec] = std::from_chars(value->data(), end, out);
    if (value->empty() || ec != std::errc() || ptr != end) {
      fail(ErrorKind::Argument, key + " is not an integer");
    }
    if (out < 1) fail(ErrorKind::Argument, key + " must be at least 1");
    return static_cast<std::size_t>(out);
  }

 private:
  std::map<std::string, std::string> values_;
};

const std::set<std::string> kRadiusParams = {"rRise", "rDrop", "rRiseFrac", "rDropFrac",
                                             "kRise", "kDrop", "span"};

std::set<std::string> with(std::set<std::string> base, std::initializer_list<std::string> more) {
  base.insert(more);
  return base;
}

// Applies the span, radius, fraction and k parameters to `config`.
LayoutConfig configure(const Dataset& dataset, LayoutConfig config, const Query& query) {
  if (const auto span = query.real("span")) {
    if (!(*span > 0.0 && *span <= kPi)) fail(ErrorKind::Argument, "span out of range (0,pi]");
    config.span = *span;
  }
  std::optional<std::size_t> k[2];
  const char* names[2] = {"Rise", "Drop"};
  for (int s = 0; s < 2; ++s) {
    const std::string side = names[s];
    double& radius = s == 0 ? config.rRise : config.rDrop;
    const auto r = query.real("r" + side);
    const auto frac = query.real("r" + side + "Frac");
    k[s] = query.count("k" + side);
    if ((r ? 1 : 0) + (frac ? 1 : 0) + (k[s] ? 1 : 0) > 1) {
      fail(ErrorKind::Argument, "give at most one of r" + side + ", r" + side + "Frac, k" + side);
    }
    if (r) {
      if (!(*r >= 0.0 && *r <= config.R)) fail(ErrorKind::Argument, "r" + side + " out of range [0,R]");
      radius = *r;
    }
    if (frac) {
      if (!(*frac >= 0.0 && *frac <= 1.0)) {
        fail(ErrorKind::Argument, "r" + side + "Frac out of range [0,1]");
      }
      radius = *frac * config.R;
    }
  }
  if (k[0] || k[1]) config = resolve_topk(dataset, config, k[0], k[1]);
  return config;
}

}  // namespace

Service::Service(Dataset dataset, LayoutConfig base, RenderStyle style)
    : base_(std::move(base)), style_(std::move(style)) {
  validate(dataset);
  validate(base_);
  validate(style_);
  snapshot_ = std::make_shared<const Snapshot>(Snapshot{std::move(dataset), 1});
}

std::shared_ptr<const Service::Snapshot> Service::current() const {
  std::lock_guard lock(mutex_);
  return snapshot_;
}

std::uint64_t Service::version() const { return current()->version; }

void Service::replace_dataset(Dataset dataset) {
  validate(dataset);
  std::lock_guard lock(mutex_);
  snapshot_ = std::make_shared<const Snapshot>(Snapshot{std::move(dataset), snapshot_->version + 1});
}

Response Service::handle(const Request& request) {
  const auto snap = current();
  Response response;
  try {
    const bool get = request.method == "GET" || request.method == "HEAD";
    if (request.path == "/healthz") {
      if (!get) return json_error(405, "method not allowed");
      response.contentType = "text/plain";
      response.body = "ok\n";
    } else if (request.path == "/api/dataset") {
      if (request.method == "POST") return post_dataset(request);
      if (!get) return json_error(405, "method not allowed");
      response = get_dataset(*snap);
    } else if (request.path == "/api/layout") {
      if (!get) return json_error(405, "method not allowed");
      response = get_layout(*snap, request);
    } else if (request.path == "/api/render.svg") {
      if (!get) return json_error(405, "method not allowed");
      response = get_render(*snap, request);
    } else if (request.path == "/api/metrics") {
      if (!get) return json_error(405, "method not allowed");
      response = get_metrics(*snap, request);
    } else {
      response = json_error(404, "no such endpoint: " + request.path);
    }
  } catch (const Error& e) {
    response = json_error(status_for(e.kind()), e.what());
  } catch (const std::exception& e) {
    response = json_error(500, std::string("internal error: ") + e.what());
  }
  response.version = snap->version;
  return response;
}

Response Service::get_dataset(const Snapshot& snap) const {
  ordered_json doc;
  doc["version"] = snap.version;
  doc["dataset"] = ordered_json::parse(to_json(snap.dataset));
  Response response;
  response.body = doc.dump();
  return response;
}

Response Service::post_dataset(const Request& request) {
  try {
    replace_dataset(parse_json(request.body));
  } catch (const Error& e) {
    auto response = json_error(status_for(e.kind()), e.what());
    response.version = version();
    return response;
  }
  Response response;
  response.status = 204;
  response.contentType.clear();
  response.version = version();
  return response;
}

Response Service::get_layout(const Snapshot& snap, const Request& request) const {
  const Query query(request, kRadiusParams);
  const auto config = configure(snap.dataset, base_, query);
  Response response;
  response.body = layout_to_json(build_layout(snap.dataset, config), snap.version);
  return response;
}

Response Service::get_render(const Snapshot& snap, const Request& request) const {
  const Query query(request, with(kRadiusParams, {"chart", "highlight"}));
  const ChartType chart = chart_from_string(query.text("chart").value_or("intercept"));
  RenderStyle style = style_;
  if (const auto highlight = query.text("highlight")) {
    style.highlightIds.clear();
    std::size_t start = 0;
    while (start <= highlight->size()) {
      const auto comma = std::min(highlight->find(',', start), highlight->size());
      if (comma > start) style.highlightIds.push_back(highlight->substr(start, comma - start));
      start = comma + 1;
    }
  }
  const CanvasSize size{base_.canvasWidth, base_.canvasHeight};
  Response response;
  response.contentType = "image/svg+xml";
  switch (chart) {
    case ChartType::Intercept:
      response.body = render_intercept_svg(
          build_layout(snap.dataset, configure(snap.dataset, base_, query)), style);
      break;
    case ChartType::Slope: response.body = render_slope_svg(snap.dataset, size, style); break;
    case ChartType::GroupedBar: response.body = render_grouped_bar_svg(snap.dataset, size, style); break;
    case ChartType::StackedBar: response.body = render_stacked_bar_svg(snap.dataset, size, style); break;
  }
  return response;
}

Response Service::get_metrics(const Snapshot& snap, const Request& request) const {
  const Query query(request, with(kRadiusParams, {"a", "b", "targetPct"}));
  const auto a = query.text("a");
  const auto b = query.text("b");
  if (!a || !b) fail(ErrorKind::Argument, "metrics needs both a and b");
  const auto config = configure(snap.dataset, base_, query);
  const auto target = query.real("targetPct");
  Response response;
  response.body = report_to_json(target ? compare_at_target(snap.dataset, config, *a, *b, *target)
                                        : compare(snap.dataset, config, *a, *b));
  return response;
}

}  // namespace intercept
