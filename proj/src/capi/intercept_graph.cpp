#include "intercept_graph.h"

#include <cstdlib>
#include <cstring>
#include <fstream>
#include <new>
#include <sstream>
#include <string>

#include "error.hpp"
#include "geometry.hpp"
#include "layout.hpp"
#include "metrics.hpp"
#include "model.hpp"
#include "protocol.hpp"
#include "render.hpp"
#include "service.hpp"

struct ig_dataset {
  intercept::Dataset dataset;
};

struct ig_layout {
  intercept::Layout layout;
};

struct ig_service {
  ig_service(intercept::Dataset dataset, intercept::LayoutConfig config, intercept::RenderStyle style)
      : service(std::move(dataset), std::move(config), std::move(style)) {}
  intercept::Service service;
};

namespace {

thread_local std::string last_error;

ig_status status_of(intercept::ErrorKind kind) {
  using intercept::ErrorKind;
  switch (kind) {
    case ErrorKind::Parse: return IG_ERR_PARSE;
    case ErrorKind::Schema: return IG_ERR_SCHEMA;
    case ErrorKind::Validation: return IG_ERR_VALIDATION;
    case ErrorKind::Range: return IG_ERR_RANGE;
    case ErrorKind::Argument: return IG_ERR_ARGUMENT;
    case ErrorKind::Layout: return IG_ERR_LAYOUT;
    case ErrorKind::Render: return IG_ERR_RENDER;
    case ErrorKind::NotFound: return IG_ERR_NOT_FOUND;
    case ErrorKind::UndefinedMeasure: return IG_ERR_UNDEFINED;
    case ErrorKind::Io: return IG_ERR_IO;
  }
  return IG_ERR_INTERNAL;
}

// Runs `body`, translating exceptions into status codes.
template <typename Fn>
ig_status guarded(Fn&& body) {
  last_error.clear();
  try {
    body();
    return IG_OK;
  } catch (const intercept::Error& e) {
    last_error = e.what();
    return status_of(e.kind());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
  } catch (const std::exception& e) {
    last_error = e.what();
  } catch (...) {
    last_error = "unknown error";
  }
  return IG_ERR_INTERNAL;
}

void require(const void* pointer, const char* name) {
  if (!pointer) intercept::fail(intercept::ErrorKind::Argument, std::string(name) + " is null");
}

char* duplicate(const std::string& text) {
  auto* out = static_cast<char*>(std::malloc(text.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, text.data(), text.size());
  out[text.size()] = '\0';
  return out;
}

void emit(const std::string& text, char** out, size_t* size) {
  require(out, "out");
  *out = duplicate(text);
  if (size) *size = text.size();
}

template <std::size_t N>
void copy_text(char (&dest)[N], const std::string& text) {
  const std::size_t n = std::min(text.size(), N - 1);
  std::memcpy(dest, text.data(), n);
  dest[n] = '\0';
}

template <std::size_t N>
std::string bounded(const char (&text)[N]) {
  return std::string(text, strnlen(text, N));
}

intercept::CsvColumns columns_of(const ig_csv_columns* columns) {
  intercept::CsvColumns out;
  if (!columns) return out;
  if (columns->id) out.id = columns->id;
  if (columns->initial) out.initial = columns->initial;
  if (columns->final) out.final = columns->final;
  if (columns->label) out.label = columns->label;
  return out;
}

intercept::LayoutConfig config_of(const ig_layout_config* config) {
  intercept::LayoutConfig out;
  if (!config) return out;
  out.R = config->outer_radius;
  out.rRise = config->r_rise;
  out.rDrop = config->r_drop;
  out.span = config->span;
  out.canvasWidth = config->canvas_width;
  out.canvasHeight = config->canvas_height;
  out.tickCount = config->tick_count;
  switch (config->label_policy) {
    case IG_LABELS_NONE: out.labelPolicy = intercept::LabelPolicy::None; break;
    case IG_LABELS_RESIDUE_ONLY: out.labelPolicy = intercept::LabelPolicy::ResidueOnly; break;
    case IG_LABELS_ALL: out.labelPolicy = intercept::LabelPolicy::All; break;
    default: intercept::fail(intercept::ErrorKind::Argument, "unknown label policy");
  }
  out.riseColor = bounded(config->rise_color);
  out.dropColor = bounded(config->drop_color);
  out.residueHighlightColor = bounded(config->residue_color);
  return out;
}

void export_config(const intercept::LayoutConfig& config, ig_layout_config* out) {
  out->outer_radius = config.R;
  out->r_rise = config.rRise;
  out->r_drop = config.rDrop;
  out->span = config.span;
  out->canvas_width = config.canvasWidth;
  out->canvas_height = config.canvasHeight;
  out->tick_count = config.tickCount;
  switch (config.labelPolicy) {
    case intercept::LabelPolicy::None: out->label_policy = IG_LABELS_NONE; break;
    case intercept::LabelPolicy::ResidueOnly: out->label_policy = IG_LABELS_RESIDUE_ONLY; break;
    case intercept::LabelPolicy::All: out->label_policy = IG_LABELS_ALL; break;
  }
  copy_text(out->rise_color, config.riseColor);
  copy_text(out->drop_color, config.dropColor);
  copy_text(out->residue_color, config.residueHighlightColor);
}

intercept::RenderStyle style_of(const ig_render_style* style) {
  intercept::RenderStyle out;
  if (!style) return out;
  out.strokeWidth = style->stroke_width;
  out.residueStrokeWidth = style->residue_stroke_width;
  out.fontSize = style->font_size;
  out.fontFamily = bounded(style->font_family);
  out.background = bounded(style->background);
  out.riseColor = bounded(style->rise_color);
  out.dropColor = bounded(style->drop_color);
  out.colorByImprovement = style->color_by_improvement != 0;
  if (style->highlight_count > 0) require(style->highlight_ids, "highlight_ids");
  for (size_t i = 0; i < style->highlight_count; ++i) {
    require(style->highlight_ids[i], "highlight id");
    out.highlightIds.emplace_back(style->highlight_ids[i]);
  }
  return out;
}

ig_trend trend_of(intercept::Trend trend) {
  switch (trend) {
    case intercept::Trend::Rise: return IG_TREND_RISE;
    case intercept::Trend::Drop: return IG_TREND_DROP;
    case intercept::Trend::Flat: return IG_TREND_FLAT;
  }
  return IG_TREND_FLAT;
}

std::optional<std::size_t> k_of(size_t k) {
  return k == 0 ? std::nullopt : std::optional<std::size_t>(k);
}

}  // namespace

extern "C" {

const char* ig_version(void) { return "1.0.0"; }

const char* ig_last_error(void) { return last_error.c_str(); }

void ig_string_free(char* text) { std::free(text); }

ig_status ig_dataset_parse_csv(const char* data, size_t size, const ig_csv_columns* columns,
                               ig_dataset** out) {
  return guarded([&] {
    require(data, "data");
    require(out, "out");
    *out = new ig_dataset{intercept::parse_csv({data, size}, columns_of(columns))};
  });
}

ig_status ig_dataset_parse_json(const char* data, size_t size, ig_dataset** out) {
  return guarded([&] {
    require(data, "data");
    require(out, "out");
    *out = new ig_dataset{intercept::parse_json({data, size})};
  });
}

ig_status ig_dataset_load(const char* path, const ig_csv_columns* columns, ig_dataset** out) {
  return guarded([&] {
    require(path, "path");
    require(out, "out");
    std::ifstream file(path, std::ios::binary);
    if (!file) intercept::fail(intercept::ErrorKind::Io, std::string("cannot open '") + path + "'");
    std::ostringstream buffer;
    buffer << file.rdbuf();
    const std::string text = buffer.str();
    const std::string name(path);
    const bool json = name.size() >= 5 && name.compare(name.size() - 5, 5, ".json") == 0;
    *out = new ig_dataset{json ? intercept::parse_json(text)
                               : intercept::parse_csv(text, columns_of(columns))};
  });
}

ig_status ig_dataset_transform(const ig_dataset* dataset, ig_transform transform, ig_dataset** out) {
  return guarded([&] {
    require(dataset, "dataset");
    require(out, "out");
    switch (transform) {
      case IG_TRANSFORM_IDENTITY: *out = new ig_dataset{dataset->dataset}; break;
      case IG_TRANSFORM_RANK_ASC:
        *out = new ig_dataset{intercept::apply_rank_transform(
            dataset->dataset, intercept::Transform::RankAscending)};
        break;
      case IG_TRANSFORM_RANK_DESC:
        *out = new ig_dataset{intercept::apply_rank_transform(
            dataset->dataset, intercept::Transform::RankDescending)};
        break;
      default: intercept::fail(intercept::ErrorKind::Argument, "unknown transform");
    }
  });
}

ig_status ig_dataset_set_invert_improvement(ig_dataset* dataset, int invert) {
  return guarded([&] {
    require(dataset, "dataset");
    dataset->dataset.invertImprovement = invert != 0;
  });
}

ig_status ig_dataset_to_json(const ig_dataset* dataset, char** out, size_t* size) {
  return guarded([&] {
    require(dataset, "dataset");
    emit(intercept::to_json(dataset->dataset), out, size);
  });
}

size_t ig_dataset_size(const ig_dataset* dataset) {
  return dataset ? dataset->dataset.items.size() : 0;
}

ig_status ig_dataset_item(const ig_dataset* dataset, size_t index, ig_item* out) {
  return guarded([&] {
    require(dataset, "dataset");
    require(out, "out");
    if (index >= dataset->dataset.items.size()) {
      intercept::fail(intercept::ErrorKind::Argument, "item index out of range");
    }
    const auto& item = dataset->dataset.items[index];
    *out = {item.id.c_str(), item.label.c_str(), item.initial, item.final, item.delta(),
            trend_of(item.trend())};
  });
}

void ig_dataset_free(ig_dataset* dataset) { delete dataset; }

ig_status ig_value_to_angle(double value, double vmin, double vmax, double span, double* out) {
  return guarded([&] {
    require(out, "out");
    *out = intercept::value_to_angle(value, intercept::AxisScale(vmin, vmax, span));
  });
}

ig_status ig_chord_length(double r, double R, double theta, double* out) {
  return guarded([&] {
    require(out, "out");
    *out = intercept::chord_length(r, R, theta);
  });
}

ig_status ig_is_residue(double r, double R, double theta, int* out) {
  return guarded([&] {
    require(out, "out");
    *out = intercept::is_residue(r, R, theta) ? 1 : 0;
  });
}

ig_status ig_intercepted_length(double r, double R, double theta, double* length, double* param) {
  return guarded([&] {
    require(length, "length");
    const auto cut = intercept::intercepted_length(r, R, theta);
    *length = cut.length;
    if (param) *param = cut.parameter;
  });
}

ig_status ig_topk_radius(const double* thetas, size_t count, size_t k, double R, double* radius,
                         int* exact, size_t* residue_count) {
  return guarded([&] {
    if (count > 0) require(thetas, "thetas");
    require(radius, "radius");
    const auto solved = intercept::topk_radius({thetas, count}, k, R);
    *radius = solved.radius;
    if (exact) *exact = solved.exact ? 1 : 0;
    if (residue_count) *residue_count = solved.residueCount;
  });
}

void ig_layout_config_default(ig_layout_config* config) {
  if (config) export_config(intercept::LayoutConfig{}, config);
}

ig_status ig_layout_build(const ig_dataset* dataset, const ig_layout_config* config, size_t k_rise,
                          size_t k_drop, ig_layout** out) {
  return guarded([&] {
    require(dataset, "dataset");
    require(out, "out");
    auto resolved = config_of(config);
    if (k_rise > 0 || k_drop > 0) {
      resolved = intercept::resolve_topk(dataset->dataset, resolved, k_of(k_rise), k_of(k_drop));
    }
    *out = new ig_layout{intercept::build_layout(dataset->dataset, resolved)};
  });
}

ig_status ig_layout_to_json(const ig_layout* layout, char** out, size_t* size) {
  return guarded([&] {
    require(layout, "layout");
    emit(intercept::layout_to_json(layout->layout), out, size);
  });
}

ig_status ig_layout_topk_json(const ig_layout* layout, char** out, size_t* size) {
  return guarded([&] {
    require(layout, "layout");
    emit(intercept::topk_to_json(layout->layout.config, layout->layout), out, size);
  });
}

ig_status ig_layout_config_get(const ig_layout* layout, ig_layout_config* out) {
  return guarded([&] {
    require(layout, "layout");
    require(out, "out");
    export_config(layout->layout.config, out);
  });
}

size_t ig_layout_item_count(const ig_layout* layout) {
  return layout ? layout->layout.items.size() : 0;
}

ig_status ig_layout_item(const ig_layout* layout, size_t index, ig_item_layout* out) {
  return guarded([&] {
    require(layout, "layout");
    require(out, "out");
    if (index >= layout->layout.items.size()) {
      intercept::fail(intercept::ErrorKind::Argument, "item index out of range");
    }
    const auto& item = layout->layout.items[index];
    const auto& g = item.geometry;
    *out = {item.id.c_str(),
            item.label.c_str(),
            item.side == intercept::Side::Rise ? IG_SIDE_RISE : IG_SIDE_DROP,
            item.initial,
            item.final,
            item.delta,
            g.theta,
            g.phiInitial,
            g.phiFinal,
            g.A.x, g.A.y,
            g.B.x, g.B.y,
            g.P.x, g.P.y,
            g.chord,
            g.intercepted,
            g.interceptParam,
            g.residue ? 1 : 0};
  });
}

size_t ig_layout_residue_count(const ig_layout* layout, ig_side side) {
  if (!layout) return 0;
  return layout->layout.residue_count(side == IG_SIDE_RISE ? intercept::Side::Rise
                                                           : intercept::Side::Drop);
}

size_t ig_layout_warning_count(const ig_layout* layout) {
  return layout ? layout->layout.config.warnings.size() : 0;
}

const char* ig_layout_warning(const ig_layout* layout, size_t index) {
  if (!layout || index >= layout->layout.config.warnings.size()) return nullptr;
  return layout->layout.config.warnings[index].c_str();
}

void ig_layout_free(ig_layout* layout) { delete layout; }

ig_status ig_percentage_difference(double a, double b, double* out) {
  return guarded([&] {
    require(out, "out");
    *out = intercept::percentage_difference(a, b);
  });
}

ig_status ig_magnification_solve(double theta_small, double theta_large, double R, double target_pct,
                                 double* radius) {
  return guarded([&] {
    require(radius, "radius");
    *radius = intercept::magnification_solve(theta_small, theta_large, R, target_pct);
  });
}

ig_status ig_compare(const ig_dataset* dataset, const ig_layout_config* config, const char* id_a,
                     const char* id_b, double target_pct, char** out, size_t* size) {
  return guarded([&] {
    require(dataset, "dataset");
    require(id_a, "id_a");
    require(id_b, "id_b");
    const auto resolved = config_of(config);
    const auto report = target_pct > 0.0
                            ? intercept::compare_at_target(dataset->dataset, resolved, id_a, id_b, target_pct)
                            : intercept::compare(dataset->dataset, resolved, id_a, id_b);
    emit(intercept::report_to_json(report), out, size);
  });
}

void ig_render_style_default(ig_render_style* style) {
  if (!style) return;
  const intercept::RenderStyle defaults;
  style->stroke_width = defaults.strokeWidth;
  style->residue_stroke_width = defaults.residueStrokeWidth;
  style->font_size = defaults.fontSize;
  copy_text(style->font_family, defaults.fontFamily);
  copy_text(style->background, defaults.background);
  copy_text(style->rise_color, defaults.riseColor);
  copy_text(style->drop_color, defaults.dropColor);
  style->color_by_improvement = 0;
  style->highlight_ids = nullptr;
  style->highlight_count = 0;
}

ig_status ig_render_intercept_svg(const ig_layout* layout, const ig_render_style* style, char** out,
                                  size_t* size) {
  return guarded([&] {
    require(layout, "layout");
    emit(intercept::render_intercept_svg(layout->layout, style_of(style)), out, size);
  });
}

ig_status ig_render_chart_svg(const ig_dataset* dataset, ig_chart chart, double width, double height,
                              const ig_render_style* style, char** out, size_t* size) {
  return guarded([&] {
    require(dataset, "dataset");
    const intercept::CanvasSize canvas{width, height};
    const auto resolved = style_of(style);
    switch (chart) {
      case IG_CHART_SLOPE:
        emit(intercept::render_slope_svg(dataset->dataset, canvas, resolved), out, size);
        break;
      case IG_CHART_GROUPED_BAR:
        emit(intercept::render_grouped_bar_svg(dataset->dataset, canvas, resolved), out, size);
        break;
      case IG_CHART_STACKED_BAR:
        emit(intercept::render_stacked_bar_svg(dataset->dataset, canvas, resolved), out, size);
        break;
      default:
        intercept::fail(intercept::ErrorKind::Argument,
                        "ig_render_chart_svg draws baseline charts; use ig_render_intercept_svg");
    }
  });
}

ig_status ig_chart_from_name(const char* name, ig_chart* out) {
  return guarded([&] {
    require(name, "name");
    require(out, "out");
    switch (intercept::chart_from_string(name)) {
      case intercept::ChartType::Intercept: *out = IG_CHART_INTERCEPT; break;
      case intercept::ChartType::Slope: *out = IG_CHART_SLOPE; break;
      case intercept::ChartType::GroupedBar: *out = IG_CHART_GROUPED_BAR; break;
      case intercept::ChartType::StackedBar: *out = IG_CHART_STACKED_BAR; break;
    }
  });
}

ig_status ig_service_create(const ig_dataset* dataset, const ig_layout_config* config,
                            const ig_render_style* style, ig_service** out) {
  return guarded([&] {
    require(dataset, "dataset");
    require(out, "out");
    *out = new ig_service(dataset->dataset, config_of(config), style_of(style));
  });
}

ig_status ig_service_handle(ig_service* service, const char* method, const char* path,
                            const char* const* keys, const char* const* values, size_t param_count,
                            const char* body, size_t body_size, ig_response* out) {
  return guarded([&] {
    require(service, "service");
    require(method, "method");
    require(path, "path");
    require(out, "out");
    intercept::Request request;
    request.method = method;
    request.path = path;
    if (param_count > 0) {
      require(keys, "keys");
      require(values, "values");
    }
    for (size_t i = 0; i < param_count; ++i) {
      require(keys[i], "key");
      require(values[i], "value");
      request.params.emplace_back(keys[i], values[i]);
    }
    if (body) request.body.assign(body, body_size);
    const auto response = service->service.handle(request);
    out->status = response.status;
    out->content_type = duplicate(response.contentType);
    out->body = duplicate(response.body);
    out->body_size = response.body.size();
    out->version = response.version;
  });
}

void ig_response_free(ig_response* response) {
  if (!response) return;
  std::free(response->content_type);
  std::free(response->body);
  response->content_type = nullptr;
  response->body = nullptr;
  response->body_size = 0;
}

uint64_t ig_service_version(const ig_service* service) {
  return service ? service->service.version() : 0;
}

void ig_service_free(ig_service* service) { delete service; }

}  // extern "C"
