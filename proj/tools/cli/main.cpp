// intercept-graph: command line front end for the layout engine.
//
// Exit codes: 0 success, 2 usage or input error, 1 internal error.

#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "http_bridge.hpp"
#include "intercept_graph.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInternal = 1;
constexpr int kExitInput = 2;

struct Failure {
  int code;
  std::string message;
};

int exit_code(ig_status status) { return status == IG_ERR_INTERNAL ? kExitInternal : kExitInput; }

void check(ig_status status, const std::string& context = {}) {
  if (status == IG_OK) return;
  std::string message = ig_last_error();
  if (!context.empty()) message = context + ": " + message;
  throw Failure{exit_code(status), message};
}

struct DatasetDeleter {
  void operator()(ig_dataset* d) const { ig_dataset_free(d); }
};
struct LayoutDeleter {
  void operator()(ig_layout* l) const { ig_layout_free(l); }
};
struct ServiceDeleter {
  void operator()(ig_service* s) const { ig_service_free(s); }
};
struct StringDeleter {
  void operator()(char* s) const { ig_string_free(s); }
};

using DatasetPtr = std::unique_ptr<ig_dataset, DatasetDeleter>;
using LayoutPtr = std::unique_ptr<ig_layout, LayoutDeleter>;
using ServicePtr = std::unique_ptr<ig_service, ServiceDeleter>;

std::string take(char* text, std::size_t size) {
  std::unique_ptr<char, StringDeleter> owned(text);
  return std::string(text, size);
}

struct InputOptions {
  std::string input;
  std::string transform = "identity";
  bool invertImprovement = false;
  std::string idColumn = "id";
  std::string initialColumn = "initial";
  std::string finalColumn = "final";
  std::string labelColumn;
};

struct ConfigOptions {
  double R = 360.0;
  std::optional<double> span;
  double width = 800.0;
  double height = 800.0;
  int ticks = 8;
  std::string labels = "residue";
  std::string riseColor;
  std::string dropColor;
  std::optional<std::size_t> topK;
  std::optional<std::size_t> kRise;
  std::optional<std::size_t> kDrop;
  std::optional<double> rRise;
  std::optional<double> rDrop;
  std::optional<double> rRiseFrac;
  std::optional<double> rDropFrac;
};

struct StyleOptions {
  double strokeWidth = 1.2;
  double residueStrokeWidth = 3.0;
  std::vector<std::string> highlight;
  bool colorByImprovement = false;
};

void add_input_options(CLI::App& cmd, InputOptions& in) {
  cmd.add_option("-i,--input", in.input, "Dataset file (.json or CSV)")->required();
  cmd.add_option("--transform", in.transform, "identity | rank-asc | rank-desc")
      ->check(CLI::IsMember({"identity", "rank-asc", "rank-desc"}));
  cmd.add_flag("--invert-improvement", in.invertImprovement,
               "A decrease counts as an improvement (e.g. ranks)");
  cmd.add_option("--id-col", in.idColumn, "CSV id column");
  cmd.add_option("--initial-col", in.initialColumn, "CSV initial-state column");
  cmd.add_option("--final-col", in.finalColumn, "CSV final-state column");
  cmd.add_option("--label-col", in.labelColumn, "CSV label column");
}

void add_config_options(CLI::App& cmd, ConfigOptions& cfg) {
  cmd.add_option("--radius", cfg.R, "Outer radius R in canvas units");
  cmd.add_option("--span", cfg.span, "Angular span of each semicircle in radians (0, pi]");
  cmd.add_option("--width", cfg.width, "Canvas width");
  cmd.add_option("--height", cfg.height, "Canvas height");
  cmd.add_option("--ticks", cfg.ticks, "Number of tick intervals");
  cmd.add_option("--labels", cfg.labels, "none | residue | all")
      ->check(CLI::IsMember({"none", "residue", "all"}));
  cmd.add_option("--rise-color", cfg.riseColor, "Rise side color");
  cmd.add_option("--drop-color", cfg.dropColor, "Drop side color");
  cmd.add_option("--top-k", cfg.topK, "Keep the k largest changes on each side");
  cmd.add_option("--k-rise", cfg.kRise, "Keep the k largest rises");
  cmd.add_option("--k-drop", cfg.kDrop, "Keep the k largest drops");
  cmd.add_option("--r-rise", cfg.rRise, "Rise inner radius in canvas units");
  cmd.add_option("--r-drop", cfg.rDrop, "Drop inner radius in canvas units");
  cmd.add_option("--r-rise-frac", cfg.rRiseFrac, "Rise inner radius as a fraction of R");
  cmd.add_option("--r-drop-frac", cfg.rDropFrac, "Drop inner radius as a fraction of R");
}

void add_style_options(CLI::App& cmd, StyleOptions& style) {
  cmd.add_option("--stroke-width", style.strokeWidth, "Segment stroke width");
  cmd.add_option("--residue-stroke-width", style.residueStrokeWidth, "Stroke width of the bold portion");
  cmd.add_option("--highlight", style.highlight, "Item ids to annotate")->delimiter(',');
  cmd.add_flag("--color-by-improvement", style.colorByImprovement,
               "Color improved items with the rise color");
}

DatasetPtr load(const InputOptions& in) {
  ig_csv_columns columns{in.idColumn.c_str(), in.initialColumn.c_str(), in.finalColumn.c_str(),
                         in.labelColumn.empty() ? nullptr : in.labelColumn.c_str()};
  ig_dataset* raw = nullptr;
  check(ig_dataset_load(in.input.c_str(), &columns, &raw), in.input);
  DatasetPtr dataset(raw);
  if (in.transform != "identity") {
    ig_dataset* ranked = nullptr;
    check(ig_dataset_transform(dataset.get(),
                               in.transform == "rank-asc" ? IG_TRANSFORM_RANK_ASC : IG_TRANSFORM_RANK_DESC,
                               &ranked));
    dataset.reset(ranked);
  }
  if (in.invertImprovement) check(ig_dataset_set_invert_improvement(dataset.get(), 1));
  return dataset;
}

void set_text(char* dest, std::size_t capacity, const std::string& text) {
  if (text.empty()) return;
  if (text.size() >= capacity) throw Failure{kExitInput, "color value too long: " + text};
  std::memcpy(dest, text.c_str(), text.size() + 1);
}

struct ResolvedConfig {
  ig_layout_config config;
  std::size_t kRise = 0;
  std::size_t kDrop = 0;
};

ResolvedConfig make_config(const ConfigOptions& cfg) {
  ResolvedConfig out{};
  ig_layout_config_default(&out.config);
  auto& c = out.config;
  c.outer_radius = cfg.R;
  c.r_rise = c.r_drop = cfg.R / 2.0;
  if (cfg.span) c.span = *cfg.span;
  c.canvas_width = cfg.width;
  c.canvas_height = cfg.height;
  c.tick_count = cfg.ticks;
  c.label_policy = cfg.labels == "none"  ? IG_LABELS_NONE
                   : cfg.labels == "all" ? IG_LABELS_ALL
                                         : IG_LABELS_RESIDUE_ONLY;
  set_text(c.rise_color, sizeof c.rise_color, cfg.riseColor);
  set_text(c.drop_color, sizeof c.drop_color, cfg.dropColor);

  auto side = [&](const char* name, std::optional<double> r, std::optional<double> frac,
                  std::optional<std::size_t> k, double& radius, std::size_t& kOut) {
    const int given = (r ? 1 : 0) + (frac ? 1 : 0) + (k ? 1 : 0);
    if (given > 1) {
      throw Failure{kExitInput, std::string("give at most one radius, fraction or k for the ") + name + " side"};
    }
    if (r) radius = *r;
    if (frac) radius = *frac * cfg.R;
    if (k) {
      if (*k == 0) throw Failure{kExitInput, std::string("k for the ") + name + " side must be at least 1"};
      kOut = *k;
    }
  };
  const auto kRise = cfg.kRise ? cfg.kRise : cfg.topK;
  const auto kDrop = cfg.kDrop ? cfg.kDrop : cfg.topK;
  side("rise", cfg.rRise, cfg.rRiseFrac, kRise, c.r_rise, out.kRise);
  side("drop", cfg.rDrop, cfg.rDropFrac, kDrop, c.r_drop, out.kDrop);
  return out;
}

LayoutPtr build(const ig_dataset* dataset, const ResolvedConfig& resolved) {
  ig_layout* raw = nullptr;
  check(ig_layout_build(dataset, &resolved.config, resolved.kRise, resolved.kDrop, &raw));
  return LayoutPtr(raw);
}

void write_output(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content;
    if (!content.empty() && content.back() != '\n') std::cout << '\n';
    std::cout.flush();
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw Failure{kExitInput, "cannot write '" + path + "'"};
  file << content;
  if (!file) throw Failure{kExitInput, "failed writing '" + path + "'"};
}

struct StyleHolder {
  ig_render_style style{};
  std::vector<const char*> ids;
};

void make_style(const StyleOptions& opts, const ConfigOptions& cfg, StyleHolder& holder) {
  ig_render_style_default(&holder.style);
  holder.style.stroke_width = opts.strokeWidth;
  holder.style.residue_stroke_width = opts.residueStrokeWidth;
  holder.style.color_by_improvement = opts.colorByImprovement ? 1 : 0;
  set_text(holder.style.rise_color, sizeof holder.style.rise_color, cfg.riseColor);
  set_text(holder.style.drop_color, sizeof holder.style.drop_color, cfg.dropColor);
  for (const auto& id : opts.highlight) holder.ids.push_back(id.c_str());
  holder.style.highlight_ids = holder.ids.data();
  holder.style.highlight_count = holder.ids.size();
}

std::pair<std::string, int> split_bind(const std::string& bind) {
  const auto colon = bind.rfind(':');
  if (colon == std::string::npos) throw Failure{kExitInput, "bind address must be host:port"};
  const std::string host = bind.substr(0, colon);
  int port = 0;
  try {
    std::size_t used = 0;
    port = std::stoi(bind.substr(colon + 1), &used);
    if (used != bind.size() - colon - 1) throw std::invalid_argument("port");
  } catch (const std::exception&) {
    throw Failure{kExitInput, "invalid port in bind address '" + bind + "'"};
  }
  if (port < 0 || port > 65535) throw Failure{kExitInput, "port out of range in '" + bind + "'"};
  return {host, port};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Intercept graph layout, rendering and comparison tool"};
  app.require_subcommand(1);

  InputOptions in;
  ConfigOptions cfg;
  StyleOptions styleOpts;
  std::string output = "-";

  auto* layoutCmd = app.add_subcommand("layout", "Write the layout protocol JSON");
  add_input_options(*layoutCmd, in);
  add_config_options(*layoutCmd, cfg);
  layoutCmd->add_option("-o,--output", output, "Output file (default stdout)");

  std::string chart = "intercept";
  auto* renderCmd = app.add_subcommand("render", "Render an SVG chart");
  add_input_options(*renderCmd, in);
  add_config_options(*renderCmd, cfg);
  add_style_options(*renderCmd, styleOpts);
  renderCmd->add_option("--chart", chart, "intercept | slope | grouped-bar | stacked-bar");
  renderCmd->add_option("-o,--output", output, "Output file (default stdout)");

  std::string idA;
  std::string idB;
  double targetPct = 0.0;
  auto* metricsCmd = app.add_subcommand("metrics", "Compare two items");
  add_input_options(*metricsCmd, in);
  add_config_options(*metricsCmd, cfg);
  metricsCmd->add_option("-a,--item-a", idA, "First item id")->required();
  metricsCmd->add_option("-b,--item-b", idB, "Second item id")->required();
  metricsCmd->add_option("--target-pct", targetPct,
                         "Shrink the inner radius until the intercepted lengths differ by this percentage");
  metricsCmd->add_option("-o,--output", output, "Output file (default stdout)");

  auto* topkCmd = app.add_subcommand("topk", "Resolve inner radii for top-k filtering");
  add_input_options(*topkCmd, in);
  add_config_options(*topkCmd, cfg);
  topkCmd->add_option("-o,--output", output, "Output file (default stdout)");

  std::string bind;
  std::string staticDir;
  auto* serveCmd = app.add_subcommand("serve", "Serve the layout API over HTTP");
  add_input_options(*serveCmd, in);
  add_config_options(*serveCmd, cfg);
  serveCmd->add_option("--bind", bind, "host:port (default $INTERCEPT_GRAPH_BIND or 127.0.0.1:7181)");
  serveCmd->add_option("--static-dir", staticDir, "Directory of viewer assets served at /");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }

  try {
    const DatasetPtr dataset = load(in);
    const ResolvedConfig resolved = make_config(cfg);

    if (*layoutCmd) {
      const auto layout = build(dataset.get(), resolved);
      char* json = nullptr;
      std::size_t size = 0;
      check(ig_layout_to_json(layout.get(), &json, &size));
      write_output(output, take(json, size));
    } else if (*renderCmd) {
      ig_chart type{};
      check(ig_chart_from_name(chart.c_str(), &type), "--chart");
      StyleHolder style;
      make_style(styleOpts, cfg, style);
      char* svg = nullptr;
      std::size_t size = 0;
      if (type == IG_CHART_INTERCEPT) {
        const auto layout = build(dataset.get(), resolved);
        check(ig_render_intercept_svg(layout.get(), &style.style, &svg, &size));
      } else {
        check(ig_render_chart_svg(dataset.get(), type, cfg.width, cfg.height, &style.style, &svg, &size));
      }
      write_output(output, take(svg, size));
    } else if (*metricsCmd) {
      ig_layout_config config = resolved.config;
      if (resolved.kRise > 0 || resolved.kDrop > 0) {
        const auto layout = build(dataset.get(), resolved);
        check(ig_layout_config_get(layout.get(), &config));
      }
      char* json = nullptr;
      std::size_t size = 0;
      check(ig_compare(dataset.get(), &config, idA.c_str(), idB.c_str(), targetPct, &json, &size));
      write_output(output, take(json, size));
    } else if (*topkCmd) {
      const auto layout = build(dataset.get(), resolved);
      for (std::size_t i = 0; i < ig_layout_warning_count(layout.get()); ++i) {
        std::cerr << "warning: " << ig_layout_warning(layout.get(), i) << '\n';
      }
      char* json = nullptr;
      std::size_t size = 0;
      check(ig_layout_topk_json(layout.get(), &json, &size));
      write_output(output, take(json, size));
    } else if (*serveCmd) {
      if (bind.empty()) {
        const char* env = std::getenv("INTERCEPT_GRAPH_BIND");
        bind = env && *env ? env : "127.0.0.1:7181";
      }
      const auto [host, port] = split_bind(bind);
      ig_service* raw = nullptr;
      check(ig_service_create(dataset.get(), &resolved.config, nullptr, &raw));
      const ServicePtr service(raw);

      httplib::Server server;
      if (!staticDir.empty() && !server.set_mount_point("/", staticDir)) {
        throw Failure{kExitInput, "static directory '" + staticDir + "' not found"};
      }
      intercept::cli::mount(server, service.get());
      const int bound = port == 0 ? server.bind_to_any_port(host) : (server.bind_to_port(host, port) ? port : -1);
      if (bound < 0) throw Failure{kExitInternal, "cannot bind " + bind};
      std::cout << "listening on http://" << host << ":" << bound << std::endl;
      if (!server.listen_after_bind()) throw Failure{kExitInternal, "server stopped unexpectedly"};
    }
  } catch (const Failure& failure) {
    std::cerr << "intercept-graph: " << failure.message << '\n';
    return failure.code;
  } catch (const std::exception& e) {
    std::cerr << "intercept-graph: internal error: " << e.what() << '\n';
    return kExitInternal;
  }
  return kExitOk;
}
