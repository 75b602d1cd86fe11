// Acceptance gate. Prints one PASS/FAIL line per criterion; with a
// criterion name as the only argument, runs just that one. Exit status is
// nonzero when any selected criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "format.hpp"
#include "geometry.hpp"
#include "layout.hpp"
#include "metrics.hpp"
#include "model.hpp"
#include "oracles.hpp"
#include "protocol.hpp"
#include "render.hpp"

using namespace intercept;

namespace {

// Tolerances.
constexpr double kChordTol = 1e-9;          // times R
constexpr double kRatioTol = 1e-12;         // relative
constexpr double kInterceptTol = 1e-9;      // times R
constexpr double kChordBudgetSec = 1.0;
constexpr double kTopkBudgetSec = 5.0;
constexpr double kScaleBudgetSec = 0.100;
constexpr double kPctTolerance = 0.1;       // for the 100.9 / 123.4 pair

struct Outcome {
  bool pass = true;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(const char* format, double a, double b = 0, double c = 0) {
  char buffer[256];
  std::snprintf(buffer, sizeof buffer, format, a, b, c);
  return buffer;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

Dataset synthetic_ranked() {
  return apply_rank_transform(parse_csv(slurp(std::string(IG_DATA_DIR) + "/synthetic_ppg.csv")),
                              Transform::RankDescending);
}

Outcome chord_oracle() {
  std::mt19937_64 rng(1001);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const auto start = Clock::now();
  double worst = 0.0;
  int failures = 0;
  for (int i = 0; i < 1000; ++i) {
    const double R = 1e3 * unit(rng) + 1e-9;
    const double r = R * unit(rng);
    const double theta = kPi * unit(rng);
    // endpoints placed by the kernel on a unit value range
    const AxisScale scale(0.0, 1.0, kPi);
    const double initial = 0.0;
    const double final = theta / kPi;
    const auto g = item_geometry(initial, final, Side::Rise, r, R, scale);
    const double c = chord_length(r, R, theta);
    const double kernelEnds = std::hypot(g.B.x - g.A.x, g.B.y - g.A.y);
    const double oracleEnds = oracle::endpoint_distance(r, R, theta);
    const double err = std::max(std::abs(c - kernelEnds), std::abs(c - oracleEnds)) / R;
    worst = std::max(worst, err);
    if (err > kChordTol) ++failures;
  }
  const double elapsed = seconds_since(start);
  Outcome out;
  out.pass = failures == 0 && elapsed < kChordBudgetSec;
  out.detail = fmt("1000 cases, worst error %.3g*R, %.3f s", worst, elapsed);
  return out;
}

Outcome angle_ratio() {
  Dataset d;
  d.items = {make_item("A", "", 33, 35), make_item("B", "", 37, 40)};
  const Layout layout = build_layout(d, LayoutConfig{});
  const double ratio = layout.find("B")->geometry.theta / layout.find("A")->geometry.theta;
  const double rel = std::abs(ratio - 1.5) / 1.5;
  return {rel <= kRatioTol, fmt("ratio %.17g, relative error %.3g", ratio, rel)};
}

Outcome intercepted_oracle() {
  std::mt19937_64 rng(1002);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double worst = 0.0;
  int failures = 0;
  auto check = [&](double r, double R, double theta, double expected) {
    const double err = std::abs(intercepted_length(r, R, theta).length - expected) / R;
    worst = std::max(worst, err);
    if (err > kInterceptTol) ++failures;
  };
  for (int i = 0; i < 1000; ++i) {
    const double R = 1e3 * unit(rng) + 1e-9;
    const double r = R * unit(rng);
    const double theta = kPi * unit(rng);
    check(r, R, theta, oracle::intercepted(r, R, theta));
  }
  int edges = 0;
  for (int i = 0; i < 100; ++i) {
    const double R = 1e3 * unit(rng) + 1e-9;
    const double theta = (kPi / 2) * unit(rng);
    check(R * std::cos(theta), R, theta, 0.0);  // tangency
    const double full = kPi * unit(rng);
    check(R, R, full, oracle::endpoint_distance(R, R, full));  // r = R
    edges += 2;
  }
  return {failures == 0, fmt("%.0f cases, worst error %.3g*R, %.0f failures", 1000.0 + edges, worst, failures)};
}

Outcome topk_exactness() {
  std::mt19937_64 rng(1003);
  std::uniform_int_distribution<std::size_t> size(8, 500);
  const auto start = Clock::now();
  int mismatches = 0;
  int checks = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = size(rng);
    const Dataset d = oracle::random_dataset(rng, n);
    const AxisScale scale = scale_for(d, kPi / 2);
    std::vector<double> thetas;
    std::vector<double> deltas;
    for (const auto& item : d.items) {
      thetas.push_back(central_angle(item.initial, item.final, scale));
      deltas.push_back(item.delta());
    }
    for (std::size_t k : {std::size_t{1}, n / 4, n / 2, n}) {
      const TopkRadius solved = topk_radius(thetas, k, 1.0);
      std::set<std::size_t> got;
      for (std::size_t i = 0; i < n; ++i) {
        if (is_residue(solved.radius, 1.0, thetas[i])) got.insert(i);
      }
      ++checks;
      if (got != oracle::topk_by_delta(deltas, k) || !solved.exact || solved.residueCount != k) ++mismatches;
    }
    // the same through the per-side layout path
    std::vector<double> riseDeltas;
    std::vector<std::string> riseIds;
    for (const auto& item : d.items) {
      if (side_of(item) != Side::Rise) continue;
      riseDeltas.push_back(item.delta());
      riseIds.push_back(item.id);
    }
    if (riseDeltas.size() >= 4) {
      LayoutConfig c;
      c.span = kPi / 2;
      const std::size_t k = riseDeltas.size() / 4;
      const Layout layout = build_layout(d, resolve_topk(d, c, k, std::nullopt));
      std::set<std::string> expected;
      for (std::size_t i : oracle::topk_by_delta(riseDeltas, k)) expected.insert(riseIds[i]);
      std::set<std::string> got;
      for (const auto& item : layout.items) {
        if (item.side == Side::Rise && item.geometry.residue) got.insert(item.id);
      }
      ++checks;
      if (got != expected) ++mismatches;
    }
  }
  const double elapsed = seconds_since(start);
  return {mismatches == 0 && elapsed < kTopkBudgetSec,
          fmt("%.0f checks over 200 datasets, %.0f mismatches, %.3f s", checks, mismatches, elapsed)};
}

Outcome filter_ordering_monotonicity() {
  std::mt19937_64 rng(1004);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  int counterexamples = 0;
  constexpr int kTrials = 100000;
  for (int trial = 0; trial < kTrials; ++trial) {
    const Dataset d = oracle::random_dataset(rng, 12);
    LayoutConfig lo;
    lo.span = 0.05 + (kPi - 0.05) * unit(rng);
    double r1 = lo.R * unit(rng);
    double r2 = lo.R * unit(rng);
    if (r1 > r2) std::swap(r1, r2);
    LayoutConfig hi = lo;
    lo.rRise = lo.rDrop = r1;
    hi.rRise = hi.rDrop = r2;
    const Layout small = build_layout(d, lo);
    const Layout large = build_layout(d, hi);
    for (const Side side : {Side::Rise, Side::Drop}) {
      // residue items always have larger changes than the excluded ones
      for (const Layout* layout : {&small, &large}) {
        double minIn = INFINITY;
        double maxOut = -INFINITY;
        for (const auto& item : layout->items) {
          if (item.side != side) continue;
          if (item.geometry.residue) {
            minIn = std::min(minIn, std::abs(item.delta));
          } else {
            maxOut = std::max(maxOut, std::abs(item.delta));
          }
        }
        if (!(minIn > maxOut)) ++counterexamples;
      }
      // the smaller inner axis keeps a subset
      if (small.residue_count(side) > large.residue_count(side)) ++counterexamples;
      for (std::size_t i = 0; i < small.items.size(); ++i) {
        if (small.items[i].side == side && small.items[i].geometry.residue &&
            !large.items[i].geometry.residue) {
          ++counterexamples;
        }
      }
    }
  }
  return {counterexamples == 0, fmt("%.0f trials, %.0f counterexamples", kTrials, counterexamples)};
}

Outcome percentage_reproduction() {
  struct Case {
    double a, b, expected;
    bool rounded;  // compare after one-decimal rounding, else within the tolerance
  };
  const Case cases[] = {
      {213, 234, 8.9, true},
      {114, 124, 8.1, true},
      {54.8, 67.8, 19.2, true},
      {100.9, 123.4, 18.3, false},
  };
  Outcome out;
  for (const auto& c : cases) {
    const double pct = percentage_difference(c.a, c.b);
    const double shown = round_half_even(pct, 1);
    const bool ok = c.rounded ? shown == c.expected : std::abs(pct - c.expected) <= kPctTolerance;
    out.pass = out.pass && ok;
    if (!out.detail.empty()) out.detail += "; ";
    out.detail += fmt("(%g,%g)", c.a, c.b) + fmt(" -> %.4f (%.1f) expected %.1f", pct, shown, c.expected) +
                  (ok ? "" : " MISMATCH");
  }
  return out;
}

Outcome magnification_achievability() {
  struct Pair {
    const char* a;
    const char* b;
    double target;
  };
  const Dataset d = synthetic_ranked();
  const AxisScale scale = scale_for(d, kPi);
  Outcome out;
  for (const Pair& p : {Pair{"wl", "rj", 18.3}, Pair{"ah", "te", 19.2}}) {
    const auto* a = d.find(p.a);
    const auto* b = d.find(p.b);
    const double ta = central_angle(a->initial, a->final, scale);
    const double tb = central_angle(b->initial, b->final, scale);
    const double R = 360.0;
    const double r = magnification_solve(std::min(ta, tb), std::max(ta, tb), R, p.target);
    // direct evaluation at the returned radius
    const double pct = intercepted_pct(ta, tb, r, R).value_or(0.0);
    // the lengths behind it agree with the quadratic-root oracle
    const bool lengthsAgree =
        std::abs(intercepted_length(r, R, ta).length - oracle::intercepted(r, R, ta)) <= kInterceptTol * R &&
        std::abs(intercepted_length(r, R, tb).length - oracle::intercepted(r, R, tb)) <= kInterceptTol * R;
    const bool ok = pct >= p.target && lengthsAgree;
    out.pass = out.pass && ok;
    if (!out.detail.empty()) out.detail += "; ";
    out.detail += std::string(p.a) + "/" + p.b +
                  fmt(" |delta| %.0f/%.0f", std::abs(a->delta()), std::abs(b->delta())) +
                  fmt(" r=%.6f (%.4f R) pct=%.3f", r, r / R, pct) + fmt(" >= %.1f", p.target);
  }
  return out;
}

std::string capture(const std::string& args) {
  const std::string cmd = std::string("'") + IG_CLI_PATH + "' " + args + " 2>/dev/null";
  FILE* pipe = ::popen(cmd.c_str(), "r");
  if (!pipe) return {};
  std::string out;
  char buffer[65536];
  std::size_t n = 0;
  while ((n = std::fread(buffer, 1, sizeof buffer, pipe)) > 0) out.append(buffer, n);
  const int status = ::pclose(pipe);
  return status == 0 ? out : std::string();
}

Outcome determinism() {
  const std::string input = " -i '" + std::string(IG_DATA_DIR) + "/synthetic_ppg.csv' --transform rank-desc";
  const char* commands[] = {"layout --top-k 30", "render --chart intercept --top-k 10", "render --chart slope",
                            "render --chart grouped-bar --width 1600", "render --chart stacked-bar --width 1600"};
  Outcome out;
  int identical = 0;
  for (const char* cmd : commands) {
    const std::string first = capture(std::string(cmd) + input);
    const std::string second = capture(std::string(cmd) + input);
    const bool ok = !first.empty() && first == second;
    identical += ok;
    if (!ok) {
      out.pass = false;
      out.detail += std::string(cmd) + " differs; ";
    }
  }
  out.detail += fmt("%.0f of 5 commands byte-identical across two runs", identical);
  return out;
}

Outcome scalability() {
  const Dataset d = synthetic_ranked();
  const auto start = Clock::now();
  const Layout layout = build_layout(d, resolve_topk(d, LayoutConfig{}, 30, 30));
  const std::string svg = render_intercept_svg(layout, RenderStyle{});
  const double elapsed = seconds_since(start);
  std::size_t rise = 0, drop = 0;
  for (std::size_t at = svg.find("<polyline class=\"item "); at != std::string::npos;
       at = svg.find("<polyline class=\"item ", at + 1)) {
    const std::string cls = svg.substr(at + 22, 4);
    rise += cls == "rise";
    drop += cls == "drop";
  }
  std::size_t expectRise = 0;
  for (const auto& item : d.items) expectRise += side_of(item) == Side::Rise;
  const bool ok = d.items.size() == 321 && rise + drop == 321 && rise == expectRise && elapsed < kScaleBudgetSec;
  return {ok, fmt("%.0f rise + %.0f drop segments", rise, drop) + fmt(", %.2f ms", elapsed * 1e3)};
}

struct Criterion {
  const char* name;
  std::function<Outcome()> run;
};

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> all = {
      {"chord-oracle", chord_oracle},
      {"angle-ratio", angle_ratio},
      {"intercepted-oracle", intercepted_oracle},
      {"topk-exactness", topk_exactness},
      {"filter-ordering-monotonicity", filter_ordering_monotonicity},
      {"percentage-reproduction", percentage_reproduction},
      {"magnification-achievability", magnification_achievability},
      {"determinism", determinism},
      {"scalability", scalability},
  };
  return all;
}

}  // namespace

int main(int argc, char** argv) {
  const std::string only = argc > 1 ? argv[1] : "";
  int failed = 0;
  bool matched = false;
  for (const auto& c : criteria()) {
    if (!only.empty() && only != c.name) continue;
    matched = true;
    Outcome outcome;
    try {
      outcome = c.run();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    std::printf("%s %s: %s\n", outcome.pass ? "PASS" : "FAIL", c.name, outcome.detail.c_str());
    failed += !outcome.pass;
  }
  if (!matched) {
    std::fprintf(stderr, "unknown criterion '%s'\n", only.c_str());
    return 2;
  }
  return failed == 0 ? 0 : 1;
}
