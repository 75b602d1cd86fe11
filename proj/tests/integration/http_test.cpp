#include <gtest/gtest.h>

#include <atomic>
#include <cstdio>
#include <memory>
#include <string>
#include <thread>
#include <vector>

#include <httplib.h>
#include <json.hpp>

#include "http_bridge.hpp"
#include "intercept_graph.h"

using nlohmann::json;

namespace {

class HttpTest : public ::testing::Test {
 protected:
  void SetUp() override {
    ig_dataset* raw = nullptr;
    ASSERT_EQ(ig_dataset_load(IG_DATA_DIR "/synthetic_ppg.csv", nullptr, &raw), IG_OK);
    ASSERT_EQ(ig_dataset_transform(raw, IG_TRANSFORM_RANK_DESC, &dataset_), IG_OK);
    ig_dataset_free(raw);
    ASSERT_EQ(ig_service_create(dataset_, nullptr, nullptr, &service_), IG_OK);
    intercept::cli::mount(server_, service_);
    port_ = server_.bind_to_any_port("127.0.0.1");
    ASSERT_GT(port_, 0);
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
  }

  void TearDown() override {
    server_.stop();
    if (thread_.joinable()) thread_.join();
    ig_service_free(service_);
    ig_dataset_free(dataset_);
  }

  httplib::Client client() const {
    httplib::Client c("127.0.0.1", port_);
    c.set_read_timeout(10, 0);
    return c;
  }

  ig_dataset* dataset_ = nullptr;
  ig_service* service_ = nullptr;
  httplib::Server server_;
  int port_ = 0;
  std::thread thread_;
};

}  // namespace

TEST_F(HttpTest, Health) {
  auto res = client().Get("/healthz");
  ASSERT_TRUE(res);
  EXPECT_EQ(res->status, 200);
  EXPECT_EQ(res->body, "ok\n");
  EXPECT_EQ(res->get_header_value("X-Snapshot-Version"), "1");
}

TEST_F(HttpTest, LayoutQueries) {
  auto res = client().Get("/api/layout?rRise=120&rDrop=100");
  ASSERT_TRUE(res);
  EXPECT_EQ(res->status, 200);
  EXPECT_EQ(res->get_header_value("Content-Type"), "application/json");
  EXPECT_EQ(json::parse(res->body)["config"]["rDrop"], 100);

  res = client().Get("/api/layout?kRise=10&kDrop=10");
  ASSERT_TRUE(res);
  const json doc = json::parse(res->body);
  EXPECT_EQ(doc["residueCounts"]["rise"], 10);
  EXPECT_EQ(doc["residueCounts"]["drop"], 10);

  res = client().Get("/api/layout?rRise=-5");
  ASSERT_TRUE(res);
  EXPECT_EQ(res->status, 400);
  EXPECT_EQ(res->body, R"({"error":"rRise out of range [0,R]"})");
}

TEST_F(HttpTest, RenderAndMetrics) {
  auto res = client().Get("/api/render.svg?chart=stacked-bar");
  ASSERT_TRUE(res);
  EXPECT_EQ(res->status, 200);
  EXPECT_EQ(res->get_header_value("Content-Type"), "image/svg+xml");
  res = client().Get("/api/metrics?a=wl&b=ghost");
  ASSERT_TRUE(res);
  EXPECT_EQ(res->status, 404);
  res = client().Get("/api/metrics?a=wl&b=rj");
  ASSERT_TRUE(res);
  EXPECT_EQ(res->status, 200);
}

TEST_F(HttpTest, DatasetSwapBumpsVersion) {
  auto res = client().Get("/api/dataset");
  ASSERT_TRUE(res);
  EXPECT_EQ(json::parse(res->body)["version"], 1);
  const std::string body = R"({"items":[{"id":"A","initial":33,"final":35},{"id":"B","initial":37,"final":40}]})";
  res = client().Post("/api/dataset", body, "application/json");
  ASSERT_TRUE(res);
  EXPECT_EQ(res->status, 204);
  EXPECT_EQ(res->get_header_value("X-Snapshot-Version"), "2");
  res = client().Get("/api/layout");
  ASSERT_TRUE(res);
  EXPECT_EQ(json::parse(res->body)["items"].size(), 2u);
  EXPECT_EQ(res->get_header_value("X-Snapshot-Version"), "2");
}

TEST_F(HttpTest, ConcurrentClientsMatchSequentialAnswers) {
  std::vector<std::string> paths;
  for (int i = 0; i <= 12; ++i) {
    char path[96];
    std::snprintf(path, sizeof path, "/api/layout?rRiseFrac=%.4f&rDropFrac=%.4f", i / 12.0, 1 - i / 12.0);
    paths.push_back(path);
  }
  std::vector<std::string> expected;
  for (const auto& p : paths) {
    auto res = client().Get(p);
    ASSERT_TRUE(res);
    expected.push_back(res->body);
  }
  std::atomic<int> mismatches{0};
  std::vector<std::thread> workers;
  for (int t = 0; t < 6; ++t) {
    workers.emplace_back([&, t] {
      auto c = client();
      for (int round = 0; round < 8; ++round) {
        const std::size_t i = static_cast<std::size_t>(t * 7 + round * 5) % paths.size();
        auto res = c.Get(paths[i]);
        if (!res || res->status != 200 || res->body != expected[i]) ++mismatches;
      }
    });
  }
  for (auto& w : workers) w.join();
  EXPECT_EQ(mismatches.load(), 0);
}
