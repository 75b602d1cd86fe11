#include <gtest/gtest.h>

#include <random>
#include <string>

#include "error.hpp"
#include "model.hpp"
#include "oracles.hpp"

using namespace intercept;

namespace {

ErrorKind kind_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "expected an intercept::Error";
  return ErrorKind::Io;
}

std::string message_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.what();
  }
  return {};
}

}  // namespace

TEST(ParseCsv, TwoRisesRow) {
  const auto dataset = parse_csv("id,initial,final\nA,33,35\n");
  ASSERT_EQ(dataset.items.size(), 1u);
  const auto& item = dataset.items[0];
  EXPECT_EQ(item.id, "A");
  EXPECT_EQ(item.label, "A");
  EXPECT_EQ(item.initial, 33.0);
  EXPECT_EQ(item.final, 35.0);
  EXPECT_EQ(item.delta(), 2.0);
  EXPECT_EQ(item.trend(), Trend::Rise);
}

TEST(ParseCsv, FlatRow) {
  const auto dataset = parse_csv("id,initial,final\nB,5,5\n");
  EXPECT_EQ(dataset.items[0].trend(), Trend::Flat);
  EXPECT_EQ(dataset.items[0].delta(), 0.0);
}

TEST(ParseCsv, NonNumericCellNamesRow) {
  const auto text = "id,initial,final\nC,10,abc\n";
  EXPECT_EQ(kind_of([&] { parse_csv(text); }), ErrorKind::Parse);
  EXPECT_NE(message_of([&] { parse_csv(text); }).find("row 2"), std::string::npos);
}

TEST(ParseCsv, MissingColumnIsSchemaError) {
  const auto text = "id,start,final\nA,1,2\n";
  EXPECT_EQ(kind_of([&] { parse_csv(text); }), ErrorKind::Schema);
  EXPECT_NE(message_of([&] { parse_csv(text); }).find("'initial'"), std::string::npos);
}

TEST(ParseCsv, DuplicateIdsListed) {
  const auto text = "id,initial,final\nA,1,2\nB,1,2\nA,3,4\n";
  EXPECT_EQ(kind_of([&] { parse_csv(text); }), ErrorKind::Validation);
  EXPECT_NE(message_of([&] { parse_csv(text); }).find("A"), std::string::npos);
}

TEST(ParseCsv, HeaderOnlyIsEmptyDataset) {
  EXPECT_EQ(message_of([] { parse_csv("id,initial,final\n"); }), "empty dataset");
}

TEST(ParseCsv, ColumnMappingQuotesAndLabels) {
  CsvColumns columns;
  columns.id = "player";
  columns.initial = "ppg_2018";
  columns.final = "ppg_2019";
  columns.label = "name";
  const auto dataset = parse_csv(
      "\xEF\xBB\xBFplayer,name,ppg_2018,ppg_2019\r\n"
      "x1,\"Lee, C.\",10.5,+8\r\n"
      "x2,\"He said \"\"hi\"\"\",1e1,2.5E1\r\n",
      columns);
  ASSERT_EQ(dataset.items.size(), 2u);
  EXPECT_EQ(dataset.items[0].label, "Lee, C.");
  EXPECT_EQ(dataset.items[0].final, 8.0);
  EXPECT_EQ(dataset.items[1].label, "He said \"hi\"");
  EXPECT_EQ(dataset.items[1].initial, 10.0);
  EXPECT_EQ(dataset.items[1].final, 25.0);
}

TEST(ParseCsv, LabelColumnPickedUpByDefault) {
  const auto dataset = parse_csv("id,label,initial,final\nA,Alpha,1,2\n");
  EXPECT_EQ(dataset.items[0].label, "Alpha");
}

TEST(ParseCsv, RejectsNonFiniteAndShortRows) {
  EXPECT_EQ(kind_of([] { parse_csv("id,initial,final\nA,inf,2\n"); }), ErrorKind::Parse);
  EXPECT_EQ(kind_of([] { parse_csv("id,initial,final\nA,nan,2\n"); }), ErrorKind::Parse);
  EXPECT_EQ(kind_of([] { parse_csv("id,initial,final\nA,1\n"); }), ErrorKind::Parse);
  EXPECT_EQ(kind_of([] { parse_csv("id,initial,final\nA,\"1,2\n"); }), ErrorKind::Parse);
}

TEST(ParseJson, SingleItem) {
  const auto dataset = parse_json(R"({"items":[{"id":"A","initial":33,"final":35}]})");
  ASSERT_EQ(dataset.items.size(), 1u);
  EXPECT_EQ(dataset.items[0].delta(), 2.0);
  EXPECT_EQ(dataset.transform, Transform::Identity);
  EXPECT_FALSE(dataset.invertImprovement);
}

TEST(ParseJson, EmptyDataset) {
  EXPECT_EQ(kind_of([] { parse_json(R"({"items":[]})"); }), ErrorKind::Validation);
  EXPECT_EQ(message_of([] { parse_json(R"({"items":[]})"); }), "empty dataset");
}

TEST(ParseJson, MissingFinalReportsPath) {
  const auto text = R"({"items":[{"id":"A","initial":1}]})";
  EXPECT_EQ(kind_of([&] { parse_json(text); }), ErrorKind::Validation);
  EXPECT_NE(message_of([&] { parse_json(text); }).find("items[0].final"), std::string::npos);
}

TEST(ParseJson, UnknownFieldsAndBadTypesRejected) {
  EXPECT_NE(message_of([] { parse_json(R"({"items":[{"id":"A","initial":1,"final":2,"x":1}]})"); })
                .find("items[0].x"),
            std::string::npos);
  EXPECT_EQ(kind_of([] { parse_json(R"({"items":[{"id":"A","initial":1,"final":2}],"extra":0})"); }),
            ErrorKind::Validation);
  EXPECT_EQ(kind_of([] { parse_json(R"({"items":[{"id":1,"initial":1,"final":2}]})"); }),
            ErrorKind::Validation);
  EXPECT_EQ(kind_of([] { parse_json(R"({"items":[{"id":"A","initial":"1","final":2}]})"); }),
            ErrorKind::Validation);
  EXPECT_EQ(kind_of([] { parse_json(R"({"items":[{"id":"A","initial":1,"final":2}],"transform":"log"})"); }),
            ErrorKind::Validation);
}

TEST(ParseJson, MalformedIsParseError) {
  EXPECT_EQ(kind_of([] { parse_json("{\"items\":["); }), ErrorKind::Parse);
}

TEST(ParseJson, MatchesCsvForSameContent) {
  const auto fromCsv = parse_csv("id,initial,final\nA,33,35\nB,37,40\n");
  const auto fromJson = parse_json(
      R"({"items":[{"final":35,"initial":33,"id":"A"},{"id":"B","initial":37,"final":40}]})");
  ASSERT_EQ(fromCsv.items.size(), fromJson.items.size());
  for (std::size_t i = 0; i < fromCsv.items.size(); ++i) {
    EXPECT_EQ(fromCsv.items[i].id, fromJson.items[i].id);
    EXPECT_EQ(fromCsv.items[i].initial, fromJson.items[i].initial);
    EXPECT_EQ(fromCsv.items[i].final, fromJson.items[i].final);
  }
}

TEST(RankTransform, DescendingOrder) {
  EXPECT_EQ(rank_values({25.0, 30.1, 27.3}, Transform::RankDescending),
            (std::vector<double>{3, 1, 2}));
}

TEST(RankTransform, TiesGetAverageRank) {
  EXPECT_EQ(rank_values({5, 5}, Transform::RankAscending), (std::vector<double>{1.5, 1.5}));
  EXPECT_EQ(rank_values({1, 7, 7, 7, 9}, Transform::RankAscending),
            (std::vector<double>{1, 3, 3, 3, 5}));
}

TEST(RankTransform, ThirdToFirstIsImprovementUnderInversion) {
  Dataset raw;
  raw.items = {make_item("leo", "", 26.0, 30.0), make_item("b", "", 28.0, 29.0),
               make_item("c", "", 27.0, 20.0)};
  raw.invertImprovement = true;
  const auto ranked = apply_rank_transform(raw, Transform::RankDescending);
  const auto& leo = ranked.items[0];
  EXPECT_EQ(leo.initial, 3.0);
  EXPECT_EQ(leo.final, 1.0);
  EXPECT_EQ(leo.delta(), -2.0);
  EXPECT_EQ(leo.trend(), Trend::Drop);
  EXPECT_TRUE(ranked.improved(leo));
  EXPECT_EQ(leo.rawInitial, 26.0);
  EXPECT_EQ(leo.rawFinal, 30.0);
  EXPECT_EQ(ranked.transform, Transform::RankDescending);
}

TEST(RankTransform, KeepsFirstRawValues) {
  Dataset raw;
  raw.items = {make_item("a", "", 10.0, 1.0), make_item("b", "", 20.0, 2.0)};
  const auto once = apply_rank_transform(raw, Transform::RankAscending);
  const auto twice = apply_rank_transform(once, Transform::RankDescending);
  EXPECT_EQ(twice.items[0].rawInitial, 10.0);
  EXPECT_EQ(twice.items[0].initial, 2.0);
}

TEST(RankTransform, IdentityDirectionRejected) {
  Dataset raw;
  raw.items = {make_item("a", "", 1.0, 2.0)};
  EXPECT_EQ(kind_of([&] { apply_rank_transform(raw, Transform::Identity); }), ErrorKind::Argument);
}

// parse_json(to_json(d)) == d, including transformed datasets.
TEST(DatasetProperties, JsonRoundTrip) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    auto dataset = oracle::random_dataset(rng, 1 + trial % 40, trial % 3 != 0);
    dataset.invertImprovement = trial % 2 == 0;
    if (trial % 4 == 1) dataset = apply_rank_transform(dataset, Transform::RankAscending);
    if (trial % 4 == 2) dataset = apply_rank_transform(dataset, Transform::RankDescending);
    const auto back = parse_json(to_json(dataset));
    ASSERT_EQ(back.items.size(), dataset.items.size());
    EXPECT_EQ(back.transform, dataset.transform);
    EXPECT_EQ(back.invertImprovement, dataset.invertImprovement);
    for (std::size_t i = 0; i < back.items.size(); ++i) {
      EXPECT_EQ(back.items[i].id, dataset.items[i].id);
      EXPECT_EQ(back.items[i].label, dataset.items[i].label);
      EXPECT_EQ(back.items[i].initial, dataset.items[i].initial);
      EXPECT_EQ(back.items[i].final, dataset.items[i].final);
      EXPECT_EQ(back.items[i].rawInitial, dataset.items[i].rawInitial);
      EXPECT_EQ(back.items[i].rawFinal, dataset.items[i].rawFinal);
    }
  }
}

TEST(DatasetProperties, RankIdempotentOnRankedColumns) {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 100; ++trial) {
    const auto dataset = oracle::random_dataset(rng, 1 + trial % 50);
    const auto once = apply_rank_transform(dataset, Transform::RankAscending);
    const auto twice = apply_rank_transform(once, Transform::RankAscending);
    for (std::size_t i = 0; i < once.items.size(); ++i) {
      EXPECT_EQ(once.items[i].initial, twice.items[i].initial);
      EXPECT_EQ(once.items[i].final, twice.items[i].final);
    }
  }
}

// Every pairwise comparison keeps its sign (ascending) or flips it
// (descending) under the rank transform; ranks are a permutation of 1..n.
TEST(DatasetProperties, RankIsOrderIsomorphism) {
  std::mt19937_64 rng(13);
  auto sign = [](double v) { return (v > 0) - (v < 0); };
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + trial % 50;
    const auto dataset = oracle::random_dataset(rng, n);
    for (const auto direction : {Transform::RankAscending, Transform::RankDescending}) {
      const auto ranked = apply_rank_transform(dataset, direction);
      const int flip = direction == Transform::RankAscending ? 1 : -1;
      std::vector<double> seen;
      for (std::size_t i = 0; i < n; ++i) {
        seen.push_back(ranked.items[i].initial);
        for (std::size_t j = 0; j < n; ++j) {
          ASSERT_EQ(sign(ranked.items[i].initial - ranked.items[j].initial),
                    flip * sign(dataset.items[i].initial - dataset.items[j].initial));
          ASSERT_EQ(sign(ranked.items[i].final - ranked.items[j].final),
                    flip * sign(dataset.items[i].final - dataset.items[j].final));
        }
      }
      std::sort(seen.begin(), seen.end());
      for (std::size_t i = 0; i < n; ++i) ASSERT_EQ(seen[i], static_cast<double>(i + 1));
    }
  }
}
