#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace intercept {

enum class Trend { Rise, Drop, Flat };

enum class Transform { Identity, RankAscending, RankDescending };

std::string_view to_string(Trend trend);
std::string_view to_string(Transform transform);
Transform transform_from_string(std::string_view name);

struct StateChangeItem {
  std::string id;
  std::string label;
  double initial = 0.0;
  double final = 0.0;
  // Values before any rank transform; set once the first transform is
  // applied and carried through later ones.
  std::optional<double> rawInitial;
  std::optional<double> rawFinal;

  double delta() const { return final - initial; }
  Trend trend() const;
};

// Builds an item, rejecting non-finite values.
StateChangeItem make_item(std::string id, std::string label, double initial,
                          double final);

struct Dataset {
  std::vector<StateChangeItem> items;
  Transform transform = Transform::Identity;
  bool invertImprovement = false;

  const StateChangeItem* find(std::string_view id) const;

  // Whether the item's change counts as an improvement for labeling. With
  // invertImprovement a decrease (e.g. a better rank) is the improvement.
  bool improved(const StateChangeItem& item) const;
};

// Throws Validation when the dataset is empty, holds duplicate ids or
// non-finite values.
void validate(const Dataset& dataset);

struct CsvColumns {
  std::string id = "id";
  std::string initial = "initial";
  std::string final = "final";
  // Empty means: use a "label" column if the header has one, else the id.
  std::string label;
};

Dataset parse_csv(std::string_view text, const CsvColumns& columns = {});
Dataset parse_json(std::string_view text);
std::string to_json(const Dataset& dataset);

// Replaces the initial and final columns by their ranks, independently.
// Ties share the average of the rank positions they occupy.
Dataset apply_rank_transform(const Dataset& dataset, Transform direction);

// Average ranks of `values`; rank 1 is the smallest (ascending) or largest
// (descending) value.
std::vector<double> rank_values(const std::vector<double>& values,
                                Transform direction);

}  // namespace intercept
