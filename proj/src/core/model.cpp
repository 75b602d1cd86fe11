#include "model.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <numeric>
#include <set>

#include <json.hpp>

#include "error.hpp"

namespace intercept {

std::string_view to_string(Trend trend) {
  switch (trend) {
    case Trend::Rise: return "rise";
    case Trend::Drop: return "drop";
    case Trend::Flat: return "flat";
  }
  return "flat";
}

std::string_view to_string(Transform transform) {
  switch (transform) {
    case Transform::Identity: return "identity";
    case Transform::RankAscending: return "rank_asc";
    case Transform::RankDescending: return "rank_desc";
  }
  return "identity";
}

Transform transform_from_string(std::string_view name) {
  if (name == "identity") return Transform::Identity;
  if (name == "rank_asc" || name == "rank-asc") return Transform::RankAscending;
  if (name == "rank_desc" || name == "rank-desc") return Transform::RankDescending;
  fail(ErrorKind::Argument, "unknown transform '" + std::string(name) + "'");
}

Trend StateChangeItem::trend() const {
  const double d = delta();
  if (d > 0) return Trend::Rise;
  if (d < 0) return Trend::Drop;
  return Trend::Flat;
}

StateChangeItem make_item(std::string id, std::string label, double initial,
                          double final) {
  if (!std::isfinite(initial) || !std::isfinite(final)) {
    fail(ErrorKind::Validation, "item '" + id + "' has a non-finite value");
  }
  StateChangeItem item;
  item.label = label.empty() ? id : std::move(label);
  item.id = std::move(id);
  item.initial = initial;
  item.final = final;
  return item;
}

const StateChangeItem* Dataset::find(std::string_view id) const {
  for (const auto& item : items) {
    if (item.id == id) return &item;
  }
  return nullptr;
}

bool Dataset::improved(const StateChangeItem& item) const {
  return item.trend() == (invertImprovement ? Trend::Drop : Trend::Rise);
}

void validate(const Dataset& dataset) {
  if (dataset.items.empty()) fail(ErrorKind::Validation, "empty dataset");
  std::set<std::string> seen;
  std::set<std::string> duplicates;
  for (const auto& item : dataset.items) {
    if (!std::isfinite(item.initial) || !std::isfinite(item.final)) {
      fail(ErrorKind::Validation,
           "item '" + item.id + "' has a non-finite value");
    }
    if (!seen.insert(item.id).second) duplicates.insert(item.id);
  }
  if (!duplicates.empty()) {
    std::string list;
    for (const auto& id : duplicates) {
      if (!list.empty()) list += ", ";
      list += id;
    }
    fail(ErrorKind::Validation, "duplicate ids: " + list);
  }
}

namespace {

// RFC 4180 style records: quoted fields may hold commas, quotes ("") and
// newlines.
std::vector<std::vector<std::string>> read_csv_records(std::string_view text) {
  if (text.substr(0, 3) == "\xEF\xBB\xBF") text.remove_prefix(3);
  std::vector<std::vector<std::string>> records;
  std::vector<std::string> record;
  std::string field;
  bool quoted = false;
  bool fieldStarted = false;
  auto endField = [&] {
    record.push_back(std::move(field));
    field.clear();
    fieldStarted = false;
  };
  auto endRecord = [&] {
    endField();
    const bool blank = record.size() == 1 && record[0].empty();
    if (!blank) records.push_back(std::move(record));
    record.clear();
  };
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char ch = text[i];
    if (quoted) {
      if (ch == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field += ch;
      }
      continue;
    }
    switch (ch) {
      case '"':
        if (fieldStarted) fail(ErrorKind::Parse, "stray quote in CSV field");
        quoted = true;
        fieldStarted = true;
        break;
      case ',': endField(); break;
      case '\r': break;
      case '\n': endRecord(); break;
      default:
        field += ch;
        fieldStarted = true;
    }
  }
  if (quoted) fail(ErrorKind::Parse, "unterminated quoted CSV field");
  if (fieldStarted || !record.empty()) endRecord();
  return records;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

std::optional<double> parse_real(std::string_view cell) {
  cell = trim(cell);
  if (!cell.empty() && cell.front() == '+') cell.remove_prefix(1);
  double value = 0.0;
  const auto* first = cell.data();
  const auto* last = cell.data() + cell.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (cell.empty() || ec != std::errc() || ptr != last || !std::isfinite(value)) {
    return std::nullopt;
  }
  return value;
}

std::size_t column_index(const std::vector<std::string>& header,
                         const std::string& name) {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (trim(header[i]) == name) return i;
  }
  fail(ErrorKind::Schema, "missing column '" + name + "'");
}

}  // namespace

Dataset parse_csv(std::string_view text, const CsvColumns& columns) {
  const auto records = read_csv_records(text);
  if (records.empty()) fail(ErrorKind::Schema, "CSV input has no header row");
  const auto& header = records.front();
  const std::size_t idCol = column_index(header, columns.id);
  const std::size_t initialCol = column_index(header, columns.initial);
  const std::size_t finalCol = column_index(header, columns.final);
  std::optional<std::size_t> labelCol;
  if (!columns.label.empty()) {
    labelCol = column_index(header, columns.label);
  } else {
    for (std::size_t i = 0; i < header.size(); ++i) {
      if (trim(header[i]) == "label") labelCol = i;
    }
  }

  Dataset dataset;
  for (std::size_t r = 1; r < records.size(); ++r) {
    const auto& row = records[r];
    // Row numbers count the header as row 1.
    const std::string rowName = "row " + std::to_string(r + 1);
    auto cell = [&](std::size_t col, const std::string& name) -> std::string_view {
      if (col >= row.size()) {
        fail(ErrorKind::Parse, "parse error at " + rowName + ": missing '" + name + "' cell");
      }
      return row[col];
    };
    const auto initial = parse_real(cell(initialCol, columns.initial));
    const auto final = parse_real(cell(finalCol, columns.final));
    if (!initial || !final) {
      fail(ErrorKind::Parse, "parse error at " + rowName + ": non-numeric value in '" +
                                 (initial ? columns.final : columns.initial) + "'");
    }
    std::string id(trim(cell(idCol, columns.id)));
    if (id.empty()) fail(ErrorKind::Validation, "empty id at " + rowName);
    std::string label = labelCol ? std::string(trim(cell(*labelCol, columns.label))) : "";
    dataset.items.push_back(make_item(std::move(id), std::move(label), *initial, *final));
  }
  validate(dataset);
  return dataset;
}

namespace {

using nlohmann::json;

[[noreturn]] void schema_violation(const std::string& path, const std::string& what) {
  fail(ErrorKind::Validation, "schema violation at " + path + ": " + what);
}

double read_number(const json& object, const std::string& key, const std::string& path) {
  const auto it = object.find(key);
  if (it == object.end()) schema_violation(path + "." + key, "required field missing");
  if (!it->is_number()) schema_violation(path + "." + key, "expected a number");
  const double value = it->get<double>();
  if (!std::isfinite(value)) schema_violation(path + "." + key, "expected a finite number");
  return value;
}

}  // namespace

Dataset parse_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    fail(ErrorKind::Parse, std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) schema_violation("$", "expected an object");
  for (const auto& [key, value] : doc.items()) {
    if (key != "items" && key != "transform" && key != "invertImprovement") {
      schema_violation(key, "unknown field");
    }
  }
  const auto items = doc.find("items");
  if (items == doc.end()) schema_violation("items", "required field missing");
  if (!items->is_array()) schema_violation("items", "expected an array");

  Dataset raw;
  for (std::size_t i = 0; i < items->size(); ++i) {
    const auto& entry = (*items)[i];
    const std::string path = "items[" + std::to_string(i) + "]";
    if (!entry.is_object()) schema_violation(path, "expected an object");
    for (const auto& [key, value] : entry.items()) {
      if (key != "id" && key != "label" && key != "initial" && key != "final") {
        schema_violation(path + "." + key, "unknown field");
      }
    }
    const auto id = entry.find("id");
    if (id == entry.end()) schema_violation(path + ".id", "required field missing");
    if (!id->is_string()) schema_violation(path + ".id", "expected a string");
    std::string label;
    if (const auto it = entry.find("label"); it != entry.end()) {
      if (!it->is_string()) schema_violation(path + ".label", "expected a string");
      label = it->get<std::string>();
    }
    const double initial = read_number(entry, "initial", path);
    const double final = read_number(entry, "final", path);
    raw.items.push_back(make_item(id->get<std::string>(), std::move(label), initial, final));
  }
  if (const auto it = doc.find("invertImprovement"); it != doc.end()) {
    if (!it->is_boolean()) schema_violation("invertImprovement", "expected a boolean");
    raw.invertImprovement = it->get<bool>();
  }
  Transform transform = Transform::Identity;
  if (const auto it = doc.find("transform"); it != doc.end()) {
    if (!it->is_string()) schema_violation("transform", "expected a string");
    const auto name = it->get<std::string>();
    if (name != "identity" && name != "rank_asc" && name != "rank_desc") {
      schema_violation("transform", "expected identity, rank_asc or rank_desc");
    }
    transform = transform_from_string(name);
  }
  validate(raw);
  if (transform == Transform::Identity) return raw;
  return apply_rank_transform(raw, transform);
}

std::string to_json(const Dataset& dataset) {
  // Raw values are written with the transform name, so parsing the document
  // reapplies the transform and reproduces the dataset.
  json items = json::array();
  for (const auto& item : dataset.items) {
    json entry;
    entry["id"] = item.id;
    entry["label"] = item.label;
    entry["initial"] = item.rawInitial.value_or(item.initial);
    entry["final"] = item.rawFinal.value_or(item.final);
    items.push_back(std::move(entry));
  }
  json doc;
  doc["items"] = std::move(items);
  doc["transform"] = std::string(to_string(dataset.transform));
  doc["invertImprovement"] = dataset.invertImprovement;
  return doc.dump();
}

std::vector<double> rank_values(const std::vector<double>& values,
                                Transform direction) {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  const bool descending = direction == Transform::RankDescending;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return descending ? values[a] > values[b] : values[a] < values[b];
  });
  std::vector<double> ranks(values.size());
  std::size_t start = 0;
  while (start < order.size()) {
    std::size_t end = start + 1;
    while (end < order.size() && values[order[end]] == values[order[start]]) ++end;
    // Positions start+1 .. end share their mean.
    const double average = (static_cast<double>(start + 1) + static_cast<double>(end)) / 2.0;
    for (std::size_t i = start; i < end; ++i) ranks[order[i]] = average;
    start = end;
  }
  return ranks;
}

Dataset apply_rank_transform(const Dataset& dataset, Transform direction) {
  if (direction == Transform::Identity) {
    fail(ErrorKind::Argument, "rank transform needs an ascending or descending direction");
  }
  validate(dataset);
  std::vector<double> initial;
  std::vector<double> final;
  initial.reserve(dataset.items.size());
  final.reserve(dataset.items.size());
  for (const auto& item : dataset.items) {
    initial.push_back(item.initial);
    final.push_back(item.final);
  }
  const auto initialRanks = rank_values(initial, direction);
  const auto finalRanks = rank_values(final, direction);

  Dataset ranked = dataset;
  ranked.transform = direction;
  for (std::size_t i = 0; i < ranked.items.size(); ++i) {
    auto& item = ranked.items[i];
    if (!item.rawInitial) item.rawInitial = item.initial;
    if (!item.rawFinal) item.rawFinal = item.final;
    item.initial = initialRanks[i];
    item.final = finalRanks[i];
  }
  return ranked;
}

}  // namespace intercept
