#pragma once

#include <filesystem>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

namespace hmvp::app {

inline constexpr int kSchemaVersion = 1;

using Cell = std::variant<double, std::string>;

struct Table {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void add(std::vector<Cell> row) { rows.push_back(std::move(row)); }
};

/// What a subcommand produced: a JSON summary plus named tables.
struct Report {
  nlohmann::ordered_json summary = nlohmann::ordered_json::object();
  std::vector<Table> tables;
  bool passed = true;  // reproduce/acceptance style verdicts
};

enum class Format { csv, json };

/// "%.17g" for numbers.
std::string format_number(double v);

/// "# schema_version=1", the header line, then one line per row.
std::string to_csv(const Table& t);

/// {"schema_version":1, ...summary, "tables":{name:[{col:value}...]}}.
std::string to_json(const Report& r);

/// Without an output directory: JSON prints the whole report, CSV prints
/// the first table (or the summary when there is none).  With one: writes
/// summary.json and <table>.csv files there and returns an empty string.
std::string emit(const Report& r, Format format,
                 const std::filesystem::path& out_dir = {});

}  // namespace hmvp::app
