#pragma once

// Structured command output with JSON (canonical), CSV and human renderings.

#include <cstdint>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace permsphere::cli {

// NaN doubles are emitted as JSON null and read back as NaN.
using Value = std::variant<bool, std::int64_t, double, std::string>;

bool same_value(const Value& a, const Value& b);

struct Table {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<Value>> rows;

  void add_row(std::vector<Value> row);
};

struct OutputRecord {
  std::string command;
  std::vector<std::pair<std::string, Value>> params;
  std::vector<std::pair<std::string, Value>> results;
  std::vector<Table> tables;

  void param(std::string key, Value v) { params.emplace_back(std::move(key), std::move(v)); }
  void result(std::string key, Value v) { results.emplace_back(std::move(key), std::move(v)); }
  Table& table(std::string name, std::vector<std::string> columns);

  bool operator==(const OutputRecord& other) const;
};

enum class Format { json, csv, human };

/// 17 significant digits; integral values keep a trailing ".0" so they read
/// back as doubles.
std::string format_double_json(double v);

std::string to_json(const OutputRecord& r);
/// Throws std::runtime_error on malformed input.
OutputRecord from_json(const std::string& text);

/// First table as CSV when present (header row, then data rows); otherwise a
/// single row of parameters followed by results.
std::string to_csv(const OutputRecord& r);

/// Aligned key/value listing and tables with 6 significant digits.
std::string to_human(const OutputRecord& r);

std::string render(const OutputRecord& r, Format format);

}  // namespace permsphere::cli
