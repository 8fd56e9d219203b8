#include "output_record.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace permsphere::cli {

namespace {

std::string json_string(const std::string& s) { return nlohmann::json(s).dump(); }

std::string json_value(const Value& v) {
  return std::visit(
      [](const auto& x) -> std::string {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, bool>) {
          return x ? "true" : "false";
        } else if constexpr (std::is_same_v<T, std::int64_t>) {
          return std::to_string(x);
        } else if constexpr (std::is_same_v<T, double>) {
          return format_double_json(x);
        } else {
          return json_string(x);
        }
      },
      v);
}

std::string plain_value(const Value& v, int digits) {
  return std::visit(
      [digits](const auto& x) -> std::string {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, bool>) {
          return x ? "true" : "false";
        } else if constexpr (std::is_same_v<T, std::int64_t>) {
          return std::to_string(x);
        } else if constexpr (std::is_same_v<T, double>) {
          if (std::isnan(x)) return "nan";
          char buf[64];
          std::snprintf(buf, sizeof buf, "%.*g", digits, x);
          return buf;
        } else {
          return x;
        }
      },
      v);
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

void emit_pairs(std::ostringstream& os, const std::vector<std::pair<std::string, Value>>& pairs) {
  os << '{';
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    if (i) os << ',';
    os << json_string(pairs[i].first) << ':' << json_value(pairs[i].second);
  }
  os << '}';
}

Value value_from_json(const nlohmann::json& j) {
  if (j.is_null()) return std::nan("");
  if (j.is_boolean()) return j.get<bool>();
  if (j.is_number_integer()) return j.get<std::int64_t>();
  if (j.is_number_float()) return j.get<double>();
  if (j.is_string()) return j.get<std::string>();
  throw std::runtime_error("unsupported JSON value");
}

std::vector<std::pair<std::string, Value>> pairs_from_json(const nlohmann::ordered_json& j) {
  std::vector<std::pair<std::string, Value>> out;
  for (auto it = j.begin(); it != j.end(); ++it) out.emplace_back(it.key(), value_from_json(it.value()));
  return out;
}

bool same_pairs(const std::vector<std::pair<std::string, Value>>& a, const std::vector<std::pair<std::string, Value>>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].first != b[i].first || !same_value(a[i].second, b[i].second)) return false;
  }
  return true;
}

}  // namespace

bool same_value(const Value& a, const Value& b) {
  if (a.index() != b.index()) return false;
  if (const double* x = std::get_if<double>(&a)) {
    const double y = std::get<double>(b);
    return (std::isnan(*x) && std::isnan(y)) || *x == y;
  }
  return a == b;
}

void Table::add_row(std::vector<Value> row) {
  if (row.size() != columns.size()) throw std::logic_error("row width does not match table '" + name + "'");
  rows.push_back(std::move(row));
}

Table& OutputRecord::table(std::string name, std::vector<std::string> columns) {
  tables.push_back(Table{std::move(name), std::move(columns), {}});
  return tables.back();
}

bool OutputRecord::operator==(const OutputRecord& other) const {
  if (command != other.command || !same_pairs(params, other.params) || !same_pairs(results, other.results)) return false;
  if (tables.size() != other.tables.size()) return false;
  for (std::size_t t = 0; t < tables.size(); ++t) {
    const Table& a = tables[t];
    const Table& b = other.tables[t];
    if (a.name != b.name || a.columns != b.columns || a.rows.size() != b.rows.size()) return false;
    for (std::size_t r = 0; r < a.rows.size(); ++r) {
      for (std::size_t c = 0; c < a.columns.size(); ++c) {
        if (!same_value(a.rows[r][c], b.rows[r][c])) return false;
      }
    }
  }
  return true;
}

std::string format_double_json(double v) {
  if (!std::isfinite(v)) return "null";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  std::string s = buf;
  if (s.find_first_of(".e") == std::string::npos) s += ".0";
  return s;
}

std::string to_json(const OutputRecord& r) {
  std::ostringstream os;
  os << "{\"command\":" << json_string(r.command) << ",\"params\":";
  emit_pairs(os, r.params);
  os << ",\"results\":";
  emit_pairs(os, r.results);
  os << ",\"tables\":[";
  for (std::size_t t = 0; t < r.tables.size(); ++t) {
    const Table& tab = r.tables[t];
    if (t) os << ',';
    os << "{\"name\":" << json_string(tab.name) << ",\"columns\":[";
    for (std::size_t c = 0; c < tab.columns.size(); ++c) os << (c ? "," : "") << json_string(tab.columns[c]);
    os << "],\"rows\":[";
    for (std::size_t i = 0; i < tab.rows.size(); ++i) {
      os << (i ? ",[" : "[");
      for (std::size_t c = 0; c < tab.rows[i].size(); ++c) os << (c ? "," : "") << json_value(tab.rows[i][c]);
      os << ']';
    }
    os << "]}";
  }
  os << "]}\n";
  return os.str();
}

OutputRecord from_json(const std::string& text) {
  nlohmann::ordered_json j;
  try {
    j = nlohmann::ordered_json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error(std::string("malformed JSON: ") + e.what());
  }
  OutputRecord r;
  r.command = j.at("command").get<std::string>();
  r.params = pairs_from_json(j.at("params"));
  r.results = pairs_from_json(j.at("results"));
  for (const auto& t : j.at("tables")) {
    Table tab{t.at("name").get<std::string>(), t.at("columns").get<std::vector<std::string>>(), {}};
    for (const auto& row : t.at("rows")) {
      std::vector<Value> vals;
      for (const auto& v : row) vals.push_back(value_from_json(v));
      tab.add_row(std::move(vals));
    }
    r.tables.push_back(std::move(tab));
  }
  return r;
}

std::string to_csv(const OutputRecord& r) {
  std::ostringstream os;
  auto line = [&os](const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) os << (i ? "," : "") << csv_field(fields[i]);
    os << '\n';
  };
  if (!r.tables.empty()) {
    const Table& t = r.tables.front();
    line(t.columns);
    for (const auto& row : t.rows) {
      std::vector<std::string> fields;
      for (const auto& v : row) fields.push_back(plain_value(v, 17));
      line(fields);
    }
    return os.str();
  }
  std::vector<std::string> header, fields;
  for (const auto* group : {&r.params, &r.results}) {
    for (const auto& [k, v] : *group) {
      header.push_back(k);
      fields.push_back(plain_value(v, 17));
    }
  }
  line(header);
  line(fields);
  return os.str();
}

std::string to_human(const OutputRecord& r) {
  std::ostringstream os;
  os << r.command << '\n';
  std::size_t width = 0;
  for (const auto* group : {&r.params, &r.results}) {
    for (const auto& kv : *group) width = std::max(width, kv.first.size());
  }
  for (const auto* group : {&r.params, &r.results}) {
    for (const auto& [k, v] : *group) os << "  " << k << std::string(width - k.size() + 2, ' ') << plain_value(v, 6) << '\n';
  }
  for (const auto& t : r.tables) {
    os << '\n' << t.name << '\n';
    std::vector<std::size_t> w(t.columns.size());
    std::vector<std::vector<std::string>> cells;
    for (std::size_t c = 0; c < t.columns.size(); ++c) w[c] = t.columns[c].size();
    for (const auto& row : t.rows) {
      std::vector<std::string> line;
      for (std::size_t c = 0; c < row.size(); ++c) {
        line.push_back(plain_value(row[c], 6));
        w[c] = std::max(w[c], line.back().size());
      }
      cells.push_back(std::move(line));
    }
    auto emit = [&](const std::vector<std::string>& line) {
      os << ' ';
      for (std::size_t c = 0; c < line.size(); ++c) os << ' ' << std::string(w[c] - line[c].size(), ' ') << line[c];
      os << '\n';
    };
    emit(t.columns);
    for (const auto& line : cells) emit(line);
  }
  return os.str();
}

std::string render(const OutputRecord& r, Format format) {
  switch (format) {
    case Format::json: return to_json(r);
    case Format::csv: return to_csv(r);
    case Format::human: return to_human(r);
  }
  return to_json(r);
}

}  // namespace permsphere::cli
