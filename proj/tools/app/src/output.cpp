#include "hmvp_app/output.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include "hmvp/errors.hpp"

namespace hmvp::app {
namespace {

using OJson = nlohmann::ordered_json;

std::string cell_text(const Cell& c) {
  if (const double* d = std::get_if<double>(&c)) return format_number(*d);
  const std::string& s = std::get<std::string>(c);
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char ch : s) {
    if (ch == '"') q += '"';
    q += ch;
  }
  return q + "\"";
}

OJson cell_json(const Cell& c) {
  if (const double* d = std::get_if<double>(&c)) {
    if (std::isfinite(*d)) return *d;
    return format_number(*d);
  }
  return std::get<std::string>(c);
}

OJson table_json(const Table& t) {
  OJson rows = OJson::array();
  for (const auto& row : t.rows) {
    OJson o = OJson::object();
    for (std::size_t i = 0; i < t.columns.size() && i < row.size(); ++i) o[t.columns[i]] = cell_json(row[i]);
    rows.push_back(std::move(o));
  }
  return rows;
}

void write_file(const std::filesystem::path& p, const std::string& text) {
  std::ofstream out(p);
  if (!out) throw InputError("cannot write " + p.string());
  out << text;
}

}  // namespace

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string to_csv(const Table& t) {
  std::string s = "# schema_version=" + std::to_string(kSchemaVersion) + "\n";
  for (std::size_t i = 0; i < t.columns.size(); ++i) s += (i ? "," : "") + t.columns[i];
  s += "\n";
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) s += (i ? "," : "") + cell_text(row[i]);
    s += "\n";
  }
  return s;
}

std::string to_json(const Report& r) {
  OJson doc = OJson::object();
  doc["schema_version"] = kSchemaVersion;
  for (const auto& [k, v] : r.summary.items()) doc[k] = v;
  if (!r.tables.empty()) {
    OJson tables = OJson::object();
    for (const auto& t : r.tables) tables[t.name] = table_json(t);
    doc["tables"] = std::move(tables);
  }
  return doc.dump(2) + "\n";
}

std::string emit(const Report& r, Format format, const std::filesystem::path& out_dir) {
  if (out_dir.empty()) {
    if (format == Format::json || r.tables.empty()) return to_json(r);
    return to_csv(r.tables.front());
  }
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw InputError("cannot create " + out_dir.string());
  if (format == Format::json) {
    write_file(out_dir / "report.json", to_json(r));
    return {};
  }
  Report summary_only{r.summary, {}, r.passed};
  write_file(out_dir / "summary.json", to_json(summary_only));
  for (const auto& t : r.tables) write_file(out_dir / (t.name + ".csv"), to_csv(t));
  return {};
}

}  // namespace hmvp::app
