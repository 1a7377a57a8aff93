#include "hocount/table_io.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace hocount {

namespace {

using nlohmann::json;

json cell_json(const Cell& cell) {
  return std::visit([](const auto& v) { return json(v); }, cell);
}

std::string join(const std::vector<std::string>& parts, char sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

json manifest_json(const Manifest& m) {
  json params = json::array();
  for (const auto& [k, v] : m.params) params.push_back({k, v});
  json out = {{"command", m.command}, {"params", params}, {"version", m.version}};
  out["seed"] = m.seed ? json(*m.seed) : json(nullptr);
  return out;
}

std::vector<std::string> split_ws(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  for (std::string tok; in >> tok;) out.push_back(tok);
  return out;
}

}  // namespace

void Table::add_row(std::vector<Cell> row) {
  if (row.size() != columns.size()) throw std::invalid_argument("Table: row width mismatch");
  rows.push_back(std::move(row));
}

std::optional<Format> parse_format(const std::string& name) {
  if (name == "csv") return Format::csv;
  if (name == "json") return Format::json;
  return std::nullopt;
}

std::string format_number(double x) {
  if (x == 0.0) return "0";  // folds -0
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return buf;
}

std::string format_cell(const Cell& cell) {
  if (const auto* i = std::get_if<long long>(&cell)) return std::to_string(*i);
  if (const auto* d = std::get_if<double>(&cell)) return format_number(*d);
  return std::get<std::string>(cell);
}

std::string render_csv(const Table& table, const Manifest& manifest) {
  std::string out = "# hocount " + manifest.version + "\n";
  out += "# command: " + join(manifest.command, ' ') + "\n";
  if (manifest.seed) out += "# seed: " + std::to_string(*manifest.seed) + "\n";
  for (const auto& [k, v] : manifest.params) out += "# param " + k + " = " + v + "\n";
  for (const auto& [k, v] : table.summary) out += "# summary " + k + " = " + format_cell(v) + "\n";
  out += join(table.columns, ',') + "\n";
  for (const auto& row : table.rows) {
    std::vector<std::string> cells;
    cells.reserve(row.size());
    for (const Cell& c : row) cells.push_back(format_cell(c));
    out += join(cells, ',') + "\n";
  }
  return out;
}

std::string render_json(const Table& table, const Manifest& manifest) {
  json rows = json::array();
  for (const auto& row : table.rows) {
    json r = json::array();
    for (const Cell& c : row) r.push_back(cell_json(c));
    rows.push_back(std::move(r));
  }
  json summary = json::object();
  for (const auto& [k, v] : table.summary) summary[k] = cell_json(v);
  json doc = {{"manifest", manifest_json(manifest)}, {"columns", table.columns}, {"rows", rows}, {"summary", summary}};
  return doc.dump(2) + "\n";
}

std::string render(const Table& table, const Manifest& manifest, Format format) {
  return format == Format::csv ? render_csv(table, manifest) : render_json(table, manifest);
}

std::string render_manifest(const Manifest& manifest) { return manifest_json(manifest).dump(2) + "\n"; }

void write_file_atomic(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    f << content;
    f.flush();
    if (!f) {
      std::error_code ec;
      fs::remove(tmp, ec);
      throw std::runtime_error("write failed: " + tmp.string());
    }
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw std::runtime_error("cannot move output into place: " + path);
  }
}

std::vector<std::string> read_manifest_command(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot read " + path);
  std::stringstream buf;
  buf << f.rdbuf();
  const std::string text = buf.str();

  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') {
    const json doc = json::parse(text, nullptr, false);
    if (doc.is_discarded()) throw std::runtime_error(path + ": invalid JSON");
    const json& m = doc.contains("manifest") ? doc["manifest"] : doc;
    if (!m.contains("command") || !m["command"].is_array()) {
      throw std::runtime_error(path + ": no manifest command");
    }
    return m["command"].get<std::vector<std::string>>();
  }

  std::istringstream lines(text);
  const std::string key = "# command:";
  for (std::string line; std::getline(lines, line);) {
    if (line.rfind(key, 0) == 0) return split_ws(line.substr(key.size()));
    if (line.empty() || line[0] != '#') break;
  }
  throw std::runtime_error(path + ": no manifest command");
}

Table pattern_table(const PointPattern& pattern) {
  Table t{{"x", "y"}, {}, {}};
  for (Eigen::Index i = 0; i < pattern.points.cols(); ++i) {
    t.add_row({pattern.points(0, i), pattern.points(1, i)});
  }
  t.summary = {{"intensity", pattern.intensity_nominal},
               {"x_min", pattern.window.x_min},
               {"x_max", pattern.window.x_max},
               {"y_min", pattern.window.y_min},
               {"y_max", pattern.window.y_max}};
  return t;
}

Table trajectory_table(const Trajectory& traj) {
  Table t{{"t", "x", "y"}, {}, {}};
  for (const Waypoint& w : traj.waypoints()) t.add_row({w.t, w.pos.x(), w.pos.y()});
  return t;
}

Table crossings_table(const HandoverCount& count) {
  Table t{{"t", "x", "y", "from", "to"}, {}, {}};
  if (count.crossings) {
    for (const Crossing& c : *count.crossings) {
      t.add_row({c.t, c.pos.x(), c.pos.y(), static_cast<long long>(c.from), static_cast<long long>(c.to)});
    }
  }
  t.summary = {{"h", static_cast<long long>(count.h)}};
  return t;
}

Table pmf_table(const HandoverPmf& pmf) {
  Table t{{"h", "probability"}, {}, {}};
  for (int h = 0; h < pmf.size(); ++h) t.add_row({static_cast<long long>(h), pmf(h)});
  return t;
}

}  // namespace hocount
