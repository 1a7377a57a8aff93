#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "hocount/pmf.hpp"
#include "hocount/point_process.hpp"
#include "hocount/traversal.hpp"

namespace hocount {

inline constexpr const char* kVersion = "1.0.0";

using Cell = std::variant<long long, double, std::string>;

/// Column-oriented result table with optional scalar summaries.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  std::vector<std::pair<std::string, Cell>> summary;

  /// Throws std::invalid_argument if the row width does not match.
  void add_row(std::vector<Cell> row);
};

/// Everything needed to regenerate an output file. `command` is the canonical
/// argument list (subcommand first) and excludes output-only flags such as
/// --out and --threads.
struct Manifest {
  std::vector<std::string> command;
  std::vector<std::pair<std::string, std::string>> params;
  std::optional<std::uint64_t> seed;
  std::string version = kVersion;
};

enum class Format { csv, json };

std::optional<Format> parse_format(const std::string& name);

/// Shortest "%.10g" rendering; integers print without a decimal point.
std::string format_number(double x);
std::string format_cell(const Cell& cell);

/// CSV with '#'-prefixed manifest lines, then the header and rows.
std::string render_csv(const Table& table, const Manifest& manifest);
/// {"manifest": ..., "columns": [...], "rows": [[...]], "summary": {...}}.
std::string render_json(const Table& table, const Manifest& manifest);
std::string render(const Table& table, const Manifest& manifest, Format format);
std::string render_manifest(const Manifest& manifest);

/// Writes through a temporary sibling file and renames it into place.
void write_file_atomic(const std::string& path, const std::string& content);

/// Reads the manifest command embedded in a CSV, JSON or manifest file.
/// Throws std::runtime_error if none is found.
std::vector<std::string> read_manifest_command(const std::string& path);

Table pattern_table(const PointPattern& pattern);
Table trajectory_table(const Trajectory& traj);
Table crossings_table(const HandoverCount& count);
Table pmf_table(const HandoverPmf& pmf);

}  // namespace hocount
