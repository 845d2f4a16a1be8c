#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "nlpm/types.hpp"

namespace nlpm::cli {

inline constexpr int kSchemaVersion = 1;

std::string tool_version();

/// 64-bit FNV-1a.
std::uint64_t fnv1a(std::string_view data);

struct RunMeta {
  std::string command;
  std::uint64_t seed = 0;
  std::uint64_t config_hash = 0;
};

std::string hex(std::uint64_t value);

/// "# nlpm <version> command=<c> seed=<s> config_hash=<h>"
void write_meta_comment(std::ostream& out, const RunMeta& meta);
nlohmann::json meta_json(const RunMeta& meta);

/// Opens for writing, creating parent directories. Throws DataError.
std::ofstream open_output(const std::filesystem::path& path);
void write_json(const std::filesystem::path& path, const nlohmann::json& j);

/// Rows of a CSV file with a header line; '#' lines are skipped.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  /// Column index by name, or -1.
  int column(std::string_view name) const;
};
CsvTable read_csv(const std::filesystem::path& path);

/// Positions keyed by an id column ("original_id" if present, else "node").
struct PositionTable {
  std::vector<std::uint64_t> ids;
  Positions points;
};
PositionTable read_positions(const std::filesystem::path& path);

double parse_double(const std::string& s, const std::string& where);
std::uint64_t parse_id(const std::string& s, const std::string& where);

}  // namespace nlpm::cli
