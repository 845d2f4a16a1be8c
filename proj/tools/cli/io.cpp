#include "cli/io.hpp"

#include <charconv>
#include <cstdio>
#include <sstream>

namespace nlpm::cli {

std::string tool_version() { return NLPM_VERSION; }

std::uint64_t fnv1a(std::string_view data) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hex(std::uint64_t value) {
  char buf[19];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(value));
  return buf;
}

void write_meta_comment(std::ostream& out, const RunMeta& meta) {
  out << "# nlpm " << tool_version() << " command=" << meta.command << " seed=" << meta.seed
      << " config_hash=" << hex(meta.config_hash) << '\n';
}

nlohmann::json meta_json(const RunMeta& meta) {
  return {{"schema_version", kSchemaVersion},
          {"tool", "nlpm"},
          {"version", tool_version()},
          {"command", meta.command},
          {"seed", meta.seed},
          {"config_hash", hex(meta.config_hash)}};
}

std::ofstream open_output(const std::filesystem::path& path) {
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
    if (ec) throw DataError("cannot create directory " + path.parent_path().string());
  }
  std::ofstream out(path);
  if (!out) throw DataError("cannot open " + path.string() + " for writing");
  out.precision(17);
  return out;
}

void write_json(const std::filesystem::path& path, const nlohmann::json& j) {
  auto out = open_output(path);
  out << j.dump(2) << '\n';
}

int CsvTable::column(std::string_view name) const {
  for (std::size_t c = 0; c < header.size(); ++c) {
    if (header[c] == name) return static_cast<int>(c);
  }
  return -1;
}

namespace {

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> cells;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

}  // namespace

CsvTable read_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path.string());
  CsvTable t;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    auto cells = split(line);
    if (t.header.empty()) {
      t.header = std::move(cells);
      continue;
    }
    if (cells.size() != t.header.size()) {
      throw DataError(path.string() + ":" + std::to_string(lineno) + ": expected " +
                      std::to_string(t.header.size()) + " columns");
    }
    t.rows.push_back(std::move(cells));
  }
  if (t.header.empty()) throw DataError(path.string() + ": missing header");
  return t;
}

double parse_double(const std::string& s, const std::string& where) {
  double v = 0.0;
  const auto* end = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || ptr != end) throw DataError(where + ": not a number '" + s + "'");
  return v;
}

std::uint64_t parse_id(const std::string& s, const std::string& where) {
  std::uint64_t v = 0;
  const auto* end = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || ptr != end) throw DataError(where + ": not a node id '" + s + "'");
  return v;
}

PositionTable read_positions(const std::filesystem::path& path) {
  const auto t = read_csv(path);
  int id = t.column("original_id");
  if (id < 0) id = t.column("node");
  const int x = t.column("x");
  const int y = t.column("y");
  if (id < 0 || x < 0 || y < 0) {
    throw DataError(path.string() + ": need node (or original_id), x and y columns");
  }
  PositionTable p;
  for (const auto& row : t.rows) {
    p.ids.push_back(parse_id(row[id], path.string()));
    p.points.push_back({parse_double(row[x], path.string()), parse_double(row[y], path.string())});
  }
  return p;
}

}  // namespace nlpm::cli
