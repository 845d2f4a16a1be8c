#include "nlpm/graph.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>

#include <nlohmann/json.hpp>

namespace nlpm {

Network Network::from_edges(std::size_t n_nodes, std::span<const Edge> edges) {
  std::vector<std::size_t> degree(n_nodes, 0);
  for (auto [i, j] : edges) {
    if (i >= n_nodes || j >= n_nodes)
      throw DataError("edge (" + std::to_string(i) + "," + std::to_string(j) +
                      ") references a node outside 0.." + std::to_string(n_nodes));
    if (i == j) continue;
    ++degree[i];
    ++degree[j];
  }

  Network net;
  net.offsets_.assign(n_nodes + 1, 0);
  for (std::size_t i = 0; i < n_nodes; ++i) net.offsets_[i + 1] = net.offsets_[i] + degree[i];
  net.adjacency_.resize(net.offsets_.back());
  std::vector<std::size_t> cursor(net.offsets_.begin(), net.offsets_.end() - 1);
  for (auto [i, j] : edges) {
    if (i == j) continue;
    net.adjacency_[cursor[i]++] = j;
    net.adjacency_[cursor[j]++] = i;
  }

  // Sort and deduplicate each list, then compact.
  std::vector<std::size_t> new_offsets(n_nodes + 1, 0);
  std::size_t write = 0;
  for (std::size_t i = 0; i < n_nodes; ++i) {
    auto first = net.adjacency_.begin() + static_cast<std::ptrdiff_t>(net.offsets_[i]);
    auto last = net.adjacency_.begin() + static_cast<std::ptrdiff_t>(net.offsets_[i + 1]);
    std::sort(first, last);
    auto unique_end = std::unique(first, last);
    for (auto it = first; it != unique_end; ++it) net.adjacency_[write++] = *it;
    new_offsets[i + 1] = write;
  }
  net.adjacency_.resize(write);
  net.adjacency_.shrink_to_fit();
  net.offsets_ = std::move(new_offsets);
  return net;
}

bool Network::edge_indicator(NodeId i, NodeId j) const {
  if (i >= size() || j >= size()) throw std::out_of_range("edge_indicator: node id out of range");
  if (i == j) throw std::invalid_argument("edge_indicator: self-pairs are not modelled");
  auto nb = neighbors(i);
  return std::binary_search(nb.begin(), nb.end(), j);
}

std::vector<Edge> Network::edges() const {
  std::vector<Edge> out;
  out.reserve(n_edges());
  for (NodeId i = 0; i < size(); ++i)
    for (NodeId j : neighbors(i))
      if (i < j) out.emplace_back(i, j);
  return out;
}

double Network::density() const {
  const double n = static_cast<double>(size());
  return n < 2 ? 0.0 : static_cast<double>(n_edges()) / (n * (n - 1) / 2.0);
}

namespace {

bool parse_id(std::string_view token, std::uint64_t& value) {
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  return ec == std::errc{} && ptr == token.data() + token.size();
}

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> tokens;
  std::size_t pos = 0;
  while (pos < line.size()) {
    while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t' || line[pos] == '\r')) ++pos;
    std::size_t end = pos;
    while (end < line.size() && line[end] != ' ' && line[end] != '\t' && line[end] != '\r') ++end;
    if (end > pos) tokens.push_back(line.substr(pos, end - pos));
    pos = end;
  }
  return tokens;
}

}  // namespace

LoadedNetwork parse_edge_list(std::istream& in, const std::string& source_name) {
  std::unordered_map<std::uint64_t, NodeId> dense;
  std::vector<std::uint64_t> original;
  std::vector<Edge> edges;

  auto intern = [&](std::uint64_t id) {
    auto [it, inserted] = dense.try_emplace(id, static_cast<NodeId>(original.size()));
    if (inserted) original.push_back(id);
    return it->second;
  };

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto tokens = split_ws(line);
    if (tokens.empty() || tokens.front().front() == '#') continue;
    std::uint64_t a = 0, b = 0;
    if (tokens.size() != 2 || !parse_id(tokens[0], a) || !parse_id(tokens[1], b))
      throw DataError(source_name + ":" + std::to_string(line_no) +
                      ": expected two non-negative integer ids, got '" + line + "'");
    NodeId i = intern(a);
    NodeId j = intern(b);
    edges.emplace_back(i, j);
  }
  if (original.empty()) throw DataError(source_name + ": edge list contains no nodes");

  return {Network::from_edges(original.size(), edges), std::move(original)};
}

LoadedNetwork load_edge_list(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open edge list '" + path.string() + "'");
  return parse_edge_list(in, path.string());
}

void write_edge_list(const Network& net, std::ostream& out, std::span<const std::uint64_t> ids) {
  auto name = [&](NodeId i) -> std::uint64_t { return ids.empty() ? i : ids[i]; };
  for (NodeId i = 0; i < net.size(); ++i) {
    if (net.degree(i) == 0) {
      out << name(i) << ' ' << name(i) << '\n';
      continue;
    }
    for (NodeId j : net.neighbors(i))
      if (i < j) out << name(i) << ' ' << name(j) << '\n';
  }
}

nlohmann::json id_map_json(std::span<const std::uint64_t> original_ids) {
  nlohmann::json map = nlohmann::json::object();
  for (std::size_t dense = 0; dense < original_ids.size(); ++dense)
    map[std::to_string(original_ids[dense])] = dense;
  return map;
}

}  // namespace nlpm
