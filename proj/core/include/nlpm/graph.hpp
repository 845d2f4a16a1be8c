#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <utility>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "nlpm/types.hpp"

namespace nlpm {

using Edge = std::pair<NodeId, NodeId>;

/// Immutable undirected binary network in compressed adjacency form.
///
/// Neighbour lists are sorted, symmetric and loop-free. Safe to share
/// read-only across threads.
class Network {
 public:
  Network() = default;

  /// Builds a network on nodes 0..n_nodes-1. Self-loops and duplicate edges
  /// (in either orientation) are dropped. Throws DataError on ids >= n_nodes.
  static Network from_edges(std::size_t n_nodes, std::span<const Edge> edges);

  std::size_t size() const { return offsets_.empty() ? 0 : offsets_.size() - 1; }
  std::size_t n_edges() const { return adjacency_.size() / 2; }

  std::span<const NodeId> neighbors(NodeId i) const {
    return {adjacency_.data() + offsets_[i], adjacency_.data() + offsets_[i + 1]};
  }
  std::size_t degree(NodeId i) const { return offsets_[i + 1] - offsets_[i]; }

  /// y_ij. Requires i != j and both in range (throws std::out_of_range /
  /// std::invalid_argument otherwise). Binary search over the sorted list.
  bool edge_indicator(NodeId i, NodeId j) const;

  /// Undirected edges with i < j in lexicographic order.
  std::vector<Edge> edges() const;

  double density() const;

  friend bool operator==(const Network&, const Network&) = default;

 private:
  std::vector<std::size_t> offsets_;
  std::vector<NodeId> adjacency_;
};

/// A network read from disk together with the original file ids:
/// original_ids[dense] is the id that appeared in the file.
struct LoadedNetwork {
  Network network;
  std::vector<std::uint64_t> original_ids;
};

/// Parses a whitespace separated edge list ("i j" or "i\tj"; '#' comments).
/// Ids are remapped densely in order of first appearance. A line "i i"
/// registers node i without adding an edge.
LoadedNetwork load_edge_list(const std::filesystem::path& path);
LoadedNetwork parse_edge_list(std::istream& in, const std::string& source_name = "<stream>");

/// Writes "i j" lines (i < j). Nodes without edges are written as "i i" so the
/// node count survives a reload. If ids is non-empty it maps dense ids to the
/// ids written out.
void write_edge_list(const Network& net, std::ostream& out,
                     std::span<const std::uint64_t> ids = {});

/// {original_id -> dense_id} sidecar object.
nlohmann::json id_map_json(std::span<const std::uint64_t> original_ids);

}  // namespace nlpm
