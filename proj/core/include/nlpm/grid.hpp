#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <unordered_map>
#include <vector>

#include "nlpm/graph.hpp"
#include "nlpm/types.hpp"

namespace nlpm {

/// Linear lattice index gx * M + gy of a box, gx, gy in 0..M-1.
using BoxId = std::uint64_t;

struct OccupiedBox {
  BoxId box;
  std::uint32_t count;
  Point center;
};

struct XiEntry {
  BoxId box;
  std::uint32_t count;
};

/// M x M partition of [-S, S]^2 with incrementally maintained counts.
///
/// Holds, for every node, its box; for every non-empty box, the number of
/// nodes N[g,h]; and for every node i, the sparse edge counts xi_i[g,h]
/// (zero entries are never stored). Non-edge counts zeta are derived on
/// demand. Mutation is single-writer.
class BoxGrid {
 public:
  BoxGrid() = default;
  BoxGrid(std::span<const Point> z, const Network& net, std::uint32_t M, double S);

  std::uint32_t intervals() const { return M_; }
  double side() const { return side_; }
  double half_extent() const { return S_; }
  std::size_t n_nodes() const { return box_of_.size(); }

  /// min(floor((c + S) / b), M - 1); throws DataError outside [-S, S].
  std::uint32_t lattice_index(double c) const;
  BoxId locate(Point z) const;
  BoxId box_id(std::uint32_t gx, std::uint32_t gy) const { return BoxId{gx} * M_ + gy; }
  Point center(BoxId box) const;

  BoxId box_of(NodeId i) const { return box_of_[i]; }
  std::uint32_t occupancy(BoxId box) const;

  /// Non-empty boxes, in unspecified order.
  std::span<const OccupiedBox> occupied() const { return occupied_; }

  std::span<const XiEntry> xi(NodeId i) const { return xi_[i]; }
  std::uint32_t xi(NodeId i, BoxId box) const;

  /// N[g,h] - xi_i[g,h] - i_in_box. Throws ConsistencyError if negative.
  std::int64_t zeta(NodeId i, BoxId box, bool i_in_box) const;

  /// Moves node i to the box containing z_new, updating occupancy and the
  /// xi counts of i's neighbours: O(D_i) when the box changes (O(D_i |xi_j|)
  /// on grids too large for the per-node index), O(1) otherwise.
  void move_node(NodeId i, Point z_new, const Network& net);

  /// Exact comparison of all counts, independent of internal ordering.
  bool same_counts(const BoxGrid& other) const;
  friend bool operator==(const BoxGrid& a, const BoxGrid& b) { return a.same_counts(b); }

  /// Recounts everything from the definitions and throws ConsistencyError on
  /// any mismatch with the incremental state.
  void check_invariants(const Network& net) const;

  /// Debug dump: gx,gy,center_x,center_y,count for every non-empty box.
  void write_csv(std::ostream& out) const;

 private:
  static constexpr std::uint64_t kDenseLimit = std::uint64_t{1} << 22;
  static constexpr std::uint64_t kXiIndexLimit = std::uint64_t{1} << 24;

  std::int64_t slot(BoxId box) const;
  void set_slot(BoxId box, std::int64_t s);
  void erase_slot(BoxId box);
  void add_to_box(BoxId box);
  void remove_from_box(BoxId box);
  std::int32_t* xi_pos(NodeId j, BoxId box);
  void xi_increment(NodeId j, BoxId box);
  void xi_decrement(NodeId j, BoxId box);

  std::uint32_t M_ = 1;
  double S_ = 1.0;
  double side_ = 2.0;
  bool dense_ = true;
  std::vector<BoxId> box_of_;
  std::vector<OccupiedBox> occupied_;
  std::vector<std::int32_t> dense_slot_;
  std::unordered_map<BoxId, std::int64_t> sparse_slot_;
  std::vector<std::vector<XiEntry>> xi_;
  // Position of (j, box) in xi_[j], or -1; kept only while N * M^2 is small.
  std::vector<std::int32_t> xi_pos_;
};

/// Euclidean distance from z to the centre of a box.
double center_distance(Point z, const BoxGrid& grid, BoxId box);

}  // namespace nlpm
