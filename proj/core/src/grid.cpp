#include "nlpm/grid.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <ostream>
#include <string>

namespace nlpm {

BoxGrid::BoxGrid(std::span<const Point> z, const Network& net, std::uint32_t M, double S)
    : M_(M), S_(S) {
  if (M == 0) throw ConfigError("grid needs at least one interval per axis");
  if (!(S > 0.0)) throw ConfigError("grid half-extent S must be positive");
  if (z.size() != net.size())
    throw ConfigError("grid: " + std::to_string(z.size()) + " positions for " +
                      std::to_string(net.size()) + " nodes");
  side_ = 2.0 * S / M;
  const std::uint64_t n_boxes = std::uint64_t{M} * M;
  dense_ = n_boxes <= kDenseLimit;
  if (dense_) dense_slot_.assign(n_boxes, -1);

  box_of_.resize(z.size());
  for (std::size_t i = 0; i < z.size(); ++i) {
    box_of_[i] = locate(z[i]);
    add_to_box(box_of_[i]);
  }
  xi_.assign(z.size(), {});
  if (dense_ && n_boxes * z.size() <= kXiIndexLimit) xi_pos_.assign(n_boxes * z.size(), -1);
  for (NodeId i = 0; i < net.size(); ++i)
    for (NodeId j : net.neighbors(i)) xi_increment(i, box_of_[j]);
}

std::uint32_t BoxGrid::lattice_index(double c) const {
  if (!(c >= -S_ && c <= S_))
    throw DataError("position coordinate " + std::to_string(c) + " outside [-S, S]");
  const double k = std::floor((c + S_) / side_);
  if (k <= 0.0) return 0;
  return k >= M_ - 1 ? M_ - 1 : static_cast<std::uint32_t>(k);
}

BoxId BoxGrid::locate(Point z) const { return box_id(lattice_index(z.x), lattice_index(z.y)); }

Point BoxGrid::center(BoxId box) const {
  const auto gx = static_cast<double>(box / M_);
  const auto gy = static_cast<double>(box % M_);
  return {-S_ + side_ * gx + 0.5 * side_, -S_ + side_ * gy + 0.5 * side_};
}

std::int64_t BoxGrid::slot(BoxId box) const {
  if (dense_) return dense_slot_[box];
  auto it = sparse_slot_.find(box);
  return it == sparse_slot_.end() ? -1 : it->second;
}

void BoxGrid::set_slot(BoxId box, std::int64_t s) {
  if (dense_)
    dense_slot_[box] = static_cast<std::int32_t>(s);
  else
    sparse_slot_[box] = s;
}

void BoxGrid::erase_slot(BoxId box) {
  if (dense_)
    dense_slot_[box] = -1;
  else
    sparse_slot_.erase(box);
}

std::uint32_t BoxGrid::occupancy(BoxId box) const {
  const auto s = slot(box);
  return s < 0 ? 0 : occupied_[static_cast<std::size_t>(s)].count;
}

void BoxGrid::add_to_box(BoxId box) {
  const auto s = slot(box);
  if (s >= 0) {
    ++occupied_[static_cast<std::size_t>(s)].count;
    return;
  }
  set_slot(box, static_cast<std::int64_t>(occupied_.size()));
  occupied_.push_back({box, 1, center(box)});
}

void BoxGrid::remove_from_box(BoxId box) {
  const auto s = slot(box);
  if (s < 0) throw ConsistencyError("grid: removing a node from an empty box");
  auto& entry = occupied_[static_cast<std::size_t>(s)];
  if (--entry.count > 0) return;
  erase_slot(box);
  if (static_cast<std::size_t>(s) + 1 != occupied_.size()) {
    entry = occupied_.back();
    set_slot(entry.box, s);
  }
  occupied_.pop_back();
}

std::int32_t* BoxGrid::xi_pos(NodeId j, BoxId box) {
  return xi_pos_.empty() ? nullptr : &xi_pos_[std::uint64_t{j} * M_ * M_ + box];
}

void BoxGrid::xi_increment(NodeId j, BoxId box) {
  auto& xs = xi_[j];
  if (auto* pos = xi_pos(j, box)) {
    if (*pos >= 0) {
      ++xs[static_cast<std::size_t>(*pos)].count;
    } else {
      *pos = static_cast<std::int32_t>(xs.size());
      xs.push_back({box, 1});
    }
    return;
  }
  for (auto& e : xs)
    if (e.box == box) {
      ++e.count;
      return;
    }
  xs.push_back({box, 1});
}

void BoxGrid::xi_decrement(NodeId j, BoxId box) {
  auto& xs = xi_[j];
  auto* pos = xi_pos(j, box);
  std::size_t k = xs.size();
  if (pos) {
    if (*pos >= 0) k = static_cast<std::size_t>(*pos);
  } else {
    k = static_cast<std::size_t>(
        std::find_if(xs.begin(), xs.end(), [&](const XiEntry& e) { return e.box == box; }) -
        xs.begin());
  }
  if (k == xs.size()) throw ConsistencyError("grid: xi entry missing for a neighbour's box");
  if (--xs[k].count > 0) return;
  if (pos) *pos = -1;
  if (k + 1 != xs.size()) {
    xs[k] = xs.back();
    if (auto* moved = xi_pos(j, xs[k].box)) *moved = static_cast<std::int32_t>(k);
  }
  xs.pop_back();
}

std::uint32_t BoxGrid::xi(NodeId i, BoxId box) const {
  if (!xi_pos_.empty()) {
    const auto pos = xi_pos_[std::uint64_t{i} * M_ * M_ + box];
    return pos < 0 ? 0 : xi_[i][static_cast<std::size_t>(pos)].count;
  }
  for (const auto& e : xi_[i])
    if (e.box == box) return e.count;
  return 0;
}

std::int64_t BoxGrid::zeta(NodeId i, BoxId box, bool i_in_box) const {
  const std::int64_t value = std::int64_t{occupancy(box)} - xi(i, box) - (i_in_box ? 1 : 0);
  if (value < 0)
    throw ConsistencyError("grid: negative zeta for node " + std::to_string(i) + " in box " +
                           std::to_string(box));
  return value;
}

void BoxGrid::move_node(NodeId i, Point z_new, const Network& net) {
  const BoxId to = locate(z_new);
  const BoxId from = box_of_[i];
  if (to == from) return;
  remove_from_box(from);
  add_to_box(to);
  for (NodeId j : net.neighbors(i)) {
    xi_decrement(j, from);
    xi_increment(j, to);
  }
  box_of_[i] = to;
}

namespace {

std::map<BoxId, std::uint32_t> canonical(std::span<const OccupiedBox> boxes) {
  std::map<BoxId, std::uint32_t> out;
  for (const auto& b : boxes) out[b.box] = b.count;
  return out;
}

std::map<BoxId, std::uint32_t> canonical(std::span<const XiEntry> xs) {
  std::map<BoxId, std::uint32_t> out;
  for (const auto& e : xs) out[e.box] = e.count;
  return out;
}

}  // namespace

bool BoxGrid::same_counts(const BoxGrid& other) const {
  if (M_ != other.M_ || S_ != other.S_ || box_of_ != other.box_of_) return false;
  if (canonical(occupied_) != canonical(other.occupied_)) return false;
  for (std::size_t i = 0; i < xi_.size(); ++i)
    if (canonical(xi_[i]) != canonical(other.xi_[i])) return false;
  return true;
}

void BoxGrid::check_invariants(const Network& net) const {
  std::map<BoxId, std::uint32_t> counts;
  for (BoxId b : box_of_) ++counts[b];
  if (counts != canonical(occupied_)) throw ConsistencyError("grid: occupancy counts drifted");
  for (const auto& b : occupied_) {
    if (b.count == 0) throw ConsistencyError("grid: empty box kept in the occupied list");
    if (slot(b.box) < 0 || occupied_[static_cast<std::size_t>(slot(b.box))].box != b.box)
      throw ConsistencyError("grid: slot index out of sync");
  }
  for (NodeId i = 0; i < net.size(); ++i) {
    std::map<BoxId, std::uint32_t> expected;
    for (NodeId j : net.neighbors(i)) ++expected[box_of_[j]];
    for (const auto& e : xi_[i])
      if (e.count == 0) throw ConsistencyError("grid: zero xi entry stored");
    if (canonical(xi_[i]) != expected)
      throw ConsistencyError("grid: xi counts drifted for node " + std::to_string(i));
    for (const auto& e : xi_[i]) zeta(i, e.box, box_of_[i] == e.box);
  }
  if (!xi_pos_.empty()) {
    std::size_t indexed = 0;
    for (auto p : xi_pos_) indexed += p >= 0;
    std::size_t stored = 0;
    for (NodeId i = 0; i < net.size(); ++i) {
      stored += xi_[i].size();
      for (std::size_t k = 0; k < xi_[i].size(); ++k)
        if (xi_pos_[std::uint64_t{i} * M_ * M_ + xi_[i][k].box] != static_cast<std::int32_t>(k))
          throw ConsistencyError("grid: xi index out of sync for node " + std::to_string(i));
    }
    if (indexed != stored) throw ConsistencyError("grid: stale xi index entries");
  }
}

void BoxGrid::write_csv(std::ostream& out) const {
  out << "gx,gy,center_x,center_y,count\n";
  for (const auto& [box, count] : canonical(occupied_)) {
    const Point c = center(box);
    out << box / M_ << ',' << box % M_ << ',' << c.x << ',' << c.y << ',' << count << '\n';
  }
}

double center_distance(Point z, const BoxGrid& grid, BoxId box) {
  return distance(z, grid.center(box));
}

}  // namespace nlpm
