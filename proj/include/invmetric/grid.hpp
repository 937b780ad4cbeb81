#pragma once

// Graded grids whose node spacing follows the boundary distance, with
// Dijkstra shortest paths and multi-source distance fields.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <queue>
#include <unordered_map>
#include <utility>
#include <vector>

#include "invmetric/domains.hpp"
#include "invmetric/parallel.hpp"

namespace invmetric {

struct GridOptions {
  /// Target node spacing as a fraction of δ(z).
  double spacing_factor = 1.0 / 8.0;
  /// Global exclusion floor as a fraction of the domain diameter.
  double floor_fraction = 1e-3;
  /// Nodes are joined when closer than this many spacings: covers the 8
  /// neighbours, knight moves and (3, 1) moves of a uniform patch.
  double connect_radius = 3.2;
  int max_level = 30;
};

/// Scalar metric density (per unit Euclidean length) used for edge weights.
using ScalarDensity = std::function<double(Complex)>;

class GradedGrid {
 public:
  struct Node {
    Complex position;
    double spacing;
    int level;
    double density;
  };

  struct Edge {
    std::uint32_t to;
    double weight;
  };

  struct Path {
    double length = std::numeric_limits<double>::infinity();
    std::vector<Complex> points;
  };

  GradedGrid(const Domain& domain, ScalarDensity density, double delta_floor, GridOptions options = {})
      : domain_(domain), density_(std::move(density)), floor_(delta_floor), options_(options) {
    if (!domain.is_bounded()) throw PreconditionError("graded grids need a bounded domain");
    const auto [center, radius] = domain.bounding_circle();
    floor_ = std::max(floor_, options_.floor_fraction * domain.diameter());
    root_side_ = 2.0 * radius * (1.0 + 1e-9);
    root_corner_ = center - Complex(radius, radius) * (1.0 + 1e-9);
    subdivide(root_corner_ + 0.5 * Complex(root_side_, root_side_), root_side_, 0);
    if (nodes_.empty()) throw NumericError("graded grid is empty; the exclusion floor is too large");
    for (auto& n : nodes_) n.density = density_(n.position);
    build_index();
    build_edges();
  }

  std::size_t size() const { return nodes_.size(); }
  const std::vector<Node>& nodes() const { return nodes_; }
  double delta_floor() const { return floor_; }
  const std::vector<std::vector<Edge>>& adjacency() const { return adjacency_; }

  /// Simpson rule on the straight segment [a, b] given endpoint densities.
  double segment_weight(Complex a, double da, Complex b, double db) const {
    const Complex mid = 0.5 * (a + b);
    if (!domain_.contains(mid)) return std::numeric_limits<double>::infinity();
    return std::abs(b - a) / 6.0 * (da + 4.0 * density_(mid) + db);
  }

  /// Shortest grid path from z to w (both become temporary nodes).
  Path shortest_path(Complex z, Complex w) const {
    domain_.require_interior(z);
    domain_.require_interior(w);
    const auto seeds = attach(z);
    const auto sinks = attach(w);
    Path direct;
    if (std::abs(z - w) <= connect_reach(z)) {
      direct.length = segment_weight(z, density_(z), w, density_(w));
      direct.points = {z, w};
    }
    const std::size_t n = nodes_.size();
    std::vector<double> dist(n, std::numeric_limits<double>::infinity());
    std::vector<std::uint32_t> pred(n, kNone);
    std::unordered_map<std::uint32_t, double> sink_weight;
    for (const auto& [node, weight] : sinks) sink_weight[node] = weight;

    using Item = std::pair<double, std::uint32_t>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
    for (const auto& [node, weight] : seeds) {
      if (weight < dist[node]) {
        dist[node] = weight;
        heap.emplace(weight, node);
      }
    }
    double best = direct.length;
    std::uint32_t best_node = kNone;
    while (!heap.empty()) {
      const auto [d, u] = heap.top();
      heap.pop();
      if (d > dist[u]) continue;
      if (d >= best) break;
      if (auto it = sink_weight.find(u); it != sink_weight.end() && d + it->second < best) {
        best = d + it->second;
        best_node = u;
      }
      for (const Edge& e : adjacency_[u]) {
        const double nd = d + e.weight;
        if (nd < dist[e.to]) {
          dist[e.to] = nd;
          pred[e.to] = u;
          heap.emplace(nd, e.to);
        }
      }
    }
    if (best_node == kNone) {
      if (std::isfinite(direct.length)) return direct;
      throw NumericError("grid is disconnected between the requested points; refine near narrow necks");
    }
    Path out;
    out.length = best;
    out.points.push_back(w);
    for (std::uint32_t u = best_node; u != kNone; u = pred[u]) out.points.push_back(nodes_[u].position);
    out.points.push_back(z);
    std::reverse(out.points.begin(), out.points.end());
    return out;
  }

  /// Grid distance from the nearest of `sources` to every node.
  std::vector<double> distances_from(const std::vector<Complex>& sources) const {
    const std::size_t n = nodes_.size();
    std::vector<double> dist(n, std::numeric_limits<double>::infinity());
    using Item = std::pair<double, std::uint32_t>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
    for (Complex s : sources) {
      for (const auto& [node, weight] : attach(s)) {
        if (weight < dist[node]) {
          dist[node] = weight;
          heap.emplace(weight, node);
        }
      }
    }
    while (!heap.empty()) {
      const auto [d, u] = heap.top();
      heap.pop();
      if (d > dist[u]) continue;
      for (const Edge& e : adjacency_[u]) {
        if (d + e.weight < dist[e.to]) {
          dist[e.to] = d + e.weight;
          heap.emplace(dist[e.to], e.to);
        }
      }
    }
    return dist;
  }

  /// Distance at an arbitrary interior point from a field computed by distances_from.
  double query(const std::vector<double>& field, Complex p) const {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& [node, weight] : attach(p)) best = std::min(best, field[node] + weight);
    return best;
  }

 private:
  static constexpr std::uint32_t kNone = std::numeric_limits<std::uint32_t>::max();

  double target_spacing(Complex z) const {
    return std::max(domain_.unsigned_boundary_distance(z), floor_) * options_.spacing_factor;
  }

  double connect_reach(Complex z) const { return options_.connect_radius * target_spacing(z); }

  void subdivide(Complex center, double side, int level) {
    const bool inside = domain_.contains(center);
    const double d = domain_.unsigned_boundary_distance(center);
    const double signed_delta = inside ? d : -d;
    const double half_diagonal = side * std::sqrt(0.5);
    if (signed_delta + half_diagonal < floor_) return;
    const double target = std::max(signed_delta, floor_) * options_.spacing_factor;
    if (side > target && level < options_.max_level) {
      const double q = 0.25 * side;
      for (Complex offset : {Complex(-q, -q), Complex(q, -q), Complex(-q, q), Complex(q, q)})
        subdivide(center + offset, 0.5 * side, level + 1);
      return;
    }
    if (inside && d >= floor_) nodes_.push_back({center, side, level, 0.0});
  }

  static std::int64_t key(std::int64_t ix, std::int64_t iy) { return (ix << 32) ^ (iy & 0xffffffff); }

  double level_side(int level) const { return root_side_ / static_cast<double>(std::int64_t{1} << level); }

  void build_index() {
    for (std::uint32_t i = 0; i < nodes_.size(); ++i) {
      const Node& n = nodes_[i];
      min_level_ = std::min(min_level_, n.level);
      max_level_ = std::max(max_level_, n.level);
      const double s = level_side(n.level);
      const Complex rel = n.position - root_corner_;
      index_[n.level][key(static_cast<std::int64_t>(std::floor(rel.real() / s)),
                          static_cast<std::int64_t>(std::floor(rel.imag() / s)))]
          .push_back(i);
    }
  }

  /// Visits nodes of `level` within `radius` of p.
  template <class Visit>
  void for_each_near(Complex p, int level, double radius, Visit&& visit) const {
    auto lv = index_.find(level);
    if (lv == index_.end()) return;
    const double s = level_side(level);
    const Complex rel = p - root_corner_;
    const auto x0 = static_cast<std::int64_t>(std::floor((rel.real() - radius) / s));
    const auto x1 = static_cast<std::int64_t>(std::floor((rel.real() + radius) / s));
    const auto y0 = static_cast<std::int64_t>(std::floor((rel.imag() - radius) / s));
    const auto y1 = static_cast<std::int64_t>(std::floor((rel.imag() + radius) / s));
    for (auto ix = x0; ix <= x1; ++ix) {
      for (auto iy = y0; iy <= y1; ++iy) {
        auto it = lv->second.find(key(ix, iy));
        if (it == lv->second.end()) continue;
        for (std::uint32_t j : it->second)
          if (std::abs(nodes_[j].position - p) <= radius) visit(j);
      }
    }
  }

  void build_edges() {
    const std::size_t n = nodes_.size();
    std::vector<std::vector<Edge>> forward(n);
    parallel_for(n, [&](std::size_t i) {
      const Node& a = nodes_[i];
      for (int level = std::max(min_level_, a.level - 1); level <= std::min(max_level_, a.level + 1); ++level) {
        const double radius = options_.connect_radius * std::max(a.spacing, level_side(level)) * (1.0 + 1e-12);
        for_each_near(a.position, level, radius, [&](std::uint32_t j) {
          if (j <= i) return;
          const Node& b = nodes_[j];
          if (std::abs(a.position - b.position) > options_.connect_radius * std::max(a.spacing, b.spacing) * (1.0 + 1e-12))
            return;
          const double w = segment_weight(a.position, a.density, b.position, b.density);
          if (std::isfinite(w)) forward[i].push_back({j, w});
        });
      }
    });
    adjacency_.assign(n, {});
    for (std::uint32_t i = 0; i < n; ++i) {
      for (const Edge& e : forward[i]) {
        adjacency_[i].push_back(e);
        adjacency_[e.to].push_back({i, e.weight});
      }
    }
  }

  /// Edges from an arbitrary interior point p to nearby nodes of any level.
  std::vector<std::pair<std::uint32_t, double>> attach(Complex p) const {
    std::vector<std::pair<std::uint32_t, double>> out;
    const double dp = density_(p);
    const double own = target_spacing(p);
    for (double scale : {1.0, 2.0, 4.0}) {
      for (int level = min_level_; level <= max_level_; ++level) {
        const double radius = scale * options_.connect_radius * std::max(own, level_side(level));
        if (radius > 64.0 * level_side(level)) continue;
        for_each_near(p, level, radius, [&](std::uint32_t j) {
          const double w = segment_weight(p, dp, nodes_[j].position, nodes_[j].density);
          if (std::isfinite(w)) out.emplace_back(j, w);
        });
      }
      if (!out.empty()) break;
    }
    if (out.empty()) throw NumericError("point could not be attached to the graded grid");
    return out;
  }

  Domain domain_;
  ScalarDensity density_;
  double floor_;
  GridOptions options_;
  double root_side_ = 0.0;
  Complex root_corner_;
  std::vector<Node> nodes_;
  int min_level_ = std::numeric_limits<int>::max();
  int max_level_ = 0;
  std::unordered_map<int, std::unordered_map<std::int64_t, std::vector<std::uint32_t>>> index_;
  std::vector<std::vector<Edge>> adjacency_;
};

}  // namespace invmetric
