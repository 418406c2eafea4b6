#pragma once

// Finite weighted graphs with exact integer distances.
//
// Weights are stored in half-units: an ordinary edge has weight 2 and an
// apex edge added by cone() has weight 1, so every length stays an integer.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

namespace interp {

using Weight = std::int64_t;

inline constexpr Weight kUnitWeight = 2;
inline constexpr Weight kApexWeight = 1;
inline constexpr Weight kUnreachable = std::numeric_limits<Weight>::max();

struct WeightedEdge {
  std::string u;
  std::string v;
  Weight weight = kUnitWeight;
};

/// Immutable undirected graph over opaque string keys. Vertices are kept in
/// sorted order; edges are stored with u < v and sorted, so two graphs built
/// from the same vertex/edge sets compare and serialize identically.
class MetricGraph {
 public:
  struct Edge {
    std::size_t u;
    std::size_t v;
    Weight weight;
    friend bool operator==(const Edge&, const Edge&) = default;
  };
  struct Arc {
    std::size_t to;
    Weight weight;
    friend bool operator==(const Arc&, const Arc&) = default;
  };

  MetricGraph() = default;

  /// Throws InvalidArgument on duplicate vertices, unknown endpoints,
  /// self-loops, duplicate undirected edges, or weights < 1.
  MetricGraph(std::vector<std::string> vertices, std::vector<WeightedEdge> edges);

  std::size_t size() const noexcept { return vertices_.size(); }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  const std::vector<std::string>& vertices() const noexcept { return vertices_; }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  std::span<const Arc> arcs(std::size_t v) const;

  std::optional<std::size_t> index_of(std::string_view key) const;
  bool contains(std::string_view key) const { return index_of(key).has_value(); }
  const std::string& key(std::size_t v) const { return vertices_.at(v); }

  /// Single-source shortest path weights; kUnreachable marks other components.
  std::vector<Weight> distances_from(std::size_t source) const;

  bool is_connected() const;

  friend bool operator==(const MetricGraph&, const MetricGraph&) = default;

 private:
  std::vector<std::string> vertices_;
  std::vector<Edge> edges_;
  std::vector<std::size_t> offsets_;
  std::vector<Arc> adjacency_;
};

/// Dense all-pairs distance table, row-major.
class DistanceMatrix {
 public:
  explicit DistanceMatrix(const MetricGraph& g);

  std::size_t size() const noexcept { return n_; }
  Weight operator()(std::size_t i, std::size_t j) const { return d_[i * n_ + j]; }
  bool connected() const noexcept { return connected_; }

 private:
  std::size_t n_ = 0;
  std::vector<Weight> d_;
  bool connected_ = true;
};

/// Exact shortest-path weight between two keys. Throws InvalidArgument if a
/// key is absent and RuntimeFailure if the pair is disconnected.
Weight distance(const MetricGraph& g, std::string_view x, std::string_view y);

using NeighborFn = std::function<std::vector<std::string>(const std::string&)>;

struct BallOptions {
  Weight unit_weight = kUnitWeight;
  std::size_t vertex_cap = 1'000'000;
};

/// Induced subgraph on every vertex reachable from `center` in at most
/// `radius` steps of `neighbors`. Edges between boundary vertices are kept.
/// Throws RuntimeFailure once more than `vertex_cap` vertices are discovered.
MetricGraph ball(const NeighborFn& neighbors, const std::string& center, int radius,
                 const BallOptions& options = {});

/// Adds one apex per subset, joined to each member by an edge of weight
/// kApexWeight (half a unit). Apex keys are "^cone<i>", i being the subset
/// position. Throws InvalidArgument on empty subsets or unknown vertices.
MetricGraph cone(const MetricGraph& g, const std::vector<std::vector<std::string>>& subsets);

std::string apex_key(std::size_t subset_index);

// Serialization. Both forms are byte-stable for equal graphs.
std::string to_dot(const MetricGraph& g);
nlohmann::json to_json(const MetricGraph& g);
MetricGraph graph_from_json(const nlohmann::json& j);

}  // namespace interp
