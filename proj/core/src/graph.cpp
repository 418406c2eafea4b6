#include "interp/graph.hpp"

#include <algorithm>
#include <deque>
#include <queue>
#include <sstream>
#include <unordered_map>
#include <utility>

#include <nlohmann/json.hpp>

#include "interp/error.hpp"

namespace interp {
namespace {

constexpr std::string_view kModule = "graphcore";

}  // namespace

MetricGraph::MetricGraph(std::vector<std::string> vertices, std::vector<WeightedEdge> edges)
    : vertices_(std::move(vertices)) {
  std::sort(vertices_.begin(), vertices_.end());
  if (std::adjacent_find(vertices_.begin(), vertices_.end()) != vertices_.end()) {
    throw InvalidArgument(kModule, "duplicate vertex key");
  }

  edges_.reserve(edges.size());
  for (const auto& e : edges) {
    auto u = index_of(e.u);
    auto v = index_of(e.v);
    if (!u || !v) {
      throw InvalidArgument(kModule, "edge endpoint not a vertex: " + (u ? e.v : e.u));
    }
    if (*u == *v) throw InvalidArgument(kModule, "self-loop at " + e.u);
    if (e.weight < 1) throw InvalidArgument(kModule, "edge weight must be >= 1");
    edges_.push_back({std::min(*u, *v), std::max(*u, *v), e.weight});
  }
  std::sort(edges_.begin(), edges_.end(), [](const Edge& a, const Edge& b) {
    return std::tie(a.u, a.v, a.weight) < std::tie(b.u, b.v, b.weight);
  });
  for (std::size_t i = 1; i < edges_.size(); ++i) {
    if (edges_[i].u == edges_[i - 1].u && edges_[i].v == edges_[i - 1].v) {
      throw InvalidArgument(kModule, "duplicate edge " + vertices_[edges_[i].u] + " -- " +
                                         vertices_[edges_[i].v]);
    }
  }

  std::vector<std::size_t> degree(vertices_.size(), 0);
  for (const auto& e : edges_) {
    ++degree[e.u];
    ++degree[e.v];
  }
  offsets_.assign(vertices_.size() + 1, 0);
  for (std::size_t i = 0; i < vertices_.size(); ++i) offsets_[i + 1] = offsets_[i] + degree[i];
  adjacency_.resize(offsets_.back());
  std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
  for (const auto& e : edges_) {
    adjacency_[fill[e.u]++] = {e.v, e.weight};
    adjacency_[fill[e.v]++] = {e.u, e.weight};
  }
}

std::span<const MetricGraph::Arc> MetricGraph::arcs(std::size_t v) const {
  return {adjacency_.data() + offsets_.at(v), adjacency_.data() + offsets_.at(v + 1)};
}

std::optional<std::size_t> MetricGraph::index_of(std::string_view key) const {
  auto it = std::lower_bound(vertices_.begin(), vertices_.end(), key);
  if (it == vertices_.end() || *it != key) return std::nullopt;
  return static_cast<std::size_t>(it - vertices_.begin());
}

std::vector<Weight> MetricGraph::distances_from(std::size_t source) const {
  std::vector<Weight> dist(size(), kUnreachable);
  if (source >= size()) throw InvalidArgument(kModule, "source index out of range");
  dist[source] = 0;

  const bool uniform = std::all_of(edges_.begin(), edges_.end(), [&](const Edge& e) {
    return e.weight == edges_.front().weight;
  });
  if (uniform) {
    std::deque<std::size_t> queue{source};
    while (!queue.empty()) {
      auto x = queue.front();
      queue.pop_front();
      for (const auto& a : arcs(x)) {
        if (dist[a.to] == kUnreachable) {
          dist[a.to] = dist[x] + a.weight;
          queue.push_back(a.to);
        }
      }
    }
    return dist;
  }

  using Item = std::pair<Weight, std::size_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  heap.push({0, source});
  while (!heap.empty()) {
    auto [d, x] = heap.top();
    heap.pop();
    if (d != dist[x]) continue;
    for (const auto& a : arcs(x)) {
      if (d + a.weight < dist[a.to]) {
        dist[a.to] = d + a.weight;
        heap.push({dist[a.to], a.to});
      }
    }
  }
  return dist;
}

bool MetricGraph::is_connected() const {
  if (vertices_.empty()) return true;
  auto d = distances_from(0);
  return std::none_of(d.begin(), d.end(), [](Weight w) { return w == kUnreachable; });
}

DistanceMatrix::DistanceMatrix(const MetricGraph& g) : n_(g.size()), d_(n_ * n_) {
  for (std::size_t s = 0; s < n_; ++s) {
    auto row = g.distances_from(s);
    for (auto w : row) connected_ = connected_ && w != kUnreachable;
    std::copy(row.begin(), row.end(), d_.begin() + static_cast<std::ptrdiff_t>(s * n_));
  }
}

Weight distance(const MetricGraph& g, std::string_view x, std::string_view y) {
  auto ix = g.index_of(x);
  auto iy = g.index_of(y);
  if (!ix) throw InvalidArgument(kModule, "vertex not in graph: " + std::string(x));
  if (!iy) throw InvalidArgument(kModule, "vertex not in graph: " + std::string(y));
  auto d = g.distances_from(*ix)[*iy];
  if (d == kUnreachable) {
    throw RuntimeFailure(kModule, "vertices are disconnected: " + std::string(x) + ", " +
                                      std::string(y));
  }
  return d;
}

MetricGraph ball(const NeighborFn& neighbors, const std::string& center, int radius,
                 const BallOptions& options) {
  if (radius < 0) throw InvalidArgument(kModule, "ball radius must be >= 0");

  std::unordered_map<std::string, int> depth{{center, 0}};
  std::vector<std::string> order{center};
  std::vector<WeightedEdge> edges;

  // Every discovered vertex is expanded once: interior vertices to find new
  // vertices, boundary vertices only for edges back into the ball.
  for (std::size_t head = 0; head < order.size(); ++head) {
    const std::string x = order[head];
    const int dx = depth.at(x);
    for (auto& y : neighbors(x)) {
      if (y == x) continue;
      auto it = depth.find(y);
      if (it == depth.end()) {
        if (dx == radius) continue;
        if (order.size() >= options.vertex_cap) {
          throw RuntimeFailure(kModule, "ball exceeds vertex cap of " +
                                            std::to_string(options.vertex_cap));
        }
        depth.emplace(y, dx + 1);
        order.push_back(y);
        if (x < y) edges.push_back({x, y, options.unit_weight});
        else edges.push_back({y, x, options.unit_weight});
      } else if (x < y) {
        edges.push_back({x, y, options.unit_weight});
      } else {
        edges.push_back({y, x, options.unit_weight});
      }
    }
  }

  std::sort(edges.begin(), edges.end(), [](const WeightedEdge& a, const WeightedEdge& b) {
    return std::tie(a.u, a.v) < std::tie(b.u, b.v);
  });
  edges.erase(std::unique(edges.begin(), edges.end(),
                          [](const WeightedEdge& a, const WeightedEdge& b) {
                            return a.u == b.u && a.v == b.v;
                          }),
              edges.end());
  return MetricGraph(std::move(order), std::move(edges));
}

std::string apex_key(std::size_t subset_index) { return "^cone" + std::to_string(subset_index); }

MetricGraph cone(const MetricGraph& g, const std::vector<std::vector<std::string>>& subsets) {
  std::vector<std::string> vertices = g.vertices();
  std::vector<WeightedEdge> edges;
  edges.reserve(g.edge_count());
  for (const auto& e : g.edges()) edges.push_back({g.key(e.u), g.key(e.v), e.weight});

  for (std::size_t i = 0; i < subsets.size(); ++i) {
    if (subsets[i].empty()) {
      throw InvalidArgument(kModule, "cone subset " + std::to_string(i) + " is empty");
    }
    auto apex = apex_key(i);
    if (g.contains(apex)) throw InvalidArgument(kModule, "apex key collides with vertex " + apex);
    vertices.push_back(apex);
    auto members = subsets[i];
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
    for (const auto& m : members) {
      if (!g.contains(m)) throw InvalidArgument(kModule, "cone subset member not in graph: " + m);
      edges.push_back({apex, m, kApexWeight});
    }
  }
  return MetricGraph(std::move(vertices), std::move(edges));
}

std::string to_dot(const MetricGraph& g) {
  std::ostringstream out;
  out << "graph G {\n";
  for (const auto& v : g.vertices()) out << "  " << nlohmann::json(v).dump() << ";\n";
  for (const auto& e : g.edges()) {
    out << "  " << nlohmann::json(g.key(e.u)).dump() << " -- "
        << nlohmann::json(g.key(e.v)).dump() << " [weight=" << e.weight << "];\n";
  }
  out << "}\n";
  return out.str();
}

nlohmann::json to_json(const MetricGraph& g) {
  nlohmann::json edges = nlohmann::json::array();
  for (const auto& e : g.edges()) edges.push_back({g.key(e.u), g.key(e.v), e.weight});
  return {{"vertices", g.vertices()}, {"edges", std::move(edges)}};
}

MetricGraph graph_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("vertices") || !j.contains("edges")) {
    throw InvalidArgument(kModule, "graph JSON needs \"vertices\" and \"edges\"");
  }
  std::vector<std::string> vertices;
  std::vector<WeightedEdge> edges;
  try {
    vertices = j.at("vertices").get<std::vector<std::string>>();
    for (const auto& e : j.at("edges")) {
      if (!e.is_array() || (e.size() != 2 && e.size() != 3)) {
        throw InvalidArgument(kModule, "edge must be [u, v] or [u, v, weight]");
      }
      Weight w = e.size() == 3 ? e[2].get<Weight>() : kUnitWeight;
      edges.push_back({e[0].get<std::string>(), e[1].get<std::string>(), w});
    }
  } catch (const nlohmann::json::exception& ex) {
    throw InvalidArgument(kModule, std::string("malformed graph JSON: ") + ex.what());
  }
  return MetricGraph(std::move(vertices), std::move(edges));
}

}  // namespace interp
