#include "interp/decomposition.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <set>
#include <tuple>

#include <nlohmann/json.hpp>

#include "interp/error.hpp"

namespace interp {
namespace {

constexpr std::string_view kModule = "topology";

using Coloring = std::vector<int>;
using EdgeList = std::vector<std::pair<int, int>>;

std::vector<std::vector<int>> neighbor_lists(const DecompositionGraph& d) {
  std::vector<std::vector<int>> nbrs(d.pieces.size());
  for (auto [u, v] : d.curves) {
    nbrs[u].push_back(v);
    nbrs[v].push_back(u);
  }
  return nbrs;
}

template <class Key>
Coloring rank_by(const std::vector<Key>& keys) {
  std::vector<Key> distinct = keys;
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  Coloring c(keys.size());
  for (std::size_t v = 0; v < keys.size(); ++v) {
    c[v] = static_cast<int>(std::lower_bound(distinct.begin(), distinct.end(), keys[v]) -
                            distinct.begin());
  }
  return c;
}

int color_count(const Coloring& c) {
  return c.empty() ? 0 : *std::max_element(c.begin(), c.end()) + 1;
}

// Colour refinement: split classes by the multiset of neighbour colours until
// stable. Keys lead with the old colour, so the order of classes is kept.
Coloring refine(const std::vector<std::vector<int>>& nbrs, Coloring c) {
  for (;;) {
    std::vector<std::pair<int, std::vector<int>>> keys(c.size());
    for (std::size_t v = 0; v < c.size(); ++v) {
      std::vector<int> around;
      around.reserve(nbrs[v].size());
      for (int w : nbrs[v]) around.push_back(c[w]);
      std::sort(around.begin(), around.end());
      keys[v] = {c[v], std::move(around)};
    }
    Coloring next = rank_by(keys);
    if (color_count(next) == color_count(c)) return next;
    c = std::move(next);
  }
}

EdgeList relabel(const EdgeList& edges, const Coloring& position) {
  EdgeList out;
  out.reserve(edges.size());
  for (auto [u, v] : edges) {
    auto a = position[u];
    auto b = position[v];
    out.emplace_back(std::min(a, b), std::max(a, b));
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Individualisation-refinement search over discrete colourings; keeps the
// lexicographically smallest relabeled edge list.
void search(const std::vector<std::vector<int>>& nbrs, const EdgeList& edges, Coloring c,
            EdgeList& best, Coloring& best_position, bool& have_best) {
  c = refine(nbrs, std::move(c));
  const int n = static_cast<int>(c.size());
  if (color_count(c) == n) {
    auto candidate = relabel(edges, c);
    if (!have_best || candidate < best) {
      best = std::move(candidate);
      best_position = c;
      have_best = true;
    }
    return;
  }
  std::vector<int> cell_size(n, 0);
  for (int col : c) ++cell_size[col];
  int target = 0;
  while (cell_size[target] < 2) ++target;
  for (int v = 0; v < n; ++v) {
    if (c[v] != target) continue;
    std::vector<std::pair<int, int>> keys(n);
    for (int u = 0; u < n; ++u) keys[u] = {c[u], u == v ? 0 : 1};
    search(nbrs, edges, rank_by(keys), best, best_position, have_best);
  }
}

bool is_connected(const DecompositionGraph& d) {
  if (d.pieces.empty()) return false;
  auto nbrs = neighbor_lists(d);
  std::vector<bool> seen(d.pieces.size(), false);
  std::vector<int> stack{0};
  seen[0] = true;
  std::size_t count = 1;
  while (!stack.empty()) {
    int x = stack.back();
    stack.pop_back();
    for (int y : nbrs[x]) {
      if (!seen[y]) {
        seen[y] = true;
        ++count;
        stack.push_back(y);
      }
    }
  }
  return count == d.pieces.size();
}

void normalize_edges(EdgeList& edges) {
  for (auto& [u, v] : edges) {
    if (u > v) std::swap(u, v);
  }
}

// All decompositions with one more curve, obtained by cutting one piece.
void cut_children(const DecompositionGraph& d, std::set<DecompositionGraph>& out) {
  const int n_pieces = d.piece_count();
  for (int i = 0; i < n_pieces; ++i) {
    const Piece p = d.pieces[i];

    if (p.genus >= 1) {
      Piece cut{p.genus - 1, p.boundary + 2, p.punctures};
      if (cut.complexity() >= 0) {
        DecompositionGraph child = d;
        child.pieces[i] = cut;
        child.curves.emplace_back(i, i);
        out.insert(canonical_form(child));
      }
    }

    // Boundary slots of piece i: (edge index, which end).
    std::vector<std::pair<int, int>> slots;
    for (int e = 0; e < d.curve_count(); ++e) {
      if (d.curves[e].first == i) slots.emplace_back(e, 0);
      if (d.curves[e].second == i) slots.emplace_back(e, 1);
    }
    const int b = static_cast<int>(slots.size());
    for (unsigned mask = 0; mask < (1u << b); ++mask) {
      const int b2 = std::popcount(mask);
      const int b1 = b - b2;
      for (int g1 = 0; g1 <= p.genus; ++g1) {
        for (int n1 = 0; n1 <= p.punctures; ++n1) {
          Piece side1{g1, b1 + 1, n1};
          Piece side2{p.genus - g1, b2 + 1, p.punctures - n1};
          if (side1.complexity() < 0 || side2.complexity() < 0) continue;
          DecompositionGraph child = d;
          child.pieces[i] = side1;
          child.pieces.push_back(side2);
          for (int s = 0; s < b; ++s) {
            if (mask & (1u << s)) {
              auto& edge = child.curves[slots[s].first];
              (slots[s].second == 0 ? edge.first : edge.second) = n_pieces;
            }
          }
          child.curves.emplace_back(i, n_pieces);
          normalize_edges(child.curves);
          out.insert(canonical_form(child));
        }
      }
    }
  }
}

}  // namespace

DecompositionGraph trivial_decomposition(const Surface& s) {
  return {{Piece{s.genus(), 0, s.punctures()}}, {}};
}

int first_betti_number(const DecompositionGraph& d) {
  // Connected graphs only: edges - vertices + 1.
  return d.curve_count() - d.piece_count() + 1;
}

std::vector<std::string> decomposition_violations(const DecompositionGraph& d, const Surface& s) {
  std::vector<std::string> out;
  if (d.pieces.empty()) {
    out.emplace_back("no pieces");
    return out;
  }
  std::vector<int> degree(d.pieces.size(), 0);
  for (auto [u, v] : d.curves) {
    if (u < 0 || v < 0 || u >= d.piece_count() || v >= d.piece_count()) {
      out.emplace_back("curve endpoint out of range");
      return out;
    }
    ++degree[u];
    ++degree[v];
  }
  int sum_boundary = 0, sum_punctures = 0, sum_genus = 0, sum_euler = 0, sum_xi = 0;
  for (std::size_t i = 0; i < d.pieces.size(); ++i) {
    const auto& p = d.pieces[i];
    if (p.genus < 0 || p.boundary < 0 || p.punctures < 0) {
      out.push_back("piece " + std::to_string(i) + " has a negative field");
    }
    if (p.boundary != degree[i]) {
      out.push_back("piece " + std::to_string(i) + " boundary count " +
                    std::to_string(p.boundary) + " != incident curve ends " +
                    std::to_string(degree[i]));
    }
    if (p.complexity() < 0) {
      out.push_back("piece " + std::to_string(i) + " has negative complexity");
    }
    sum_boundary += p.boundary;
    sum_punctures += p.punctures;
    sum_genus += p.genus;
    sum_euler += 2 - 2 * p.genus - p.boundary - p.punctures;
    sum_xi += p.complexity();
  }
  const int m = d.curve_count();
  if (sum_boundary != 2 * m) out.emplace_back("sum of boundaries != 2 * curves");
  if (sum_punctures != s.punctures()) out.emplace_back("sum of punctures != punctures(S)");
  if (sum_euler != s.euler_characteristic()) out.emplace_back("Euler characteristic mismatch");
  if (sum_xi != s.complexity() - m) out.emplace_back("complexity identity fails");
  if (!is_connected(d)) {
    out.emplace_back("dual graph is disconnected");
  } else if (sum_genus + first_betti_number(d) != s.genus()) {
    out.emplace_back("genus recovery fails");
  }
  return out;
}

void validate(const DecompositionGraph& d, const Surface& s) {
  auto violations = decomposition_violations(d, s);
  if (!violations.empty()) {
    throw InvalidArgument(kModule, "invalid decomposition of " + s.name() + ": " +
                                       violations.front());
  }
}

DecompositionGraph canonical_form(const DecompositionGraph& d) {
  auto nbrs = neighbor_lists(d);
  EdgeList edges = d.curves;
  normalize_edges(edges);

  EdgeList best;
  Coloring position;
  bool have_best = false;
  search(nbrs, edges, rank_by(d.pieces), best, position, have_best);

  DecompositionGraph out;
  out.pieces.resize(d.pieces.size());
  for (std::size_t v = 0; v < d.pieces.size(); ++v) out.pieces[position[v]] = d.pieces[v];
  out.curves = std::move(best);
  return out;
}

std::vector<DecompositionGraph> enumerate_decompositions(const Surface& s,
                                                         const EnumerationOptions& options) {
  if (s.complexity() < 0) {
    throw InvalidArgument(kModule, "enumeration needs complexity >= 0, got " + s.name());
  }
  if (s.complexity() > options.complexity_cap) {
    throw RuntimeFailure(kModule, "complexity " + std::to_string(s.complexity()) +
                                      " exceeds enumeration cap " +
                                      std::to_string(options.complexity_cap));
  }

  // Every multicurve with m + 1 components contains one with m components,
  // so cutting each level once more reaches every class.
  std::set<DecompositionGraph> all{trivial_decomposition(s)};
  std::set<DecompositionGraph> level = all;
  while (!level.empty()) {
    std::set<DecompositionGraph> next;
    for (const auto& d : level) cut_children(d, next);
    all.insert(next.begin(), next.end());
    level = std::move(next);
  }
  return {all.begin(), all.end()};
}

nlohmann::json to_json(const DecompositionGraph& d) {
  nlohmann::json pieces = nlohmann::json::array();
  for (const auto& p : d.pieces) pieces.push_back({p.genus, p.boundary, p.punctures});
  nlohmann::json curves = nlohmann::json::array();
  for (auto [u, v] : d.curves) curves.push_back({u, v});
  return {{"pieces", std::move(pieces)}, {"curves", std::move(curves)}};
}

DecompositionGraph decomposition_from_json(const nlohmann::json& j) {
  DecompositionGraph d;
  try {
    for (const auto& p : j.at("pieces")) {
      d.pieces.push_back({p.at(0).get<int>(), p.at(1).get<int>(), p.at(2).get<int>()});
    }
    for (const auto& c : j.at("curves")) {
      int u = c.at(0).get<int>();
      int v = c.at(1).get<int>();
      d.curves.emplace_back(std::min(u, v), std::max(u, v));
    }
  } catch (const nlohmann::json::exception& ex) {
    throw InvalidArgument(kModule, std::string("malformed decomposition JSON: ") + ex.what());
  }
  return d;
}

}  // namespace interp
