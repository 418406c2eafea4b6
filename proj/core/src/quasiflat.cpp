#include "interp/quasiflat.hpp"

#include <algorithm>
#include <cstdlib>
#include <set>

#include <nlohmann/json.hpp>

#include "interp/error.hpp"
#include "interp/formula.hpp"

namespace interp {
namespace {

constexpr std::string_view kModule = "formula";

bool block_adjacent(const BlockCoord& a, const BlockCoord& b) {
  if (std::holds_alternative<Slope>(a)) {
    return adjacent(SurfaceKind::Torus1, std::get<Slope>(a), std::get<Slope>(b));
  }
  if (std::holds_alternative<Marking11>(a)) {
    auto moves = marking_moves(std::get<Marking11>(a));
    return std::find(moves.begin(), moves.end(), std::get<Marking11>(b)) != moves.end();
  }
  if (std::holds_alternative<AnnulusCoord>(a)) {
    return std::abs(std::get<AnnulusCoord>(a).twist - std::get<AnnulusCoord>(b).twist) == 1;
  }
  return false;
}

}  // namespace

const BlockCoord& BlockGeodesic::at(std::int64_t k) const {
  if (!covers(k)) {
    throw InvalidArgument(kModule, "geodesic index " + std::to_string(k) + " outside [" +
                                       std::to_string(min_index) + ", " +
                                       std::to_string(max_index()) + "]");
  }
  return points[static_cast<std::size_t>(k - min_index)];
}

void validate(const QuasiFlatSpec& q) {
  validate(q.region, q.basepoint);
  std::set<std::size_t> used;
  for (const auto& g : q.geodesics) {
    if (g.block >= q.region.arity()) throw InvalidArgument(kModule, "geodesic block out of range");
    if (!used.insert(g.block).second) {
      throw InvalidArgument(kModule, "two geodesics in block " + std::to_string(g.block));
    }
    if (q.region.blocks()[g.block] == BlockKind::Pants) {
      throw InvalidArgument(kModule, "PANTS blocks carry no geodesic");
    }
    if (!g.covers(0)) throw InvalidArgument(kModule, "geodesic window must contain index 0");
    for (const auto& c : g.points) {
      RegionPoint probe = q.basepoint;
      probe.coords[g.block] = c;
      validate(q.region, probe);
    }
    if (g.at(0) != q.basepoint.coords[g.block]) {
      throw InvalidArgument(kModule, "g(0) differs from the basepoint in block " +
                                         std::to_string(g.block));
    }
    for (std::size_t i = 1; i < g.points.size(); ++i) {
      if (!block_adjacent(g.points[i - 1], g.points[i])) {
        throw InvalidArgument(kModule, "consecutive geodesic entries are not adjacent in block " +
                                           std::to_string(g.block));
      }
    }
    std::set<BlockCoord> distinct(g.points.begin(), g.points.end());
    if (distinct.size() != g.points.size()) {
      throw InvalidArgument(kModule, "geodesic repeats a vertex in block " +
                                         std::to_string(g.block));
    }
  }
}

BlockGeodesic farey_line(std::size_t block, std::int64_t n) {
  if (n < 1) throw InvalidArgument(kModule, "geodesic half-length must be >= 1");
  using Vec = std::pair<std::int64_t, std::int64_t>;
  std::vector<Vec> forward{{0, 1}, {1, 0}};
  while (static_cast<std::int64_t>(forward.size()) <= n) {
    auto [a, b] = forward[forward.size() - 1];
    auto [c, d] = forward[forward.size() - 2];
    forward.push_back({2 * a + c, 2 * b + d});
  }
  // v_{k-1} = v_{k+1} - 2 v_k
  std::vector<Vec> backward;  // v_-1, v_-2, ...
  Vec ahead{1, 0}, here{0, 1};
  for (std::int64_t k = 1; k <= n; ++k) {
    Vec before{ahead.first - 2 * here.first, ahead.second - 2 * here.second};
    backward.push_back(before);
    ahead = here;
    here = before;
  }
  BlockGeodesic g{block, -n, {}};
  for (auto it = backward.rbegin(); it != backward.rend(); ++it) {
    g.points.emplace_back(Slope(it->first, it->second));
  }
  for (std::int64_t k = 0; k <= n; ++k) {
    auto [p, q] = forward[static_cast<std::size_t>(k)];
    g.points.emplace_back(Slope(p, q));
  }
  return g;
}

QuasiFlatSpec farey_quasiflat(const ProductRegion& region, std::int64_t n) {
  QuasiFlatSpec q{region, base_point(region), {}};
  for (std::size_t i = 0; i < region.arity(); ++i) {
    auto kind = region.blocks()[i];
    if ((kind == BlockKind::Torus1 || kind == BlockKind::Sphere4) && !region.is_marking_block(i)) {
      q.geodesics.push_back(farey_line(i, n));
    }
  }
  validate(q);
  return q;
}

RegionPoint quasiflat_point(const QuasiFlatSpec& q, const std::vector<std::int64_t>& k) {
  if (k.size() != q.rank()) {
    throw InvalidArgument(kModule, "grid vector has length " + std::to_string(k.size()) +
                                       ", quasi-flat rank is " + std::to_string(q.rank()));
  }
  RegionPoint pt = q.basepoint;
  for (std::size_t j = 0; j < k.size(); ++j) pt.coords[q.geodesics[j].block] = q.geodesics[j].at(k[j]);
  return pt;
}

std::string QuasiFlatReport::summary() const {
  if (degenerate) {
    return "DEGENERATE: flat blocks are coned; max distance " + std::to_string(max_distance) +
           (max_distance <= static_cast<std::int64_t>(rank) ? " <= rank " : " > rank ") +
           std::to_string(rank);
  }
  if (ok()) {
    return std::string("OK: 0 violations, ") + (upper_tight && lower_tight ? "bounds tight" : "bounds hold");
  }
  return "FAIL: " + std::to_string(lower_violations) + " lower and " +
         std::to_string(upper_violations) + " upper violations";
}

QuasiFlatReport verify_quasiflat(const QuasiFlatSpec& q, std::int64_t n,
                                 const QuasiFlatOptions& options) {
  validate(q);
  if (n < 0) throw InvalidArgument(kModule, "grid size must be >= 0");
  const std::size_t r = q.rank();
  if (r == 0) throw InvalidArgument(kModule, "quasi-flat has no geodesics");
  for (const auto& g : q.geodesics) {
    if (!g.covers(-n) || !g.covers(n)) {
      throw InvalidArgument(kModule, "grid " + std::to_string(n) + " exceeds geodesic window");
    }
  }

  QuasiFlatReport report;
  report.rank = r;
  report.grid = n;
  for (const auto& g : q.geodesics) {
    if (q.region.is_coned(g.block)) report.degenerate = true;
  }

  // The closed form is a sum of block distances, so per-block tables along
  // each geodesic give it exactly.
  RegionMetric metric(q.region);
  const std::size_t side = static_cast<std::size_t>(2 * n + 1);
  std::vector<std::vector<std::int64_t>> table(r, std::vector<std::int64_t>(side * side));
  for (std::size_t j = 0; j < r; ++j) {
    for (std::size_t a = 0; a < side; ++a) {
      for (std::size_t b = 0; b < side; ++b) {
        const auto& g = q.geodesics[j];
        table[j][a * side + b] = metric.block_distance(g.block, g.at(static_cast<std::int64_t>(a) - n),
                                                       g.at(static_cast<std::int64_t>(b) - n));
      }
    }
  }

  std::size_t total = 1;
  for (std::size_t j = 0; j < r; ++j) total *= side;
  auto decode = [&](std::size_t code) {
    std::vector<std::size_t> idx(r);
    for (std::size_t j = 0; j < r; ++j) {
      idx[j] = code % side;
      code /= side;
    }
    return idx;
  };
  auto to_grid = [&](const std::vector<std::size_t>& idx) {
    std::vector<std::int64_t> k(r);
    for (std::size_t j = 0; j < r; ++j) k[j] = static_cast<std::int64_t>(idx[j]) - n;
    return k;
  };

  std::optional<ThresholdParams> k_formula;
  if (options.collect_rows) k_formula.emplace(options.threshold);

  for (std::size_t x = 0; x < total; ++x) {
    auto ix = decode(x);
    for (std::size_t y = 0; y < total; ++y) {
      auto iy = decode(y);
      std::int64_t d = 0, l1 = 0, linf = 0;
      std::size_t moved = 0;
      for (std::size_t j = 0; j < r; ++j) {
        d += table[j][ix[j] * side + iy[j]];
        auto gap = std::abs(static_cast<std::int64_t>(ix[j]) - static_cast<std::int64_t>(iy[j]));
        l1 += gap;
        linf = std::max(linf, gap);
        if (gap) ++moved;
      }
      ++report.pairs_checked;
      report.max_distance = std::max(report.max_distance, d);
      const bool low = d < linf;
      const bool high = d > l1;
      if (low) ++report.lower_violations;
      if (high) ++report.upper_violations;
      if (d != l1) report.upper_tight = false;
      if (moved == 1 && d != linf) report.lower_tight = false;
      if ((low || high) && !report.witness) report.witness = QuasiFlatPair{to_grid(ix), to_grid(iy), d, 0};
      if (options.collect_rows) {
        auto px = quasiflat_point(q, to_grid(ix));
        auto py = quasiflat_point(q, to_grid(iy));
        report.rows.push_back({to_grid(ix), to_grid(iy), d, distance_formula(q.region, *k_formula, px, py)});
      }
    }
  }
  return report;
}

nlohmann::json to_json(const QuasiFlatReport& report) {
  nlohmann::json j{{"rank", report.rank},
                   {"grid", report.grid},
                   {"pairs", report.pairs_checked},
                   {"lower_violations", report.lower_violations},
                   {"upper_violations", report.upper_violations},
                   {"violations", report.lower_violations + report.upper_violations},
                   {"upper_tight", report.upper_tight},
                   {"lower_tight", report.lower_tight},
                   {"degenerate", report.degenerate},
                   {"max_distance", report.max_distance},
                   {"summary", report.summary()}};
  if (report.witness) {
    j["witness"] = {{"k", report.witness->k}, {"l", report.witness->l}, {"d", report.witness->distance}};
  }
  return j;
}

nlohmann::json to_json(const QuasiFlatSpec& q) {
  nlohmann::json geodesics = nlohmann::json::array();
  for (const auto& g : q.geodesics) {
    nlohmann::json points = nlohmann::json::array();
    for (const auto& c : g.points) points.push_back(coord_to_string(c));
    geodesics.push_back({{"block", g.block}, {"min_index", g.min_index}, {"points", points}});
  }
  return {{"region", to_json(q.region)}, {"geodesics", geodesics}};
}

QuasiFlatSpec quasiflat_from_json(const ProductRegion& region, const nlohmann::json& geodesics) {
  QuasiFlatSpec q{region, base_point(region), {}};
  try {
    const auto& list = geodesics.is_object() ? geodesics.at("geodesics") : geodesics;
    for (const auto& g : list) {
      BlockGeodesic geo{g.at("block").get<std::size_t>(), g.at("min_index").get<std::int64_t>(), {}};
      for (const auto& p : g.at("points")) {
        geo.points.push_back(parse_coord(region, geo.block, p.get<std::string>()));
      }
      if (geo.covers(0)) q.basepoint.coords.at(geo.block) = geo.at(0);
      q.geodesics.push_back(std::move(geo));
    }
  } catch (const nlohmann::json::exception& ex) {
    throw InvalidArgument(kModule, std::string("malformed geodesic JSON: ") + ex.what());
  } catch (const std::out_of_range&) {
    throw InvalidArgument(kModule, "geodesic block out of range");
  }
  validate(q);
  return q;
}

}  // namespace interp
