#include "interp/region.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>

#include <nlohmann/json.hpp>

#include "interp/error.hpp"

namespace interp {
namespace {

constexpr std::string_view kModule = "regions";

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

std::string_view trim(std::string_view s) {
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  return s;
}

enum class Slot { Pants, Slope, Marking, Annulus };

Slot slot_of(const ProductRegion& r, std::size_t block) {
  switch (r.blocks()[block]) {
    case BlockKind::Pants:
      return Slot::Pants;
    case BlockKind::Annulus:
      return Slot::Annulus;
    default:
      return r.is_marking_block(block) ? Slot::Marking : Slot::Slope;
  }
}

bool slot_matches(Slot slot, const BlockCoord& c) {
  switch (slot) {
    case Slot::Pants:
      return std::holds_alternative<PantsState>(c);
    case Slot::Slope:
      return std::holds_alternative<Slope>(c);
    case Slot::Marking:
      return std::holds_alternative<Marking11>(c);
    case Slot::Annulus:
      return std::holds_alternative<AnnulusCoord>(c);
  }
  return false;
}

}  // namespace

int block_complexity(BlockKind kind) {
  switch (kind) {
    case BlockKind::Torus1:
    case BlockKind::Sphere4:
      return 1;
    case BlockKind::Annulus:
      return -1;
    case BlockKind::Pants:
      return 0;
  }
  return 0;
}

std::string_view to_string(BlockKind kind) {
  switch (kind) {
    case BlockKind::Torus1:
      return "TORUS1";
    case BlockKind::Sphere4:
      return "SPHERE4";
    case BlockKind::Annulus:
      return "ANNULUS";
    case BlockKind::Pants:
      return "PANTS";
  }
  return "?";
}

BlockKind parse_block_kind(std::string_view text) {
  for (auto k : {BlockKind::Torus1, BlockKind::Sphere4, BlockKind::Annulus, BlockKind::Pants}) {
    if (text == to_string(k)) return k;
  }
  throw InvalidArgument(kModule, "unknown block kind '" + std::string(text) + "'");
}

bool ProductRegion::is_coned(std::size_t block) const {
  return block_complexity(blocks_.at(block)) <= xi_;
}

bool ProductRegion::is_marking_block(std::size_t block) const {
  return xi_ == -2 && blocks_.at(block) == BlockKind::Torus1;
}

bool ProductRegion::has_infinite_diameter() const {
  for (std::size_t i = 0; i < blocks_.size(); ++i) {
    if (blocks_[i] != BlockKind::Pants && !is_coned(i)) return true;
  }
  return false;
}

ProductRegion make_region(std::vector<BlockKind> blocks, int xi) {
  if (blocks.empty()) throw InvalidArgument(kModule, "region needs at least one block");
  if (xi < -2) throw InvalidArgument(kModule, "xi must be >= -2");
  for (auto k : blocks) {
    if (k == BlockKind::Annulus && xi != -2) {
      throw InvalidArgument(kModule, "ANNULUS blocks are only modelled at xi = -2");
    }
    if (k == BlockKind::Sphere4 && xi == -2) {
      throw InvalidArgument(kModule, "SPHERE4 blocks have no marking model at xi = -2");
    }
  }
  return ProductRegion(std::move(blocks), xi);
}

void validate(const ProductRegion& r, const RegionPoint& pt) {
  if (pt.coords.size() != r.arity()) {
    throw InvalidArgument(kModule, "point has " + std::to_string(pt.coords.size()) +
                                       " coordinates, region has " + std::to_string(r.arity()) +
                                       " blocks");
  }
  for (std::size_t i = 0; i < r.arity(); ++i) {
    if (!slot_matches(slot_of(r, i), pt.coords[i])) {
      throw InvalidArgument(kModule, "coordinate " + std::to_string(i) + " has the wrong type for " +
                                         std::string(to_string(r.blocks()[i])) + " at xi = " +
                                         std::to_string(r.xi()));
    }
  }
}

const BlockCoord& restrict(const RegionPoint& pt, std::size_t block_index) {
  if (block_index >= pt.coords.size()) {
    throw InvalidArgument(kModule, "block index " + std::to_string(block_index) + " out of range");
  }
  return pt.coords[block_index];
}

RegionPoint base_point(const ProductRegion& r) {
  RegionPoint pt;
  for (std::size_t i = 0; i < r.arity(); ++i) {
    switch (slot_of(r, i)) {
      case Slot::Pants:
        pt.coords.emplace_back(PantsState{});
        break;
      case Slot::Slope:
        pt.coords.emplace_back(Slope(0, 1));
        break;
      case Slot::Marking:
        pt.coords.emplace_back(Marking11(Slope(0, 1), Slope::infinity()));
        break;
      case Slot::Annulus:
        pt.coords.emplace_back(AnnulusCoord{0});
        break;
    }
  }
  return pt;
}

std::vector<RegionPoint> region_neighbors(const ProductRegion& r, const RegionPoint& pt,
                                          const NeighborScope& scope) {
  validate(r, pt);
  std::vector<RegionPoint> out;
  auto emit = [&](std::size_t block, BlockCoord c) {
    RegionPoint n = pt;
    n.coords[block] = std::move(c);
    out.push_back(std::move(n));
  };
  std::vector<Slope> universe;
  for (std::size_t i = 0; i < r.arity(); ++i) {
    const auto& c = pt.coords[i];
    switch (slot_of(r, i)) {
      case Slot::Pants:
        break;
      case Slot::Annulus: {
        auto t = std::get<AnnulusCoord>(c).twist;
        emit(i, AnnulusCoord{t + 1});
        emit(i, AnnulusCoord{t - 1});
        break;
      }
      case Slot::Marking:
        for (auto& m : marking_moves(std::get<Marking11>(c))) emit(i, m);
        break;
      case Slot::Slope: {
        const auto& s = std::get<Slope>(c);
        if (r.is_coned(i)) {
          if (universe.empty()) universe = slopes_up_to_height(scope.slope_height);
          for (const auto& other : universe) {
            if (other != s) emit(i, other);
          }
        } else {
          for (auto& n : farey_neighbors(s, scope.slope_height)) emit(i, n);
        }
        break;
      }
    }
  }
  return out;
}

std::int64_t RegionMetric::block_distance(std::size_t block, const BlockCoord& a,
                                          const BlockCoord& b) {
  if (a == b) return 0;
  switch (slot_of(region_, block)) {
    case Slot::Pants:
      return 0;
    case Slot::Annulus:
      return annulus_distance(std::get<AnnulusCoord>(a), std::get<AnnulusCoord>(b));
    case Slot::Marking: {
      auto key = std::make_pair(std::get<Marking11>(a), std::get<Marking11>(b));
      if (key.second < key.first) std::swap(key.first, key.second);
      auto it = marking_cache_.find(key);
      if (it != marking_cache_.end()) return it->second;
      auto d = marking_distance(key.first, key.second);
      marking_cache_.emplace(key, d);
      return d;
    }
    case Slot::Slope:
      if (region_.is_coned(block)) return 1;
      return farey_distance(std::get<Slope>(a), std::get<Slope>(b));
  }
  return 0;
}

std::int64_t RegionMetric::distance(const RegionPoint& x, const RegionPoint& y) {
  validate(region_, x);
  validate(region_, y);
  std::int64_t total = 0;
  for (std::size_t i = 0; i < region_.arity(); ++i) {
    total += block_distance(i, x.coords[i], y.coords[i]);
  }
  return total;
}

std::int64_t region_distance_closed_form(const ProductRegion& r, const RegionPoint& x,
                                         const RegionPoint& y) {
  RegionMetric metric(r);
  return metric.distance(x, y);
}

std::string coord_to_string(const BlockCoord& c) {
  return std::visit(Overloaded{
                        [](const PantsState&) { return std::string("*"); },
                        [](const Slope& s) { return s.to_string(); },
                        [](const Marking11& m) { return m.to_string(); },
                        [](const AnnulusCoord& a) { return std::to_string(a.twist); },
                    },
                    c);
}

BlockCoord parse_coord(const ProductRegion& r, std::size_t block, std::string_view text) {
  text = trim(text);
  if (block >= r.arity()) throw InvalidArgument(kModule, "block index out of range");
  switch (slot_of(r, block)) {
    case Slot::Pants:
      if (text != "*") throw InvalidArgument(kModule, "PANTS coordinate must be '*'");
      return PantsState{};
    case Slot::Slope:
      return Slope::parse(text);
    case Slot::Marking:
      return Marking11::parse(text);
    case Slot::Annulus: {
      std::int64_t t = 0;
      auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), t);
      if (ec != std::errc() || ptr != text.data() + text.size()) {
        throw InvalidArgument(kModule, "annulus coordinate must be an integer: " + std::string(text));
      }
      return AnnulusCoord{t};
    }
  }
  return PantsState{};
}

std::string point_key(const RegionPoint& pt) {
  std::string out;
  for (std::size_t i = 0; i < pt.coords.size(); ++i) {
    if (i) out += " | ";
    out += coord_to_string(pt.coords[i]);
  }
  return out;
}

RegionPoint parse_point(const ProductRegion& r, std::string_view key) {
  RegionPoint pt;
  std::size_t block = 0;
  while (true) {
    auto bar = key.find('|');
    auto part = key.substr(0, bar);
    pt.coords.push_back(parse_coord(r, block++, part));
    if (bar == std::string_view::npos) break;
    key.remove_prefix(bar + 1);
  }
  validate(r, pt);
  return pt;
}

nlohmann::json to_json(const ProductRegion& r) {
  nlohmann::json blocks = nlohmann::json::array();
  for (auto k : r.blocks()) blocks.push_back(std::string(to_string(k)));
  return {{"blocks", std::move(blocks)}, {"xi", r.xi()}};
}

ProductRegion region_from_json(const nlohmann::json& j) {
  std::vector<BlockKind> blocks;
  int xi = 0;
  try {
    for (const auto& b : j.at("blocks")) blocks.push_back(parse_block_kind(b.get<std::string>()));
    xi = j.at("xi").get<int>();
  } catch (const nlohmann::json::exception& ex) {
    throw InvalidArgument(kModule, std::string("malformed region JSON: ") + ex.what());
  }
  return make_region(std::move(blocks), xi);
}

nlohmann::json point_to_json(const RegionPoint& pt) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& c : pt.coords) out.push_back(coord_to_string(c));
  return out;
}

RegionPoint point_from_json(const ProductRegion& r, const nlohmann::json& j) {
  if (!j.is_array()) throw InvalidArgument(kModule, "point JSON must be an array");
  RegionPoint pt;
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_string()) throw InvalidArgument(kModule, "point coordinates must be strings");
    pt.coords.push_back(parse_coord(r, i, j[i].get<std::string>()));
  }
  validate(r, pt);
  return pt;
}

MetricGraph region_ball(const ProductRegion& r, const RegionPoint& center, int radius,
                        const NeighborScope& scope, const BallOptions& options) {
  validate(r, center);
  NeighborFn fn = [&](const std::string& key) {
    std::vector<std::string> out;
    for (auto& n : region_neighbors(r, parse_point(r, key), scope)) out.push_back(point_key(n));
    return out;
  };
  return ball(fn, point_key(center), radius, options);
}

}  // namespace interp
