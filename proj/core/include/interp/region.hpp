#pragma once

// Product regions: the pants decompositions containing a fixed multicurve,
// modelled as the product of the interpolating graphs of the complementary
// blocks. A point is one coordinate per block.

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "interp/graph.hpp"
#include "interp/marking.hpp"
#include "interp/slope.hpp"

namespace interp {

enum class BlockKind { Torus1, Sphere4, Annulus, Pants };

int block_complexity(BlockKind kind);
std::string_view to_string(BlockKind kind);
BlockKind parse_block_kind(std::string_view text);

class ProductRegion {
 public:
  const std::vector<BlockKind>& blocks() const noexcept { return blocks_; }
  int xi() const noexcept { return xi_; }
  std::size_t arity() const noexcept { return blocks_.size(); }

  /// Block moves are collapsed to a single step when its complexity <= xi.
  bool is_coned(std::size_t block) const;
  /// Slope block carrying a marking (torus blocks at the marking level).
  bool is_marking_block(std::size_t block) const;

  /// False when every block is coned or trivial, so the region is bounded.
  bool has_infinite_diameter() const;

  friend bool operator==(const ProductRegion&, const ProductRegion&) = default;

 private:
  friend ProductRegion make_region(std::vector<BlockKind> blocks, int xi);
  ProductRegion(std::vector<BlockKind> blocks, int xi) : blocks_(std::move(blocks)), xi_(xi) {}

  std::vector<BlockKind> blocks_;
  int xi_ = 0;
};

/// Throws InvalidArgument for an empty block list, xi < -2, annulus blocks
/// away from xi = -2, or S_{0,4} blocks at xi = -2 (no marking model).
ProductRegion make_region(std::vector<BlockKind> blocks, int xi);

struct PantsState {
  friend auto operator<=>(const PantsState&, const PantsState&) = default;
};

using BlockCoord = std::variant<PantsState, Slope, Marking11, AnnulusCoord>;

struct RegionPoint {
  std::vector<BlockCoord> coords;
  friend auto operator<=>(const RegionPoint&, const RegionPoint&) = default;
};

/// Throws InvalidArgument when arity or a slot type does not match.
void validate(const ProductRegion& r, const RegionPoint& pt);

/// The coordinate in one block: the projection to that block.
const BlockCoord& restrict(const RegionPoint& pt, std::size_t block_index);

/// Default point: 0/1 in slope blocks, (0/1; 1/0) in marking blocks,
/// twist 0 in annuli.
RegionPoint base_point(const ProductRegion& r);

/// Finite stand-in for the infinite vertex set of slope blocks: Farey moves
/// and coned jumps only reach slopes of height <= slope_height.
struct NeighborScope {
  std::int64_t slope_height = 6;
};

/// Points one edge away. Each neighbour changes exactly one block.
std::vector<RegionPoint> region_neighbors(const ProductRegion& r, const RegionPoint& pt,
                                          const NeighborScope& scope = {});

/// Sum over blocks of the block distance. Memoizes marking distances.
class RegionMetric {
 public:
  explicit RegionMetric(ProductRegion region) : region_(std::move(region)) {}

  const ProductRegion& region() const noexcept { return region_; }
  std::int64_t block_distance(std::size_t block, const BlockCoord& a, const BlockCoord& b);
  std::int64_t distance(const RegionPoint& x, const RegionPoint& y);

 private:
  ProductRegion region_;
  std::map<std::pair<Marking11, Marking11>, std::int64_t> marking_cache_;
};

std::int64_t region_distance_closed_form(const ProductRegion& r, const RegionPoint& x,
                                         const RegionPoint& y);

// Text forms. A point key joins the block coordinates with " | "; slopes
// print as p/q, markings as (p/q; r/s), annuli as the twist, pants as "*".
std::string coord_to_string(const BlockCoord& c);
BlockCoord parse_coord(const ProductRegion& r, std::size_t block, std::string_view text);
std::string point_key(const RegionPoint& pt);
RegionPoint parse_point(const ProductRegion& r, std::string_view key);

nlohmann::json to_json(const ProductRegion& r);
ProductRegion region_from_json(const nlohmann::json& j);
nlohmann::json point_to_json(const RegionPoint& pt);
RegionPoint point_from_json(const ProductRegion& r, const nlohmann::json& j);

/// Ball in the region graph, vertices keyed by point_key.
MetricGraph region_ball(const ProductRegion& r, const RegionPoint& center, int radius,
                        const NeighborScope& scope = {}, const BallOptions& options = {});

}  // namespace interp
