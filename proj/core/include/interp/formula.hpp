#pragma once

// Thresholded sums of subsurface projection distances inside a product
// region, and the fitting of quasi-isometry constants against graph
// distances.

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "interp/rational.hpp"
#include "interp/region.hpp"

namespace interp {

/// Terms at or below K are dropped.
class ThresholdParams {
 public:
  /// Throws InvalidArgument for K < 1.
  explicit ThresholdParams(std::int64_t k);
  std::int64_t k() const noexcept { return k_; }

 private:
  std::int64_t k_;
};

/// N if N > K, else 0.
std::int64_t threshold(std::int64_t n, const ThresholdParams& k);

/// Projection to a whole block, using its own block metric.
struct BlockSelector {
  std::size_t block = 0;
};
/// Annulus around `axis` inside a marking block.
struct AnnularSelector {
  std::size_t block = 0;
  Slope axis = Slope::infinity();
};
/// Curve graph of a marking block's surface: Farey distance of the bases.
struct CurveGraphSelector {
  std::size_t block = 0;
};

using Selector = std::variant<BlockSelector, AnnularSelector, CurveGraphSelector>;

std::string to_string(const Selector& w);

/// Distance between the projections of x and y to the subsurface named by
/// `w`. Block selectors use the curve-graph distance of the block: Farey
/// distance for slope blocks (1 if coned), annulus_distance for annuli, the
/// marking-graph distance for marking blocks. Throws InvalidArgument when the
/// selector does not fit the region, and RuntimeFailure on an empty
/// projection.
std::int64_t projection_distance(const ProductRegion& r, const Selector& w, const RegionPoint& x,
                                 const RegionPoint& y);

/// The subsurfaces the formula sums over for the pair (x, y): every
/// non-coned, non-pants block; marking blocks contribute their curve graph
/// plus the annuli around the base curves of x and y and around every curve
/// on a Farey geodesic between them. Other annuli see both markings within a
/// small bounded distance, below any useful threshold.
std::vector<Selector> formula_selectors(const ProductRegion& r, const RegionPoint& x,
                                        const RegionPoint& y);

std::int64_t distance_formula(const ProductRegion& r, const ThresholdParams& k,
                              const RegionPoint& x, const RegionPoint& y);

/// d1 <= a*d2 + b and d2 <= a*d1 + b for every sample.
struct QIFit {
  Rational a{1};
  std::int64_t b = 0;
};

using DistanceSample = std::pair<std::int64_t, std::int64_t>;  // (graph, formula)

bool satisfies(const QIFit& fit, const std::vector<DistanceSample>& samples);

/// Lexicographically smallest (a, b) with a in 1 + Z/4 and b a nonnegative
/// integer. Since b alone can absorb any finite gap, a is always 1.
QIFit fit_qi_constants(const std::vector<DistanceSample>& samples);

/// Smallest a on the same grid whose least feasible b is <= b_max, paired
/// with that b; nullopt if none exists.
std::optional<QIFit> fit_qi_constants(const std::vector<DistanceSample>& samples,
                                      std::int64_t b_max);

nlohmann::json to_json(const QIFit& fit);

}  // namespace interp
