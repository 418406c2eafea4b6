#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "interp/region.hpp"

namespace interp {

/// A finite window g(min_index), ..., g(max_index) of a bi-infinite geodesic
/// in one block.
struct BlockGeodesic {
  std::size_t block = 0;
  std::int64_t min_index = 0;
  std::vector<BlockCoord> points;

  std::int64_t max_index() const { return min_index + static_cast<std::int64_t>(points.size()) - 1; }
  bool covers(std::int64_t k) const { return k >= min_index && k <= max_index(); }
  /// Throws InvalidArgument outside the window.
  const BlockCoord& at(std::int64_t k) const;
};

/// Z^r -> region, k |-> basepoint with g_j(k_j) substituted in flat block j.
struct QuasiFlatSpec {
  ProductRegion region;
  RegionPoint basepoint;
  std::vector<BlockGeodesic> geodesics;

  std::size_t rank() const noexcept { return geodesics.size(); }
};

/// Checks arity, g_j(0) = basepoint, adjacency of consecutive entries,
/// distinctness, and that no block carries two geodesics. Throws
/// InvalidArgument.
void validate(const QuasiFlatSpec& q);

/// Slopes v_k with v_0 = 0/1, v_1 = 1/0 and v_{k+1} = 2 v_k + v_{k-1}: a
/// bi-infinite Farey geodesic (consecutive terms meet once, terms two apart
/// meet twice). Returns indices -n..n.
BlockGeodesic farey_line(std::size_t block, std::int64_t n);

/// Quasi-flat over every TORUS1/SPHERE4 block of the region, each with
/// farey_line(n), basepoint 0/1 elsewhere.
QuasiFlatSpec farey_quasiflat(const ProductRegion& region, std::int64_t n);

/// Throws InvalidArgument if the vector length differs from the rank or an
/// entry is outside a geodesic window.
RegionPoint quasiflat_point(const QuasiFlatSpec& q, const std::vector<std::int64_t>& k);

struct QuasiFlatPair {
  std::vector<std::int64_t> k;
  std::vector<std::int64_t> l;
  std::int64_t distance = 0;
  std::int64_t formula = 0;
};

struct QuasiFlatReport {
  std::size_t rank = 0;
  std::int64_t grid = 0;
  std::uint64_t pairs_checked = 0;
  std::uint64_t lower_violations = 0;  // d < max_j |k_j - l_j|
  std::uint64_t upper_violations = 0;  // d > sum_j |k_j - l_j|
  bool upper_tight = true;             // d == sum_j |k_j - l_j| everywhere
  bool lower_tight = true;             // max_j |k_j - l_j| attained by d on single-axis pairs
  bool degenerate = false;             // some flat block is coned
  std::int64_t max_distance = 0;
  std::optional<QuasiFlatPair> witness;  // first violation
  std::vector<QuasiFlatPair> rows;       // only when requested

  bool ok() const { return lower_violations == 0 && upper_violations == 0 && !degenerate; }
  std::string summary() const;
};

struct QuasiFlatOptions {
  bool collect_rows = false;
  std::int64_t threshold = 4;  // K for the formula column of the rows
};

/// Checks max_j |dk_j| <= d(Q(k), Q(l)) <= sum_j |dk_j| for all k, l in
/// [-n, n]^r. A coned flat block is reported as degenerate rather than
/// thrown; the bounds are then expected to fail.
QuasiFlatReport verify_quasiflat(const QuasiFlatSpec& q, std::int64_t n,
                                 const QuasiFlatOptions& options = {});

nlohmann::json to_json(const QuasiFlatReport& report);
nlohmann::json to_json(const QuasiFlatSpec& q);
QuasiFlatSpec quasiflat_from_json(const ProductRegion& region, const nlohmann::json& geodesics);

}  // namespace interp
