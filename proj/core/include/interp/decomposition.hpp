#pragma once

#include <compare>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "interp/surface.hpp"

namespace interp {

/// A complementary component of a multicurve: genus, boundary circles coming
/// from cut curves, and punctures inherited from the ambient surface.
struct Piece {
  int genus = 0;
  int boundary = 0;
  int punctures = 0;

  /// Boundary circles count as punctures here.
  int complexity() const noexcept { return 3 * genus - 3 + boundary + punctures; }
  bool is_pants() const noexcept { return genus == 0 && boundary + punctures == 3; }

  friend auto operator<=>(const Piece&, const Piece&) = default;
};

/// Dual multigraph of a multicurve: one vertex per piece, one edge per curve.
/// A self-loop is a curve with the same piece on both sides. Edges are stored
/// as (u, v) with u <= v.
struct DecompositionGraph {
  std::vector<Piece> pieces;
  std::vector<std::pair<int, int>> curves;

  int curve_count() const noexcept { return static_cast<int>(curves.size()); }
  int piece_count() const noexcept { return static_cast<int>(pieces.size()); }

  friend auto operator<=>(const DecompositionGraph&, const DecompositionGraph&) = default;
};

/// One piece, no curves.
DecompositionGraph trivial_decomposition(const Surface& s);

/// Every structural invariant that fails, as human-readable strings; empty
/// means the graph is a valid decomposition of `s`.
std::vector<std::string> decomposition_violations(const DecompositionGraph& d, const Surface& s);

/// Throws InvalidArgument listing the first violation, if any.
void validate(const DecompositionGraph& d, const Surface& s);

int first_betti_number(const DecompositionGraph& d);

/// Representative of the isomorphism class: pieces sorted, edges relabeled
/// and sorted so the edge list is lexicographically minimal among all
/// piece-order-preserving relabelings. Equal iff isomorphic.
DecompositionGraph canonical_form(const DecompositionGraph& d);

struct EnumerationOptions {
  int complexity_cap = 9;
};

/// All isomorphism classes of decompositions of `s` (including the trivial
/// one) in canonical form, sorted. Throws InvalidArgument when the
/// complexity is negative and RuntimeFailure when it exceeds the cap.
std::vector<DecompositionGraph> enumerate_decompositions(const Surface& s,
                                                         const EnumerationOptions& options = {});

nlohmann::json to_json(const DecompositionGraph& d);
DecompositionGraph decomposition_from_json(const nlohmann::json& j);

}  // namespace interp
