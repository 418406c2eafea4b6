#pragma once

#include <span>
#include <vector>

#include "interp/decomposition.hpp"
#include "interp/surface.hpp"

namespace interp {

struct RankResult {
  int count = 0;
  DecompositionGraph witness;
};

/// Maximal number of disjoint pieces of complexity xi + 1 in a decomposition
/// of `s` whose remaining pieces all have complexity <= xi.
///
/// Two levels are special. At xi = -2 the pieces are annuli, so the count is
/// the number of curves of a pants decomposition, i.e. complexity(s); the
/// witness is a pants decomposition. At xi = -1 the candidate pieces are pairs
/// of pants, whose curve graphs are empty and carry no flat direction, so the
/// count is taken at the first level with nonempty curve graphs (xi = 0).
///
/// Requires complexity(s) >= 1 and -2 <= xi <= complexity(s) - 1; throws
/// InvalidArgument otherwise. The witness is the first maximiser in sorted
/// canonical order.
RankResult r_xi(const Surface& s, int xi, const EnumerationOptions& options = {});

/// Same, over an already enumerated decomposition list of `s`.
RankResult r_xi(std::span<const DecompositionGraph> decompositions, const Surface& s, int xi);

/// Maximal number of pieces of complexity strictly greater than xi in a
/// single decomposition (no condition on the others), with the same xi = -2
/// and xi = -1 conventions. Agrees with r_xi; kept as an independent check.
int count_exceeding_pieces(std::span<const DecompositionGraph> decompositions, const Surface& s,
                           int xi);

/// r_xi for every xi in [-2, complexity(s) - 1], index 0 holding xi = -2.
std::vector<int> rank_profile(const Surface& s, const EnumerationOptions& options = {});

}  // namespace interp
