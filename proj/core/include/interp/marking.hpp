#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "interp/slope.hpp"

namespace interp {

/// Complete clean marking of S_{1,1}: a base curve and a transversal meeting
/// it once.
class Marking11 {
 public:
  /// Throws InvalidArgument unless |det(base, transversal)| = 1.
  Marking11(Slope base, Slope transversal);

  const Slope& base() const noexcept { return base_; }
  const Slope& transversal() const noexcept { return transversal_; }

  std::string to_string() const;  // "(p/q; r/s)"
  static Marking11 parse(std::string_view text);

  friend auto operator<=>(const Marking11&, const Marking11&) = default;

 private:
  Slope base_;
  Slope transversal_;
};

/// Twist the transversal once either way about the base, or flip the pair.
/// Order: +1 twist, -1 twist, flip.
std::vector<Marking11> marking_moves(const Marking11& m);

Marking11 flip(const Marking11& m);

struct MarkingSearchOptions {
  std::size_t node_cap = 4'000'000;
};

/// Exact distance in the marking graph (bidirectional BFS). Throws
/// RuntimeFailure if the search visits more than node_cap markings.
std::int64_t marking_distance(const Marking11& a, const Marking11& b,
                              const MarkingSearchOptions& options = {});

/// Arc crossing an annulus: the base arc twisted `twist` times, endpoints
/// fixed.
struct AnnulusCoord {
  std::int64_t twist = 0;
  friend auto operator<=>(const AnnulusCoord&, const AnnulusCoord&) = default;
};

/// Distance in the annular curve graph, |twist gap|.
std::int64_t annulus_distance(const AnnulusCoord& a, const AnnulusCoord& b);

}  // namespace interp
