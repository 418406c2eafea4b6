#pragma once

// Curves on the complexity-one surfaces S_{1,1} and S_{0,4}, modelled by
// their slopes p/q in Q u {1/0}.

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace interp {

/// Reduced fraction p/q with q >= 0 and gcd(|p|, q) = 1. Infinity is 1/0.
class Slope {
 public:
  /// Normalizes sign and common factors; throws InvalidArgument for 0/0.
  Slope(std::int64_t p, std::int64_t q);

  static Slope infinity() { return {1, 0}; }

  std::int64_t p() const noexcept { return p_; }
  std::int64_t q() const noexcept { return q_; }
  bool is_infinity() const noexcept { return q_ == 0; }

  /// max(|p|, q); the finite universes used for balls bound this.
  std::int64_t height() const noexcept;

  std::string to_string() const;  // "p/q", "1/0" for infinity
  static Slope parse(std::string_view text);

  friend auto operator<=>(const Slope&, const Slope&) = default;

 private:
  std::int64_t p_;
  std::int64_t q_;
};

enum class SurfaceKind { Torus1, Sphere4 };

std::string_view to_string(SurfaceKind kind);

/// Integer 2x2 matrix of determinant +-1 acting on slopes by (p, q) -> M (p, q).
struct Unimodular {
  std::int64_t a = 1, b = 0, c = 0, d = 1;

  std::int64_t det() const noexcept { return a * d - b * c; }
  Unimodular inverse() const;
  Slope apply(const Slope& x) const;
  Unimodular operator*(const Unimodular& o) const;
};

/// The matrix whose columns are `axis` and its Farey neighbour with the
/// smallest nonnegative denominator. Sends 1/0 to `axis`.
Unimodular axis_frame(const Slope& axis);

/// Geometric intersection number: |det| on the torus, twice that on S_{0,4}.
std::int64_t slope_intersection(SurfaceKind kind, const Slope& a, const Slope& b);

/// Distinct slopes with minimal positive intersection (Farey neighbours).
bool adjacent(SurfaceKind kind, const Slope& a, const Slope& b);

/// Power of the Dehn twist about `axis`, conjugated from
/// p/q -> (p + power*q)/q at axis 1/0 through axis_frame(axis).
Slope dehn_twist(const Slope& axis, std::int64_t power, const Slope& x);

/// Annular projection of `x` to the annulus around `axis`: floor of the
/// image of x under axis_frame(axis)^-1. Shifts by exactly n under
/// dehn_twist(axis, n, .). Throws RuntimeFailure when x == axis (the
/// projection is empty).
std::int64_t twist_coordinate(const Slope& axis, const Slope& x);

/// Farey neighbours of x with height <= max_height, sorted.
std::vector<Slope> farey_neighbors(const Slope& x, std::int64_t max_height);

/// Every slope of height <= max_height, sorted.
std::vector<Slope> slopes_up_to_height(std::int64_t max_height);

/// Exact distance in the Farey graph, computed on the ladder of triangles
/// between the two slopes.
std::int64_t farey_distance(const Slope& a, const Slope& b);

/// Slopes other than a and b lying on some Farey geodesic from a to b,
/// sorted. They never exceed the larger of the two endpoint heights.
std::vector<Slope> farey_geodesic_interior(const Slope& a, const Slope& b);

}  // namespace interp
