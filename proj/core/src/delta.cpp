#include "interp/delta.hpp"

#include <algorithm>
#include <tuple>

#include "interp/error.hpp"

namespace interp {

Rational estimate_delta(const MetricGraph& g, std::size_t max_vertices) {
  if (g.size() > max_vertices) {
    throw InvalidArgument("formula", "delta estimation is limited to " +
                                         std::to_string(max_vertices) + " vertices");
  }
  if (g.size() < 2) return Rational(0);
  const DistanceMatrix d(g);
  if (!d.connected()) throw RuntimeFailure("formula", "delta needs a connected graph");

  const std::size_t n = g.size();
  struct Pair {
    Weight dist;
    std::uint32_t u, v;
  };
  std::vector<Pair> pairs;
  pairs.reserve(n * (n - 1) / 2);
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = u + 1; v < n; ++v) {
      pairs.push_back({d(u, v), static_cast<std::uint32_t>(u), static_cast<std::uint32_t>(v)});
    }
  }
  std::sort(pairs.begin(), pairs.end(), [](const Pair& a, const Pair& b) {
    return std::tie(b.dist, a.u, a.v) < std::tie(a.dist, b.u, b.v);
  });

  // For a 4-tuple whose largest sum is d(P) + d(Q) with d(P) >= d(Q), the
  // defect S1 - S2 is at most 2 d(Q). Scanning Q in decreasing order, stop
  // once 2 d(Q) cannot beat the best defect found.
  Weight best = 0;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const auto& q = pairs[i];
    if (2 * q.dist <= best) break;
    for (std::size_t j = 0; j < i; ++j) {
      const auto& p = pairs[j];
      Weight s1 = p.dist + q.dist;
      Weight s2 = d(p.u, q.u) + d(p.v, q.v);
      Weight s3 = d(p.u, q.v) + d(p.v, q.u);
      Weight hi = std::max({s1, s2, s3});
      Weight mid = s1 + s2 + s3 - hi - std::min({s1, s2, s3});
      best = std::max(best, hi - mid);
    }
  }
  return Rational(best, 2 * kUnitWeight);
}

}  // namespace interp
