#include "interp/formula.hpp"

#include <algorithm>
#include <cstdlib>

#include <nlohmann/json.hpp>

#include "interp/error.hpp"

namespace interp {
namespace {

constexpr std::string_view kModule = "formula";

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

const Marking11& marking_at(const ProductRegion& r, const RegionPoint& pt, std::size_t block) {
  if (block >= r.arity() || !r.is_marking_block(block)) {
    throw InvalidArgument(kModule, "selector needs a marking block, block " +
                                       std::to_string(block) + " is not one");
  }
  return std::get<Marking11>(pt.coords[block]);
}

// The slope of a marking seen by the annulus around `axis`.
const Slope& annular_support(const Marking11& m, const Slope& axis) {
  return m.base() != axis ? m.base() : m.transversal();
}

std::int64_t ceil_div4(std::int64_t v) {
  // ceil(v / 4) for any sign.
  return v >= 0 ? (v + 3) / 4 : -((-v) / 4);
}

// Least b making (quarters/4, b) feasible.
std::int64_t least_b(const std::vector<DistanceSample>& samples, std::int64_t quarters) {
  std::int64_t b = 0;
  for (auto [d1, d2] : samples) {
    b = std::max(b, ceil_div4(4 * d1 - quarters * d2));
    b = std::max(b, ceil_div4(4 * d2 - quarters * d1));
  }
  return b;
}

}  // namespace

ThresholdParams::ThresholdParams(std::int64_t k) : k_(k) {
  if (k < 1) throw InvalidArgument(kModule, "threshold K must be >= 1");
}

std::int64_t threshold(std::int64_t n, const ThresholdParams& k) { return n > k.k() ? n : 0; }

std::string to_string(const Selector& w) {
  return std::visit(Overloaded{
                        [](const BlockSelector& s) { return "block " + std::to_string(s.block); },
                        [](const AnnularSelector& s) {
                          return "annulus " + s.axis.to_string() + " in block " +
                                 std::to_string(s.block);
                        },
                        [](const CurveGraphSelector& s) {
                          return "curve graph of block " + std::to_string(s.block);
                        },
                    },
                    w);
}

std::int64_t projection_distance(const ProductRegion& r, const Selector& w, const RegionPoint& x,
                                 const RegionPoint& y) {
  validate(r, x);
  validate(r, y);
  return std::visit(
      Overloaded{
          [&](const BlockSelector& s) -> std::int64_t {
            if (s.block >= r.arity()) throw InvalidArgument(kModule, "block selector out of range");
            RegionMetric metric(r);
            return metric.block_distance(s.block, x.coords[s.block], y.coords[s.block]);
          },
          [&](const AnnularSelector& s) -> std::int64_t {
            const auto& mx = marking_at(r, x, s.block);
            const auto& my = marking_at(r, y, s.block);
            auto tx = twist_coordinate(s.axis, annular_support(mx, s.axis));
            auto ty = twist_coordinate(s.axis, annular_support(my, s.axis));
            return std::abs(tx - ty);
          },
          [&](const CurveGraphSelector& s) -> std::int64_t {
            const auto& mx = marking_at(r, x, s.block);
            const auto& my = marking_at(r, y, s.block);
            if (mx.base() == my.base()) return farey_distance(mx.transversal(), my.transversal());
            return farey_distance(mx.base(), my.base());
          },
      },
      w);
}

std::vector<Selector> formula_selectors(const ProductRegion& r, const RegionPoint& x,
                                        const RegionPoint& y) {
  validate(r, x);
  validate(r, y);
  std::vector<Selector> out;
  for (std::size_t i = 0; i < r.arity(); ++i) {
    if (r.blocks()[i] == BlockKind::Pants || r.is_coned(i)) continue;
    if (!r.is_marking_block(i)) {
      out.emplace_back(BlockSelector{i});
      continue;
    }
    out.emplace_back(CurveGraphSelector{i});
    const auto& bx = std::get<Marking11>(x.coords[i]).base();
    const auto& by = std::get<Marking11>(y.coords[i]).base();
    auto axes = farey_geodesic_interior(bx, by);
    axes.push_back(bx);
    axes.push_back(by);
    std::sort(axes.begin(), axes.end());
    axes.erase(std::unique(axes.begin(), axes.end()), axes.end());
    for (const auto& a : axes) out.emplace_back(AnnularSelector{i, a});
  }
  return out;
}

std::int64_t distance_formula(const ProductRegion& r, const ThresholdParams& k,
                              const RegionPoint& x, const RegionPoint& y) {
  std::int64_t total = 0;
  for (const auto& w : formula_selectors(r, x, y)) {
    total += threshold(projection_distance(r, w, x, y), k);
  }
  return total;
}

bool satisfies(const QIFit& fit, const std::vector<DistanceSample>& samples) {
  // Compare d1*den <= a.num*d2 + b*den exactly.
  for (auto [d1, d2] : samples) {
    Int128 den = fit.a.den;
    if (static_cast<Int128>(d1) * den > static_cast<Int128>(fit.a.num) * d2 + fit.b * den) {
      return false;
    }
    if (static_cast<Int128>(d2) * den > static_cast<Int128>(fit.a.num) * d1 + fit.b * den) {
      return false;
    }
  }
  return true;
}

QIFit fit_qi_constants(const std::vector<DistanceSample>& samples) {
  return {Rational(1), least_b(samples, 4)};
}

std::optional<QIFit> fit_qi_constants(const std::vector<DistanceSample>& samples,
                                      std::int64_t b_max) {
  if (b_max < 0) return std::nullopt;
  std::int64_t largest = 0;
  for (auto [d1, d2] : samples) largest = std::max({largest, d1, d2});
  // Past a = largest + 1 every pair with both entries positive is covered,
  // so b stops decreasing.
  for (std::int64_t quarters = 4; quarters <= 4 * (largest + 1); ++quarters) {
    auto b = least_b(samples, quarters);
    if (b <= b_max) return QIFit{Rational(quarters, 4), b};
  }
  return std::nullopt;
}

nlohmann::json to_json(const QIFit& fit) {
  return {{"a", fit.a.to_string()}, {"b", fit.b}};
}

}  // namespace interp
