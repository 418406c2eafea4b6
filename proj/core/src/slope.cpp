#include "interp/slope.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <deque>
#include <limits>
#include <numeric>
#include <tuple>

#include "interp/error.hpp"
#include "interp/rational.hpp"

namespace interp {
namespace {

constexpr std::string_view kModule = "kernels";

using Wide = Int128;

std::int64_t narrow(Wide v) {
  if (v > std::numeric_limits<std::int64_t>::max() || v < std::numeric_limits<std::int64_t>::min()) {
    throw RuntimeFailure(kModule, "slope arithmetic overflowed 64 bits");
  }
  return static_cast<std::int64_t>(v);
}

Wide det(const Slope& a, const Slope& b) {
  return static_cast<Wide>(a.p()) * b.q() - static_cast<Wide>(a.q()) * b.p();
}

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

// (x, y) with a*x + b*y = gcd(a, b).
std::tuple<std::int64_t, std::int64_t, std::int64_t> extended_gcd(std::int64_t a, std::int64_t b) {
  std::int64_t old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
  while (r != 0) {
    std::int64_t k = old_r / r;
    std::tie(old_r, r) = std::make_tuple(r, old_r - k * r);
    std::tie(old_s, s) = std::make_tuple(s, old_s - k * s);
    std::tie(old_t, t) = std::make_tuple(t, old_t - k * t);
  }
  if (old_r < 0) return {-old_r, -old_s, -old_t};
  return {old_r, old_s, old_t};
}

// Some (c, d) with p*d - q*c = 1.
std::pair<std::int64_t, std::int64_t> unit_partner(const Slope& x) {
  auto [g, s, t] = extended_gcd(x.p(), x.q());
  // p*s + q*t = 1  =>  d = s, c = -t.
  (void)g;
  return {-t, s};
}

std::int64_t parse_int(std::string_view text) {
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw InvalidArgument(kModule, "not an integer: '" + std::string(text) + "'");
  }
  return v;
}

}  // namespace

Slope::Slope(std::int64_t p, std::int64_t q) : p_(p), q_(q) {
  if (p == 0 && q == 0) throw InvalidArgument(kModule, "0/0 is not a slope");
  if (q == 0) {
    p_ = 1;
    return;
  }
  std::int64_t g = std::gcd(p, q);
  p_ /= g;
  q_ /= g;
  if (q_ < 0) {
    p_ = -p_;
    q_ = -q_;
  }
}

std::int64_t Slope::height() const noexcept { return std::max(std::abs(p_), q_); }

std::string Slope::to_string() const { return std::to_string(p_) + "/" + std::to_string(q_); }

Slope Slope::parse(std::string_view text) {
  auto slash = text.find('/');
  if (slash == std::string_view::npos) {
    if (text == "inf" || text == "oo") return infinity();
    return {parse_int(text), 1};
  }
  return {parse_int(text.substr(0, slash)), parse_int(text.substr(slash + 1))};
}

std::string_view to_string(SurfaceKind kind) {
  return kind == SurfaceKind::Torus1 ? "TORUS1" : "SPHERE4";
}

Unimodular Unimodular::inverse() const {
  const std::int64_t s = det();
  if (s != 1 && s != -1) throw InvalidArgument(kModule, "matrix is not unimodular");
  return {s * d, -s * b, -s * c, s * a};
}

Slope Unimodular::apply(const Slope& x) const {
  Wide p = static_cast<Wide>(a) * x.p() + static_cast<Wide>(b) * x.q();
  Wide q = static_cast<Wide>(c) * x.p() + static_cast<Wide>(d) * x.q();
  return {narrow(p), narrow(q)};
}

Unimodular Unimodular::operator*(const Unimodular& o) const {
  return {narrow(static_cast<Wide>(a) * o.a + static_cast<Wide>(b) * o.c),
          narrow(static_cast<Wide>(a) * o.b + static_cast<Wide>(b) * o.d),
          narrow(static_cast<Wide>(c) * o.a + static_cast<Wide>(d) * o.c),
          narrow(static_cast<Wide>(c) * o.b + static_cast<Wide>(d) * o.d)};
}

Unimodular axis_frame(const Slope& axis) {
  auto [c, d] = unit_partner(axis);
  // Neighbours are (c + t p, d + t q); pick the smallest |d + t q|, then the
  // smallest |numerator|, then the larger numerator.
  std::int64_t t0 = 0;
  if (axis.q() != 0) {
    t0 = -floor_div(d, axis.q());
  } else {
    t0 = -c;  // axis 1/0: neighbours n/1, want n = 0.
  }
  auto key = [&](std::int64_t t) {
    Slope s(narrow(static_cast<Wide>(c) + static_cast<Wide>(t) * axis.p()),
            narrow(static_cast<Wide>(d) + static_cast<Wide>(t) * axis.q()));
    return std::make_tuple(s.q(), std::abs(s.p()), -s.p());
  };
  std::int64_t best = t0;
  for (std::int64_t t = t0 - 2; t <= t0 + 2; ++t) {
    if (key(t) < key(best)) best = t;
  }
  Slope s(c + best * axis.p(), d + best * axis.q());
  return {axis.p(), s.p(), axis.q(), s.q()};
}

std::int64_t slope_intersection(SurfaceKind kind, const Slope& a, const Slope& b) {
  Wide v = det(a, b);
  if (v < 0) v = -v;
  if (kind == SurfaceKind::Sphere4) v *= 2;
  return narrow(v);
}

bool adjacent(SurfaceKind kind, const Slope& a, const Slope& b) {
  const std::int64_t minimal = kind == SurfaceKind::Torus1 ? 1 : 2;
  return a != b && slope_intersection(kind, a, b) == minimal;
}

Slope dehn_twist(const Slope& axis, std::int64_t power, const Slope& x) {
  if (power == 0) return x;
  const Unimodular frame = axis_frame(axis);
  const Unimodular shear{1, power, 0, 1};
  return (frame * shear * frame.inverse()).apply(x);
}

std::int64_t twist_coordinate(const Slope& axis, const Slope& x) {
  if (x == axis) {
    throw RuntimeFailure(kModule, "empty annular projection: slope " + x.to_string() +
                                      " is the core curve");
  }
  const Slope image = axis_frame(axis).inverse().apply(x);
  return floor_div(image.p(), image.q());
}

std::vector<Slope> farey_neighbors(const Slope& x, std::int64_t max_height) {
  std::vector<Slope> out;
  if (max_height < 0) return out;
  auto [c, d] = unit_partner(x);
  // Neighbours are exactly (c + t p, d + t q) for t in Z.
  std::int64_t lo, hi;
  if (x.q() == 0) {
    lo = -max_height - c;
    hi = max_height - c;
  } else {
    lo = -floor_div(max_height + d, x.q());
    hi = floor_div(max_height - d, x.q());
  }
  for (std::int64_t t = lo; t <= hi; ++t) {
    Wide num = static_cast<Wide>(c) + static_cast<Wide>(t) * x.p();
    Wide den = static_cast<Wide>(d) + static_cast<Wide>(t) * x.q();
    if (den < 0) {
      num = -num;
      den = -den;
    }
    if (den == 0) num = 1;
    if (num > max_height || -num > max_height || den > max_height) continue;
    out.emplace_back(narrow(num), narrow(den));
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Slope> slopes_up_to_height(std::int64_t max_height) {
  std::vector<Slope> out;
  if (max_height >= 1) out.push_back(Slope::infinity());
  for (std::int64_t q = 1; q <= max_height; ++q) {
    for (std::int64_t p = -max_height; p <= max_height; ++p) {
      if (std::gcd(p, q) == 1) out.emplace_back(p, q);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::int64_t farey_distance(const Slope& a, const Slope& b) {
  if (a == b) return 0;
  const Slope x = axis_frame(a).inverse().apply(b);
  if (x.q() == 1) return 1;

  // Ladder from 1/0 to x: convergents of x plus the ends of each fan of
  // intermediate fractions. Interior fan vertices are only adjacent to the
  // pivot and their two fan neighbours, so a geodesic never needs them.
  std::vector<Slope> ladder{Slope::infinity()};
  Wide h2 = 0, k2 = 1, h1 = 1, k1 = 0;
  std::int64_t num = x.p(), den = x.q();
  bool first = true;
  while (den != 0) {
    const std::int64_t ak = floor_div(num, den);
    if (!first) {
      for (std::int64_t j : {std::int64_t{1}, std::int64_t{2}, ak - 2, ak - 1}) {
        if (j < 1 || j > ak - 1) continue;
        ladder.emplace_back(narrow(h2 + j * h1), narrow(k2 + j * k1));
      }
    }
    first = false;
    const Wide h = ak * h1 + h2;
    const Wide k = ak * k1 + k2;
    ladder.emplace_back(narrow(h), narrow(k));
    h2 = h1;
    k2 = k1;
    h1 = h;
    k1 = k;
    const std::int64_t rem = num - ak * den;
    num = den;
    den = rem;
  }
  std::sort(ladder.begin() + 1, ladder.end());
  ladder.erase(std::unique(ladder.begin() + 1, ladder.end()), ladder.end());

  const std::size_t n = ladder.size();
  std::vector<std::int64_t> dist(n, -1);
  std::deque<std::size_t> queue{0};
  dist[0] = 0;
  while (!queue.empty()) {
    auto i = queue.front();
    queue.pop_front();
    if (ladder[i] == x) return dist[i];
    for (std::size_t j = 0; j < n; ++j) {
      if (dist[j] < 0 && adjacent(SurfaceKind::Torus1, ladder[i], ladder[j])) {
        dist[j] = dist[i] + 1;
        queue.push_back(j);
      }
    }
  }
  throw RuntimeFailure(kModule, "Farey ladder did not reach " + x.to_string());
}

std::vector<Slope> farey_geodesic_interior(const Slope& a, const Slope& b) {
  std::vector<Slope> out;
  const auto d = farey_distance(a, b);
  if (d < 2) return out;
  for (const auto& c : slopes_up_to_height(std::max(a.height(), b.height()))) {
    if (c == a || c == b) continue;
    if (farey_distance(a, c) + farey_distance(c, b) == d) out.push_back(c);
  }
  return out;
}

}  // namespace interp
