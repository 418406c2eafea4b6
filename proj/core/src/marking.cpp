#include "interp/marking.hpp"

#include <cstdlib>
#include <map>
#include <set>

#include "interp/error.hpp"

namespace interp {
namespace {

constexpr std::string_view kModule = "kernels";

std::string_view trim(std::string_view s) {
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  return s;
}

}  // namespace

Marking11::Marking11(Slope base, Slope transversal) : base_(base), transversal_(transversal) {
  if (slope_intersection(SurfaceKind::Torus1, base_, transversal_) != 1) {
    throw InvalidArgument(kModule, "marking " + to_string() +
                                       " has base and transversal not meeting once");
  }
}

std::string Marking11::to_string() const {
  return "(" + base_.to_string() + "; " + transversal_.to_string() + ")";
}

Marking11 Marking11::parse(std::string_view text) {
  text = trim(text);
  if (text.size() < 2 || text.front() != '(' || text.back() != ')') {
    throw InvalidArgument(kModule, "marking must look like (p/q; r/s): " + std::string(text));
  }
  text = text.substr(1, text.size() - 2);
  auto sep = text.find(';');
  if (sep == std::string_view::npos) {
    throw InvalidArgument(kModule, "marking needs ';' between base and transversal");
  }
  return {Slope::parse(trim(text.substr(0, sep))), Slope::parse(trim(text.substr(sep + 1)))};
}

Marking11 flip(const Marking11& m) { return {m.transversal(), m.base()}; }

std::vector<Marking11> marking_moves(const Marking11& m) {
  return {Marking11(m.base(), dehn_twist(m.base(), 1, m.transversal())),
          Marking11(m.base(), dehn_twist(m.base(), -1, m.transversal())), flip(m)};
}

std::int64_t marking_distance(const Marking11& a, const Marking11& b,
                              const MarkingSearchOptions& options) {
  if (a == b) return 0;
  // Expand the smaller frontier until the two searches meet.
  std::map<Marking11, std::int64_t> seen_a{{a, 0}}, seen_b{{b, 0}};
  std::vector<Marking11> front_a{a}, front_b{b};
  std::int64_t depth_a = 0, depth_b = 0;
  while (!front_a.empty() && !front_b.empty()) {
    const bool grow_a = front_a.size() <= front_b.size();
    auto& front = grow_a ? front_a : front_b;
    auto& seen = grow_a ? seen_a : seen_b;
    auto& other = grow_a ? seen_b : seen_a;
    auto& depth = grow_a ? depth_a : depth_b;
    ++depth;
    std::vector<Marking11> next;
    std::int64_t best = -1;
    for (const auto& m : front) {
      for (auto& n : marking_moves(m)) {
        if (auto it = other.find(n); it != other.end()) {
          std::int64_t total = depth + it->second;
          if (best < 0 || total < best) best = total;
        }
        if (seen.emplace(n, depth).second) next.push_back(n);
      }
    }
    if (best >= 0) return best;
    if (seen_a.size() + seen_b.size() > options.node_cap) {
      throw RuntimeFailure(kModule, "marking distance search exceeded node cap");
    }
    front = std::move(next);
  }
  throw RuntimeFailure(kModule, "marking graph search exhausted without meeting");
}

std::int64_t annulus_distance(const AnnulusCoord& a, const AnnulusCoord& b) {
  // Arcs t and t' share endpoints and their interiors cross |t - t'| - 1
  // times.
  return std::abs(a.twist - b.twist);
}

}  // namespace interp
