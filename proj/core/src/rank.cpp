#include "interp/rank.hpp"

#include <algorithm>

#include "interp/error.hpp"

namespace interp {
namespace {

constexpr std::string_view kModule = "topology";

void check_range(const Surface& s, int xi) {
  if (s.complexity() < 1) {
    throw InvalidArgument(kModule, "rank needs complexity >= 1, got " + s.name());
  }
  if (xi < -2 || xi > s.complexity() - 1) {
    throw InvalidArgument(kModule, "xi must lie in [-2, " + std::to_string(s.complexity() - 1) +
                                       "], got " + std::to_string(xi));
  }
}

bool is_pants_decomposition(const DecompositionGraph& d) {
  return std::all_of(d.pieces.begin(), d.pieces.end(),
                     [](const Piece& p) { return p.complexity() == 0; });
}

}  // namespace

RankResult r_xi(std::span<const DecompositionGraph> decompositions, const Surface& s, int xi) {
  check_range(s, xi);

  if (xi == -2) {
    for (const auto& d : decompositions) {
      if (is_pants_decomposition(d)) return {d.curve_count(), d};
    }
    throw RuntimeFailure(kModule, "no pants decomposition among the candidates for " + s.name());
  }

  const int level = std::max(xi, 0);
  RankResult best;
  bool found = false;
  for (const auto& d : decompositions) {
    int k = 0;
    bool admissible = true;
    for (const auto& p : d.pieces) {
      if (p.complexity() == level + 1) ++k;
      else if (p.complexity() > level) admissible = false;
    }
    if (admissible && (!found || k > best.count)) {
      best = {k, d};
      found = true;
    }
  }
  if (!found) throw RuntimeFailure(kModule, "no admissible decomposition for " + s.name());
  return best;
}

RankResult r_xi(const Surface& s, int xi, const EnumerationOptions& options) {
  check_range(s, xi);
  auto all = enumerate_decompositions(s, options);
  return r_xi(all, s, xi);
}

int count_exceeding_pieces(std::span<const DecompositionGraph> decompositions, const Surface& s,
                           int xi) {
  check_range(s, xi);
  if (xi == -2) {
    int best = 0;
    for (const auto& d : decompositions) best = std::max(best, d.curve_count());
    return best;
  }
  const int level = std::max(xi, 0);
  int best = 0;
  for (const auto& d : decompositions) {
    int k = static_cast<int>(std::count_if(d.pieces.begin(), d.pieces.end(),
                                           [&](const Piece& p) { return p.complexity() > level; }));
    best = std::max(best, k);
  }
  return best;
}

std::vector<int> rank_profile(const Surface& s, const EnumerationOptions& options) {
  check_range(s, -2);
  auto all = enumerate_decompositions(s, options);
  std::vector<int> out;
  for (int xi = -2; xi <= s.complexity() - 1; ++xi) out.push_back(r_xi(all, s, xi).count);
  return out;
}

}  // namespace interp
