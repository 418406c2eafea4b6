#pragma once

#include <compare>
#include <string>

namespace interp {

/// Topological type of a connected orientable surface: genus g with n
/// punctures. Complexity is 3g - 3 + n; only the sphere S_{0,0} falls below
/// -2, and it is rejected.
class Surface {
 public:
  /// Throws InvalidArgument for negative counts or complexity below -2.
  Surface(int genus, int punctures);

  int genus() const noexcept { return genus_; }
  int punctures() const noexcept { return punctures_; }
  int complexity() const noexcept { return 3 * genus_ - 3 + punctures_; }
  int euler_characteristic() const noexcept { return 2 - 2 * genus_ - punctures_; }

  std::string name() const;  // "S_{g,n}"

  friend auto operator<=>(const Surface&, const Surface&) = default;

 private:
  int genus_;
  int punctures_;
};

inline int complexity(const Surface& s) { return s.complexity(); }

}  // namespace interp
