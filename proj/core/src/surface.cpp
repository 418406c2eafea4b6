#include "interp/surface.hpp"

#include "interp/error.hpp"

namespace interp {

Surface::Surface(int genus, int punctures) : genus_(genus), punctures_(punctures) {
  if (genus < 0 || punctures < 0) {
    throw InvalidArgument("topology", "genus and punctures must be nonnegative");
  }
  if (complexity() < -2) {
    throw InvalidArgument("topology", "surface complexity below -2: " + name());
  }
}

std::string Surface::name() const {
  return "S_{" + std::to_string(genus_) + "," + std::to_string(punctures_) + "}";
}

}  // namespace interp
