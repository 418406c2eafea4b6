#include "interp/error.hpp"

namespace interp {

Error::Error(std::string_view module, std::string_view what)
    : std::runtime_error(std::string(module) + ": " + std::string(what)),
      module_(module) {}

}  // namespace interp
