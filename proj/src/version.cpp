#include "zetalab/version.hpp"

namespace zetalab {

std::string_view version() { return ZETALAB_VERSION_STRING; }

}  // namespace zetalab
