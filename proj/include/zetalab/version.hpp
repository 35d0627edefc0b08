#pragma once

#include <string_view>

namespace zetalab {

std::string_view version();

}  // namespace zetalab
