#pragma once

#include <string_view>

namespace sdom {

std::string_view version() noexcept;

}  // namespace sdom
