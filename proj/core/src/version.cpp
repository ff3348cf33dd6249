#include "sdom/version.hpp"

namespace sdom {

std::string_view version() noexcept { return SDOM_VERSION; }

}  // namespace sdom
