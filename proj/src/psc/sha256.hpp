#pragma once

#include <string>
#include <string_view>

namespace psc {

// FIPS 180-4 SHA-256, returned as 64 lowercase hex characters.
std::string sha256_hex(std::string_view data);

}  // namespace psc
