#pragma once

#include <cstdint>
#include <string>

namespace dcx {

// SHA-256 of a byte string, rendered as lowercase hex.
std::string sha256_hex(const std::string& bytes);

}  // namespace dcx
