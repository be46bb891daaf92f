#pragma once

#include <string>

namespace facttrack {

std::string sha256_hex(const std::string& data);

}  // namespace facttrack
