#pragma once

#include <stdexcept>
#include <string>

namespace kmernet {

/// Raised for every contract violation reported by the library: malformed
/// input, unmet preconditions, and invalid configurations.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace kmernet
