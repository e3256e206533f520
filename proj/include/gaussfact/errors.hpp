#pragma once

#include <stdexcept>
#include <string>

namespace gaussfact {

/// Filesystem and stream failures, kept distinct from domain errors so the
/// CLI can map them to a dedicated exit status.
class IoError : public std::runtime_error {
public:
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace gaussfact
