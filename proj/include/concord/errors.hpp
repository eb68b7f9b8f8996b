#pragma once

#include <stdexcept>
#include <string>

namespace concord {

/// Raised when a document, predicate, or condition violates a schema
/// invariant. `path()` points at the offending element, e.g.
/// "rules[2].action[0]" or "line 14".
class ValidationError : public std::runtime_error {
public:
    ValidationError(const std::string& message, std::string path = {})
        : std::runtime_error(path.empty() ? message : path + ": " + message),
          path_(std::move(path)) {}

    const std::string& path() const noexcept { return path_; }

private:
    std::string path_;
};

/// Raised when a satisfiability query exceeds its node budget. The search
/// state is discarded; no partial verdict is reported.
class CapacityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace concord
