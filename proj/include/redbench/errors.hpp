#pragma once

#include <stdexcept>
#include <string>

namespace redbench {

// Raised when input data violates the record/matrix contracts (malformed
// rows, out-of-range scores, duplicate keys, empty model intersection).
// The message carries the offending location when one is known, e.g.
// "runs.csv:17: score out of range". The CLI maps this to exit code 2.
class DataError : public std::runtime_error {
public:
    explicit DataError(const std::string& message)
        : std::runtime_error(message) {}

    DataError(const std::string& location, const std::string& message)
        : std::runtime_error(location + ": " + message) {}
};

// Raised for caller mistakes that are not data-dependent (bad flag values,
// k <= 0, malformed ratio specs). The CLI maps this to exit code 1.
class UsageError : public std::runtime_error {
public:
    explicit UsageError(const std::string& message)
        : std::runtime_error(message) {}
};

}  // namespace redbench
