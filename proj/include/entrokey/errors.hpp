#pragma once

#include <stdexcept>
#include <string>

namespace entrokey {

// Failure categories; the CLI maps each to a fixed exit code so callers
// can branch on failures without parsing messages.
enum class ErrorCategory {
    config,    // invalid flag / config value
    io,        // file cannot be opened, read or written
    parse,     // file content is malformed
    data,      // content violates a contract (duplicate id, unknown label, ...)
    model,     // model incompatible with its inputs (vocabulary hash mismatch)
    internal,  // should not happen
};

inline const char* category_name(ErrorCategory c) {
    switch (c) {
        case ErrorCategory::config: return "config";
        case ErrorCategory::io: return "io";
        case ErrorCategory::parse: return "parse";
        case ErrorCategory::data: return "data";
        case ErrorCategory::model: return "model";
        case ErrorCategory::internal: return "internal";
    }
    return "internal";
}

inline int category_exit_code(ErrorCategory c) {
    switch (c) {
        case ErrorCategory::config: return 2;
        case ErrorCategory::io: return 3;
        case ErrorCategory::parse: return 4;
        case ErrorCategory::data: return 5;
        case ErrorCategory::model: return 6;
        case ErrorCategory::internal: return 10;
    }
    return 10;
}

class Error : public std::runtime_error {
public:
    Error(ErrorCategory category, const std::string& message)
        : std::runtime_error(message), category_(category) {}

    ErrorCategory category() const noexcept { return category_; }

private:
    ErrorCategory category_;
};

[[noreturn]] inline void fail(ErrorCategory category, const std::string& message) {
    throw Error(category, message);
}

}  // namespace entrokey
