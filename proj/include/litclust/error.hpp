#pragma once

#include <stdexcept>
#include <string>

namespace litclust {

enum class ErrorKind {
    validation, // malformed input, violated invariant, bad arguments
    io,         // missing or unreadable file
    guard,      // refused because the request is too large
};

/// Exception type used throughout the library. The kind selects the CLI
/// exit status (2 validation, 3 io, 4 guard).
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] void fail(const std::string& what);
[[noreturn]] void fail_io(const std::string& what);
[[noreturn]] void fail_guard(const std::string& what);

int exit_code(ErrorKind kind) noexcept;
const char* kind_name(ErrorKind kind) noexcept;

} // namespace litclust
