#include "litclust/error.hpp"

namespace litclust {

void fail(const std::string& what) { throw Error(ErrorKind::validation, what); }
void fail_io(const std::string& what) { throw Error(ErrorKind::io, what); }
void fail_guard(const std::string& what) { throw Error(ErrorKind::guard, what); }

int exit_code(ErrorKind kind) noexcept
{
    switch (kind) {
    case ErrorKind::validation: return 2;
    case ErrorKind::io: return 3;
    case ErrorKind::guard: return 4;
    }
    return 1;
}

const char* kind_name(ErrorKind kind) noexcept
{
    switch (kind) {
    case ErrorKind::validation: return "validation";
    case ErrorKind::io: return "io";
    case ErrorKind::guard: return "guard";
    }
    return "unknown";
}

} // namespace litclust
