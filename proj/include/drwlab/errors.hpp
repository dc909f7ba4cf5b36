#pragma once

#include <stdexcept>
#include <string>

namespace drwlab {

enum class ErrorKind {
    PrecisionExhausted,
    WindowTooSmall,
    NotSaturated,
    NotASublattice,
    ShapeMismatch,
    CostGuard,
    AxiomViolation,
    InvalidArgument,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace drwlab
