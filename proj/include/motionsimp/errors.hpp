#pragma once

#include <stdexcept>
#include <string>

namespace motionsimp {

enum class ErrorKind {
    Parse,
    Shape,
    NonFinite,
    Io,
    InvalidArgument,
};

// Single exception type for the library; callers branch on kind() to pick
// an exit code or HTTP status.
class MotionError : public std::runtime_error {
public:
    MotionError(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
    throw MotionError(kind, what);
}

}  // namespace motionsimp
