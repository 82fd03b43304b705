#pragma once

#include <stdexcept>
#include <string>

namespace footrule {

enum class errc {
    invalid_argument,
    duplicate_value,
    length_mismatch,
    wrong_case,
    budget_exceeded,
    bad_dimension,
    bad_alpha,
    bad_range,
    parse,
    io,
    all_missing,
};

/// Library error carrying a machine-readable code alongside the message.
class Error : public std::runtime_error {
public:
    Error(errc code, const std::string& what) : std::runtime_error(what), code_(code) {}

    errc code() const noexcept { return code_; }

private:
    errc code_;
};

[[noreturn]] inline void raise(errc code, const std::string& what) { throw Error(code, what); }

}  // namespace footrule
