#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace vecwp {

enum class ErrorKind {
    input,
    parse,
    unknown_label,
    not_interior_point,
    numerical_failure,
    precondition,
    hypothesis_not_met,
    no_bounding_functional,
    certificate_failure,
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(message), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message) {
    throw Error(kind, message);
}

}  // namespace vecwp
