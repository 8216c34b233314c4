#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace brokeneyes {

enum class ErrorKind {
    InvalidParameter,
    InvalidRange,
    NotFound,
    EmptyClass,
    Io,
    Parse,
    Format,
    Truncation,
    Data,
    Shape,
    DegenerateInput,
};

std::string_view to_string(ErrorKind kind);

/// Every failure raised by the library carries one of the kinds above so
/// callers (and the CLI exit-code mapping) can branch without string matching.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(message), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

} // namespace brokeneyes
