#include "brokeneyes/error.hpp"

namespace brokeneyes {

std::string_view to_string(ErrorKind kind)
{
    switch (kind) {
    case ErrorKind::InvalidParameter: return "invalid-parameter";
    case ErrorKind::InvalidRange: return "invalid-range";
    case ErrorKind::NotFound: return "not-found";
    case ErrorKind::EmptyClass: return "empty-class";
    case ErrorKind::Io: return "io-error";
    case ErrorKind::Parse: return "parse-error";
    case ErrorKind::Format: return "format-error";
    case ErrorKind::Truncation: return "truncation-error";
    case ErrorKind::Data: return "data-error";
    case ErrorKind::Shape: return "shape-error";
    case ErrorKind::DegenerateInput: return "degenerate-input";
    }
    return "unknown";
}

} // namespace brokeneyes
