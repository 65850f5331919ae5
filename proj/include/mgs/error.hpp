#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace mgs {

enum class ErrorKind {
    InvalidEdge,
    DisconnectedGraph,
    InvalidParams,
    GenerationFailed,
    StabilityViolation,
    DisconnectedFrame,
    ParseError,
    SchemaError,
    EmptySubset,
    FullSubset,
    TooLargeForExact,
    FrameMismatch,
    InvalidSpec,
    TraceIncomplete,
};

std::string_view to_string(ErrorKind kind);

// Single exception type for the library; callers branch on kind().
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

} // namespace mgs
