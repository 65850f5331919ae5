#include "mgs/error.hpp"

namespace mgs {

std::string_view to_string(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::InvalidEdge: return "InvalidEdge";
    case ErrorKind::DisconnectedGraph: return "DisconnectedGraph";
    case ErrorKind::InvalidParams: return "InvalidParams";
    case ErrorKind::GenerationFailed: return "GenerationFailed";
    case ErrorKind::StabilityViolation: return "StabilityViolation";
    case ErrorKind::DisconnectedFrame: return "DisconnectedFrame";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::SchemaError: return "SchemaError";
    case ErrorKind::EmptySubset: return "EmptySubset";
    case ErrorKind::FullSubset: return "FullSubset";
    case ErrorKind::TooLargeForExact: return "TooLargeForExact";
    case ErrorKind::FrameMismatch: return "FrameMismatch";
    case ErrorKind::InvalidSpec: return "InvalidSpec";
    case ErrorKind::TraceIncomplete: return "TraceIncomplete";
    }
    return "Unknown";
}

} // namespace mgs
