#pragma once

#include <stdexcept>
#include <string>

namespace swarmsim {

/// Every failure the library can signal. The CLI maps these onto its
/// documented exit codes; the engine converts the run-aborting ones
/// (NoFreeRegion, InsufficientCapacity, IntegrationDiverged) into a
/// partial trace plus an error event instead of unwinding.
enum class Err {
    InvalidRegion,
    InvalidGridSize,
    RegionTooSmall,
    InvalidPolygon,
    AmbiguousSegment,
    AgentInObstacle,
    NoFreeRegion,
    InsufficientCapacity,
    IntegrationDiverged,
    ParseError,
    ValidationError,
    EmptyTrace,
    InvalidArgument,
};

inline const char* err_name(Err e) {
    switch (e) {
        case Err::InvalidRegion: return "InvalidRegion";
        case Err::InvalidGridSize: return "InvalidGridSize";
        case Err::RegionTooSmall: return "RegionTooSmall";
        case Err::InvalidPolygon: return "InvalidPolygon";
        case Err::AmbiguousSegment: return "AmbiguousSegment";
        case Err::AgentInObstacle: return "AgentInObstacle";
        case Err::NoFreeRegion: return "NoFreeRegion";
        case Err::InsufficientCapacity: return "InsufficientCapacity";
        case Err::IntegrationDiverged: return "IntegrationDiverged";
        case Err::ParseError: return "ParseError";
        case Err::ValidationError: return "ValidationError";
        case Err::EmptyTrace: return "EmptyTrace";
        case Err::InvalidArgument: return "InvalidArgument";
    }
    return "Unknown";
}

class SimError : public std::runtime_error {
public:
    SimError(Err code, const std::string& msg)
        : std::runtime_error(std::string(err_name(code)) + ": " + msg), code_(code) {}

    Err code() const { return code_; }

private:
    Err code_;
};

}  // namespace swarmsim
