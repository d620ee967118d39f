#include "pwexp/error.hpp"

namespace pwexp {

const char* to_string(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::SingularMatrix: return "SingularMatrix";
        case ErrorKind::DegeneratePolygon: return "DegeneratePolygon";
        case ErrorKind::NonConvex: return "NonConvex";
        case ErrorKind::ParameterOutOfRange: return "ParameterOutOfRange";
        case ErrorKind::OutsideRegion: return "OutsideRegion";
        case ErrorKind::RegionMismatch: return "RegionMismatch";
        case ErrorKind::ResolutionTooLow: return "ResolutionTooLow";
        case ErrorKind::ZeroVariation: return "ZeroVariation";
        case ErrorKind::CellExplosion: return "CellExplosion";
        case ErrorKind::OrbitHitsCriticalSet: return "OrbitHitsCriticalSet";
        case ErrorKind::InvalidInput: return "InvalidInput";
        case ErrorKind::Io: return "IoError";
        case ErrorKind::Config: return "ConfigError";
    }
    return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

}  // namespace pwexp
