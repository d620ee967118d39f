#pragma once

#include <stdexcept>
#include <string>

namespace pwexp {

enum class ErrorKind {
    SingularMatrix,
    DegeneratePolygon,
    NonConvex,
    ParameterOutOfRange,
    OutsideRegion,
    RegionMismatch,
    ResolutionTooLow,
    ZeroVariation,
    CellExplosion,
    OrbitHitsCriticalSet,
    InvalidInput,
    Io,
    Config,
};

const char* to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message);

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace pwexp
