#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace forge {

/// Named failure classes surfaced by the pipeline. Every module throws
/// forge::Error carrying one of these codes.
enum class ErrorCode {
    SchemaViolation,
    EmptyCollection,
    UndecodableImage,
    MissingFixture,
    TransportError,
    MalformedPayload,
    RangeError,
    NoMark,
    AmbiguousMark,
    DegenerateArea,
    MissingStartMarker,
    LoopedPath,
    FragmentedPath,
    DimensionMismatch,
    OutOfFrame,
    TooFewPoints,
    DegenerateMesh,
    MissingAnnotation,
    MissingAsset,
    DegeneratePolygon,
    DanglingAssetReference,
    IoError,
    InvalidArgument,
};

std::string_view error_code_name(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& detail)
        : std::runtime_error(std::string(error_code_name(code)) + ": " + detail), code_(code), detail_(detail) {}

    ErrorCode code() const noexcept { return code_; }
    const std::string& detail() const noexcept { return detail_; }

private:
    ErrorCode code_;
    std::string detail_;
};

}  // namespace forge
