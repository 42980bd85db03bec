#include <forge/core/error.hpp>

namespace forge {

std::string_view error_code_name(ErrorCode code)
{
    switch (code) {
    case ErrorCode::SchemaViolation: return "SchemaViolation";
    case ErrorCode::EmptyCollection: return "EmptyCollection";
    case ErrorCode::UndecodableImage: return "UndecodableImage";
    case ErrorCode::MissingFixture: return "MissingFixture";
    case ErrorCode::TransportError: return "TransportError";
    case ErrorCode::MalformedPayload: return "MalformedPayload";
    case ErrorCode::RangeError: return "RangeError";
    case ErrorCode::NoMark: return "NoMark";
    case ErrorCode::AmbiguousMark: return "AmbiguousMark";
    case ErrorCode::DegenerateArea: return "DegenerateArea";
    case ErrorCode::MissingStartMarker: return "MissingStartMarker";
    case ErrorCode::LoopedPath: return "LoopedPath";
    case ErrorCode::FragmentedPath: return "FragmentedPath";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::OutOfFrame: return "OutOfFrame";
    case ErrorCode::TooFewPoints: return "TooFewPoints";
    case ErrorCode::DegenerateMesh: return "DegenerateMesh";
    case ErrorCode::MissingAnnotation: return "MissingAnnotation";
    case ErrorCode::MissingAsset: return "MissingAsset";
    case ErrorCode::DegeneratePolygon: return "DegeneratePolygon";
    case ErrorCode::DanglingAssetReference: return "DanglingAssetReference";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    }
    return "Unknown";
}

}  // namespace forge
