#pragma once

#include <forge/annotate/raster.hpp>
#include <forge/geometry/scale.hpp>

#include <array>
#include <memory>

namespace forge {

/// Union of the POSITION bounds of every mesh primitive in a binary glTF
/// 2.0 container. Accessor min/max are used when present, otherwise the
/// float data is scanned. Node transforms are ignored.
/// Throws MalformedPayload for a broken container and DegenerateMesh when
/// no positions exist.
MeshBounds read_glb_bounds(std::span<const std::uint8_t> glb);

/// Single-node axis-aligned box with its base centered on the origin
/// (+Y up), one material of the given sRGB color.
Bytes make_box_glb(const Vector3<double>& size, const std::array<std::uint8_t, 3>& rgb);

/// A mesh payload with its measured bounds.
struct MeshAsset {
    std::shared_ptr<const Bytes> glb;
    MeshBounds bounds;

    /// Throws like read_glb_bounds.
    static MeshAsset from_glb(Bytes glb);
};

}  // namespace forge
