#pragma once

#include <forge/geometry/camera.hpp>
#include <forge/geometry/terrain.hpp>
#include <forge/layers/layers.hpp>

#include <filesystem>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

namespace forge {

inline constexpr std::string_view kManifestVersion = "1.0";
inline constexpr std::string_view kToolVersion = "forge 1.0.0";
inline constexpr std::string_view kDefaultDioramaScale = "1:500";

struct Provenance {
    std::vector<std::string> photo_ids;
    std::vector<std::string> request_digests;  // sorted
    std::uint64_t seed = 0;
    std::string tool_version{kToolVersion};
    bool operator==(const Provenance&) const = default;
};

/// Relative output path -> file bytes.
using AssetFiles = std::map<std::string, std::shared_ptr<const Bytes>>;

struct SceneManifest {
    std::string version{kManifestVersion};
    std::string event_id;
    GeoLocation anchor;
    OrthoCameraSpec camera;
    TerrainModel terrain;
    std::vector<PlacedElement> elements;     // sorted by (layer, element_id)
    std::vector<PlacedElement> pedestrians;  // spawn order
    std::vector<ParticleEffectConfig> particles;
    std::vector<TexturedParticle> textured_particles;
    LightingRig lighting;
    GeoSurface geography;
    std::string diorama_scale{kDefaultDioramaScale};
    Provenance provenance;
    AssetFiles assets;

    /// Asset files compare by content.
    bool operator==(const SceneManifest& o) const;
};

struct ManifestInputs {
    std::string event_id;
    GeoLocation anchor;
    OrthoCameraSpec camera;
    TerrainModel terrain;
    std::vector<PlacedElement> elements;
    std::vector<PlacedElement> pedestrians;
    std::vector<ParticleEffectConfig> particles;
    std::vector<TexturedParticle> textured_particles;
    LightingRig lighting;
    GeoSurface geography;
    Provenance provenance;
    AssetFiles assets;
    std::string diorama_scale{kDefaultDioramaScale};
};

/// Sorts elements, checks that every asset reference names a file in
/// `assets`, and attaches the diorama scale. Throws DanglingAssetReference.
SceneManifest compose_manifest(ManifestInputs inputs);

/// Every file path the manifest refers to.
std::set<std::string> referenced_files(const SceneManifest& m);

/// scene.json document.
Json manifest_to_json(const SceneManifest& m);
/// Inverse of manifest_to_json; assets and terrain are left empty.
SceneManifest manifest_from_json(const Json& doc);

Json element_to_json(const PlacedElement& el);
PlacedElement element_from_json(const Json& doc);
Json animation_to_json(const AnimationSpec& anim);
AnimationSpec animation_from_json(const Json& doc);

/// Writes assets/, terrain.json and finally scene.json under `out_dir`.
/// Returns the written relative paths, sorted. Throws IoError.
std::vector<std::string> emit(const SceneManifest& manifest, const std::filesystem::path& out_dir);

/// Reads back what emit() wrote.
SceneManifest parse_manifest(const std::filesystem::path& out_dir);

}  // namespace forge
