#pragma once

#include <forge/core/model.hpp>
#include <forge/geometry/projection.hpp>
#include <forge/geometry/spline.hpp>
#include <forge/layers/gltf.hpp>

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace forge {

enum class LayerKind { Object, Human, Particle, Lighting, Geography };
enum class Clip { Walking, Running, Dancing };

template <>
struct EnumNames<LayerKind> {
    static constexpr std::array<std::string_view, 5> names{"object", "human", "particle", "lighting", "geography"};
};
template <>
struct EnumNames<Clip> {
    static constexpr std::array<std::string_view, 3> names{"walking", "running", "dancing"};
};

// ---- animation ------------------------------------------------------------

struct StaticPose {
    bool operator==(const StaticPose&) const = default;
};

struct VerticalBob {
    double amplitude = 5.0;  // m
    double period = 20.0;    // s
    bool operator==(const VerticalBob&) const = default;
};

/// Follows the centripetal Catmull-Rom spline through `control_points`.
struct RouteFollow {
    std::vector<WorldPoint> control_points;
    double speed = 1.0;  // m/s

    SplinePath spline() const { return build_spline(control_points); }
    double traversal_time() const { return spline().total_length() / speed; }
    bool operator==(const RouteFollow&) const = default;
};

struct RiggedClip {
    Clip clip = Clip::Walking;
    bool operator==(const RiggedClip&) const = default;
};

using AnimationSpec = std::variant<StaticPose, VerticalBob, RouteFollow, RiggedClip>;

/// Throws InvalidArgument when amplitude, period or speed is not positive
/// or a route has fewer than two control points.
void check_animation(const AnimationSpec& anim);

// ---- verb table -------------------------------------------------------------

enum class Motion { Static, Vertical, Horizontal };

struct VerbRule {
    std::string prefix;  // matched against the start of each word
    Motion motion = Motion::Static;
    double speed = 0.0;  // m/s, Horizontal only
    std::optional<Clip> clip;
    bool operator==(const VerbRule&) const = default;
};

struct VerbTable {
    std::vector<VerbRule> rules;  // first matching rule wins
    double bob_amplitude = 5.0;
    double bob_period = 20.0;

    static VerbTable defaults();
};

struct MotionResolution {
    Motion motion = Motion::Static;
    double speed = 0.0;
    std::optional<Clip> clip;
    bool recognized = false;  // false: fell back to Static
};

/// Lowercases the animation string, splits it into words and returns the
/// first rule whose prefix starts a word. Never throws.
MotionResolution resolve_motion(std::string_view animation, const VerbTable& table = VerbTable::defaults());

// ---- placed elements --------------------------------------------------------

/// Relative path of a file in the output tree, e.g. "assets/object01.glb".
struct AssetRef {
    std::string file;
    bool rigged = false;
    bool operator==(const AssetRef&) const = default;
};

struct PlacedElement {
    std::string element_id;
    AssetRef asset;
    WorldPoint position = WorldPoint::Zero();
    double yaw = 0.0;  // compass degrees
    double scale = 1.0;
    AnimationSpec animation = StaticPose{};
    LayerKind layer = LayerKind::Object;
    bool operator==(const PlacedElement&) const = default;
};

std::string generated_mesh_file(const std::string& element_id);
std::string texture_file(const std::string& element_id);

/// Places one object. Static and vertical verbs need a ProjectedPosition,
/// horizontal verbs a ProjectedRoute. Throws MissingAnnotation or
/// MissingAsset; `warnings` receives a line for an unrecognized verb.
PlacedElement place_object(const std::string& element_id, const ObjectCue& cue, const ProjectedAnnotation* mark,
                           const MeshAsset* asset, const VerbTable& verbs = VerbTable::defaults(),
                           std::vector<std::string>* warnings = nullptr);

std::vector<PlacedElement> place_objects(const SceneDescription& scene,
                                         const std::map<std::string, ProjectedAnnotation>& marks,
                                         const std::map<std::string, MeshAsset>& assets,
                                         const VerbTable& verbs = VerbTable::defaults(),
                                         std::vector<std::string>* warnings = nullptr);

// ---- humans -----------------------------------------------------------------

inline constexpr double kRouteHumanSpeed = 3.0;     // m/s
inline constexpr double kHumanHeight = 1.7;         // m
inline constexpr double kGroupDensity = 0.02;       // persons per m^2

struct StockFigure {
    std::string id;
    std::string file;  // relative to the catalog directory
    std::vector<Clip> clips;
    double nominal_height = kHumanHeight;
    MeshAsset mesh;
};

struct StockCatalog {
    std::filesystem::path dir;
    std::vector<StockFigure> figures;

    /// Reads <dir>/catalog.json: {"figures":[{"id","file","clips","nominal_height"}]}.
    static StockCatalog load(const std::filesystem::path& dir);
    static std::string asset_file(const StockFigure& fig) { return "assets/stock_" + fig.id + ".glb"; }
};

struct PedestrianField {
    std::string element_id;
    WorldPolygon polygon;
    double density = kGroupDensity;
    std::uint64_t seed = 0;
    std::map<Clip, double> clip_weights;
};

/// Counter-based stream: draw k of (seed, key) is a pure function, so
/// parallel composition cannot change results.
class CounterRng {
public:
    CounterRng(std::uint64_t seed, std::string_view key);
    std::uint64_t bits(std::uint64_t index) const;
    /// Uniform in [0, 1).
    double uniform(std::uint64_t index) const;

private:
    std::uint64_t key_;
};

/// round(density * area) stock pedestrians by rejection sampling of the
/// polygon's bounding box. Heights come from `terrain` when given.
/// Throws DegeneratePolygon for a polygon that is not simple or has no area,
/// InvalidArgument for an empty catalog or negative density.
std::vector<PlacedElement> spawn_pedestrians(const PedestrianField& field, const StockCatalog& catalog,
                                             const TerrainModel* terrain = nullptr);

/// One stock pedestrian at the polygon centroid.
PlacedElement place_individual(const std::string& element_id, const WorldPolygon& polygon, Clip clip,
                               const StockCatalog& catalog, std::uint64_t seed, const TerrainModel* terrain = nullptr);

/// Generated (unrigged) mesh following the projected route.
/// Throws MissingAnnotation unless `mark` is a ProjectedRoute, MissingAsset
/// without a mesh.
PlacedElement route_humans(const std::string& element_id, const HumanCue& human, const ProjectedAnnotation* mark,
                           const MeshAsset* asset, double speed = kRouteHumanSpeed);

/// How a human cue is annotated and placed.
enum class HumanPlan { Crowd, Individual, Route };
HumanPlan plan_human(const HumanCue& human, const VerbTable& verbs = VerbTable::defaults());

// ---- particles --------------------------------------------------------------

/// One entry per effect, in effect order; never violates enabled=>low.
std::vector<ParticleEffectConfig> configure_particles(const SceneDescription& scene);

/// Particle cue that gets a generated texture (falling leaves, blossoms).
struct TexturedParticle {
    std::string element_id;
    ParticleType type = ParticleType::FallingLeaves;
    Level intensity = Level::Low;
    std::string texture;  // AssetRef file
    bool operator==(const TexturedParticle&) const = default;
};

bool needs_particle_texture(ParticleType type);
Level level_of(CueIntensity intensity);

// ---- lighting ---------------------------------------------------------------

struct SunSetting {
    double elevation = 60.0;
    double azimuth = 180.0;
    Level intensity = Level::High;
    bool operator==(const SunSetting&) const = default;
};

struct LightingRig {
    SunSetting sun;
    std::vector<WorldPoint> streetlights;
    std::vector<std::string> emissive_elements;
    bool operator==(const LightingRig&) const = default;
};

using SunTable = std::map<TimeOfDay, SunSetting>;
SunTable default_sun_table();

LightingRig configure_lighting(const SceneDescription& scene, const std::vector<WorldPoint>& streetlight_marks,
                               const SunTable& table = default_sun_table());

// ---- geography --------------------------------------------------------------

struct WaterRegion {
    std::string element_id;
    WorldPolygon polygon;
    double wave_amplitude = 0.05;
    double wave_period = 8.0;
    bool operator==(const WaterRegion&) const = default;
};

struct GeoSurface {
    std::optional<std::string> terrain_texture;  // AssetRef file
    std::vector<WaterRegion> water_regions;
    bool operator==(const GeoSurface&) const = default;
};

bool is_water(GeoType type);
bool is_surface_cover(GeoType type);

/// Wave (amplitude m, period s) for a dynamic state.
std::pair<double, double> wave_parameters(DynamicState state);

/// Throws MissingAnnotation for a water cue without an area polygon.
GeoSurface compose_geography(const SceneDescription& scene, const std::map<std::string, WorldPolygon>& area_marks,
                             const std::map<std::string, std::string>& textures);

}  // namespace forge
