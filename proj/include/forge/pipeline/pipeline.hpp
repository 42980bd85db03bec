#pragma once

#include <forge/annotate/marks.hpp>
#include <forge/ingest/photo.hpp>
#include <forge/layers/layers.hpp>
#include <forge/manifest/manifest.hpp>
#include <forge/pipeline/stage_log.hpp>
#include <forge/providers/dispatch.hpp>

#include <filesystem>
#include <map>
#include <optional>

namespace forge {

/// Run configuration. JSON keys match the field names; relative paths are
/// resolved against the config file's directory.
struct PipelineConfig {
    StoreMode mode = StoreMode::Replay;
    std::filesystem::path fixtures_dir;
    std::uint64_t seed = 42;
    double extent_east = 200.0;
    double extent_north = 200.0;
    int image_width = 2048;
    int image_height = 2048;
    std::size_t max_parallel_requests = 4;
    std::filesystem::path terrain;         // default: <input>/terrain.json, else flat
    std::filesystem::path stock_catalog;   // required when crowds are placed
    std::filesystem::path manual_flags;    // optional {"element_id": "note"}
    VerbTable verbs = VerbTable::defaults();
    double group_density = kGroupDensity;
    double route_human_speed = kRouteHumanSpeed;
    SunTable sun = default_sun_table();
    bool alignment_retry = true;
    bool particle_classifier = false;
    EndpointTable endpoints;

    OrthoCameraSpec camera() const;
    /// Throws InvalidArgument when replay lacks fixtures_dir or a value is out of range.
    void check() const;
};

PipelineConfig config_from_json(const Json& doc, const std::filesystem::path& base_dir = {});
PipelineConfig load_config(const std::filesystem::path& file);

/// Photo-analysis result.
struct Analysis {
    PhotoCollection photos;
    GeoLocation anchor;
    bool scene_valid = false;
    SceneDescription scene;
    std::optional<std::vector<ParticleEffectConfig>> classified_particles;
};

/// Per-element provider outputs and extracted marks.
struct ElementArtifacts {
    std::map<std::string, MeshAsset> meshes;
    std::map<std::string, Bytes> textures;      // PNG
    std::map<std::string, Bytes> canvases;      // painted canvas as returned
    std::map<std::string, ExtractedAnnotation> marks;
};

/// Annotation work for one element.
struct AnnotationJob {
    std::string element_id;
    AnnotationTemplate kind = AnnotationTemplate::Position;
    std::string object;                     // {object} slot text
    std::vector<std::string> photo_ids;     // reference photos
};

/// Generation work for one element.
struct GenerationJob {
    enum class Kind { Mesh, GeoTexture, ParticleTexture };
    std::string element_id;
    Kind kind = Kind::Mesh;
    std::string label;            // segmentation prompt / asset label
    std::string segment_prompt;
    std::string photo_id;         // photo to segment
};

std::vector<GenerationJob> generation_jobs(const SceneDescription& scene, const VerbTable& verbs);
std::vector<AnnotationJob> annotation_jobs(const SceneDescription& scene, const VerbTable& verbs);

struct RunResult {
    SceneManifest manifest;
    RunLog log;
    std::filesystem::path out_dir;    // <out>/<event_id>
    std::filesystem::path log_file;   // <out>/<event_id>.stage_log.json
};

struct RunHooks {
    std::shared_ptr<Transport> transport;      // default: HttpTransport over config.endpoints
    std::function<std::string()> clock;        // fixture timestamps
    std::function<void(std::chrono::milliseconds)> sleep;
};

/// Shared state of one run: config, terrain, camera, dispatcher, catalog.
class PipelineContext {
public:
    PipelineContext(PipelineConfig config, const std::filesystem::path& input_dir, RunHooks hooks = {});

    const PipelineConfig& config() const { return config_; }
    const OrthoCameraSpec& camera() const { return camera_; }
    const TerrainModel& terrain() const { return terrain_; }
    Dispatcher& dispatcher() { return *dispatcher_; }
    const std::map<std::string, std::string>& manual_flags() const { return manual_flags_; }
    const StockCatalog* catalog() const { return catalog_ ? &*catalog_ : nullptr; }
    std::shared_ptr<const RgbImage> base_map() const;
    const Attachment& base_map_attachment() const;

private:
    PipelineConfig config_;
    OrthoCameraSpec camera_;
    TerrainModel terrain_;
    std::unique_ptr<FixtureStore> store_;
    std::unique_ptr<Dispatcher> dispatcher_;
    std::map<std::string, std::string> manual_flags_;
    std::optional<StockCatalog> catalog_;
    mutable std::once_flag base_once_;
    mutable std::shared_ptr<const RgbImage> base_map_;
    mutable Attachment base_attachment_;
};

/// Phase 1. Location failure falls back to (0, 0, 0); an invalid scene
/// description leaves an empty scene. Both are logged, never thrown.
Analysis run_analysis(const PhotoCollection& photos, PipelineContext& ctx, StageLog& log);

/// Phase 2: meshes and textures, up to max_parallel_requests at a time.
void run_generation(const Analysis& analysis, PipelineContext& ctx, ElementArtifacts& out, StageLog& log);

/// Phase 3: painted canvases, alignment check, extraction, projection.
void run_placement(const Analysis& analysis, PipelineContext& ctx, ElementArtifacts& out, StageLog& log);

/// Layer composition and manifest assembly. Element failures are recorded
/// against the element's placement item.
SceneManifest compose_scene(const Analysis& analysis, const ElementArtifacts& artifacts, PipelineContext& ctx,
                            StageLog& placement_log, const std::vector<std::string>& extra_digests = {});

/// Replaces the outcome of every flagged item with manual_flag(note).
void apply_manual_flags(StageLog& log, const std::map<std::string, std::string>& flags);

/// Writes scene_description.json, anchor.json, basemap.png, annotations/
/// and marks/ under `dir`. With `resumable`, also generated/ (every mesh and
/// texture) and requests.json, which the later phase commands read back.
void write_intermediates(const std::filesystem::path& dir, const Analysis& analysis, const ElementArtifacts& artifacts,
                         PipelineContext& ctx, bool resumable = false);

/// Reads back write_intermediates output; photos are reloaded from `input_dir`.
Analysis load_analysis(const std::filesystem::path& dir, const std::filesystem::path& input_dir);
ElementArtifacts load_artifacts(const std::filesystem::path& dir);
/// requests.json of an earlier phase; empty when absent.
std::vector<std::string> load_request_digests(const std::filesystem::path& dir);

/// The whole pipeline. Output goes to <out_root>/<event_id>, replaced
/// atomically; the stage log goes next to it. Throws only for fatal errors
/// (unreadable input, bad config, unwritable output).
RunResult run_pipeline(const std::filesystem::path& input_dir, const std::filesystem::path& out_root,
                       const PipelineConfig& config, RunHooks hooks = {});

}  // namespace forge
