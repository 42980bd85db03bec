#include <forge/annotate/extract.hpp>
#include <forge/core/error.hpp>
#include <forge/core/validate.hpp>
#include <forge/geometry/basemap.hpp>
#include <forge/pipeline/pipeline.hpp>
#include <forge/providers/services.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <thread>
#include <signal.h>
#include <unistd.h>

namespace forge {

namespace fs = std::filesystem;
using SteadyClock = std::chrono::steady_clock;

namespace {

double seconds_since(SteadyClock::time_point t0)
{
    return std::chrono::duration<double>(SteadyClock::now() - t0).count();
}

std::string text_of(const Bytes& b) { return std::string(b.begin(), b.end()); }

std::span<const std::uint8_t> bytes_of(const std::string& s)
{
    return {reinterpret_cast<const std::uint8_t*>(s.data()), s.size()};
}

Json read_json(const fs::path& file) { return parse_json(text_of(read_file(file))); }

void write_json(const fs::path& file, const Json& doc) { write_file(file, bytes_of(canonical_dump(doc))); }

/// Runs f(0..n-1) on up to `workers` threads; f must not throw.
template <class F>
void parallel_for(std::size_t n, std::size_t workers, F&& f)
{
    workers = std::min(workers, n);
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i)
            f(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (std::size_t i; (i = next++) < n;)
                f(i);
        });
    for (auto& t : pool)
        t.join();
}

std::string failure_text(const std::exception& e) { return e.what(); }

void sort_items(StageLog& log)
{
    std::sort(log.items.begin(), log.items.end(), [](const auto& a, const auto& b) { return a.item_id < b.item_id; });
}

const PhotoRecord* find_photo(const PhotoCollection& photos, const std::string& id)
{
    for (const auto& p : photos.photos)
        if (p.id == id)
            return &p;
    return nullptr;
}

/// JSON round trip so in-memory marks equal the ones read back from marks/.
ExtractedAnnotation settle(const ExtractedAnnotation& mark)
{
    return mark_from_json(parse_json(canonical_dump(mark_to_json(mark))));
}

Clip clip_for(const std::string& animation, const VerbTable& verbs)
{
    return resolve_motion(animation, verbs).clip.value_or(Clip::Walking);
}

}  // namespace

void apply_manual_flags(StageLog& log, const std::map<std::string, std::string>& flags)
{
    for (auto& it : log.items)
        if (const auto f = flags.find(it.item_id); f != flags.end()) {
            it.outcome = Outcome::ManualFlag;
            it.detail = f->second;
        }
}

// ---- context ----------------------------------------------------------------

PipelineContext::PipelineContext(PipelineConfig config, const fs::path& input_dir, RunHooks hooks)
    : config_(std::move(config)), camera_(config_.camera())
{
    config_.check();
    std::error_code ec;
    if (!config_.terrain.empty())
        terrain_ = load_terrain(config_.terrain);
    else if (fs::is_regular_file(input_dir / "terrain.json", ec))
        terrain_ = load_terrain(input_dir / "terrain.json");
    else
        terrain_ = TerrainModel::flat(0.0, std::max(config_.extent_east, config_.extent_north));

    store_ = std::make_unique<FixtureStore>(config_.fixtures_dir, config_.mode);
    auto transport = hooks.transport ? hooks.transport : std::make_shared<HttpTransport>(config_.endpoints);
    DispatchOptions opts;
    opts.max_in_flight = config_.max_parallel_requests;
    opts.clock = hooks.clock;
    opts.sleep = hooks.sleep;
    dispatcher_ = std::make_unique<Dispatcher>(*store_, std::move(transport), opts);

    if (!config_.manual_flags.empty()) {
        const Json flags = read_json(config_.manual_flags);
        if (!flags.is_object())
            throw Error(ErrorCode::InvalidArgument, "manual flags file must map element ids to notes");
        for (const auto& [id, note] : flags.items())
            manual_flags_[id] = note.is_string() ? note.get<std::string>() : note.dump();
    }
    if (!config_.stock_catalog.empty())
        catalog_ = StockCatalog::load(config_.stock_catalog);
}

std::shared_ptr<const RgbImage> PipelineContext::base_map() const
{
    std::call_once(base_once_, [this] {
        base_map_ = std::make_shared<const RgbImage>(render_base_map(terrain_, camera_));
        base_attachment_ = Attachment::from_raster(*base_map_);
    });
    return base_map_;
}

const Attachment& PipelineContext::base_map_attachment() const
{
    base_map();
    return base_attachment_;
}

// ---- jobs -------------------------------------------------------------------

std::vector<GenerationJob> generation_jobs(const SceneDescription& scene, const VerbTable& verbs)
{
    using Kind = GenerationJob::Kind;
    std::vector<GenerationJob> jobs;
    for (const auto& [id, cue] : scene.objects)
        jobs.push_back({id, Kind::Mesh, cue.label, cue.label, cue.images.empty() ? "" : cue.images.front()});
    for (const auto& [id, cue] : scene.humans)
        if (plan_human(cue, verbs) == HumanPlan::Route)
            jobs.push_back({id, Kind::Mesh, cue.description, "person", cue.images.empty() ? "" : cue.images.front()});
    for (const auto& [id, cue] : scene.geography)
        if (is_surface_cover(cue.type))
            jobs.push_back({id, Kind::GeoTexture, cue.description, "", ""});
    for (const auto& [id, cue] : scene.particles)
        if (needs_particle_texture(cue.type))
            jobs.push_back({id, Kind::ParticleTexture, cue.description, "", ""});
    std::sort(jobs.begin(), jobs.end(), [](const auto& a, const auto& b) { return a.element_id < b.element_id; });
    return jobs;
}

std::vector<AnnotationJob> annotation_jobs(const SceneDescription& scene, const VerbTable& verbs)
{
    using T = AnnotationTemplate;
    std::vector<AnnotationJob> jobs;
    for (const auto& [id, cue] : scene.objects) {
        const bool moving = resolve_motion(cue.animation, verbs).motion == Motion::Horizontal;
        jobs.push_back({id, moving ? T::Route : T::Position, cue.label, cue.images});
    }
    for (const auto& [id, cue] : scene.humans)
        jobs.push_back({id, plan_human(cue, verbs) == HumanPlan::Route ? T::Route : T::Area, cue.description, cue.images});
    for (const auto& [id, cue] : scene.geography)
        if (is_water(cue.type))
            jobs.push_back({id, T::Area, cue.description, cue.images});
    for (const auto& [id, cue] : scene.lighting)
        if (cue.type == LightType::Streetlight)
            jobs.push_back({id, T::Position, cue.description, cue.images});
    std::sort(jobs.begin(), jobs.end(), [](const auto& a, const auto& b) { return a.element_id < b.element_id; });
    return jobs;
}

// ---- phase 1 ----------------------------------------------------------------

Analysis run_analysis(const PhotoCollection& photos, PipelineContext& ctx, StageLog& log)
{
    const auto t0 = SteadyClock::now();
    log = StageLog{Stage::PhotoAnalysis, 0.0, {}};
    Analysis a;
    a.photos = photos;

    std::vector<GeoLocation> exif;
    for (const auto& p : photos.photos)
        if (p.exif_location)
            exif.push_back(*p.exif_location);
    if (!exif.empty()) {
        a.anchor = aggregate_locations(exif);
    } else {
        const auto t = SteadyClock::now();
        try {
            a.anchor = estimate_location(photos, ctx.dispatcher());
        } catch (const std::exception& e) {
            a.anchor = GeoLocation{};
            log.items.push_back({"location", seconds_since(t), Outcome::Failed, failure_text(e)});
        }
    }

    {
        const auto t = SteadyClock::now();
        ItemRecord rec{"scene_description", 0.0, Outcome::Ok, ""};
        try {
            const Json raw = analyze_scene(photos, ctx.dispatcher());
            std::set<std::string> ids;
            for (const auto& p : photos.photos)
                ids.insert(p.id);
            a.scene = validate_scene_description(raw, ids);
            a.scene_valid = true;
        } catch (const std::exception& e) {
            rec.outcome = Outcome::Failed;
            rec.detail = failure_text(e);
        }
        rec.wall_time_seconds = seconds_since(t);
        log.items.push_back(rec);
    }

    if (ctx.config().particle_classifier) {
        const auto t = SteadyClock::now();
        ItemRecord rec{"particle_classifier", 0.0, Outcome::Ok, ""};
        try {
            const auto resp = ctx.dispatcher().dispatch(particle_classifier_request(photos));
            auto norm = normalize_particle_config(Json::parse(resp.payload.begin(), resp.payload.end()));
            a.classified_particles = std::move(norm.configs);
        } catch (const std::exception& e) {
            rec.outcome = Outcome::Failed;
            rec.detail = failure_text(e);
        }
        rec.wall_time_seconds = seconds_since(t);
        log.items.push_back(rec);
    }

    sort_items(log);
    apply_manual_flags(log, ctx.manual_flags());
    log.wall_time_seconds = seconds_since(t0);
    return a;
}

// ---- phase 2 ----------------------------------------------------------------

void run_generation(const Analysis& analysis, PipelineContext& ctx, ElementArtifacts& out, StageLog& log)
{
    const auto t0 = SteadyClock::now();
    log = StageLog{Stage::ElementGeneration, 0.0, {}};
    const auto jobs = generation_jobs(analysis.scene, ctx.config().verbs);
    const std::string summary = analysis.scene.event_summary.overall_description;

    struct Result {
        ItemRecord rec;
        std::optional<MeshAsset> mesh;
        std::optional<Bytes> texture;
    };
    std::vector<Result> results(jobs.size());

    parallel_for(jobs.size(), ctx.config().max_parallel_requests, [&](std::size_t i) {
        const GenerationJob& job = jobs[i];
        Result& r = results[i];
        r.rec.item_id = job.element_id;
        const auto t = SteadyClock::now();
        try {
            switch (job.kind) {
            case GenerationJob::Kind::Mesh: {
                const PhotoRecord* photo = find_photo(analysis.photos, job.photo_id);
                if (!photo)
                    throw Error(ErrorCode::MissingAsset, job.element_id + " has no reference photo to segment");
                const auto seg = ctx.dispatcher().dispatch(segmentation_request(attach_photo(*photo), job.segment_prompt));
                const Attachment segment = Attachment::from_bytes(seg.payload, media_type_of(seg.payload));
                auto mesh = ctx.dispatcher().dispatch(asset_request(segment, job.label));
                r.mesh = MeshAsset::from_glb(std::move(mesh.payload));
                break;
            }
            case GenerationJob::Kind::GeoTexture:
            case GenerationJob::Kind::ParticleTexture: {
                ProviderRequest req;
                if (job.kind == GenerationJob::Kind::GeoTexture)
                    req = geo_texture_request(summary, analysis.scene.geography.at(job.element_id).type, job.label);
                else
                    req = particle_texture_request(summary, analysis.scene.particles.at(job.element_id).type, job.label);
                const auto resp = ctx.dispatcher().dispatch(req);
                r.texture = encode_png(decode_image(resp.payload));
                break;
            }
            }
        } catch (const std::exception& e) {
            r.rec.outcome = Outcome::Failed;
            r.rec.detail = failure_text(e);
        }
        r.rec.wall_time_seconds = seconds_since(t);
    });

    for (std::size_t i = 0; i < jobs.size(); ++i) {
        auto& r = results[i];
        if (r.mesh)
            out.meshes[jobs[i].element_id] = std::move(*r.mesh);
        if (r.texture)
            out.textures[jobs[i].element_id] = std::move(*r.texture);
        log.items.push_back(std::move(r.rec));
    }
    sort_items(log);
    apply_manual_flags(log, ctx.manual_flags());
    log.wall_time_seconds = seconds_since(t0);
}

// ---- phase 3 ----------------------------------------------------------------

void run_placement(const Analysis& analysis, PipelineContext& ctx, ElementArtifacts& out, StageLog& log)
{
    const auto t0 = SteadyClock::now();
    log = StageLog{Stage::PlacementRoute, 0.0, {}};
    const auto jobs = annotation_jobs(analysis.scene, ctx.config().verbs);
    const int attempts = ctx.config().alignment_retry ? 2 : 1;

    struct Result {
        ItemRecord rec;
        std::optional<Bytes> canvas;
        std::optional<ExtractedAnnotation> mark;
    };
    std::vector<Result> results(jobs.size());
    if (!jobs.empty())
        ctx.base_map();

    parallel_for(jobs.size(), ctx.config().max_parallel_requests, [&](std::size_t i) {
        const AnnotationJob& job = jobs[i];
        Result& r = results[i];
        r.rec.item_id = job.element_id;
        const auto t = SteadyClock::now();
        try {
            std::vector<Attachment> refs;
            for (const auto& pid : job.photo_ids)
                if (const PhotoRecord* p = find_photo(analysis.photos, pid))
                    refs.push_back(attach_photo(*p));

            AnnotatedCanvas canvas;
            double score = 0.0;
            for (int attempt = 1; attempt <= attempts; ++attempt) {
                auto resp = ctx.dispatcher().dispatch(
                    annotation_request(job.kind, job.object, ctx.base_map_attachment(), refs, attempt));
                canvas = AnnotatedCanvas{decode_image(resp.payload), job.element_id, job.kind, ctx.base_map()};
                r.canvas = std::move(resp.payload);
                score = verify_canvas_alignment(canvas);
                if (score >= kAlignmentThreshold)
                    break;
            }
            if (score < kAlignmentThreshold) {
                char buf[96];
                std::snprintf(buf, sizeof buf, "alignment: score %.3f below %.2f", score, kAlignmentThreshold);
                throw std::runtime_error(buf);
            }
            const ExtractedAnnotation mark = settle(extract_mark(canvas));
            project_annotation(mark, ctx.camera(), ctx.terrain());
            r.mark = mark;
        } catch (const std::exception& e) {
            r.rec.outcome = Outcome::Failed;
            r.rec.detail = failure_text(e);
        }
        r.rec.wall_time_seconds = seconds_since(t);
    });

    for (std::size_t i = 0; i < jobs.size(); ++i) {
        auto& r = results[i];
        if (r.canvas)
            out.canvases[jobs[i].element_id] = std::move(*r.canvas);
        if (r.mark)
            out.marks.emplace(jobs[i].element_id, std::move(*r.mark));
        log.items.push_back(std::move(r.rec));
    }
    sort_items(log);
    apply_manual_flags(log, ctx.manual_flags());
    log.wall_time_seconds = seconds_since(t0);
}

// ---- composition ------------------------------------------------------------

SceneManifest compose_scene(const Analysis& analysis, const ElementArtifacts& artifacts, PipelineContext& ctx,
                            StageLog& placement_log, const std::vector<std::string>& extra_digests)
{
    const PipelineConfig& cfg = ctx.config();
    const SceneDescription& scene = analysis.scene;

    std::map<std::string, ProjectedAnnotation> projected;
    for (const auto& [id, mark] : artifacts.marks)
        projected.emplace(id, project_annotation(mark, ctx.camera(), ctx.terrain()));

    auto fail = [&](const std::string& id, const std::exception& e) {
        for (auto& it : placement_log.items)
            if (it.item_id == id && it.outcome == Outcome::Ok) {
                it.outcome = Outcome::Failed;
                it.detail = failure_text(e);
            }
    };
    auto mark_of = [&](const std::string& id) -> const ProjectedAnnotation* {
        const auto it = projected.find(id);
        return it == projected.end() ? nullptr : &it->second;
    };
    auto mesh_of = [&](const std::string& id) -> const MeshAsset* {
        const auto it = artifacts.meshes.find(id);
        return it == artifacts.meshes.end() ? nullptr : &it->second;
    };

    ManifestInputs in;
    in.event_id = analysis.photos.event_id;
    in.anchor = analysis.anchor;
    in.camera = ctx.camera();
    in.terrain = ctx.terrain();

    auto add_mesh = [&](const std::string& id) { in.assets[generated_mesh_file(id)] = artifacts.meshes.at(id).glb; };
    auto add_stock = [&](const PlacedElement& el) {
        for (const auto& fig : ctx.catalog()->figures)
            if (StockCatalog::asset_file(fig) == el.asset.file)
                in.assets[el.asset.file] = fig.mesh.glb;
    };

    for (const auto& [id, cue] : scene.objects) {
        if (!mark_of(id) || !mesh_of(id))
            continue;
        try {
            in.elements.push_back(place_object(id, cue, mark_of(id), mesh_of(id), cfg.verbs));
            add_mesh(id);
        } catch (const std::exception& e) {
            fail(id, e);
        }
    }

    for (const auto& [id, cue] : scene.humans) {
        const ProjectedAnnotation* mark = mark_of(id);
        if (!mark)
            continue;
        try {
            const HumanPlan plan = plan_human(cue, cfg.verbs);
            if (plan == HumanPlan::Route) {
                if (!mesh_of(id))
                    continue;
                in.elements.push_back(route_humans(id, cue, mark, mesh_of(id), cfg.route_human_speed));
                add_mesh(id);
                continue;
            }
            const auto* area = std::get_if<ProjectedArea>(mark);
            if (!area)
                throw Error(ErrorCode::MissingAnnotation, id + " needs an area mark");
            if (!ctx.catalog())
                throw Error(ErrorCode::MissingAsset, id + ": no stock pedestrian catalog configured");
            const Clip clip = clip_for(cue.animation, cfg.verbs);
            if (plan == HumanPlan::Crowd) {
                PedestrianField field{id, area->polygon, cfg.group_density, cfg.seed, {{clip, 1.0}}};
                for (auto& el : spawn_pedestrians(field, *ctx.catalog(), &ctx.terrain())) {
                    add_stock(el);
                    in.pedestrians.push_back(std::move(el));
                }
            } else {
                PlacedElement el = place_individual(id, area->polygon, clip, *ctx.catalog(), cfg.seed, &ctx.terrain());
                add_stock(el);
                in.elements.push_back(std::move(el));
            }
        } catch (const std::exception& e) {
            fail(id, e);
        }
    }

    in.particles = analysis.classified_particles ? *analysis.classified_particles : configure_particles(scene);
    for (const auto& [id, cue] : scene.particles) {
        if (!needs_particle_texture(cue.type) || !artifacts.textures.count(id))
            continue;
        const std::string file = texture_file(id);
        in.assets[file] = std::make_shared<const Bytes>(artifacts.textures.at(id));
        in.textured_particles.push_back({id, cue.type, level_of(cue.intensity), file});
    }

    std::vector<WorldPoint> streetlights;
    for (const auto& [id, cue] : scene.lighting) {
        if (cue.type != LightType::Streetlight)
            continue;
        if (const ProjectedAnnotation* m = mark_of(id)) {
            if (const auto* pos = std::get_if<ProjectedPosition>(m))
                streetlights.push_back(pos->point);
            else
                fail(id, Error(ErrorCode::MissingAnnotation, id + " needs a position mark"));
        }
    }
    in.lighting = configure_lighting(scene, streetlights, cfg.sun);

    SceneDescription geo_scene;
    std::map<std::string, WorldPolygon> areas;
    std::map<std::string, std::string> textures;
    for (const auto& [id, cue] : scene.geography) {
        if (is_water(cue.type)) {
            const ProjectedAnnotation* m = mark_of(id);
            const auto* area = m ? std::get_if<ProjectedArea>(m) : nullptr;
            if (!area) {
                if (m)
                    fail(id, Error(ErrorCode::MissingAnnotation, id + " needs an area mark"));
                continue;
            }
            areas[id] = area->polygon;
        }
        if (is_surface_cover(cue.type) && artifacts.textures.count(id))
            textures[id] = texture_file(id);
        geo_scene.geography[id] = cue;
    }
    in.geography = compose_geography(geo_scene, areas, textures);
    if (in.geography.terrain_texture) {
        for (const auto& [id, file] : textures)
            if (file == *in.geography.terrain_texture)
                in.assets[file] = std::make_shared<const Bytes>(artifacts.textures.at(id));
    }

    in.provenance.photo_ids = analysis.photos.ids();
    std::set<std::string> digests(extra_digests.begin(), extra_digests.end());
    for (const auto& d : ctx.dispatcher().consumed_digests())
        digests.insert(d);
    in.provenance.request_digests.assign(digests.begin(), digests.end());
    in.provenance.seed = cfg.seed;
    return compose_manifest(std::move(in));
}

// ---- intermediates ----------------------------------------------------------

void write_intermediates(const fs::path& dir, const Analysis& analysis, const ElementArtifacts& artifacts,
                         PipelineContext& ctx, bool resumable)
{
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec)
        throw Error(ErrorCode::IoError, dir.string() + ": " + ec.message());
    write_json(dir / "scene_description.json", to_json(analysis.scene));
    write_json(dir / "anchor.json", {{"latitude", analysis.anchor.latitude},
                                     {"longitude", analysis.anchor.longitude},
                                     {"altitude", analysis.anchor.altitude}});
    if (analysis.classified_particles)
        write_json(dir / "particles.json", particle_document(*analysis.classified_particles));
    if (!artifacts.canvases.empty() || !artifacts.marks.empty())
        write_file(dir / "basemap.png", encode_png(*ctx.base_map()));
    if (!artifacts.canvases.empty())
        fs::create_directories(dir / "annotations", ec);
    for (const auto& [id, bytes] : artifacts.canvases)
        write_file(dir / "annotations" / (id + ".png"), bytes);
    if (!artifacts.marks.empty())
        fs::create_directories(dir / "marks", ec);
    for (const auto& [id, mark] : artifacts.marks)
        write_json(dir / "marks" / (id + ".json"), mark_to_json(mark));
    if (!resumable)
        return;
    fs::create_directories(dir / "generated", ec);
    for (const auto& [id, mesh] : artifacts.meshes)
        write_file(dir / "generated" / (id + ".glb"), *mesh.glb);
    for (const auto& [id, png] : artifacts.textures)
        write_file(dir / "generated" / (id + ".png"), png);
    std::set<std::string> digests;
    for (const auto& d : load_request_digests(dir))
        digests.insert(d);
    for (const auto& d : ctx.dispatcher().consumed_digests())
        digests.insert(d);
    write_json(dir / "requests.json", Json(std::vector<std::string>(digests.begin(), digests.end())));
}

Analysis load_analysis(const fs::path& dir, const fs::path& input_dir)
{
    Analysis a;
    a.photos = load_collection(input_dir);
    std::set<std::string> ids;
    for (const auto& p : a.photos.photos)
        ids.insert(p.id);
    a.scene = validate_scene_description(read_json(dir / "scene_description.json"), ids);
    a.scene_valid = true;
    const Json anchor = read_json(dir / "anchor.json");
    a.anchor = {anchor.at("latitude").get<double>(), anchor.at("longitude").get<double>(),
                anchor.at("altitude").get<double>()};
    std::error_code ec;
    if (fs::is_regular_file(dir / "particles.json", ec))
        a.classified_particles = normalize_particle_config(read_json(dir / "particles.json")).configs;
    return a;
}

ElementArtifacts load_artifacts(const fs::path& dir)
{
    ElementArtifacts art;
    auto each = [&](const fs::path& sub, const std::string& ext, auto&& fn) {
        std::error_code ec;
        if (!fs::is_directory(dir / sub, ec))
            return;
        std::vector<fs::path> files;
        for (const auto& e : fs::directory_iterator(dir / sub))
            if (e.is_regular_file() && e.path().extension() == ext)
                files.push_back(e.path());
        std::sort(files.begin(), files.end());
        for (const auto& f : files)
            fn(f.stem().string(), f);
    };
    each("generated", ".glb", [&](const std::string& id, const fs::path& f) { art.meshes[id] = MeshAsset::from_glb(read_file(f)); });
    each("generated", ".png", [&](const std::string& id, const fs::path& f) { art.textures[id] = read_file(f); });
    each("annotations", ".png", [&](const std::string& id, const fs::path& f) { art.canvases[id] = read_file(f); });
    each("marks", ".json", [&](const std::string& id, const fs::path& f) { art.marks.emplace(id, mark_from_json(read_json(f))); });
    return art;
}

std::vector<std::string> load_request_digests(const fs::path& dir)
{
    std::error_code ec;
    if (!fs::is_regular_file(dir / "requests.json", ec))
        return {};
    return read_json(dir / "requests.json").get<std::vector<std::string>>();
}

// ---- whole run --------------------------------------------------------------

namespace {

/// Staging dirs left behind by runs that died before the final rename.
void remove_abandoned_staging(const fs::path& out_root, const std::string& event_id)
{
    const std::string prefix = "." + event_id + ".partial-";
    std::error_code ec;
    std::vector<fs::path> stale;
    for (const auto& entry : fs::directory_iterator(out_root, ec)) {
        const std::string name = entry.path().filename().string();
        if (!name.starts_with(prefix))
            continue;
        const long pid = std::strtol(name.c_str() + prefix.size(), nullptr, 10);
        if (pid > 0 && pid != ::getpid() && ::kill(static_cast<pid_t>(pid), 0) == 0)
            continue;
        stale.push_back(entry.path());
    }
    for (const auto& p : stale)
        fs::remove_all(p, ec);
}

}  // namespace

RunResult run_pipeline(const fs::path& input_dir, const fs::path& out_root, const PipelineConfig& config, RunHooks hooks)
{
    const auto t0 = SteadyClock::now();
    const PhotoCollection photos = load_collection(input_dir);
    PipelineContext ctx(config, input_dir, std::move(hooks));

    RunResult result;
    result.log.event_id = photos.event_id;
    StageLog analysis_log, generation_log, placement_log;
    const Analysis analysis = run_analysis(photos, ctx, analysis_log);
    ElementArtifacts artifacts;
    run_generation(analysis, ctx, artifacts, generation_log);
    run_placement(analysis, ctx, artifacts, placement_log);
    result.manifest = compose_scene(analysis, artifacts, ctx, placement_log);

    std::error_code ec;
    fs::create_directories(out_root, ec);
    if (ec)
        throw Error(ErrorCode::IoError, out_root.string() + ": " + ec.message());
    result.out_dir = out_root / photos.event_id;
    const fs::path staging = out_root / ("." + photos.event_id + ".partial-" + std::to_string(::getpid()));
    remove_abandoned_staging(out_root, photos.event_id);
    write_intermediates(staging, analysis, artifacts, ctx);
    emit(result.manifest, staging);
    fs::remove_all(result.out_dir, ec);
    fs::rename(staging, result.out_dir, ec);
    if (ec)
        throw Error(ErrorCode::IoError, result.out_dir.string() + ": " + ec.message());

    result.log.stages = {analysis_log, generation_log, placement_log};
    result.log.total_wall_seconds = seconds_since(t0);
    result.log_file = out_root / (photos.event_id + ".stage_log.json");
    write_json(result.log_file, run_log_to_json(result.log));
    return result;
}

}  // namespace forge
