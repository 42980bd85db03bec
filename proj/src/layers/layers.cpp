#include <forge/core/canonical_json.hpp>
#include <forge/core/error.hpp>
#include <forge/core/validate.hpp>
#include <forge/geometry/polygon.hpp>
#include <forge/layers/layers.hpp>

#include <algorithm>
#include <cctype>
#include <cmath>

namespace forge {

void check_animation(const AnimationSpec& anim)
{
    std::visit(
        [](const auto& a) {
            using T = std::decay_t<decltype(a)>;
            if constexpr (std::is_same_v<T, VerticalBob>) {
                if (!(a.amplitude > 0) || !(a.period > 0))
                    throw Error(ErrorCode::InvalidArgument, "vertical bob needs positive amplitude and period");
            } else if constexpr (std::is_same_v<T, RouteFollow>) {
                if (!(a.speed > 0))
                    throw Error(ErrorCode::InvalidArgument, "route speed must be positive");
                if (a.control_points.size() < 2)
                    throw Error(ErrorCode::TooFewPoints, "route needs at least 2 control points");
            }
        },
        anim);
}

// ---- verb table -------------------------------------------------------------

VerbTable VerbTable::defaults()
{
    VerbTable t;
    t.rules = {
        {"static", Motion::Static, 0.0, std::nullopt},
        {"float", Motion::Vertical, 0.0, std::nullopt},
        {"hover", Motion::Vertical, 0.0, std::nullopt},
        {"walk", Motion::Horizontal, 1.4, Clip::Walking},
        {"run", Motion::Horizontal, 4.0, Clip::Running},
        {"danc", Motion::Static, 0.0, Clip::Dancing},
        {"driv", Motion::Horizontal, 8.0, std::nullopt},
        {"fly", Motion::Horizontal, 15.0, std::nullopt},
        {"flie", Motion::Horizontal, 15.0, std::nullopt},
        {"sail", Motion::Horizontal, 4.0, std::nullopt},
        {"flow", Motion::Horizontal, 2.0, std::nullopt},
    };
    return t;
}

MotionResolution resolve_motion(std::string_view animation, const VerbTable& table)
{
    std::vector<std::string> words;
    std::string cur;
    for (char c : animation) {
        if (std::isalpha(static_cast<unsigned char>(c))) {
            cur.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
        } else if (!cur.empty()) {
            words.push_back(std::move(cur));
            cur.clear();
        }
    }
    if (!cur.empty())
        words.push_back(std::move(cur));

    for (const auto& w : words)
        for (const auto& rule : table.rules)
            if (!rule.prefix.empty() && w.rfind(rule.prefix, 0) == 0)
                return {rule.motion, rule.speed, rule.clip, true};
    return {};
}

// ---- objects ----------------------------------------------------------------

std::string generated_mesh_file(const std::string& element_id) { return "assets/" + element_id + ".glb"; }
std::string texture_file(const std::string& element_id) { return "assets/" + element_id + ".png"; }

PlacedElement place_object(const std::string& element_id, const ObjectCue& cue, const ProjectedAnnotation* mark,
                           const MeshAsset* asset, const VerbTable& verbs, std::vector<std::string>* warnings)
{
    const MotionResolution motion = resolve_motion(cue.animation, verbs);
    if (!motion.recognized && warnings)
        warnings->push_back(element_id + ": unrecognized animation '" + cue.animation + "', placed static");

    PlacedElement el;
    el.element_id = element_id;
    el.layer = LayerKind::Object;
    el.asset = {generated_mesh_file(element_id), false};

    if (motion.motion == Motion::Horizontal) {
        const auto* route = mark ? std::get_if<ProjectedRoute>(mark) : nullptr;
        if (!route)
            throw Error(ErrorCode::MissingAnnotation, element_id + " needs a route mark");
        if (!asset)
            throw Error(ErrorCode::MissingAsset, element_id);
        RouteFollow follow{route->waypoints, motion.speed};
        check_animation(follow);
        el.position = follow.control_points.front();
        el.yaw = follow.spline().heading(0.0);
        el.animation = std::move(follow);
    } else {
        const auto* pos = mark ? std::get_if<ProjectedPosition>(mark) : nullptr;
        if (!pos)
            throw Error(ErrorCode::MissingAnnotation, element_id + " needs a position mark");
        if (!asset)
            throw Error(ErrorCode::MissingAsset, element_id);
        el.position = pos->point;
        if (motion.motion == Motion::Vertical)
            el.animation = VerticalBob{verbs.bob_amplitude, verbs.bob_period};
        check_animation(el.animation);
    }
    el.scale = compute_scale(asset->bounds, cue.size);
    return el;
}

std::vector<PlacedElement> place_objects(const SceneDescription& scene,
                                         const std::map<std::string, ProjectedAnnotation>& marks,
                                         const std::map<std::string, MeshAsset>& assets, const VerbTable& verbs,
                                         std::vector<std::string>* warnings)
{
    std::vector<PlacedElement> out;
    for (const auto& [id, cue] : scene.objects) {
        const auto m = marks.find(id);
        const auto a = assets.find(id);
        out.push_back(place_object(id, cue, m == marks.end() ? nullptr : &m->second,
                                   a == assets.end() ? nullptr : &a->second, verbs, warnings));
    }
    return out;
}

// ---- humans -----------------------------------------------------------------

StockCatalog StockCatalog::load(const std::filesystem::path& dir)
{
    const Bytes raw = read_file(dir / "catalog.json");
    const Json doc = parse_json(std::string_view(reinterpret_cast<const char*>(raw.data()), raw.size()));
    StockCatalog cat;
    cat.dir = dir;
    for (const auto& f : doc.at("figures")) {
        StockFigure fig;
        fig.id = f.at("id").get<std::string>();
        fig.file = f.at("file").get<std::string>();
        for (const auto& c : f.at("clips"))
            fig.clips.push_back(parse_enum<Clip>(c.get<std::string>()));
        fig.nominal_height = f.value("nominal_height", kHumanHeight);
        fig.mesh = MeshAsset::from_glb(read_file(dir / fig.file));
        cat.figures.push_back(std::move(fig));
    }
    if (cat.figures.empty())
        throw Error(ErrorCode::InvalidArgument, "stock catalog " + dir.string() + " lists no figures");
    return cat;
}

namespace {

constexpr std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

constexpr std::uint64_t fnv1a(std::string_view s)
{
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (char c : s) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ull;
    }
    return h;
}

using Ground = std::vector<Vector2<double>>;

Ground ground_of(const WorldPolygon& poly)
{
    Ground g;
    g.reserve(poly.size());
    for (const auto& p : poly)
        g.emplace_back(p.x(), p.y());
    return g;
}

void check_field_polygon(const Ground& g, const std::string& id)
{
    if (g.size() < 3 || !(polygon_area(g) > 0))
        throw Error(ErrorCode::DegeneratePolygon, id + ": spawn polygon has no area");
    if (!polygon_is_simple(g))
        throw Error(ErrorCode::DegeneratePolygon, id + ": spawn polygon is not simple");
}

double mean_height(const WorldPolygon& poly)
{
    double z = 0;
    for (const auto& p : poly)
        z += p.z();
    return poly.empty() ? 0.0 : z / double(poly.size());
}

const StockFigure& figure_for(const StockCatalog& catalog, Clip clip, double u)
{
    std::vector<const StockFigure*> able;
    for (const auto& f : catalog.figures)
        if (std::find(f.clips.begin(), f.clips.end(), clip) != f.clips.end())
            able.push_back(&f);
    if (able.empty())
        for (const auto& f : catalog.figures)
            able.push_back(&f);
    const auto i = std::min(able.size() - 1, static_cast<std::size_t>(u * double(able.size())));
    return *able[i];
}

PlacedElement stock_element(const std::string& id, const StockFigure& fig, const WorldPoint& pos, double yaw, Clip clip)
{
    PlacedElement el;
    el.element_id = id;
    el.layer = LayerKind::Human;
    el.asset = {StockCatalog::asset_file(fig), true};
    el.position = pos;
    el.yaw = yaw;
    el.scale = fig.nominal_height / fig.mesh.bounds.vertical_extent();
    el.animation = RiggedClip{clip};
    if (!(el.scale > 0) || !std::isfinite(el.scale))
        throw Error(ErrorCode::DegenerateMesh, "stock figure " + fig.id + " has no height");
    return el;
}

}  // namespace

CounterRng::CounterRng(std::uint64_t seed, std::string_view key) : key_(splitmix64(seed) ^ fnv1a(key)) {}

std::uint64_t CounterRng::bits(std::uint64_t index) const { return splitmix64(key_ + splitmix64(index)); }

double CounterRng::uniform(std::uint64_t index) const { return double(bits(index) >> 11) * 0x1.0p-53; }

std::vector<PlacedElement> spawn_pedestrians(const PedestrianField& field, const StockCatalog& catalog,
                                             const TerrainModel* terrain)
{
    if (catalog.figures.empty())
        throw Error(ErrorCode::InvalidArgument, "stock catalog is empty");
    if (!(field.density >= 0) || !std::isfinite(field.density))
        throw Error(ErrorCode::InvalidArgument, field.element_id + ": density must be non-negative");
    const Ground g = ground_of(field.polygon);
    check_field_polygon(g, field.element_id);

    const auto count = static_cast<std::size_t>(std::llround(field.density * polygon_area(g)));
    if (count == 0)
        return {};

    double total_weight = 0;
    for (const auto& [clip, w] : field.clip_weights)
        if (w > 0)
            total_weight += w;

    Vector2<double> lo = g.front(), hi = g.front();
    for (const auto& p : g) {
        lo = lo.cwiseMin(p);
        hi = hi.cwiseMax(p);
    }

    const CounterRng rng(field.seed, field.element_id);
    std::uint64_t draw = 0;
    const std::uint64_t budget = 10000 * static_cast<std::uint64_t>(count) + 100000;
    const double fallback_z = mean_height(field.polygon);

    std::vector<PlacedElement> out;
    out.reserve(count);
    for (std::size_t k = 0; k < count; ++k) {
        Vector2<double> p;
        do {
            if (draw >= budget)
                throw Error(ErrorCode::DegeneratePolygon, field.element_id + ": rejection sampling did not converge");
            p = {lo.x() + rng.uniform(draw) * (hi.x() - lo.x()), lo.y() + rng.uniform(draw + 1) * (hi.y() - lo.y())};
            draw += 2;
        } while (!point_in_polygon(p, g));

        Clip clip = Clip::Walking;
        double pick = rng.uniform(draw++) * total_weight;
        for (const auto& [c, w] : field.clip_weights) {
            if (w <= 0)
                continue;
            clip = c;
            if (pick < w)
                break;
            pick -= w;
        }
        const double yaw = rng.uniform(draw++) * 360.0;
        const StockFigure& fig = figure_for(catalog, clip, rng.uniform(draw++));
        const WorldPoint pos(p.x(), p.y(), terrain ? terrain->height(p) : fallback_z);

        char suffix[24];
        std::snprintf(suffix, sizeof suffix, "#%03zu", k);
        out.push_back(stock_element(field.element_id + suffix, fig, pos, yaw, clip));
    }
    return out;
}

PlacedElement place_individual(const std::string& element_id, const WorldPolygon& polygon, Clip clip,
                               const StockCatalog& catalog, std::uint64_t seed, const TerrainModel* terrain)
{
    if (catalog.figures.empty())
        throw Error(ErrorCode::InvalidArgument, "stock catalog is empty");
    const Ground g = ground_of(polygon);
    check_field_polygon(g, element_id);
    const Vector2<double> c = polygon_centroid(g);
    const CounterRng rng(seed, element_id);
    const WorldPoint pos(c.x(), c.y(), terrain ? terrain->height(c) : mean_height(polygon));
    return stock_element(element_id, figure_for(catalog, clip, rng.uniform(1)), pos, rng.uniform(0) * 360.0, clip);
}

PlacedElement route_humans(const std::string& element_id, const HumanCue&, const ProjectedAnnotation* mark,
                           const MeshAsset* asset, double speed)
{
    const auto* route = mark ? std::get_if<ProjectedRoute>(mark) : nullptr;
    if (!route)
        throw Error(ErrorCode::MissingAnnotation, element_id + " needs a route mark");
    if (!asset)
        throw Error(ErrorCode::MissingAsset, element_id);
    RouteFollow follow{route->waypoints, speed};
    check_animation(follow);

    PlacedElement el;
    el.element_id = element_id;
    el.layer = LayerKind::Human;
    el.asset = {generated_mesh_file(element_id), false};
    el.position = follow.control_points.front();
    el.yaw = follow.spline().heading(0.0);
    const double h = asset->bounds.vertical_extent();
    if (!(h > 0) || !(asset->bounds.extent().minCoeff() > 0))
        throw Error(ErrorCode::DegenerateMesh, element_id + " mesh has a zero extent");
    el.scale = kHumanHeight / h;
    el.animation = std::move(follow);
    return el;
}

HumanPlan plan_human(const HumanCue& human, const VerbTable& verbs)
{
    if (human.count_type == CountType::Group)
        return HumanPlan::Crowd;
    return resolve_motion(human.animation, verbs).motion == Motion::Horizontal ? HumanPlan::Route
                                                                               : HumanPlan::Individual;
}

// ---- particles --------------------------------------------------------------

bool needs_particle_texture(ParticleType type)
{
    return type == ParticleType::FallingLeaves || type == ParticleType::Blossoms;
}

Level level_of(CueIntensity intensity)
{
    switch (intensity) {
    case CueIntensity::Medium: return Level::Medium;
    case CueIntensity::High: return Level::High;
    default: return Level::Low;
    }
}

std::vector<ParticleEffectConfig> configure_particles(const SceneDescription& scene)
{
    std::map<ParticleEffect, std::optional<Level>> by_effect;
    auto enable = [&](ParticleEffect e, Level l) {
        auto& slot = by_effect[e];
        slot = slot ? std::max(*slot, l) : l;
    };

    const Weather w = scene.event_summary.weather;
    if (w == Weather::Rainy)
        enable(ParticleEffect::Rain, Level::Low);
    if (w == Weather::Snowy)
        enable(ParticleEffect::Snow, Level::Low);
    if (w == Weather::Foggy)
        enable(ParticleEffect::Fog, Level::Low);
    if (w == Weather::Cloudy || scene.event_summary.time_of_day == TimeOfDay::OvercastDay)
        enable(ParticleEffect::Cloud, Level::Low);

    for (const auto& [id, cue] : scene.particles) {
        const Level l = level_of(cue.intensity);
        switch (cue.type) {
        case ParticleType::Rain: enable(ParticleEffect::Rain, l); break;
        case ParticleType::Snow: enable(ParticleEffect::Snow, l); break;
        case ParticleType::Fog:
        case ParticleType::Mist: enable(ParticleEffect::Fog, l); break;
        case ParticleType::Cloud: enable(ParticleEffect::Cloud, l); break;
        case ParticleType::Blossoms: enable(ParticleEffect::Blossom, l); break;
        default: break;
        }
    }

    std::vector<ParticleEffectConfig> configs;
    for (ParticleEffect e : kAllParticleEffects) {
        const auto it = by_effect.find(e);
        const bool on = it != by_effect.end() && it->second.has_value();
        configs.push_back({e, on, on ? *it->second : Level::Low});
    }
    return normalize_particle_config(particle_document(configs)).configs;
}

// ---- lighting ---------------------------------------------------------------

SunTable default_sun_table()
{
    return {
        {TimeOfDay::Day, {60, 180, Level::High}},        {TimeOfDay::Sunrise, {10, 90, Level::Medium}},
        {TimeOfDay::Sunset, {10, 270, Level::Medium}},   {TimeOfDay::OvercastDay, {45, 180, Level::Low}},
        {TimeOfDay::Night, {-30, 0, Level::Low}},        {TimeOfDay::Unknown, {60, 180, Level::High}},
    };
}

namespace {

std::string lower(std::string_view s)
{
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
    return out;
}

}  // namespace

LightingRig configure_lighting(const SceneDescription& scene, const std::vector<WorldPoint>& streetlight_marks,
                               const SunTable& table)
{
    LightingRig rig;
    auto it = table.find(scene.event_summary.time_of_day);
    if (it == table.end())
        it = table.find(TimeOfDay::Day);
    rig.sun = it != table.end() ? it->second : SunSetting{};
    if (!(rig.sun.elevation >= -90 && rig.sun.elevation <= 90))
        throw Error(ErrorCode::RangeError, "sun elevation outside [-90, 90]");
    rig.sun.azimuth = std::fmod(std::fmod(rig.sun.azimuth, 360.0) + 360.0, 360.0);

    bool streetlight_cue = false;
    std::vector<std::string> decorative;
    for (const auto& [id, cue] : scene.lighting) {
        if (cue.type == LightType::Streetlight)
            streetlight_cue = true;
        if (cue.type == LightType::DecorativeLight)
            decorative.push_back(lower(cue.description + "\n" + cue.direction_or_area));
    }
    const TimeOfDay tod = scene.event_summary.time_of_day;
    if (tod == TimeOfDay::Night || tod == TimeOfDay::Sunset || streetlight_cue)
        rig.streetlights = streetlight_marks;

    for (const auto& [id, obj] : scene.objects) {
        const std::string label = lower(obj.label);
        if (label.empty())
            continue;
        for (const auto& text : decorative)
            if (text.find(label) != std::string::npos) {
                rig.emissive_elements.push_back(id);
                break;
            }
    }
    return rig;
}

// ---- geography --------------------------------------------------------------

bool is_water(GeoType type) { return type == GeoType::Ocean || type == GeoType::River; }

bool is_surface_cover(GeoType type)
{
    return type == GeoType::Snowfield || type == GeoType::Grass || type == GeoType::Beach;
}

std::pair<double, double> wave_parameters(DynamicState state)
{
    switch (state) {
    case DynamicState::Waving: return {0.3, 4.0};
    case DynamicState::Flowing: return {0.1, 2.0};
    default: return {0.05, 8.0};
    }
}

GeoSurface compose_geography(const SceneDescription& scene, const std::map<std::string, WorldPolygon>& area_marks,
                             const std::map<std::string, std::string>& textures)
{
    GeoSurface surface;
    for (const auto& [id, cue] : scene.geography) {
        if (is_surface_cover(cue.type) && !surface.terrain_texture) {
            if (const auto t = textures.find(id); t != textures.end())
                surface.terrain_texture = t->second;
        }
        if (is_water(cue.type)) {
            const auto m = area_marks.find(id);
            if (m == area_marks.end())
                throw Error(ErrorCode::MissingAnnotation, id + " needs an area mark");
            const auto [amp, period] = wave_parameters(cue.dynamic_state);
            surface.water_regions.push_back({id, m->second, amp, period});
        }
    }
    return surface;
}

}  // namespace forge
