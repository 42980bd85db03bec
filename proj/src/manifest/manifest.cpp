#include <forge/core/canonical_json.hpp>
#include <forge/core/error.hpp>
#include <forge/manifest/manifest.hpp>

#include <algorithm>

namespace forge {

namespace fs = std::filesystem;

bool SceneManifest::operator==(const SceneManifest& o) const
{
    if (assets.size() != o.assets.size())
        return false;
    for (auto a = assets.begin(), b = o.assets.begin(); a != assets.end(); ++a, ++b) {
        if (a->first != b->first || !a->second || !b->second || *a->second != *b->second)
            return false;
    }
    return version == o.version && event_id == o.event_id && anchor == o.anchor && camera == o.camera &&
           terrain == o.terrain && elements == o.elements && pedestrians == o.pedestrians &&
           particles == o.particles && textured_particles == o.textured_particles && lighting == o.lighting &&
           geography == o.geography && diorama_scale == o.diorama_scale && provenance == o.provenance;
}

std::set<std::string> referenced_files(const SceneManifest& m)
{
    std::set<std::string> out;
    for (const auto* list : {&m.elements, &m.pedestrians})
        for (const auto& el : *list)
            out.insert(el.asset.file);
    for (const auto& t : m.textured_particles)
        out.insert(t.texture);
    if (m.geography.terrain_texture)
        out.insert(*m.geography.terrain_texture);
    return out;
}

namespace {

bool layer_order(const PlacedElement& a, const PlacedElement& b)
{
    return std::tie(a.layer, a.element_id) < std::tie(b.layer, b.element_id);
}

Json point_json(const WorldPoint& p) { return Json::array({p.x(), p.y(), p.z()}); }

WorldPoint point_from(const Json& j)
{
    if (!j.is_array() || j.size() != 3)
        throw Error(ErrorCode::InvalidArgument, "point must be [x, y, z]");
    return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

Json points_json(const std::vector<WorldPoint>& pts)
{
    Json arr = Json::array();
    for (const auto& p : pts)
        arr.push_back(point_json(p));
    return arr;
}

std::vector<WorldPoint> points_from(const Json& j)
{
    std::vector<WorldPoint> out;
    for (const auto& p : j)
        out.push_back(point_from(p));
    return out;
}

std::string text_of(const Bytes& b) { return std::string(b.begin(), b.end()); }

void write_text(const fs::path& file, const std::string& text)
{
    write_file(file, std::span(reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
}

}  // namespace

SceneManifest compose_manifest(ManifestInputs in)
{
    SceneManifest m;
    m.event_id = std::move(in.event_id);
    m.anchor = in.anchor;
    m.camera = in.camera;
    m.terrain = std::move(in.terrain);
    m.elements = std::move(in.elements);
    std::stable_sort(m.elements.begin(), m.elements.end(), layer_order);
    m.pedestrians = std::move(in.pedestrians);
    m.particles = std::move(in.particles);
    m.textured_particles = std::move(in.textured_particles);
    std::sort(m.textured_particles.begin(), m.textured_particles.end(),
              [](const auto& a, const auto& b) { return a.element_id < b.element_id; });
    m.lighting = std::move(in.lighting);
    m.geography = std::move(in.geography);
    std::sort(m.geography.water_regions.begin(), m.geography.water_regions.end(),
              [](const auto& a, const auto& b) { return a.element_id < b.element_id; });
    m.diorama_scale = std::move(in.diorama_scale);
    m.provenance = std::move(in.provenance);
    std::sort(m.provenance.request_digests.begin(), m.provenance.request_digests.end());
    m.assets = std::move(in.assets);

    for (const auto& file : referenced_files(m))
        if (!m.assets.count(file) || !m.assets.at(file))
            throw Error(ErrorCode::DanglingAssetReference, file);

    // Hold exactly what scene.json and terrain.json will say.
    SceneManifest out = manifest_from_json(parse_json(canonical_dump(manifest_to_json(m))));
    out.terrain = terrain_from_json(parse_json(canonical_dump(terrain_to_json(m.terrain))));
    out.assets = std::move(m.assets);
    return out;
}

Json animation_to_json(const AnimationSpec& anim)
{
    return std::visit(
        [](const auto& a) -> Json {
            using T = std::decay_t<decltype(a)>;
            if constexpr (std::is_same_v<T, StaticPose>)
                return {{"type", "static"}};
            else if constexpr (std::is_same_v<T, VerticalBob>)
                return {{"type", "vertical_bob"}, {"amplitude", a.amplitude}, {"period", a.period}};
            else if constexpr (std::is_same_v<T, RouteFollow>)
                return {{"type", "route_follow"},
                        {"spline", "centripetal_catmull_rom"},
                        {"control_points", points_json(a.control_points)},
                        {"speed", a.speed}};
            else
                return {{"type", "rigged_clip"}, {"clip", to_string(a.clip)}};
        },
        anim);
}

AnimationSpec animation_from_json(const Json& doc)
{
    const std::string type = doc.at("type").get<std::string>();
    if (type == "static")
        return StaticPose{};
    if (type == "vertical_bob")
        return VerticalBob{doc.at("amplitude").get<double>(), doc.at("period").get<double>()};
    if (type == "route_follow")
        return RouteFollow{points_from(doc.at("control_points")), doc.at("speed").get<double>()};
    if (type == "rigged_clip")
        return RiggedClip{parse_enum<Clip>(doc.at("clip").get<std::string>())};
    throw Error(ErrorCode::InvalidArgument, "unknown animation type '" + type + "'");
}

Json element_to_json(const PlacedElement& el)
{
    return {
        {"element_id", el.element_id},
        {"layer", to_string(el.layer)},
        {"asset", {{"file", el.asset.file}, {"rigged", el.asset.rigged}}},
        {"position", point_json(el.position)},
        {"yaw", el.yaw},
        {"scale", el.scale},
        {"animation", animation_to_json(el.animation)},
    };
}

PlacedElement element_from_json(const Json& doc)
{
    PlacedElement el;
    el.element_id = doc.at("element_id").get<std::string>();
    el.layer = parse_enum<LayerKind>(doc.at("layer").get<std::string>());
    el.asset = {doc.at("asset").at("file").get<std::string>(), doc.at("asset").at("rigged").get<bool>()};
    el.position = point_from(doc.at("position"));
    el.yaw = doc.at("yaw").get<double>();
    el.scale = doc.at("scale").get<double>();
    el.animation = animation_from_json(doc.at("animation"));
    return el;
}

Json manifest_to_json(const SceneManifest& m)
{
    Json elements = Json::array(), pedestrians = Json::array();
    for (const auto& el : m.elements)
        elements.push_back(element_to_json(el));
    for (const auto& el : m.pedestrians)
        pedestrians.push_back(element_to_json(el));

    Json effects = Json::array(), textured = Json::array();
    for (const auto& p : m.particles)
        effects.push_back({{"effect", to_string(p.effect)}, {"enabled", p.enabled}, {"intensity", to_string(p.intensity)}});
    for (const auto& t : m.textured_particles)
        textured.push_back({{"element_id", t.element_id},
                            {"type", to_string(t.type)},
                            {"intensity", to_string(t.intensity)},
                            {"texture", t.texture}});

    Json water = Json::array();
    for (const auto& w : m.geography.water_regions)
        water.push_back({{"element_id", w.element_id},
                         {"polygon", points_json(w.polygon)},
                         {"wave_amplitude", w.wave_amplitude},
                         {"wave_period", w.wave_period}});
    const Json texture = m.geography.terrain_texture ? Json(*m.geography.terrain_texture) : Json(nullptr);

    return {
        {"version", m.version},
        {"event_id", m.event_id},
        {"anchor", {{"latitude", m.anchor.latitude}, {"longitude", m.anchor.longitude}, {"altitude", m.anchor.altitude}}},
        {"camera",
         {{"center_east", m.camera.center_east},
          {"center_north", m.camera.center_north},
          {"extent_east", m.camera.extent_east},
          {"extent_north", m.camera.extent_north},
          {"image_width", m.camera.image_width},
          {"image_height", m.camera.image_height}}},
        {"terrain", {{"heightfield", "terrain.json"}, {"texture", texture}}},
        {"elements", elements},
        {"pedestrians", pedestrians},
        {"particles", {{"effects", effects}, {"textured", textured}}},
        {"lighting",
         {{"sun",
           {{"elevation", m.lighting.sun.elevation},
            {"azimuth", m.lighting.sun.azimuth},
            {"intensity", to_string(m.lighting.sun.intensity)}}},
          {"streetlights", points_json(m.lighting.streetlights)},
          {"emissive_elements", m.lighting.emissive_elements}}},
        {"geography", {{"terrain_texture", texture}, {"water_regions", water}}},
        {"diorama_scale", m.diorama_scale},
        {"provenance",
         {{"photo_ids", m.provenance.photo_ids},
          {"request_digests", m.provenance.request_digests},
          {"seed", m.provenance.seed},
          {"tool_version", m.provenance.tool_version}}},
    };
}

SceneManifest manifest_from_json(const Json& d)
{
    try {
        SceneManifest m;
        m.version = d.at("version").get<std::string>();
        m.event_id = d.at("event_id").get<std::string>();
        const Json& a = d.at("anchor");
        m.anchor = {a.at("latitude").get<double>(), a.at("longitude").get<double>(), a.at("altitude").get<double>()};
        const Json& c = d.at("camera");
        m.camera.center_east = c.at("center_east").get<double>();
        m.camera.center_north = c.at("center_north").get<double>();
        m.camera.extent_east = c.at("extent_east").get<double>();
        m.camera.extent_north = c.at("extent_north").get<double>();
        m.camera.image_width = c.at("image_width").get<int>();
        m.camera.image_height = c.at("image_height").get<int>();
        for (const auto& e : d.at("elements"))
            m.elements.push_back(element_from_json(e));
        for (const auto& e : d.at("pedestrians"))
            m.pedestrians.push_back(element_from_json(e));
        for (const auto& p : d.at("particles").at("effects"))
            m.particles.push_back({parse_enum<ParticleEffect>(p.at("effect").get<std::string>()), p.at("enabled").get<bool>(),
                                   parse_enum<Level>(p.at("intensity").get<std::string>())});
        for (const auto& t : d.at("particles").at("textured"))
            m.textured_particles.push_back({t.at("element_id").get<std::string>(),
                                            parse_enum<ParticleType>(t.at("type").get<std::string>()),
                                            parse_enum<Level>(t.at("intensity").get<std::string>()),
                                            t.at("texture").get<std::string>()});
        const Json& l = d.at("lighting");
        m.lighting.sun = {l.at("sun").at("elevation").get<double>(), l.at("sun").at("azimuth").get<double>(),
                          parse_enum<Level>(l.at("sun").at("intensity").get<std::string>())};
        m.lighting.streetlights = points_from(l.at("streetlights"));
        m.lighting.emissive_elements = l.at("emissive_elements").get<std::vector<std::string>>();
        const Json& g = d.at("geography");
        if (!g.at("terrain_texture").is_null())
            m.geography.terrain_texture = g["terrain_texture"].get<std::string>();
        for (const auto& w : g.at("water_regions"))
            m.geography.water_regions.push_back({w.at("element_id").get<std::string>(), points_from(w.at("polygon")),
                                                 w.at("wave_amplitude").get<double>(), w.at("wave_period").get<double>()});
        m.diorama_scale = d.at("diorama_scale").get<std::string>();
        const Json& p = d.at("provenance");
        m.provenance.photo_ids = p.at("photo_ids").get<std::vector<std::string>>();
        m.provenance.request_digests = p.at("request_digests").get<std::vector<std::string>>();
        m.provenance.seed = p.at("seed").get<std::uint64_t>();
        m.provenance.tool_version = p.at("tool_version").get<std::string>();
        return m;
    } catch (const Json::exception& e) {
        throw Error(ErrorCode::InvalidArgument, std::string("scene.json: ") + e.what());
    }
}

std::vector<std::string> emit(const SceneManifest& m, const fs::path& out_dir)
{
    std::error_code ec;
    fs::create_directories(out_dir / "assets", ec);
    if (ec)
        throw Error(ErrorCode::IoError, (out_dir / "assets").string() + ": " + ec.message());

    std::vector<std::string> written;
    for (const auto& [rel, bytes] : m.assets) {
        if (!bytes)
            throw Error(ErrorCode::DanglingAssetReference, rel);
        const fs::path file = out_dir / rel;
        fs::create_directories(file.parent_path(), ec);
        write_file(file, *bytes);
        written.push_back(rel);
    }
    write_text(out_dir / "terrain.json", canonical_dump(terrain_to_json(m.terrain)));
    written.push_back("terrain.json");
    write_text(out_dir / "scene.json", canonical_dump(manifest_to_json(m)));
    written.push_back("scene.json");
    std::sort(written.begin(), written.end());
    return written;
}

SceneManifest parse_manifest(const fs::path& out_dir)
{
    SceneManifest m = manifest_from_json(parse_json(text_of(read_file(out_dir / "scene.json"))));
    m.terrain = terrain_from_json(parse_json(text_of(read_file(out_dir / "terrain.json"))));
    std::error_code ec;
    if (fs::is_directory(out_dir / "assets", ec)) {
        std::vector<fs::path> files;
        for (const auto& entry : fs::recursive_directory_iterator(out_dir / "assets"))
            if (entry.is_regular_file())
                files.push_back(entry.path());
        for (const auto& f : files)
            m.assets[fs::relative(f, out_dir).generic_string()] = std::make_shared<const Bytes>(read_file(f));
    }
    return m;
}

}  // namespace forge
