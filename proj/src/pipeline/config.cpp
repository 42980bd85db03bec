#include <forge/core/error.hpp>
#include <forge/pipeline/pipeline.hpp>

#include <set>

namespace forge {

namespace fs = std::filesystem;

template <>
struct EnumNames<Motion> {
    static constexpr std::array<std::string_view, 3> names{"static", "vertical", "horizontal"};
};

OrthoCameraSpec PipelineConfig::camera() const
{
    OrthoCameraSpec cam;
    cam.center_east = 0;
    cam.center_north = 0;
    cam.extent_east = extent_east;
    cam.extent_north = extent_north;
    cam.image_width = image_width;
    cam.image_height = image_height;
    return cam;
}

void PipelineConfig::check() const
{
    if (mode == StoreMode::Replay && fixtures_dir.empty())
        throw Error(ErrorCode::InvalidArgument, "replay mode requires fixtures_dir");
    if (mode == StoreMode::Record && fixtures_dir.empty())
        throw Error(ErrorCode::InvalidArgument, "record mode requires fixtures_dir");
    if (max_parallel_requests < 1)
        throw Error(ErrorCode::InvalidArgument, "max_parallel_requests must be at least 1");
    if (!(group_density >= 0))
        throw Error(ErrorCode::InvalidArgument, "group_density must be non-negative");
    if (!(route_human_speed > 0) || !(verbs.bob_amplitude > 0) || !(verbs.bob_period > 0))
        throw Error(ErrorCode::InvalidArgument, "speeds, amplitudes and periods must be positive");
    camera().check();
}

namespace {

fs::path resolve(const fs::path& base, const std::string& p)
{
    const fs::path path(p);
    return path.is_absolute() || base.empty() ? path : base / path;
}

}  // namespace

PipelineConfig config_from_json(const Json& doc, const fs::path& base)
{
    static const std::set<std::string> known{
        "mode",         "fixtures_dir",   "seed",        "camera",      "max_parallel_requests", "terrain",
        "stock_catalog", "manual_flags",  "verbs",       "bob_amplitude", "bob_period",          "group_density",
        "route_human_speed", "sun",       "alignment_retry", "particle_classifier", "endpoints"};
    if (!doc.is_object())
        throw Error(ErrorCode::InvalidArgument, "config must be a JSON object");
    for (const auto& [key, value] : doc.items())
        if (!known.count(key))
            throw Error(ErrorCode::InvalidArgument, "unknown config key '" + key + "'");

    PipelineConfig c;
    try {
        if (doc.contains("mode"))
            c.mode = parse_enum<StoreMode>(doc["mode"].get<std::string>());
        if (doc.contains("fixtures_dir"))
            c.fixtures_dir = resolve(base, doc["fixtures_dir"].get<std::string>());
        c.seed = doc.value("seed", c.seed);
        if (doc.contains("camera")) {
            const Json& cam = doc["camera"];
            for (const auto& [key, v] : cam.items())
                if (key != "extent_east" && key != "extent_north" && key != "image_width" && key != "image_height")
                    throw Error(ErrorCode::InvalidArgument, "unknown camera key '" + key + "'");
            c.extent_east = cam.value("extent_east", c.extent_east);
            c.extent_north = cam.value("extent_north", c.extent_north);
            c.image_width = cam.value("image_width", c.image_width);
            c.image_height = cam.value("image_height", c.image_height);
        }
        if (doc.contains("max_parallel_requests")) {
            const auto n = doc["max_parallel_requests"].get<long long>();
            if (n < 1)
                throw Error(ErrorCode::InvalidArgument, "max_parallel_requests must be at least 1");
            c.max_parallel_requests = static_cast<std::size_t>(n);
        }
        if (doc.contains("terrain"))
            c.terrain = resolve(base, doc["terrain"].get<std::string>());
        if (doc.contains("stock_catalog"))
            c.stock_catalog = resolve(base, doc["stock_catalog"].get<std::string>());
        if (doc.contains("manual_flags"))
            c.manual_flags = resolve(base, doc["manual_flags"].get<std::string>());
        if (doc.contains("verbs")) {
            c.verbs.rules.clear();
            for (const auto& r : doc["verbs"]) {
                VerbRule rule;
                rule.prefix = r.at("prefix").get<std::string>();
                rule.motion = parse_enum<Motion>(r.at("motion").get<std::string>());
                rule.speed = r.value("speed", 0.0);
                if (r.contains("clip"))
                    rule.clip = parse_enum<Clip>(r["clip"].get<std::string>());
                if (rule.motion == Motion::Horizontal && !(rule.speed > 0))
                    throw Error(ErrorCode::InvalidArgument, "verb '" + rule.prefix + "' needs a positive speed");
                c.verbs.rules.push_back(rule);
            }
        }
        c.verbs.bob_amplitude = doc.value("bob_amplitude", c.verbs.bob_amplitude);
        c.verbs.bob_period = doc.value("bob_period", c.verbs.bob_period);
        c.group_density = doc.value("group_density", c.group_density);
        c.route_human_speed = doc.value("route_human_speed", c.route_human_speed);
        if (doc.contains("sun")) {
            for (const auto& [tod, row] : doc["sun"].items()) {
                SunSetting s;
                s.elevation = row.at("elevation").get<double>();
                s.azimuth = row.at("azimuth").get<double>();
                s.intensity = parse_enum<Level>(row.at("intensity").get<std::string>());
                c.sun[parse_enum<TimeOfDay>(tod)] = s;
            }
        }
        c.alignment_retry = doc.value("alignment_retry", c.alignment_retry);
        c.particle_classifier = doc.value("particle_classifier", c.particle_classifier);
        if (doc.contains("endpoints"))
            c.endpoints = endpoints_from_json(doc["endpoints"]);
    } catch (const Json::exception& e) {
        throw Error(ErrorCode::InvalidArgument, std::string("config: ") + e.what());
    }
    return c;
}

PipelineConfig load_config(const fs::path& file)
{
    const Bytes raw = read_file(file);
    const Json doc = parse_json(std::string_view(reinterpret_cast<const char*>(raw.data()), raw.size()));
    return config_from_json(doc, file.parent_path());
}

}  // namespace forge
