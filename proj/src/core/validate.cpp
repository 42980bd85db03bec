#include <forge/core/validate.hpp>

#include <cmath>

namespace forge {

SchemaViolation::SchemaViolation(std::vector<SchemaIssue> issues)
    : Error(ErrorCode::SchemaViolation,
            [&] {
                std::string msg;
                for (const auto& i : issues) {
                    if (!msg.empty())
                        msg += "; ";
                    msg += i.path + ": " + i.reason;
                }
                return msg;
            }()),
      issues_(std::move(issues))
{
}

bool SchemaViolation::mentions(std::string_view path) const
{
    for (const auto& i : issues_)
        if (i.path == path)
            return true;
    return false;
}

void check_geo_location(const GeoLocation& loc)
{
    if (!std::isfinite(loc.latitude) || !std::isfinite(loc.longitude) || !std::isfinite(loc.altitude))
        throw Error(ErrorCode::RangeError, "location components must be finite");
    if (loc.latitude < -90.0 || loc.latitude > 90.0)
        throw Error(ErrorCode::RangeError, "latitude " + std::to_string(loc.latitude) + " outside [-90, 90]");
    if (loc.longitude < -180.0 || loc.longitude > 180.0)
        throw Error(ErrorCode::RangeError, "longitude " + std::to_string(loc.longitude) + " outside [-180, 180]");
}

namespace {

std::string join(const std::string& parent, const std::string& key)
{
    return parent.empty() ? key : parent + "." + key;
}

class Reader {
public:
    explicit Reader(const std::set<std::string>* photo_ids) : photo_ids_(photo_ids) {}

    std::vector<SchemaIssue> issues;

    void fail(const std::string& path, const std::string& reason) { issues.push_back({path, reason}); }

    /// Checks `obj` is an object holding exactly `keys`; returns false if not an object.
    bool expect_object(const Json& obj, const std::string& path, std::initializer_list<std::string_view> keys)
    {
        if (!obj.is_object()) {
            fail(path.empty() ? "$" : path, "expected object");
            return false;
        }
        for (auto k : keys)
            if (!obj.contains(std::string(k)))
                fail(join(path, std::string(k)), "missing key");
        for (auto it = obj.begin(); it != obj.end(); ++it) {
            bool known = false;
            for (auto k : keys)
                known = known || it.key() == k;
            if (!known)
                fail(join(path, it.key()), "unknown key");
        }
        return true;
    }

    std::string text(const Json& obj, const std::string& path, const char* key)
    {
        if (!obj.contains(key))
            return {};
        const auto& v = obj.at(key);
        if (!v.is_string()) {
            fail(join(path, key), "expected string");
            return {};
        }
        return v.get<std::string>();
    }

    template <typename E>
    E choice(const Json& obj, const std::string& path, const char* key, E fallback)
    {
        if (!obj.contains(key))
            return fallback;
        const auto& v = obj.at(key);
        if (!v.is_string()) {
            fail(join(path, key), "expected string");
            return fallback;
        }
        if (auto e = enum_from_string<E>(v.get<std::string>()))
            return *e;
        fail(join(path, key), "'" + v.get<std::string>() + "' not one of " + enum_choices<E>());
        return fallback;
    }

    double confidence(const Json& obj, const std::string& path)
    {
        if (!obj.contains("confidence"))
            return 0.0;
        const auto& v = obj.at("confidence");
        if (!v.is_number()) {
            fail(join(path, "confidence"), "expected number");
            return 0.0;
        }
        const double c = v.get<double>();
        if (!(c >= 0.0 && c <= 1.0))
            fail(join(path, "confidence"), "outside [0, 1]");
        return c;
    }

    std::vector<std::string> images(const Json& obj, const std::string& path, bool require_nonempty)
    {
        std::vector<std::string> out;
        if (!obj.contains("images"))
            return out;
        const auto& v = obj.at("images");
        const auto p = join(path, "images");
        if (!v.is_array()) {
            fail(p, "expected array");
            return out;
        }
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (!v[i].is_string()) {
                fail(p + "[" + std::to_string(i) + "]", "expected string");
                continue;
            }
            auto id = v[i].get<std::string>();
            if (photo_ids_ && !photo_ids_->contains(id))
                fail(p + "[" + std::to_string(i) + "]", "unknown photo id '" + id + "'");
            out.push_back(std::move(id));
        }
        if (require_nonempty && out.empty())
            fail(p, "must list at least one photo");
        return out;
    }

    template <typename Cue, typename Fn>
    std::map<std::string, Cue> layer(const Json& root, const char* name, Fn&& parse_one)
    {
        std::map<std::string, Cue> out;
        if (!root.contains(name))
            return out;
        const auto& layer = root.at(name);
        if (!layer.is_object()) {
            fail(name, "expected object");
            return out;
        }
        for (auto it = layer.begin(); it != layer.end(); ++it) {
            const auto path = std::string(name) + "." + it.key();
            if (it.key().empty())
                fail(path, "empty element id");
            out.emplace(it.key(), parse_one(it.value(), path));
        }
        return out;
    }

private:
    const std::set<std::string>* photo_ids_;
};

}  // namespace

SceneDescription validate_scene_description(const Json& raw, const std::set<std::string>& photo_ids)
{
    Reader r(&photo_ids);
    SceneDescription scene;
    if (!r.expect_object(raw, "", {"event_summary", "objects", "humans", "geography", "lighting", "particles"}))
        throw SchemaViolation(std::move(r.issues));

    if (raw.contains("event_summary")) {
        const auto& es = raw.at("event_summary");
        const std::string p = "event_summary";
        if (r.expect_object(es, p,
                            {"scene_type", "location_context", "environment", "time_of_day", "weather",
                             "overall_description"})) {
            auto& s = scene.event_summary;
            s.scene_type = r.text(es, p, "scene_type");
            s.location_context = r.text(es, p, "location_context");
            s.environment = r.choice(es, p, "environment", Environment::Unknown);
            s.time_of_day = r.choice(es, p, "time_of_day", TimeOfDay::Unknown);
            s.weather = r.choice(es, p, "weather", Weather::Unknown);
            s.overall_description = r.text(es, p, "overall_description");
        }
    }

    scene.objects = r.layer<ObjectCue>(raw, "objects", [&](const Json& v, const std::string& p) {
        ObjectCue c;
        if (!r.expect_object(v, p, {"images", "label", "description", "animation", "size", "confidence"}))
            return c;
        c.images = r.images(v, p, true);
        c.label = r.text(v, p, "label");
        c.description = r.text(v, p, "description");
        c.animation = r.text(v, p, "animation");
        c.size = r.choice(v, p, "size", SizeClass::Unknown);
        c.confidence = r.confidence(v, p);
        return c;
    });

    scene.humans = r.layer<HumanCue>(raw, "humans", [&](const Json& v, const std::string& p) {
        HumanCue c;
        if (!r.expect_object(v, p,
                             {"images", "count_type", "description", "animation", "pose_or_activity", "confidence"}))
            return c;
        c.images = r.images(v, p, false);
        c.count_type = r.choice(v, p, "count_type", CountType::Individual);
        c.description = r.text(v, p, "description");
        c.animation = r.text(v, p, "animation");
        c.pose_or_activity = r.text(v, p, "pose_or_activity");
        c.confidence = r.confidence(v, p);
        return c;
    });

    scene.geography = r.layer<GeoCue>(raw, "geography", [&](const Json& v, const std::string& p) {
        GeoCue c;
        if (!r.expect_object(v, p, {"images", "type", "description", "dynamic_state", "confidence"}))
            return c;
        c.images = r.images(v, p, false);
        c.type = r.choice(v, p, "type", GeoType::Other);
        c.description = r.text(v, p, "description");
        c.dynamic_state = r.choice(v, p, "dynamic_state", DynamicState::Unknown);
        c.confidence = r.confidence(v, p);
        return c;
    });

    scene.lighting = r.layer<LightCue>(raw, "lighting", [&](const Json& v, const std::string& p) {
        LightCue c;
        if (!r.expect_object(v, p,
                             {"images", "type", "description", "intensity", "direction_or_area", "confidence"}))
            return c;
        c.images = r.images(v, p, false);
        c.type = r.choice(v, p, "type", LightType::Unknown);
        c.description = r.text(v, p, "description");
        c.intensity = r.choice(v, p, "intensity", CueIntensity::Unknown);
        c.direction_or_area = r.text(v, p, "direction_or_area");
        c.confidence = r.confidence(v, p);
        return c;
    });

    scene.particles = r.layer<ParticleCue>(raw, "particles", [&](const Json& v, const std::string& p) {
        ParticleCue c;
        if (!r.expect_object(v, p, {"images", "type", "description", "intensity", "confidence"}))
            return c;
        c.images = r.images(v, p, false);
        c.type = r.choice(v, p, "type", ParticleType::Unknown);
        c.description = r.text(v, p, "description");
        c.intensity = r.choice(v, p, "intensity", CueIntensity::Unknown);
        c.confidence = r.confidence(v, p);
        return c;
    });

    if (!r.issues.empty())
        throw SchemaViolation(std::move(r.issues));
    return scene;
}

Json to_json(const SceneDescription& scene)
{
    const auto& s = scene.event_summary;
    Json out;
    out["event_summary"] = {
        {"scene_type", s.scene_type},
        {"location_context", s.location_context},
        {"environment", to_string(s.environment)},
        {"time_of_day", to_string(s.time_of_day)},
        {"weather", to_string(s.weather)},
        {"overall_description", s.overall_description},
    };
    out["objects"] = Json::object();
    for (const auto& [id, c] : scene.objects)
        out["objects"][id] = {{"images", c.images},         {"label", c.label},
                              {"description", c.description}, {"animation", c.animation},
                              {"size", to_string(c.size)},    {"confidence", c.confidence}};
    out["humans"] = Json::object();
    for (const auto& [id, c] : scene.humans)
        out["humans"][id] = {{"images", c.images},
                             {"count_type", to_string(c.count_type)},
                             {"description", c.description},
                             {"animation", c.animation},
                             {"pose_or_activity", c.pose_or_activity},
                             {"confidence", c.confidence}};
    out["geography"] = Json::object();
    for (const auto& [id, c] : scene.geography)
        out["geography"][id] = {{"images", c.images},
                                {"type", to_string(c.type)},
                                {"description", c.description},
                                {"dynamic_state", to_string(c.dynamic_state)},
                                {"confidence", c.confidence}};
    out["lighting"] = Json::object();
    for (const auto& [id, c] : scene.lighting)
        out["lighting"][id] = {{"images", c.images},
                               {"type", to_string(c.type)},
                               {"description", c.description},
                               {"intensity", to_string(c.intensity)},
                               {"direction_or_area", c.direction_or_area},
                               {"confidence", c.confidence}};
    out["particles"] = Json::object();
    for (const auto& [id, c] : scene.particles)
        out["particles"][id] = {{"images", c.images},
                                {"type", to_string(c.type)},
                                {"description", c.description},
                                {"intensity", to_string(c.intensity)},
                                {"confidence", c.confidence}};
    return out;
}

ParticleNormalization normalize_particle_config(const Json& raw)
{
    Reader r(nullptr);
    ParticleNormalization out;
    if (!r.expect_object(raw, "", {"effects"}) || !raw.contains("effects"))
        throw SchemaViolation(std::move(r.issues));
    const auto& effects = raw.at("effects");
    if (!r.expect_object(effects, "effects", {"rain", "snow", "fog", "cloud", "blossom"}))
        throw SchemaViolation(std::move(r.issues));

    for (auto effect : kAllParticleEffects) {
        const std::string name(to_string(effect));
        const std::string path = "effects." + name;
        if (!effects.contains(name))
            continue;
        const auto& e = effects.at(name);
        if (!r.expect_object(e, path, {"enabled", "intensity"}))
            continue;
        ParticleEffectConfig cfg{effect, false, Level::Low};
        if (e.contains("enabled")) {
            if (e.at("enabled").is_boolean())
                cfg.enabled = e.at("enabled").get<bool>();
            else
                r.fail(path + ".enabled", "expected boolean");
        }
        cfg.intensity = r.choice(e, path, "intensity", Level::Low);
        if (!cfg.enabled && cfg.intensity != Level::Low) {
            out.warnings.push_back(path + ": disabled effect had intensity '" + std::string(to_string(cfg.intensity)) +
                                   "', coerced to low");
            cfg.intensity = Level::Low;
        }
        out.configs.push_back(cfg);
    }
    if (!r.issues.empty())
        throw SchemaViolation(std::move(r.issues));
    return out;
}

Json particle_document(const std::vector<ParticleEffectConfig>& configs)
{
    Json effects = Json::object();
    for (const auto& c : configs)
        effects[std::string(to_string(c.effect))] = {{"enabled", c.enabled}, {"intensity", to_string(c.intensity)}};
    return {{"effects", effects}};
}

}  // namespace forge
