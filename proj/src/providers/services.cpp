#include <forge/core/error.hpp>
#include <forge/providers/prompts.hpp>
#include <forge/providers/services.hpp>

#include <cmath>

namespace forge {

Attachment attach_photo(const PhotoRecord& photo)
{
    return Attachment::from_bytes(photo.raw, media_type_of(photo.raw));
}

ProviderRequest scene_analysis_request(const PhotoCollection& photos)
{
    ProviderRequest req;
    req.kind = ProviderKind::SceneAnalysis;
    req.prompt = std::string(prompts::kSceneAnalysisPrompt);
    std::string times;
    for (const auto& p : photos.photos) {
        req.inputs.push_back(attach_photo(p));
        if (p.capture_time)
            times += (times.empty() ? "" : "\n") + p.id + " " + *p.capture_time;
    }
    if (!times.empty())
        req.params["capture_times"] = times;
    return req;
}

ProviderRequest location_request(const PhotoCollection& photos)
{
    std::string joined;
    for (const auto& p : photos.photos) {
        if (!joined.empty())
            joined += '\n';
        joined += p.filename;
    }
    ProviderRequest req;
    req.kind = ProviderKind::LocationEstimate;
    req.prompt = render_template(prompts::kLocationEstimatePrompt, {{"joined", joined}});
    for (const auto& p : photos.photos)
        req.inputs.push_back(attach_photo(p));
    return req;
}

ProviderRequest segmentation_request(const Attachment& image, const std::string& text_prompt)
{
    if (text_prompt.empty())
        throw Error(ErrorCode::InvalidArgument, "segmentation needs a text prompt");
    ProviderRequest req;
    req.kind = ProviderKind::Segmentation;
    req.prompt = text_prompt;
    req.inputs.push_back(image);
    req.params["text_prompt"] = text_prompt;
    return req;
}

ProviderRequest asset_request(const Attachment& segment, const std::string& label)
{
    if (label.empty())
        throw Error(ErrorCode::InvalidArgument, "asset request needs a label");
    ProviderRequest req;
    req.kind = ProviderKind::AssetGeneration;
    req.prompt = label;
    req.inputs.push_back(segment);
    req.params["output"] = "glb";
    return req;
}

ProviderRequest geo_texture_request(const std::string& scene_summary, GeoType surface_cover_type,
                                    const std::string& surface_cover_description)
{
    ProviderRequest req;
    req.kind = ProviderKind::TextureGeneration;
    req.prompt = render_template(prompts::kGeoTexturePrompt,
                                 {{"scene_summary", scene_summary},
                                  {"surface_cover_type", std::string(to_string(surface_cover_type))},
                                  {"surface_cover_description", surface_cover_description}});
    req.params["texture"] = "geography";
    return req;
}

ProviderRequest particle_texture_request(const std::string& scene_summary, ParticleType particle_type,
                                         const std::string& motion_description)
{
    ProviderRequest req;
    req.kind = ProviderKind::TextureGeneration;
    req.prompt = render_template(prompts::kParticleTexturePrompt,
                                 {{"scene_summary", scene_summary},
                                  {"particle_type", std::string(to_string(particle_type))},
                                  {"motion_description", motion_description}});
    req.params["texture"] = "particle";
    return req;
}

ProviderRequest annotation_request(AnnotationTemplate kind, const std::string& object, const Attachment& base_map,
                                   const std::vector<Attachment>& references, int attempt)
{
    std::string_view tmpl;
    switch (kind) {
    case AnnotationTemplate::Position: tmpl = prompts::kPositionAnnotationPrompt; break;
    case AnnotationTemplate::Area: tmpl = prompts::kAreaAnnotationPrompt; break;
    case AnnotationTemplate::Route: tmpl = prompts::kRouteAnnotationPrompt; break;
    }
    ProviderRequest req;
    req.kind = ProviderKind::AnnotationPainting;
    req.prompt = render_template(tmpl, {{"object", object}});
    req.inputs.push_back(base_map);
    req.inputs.insert(req.inputs.end(), references.begin(), references.end());
    req.params["template"] = std::string(to_string(kind));
    if (attempt > 1)
        req.params["attempt"] = std::to_string(attempt);
    return req;
}

ProviderRequest particle_classifier_request(const PhotoCollection& photos)
{
    ProviderRequest req;
    req.kind = ProviderKind::SceneAnalysis;
    req.prompt = std::string(prompts::kParticleClassifierPrompt);
    for (const auto& p : photos.photos)
        req.inputs.push_back(attach_photo(p));
    req.params["classifier"] = "particles";
    return req;
}

GeoLocation parse_location_payload(std::span<const std::uint8_t> payload)
{
    Json doc;
    try {
        doc = Json::parse(payload.begin(), payload.end());
    } catch (const Json::exception& e) {
        throw Error(ErrorCode::MalformedPayload, std::string("location payload: ") + e.what());
    }
    if (!doc.is_object() || doc.size() != 1 || !doc.contains("results"))
        throw Error(ErrorCode::MalformedPayload, "location payload must be exactly {\"results\": {...}}");
    const Json& r = doc["results"];
    if (!r.is_object() || r.size() != 3)
        throw Error(ErrorCode::MalformedPayload, "location results must hold exactly latitude, longitude, height");
    GeoLocation loc;
    const std::pair<const char*, double*> fields[] = {
        {"latitude", &loc.latitude}, {"longitude", &loc.longitude}, {"height", &loc.altitude}};
    for (const auto& [name, slot] : fields) {
        if (!r.contains(name) || !r[name].is_number())
            throw Error(ErrorCode::MalformedPayload, std::string("location results.") + name + " missing or not a number");
        *slot = r[name].get<double>();
    }
    check_geo_location(loc);
    return loc;
}

GeoLocation estimate_location(const PhotoCollection& photos, Dispatcher& dispatcher)
{
    if (photos.photos.empty())
        throw Error(ErrorCode::EmptyCollection, "location estimate needs at least one photo");
    const auto response = dispatcher.dispatch(location_request(photos));
    return parse_location_payload(response.payload);
}

GeoLocation estimate_location(const PhotoCollection& photos, FixtureStore& store)
{
    Dispatcher d(store, std::make_shared<FailingTransport>());
    return estimate_location(photos, d);
}

Json analyze_scene(const PhotoCollection& photos, Dispatcher& dispatcher)
{
    const auto req = scene_analysis_request(photos);
    auto attempt = [&] {
        const auto response = dispatcher.dispatch(req);
        return Json::parse(response.payload.begin(), response.payload.end());
    };
    try {
        return attempt();
    } catch (const Error& e) {
        if (e.code() != ErrorCode::MalformedPayload || dispatcher.mode() == StoreMode::Replay)
            throw;
    }
    return attempt();
}

}  // namespace forge
