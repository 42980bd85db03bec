#pragma once

#include <forge/annotate/marks.hpp>
#include <forge/core/model.hpp>
#include <forge/ingest/photo.hpp>
#include <forge/providers/dispatch.hpp>

namespace forge {

Attachment attach_photo(const PhotoRecord& photo);

/// Scene-analysis prompt with every photo attached in collection order.
/// Capture times, when any photo has one, go in param capture_times.
ProviderRequest scene_analysis_request(const PhotoCollection& photos);

/// Location prompt; {joined} is the newline-joined photo file names.
ProviderRequest location_request(const PhotoCollection& photos);

/// Masked image of whatever `text_prompt` names in `image`.
ProviderRequest segmentation_request(const Attachment& image, const std::string& text_prompt);

/// Image-to-3D conversion of a segmented element.
ProviderRequest asset_request(const Attachment& segment, const std::string& label);

ProviderRequest geo_texture_request(const std::string& scene_summary, GeoType surface_cover_type,
                                    const std::string& surface_cover_description);

ProviderRequest particle_texture_request(const std::string& scene_summary, ParticleType particle_type,
                                         const std::string& motion_description);

/// Painter request for one element: the rendered base map first, then the
/// reference photos. `attempt` above 1 is recorded as a param so a retry
/// gets its own fixture.
ProviderRequest annotation_request(AnnotationTemplate kind, const std::string& object, const Attachment& base_map,
                                   const std::vector<Attachment>& references, int attempt = 1);

/// Optional particle classifier over the photos.
ProviderRequest particle_classifier_request(const PhotoCollection& photos);

/// Parses the exact {"results":{"latitude","longitude","height"}} shape.
/// Throws MalformedPayload on any other shape, RangeError on bad values.
GeoLocation parse_location_payload(std::span<const std::uint8_t> payload);

/// Asks the provider for one location for all photos.
GeoLocation estimate_location(const PhotoCollection& photos, Dispatcher& dispatcher);
GeoLocation estimate_location(const PhotoCollection& photos, FixtureStore& store);

/// Scene analysis with one re-dispatch on MalformedPayload outside replay.
Json analyze_scene(const PhotoCollection& photos, Dispatcher& dispatcher);

}  // namespace forge
