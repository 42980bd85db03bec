#pragma once

#include <forge/core/canonical_json.hpp>
#include <forge/core/model.hpp>

#include <set>
#include <string>
#include <vector>

namespace forge {

struct SchemaIssue {
    std::string path;    // dotted field path, e.g. "objects.object01.size"
    std::string reason;
};

/// Thrown with every issue found, not just the first.
class SchemaViolation : public Error {
public:
    explicit SchemaViolation(std::vector<SchemaIssue> issues);

    const std::vector<SchemaIssue>& issues() const noexcept { return issues_; }
    bool mentions(std::string_view path) const;

private:
    std::vector<SchemaIssue> issues_;
};

/// Validates a scene-analysis document against the closed five-layer
/// schema. Unknown keys, missing keys, out-of-enum strings, confidence
/// outside [0,1] and photo ids not in `photo_ids` are all rejected.
SceneDescription validate_scene_description(const Json& raw, const std::set<std::string>& photo_ids);

Json to_json(const SceneDescription& scene);

struct ParticleNormalization {
    std::vector<ParticleEffectConfig> configs;  // rain, snow, fog, cloud, blossom
    std::vector<std::string> warnings;
};

/// Parses an `{"effects": {...}}` classifier document. A disabled effect
/// with non-low intensity is repaired to low and reported in `warnings`.
ParticleNormalization normalize_particle_config(const Json& raw);

/// Renders configs back into the classifier document shape.
Json particle_document(const std::vector<ParticleEffectConfig>& configs);

}  // namespace forge
