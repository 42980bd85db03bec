#pragma once

#include <forge/core/enum_names.hpp>

#include <array>
#include <map>
#include <string>
#include <vector>

namespace forge {

// Scene-description vocabulary. Enumerator order matches the wire spelling
// tables below; do not reorder one without the other.

enum class Environment { Indoor, Outdoor, Mixed, Unknown };
enum class TimeOfDay { Day, Night, Sunset, Sunrise, OvercastDay, Unknown };
enum class Weather { Clear, Cloudy, Rainy, Snowy, Foggy, Windy, Mixed, Unknown };
enum class SizeClass { Small, Medium, Large, Unknown };
enum class CountType { Individual, Group };
enum class GeoType { Road, Beach, River, Ocean, Mountain, Snowfield, Grass, UrbanBlock, Park, Bridge, Station, Other };
enum class DynamicState { Static, Flowing, Waving, Unknown };
enum class LightType { Sunlight, Sunset, Streetlight, DecorativeLight, IndoorLight, OvercastLight, Unknown };
enum class CueIntensity { Low, Medium, High, Unknown };
enum class ParticleType { Rain, Snow, Fog, Cloud, Mist, FallingLeaves, Blossoms, None, Unknown };

/// Three-level intensity used by particle effects and the sun.
enum class Level { Low, Medium, High };
enum class ParticleEffect { Rain, Snow, Fog, Cloud, Blossom };

template <> struct EnumNames<Environment> { static constexpr std::array<std::string_view, 4> names{"indoor", "outdoor", "mixed", "unknown"}; };
template <> struct EnumNames<TimeOfDay> { static constexpr std::array<std::string_view, 6> names{"day", "night", "sunset", "sunrise", "overcast_day", "unknown"}; };
template <> struct EnumNames<Weather> { static constexpr std::array<std::string_view, 8> names{"clear", "cloudy", "rainy", "snowy", "foggy", "windy", "mixed", "unknown"}; };
template <> struct EnumNames<SizeClass> { static constexpr std::array<std::string_view, 4> names{"small", "medium", "large", "unknown"}; };
template <> struct EnumNames<CountType> { static constexpr std::array<std::string_view, 2> names{"individual", "group"}; };
template <> struct EnumNames<GeoType> {
    static constexpr std::array<std::string_view, 12> names{"road", "beach", "river", "ocean", "mountain", "snowfield", "grass", "urban_block", "park", "bridge", "station", "other"};
};
template <> struct EnumNames<DynamicState> { static constexpr std::array<std::string_view, 4> names{"static", "flowing", "waving", "unknown"}; };
template <> struct EnumNames<LightType> {
    static constexpr std::array<std::string_view, 7> names{"sunlight", "sunset", "streetlight", "decorative_light", "indoor_light", "overcast_light", "unknown"};
};
template <> struct EnumNames<CueIntensity> { static constexpr std::array<std::string_view, 4> names{"low", "medium", "high", "unknown"}; };
template <> struct EnumNames<ParticleType> {
    static constexpr std::array<std::string_view, 9> names{"rain", "snow", "fog", "cloud", "mist", "falling_leaves", "blossoms", "none", "unknown"};
};
template <> struct EnumNames<Level> { static constexpr std::array<std::string_view, 3> names{"low", "medium", "high"}; };
template <> struct EnumNames<ParticleEffect> { static constexpr std::array<std::string_view, 5> names{"rain", "snow", "fog", "cloud", "blossom"}; };

struct GeoLocation {
    double latitude = 0.0;
    double longitude = 0.0;
    double altitude = 0.0;

    bool operator==(const GeoLocation&) const = default;
};

/// Throws RangeError unless all fields are finite and lat/lon are in range.
void check_geo_location(const GeoLocation& loc);

struct EventSummary {
    std::string scene_type;
    std::string location_context;
    Environment environment = Environment::Unknown;
    TimeOfDay time_of_day = TimeOfDay::Unknown;
    Weather weather = Weather::Unknown;
    std::string overall_description;

    bool operator==(const EventSummary&) const = default;
};

struct ObjectCue {
    std::vector<std::string> images;
    std::string label;
    std::string description;
    std::string animation;
    SizeClass size = SizeClass::Unknown;
    double confidence = 0.0;

    bool operator==(const ObjectCue&) const = default;
};

struct HumanCue {
    std::vector<std::string> images;
    CountType count_type = CountType::Individual;
    std::string description;
    std::string animation;
    std::string pose_or_activity;
    double confidence = 0.0;

    bool operator==(const HumanCue&) const = default;
};

struct GeoCue {
    std::vector<std::string> images;
    GeoType type = GeoType::Other;
    std::string description;
    DynamicState dynamic_state = DynamicState::Unknown;
    double confidence = 0.0;

    bool operator==(const GeoCue&) const = default;
};

struct LightCue {
    std::vector<std::string> images;
    LightType type = LightType::Unknown;
    std::string description;
    CueIntensity intensity = CueIntensity::Unknown;
    std::string direction_or_area;  // stored verbatim, never parsed
    double confidence = 0.0;

    bool operator==(const LightCue&) const = default;
};

struct ParticleCue {
    std::vector<std::string> images;
    ParticleType type = ParticleType::Unknown;
    std::string description;
    CueIntensity intensity = CueIntensity::Unknown;
    double confidence = 0.0;

    bool operator==(const ParticleCue&) const = default;
};

/// Layer maps are keyed by element id; std::map keeps them lexicographically
/// sorted, which is the iteration order everywhere downstream.
struct SceneDescription {
    EventSummary event_summary;
    std::map<std::string, ObjectCue> objects;
    std::map<std::string, HumanCue> humans;
    std::map<std::string, GeoCue> geography;
    std::map<std::string, LightCue> lighting;
    std::map<std::string, ParticleCue> particles;

    std::size_t element_count() const
    {
        return objects.size() + humans.size() + geography.size() + lighting.size() + particles.size();
    }

    bool operator==(const SceneDescription&) const = default;
};

struct ParticleEffectConfig {
    ParticleEffect effect = ParticleEffect::Rain;
    bool enabled = false;
    Level intensity = Level::Low;

    bool operator==(const ParticleEffectConfig&) const = default;
};

inline constexpr std::array<ParticleEffect, 5> kAllParticleEffects{
    ParticleEffect::Rain, ParticleEffect::Snow, ParticleEffect::Fog, ParticleEffect::Cloud, ParticleEffect::Blossom};

}  // namespace forge
