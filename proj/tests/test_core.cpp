#include "support.hpp"

#include <forge/core/error.hpp>
#include <forge/core/validate.hpp>

#include <cmath>
#include <regex>

using namespace forge;
using testing::data_dir;

namespace {

const std::set<std::string> kPhotos{"photo01", "photo02", "photo03", "photo04", "photo05"};

Json demo_doc() { return testing::read_json_file(data_dir() / "schema" / "valid" / "02_beach_festival.json"); }

Json empty_doc() { return testing::read_json_file(data_dir() / "schema" / "valid" / "01_all_empty_layers.json"); }

SchemaViolation expect_violation(const Json& doc)
{
    try {
        validate_scene_description(doc, kPhotos);
    } catch (const SchemaViolation& e) {
        return e;
    }
    FAIL("document was accepted");
    throw std::logic_error("unreachable");
}

Json effects(std::initializer_list<std::tuple<const char*, bool, const char*>> rows)
{
    Json e = Json::object();
    for (const char* name : {"rain", "snow", "fog", "cloud", "blossom"})
        e[name] = {{"enabled", false}, {"intensity", "low"}};
    for (const auto& [name, enabled, intensity] : rows)
        e[name] = {{"enabled", enabled}, {"intensity", intensity}};
    return {{"effects", e}};
}

}  // namespace

TEST_CASE("all five layers empty gives a scene with no elements")
{
    const SceneDescription s = validate_scene_description(empty_doc(), kPhotos);
    CHECK(s.element_count() == 0);
    CHECK(s.event_summary.environment == Environment::Unknown);
}

TEST_CASE("object size outside the enum is rejected at its field path")
{
    Json doc = demo_doc();
    doc["objects"]["object01"]["size"] = "huge";
    CHECK(expect_violation(doc).mentions("objects.object01.size"));
}

TEST_CASE("confidence above one is rejected")
{
    Json doc = demo_doc();
    doc["objects"]["object01"]["confidence"] = 1.5;
    const auto e = expect_violation(doc);
    CHECK(e.code() == ErrorCode::SchemaViolation);
    CHECK(e.mentions("objects.object01.confidence"));
}

TEST_CASE("confidence bounds are inclusive")
{
    for (double c : {0.0, 1.0}) {
        Json doc = demo_doc();
        doc["objects"]["object01"]["confidence"] = c;
        CHECK_NOTHROW(validate_scene_description(doc, kPhotos));
    }
    Json doc = demo_doc();
    doc["objects"]["object01"]["confidence"] = -0.01;
    CHECK(expect_violation(doc).mentions("objects.object01.confidence"));
}

TEST_CASE("unknown keys, missing keys and unknown photos are all rejected")
{
    Json extra = demo_doc();
    extra["humans"]["human01"]["mood"] = "happy";
    CHECK_THROWS_AS(validate_scene_description(extra, kPhotos), SchemaViolation);

    Json missing = demo_doc();
    missing["lighting"]["light01"].erase("direction_or_area");
    CHECK_THROWS_AS(validate_scene_description(missing, kPhotos), SchemaViolation);

    Json photo = demo_doc();
    photo["geography"]["geo01"]["images"] = {"photo01", "nope"};
    CHECK_THROWS_AS(validate_scene_description(photo, kPhotos), SchemaViolation);
}

TEST_CASE("every issue is reported, not just the first")
{
    Json doc = demo_doc();
    doc["objects"]["object01"]["size"] = "huge";
    doc["particles"]["particle01"]["intensity"] = "extreme";
    const auto e = expect_violation(doc);
    CHECK(e.mentions("objects.object01.size"));
    CHECK(e.mentions("particles.particle01.intensity"));
    CHECK(e.issues().size() >= 2);
}

TEST_CASE("valid corpus round-trips through serialization")
{
    int n = 0;
    for (const auto& entry : std::filesystem::directory_iterator(data_dir() / "schema" / "valid")) {
        CAPTURE(entry.path().filename().string());
        const SceneDescription a = validate_scene_description(testing::read_json_file(entry.path()), kPhotos);
        const Json again = parse_json(canonical_dump(to_json(a)));
        const SceneDescription b = validate_scene_description(again, kPhotos);
        CHECK(a == b);
        ++n;
    }
    CHECK(n == 10);
}

TEST_CASE("rejection completeness over every enum field")
{
    const Json base = demo_doc();
    const std::vector<std::vector<std::string>> fields = {
        {"event_summary", "environment"},       {"event_summary", "time_of_day"},
        {"event_summary", "weather"},           {"objects", "object02", "size"},
        {"humans", "human03", "count_type"},    {"geography", "geo02", "type"},
        {"geography", "geo01", "dynamic_state"}, {"lighting", "light02", "type"},
        {"lighting", "light03", "intensity"},   {"particles", "particle02", "type"},
        {"particles", "particle01", "intensity"}};
    std::mt19937 rng(7);
    const std::string alphabet = "abcdefghijklmnopqrstuvwxyz_ ";
    for (const auto& f : fields) {
        std::string path;
        for (const auto& part : f)
            path += (path.empty() ? "" : ".") + part;
        for (int trial = 0; trial < 25; ++trial) {
            std::string bogus = "x";
            const int len = 1 + int(rng() % 12);
            for (int i = 0; i < len; ++i)
                bogus += alphabet[rng() % alphabet.size()];
            if (trial == 0)
                bogus = "";
            if (trial == 1)
                bogus = "LOW";
            Json doc = base;
            Json* slot = &doc;
            for (const auto& part : f)
                slot = &(*slot)[part];
            *slot = bogus;
            CAPTURE(path);
            CAPTURE(bogus);
            CHECK(expect_violation(doc).mentions(path));
        }
    }
}

TEST_CASE("all disabled particle effects normalize to five low configs")
{
    const auto n = normalize_particle_config(effects({}));
    REQUIRE(n.configs.size() == 5);
    for (std::size_t i = 0; i < 5; ++i) {
        CHECK(n.configs[i].effect == kAllParticleEffects[i]);
        CHECK_FALSE(n.configs[i].enabled);
        CHECK(n.configs[i].intensity == Level::Low);
    }
    CHECK(n.warnings.empty());
}

TEST_CASE("several effects can be enabled at once")
{
    const auto n = normalize_particle_config(effects({{"snow", true, "high"}, {"fog", true, "low"}}));
    CHECK(n.configs[1].enabled);
    CHECK(n.configs[1].intensity == Level::High);
    CHECK(n.configs[2].enabled);
    CHECK(n.configs[2].intensity == Level::Low);
    CHECK(n.warnings.empty());
}

TEST_CASE("disabled effect with high intensity is coerced to low with a warning")
{
    const auto n = normalize_particle_config(effects({{"rain", false, "high"}}));
    CHECK_FALSE(n.configs[0].enabled);
    CHECK(n.configs[0].intensity == Level::Low);
    REQUIRE(n.warnings.size() == 1);
    CHECK(n.warnings[0].find("rain") != std::string::npos);
}

TEST_CASE("classifier documents with a missing effect or bad intensity are rejected")
{
    Json doc = effects({});
    doc["effects"].erase("cloud");
    CHECK_THROWS_AS(normalize_particle_config(doc), SchemaViolation);
    CHECK_THROWS_AS(normalize_particle_config(effects({{"snow", true, "extreme"}})), SchemaViolation);
}

TEST_CASE("canonical dump sorts keys and renders six decimals")
{
    const Json doc = {{"b", 1}, {"a", 0.5}, {"c", {{"z", -2.25}, {"y", Json::array({1.0, 2})}}}};
    CHECK(canonical_dump(doc) == R"({"a":0.500000,"b":1,"c":{"y":[1.000000,2],"z":-2.250000}})");
    CHECK_THROWS_AS(canonical_dump(Json(std::nan(""))), Error);
    CHECK_THROWS_AS(canonical_dump(Json(INFINITY)), Error);
}

TEST_CASE("quantize6 is a fixed point of canonical serialization")
{
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> d(-1e5, 1e5);
    for (int i = 0; i < 1000; ++i) {
        const double x = d(rng);
        const double q = quantize6(x);
        CHECK(std::abs(q - x) <= 5e-7 + 1e-9);
        CHECK(parse_json(canonical_dump(Json(x))).get<double>() == q);
        CHECK(quantize6(q) == q);
    }
}

TEST_CASE("syntax errors surface as schema violations at the root")
{
    try {
        parse_json("{\"a\": ");
        FAIL("accepted");
    } catch (const SchemaViolation& e) {
        CHECK(e.mentions("$"));
    }
}

TEST_CASE("geo locations are range checked")
{
    CHECK_NOTHROW(check_geo_location({90, -180, -10}));
    CHECK_THROWS_AS(check_geo_location({90.0001, 0, 0}), Error);
    CHECK_THROWS_AS(check_geo_location({0, 180.5, 0}), Error);
    CHECK_THROWS_AS(check_geo_location({0, 0, std::nan("")}), Error);
}
