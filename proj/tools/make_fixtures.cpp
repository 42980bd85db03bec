// Regenerates the shipped fixtures: the demo event and its recorded
// provider store, the stock figure catalog, the asymmetric base map, the
// scene-description schema corpus and the feasibility corpus logs.
//
//   make_fixtures <repo root>

#include "synthetic/synthetic.hpp"

#include <forge/core/error.hpp>
#include <forge/geometry/basemap.hpp>
#include <forge/pipeline/pipeline.hpp>

#include <cstdio>
#include <iostream>

namespace fs = std::filesystem;
using namespace forge;
using namespace forge::synthetic;

namespace {

void write_text(const fs::path& file, const std::string& text)
{
    fs::create_directories(file.parent_path());
    write_file(file, std::span(reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
}

void make_demo(const fs::path& fixtures)
{
    const DemoEvent ev = demo_event();
    const fs::path event_dir = fixtures / ev.event_id;
    fs::remove_all(event_dir);
    write_demo_photos(ev, event_dir);

    fs::remove_all(fixtures / "stock");
    write_stock_catalog(fixtures / "stock");

    const Json config = {{"mode", "replay"},
                         {"fixtures_dir", "demo_store"},
                         {"seed", 42},
                         {"stock_catalog", "stock"},
                         {"camera",
                          {{"extent_east", ev.camera.extent_east},
                           {"extent_north", ev.camera.extent_north},
                           {"image_width", ev.camera.image_width},
                           {"image_height", ev.camera.image_height}}}};
    write_text(fixtures / "demo_config.json", config.dump(2) + "\n");

    // Record the store by running the whole pipeline against the scripted
    // services; only requests the run consumes end up in the store.
    fs::remove_all(fixtures / "demo_store");
    PipelineConfig cfg = load_config(fixtures / "demo_config.json");
    cfg.mode = StoreMode::Record;
    const fs::path scratch = fs::temp_directory_path() / "forge_make_fixtures";
    fs::remove_all(scratch);
    RunHooks hooks;
    hooks.transport = demo_transport(ev);
    hooks.clock = [] { return std::string("2025-08-02T09:30:00Z"); };
    const RunResult r = run_pipeline(event_dir, scratch, cfg, hooks);
    for (const auto& st : r.log.stages)
        for (const auto& it : st.items)
            if (it.outcome != Outcome::Ok)
                throw Error(ErrorCode::InvalidArgument, "demo item " + it.item_id + " did not succeed: " + it.detail);
    fs::remove_all(scratch);

    write_file(fixtures / "basemap_512.png", encode_png(render_base_map(demo_terrain(), ev.camera)));
}

// ---- schema corpus ----------------------------------------------------------

Json empty_scene()
{
    return {{"event_summary",
             {{"scene_type", "unknown"},
              {"location_context", ""},
              {"environment", "unknown"},
              {"time_of_day", "unknown"},
              {"weather", "unknown"},
              {"overall_description", ""}}},
            {"objects", Json::object()},
            {"humans", Json::object()},
            {"geography", Json::object()},
            {"lighting", Json::object()},
            {"particles", Json::object()}};
}

void make_schema_corpus(const fs::path& dir)
{
    fs::remove_all(dir);
    const Json demo = parse_json(demo_event().scene_json);
    std::vector<std::pair<std::string, Json>> valid;
    valid.emplace_back("all_empty_layers", empty_scene());
    valid.emplace_back("beach_festival", demo);

    Json night = empty_scene();
    night["event_summary"]["time_of_day"] = "night";
    night["event_summary"]["weather"] = "rainy";
    night["lighting"]["light01"] = {{"images", {"photo01"}}, {"type", "streetlight"}, {"description", "sodium lamp"},
                                    {"intensity", "high"}, {"direction_or_area", "left curb"}, {"confidence", 1.0}};
    night["particles"]["particle01"] = {{"images", {"photo01"}}, {"type", "rain"}, {"description", "steady rain"},
                                        {"intensity", "high"}, {"confidence", 0.0}};
    valid.emplace_back("rainy_night_street", night);

    Json indoor = empty_scene();
    indoor["event_summary"]["environment"] = "indoor";
    indoor["objects"]["object01"] = {{"images", {"photo02"}}, {"label", "piano"}, {"description", "black grand piano"},
                                     {"animation", "static"}, {"size", "medium"}, {"confidence", 0.5}};
    indoor["lighting"]["light01"] = {{"images", Json::array()}, {"type", "indoor_light"}, {"description", "warm ceiling"},
                                     {"intensity", "unknown"}, {"direction_or_area", "overhead"}, {"confidence", 0.3}};
    valid.emplace_back("indoor_recital", indoor);

    Json snow = empty_scene();
    snow["event_summary"]["weather"] = "snowy";
    snow["event_summary"]["time_of_day"] = "overcast_day";
    snow["geography"]["geo01"] = {{"images", {"photo03"}}, {"type", "snowfield"}, {"description", "deep snow"},
                                  {"dynamic_state", "static"}, {"confidence", 0.9}};
    snow["particles"]["particle01"] = {{"images", {"photo03"}}, {"type", "snow"}, {"description", "flurries"},
                                       {"intensity", "low"}, {"confidence", 0.7}};
    valid.emplace_back("snowfield", snow);

    Json river = empty_scene();
    river["geography"]["geo01"] = {{"images", {"photo01", "photo02"}}, {"type", "river"}, {"description", "wide river"},
                                   {"dynamic_state", "flowing"}, {"confidence", 0.8}};
    river["geography"]["geo02"] = {{"images", {"photo02"}}, {"type", "bridge"}, {"description", "iron bridge"},
                                   {"dynamic_state", "unknown"}, {"confidence", 0.6}};
    valid.emplace_back("river_bridge", river);

    Json crowd = empty_scene();
    crowd["humans"]["human01"] = {{"images", {"photo04"}}, {"count_type", "group"}, {"description", "marathon runners"},
                                  {"animation", "running"}, {"pose_or_activity", "racing"}, {"confidence", 0.95}};
    crowd["geography"]["geo01"] = {{"images", {"photo04"}}, {"type", "road"}, {"description", "closed avenue"},
                                   {"dynamic_state", "static"}, {"confidence", 0.9}};
    valid.emplace_back("marathon", crowd);

    Json park = empty_scene();
    park["event_summary"]["environment"] = "mixed";
    park["event_summary"]["weather"] = "windy";
    park["particles"]["particle01"] = {{"images", {"photo05"}}, {"type", "falling_leaves"}, {"description", "maple leaves"},
                                       {"intensity", "medium"}, {"confidence", 0.6}};
    park["geography"]["geo01"] = {{"images", {"photo05"}}, {"type", "park"}, {"description", "lawn and trees"},
                                  {"dynamic_state", "static"}, {"confidence", 0.8}};
    valid.emplace_back("autumn_park", park);

    Json station = empty_scene();
    station["event_summary"]["time_of_day"] = "sunrise";
    station["objects"]["object01"] = {{"images", {"photo01"}}, {"label", "train"}, {"description", "commuter train"},
                                      {"animation", "driving"}, {"size", "large"}, {"confidence", 0.85}};
    station["geography"]["geo01"] = {{"images", {"photo01"}}, {"type", "station"}, {"description", "two platforms"},
                                     {"dynamic_state", "unknown"}, {"confidence", 0.75}};
    valid.emplace_back("morning_station", station);

    Json mountain = empty_scene();
    mountain["event_summary"]["weather"] = "foggy";
    mountain["geography"]["geo01"] = {{"images", {"photo02"}}, {"type", "mountain"}, {"description", "rocky ridge"},
                                      {"dynamic_state", "static"}, {"confidence", 0.65}};
    mountain["particles"]["particle01"] = {{"images", {"photo02"}}, {"type", "fog"}, {"description", "valley fog"},
                                           {"intensity", "high"}, {"confidence", 0.7}};
    mountain["particles"]["particle02"] = {{"images", {"photo02"}}, {"type", "none"}, {"description", ""},
                                           {"intensity", "low"}, {"confidence", 0.1}};
    valid.emplace_back("foggy_ridge", mountain);

    std::vector<std::pair<std::string, Json>> invalid;
    auto mutate = [&](const std::string& name, auto&& fn) {
        Json d = demo;
        fn(d);
        invalid.emplace_back(name, d);
    };
    mutate("missing_event_summary", [](Json& d) { d.erase("event_summary"); });
    mutate("unknown_top_level_key", [](Json& d) { d["vehicles"] = Json::object(); });
    mutate("environment_out_of_enum", [](Json& d) { d["event_summary"]["environment"] = "underwater"; });
    mutate("object_size_out_of_enum", [](Json& d) { d["objects"]["object01"]["size"] = "huge"; });
    mutate("human_count_type_out_of_enum", [](Json& d) { d["humans"]["human01"]["count_type"] = "pair"; });
    mutate("geo_type_out_of_enum", [](Json& d) { d["geography"]["geo01"]["type"] = "desert"; });
    mutate("light_intensity_out_of_enum", [](Json& d) { d["lighting"]["light01"]["intensity"] = "blinding"; });
    mutate("particle_type_out_of_enum", [](Json& d) { d["particles"]["particle01"]["type"] = "sand"; });
    mutate("confidence_above_one", [](Json& d) { d["objects"]["object02"]["confidence"] = 1.5; });
    mutate("unknown_photo_reference", [](Json& d) { d["humans"]["human02"]["images"] = {"photo09"}; });

    int k = 1;
    for (const auto& [name, doc] : valid) {
        char file[96];
        std::snprintf(file, sizeof file, "%02d_%s.json", k++, name.c_str());
        write_text(dir / "valid" / file, doc.dump(2) + "\n");
    }
    k = 1;
    for (const auto& [name, doc] : invalid) {
        char file[96];
        std::snprintf(file, sizeof file, "%02d_%s.json", k++, name.c_str());
        write_text(dir / "invalid" / file, doc.dump(2) + "\n");
    }
}

// ---- feasibility corpus -----------------------------------------------------

// Deterministic split of `total` into `n` positive integer parts that vary
// around the mean.
std::vector<long> split(long total, int n, int salt)
{
    std::vector<long> parts(n, total / n);
    for (int i = 0; i < total % n; ++i)
        ++parts[i];
    for (int i = 0; i + 1 < n; i += 2) {
        const long d = std::min<long>(parts[i] / 4, ((i * 37 + salt * 11) % 9) * parts[i] / 40);
        parts[i] -= d;
        parts[i + 1] += d;
    }
    return parts;
}

void make_corpus(const fs::path& dir)
{
    fs::remove_all(dir);
    constexpr int kRuns = 25;
    const auto photo_s = split(435, kRuns, 1);
    const auto gen_s = split(16440, kRuns, 2);
    const auto place_s = split(6675, kRuns, 3);

    // 256 generation items (6 runs of 11, 19 of 10) with 19 failures;
    // 295 placement items (20 runs of 12, 5 of 11) with 73 failures.
    int gen_fail_left = 19, place_fail_left = 73;
    for (int r = 0; r < kRuns; ++r) {
        char event[32];
        std::snprintf(event, sizeof event, "event%02d", r + 1);
        RunLog log;
        log.event_id = event;

        StageLog photo{Stage::PhotoAnalysis, double(photo_s[r]), {{"scene", double(photo_s[r]), Outcome::Ok, ""}}};

        const int gen_n = r < 6 ? 11 : 10;
        const int gen_fail = std::min(gen_fail_left, (r * 7) % 25 < 19 ? 1 : 0);
        gen_fail_left -= gen_fail;
        StageLog gen{Stage::ElementGeneration, double(gen_s[r]), {}};
        for (int i = 0; i < gen_n; ++i) {
            char id[32];
            std::snprintf(id, sizeof id, "element%02d", i + 1);
            const bool fail = i >= gen_n - gen_fail;
            gen.items.push_back({id, double(gen_s[r]) / gen_n, fail ? Outcome::Failed : Outcome::Ok,
                                 fail ? "MalformedPayload: mesh payload is not binary glTF 2.0" : ""});
        }

        const int place_n = r < 20 ? 12 : 11;
        const int place_fail = std::min(place_fail_left, r == 7 || r == 19 ? 2 : 3);
        place_fail_left -= place_fail;
        StageLog place{Stage::PlacementRoute, double(place_s[r]), {}};
        for (int i = 0; i < place_n; ++i) {
            char id[32];
            std::snprintf(id, sizeof id, "element%02d", i + 1);
            const bool fail = i >= place_n - place_fail;
            place.items.push_back({id, double(place_s[r]) / place_n, fail ? Outcome::Failed : Outcome::Ok,
                                   fail ? (i % 2 ? "alignment: score 0.412 below 0.70" : "MissingAnnotation: no red mark")
                                        : ""});
        }

        log.stages = {photo, gen, place};
        log.total_wall_seconds = double(photo_s[r] + gen_s[r] + place_s[r]);
        write_text(dir / (std::string(event) + ".stage_log.json"), canonical_dump(run_log_to_json(log)));
    }
    if (gen_fail_left != 0 || place_fail_left != 0)
        throw Error(ErrorCode::InvalidArgument, "corpus failure budget not exhausted: " + std::to_string(gen_fail_left) +
                                                    " / " + std::to_string(place_fail_left));
}

}  // namespace

int main(int argc, char** argv)
{
    if (argc != 2) {
        std::fprintf(stderr, "usage: make_fixtures <repo root>\n");
        return 1;
    }
    try {
        const fs::path root = argv[1];
        make_demo(root / "fixtures");
        make_schema_corpus(root / "tests" / "data" / "schema");
        make_corpus(root / "tests" / "data" / "feasibility_corpus");
    } catch (const std::exception& e) {
        std::fprintf(stderr, "make_fixtures: %s\n", e.what());
        return 2;
    }
    return 0;
}
