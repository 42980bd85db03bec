// forge: photos in, scene manifest out.

#include <CLI11.hpp>

#include <forge/core/error.hpp>
#include <forge/pipeline/pipeline.hpp>

#include <cstdio>
#include <iostream>

namespace fs = std::filesystem;
using namespace forge;

namespace {

struct RunArgs {
    std::string input, out, mode, fixtures, config;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> max_parallel;
};

void add_run_options(CLI::App* cmd, RunArgs& a)
{
    cmd->add_option("--input", a.input, "Directory of event photos")->required()->check(CLI::ExistingDirectory);
    cmd->add_option("--out", a.out, "Output root; results go to <out>/<event_id>")->required();
    cmd->add_option("--mode", a.mode, "live, record or replay")->check(CLI::IsMember({"live", "record", "replay"}));
    cmd->add_option("--fixtures", a.fixtures, "Fixture store directory");
    cmd->add_option("--seed", a.seed, "Pipeline seed");
    cmd->add_option("--config", a.config, "JSON config file")->check(CLI::ExistingFile);
    cmd->add_option("--max-parallel", a.max_parallel, "Concurrent provider requests")->check(CLI::PositiveNumber);
}

PipelineConfig make_config(const RunArgs& a)
{
    PipelineConfig c = a.config.empty() ? PipelineConfig{} : load_config(a.config);
    if (!a.mode.empty())
        c.mode = parse_enum<StoreMode>(a.mode);
    if (!a.fixtures.empty())
        c.fixtures_dir = a.fixtures;
    if (a.seed)
        c.seed = *a.seed;
    if (a.max_parallel)
        c.max_parallel_requests = *a.max_parallel;
    c.check();
    return c;
}

void print_stage(const StageLog& st)
{
    std::size_t ok = 0, failed = 0, manual = 0;
    for (const auto& it : st.items) {
        if (it.outcome == Outcome::Ok)
            ++ok;
        else if (it.outcome == Outcome::Failed)
            ++failed;
        else
            ++manual;
    }
    std::printf("%-27s %zu ok, %zu failed, %zu flagged\n", std::string(stage_title(st.stage)).c_str(), ok, failed, manual);
    for (const auto& it : st.items)
        if (it.outcome == Outcome::Failed)
            std::printf("  %s: %s\n", it.item_id.c_str(), it.detail.c_str());
}

void write_phase_log(const fs::path& out_root, const std::string& event_id, const std::string& phase,
                     const std::vector<StageLog>& stages)
{
    RunLog log{event_id, 0.0, stages};
    for (const auto& s : stages)
        log.total_wall_seconds += s.wall_time_seconds;
    const std::string text = canonical_dump(run_log_to_json(log));
    write_file(out_root / (event_id + "." + phase + "_log.json"),
               std::span(reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
}

int cmd_run(const RunArgs& a)
{
    const auto result = run_pipeline(a.input, a.out, make_config(a));
    for (const auto& st : result.log.stages)
        print_stage(st);
    std::printf("wrote %s\n", result.out_dir.string().c_str());
    return 0;
}

int cmd_analyze(const RunArgs& a)
{
    const PhotoCollection photos = load_collection(a.input);
    PipelineContext ctx(make_config(a), a.input);
    StageLog log;
    const Analysis analysis = run_analysis(photos, ctx, log);
    const fs::path dir = fs::path(a.out) / photos.event_id;
    write_intermediates(dir, analysis, {}, ctx, true);
    write_phase_log(a.out, photos.event_id, "analyze", {log});
    print_stage(log);
    return 0;
}

int cmd_place(const RunArgs& a)
{
    PipelineContext ctx(make_config(a), a.input);
    const PhotoCollection photos = load_collection(a.input);
    const fs::path dir = fs::path(a.out) / photos.event_id;
    const Analysis analysis = load_analysis(dir, a.input);
    ElementArtifacts art;
    StageLog gen, place;
    run_generation(analysis, ctx, art, gen);
    run_placement(analysis, ctx, art, place);
    write_intermediates(dir, analysis, art, ctx, true);
    write_phase_log(a.out, photos.event_id, "place", {gen, place});
    print_stage(gen);
    print_stage(place);
    return 0;
}

int cmd_compose(const RunArgs& a)
{
    PipelineContext ctx(make_config(a), a.input);
    const PhotoCollection photos = load_collection(a.input);
    const fs::path dir = fs::path(a.out) / photos.event_id;
    const Analysis analysis = load_analysis(dir, a.input);
    const ElementArtifacts art = load_artifacts(dir);
    StageLog place{Stage::PlacementRoute, 0.0, {}};
    for (const auto& [id, mark] : art.marks)
        place.items.push_back({id, 0.0, Outcome::Ok, ""});
    const SceneManifest m = compose_scene(analysis, art, ctx, place, load_request_digests(dir));
    emit(m, dir);
    for (const auto& it : place.items)
        if (it.outcome == Outcome::Failed)
            std::printf("  %s: %s\n", it.item_id.c_str(), it.detail.c_str());
    std::printf("wrote %s\n", (dir / "scene.json").string().c_str());
    return 0;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"forge: turn a small set of event photos into an animated diorama scene manifest"};
    app.require_subcommand(1);

    RunArgs run_args, analyze_args, place_args, compose_args;
    auto* run = app.add_subcommand("run", "Run every phase and write <out>/<event_id>");
    add_run_options(run, run_args);
    auto* analyze = app.add_subcommand("analyze", "Photo analysis only: scene_description.json, anchor.json");
    add_run_options(analyze, analyze_args);
    auto* place = app.add_subcommand("place", "Element generation and annotation from an analyzed event");
    add_run_options(place, place_args);
    auto* compose = app.add_subcommand("compose", "Compose scene.json from analyzed and placed intermediates");
    add_run_options(compose, compose_args);

    std::string runs_dir, format = "text";
    auto* report = app.add_subcommand("report", "Feasibility table over stage logs");
    report->add_option("--runs", runs_dir, "Directory searched recursively for *stage_log.json")
        ->required()
        ->check(CLI::ExistingDirectory);
    report->add_option("--format", format, "text or json")->check(CLI::IsMember({"text", "json"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    try {
        if (*run)
            return cmd_run(run_args);
        if (*analyze)
            return cmd_analyze(analyze_args);
        if (*place)
            return cmd_place(place_args);
        if (*compose)
            return cmd_compose(compose_args);
        if (*report) {
            const auto rep = feasibility_report(load_run_logs(runs_dir));
            if (format == "json")
                std::cout << rep.to_json().dump(2) << "\n";
            else
                std::cout << rep.to_text();
            return 0;
        }
    } catch (const Error& e) {
        std::fprintf(stderr, "forge: %s\n", e.what());
        return e.code() == ErrorCode::InvalidArgument ? 1 : 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "forge: %s\n", e.what());
        return 2;
    }
    return 1;
}
