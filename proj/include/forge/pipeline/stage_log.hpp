#pragma once

#include <forge/core/canonical_json.hpp>
#include <forge/core/enum_names.hpp>

#include <filesystem>
#include <string>
#include <vector>

namespace forge {

enum class Stage { PhotoAnalysis, ElementGeneration, PlacementRoute };
enum class Outcome { Ok, Failed, ManualFlag };

template <>
struct EnumNames<Stage> {
    static constexpr std::array<std::string_view, 3> names{"photo_analysis", "element_generation", "placement_route"};
};
template <>
struct EnumNames<Outcome> {
    static constexpr std::array<std::string_view, 3> names{"ok", "failed", "manual_flag"};
};

/// Table row label for a stage.
std::string_view stage_title(Stage stage);

struct ItemRecord {
    std::string item_id;
    double wall_time_seconds = 0.0;
    Outcome outcome = Outcome::Ok;
    std::string detail;  // failure reason or manual note
    bool operator==(const ItemRecord&) const = default;
};

struct StageLog {
    Stage stage = Stage::PhotoAnalysis;
    double wall_time_seconds = 0.0;
    std::vector<ItemRecord> items;  // ordered by item id
    bool operator==(const StageLog&) const = default;

    const ItemRecord* find(std::string_view item_id) const;
};

struct RunLog {
    std::string event_id;
    double total_wall_seconds = 0.0;
    std::vector<StageLog> stages;  // one per stage, in stage order
    bool operator==(const RunLog&) const = default;

    const StageLog& stage(Stage s) const;
};

Json run_log_to_json(const RunLog& log);
RunLog run_log_from_json(const Json& doc);
RunLog load_run_log(const std::filesystem::path& file);

/// Every *stage_log.json under `dir`, in path order.
std::vector<RunLog> load_run_logs(const std::filesystem::path& dir);

struct ReportRow {
    std::string stage;
    double minutes = 0.0;
    double count = 0.0;                 // mean items per run
    double success_rate = 0.0;          // ok / (ok + failed), percent
    std::size_t ok = 0;
    std::size_t failed = 0;
    std::size_t manual = 0;
};

struct FeasibilityReport {
    std::size_t runs = 0;
    std::vector<ReportRow> stages;
    double end_to_end_minutes = 0.0;

    std::string to_text() const;
    Json to_json() const;
};

/// Throws InvalidArgument for an empty log list.
FeasibilityReport feasibility_report(const std::vector<RunLog>& logs);

/// Two-decimal rendering used by the report.
std::string fixed2(double value);

}  // namespace forge
