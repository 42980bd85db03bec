#include <forge/annotate/raster.hpp>
#include <forge/core/error.hpp>
#include <forge/pipeline/stage_log.hpp>

#include <algorithm>
#include <cstdio>

namespace forge {

namespace fs = std::filesystem;

std::string_view stage_title(Stage stage)
{
    switch (stage) {
    case Stage::PhotoAnalysis: return "Photo Analysis";
    case Stage::ElementGeneration: return "Element Generation";
    case Stage::PlacementRoute: return "Placement/Route Generation";
    }
    return "";
}

const ItemRecord* StageLog::find(std::string_view item_id) const
{
    for (const auto& it : items)
        if (it.item_id == item_id)
            return &it;
    return nullptr;
}

const StageLog& RunLog::stage(Stage s) const
{
    for (const auto& st : stages)
        if (st.stage == s)
            return st;
    throw Error(ErrorCode::InvalidArgument, "run log for " + event_id + " lacks stage " + std::string(to_string(s)));
}

Json run_log_to_json(const RunLog& log)
{
    Json stages = Json::array();
    for (const auto& st : log.stages) {
        Json items = Json::array();
        for (const auto& it : st.items) {
            Json item = {{"item_id", it.item_id}, {"wall_time_seconds", it.wall_time_seconds}, {"outcome", to_string(it.outcome)}};
            if (!it.detail.empty())
                item["detail"] = it.detail;
            items.push_back(std::move(item));
        }
        stages.push_back({{"stage", to_string(st.stage)}, {"wall_time_seconds", st.wall_time_seconds}, {"items", items}});
    }
    return {{"event_id", log.event_id}, {"total_wall_seconds", log.total_wall_seconds}, {"stages", stages}};
}

RunLog run_log_from_json(const Json& doc)
{
    try {
        RunLog log;
        log.event_id = doc.at("event_id").get<std::string>();
        log.total_wall_seconds = doc.at("total_wall_seconds").get<double>();
        for (const auto& s : doc.at("stages")) {
            StageLog st;
            st.stage = parse_enum<Stage>(s.at("stage").get<std::string>());
            st.wall_time_seconds = s.at("wall_time_seconds").get<double>();
            for (const auto& i : s.at("items"))
                st.items.push_back({i.at("item_id").get<std::string>(), i.at("wall_time_seconds").get<double>(),
                                    parse_enum<Outcome>(i.at("outcome").get<std::string>()), i.value("detail", "")});
            log.stages.push_back(std::move(st));
        }
        return log;
    } catch (const Json::exception& e) {
        throw Error(ErrorCode::InvalidArgument, std::string("stage log: ") + e.what());
    }
}

RunLog load_run_log(const fs::path& file)
{
    const Bytes raw = read_file(file);
    return run_log_from_json(parse_json(std::string_view(reinterpret_cast<const char*>(raw.data()), raw.size())));
}

std::vector<RunLog> load_run_logs(const fs::path& dir)
{
    std::error_code ec;
    if (!fs::is_directory(dir, ec))
        throw Error(ErrorCode::IoError, dir.string() + " is not a directory");
    std::vector<fs::path> files;
    for (const auto& entry : fs::recursive_directory_iterator(dir)) {
        const std::string name = entry.path().filename().string();
        if (entry.is_regular_file() && name.size() >= 14 && name.compare(name.size() - 14, 14, "stage_log.json") == 0)
            files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
    std::vector<RunLog> logs;
    for (const auto& f : files)
        logs.push_back(load_run_log(f));
    return logs;
}

std::string fixed2(double value)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.2f", value);
    return buf;
}

FeasibilityReport feasibility_report(const std::vector<RunLog>& logs)
{
    if (logs.empty())
        throw Error(ErrorCode::InvalidArgument, "feasibility report needs at least one run");
    FeasibilityReport rep;
    rep.runs = logs.size();
    const double n = double(logs.size());
    for (Stage s : {Stage::PhotoAnalysis, Stage::ElementGeneration, Stage::PlacementRoute}) {
        ReportRow row;
        row.stage = std::string(stage_title(s));
        double seconds = 0, items = 0;
        for (const auto& log : logs) {
            const StageLog& st = log.stage(s);
            seconds += st.wall_time_seconds;
            items += double(st.items.size());
            for (const auto& it : st.items) {
                if (it.outcome == Outcome::Ok)
                    ++row.ok;
                else if (it.outcome == Outcome::Failed)
                    ++row.failed;
                else
                    ++row.manual;
            }
        }
        row.minutes = seconds / n / 60.0;
        row.count = items / n;
        row.success_rate = row.ok + row.failed ? 100.0 * double(row.ok) / double(row.ok + row.failed) : 0.0;
        rep.stages.push_back(row);
    }
    double total = 0;
    for (const auto& log : logs)
        total += log.total_wall_seconds;
    rep.end_to_end_minutes = total / n / 60.0;
    return rep;
}

std::string FeasibilityReport::to_text() const
{
    std::vector<std::array<std::string, 4>> rows{{"Stage", "Time (min)", "Count", "Success Rate (%)"}};
    for (const auto& r : stages)
        rows.push_back({r.stage, fixed2(r.minutes), fixed2(r.count), r.ok + r.failed ? fixed2(r.success_rate) : "--"});
    rows.push_back({"End-to-End", fixed2(end_to_end_minutes), "--", "--"});

    std::array<std::size_t, 4> width{};
    for (const auto& row : rows)
        for (std::size_t c = 0; c < 4; ++c)
            width[c] = std::max(width[c], row[c].size());

    auto line = [&](const std::array<std::string, 4>& row) {
        std::string out = row[0] + std::string(width[0] - row[0].size(), ' ');
        for (std::size_t c = 1; c < 4; ++c)
            out += " | " + std::string(width[c] - row[c].size(), ' ') + row[c];
        return out + "\n";
    };
    std::string rule;
    for (std::size_t c = 0; c < 4; ++c)
        rule += (c ? "-+-" : "") + std::string(width[c], '-');
    rule += "\n";

    std::string out = line(rows[0]) + rule;
    for (std::size_t i = 1; i + 1 < rows.size(); ++i)
        out += line(rows[i]);
    out += rule + line(rows.back());

    std::string manual;
    for (const auto& r : stages)
        if (r.manual)
            manual += (manual.empty() ? "" : ", ") + r.stage + " " + std::to_string(r.manual);
    if (!manual.empty())
        out += "Manually flagged (excluded from rates): " + manual + "\n";
    return out;
}

Json FeasibilityReport::to_json() const
{
    Json rows = Json::array();
    for (const auto& r : stages)
        rows.push_back({{"stage", r.stage},
                        {"time_min", fixed2(r.minutes)},
                        {"count", fixed2(r.count)},
                        {"success_rate", r.ok + r.failed ? Json(fixed2(r.success_rate)) : Json(nullptr)},
                        {"ok", r.ok},
                        {"failed", r.failed},
                        {"manual_flag", r.manual}});
    return {{"runs", runs}, {"stages", rows}, {"end_to_end", {{"stage", "End-to-End"}, {"time_min", fixed2(end_to_end_minutes)}}}};
}

}  // namespace forge
