#include <forge/geometry/terrain.hpp>

#include <fstream>
#include <sstream>

namespace forge {

Json terrain_to_json(const TerrainModel& terrain)
{
    const auto& h = terrain.heights();
    Json heights = Json::array();
    for (Eigen::Index j = 0; j < h.rows(); ++j)
        for (Eigen::Index i = 0; i < h.cols(); ++i)
            heights.push_back(h(j, i));
    return {
        {"origin", {{"east", terrain.origin_east()}, {"north", terrain.origin_north()}}},
        {"cell_size", terrain.cell_size()},
        {"columns", h.cols()},
        {"rows", h.rows()},
        {"heights", std::move(heights)},
    };
}

TerrainModel terrain_from_json(const Json& doc)
{
    try {
        const auto cols = doc.at("columns").get<Eigen::Index>();
        const auto rows = doc.at("rows").get<Eigen::Index>();
        const auto& values = doc.at("heights");
        if (rows < 2 || cols < 2 || !values.is_array() || values.size() != static_cast<std::size_t>(rows * cols))
            throw Error(ErrorCode::InvalidArgument, "heightfield dimensions do not match heights array");
        TerrainModel::Grid grid(rows, cols);
        for (Eigen::Index j = 0; j < rows; ++j)
            for (Eigen::Index i = 0; i < cols; ++i)
                grid(j, i) = values[static_cast<std::size_t>(j * cols + i)].get<double>();
        return TerrainModel(std::move(grid), doc.at("origin").at("east").get<double>(),
                            doc.at("origin").at("north").get<double>(), doc.at("cell_size").get<double>());
    } catch (const Json::exception& e) {
        throw Error(ErrorCode::InvalidArgument, std::string("malformed heightfield: ") + e.what());
    }
}

TerrainModel load_terrain(const std::filesystem::path& file)
{
    std::ifstream in(file, std::ios::binary);
    if (!in)
        throw Error(ErrorCode::IoError, "cannot open heightfield " + file.string());
    std::stringstream ss;
    ss << in.rdbuf();
    return terrain_from_json(parse_json(ss.str()));
}

}  // namespace forge
