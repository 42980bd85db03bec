#pragma once

#include <forge/core/canonical_json.hpp>
#include <forge/core/error.hpp>
#include <forge/geometry/types.hpp>

#include <Eigen/Core>

#include <algorithm>
#include <cmath>
#include <filesystem>

namespace forge {

/// Regular elevation grid. Row j lies at north = origin_north + j * cell_size,
/// column i at east = origin_east + i * cell_size. Queries between nodes are
/// bilinear; queries outside the grid clamp to the nearest edge.
template <typename Scalar>
class Heightfield {
public:
    using Grid = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

    Heightfield() : Heightfield(Grid::Zero(2, 2), 0, 0, 1) {}

    Heightfield(Grid heights, Scalar origin_east, Scalar origin_north, Scalar cell_size)
        : heights_(std::move(heights)), origin_east_(origin_east), origin_north_(origin_north), cell_size_(cell_size)
    {
        if (heights_.rows() < 2 || heights_.cols() < 2)
            throw Error(ErrorCode::InvalidArgument, "heightfield grid must be at least 2x2");
        if (!(cell_size_ > 0))
            throw Error(ErrorCode::InvalidArgument, "heightfield cell size must be positive");
        if (!heights_.allFinite())
            throw Error(ErrorCode::InvalidArgument, "heightfield heights must be finite");
    }

    /// Flat field covering a square of `half_extent` around the origin.
    static Heightfield flat(Scalar height, Scalar half_extent)
    {
        return Heightfield(Grid::Constant(2, 2, height), -half_extent, -half_extent, 2 * half_extent);
    }

    Scalar height(Scalar east, Scalar north) const
    {
        const Scalar x = std::clamp((east - origin_east_) / cell_size_, Scalar(0), Scalar(heights_.cols() - 1));
        const Scalar y = std::clamp((north - origin_north_) / cell_size_, Scalar(0), Scalar(heights_.rows() - 1));
        const Eigen::Index i = std::min<Eigen::Index>(static_cast<Eigen::Index>(std::floor(x)), heights_.cols() - 2);
        const Eigen::Index j = std::min<Eigen::Index>(static_cast<Eigen::Index>(std::floor(y)), heights_.rows() - 2);
        const Scalar tx = x - Scalar(i);
        const Scalar ty = y - Scalar(j);
        const Scalar south = (1 - tx) * heights_(j, i) + tx * heights_(j, i + 1);
        const Scalar northrow = (1 - tx) * heights_(j + 1, i) + tx * heights_(j + 1, i + 1);
        return (1 - ty) * south + ty * northrow;
    }

    Scalar height(const Vector2<Scalar>& ground) const { return height(ground.x(), ground.y()); }

    const Grid& heights() const { return heights_; }
    Scalar origin_east() const { return origin_east_; }
    Scalar origin_north() const { return origin_north_; }
    Scalar cell_size() const { return cell_size_; }

    bool operator==(const Heightfield& o) const
    {
        return heights_.rows() == o.heights_.rows() && heights_.cols() == o.heights_.cols() &&
               heights_ == o.heights_ && origin_east_ == o.origin_east_ && origin_north_ == o.origin_north_ &&
               cell_size_ == o.cell_size_;
    }

private:
    Grid heights_;
    Scalar origin_east_;
    Scalar origin_north_;
    Scalar cell_size_;
};

using TerrainModel = Heightfield<double>;

inline double terrain_height(const TerrainModel& terrain, double east, double north)
{
    return terrain.height(east, north);
}

/// Heightfield fixture format: {"origin": {"east", "north"}, "cell_size",
/// "columns", "rows", "heights": [row-major, south row first]}.
Json terrain_to_json(const TerrainModel& terrain);
TerrainModel terrain_from_json(const Json& doc);
TerrainModel load_terrain(const std::filesystem::path& file);

}  // namespace forge
