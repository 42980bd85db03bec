#pragma once

#include <forge/annotate/raster.hpp>
#include <forge/core/canonical_json.hpp>

#include <doctest.h>

#include <unistd.h>

#include <algorithm>
#include <filesystem>
#include <random>
#include <string>

namespace testing {

namespace fs = std::filesystem;

inline fs::path source_dir() { return FORGE_SOURCE_DIR; }
inline fs::path data_dir() { return source_dir() / "tests" / "data"; }
inline fs::path fixtures_dir() { return source_dir() / "fixtures"; }

/// Fresh empty directory under the system temp dir, removed on destruction.
class TempDir {
public:
    explicit TempDir(const std::string& tag)
    {
        static int counter = 0;
        path_ = fs::temp_directory_path() /
                ("forge_test_" + tag + "_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
        fs::remove_all(path_);
        fs::create_directories(path_);
    }
    ~TempDir()
    {
        std::error_code ec;
        fs::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;
    const fs::path& path() const { return path_; }
    fs::path operator/(const std::string& p) const { return path_ / p; }

private:
    fs::path path_;
};

inline forge::Json read_json_file(const fs::path& file)
{
    const forge::Bytes raw = forge::read_file(file);
    return forge::parse_json(std::string_view(reinterpret_cast<const char*>(raw.data()), raw.size()));
}

inline std::string read_text(const fs::path& file)
{
    const forge::Bytes raw = forge::read_file(file);
    return std::string(raw.begin(), raw.end());
}

/// Recursive byte comparison of two directory trees; returns the first
/// difference, or an empty string when identical.
inline std::string tree_difference(const fs::path& a, const fs::path& b)
{
    std::vector<fs::path> la, lb;
    for (const auto& e : fs::recursive_directory_iterator(a))
        la.push_back(fs::relative(e.path(), a));
    for (const auto& e : fs::recursive_directory_iterator(b))
        lb.push_back(fs::relative(e.path(), b));
    std::sort(la.begin(), la.end());
    std::sort(lb.begin(), lb.end());
    if (la != lb)
        return "file lists differ";
    for (const auto& rel : la) {
        if (fs::is_directory(a / rel))
            continue;
        if (forge::read_file(a / rel) != forge::read_file(b / rel))
            return rel.string();
    }
    return {};
}

}  // namespace testing
