#pragma once

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <random>
#include <string>

namespace testutil {

inline std::filesystem::path fixture_dir() {
    return std::filesystem::path(NATURISK_FIXTURE_DIR);
}

inline std::filesystem::path fixture_config() {
    return fixture_dir() / "scenario.cfg";
}

// unique scratch directory, removed on destruction
struct TempDir {
    std::filesystem::path path;

    explicit TempDir(const std::string& tag) {
        static std::mt19937_64 rng{std::random_device{}()};
        path = std::filesystem::temp_directory_path() /
               ("naturisk_" + tag + "_" + std::to_string(rng()));
        std::filesystem::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;
};

inline bool rel_close(double a, double b, double tol) {
    if (a == b)
        return true;
    double scale = std::max(std::abs(a), std::abs(b));
    return std::abs(a - b) <= tol * scale;
}

} // namespace testutil
