// CLI run configuration: a flat key=value format mirroring the flags, with
// exact round-tripping (parse(to_text(c)) == c) and unknown keys rejected.
#pragma once

#include <cstdint>
#include <string>

namespace cheb {

struct RunConfig {
    std::string command;
    std::string set;
    std::string ref = "pi";
    std::string control = "residue q=4 classes=3 add= remove=";
    double x_max = 1e6;
    double height = 100.0;
    std::uint64_t q = 4;
    std::uint64_t index = 1;
    std::string ext = "s3_x3m2";
    double s_real = 2.0;
    double x_cut = 1e6;
    double grid_step = 0.01;
    bool allow_uncertified = false;
    std::string out;
    std::string csv;
    std::string json;
    std::string cache_dir;

    std::string to_text() const;
    static RunConfig from_text(const std::string& text); // throws parse_error

    bool operator==(const RunConfig&) const = default;
};

} // namespace cheb
