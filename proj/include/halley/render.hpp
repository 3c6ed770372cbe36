#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "halley/dynamics.hpp"

namespace halley {

struct Rgb {
    std::uint8_t r = 0;
    std::uint8_t g = 0;
    std::uint8_t b = 0;

    friend bool operator==(const Rgb&, const Rgb&) = default;
};

struct ColorMap {
    std::vector<Rgb> roots;
    Rgb cycle{40, 40, 40};
    Rgb undecided{0, 0, 0};
    /// Brightness is scaled by (1 - shading)^(iterations / max_iter).
    double shading = 0.0;

    /// Golden-angle hues, one per root.
    static ColorMap golden(int root_count, double shading = 0.35);
};

/// Binary PPM bytes for the grid. Throws InvalidArgument when a root label
/// has no palette entry.
std::string encode_ppm(const BasinGrid& grid, const ColorMap& cmap);

/// Writes encode_ppm() to `path`. Throws IOFailure.
void write_image(const BasinGrid& grid, const ColorMap& cmap, const std::filesystem::path& path);

struct PpmImage {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> pixels;  // RGB, row-major
};

/// Reads a binary P6 file with maxval 255. Throws IOFailure.
PpmImage read_ppm(const std::filesystem::path& path);

}  // namespace halley
