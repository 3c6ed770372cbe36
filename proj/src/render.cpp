#include "halley/render.hpp"

#include <cmath>
#include <fstream>

#include "halley/errors.hpp"

namespace halley {

namespace {

Rgb from_hsv(double h, double s, double v) {
    const double c = v * s;
    const double hp = h * 6.0;
    const double x = c * (1.0 - std::abs(std::fmod(hp, 2.0) - 1.0));
    double r = 0.0, g = 0.0, b = 0.0;
    switch (static_cast<int>(hp) % 6) {
        case 0: r = c; g = x; break;
        case 1: r = x; g = c; break;
        case 2: g = c; b = x; break;
        case 3: g = x; b = c; break;
        case 4: r = x; b = c; break;
        default: r = c; b = x; break;
    }
    const double m = v - c;
    auto byte = [](double u) { return static_cast<std::uint8_t>(std::lround(255.0 * u)); };
    return {byte(r + m), byte(g + m), byte(b + m)};
}

Rgb dim(Rgb c, double factor) {
    auto f = [factor](std::uint8_t u) { return static_cast<std::uint8_t>(std::lround(u * factor)); };
    return {f(c.r), f(c.g), f(c.b)};
}

}  // namespace

ColorMap ColorMap::golden(int root_count, double shading) {
    const double golden_fraction = 0.5 * (3.0 - std::sqrt(5.0));
    ColorMap cmap;
    cmap.shading = shading;
    for (int i = 0; i < root_count; ++i) {
        const double hue = std::fmod(0.02 + i * golden_fraction, 1.0);
        cmap.roots.push_back(from_hsv(hue, 0.7, 0.95));
    }
    return cmap;
}

std::string encode_ppm(const BasinGrid& grid, const ColorMap& cmap) {
    std::string header = "P6\n" + std::to_string(grid.width) + " " + std::to_string(grid.height) + "\n255\n";
    std::string out = header;
    out.reserve(header.size() + static_cast<std::size_t>(grid.width) * grid.height * 3);
    const double keep = 1.0 - cmap.shading;
    for (std::size_t i = 0; i < grid.labels.size(); ++i) {
        const int label = grid.labels[i];
        Rgb c;
        if (label > 0) {
            if (label > static_cast<int>(cmap.roots.size()))
                throw InvalidArgument("encode_ppm(): palette does not cover root label " + std::to_string(label));
            c = cmap.roots[label - 1];
        } else {
            c = label < 0 ? cmap.cycle : cmap.undecided;
        }
        if (cmap.shading > 0.0 && grid.max_iter > 0)
            c = dim(c, std::pow(keep, static_cast<double>(grid.iterations[i]) / grid.max_iter));
        out.push_back(static_cast<char>(c.r));
        out.push_back(static_cast<char>(c.g));
        out.push_back(static_cast<char>(c.b));
    }
    return out;
}

void write_image(const BasinGrid& grid, const ColorMap& cmap, const std::filesystem::path& path) {
    const std::string bytes = encode_ppm(grid, cmap);
    std::ofstream os(path, std::ios::binary);
    if (!os) throw IOFailure("write_image(): cannot open " + path.string());
    os.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!os) throw IOFailure("write_image(): write failed for " + path.string());
}

PpmImage read_ppm(const std::filesystem::path& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw IOFailure("read_ppm(): cannot open " + path.string());
    std::string magic;
    int maxval = 0;
    PpmImage img;
    is >> magic >> img.width >> img.height >> maxval;
    if (!is || magic != "P6" || maxval != 255 || img.width <= 0 || img.height <= 0)
        throw IOFailure("read_ppm(): unsupported header in " + path.string());
    is.get();
    img.pixels.resize(static_cast<std::size_t>(img.width) * img.height * 3);
    is.read(reinterpret_cast<char*>(img.pixels.data()), static_cast<std::streamsize>(img.pixels.size()));
    if (is.gcount() != static_cast<std::streamsize>(img.pixels.size()))
        throw IOFailure("read_ppm(): truncated pixel data in " + path.string());
    return img;
}

}  // namespace halley
