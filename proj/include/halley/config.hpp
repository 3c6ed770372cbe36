#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "halley/dynamics.hpp"

namespace halley {

enum class Method { Halley, Konig, Chebyshev };

enum class ProfileAxis { Real, Imaginary };

/// A job read from a flat "key = value" file. Coefficients come one per
/// `coeff = re,im` line in ascending degree.
struct JobConfig {
    std::vector<Complex> coeffs;
    Method method = Method::Halley;
    int konig_order = 3;
    Complex sigma = 0.5;
    Window window = Window::square(2.0);
    int width = 800;
    int height = 800;
    int max_iter = 200;
    double capture_radius = 1e-8;
    double shading = 0.35;
    std::string output = "basins.ppm";
    /// Empty means standard output.
    std::string summary;
    std::uint64_t seed = kDefaultRootSeed;
    ProfileAxis profile_axis = ProfileAxis::Real;
    double profile_min = -2.0;
    double profile_max = 2.0;
    int profile_samples = 401;

    Polynomial polynomial() const { return Polynomial(coeffs); }
    OrbitOptions orbit_options() const;
    /// Throws ConfigError on a field out of range or missing coefficients.
    void validate() const;
};

/// Throws ConfigError with the offending line number.
JobConfig parse_config(std::istream& in, const std::string& source = "<config>");
JobConfig load_config(const std::filesystem::path& path);

/// "cx,cy,hw,hh"
Window parse_window(const std::string& text);
/// "WxH"
std::pair<int, int> parse_resolution(const std::string& text);

/// The iteration map selected by `method`.
RationalMap build_map(const JobConfig& cfg);

std::string to_string(Method m);

}  // namespace halley
