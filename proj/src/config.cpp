#include "halley/config.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>

#include "halley/errors.hpp"

namespace halley {

namespace {

std::string trim(const std::string& s) {
    const auto first = std::find_if_not(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); });
    const auto last = std::find_if_not(s.rbegin(), s.rend(), [](unsigned char c) { return std::isspace(c); }).base();
    return first < last ? std::string(first, last) : std::string();
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep)) out.push_back(trim(item));
    if (!s.empty() && s.back() == sep) out.emplace_back();
    return out;
}

double to_double(const std::string& s) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception&) {
        throw ConfigError("not a number: '" + s + "'");
    }
    if (used != s.size() || !std::isfinite(v)) throw ConfigError("not a number: '" + s + "'");
    return v;
}

long long to_integer(const std::string& s) {
    std::size_t used = 0;
    long long v = 0;
    try {
        v = std::stoll(s, &used, 0);
    } catch (const std::exception&) {
        throw ConfigError("not an integer: '" + s + "'");
    }
    if (used != s.size()) throw ConfigError("not an integer: '" + s + "'");
    return v;
}

Complex to_complex(const std::string& s) {
    const auto parts = split(s, ',');
    if (parts.size() == 1) return to_double(parts[0]);
    if (parts.size() == 2) return {to_double(parts[0]), to_double(parts[1])};
    throw ConfigError("expected 're' or 're,im': '" + s + "'");
}

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
    return s;
}

void apply(JobConfig& cfg, const std::string& key, const std::string& value) {
    if (key == "coeff") {
        cfg.coeffs.push_back(to_complex(value));
    } else if (key == "method") {
        const std::string m = lower(value);
        if (m == "halley")
            cfg.method = Method::Halley;
        else if (m == "konig")
            cfg.method = Method::Konig;
        else if (m == "chebyshev")
            cfg.method = Method::Chebyshev;
        else
            throw ConfigError("unknown method '" + value + "'");
    } else if (key == "konig_order") {
        cfg.konig_order = static_cast<int>(to_integer(value));
    } else if (key == "sigma") {
        cfg.sigma = to_complex(value);
    } else if (key == "window") {
        cfg.window = parse_window(value);
    } else if (key == "resolution") {
        std::tie(cfg.width, cfg.height) = parse_resolution(value);
    } else if (key == "max_iter") {
        cfg.max_iter = static_cast<int>(to_integer(value));
    } else if (key == "capture_radius") {
        cfg.capture_radius = to_double(value);
    } else if (key == "shading") {
        cfg.shading = to_double(value);
    } else if (key == "output") {
        cfg.output = value;
    } else if (key == "summary") {
        cfg.summary = value;
    } else if (key == "seed") {
        cfg.seed = static_cast<std::uint64_t>(to_integer(value));
    } else if (key == "profile_axis") {
        const std::string a = lower(value);
        if (a == "real")
            cfg.profile_axis = ProfileAxis::Real;
        else if (a == "imag" || a == "imaginary")
            cfg.profile_axis = ProfileAxis::Imaginary;
        else
            throw ConfigError("unknown profile_axis '" + value + "'");
    } else if (key == "profile_range") {
        const auto parts = split(value, ',');
        if (parts.size() != 2) throw ConfigError("profile_range needs 'min,max'");
        cfg.profile_min = to_double(parts[0]);
        cfg.profile_max = to_double(parts[1]);
    } else if (key == "profile_samples") {
        cfg.profile_samples = static_cast<int>(to_integer(value));
    } else {
        throw ConfigError("unknown key '" + key + "'");
    }
}

}  // namespace

OrbitOptions JobConfig::orbit_options() const {
    OrbitOptions o;
    o.max_iter = max_iter;
    o.capture_radius = capture_radius;
    return o;
}

void JobConfig::validate() const {
    if (coeffs.empty()) throw ConfigError("no 'coeff' lines: the polynomial is missing");
    if (Polynomial(coeffs).degree() < 2) throw ConfigError("polynomial must have degree at least 2");
    if (width <= 0 || height <= 0) throw ConfigError("resolution must be positive");
    if (max_iter <= 0) throw ConfigError("max_iter must be positive");
    if (!(capture_radius > 0.0)) throw ConfigError("capture_radius must be positive");
    if (!(window.half_width > 0.0) || !(window.half_height > 0.0))
        throw ConfigError("window extents must be positive");
    if (method == Method::Konig && konig_order < 2) throw ConfigError("konig_order must be at least 2");
    if (!(shading >= 0.0 && shading <= 1.0)) throw ConfigError("shading must lie in [0, 1]");
    if (!(profile_min < profile_max)) throw ConfigError("profile_range must be increasing");
    if (profile_samples < 2) throw ConfigError("profile_samples must be at least 2");
}

JobConfig parse_config(std::istream& in, const std::string& source) {
    JobConfig cfg;
    std::string line;
    int number = 0;
    while (std::getline(in, line)) {
        ++number;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError(source + ":" + std::to_string(number) + ": expected 'key = value'");
        const std::string key = lower(trim(line.substr(0, eq)));
        const std::string value = trim(line.substr(eq + 1));
        try {
            apply(cfg, key, value);
        } catch (const ConfigError& e) {
            throw ConfigError(source + ":" + std::to_string(number) + ": " + e.what());
        }
    }
    return cfg;
}

JobConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file " + path.string());
    return parse_config(in, path.string());
}

Window parse_window(const std::string& text) {
    const auto parts = split(text, ',');
    if (parts.size() != 4) throw ConfigError("window needs 'cx,cy,hw,hh'");
    Window w{Complex(to_double(parts[0]), to_double(parts[1])), to_double(parts[2]), to_double(parts[3])};
    if (!(w.half_width > 0.0) || !(w.half_height > 0.0)) throw ConfigError("window extents must be positive");
    return w;
}

std::pair<int, int> parse_resolution(const std::string& text) {
    const auto x = lower(text).find('x');
    if (x == std::string::npos) throw ConfigError("resolution needs 'WxH'");
    const long long w = to_integer(trim(text.substr(0, x)));
    const long long h = to_integer(trim(text.substr(x + 1)));
    if (w <= 0 || h <= 0 || w > 100000 || h > 100000) throw ConfigError("resolution out of range");
    return {static_cast<int>(w), static_cast<int>(h)};
}

RationalMap build_map(const JobConfig& cfg) {
    const Polynomial p = cfg.polynomial();
    switch (cfg.method) {
        case Method::Halley: return halley_of(p);
        case Method::Konig: return konig_of(p, cfg.konig_order);
        case Method::Chebyshev: return chebyshev_halley_of(p, cfg.sigma);
    }
    return halley_of(p);
}

std::string to_string(Method m) {
    switch (m) {
        case Method::Halley: return "halley";
        case Method::Konig: return "konig";
        case Method::Chebyshev: return "chebyshev";
    }
    return "unknown";
}

}  // namespace halley
