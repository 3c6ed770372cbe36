#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "halley/commands.hpp"
#include "halley/errors.hpp"

using namespace halley;

namespace {

struct Overrides {
    std::string config;
    std::string out;
    std::string window;
    std::string res;
    std::optional<int> max_iter;
    std::optional<std::uint64_t> seed;
};

void add_job_flags(CLI::App* cmd, Overrides& o) {
    cmd->add_option("--config", o.config, "Job file (key = value lines)")->required();
    cmd->add_option("--out", o.out, "Output path");
    cmd->add_option("--window", o.window, "cx,cy,hw,hh");
    cmd->add_option("--res", o.res, "WxH");
    cmd->add_option("--max-iter", o.max_iter, "Iteration cap");
    cmd->add_option("--seed", o.seed, "Root-finder seed");
}

JobConfig load_job(const Overrides& o) {
    JobConfig cfg = load_config(o.config);
    if (!o.window.empty()) cfg.window = parse_window(o.window);
    if (!o.res.empty()) std::tie(cfg.width, cfg.height) = parse_resolution(o.res);
    if (o.max_iter) cfg.max_iter = *o.max_iter;
    if (o.seed) cfg.seed = *o.seed;
    cfg.validate();
    return cfg;
}

template <class F>
void with_output(const std::string& path, F&& body) {
    if (path.empty()) {
        body(std::cout);
        return;
    }
    std::ofstream os(path);
    if (!os) throw IOFailure("cannot open " + path);
    body(os);
    if (!os) throw IOFailure("write failed for " + path);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Basins, fixed points and cycles of Halley's root-finding method"};
    app.require_subcommand(1);

    Overrides render_opts, analyze_opts, profile_opts;
    auto* render = app.add_subcommand("render", "Classify a grid, write a PPM and a CSV summary");
    add_job_flags(render, render_opts);
    auto* analyze = app.add_subcommand("analyze", "Fixed points, extraneous points and symmetry");
    add_job_flags(analyze, analyze_opts);
    auto* profile = app.add_subcommand("profile", "Real or imaginary axis profile as CSV");
    add_job_flags(profile, profile_opts);

    std::string cycles_out;
    auto* cycles = app.add_subcommand("cycles", "Parameters with a superattracting 2-cycle");
    cycles->add_option("--out", cycles_out, "Output path");

    PaperlabOptions lab;
    std::string lab_res;
    std::optional<double> lab_capture;
    auto* paperlab = app.add_subcommand("paperlab", "Run the verification experiments");
    paperlab->add_option("--only", lab.only, "Experiment ids, e.g. E2 or E1,E7")->delimiter(',');
    paperlab->add_option("--capture-radius", lab_capture, "Override the orbit capture radius");
    paperlab->add_option("--res", lab_res, "Grid side N or NxN");
    paperlab->add_option("--max-iter", lab.max_iter, "Iteration cap");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (render->parsed()) {
            JobConfig cfg = load_job(render_opts);
            if (!render_opts.out.empty()) cfg.output = render_opts.out;
            with_output(cfg.summary, [&](std::ostream& os) { cmd_render(cfg, os); });
        } else if (analyze->parsed()) {
            const JobConfig cfg = load_job(analyze_opts);
            with_output(analyze_opts.out, [&](std::ostream& os) { cmd_analyze(cfg, os); });
        } else if (profile->parsed()) {
            const JobConfig cfg = load_job(profile_opts);
            with_output(profile_opts.out, [&](std::ostream& os) { cmd_profile(cfg, os); });
        } else if (cycles->parsed()) {
            with_output(cycles_out, [&](std::ostream& os) { cmd_cycles(os); });
        } else if (paperlab->parsed()) {
            if (!lab_res.empty()) {
                lab.resolution = lab_res.find_first_of("xX") == std::string::npos
                                     ? parse_resolution(lab_res + "x" + lab_res).first
                                     : parse_resolution(lab_res).first;
            }
            if (lab_capture) {
                if (!(*lab_capture > 0.0)) throw ConfigError("--capture-radius must be positive");
                lab.capture_radius = lab_capture;
            }
            if (lab.max_iter <= 0) throw ConfigError("--max-iter must be positive");
            return cmd_paperlab(lab, std::cout) ? 0 : 1;
        }
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const InvalidArgument& e) {
        std::cerr << "invalid input: " << e.what() << '\n';
        return 2;
    } catch (const NumericError& e) {
        std::cerr << "numeric failure: " << e.what() << '\n';
        return 3;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
