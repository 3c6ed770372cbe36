#include "halley/commands.hpp"

#include <algorithm>
#include <iomanip>
#include <map>
#include <ostream>

#include "halley/classify.hpp"
#include "halley/errors.hpp"
#include "halley/paramsearch.hpp"
#include "halley/render.hpp"
#include "halley/symmetry.hpp"

namespace halley {

namespace {

void section(std::ostream& os, const char* name, const char* header) {
    os << "# " << name << '\n' << header << '\n';
}

std::string outcome_name(OrbitKind k) {
    switch (k) {
        case OrbitKind::ConvergedToRoot: return "root";
        case OrbitKind::ConvergedToCycle: return "cycle";
        case OrbitKind::Undecided: return "undecided";
    }
    return "undecided";
}

/// Halley maps get the full attribution; other methods only the measured
/// multiplier and its class.
std::vector<FixedPointRecord> fixed_point_records(const JobConfig& cfg, const RationalMap& r) {
    if (cfg.method == Method::Halley) return classify_fixed_points(cfg.polynomial(), r);
    std::vector<FixedPointRecord> recs;
    for (const SpherePoint& z : fixed_points(r)) {
        FixedPointRecord rec;
        rec.location = z;
        rec.multiplier = multiplier_at(r, z);
        rec.predicted = rec.multiplier;
        rec.kind = classify_multiplier(rec.multiplier);
        rec.origin = FixedPointOrigin::Other;
        recs.push_back(rec);
    }
    return recs;
}

void write_fixed_points(std::ostream& os, const std::vector<FixedPointRecord>& recs) {
    section(os, "fixed_points", "re,im,infinite,multiplier_re,multiplier_im,abs_multiplier,class,origin,multiplicity");
    for (const auto& r : recs) {
        const bool inf = r.location.is_infinity();
        const Complex z = inf ? Complex(0.0) : r.location.value();
        if (inf)
            os << ",,1,";
        else
            os << z.real() << ',' << z.imag() << ",0,";
        os << r.multiplier.real() << ',' << r.multiplier.imag() << ',' << std::abs(r.multiplier) << ','
           << to_string(r.kind) << ',' << to_string(r.origin) << ',' << r.multiplicity << '\n';
    }
}

int free_critical_count(const std::vector<CriticalFate>& fates) {
    int n = 0;
    for (const auto& f : fates) n += f.multiplicity;
    return n;
}

Window scaled(const Window& w, double factor) {
    return {w.center, w.half_width * factor, w.half_height * factor};
}

bool inside(const Window& w, Complex z) {
    return std::abs(z.real() - w.center.real()) < w.half_width && std::abs(z.imag() - w.center.imag()) < w.half_height;
}

}  // namespace

void cmd_render(const JobConfig& cfg, std::ostream& summary) {
    cfg.validate();
    set_default_root_seed(cfg.seed);
    const Polynomial p = cfg.polynomial();
    const RationalMap r = build_map(cfg);
    const auto roots = locations(find_roots(p));
    const OrbitOptions orbit = cfg.orbit_options();

    const BasinGrid grid = classify_grid(r, roots, cfg.window, cfg.width, cfg.height, orbit);
    write_image(grid, ColorMap::golden(static_cast<int>(roots.size()), cfg.shading), cfg.output);

    const auto recs = fixed_point_records(cfg, r);
    const auto fates = free_critical_fates(p, r, orbit);

    summary << std::setprecision(17);
    section(summary, "summary", "key,value");
    summary << "method," << to_string(cfg.method) << '\n'
            << "seed," << cfg.seed << '\n'
            << "degree," << r.degree() << '\n'
            << "polynomial_degree," << p.degree() << '\n'
            << "distinct_roots," << roots.size() << '\n'
            << "fixed_points," << recs.size() << '\n'
            << "free_critical_points," << free_critical_count(fates) << '\n'
            << "width," << cfg.width << '\n'
            << "height," << cfg.height << '\n'
            << "max_iter," << cfg.max_iter << '\n'
            << "capture_radius," << cfg.capture_radius << '\n'
            << "image," << cfg.output << '\n';

    write_fixed_points(summary, recs);

    section(summary, "critical_fates", "re,im,multiplicity,outcome,root_index,period,iterations");
    for (const auto& f : fates)
        summary << f.point.real() << ',' << f.point.imag() << ',' << f.multiplicity << ','
                << outcome_name(f.outcome.kind) << ',' << f.outcome.root_index << ',' << f.outcome.period() << ','
                << f.outcome.iterations << '\n';

    std::map<int, long> counts;
    for (int label : grid.labels) ++counts[label];
    section(summary, "labels", "label,pixels");
    for (const auto& [label, n] : counts) summary << label << ',' << n << '\n';

    section(summary, "basins", "root_index,re,im,pixels,touches_border,evidence");
    const std::vector<Window> windows{cfg.window, scaled(cfg.window, 2.0), scaled(cfg.window, 4.0)};
    for (std::size_t i = 0; i < roots.size(); ++i) {
        const Complex z = roots[i];
        summary << i << ',' << z.real() << ',' << z.imag() << ',';
        if (!inside(cfg.window, z)) {
            summary << ",,outside_window\n";
            continue;
        }
        const BasinComponent comp = immediate_basin_component(grid, z);
        summary << comp.pixels.size() << ',' << (comp.touches_border ? 1 : 0) << ',';
        if (comp.touches_border) {
            summary << "unbounded\n";
            continue;
        }
        const BoundednessReport rep = boundedness_evidence(r, roots, z, windows, cfg.width, orbit);
        summary << (rep.bounded ? "bounded" : "unbounded") << '\n';
    }
}

void cmd_analyze(const JobConfig& cfg, std::ostream& out) {
    cfg.validate();
    set_default_root_seed(cfg.seed);
    const Polynomial p = cfg.polynomial();
    const RationalMap r = build_map(cfg);
    const auto recs = fixed_point_records(cfg, r);

    out << std::setprecision(17);
    section(out, "summary", "key,value");
    out << "method," << to_string(cfg.method) << '\n'
        << "seed," << cfg.seed << '\n'
        << "degree," << r.degree() << '\n'
        << "fixed_points," << recs.size() << '\n';

    write_fixed_points(out, recs);

    section(out, "extraneous", "re,im,multiplier_re,multiplier_im,abs_multiplier,class");
    for (const auto& e : extraneous_fixed_points(recs)) {
        const Complex z = e.location.value();
        out << z.real() << ',' << z.imag() << ',' << e.multiplier.real() << ',' << e.multiplier.imag() << ','
            << std::abs(e.multiplier) << ',' << to_string(e.kind) << '\n';
    }

    section(out, "symmetry", "key,value");
    SymmetryOptions sopts;
    sopts.resolution = std::min({cfg.width, cfg.height, 400});
    sopts.orbit = cfg.orbit_options();
    try {
        const SymmetryReport rep = symmetry_report(p, sopts);
        out << "status,ok\n"
            << "polynomial_order," << rep.polynomial_order << '\n'
            << "map_order," << rep.map_order << '\n'
            << "grid_order," << rep.grid_order << '\n'
            << "containment," << (rep.containment ? 1 : 0) << '\n'
            << "equality," << (rep.equality ? 1 : 0) << '\n';
    } catch (const InvalidArgument& e) {
        std::string why = e.what();
        std::replace(why.begin(), why.end(), ',', ';');
        out << "status,skipped\nreason," << why << '\n'
            << "map_order," << map_rotation_order(halley_of(p), sopts.n_max) << '\n';
    }
}

void cmd_cycles(std::ostream& out) {
    const Polynomial poly = cycle_condition_polynomial();
    const LinearDivision div = divide_by_linear(poly, -7.0);
    const bool divides = std::abs(div.remainder) < 1e-8 * poly.max_abs_coeff();
    const auto roots = roots_of_F();

    out << std::setprecision(17);
    section(out, "cycle_polynomial", "power,re,im");
    for (int k = poly.degree(); k >= 0; --k) out << k << ',' << poly[k].real() << ',' << poly[k].imag() << '\n';

    section(out, "factor_check", "check,result");
    out << "b+7 divides," << (divides ? "PASS" : "FAIL") << '\n'
        << "quintic roots," << roots.size() << '\n';

    section(out, "candidates", "b_re,b_im,start,xi_re,xi_im,abs_multiplier,residual");
    for (Complex b : roots) {
        const CycleCandidate c = verify_cycle(b);
        out << b.real() << ',' << b.imag() << ',' << c.start.real() << ',' << c.xi.real() << ',' << c.xi.imag()
            << ',' << std::abs(c.multiplier) << ',' << c.residual << '\n';
    }
}

void cmd_profile(const JobConfig& cfg, std::ostream& out) {
    cfg.validate();
    set_default_root_seed(cfg.seed);
    const RationalMap r = build_map(cfg);
    const Profile prof = cfg.profile_axis == ProfileAxis::Real
                             ? real_axis_profile(r, cfg.profile_min, cfg.profile_max, cfg.profile_samples)
                             : imaginary_axis_profile(r, cfg.profile_min, cfg.profile_max, cfg.profile_samples);
    write_profile_csv(out, prof);
}

bool cmd_paperlab(const PaperlabOptions& opts, std::ostream& out) {
    std::vector<std::string> failed;
    run_paperlab(opts, [&](const ExperimentResult& r) {
        out << r.id << ' ' << (r.passed ? "PASS" : "FAIL") << ' ' << std::fixed << std::setprecision(2) << r.seconds
            << "s " << r.detail << std::endl;
        if (!r.passed) failed.push_back(r.id);
    });
    if (failed.empty()) {
        out << "all experiments passed\n";
        return true;
    }
    out << "failed:";
    for (const auto& id : failed) out << ' ' << id;
    out << '\n';
    return false;
}

}  // namespace halley
