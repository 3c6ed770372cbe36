#include "halley/paperlab.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <limits>
#include <numbers>
#include <random>

#include "halley/classify.hpp"
#include "halley/dynamics.hpp"
#include "halley/errors.hpp"
#include "halley/paramsearch.hpp"
#include "halley/symmetry.hpp"

namespace halley {

namespace {

std::string format(const char* fmt, ...) {
    char buf[512];
    va_list args;
    va_start(args, fmt);
    std::vsnprintf(buf, sizeof buf, fmt, args);
    va_end(args);
    return buf;
}

struct Outcome {
    bool passed = true;
    std::string detail;

    void fail(const std::string& why) {
        if (passed) detail.clear();
        passed = false;
        if (!detail.empty()) detail += "; ";
        detail += why;
    }
    void note(const std::string& what) {
        if (!passed) return;
        if (!detail.empty()) detail += "; ";
        detail += what;
    }
};

OrbitOptions orbit_options(const PaperlabOptions& opts) {
    OrbitOptions o;
    o.max_iter = opts.max_iter;
    if (opts.capture_radius) o.capture_radius = *opts.capture_radius;
    return o;
}

/// z (z^n - 1)
Polynomial z_times_zn_minus_one(int n) {
    std::vector<Complex> c(static_cast<std::size_t>(n) + 2, 0.0);
    c[1] = -1.0;
    c[static_cast<std::size_t>(n) + 1] = 1.0;
    return Polynomial(c);
}

std::vector<Complex> roots_of(const Polynomial& p) { return locations(find_roots(p)); }

Outcome e1_two_roots(const PaperlabOptions& opts) {
    Outcome out;
    const Polynomial base{-1.0, 0.0, 1.0};
    Polynomial p = base;
    for (int k = 1; k <= 3; ++k) {
        if (k > 1) p = p * base;
        const auto roots = roots_of(p);
        if (roots.size() != 2) {
            out.fail(format("k=%d: expected 2 distinct roots, found %zu", k, roots.size()));
            continue;
        }
        const BasinGrid g = classify_grid(halley_of(p), roots, Window::square(2.0), opts.resolution,
                                          opts.resolution, orbit_options(opts));
        const double margin = 2.0 * g.pitch_x();
        long considered = 0, unlabeled = 0, agree = 0;
        for (int y = 0; y < g.height; ++y)
            for (int x = 0; x < g.width; ++x) {
                const double re = g.pixel_center(x, y).real();
                if (std::abs(re) <= margin) continue;
                ++considered;
                const int label = g.label(x, y);
                if (label <= 0) {
                    ++unlabeled;
                    continue;
                }
                if ((roots[label - 1].real() > 0.0) == (re > 0.0)) ++agree;
            }
        const double share = considered ? static_cast<double>(agree) / considered : 0.0;
        if (unlabeled > 0) out.fail(format("k=%d: %ld unlabeled pixels off the axis", k, unlabeled));
        if (share < 0.9999) out.fail(format("k=%d: half-plane agreement %.5f%% < 99.99%%", k, 100.0 * share));
        out.note(format("k=%d %.4f%%", k, 100.0 * share));
    }
    return out;
}

/// Median estimated order log(e2/e1)/log(e1/e0) from starts near the simple
/// roots of `corpus`. Trajectories stop at the capture disc; fewer than three
/// recorded errors give no estimate.
std::optional<double> convergence_order(const std::vector<CorpusEntry>& corpus, double capture) {
    std::vector<double> orders;
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
    for (const auto& entry : corpus) {
        const RationalMap h = halley_of(entry.polynomial);
        const auto found = find_roots(entry.polynomial);
        for (const auto& c : found) {
            if (c.multiplicity != 1) continue;
            double sep = 1.0;
            for (const auto& o : found)
                if (&o != &c) sep = std::min(sep, std::abs(o.location - c.location));
            Complex z = c.location + std::polar(0.1 * sep, angle(rng));
            std::vector<double> errors{std::abs(z - c.location)};
            while (errors.back() >= capture && errors.size() < 8) {
                z = h(z);
                errors.push_back(std::abs(z - c.location));
            }
            if (errors.size() < 3) continue;
            const double e0 = errors[0], e1 = errors[1], e2 = errors[2];
            if (!(e2 > 1e-13 * std::max(1.0, std::abs(c.location))) || !(e1 < e0)) continue;
            orders.push_back(std::log(e2 / e1) / std::log(e1 / e0));
        }
    }
    if (orders.empty()) return std::nullopt;
    std::nth_element(orders.begin(), orders.begin() + static_cast<long>(orders.size() / 2), orders.end());
    return orders[orders.size() / 2];
}

Outcome e2_multipliers(const PaperlabOptions& opts) {
    Outcome out;
    const auto corpus = random_corpus(50, 2024);
    int records = 0;
    for (std::size_t i = 0; i < corpus.size(); ++i) {
        const Polynomial& p = corpus[i].polynomial;
        const RationalMap h = halley_of(p);
        try {
            const auto recs = classify_fixed_points(p, h);
            records += static_cast<int>(recs.size());
            if (static_cast<int>(recs.size()) != h.degree() + 1)
                out.fail(format("polynomial %zu: %zu fixed points, degree %d", i, recs.size(), h.degree()));
        } catch (const PropositionMismatch& e) {
            out.fail(format("polynomial %zu: %s", i, e.what()));
        }
    }
    const double capture = orbit_options(opts).capture_radius;
    const auto order = convergence_order(corpus, capture);
    if (!order)
        out.fail(format("convergence rate: no trajectory observable with capture radius %g", capture));
    else if (*order < 2.5)
        out.fail(format("convergence rate: median order %.3f < 2.5", *order));
    out.note(format("%d fixed points matched", records));
    if (order) out.note(format("median order %.3f", *order));
    return out;
}

Outcome e3_degree(const PaperlabOptions&) {
    Outcome out;
    int checked = 0;
    for (const auto& entry : random_corpus(50, 2024)) {
        const DegreeCensus c = degree_census(entry.polynomial);
        const int actual = halley_of(entry.polynomial).degree();
        ++checked;
        if (actual != c.predicted_degree)
            out.fail(format("degree %d, census predicts %d", actual, c.predicted_degree));
    }
    struct Named {
        const char* name;
        Polynomial p;
        int degree;
    };
    const Named named[] = {
        {"z^3-1", Polynomial{-1.0, 0.0, 0.0, 1.0}, 4},
        {"z(z^2-1)", Polynomial{0.0, -1.0, 0.0, 1.0}, 5},
        {"z^2(z^2-1)", Polynomial{0.0, 0.0, -1.0, 0.0, 1.0}, 5},
    };
    for (const auto& n : named) {
        const int actual = halley_of(n.p).degree();
        const int predicted = degree_census(n.p).predicted_degree;
        ++checked;
        if (actual != n.degree || predicted != n.degree)
            out.fail(format("%s: degree %d, census %d, expected %d", n.name, actual, predicted, n.degree));
    }
    out.note(format("%d maps", checked));
    return out;
}

Outcome e4_coincidence(const PaperlabOptions&) {
    Outcome out;
    const auto corpus = random_corpus(10, 77);
    std::mt19937_64 rng(41);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    double worst = 0.0;
    for (std::size_t i = 0; i < corpus.size(); ++i) {
        const Polynomial& p = corpus[i].polynomial;
        const RationalMap h = halley_of(p);
        const RationalMap k3 = konig_of(p, 3);
        const RationalMap ch = chebyshev_halley_of(p, 0.5);
        for (int s = 0; s < 100; ++s) {
            const SpherePoint z = s == 0 ? SpherePoint::infinity() : SpherePoint(Complex(u(rng), u(rng)));
            const SpherePoint a = eval_sphere(h, z);
            for (const RationalMap* other : {&k3, &ch}) {
                const SpherePoint b = eval_sphere(*other, z);
                if (a.is_infinity() || b.is_infinity()) {
                    if (a.is_infinity() != b.is_infinity()) out.fail(format("polynomial %zu: infinity mismatch", i));
                    continue;
                }
                const double rel =
                    std::abs(a.value() - b.value()) / std::max({1.0, std::abs(a.value()), std::abs(b.value())});
                worst = std::max(worst, rel);
            }
        }
    }
    if (!(worst < 1e-9)) out.fail(format("largest relative difference %.3e", worst));
    out.note(format("largest relative difference %.2e", worst));
    return out;
}

Outcome e5_convergent(const PaperlabOptions& opts) {
    Outcome out;
    struct Case {
        const char* name;
        Polynomial p;
        bool to_zero;
    };
    const Case cases[] = {
        {"z^3-1", Polynomial{-1.0, 0.0, 0.0, 1.0}, false},
        {"z(z^2-1)", Polynomial{0.0, -1.0, 0.0, 1.0}, true},
        {"z(z^3-1)", Polynomial{0.0, -1.0, 0.0, 0.0, 1.0}, true},
        {"z^2(z^2-1)", Polynomial{0.0, 0.0, -1.0, 0.0, 1.0}, true},
    };
    const OrbitOptions orbit = orbit_options(opts);
    for (const auto& c : cases) {
        const auto roots = roots_of(c.p);
        const RationalMap h = halley_of(c.p);
        const auto fates = free_critical_fates(c.p, h, orbit);
        for (const auto& f : fates) {
            if (f.outcome.kind != OrbitKind::ConvergedToRoot) {
                out.fail(format("%s: free critical point (%.4f,%.4f) does not reach a root", c.name,
                                f.point.real(), f.point.imag()));
            } else if (c.to_zero && std::abs(roots[static_cast<std::size_t>(f.outcome.root_index)]) > 1e-9) {
                out.fail(format("%s: free critical point (%.4f,%.4f) leaves the basin of 0", c.name,
                                f.point.real(), f.point.imag()));
            }
        }
        const BasinGrid g =
            classify_grid(h, roots, Window::square(2.0), opts.resolution, opts.resolution, orbit);
        const long labeled = std::count_if(g.labels.begin(), g.labels.end(), [](int l) { return l > 0; });
        const double share = static_cast<double>(labeled) / static_cast<double>(g.labels.size());
        if (share < 0.999) out.fail(format("%s: %.4f%% root-labeled < 99.9%%", c.name, 100.0 * share));
        out.note(format("%s %zu free, %.3f%%", c.name, fates.size(), 100.0 * share));
    }
    return out;
}

Outcome e6_bounded(const PaperlabOptions& opts) {
    Outcome out;
    const OrbitOptions orbit = orbit_options(opts);
    const std::vector<Window> windows{Window::square(2.0), Window::square(4.0), Window::square(8.0)};
    for (int n : {7, 9}) {
        const Polynomial p = z_times_zn_minus_one(n);
        const auto roots = roots_of(p);
        const RationalMap h = halley_of(p);
        const BoundednessReport rep = boundedness_evidence(h, roots, 0.0, windows, opts.resolution, orbit);
        if (!rep.bounded) out.fail(format("n=%d: basin of 0 not bounded within [-8,8]^2", n));
        const BasinGrid g =
            classify_grid(h, roots, Window::square(2.0), opts.resolution, opts.resolution, orbit);
        int unbounded = 0;
        for (Complex r : roots) {
            if (std::abs(r) < 1e-9) continue;
            const BasinComponent comp = immediate_basin_component(g, r);
            if (comp.touches_border)
                ++unbounded;
            else
                out.fail(format("n=%d: basin of (%.4f,%.4f) stays inside [-2,2]^2", n, r.real(), r.imag()));
        }
        out.note(format("n=%d area %.4f, %d outer basins reach the border", n,
                        rep.areas.empty() ? 0.0 : rep.areas.back(), unbounded));
    }
    return out;
}

Outcome e7_symmetry(const PaperlabOptions& opts) {
    Outcome out;
    const OrbitOptions orbit = orbit_options(opts);
    for (int n : {2, 3, 7, 9}) {
        const Polynomial p = z_times_zn_minus_one(n);
        const auto roots = roots_of(p);
        const RationalMap h = halley_of(p);
        const int map_order = map_rotation_order(h, 12);
        const BasinGrid g =
            classify_grid(h, roots, Window::square(2.0), opts.resolution, opts.resolution, orbit);
        const int grid_order = grid_symmetry_order(g, 12);
        if (map_order != n || grid_order != n)
            out.fail(format("n=%d: map order %d, grid order %d", n, map_order, grid_order));
        out.note(format("n=%d ok", n));
    }
    return out;
}

Outcome e8_cycles(const PaperlabOptions&) {
    Outcome out;
    const Polynomial quintic{-1830821.0, 388025.0, -92141.0, 9625.0, -757.0, 10.0};
    const Polynomial reference = Polynomial{7.0, 1.0} * quintic;
    const Polynomial p = cycle_condition_polynomial();
    if (p.degree() != 6) {
        out.fail(format("cycle polynomial has degree %d", p.degree()));
        return out;
    }
    const Polynomial scaled = (reference.leading() / p.leading()) * p;
    double worst = 0.0;
    for (int k = 0; k <= 6; ++k)
        worst = std::max(worst, std::abs(scaled[k] - reference[k]) / std::abs(reference[k]));
    if (!(worst <= 1e-8)) out.fail(format("coefficients differ by %.3e relative", worst));

    const auto roots = roots_of_F();
    if (roots.size() != 5) out.fail(format("%zu roots instead of 5", roots.size()));
    std::optional<Complex> real_root;
    for (Complex b : roots)
        if (std::abs(b.imag()) < 1e-9) real_root = b;
    if (!real_root) {
        out.fail("no real root");
        return out;
    }
    if (std::abs(*real_root - 62.5144396) > 1e-5)
        out.fail(format("real root %.8f", real_root->real()));
    const CycleCandidate c = verify_cycle(*real_root);
    if (std::abs(c.start - 1.0) > 0.0 || std::abs(c.xi - 5.905235) > 1e-4)
        out.fail(format("cycle {%.6f, %.6f}", c.start.real(), c.xi.real()));
    if (!(std::abs(c.multiplier) < 1e-8)) out.fail(format("cycle multiplier %.3e", std::abs(c.multiplier)));
    out.note(format("b=%.7f, cycle {1, %.6f}, |multiplier| %.1e", real_root->real(), c.xi.real(),
                    std::abs(c.multiplier)));
    return out;
}

Outcome e9_intervals(const PaperlabOptions& opts) {
    Outcome out;
    const OrbitOptions orbit = orbit_options(opts);
    const RationalMap h = halley_of(Polynomial{0.0, -1.0, 0.0, 1.0});
    const double s = 1.0 / std::sqrt(3.0);
    const double inf = std::numeric_limits<double>::infinity();
    struct Check {
        double x1, x2, limit;
    };
    for (const Check& c : {Check{s, 1.0, 1.0}, Check{-1.0, -s, -1.0}, Check{1.0, inf, 1.0}}) {
        const IntervalReport rep = interval_convergence_check(h, c.x1, c.x2, 25, orbit);
        if (!rep.verified || !rep.predicted_limit || std::abs(*rep.predicted_limit - c.limit) > 1e-9)
            out.fail(format("(%g, %g) not confirmed to converge to %g", c.x1, c.x2, c.limit));
    }

    const double pole = -std::pow(1.0 / 6.0, 1.0 / 7.0);
    const RationalMap h7 = halley_of(z_times_zn_minus_one(7));
    const IntervalReport bad = interval_convergence_check(h7, -inf, 0.0, 25, orbit);
    if (!bad.obstruction)
        out.fail("interval around a pole reported no obstruction");
    else if (bad.obstruction->kind != ObstructionKind::Pole || std::abs(bad.obstruction->location - pole) > 1e-9)
        out.fail(format("unexpected obstruction %s at %.9f", to_string(bad.obstruction->kind).c_str(),
                        bad.obstruction->location));
    else if (bad.verified)
        out.fail("interval around a pole reported as verified");
    out.note(format("3 intervals confirmed, pole obstruction at %.6f", pole));
    return out;
}

Outcome e10_closed_forms(const PaperlabOptions&) {
    Outcome out;
    struct Form {
        std::string name;
        Polynomial p;
        Polynomial num;
        Polynomial den;
    };
    std::vector<Form> forms;
    forms.push_back({"z(z^2-1)", Polynomial{0.0, -1.0, 0.0, 1.0}, Polynomial{0.0, 0.0, 0.0, 1.0, 0.0, 3.0},
                     Polynomial{1.0, 0.0, -3.0, 0.0, 6.0}});
    forms.push_back({"z(z^3-1)", Polynomial{0.0, -1.0, 0.0, 0.0, 1.0},
                     Polynomial{0.0, 0.0, 0.0, 0.0, 3.0, 0.0, 0.0, 6.0},
                     Polynomial{1.0, 0.0, 0.0, -2.0, 0.0, 0.0, 10.0}});
    {
        // n z^(n+1) ((n+1) z^n + n - 1) / ((n+2)(n+1) z^(2n) + (n+1)(n-4) z^n + 2)
        const int n = 7;
        const Polynomial zn = Polynomial::monomial(1.0, n);
        const Polynomial num = Polynomial::monomial(double(n), n + 1) *
                               (double(n + 1) * zn + Polynomial::constant(double(n - 1)));
        const Polynomial den = Polynomial::monomial(double((n + 2) * (n + 1)), 2 * n) +
                               double((n + 1) * (n - 4)) * zn + Polynomial::constant(2.0);
        forms.push_back({"z(z^7-1)", z_times_zn_minus_one(n), num, den});
    }
    forms.push_back({"z(z-1)^2", Polynomial{0.0, 1.0, -2.0, 1.0}, Polynomial{0.0, 0.0, 0.0, 3.0},
                     Polynomial{1.0, -4.0, 6.0}});
    for (Complex b : {Complex(1.0), Complex(62.5144396), Complex(-3.0, 2.0)}) {
        forms.push_back({format("z^3+6z+b, b=(%g,%g)", b.real(), b.imag()), Polynomial{b, 6.0, 0.0, 1.0},
                         Polynomial{-2.0 * b, 0.0, -2.0 * b, -2.0, 0.0, 1.0},
                         Polynomial{12.0, -b, 6.0, 0.0, 2.0}});
    }

    std::mt19937_64 rng(10);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    double worst = 0.0;
    for (const auto& f : forms) {
        const RationalMap built = halley_of(f.p);
        double local = 0.0;
        for (int i = 0; i < 50; ++i) {
            const Complex z(u(rng), u(rng));
            const Complex want = f.num(z) / f.den(z);
            const Complex got = built(z);
            local = std::max(local, std::abs(got - want) / std::max(1.0, std::abs(want)));
        }
        if (!(local < 1e-9)) out.fail(format("%s: relative error %.3e", f.name.c_str(), local));
        worst = std::max(worst, local);
    }
    out.note(format("%zu closed forms, largest relative error %.2e", forms.size(), worst));
    return out;
}

using Runner = Outcome (*)(const PaperlabOptions&);

struct Entry {
    const char* id;
    Runner run;
};

const Entry kExperiments[] = {
    {"E1", e1_two_roots},   {"E2", e2_multipliers}, {"E3", e3_degree},     {"E4", e4_coincidence},
    {"E5", e5_convergent},  {"E6", e6_bounded},     {"E7", e7_symmetry},   {"E8", e8_cycles},
    {"E9", e9_intervals},   {"E10", e10_closed_forms},
};

}  // namespace

const std::vector<std::string>& experiment_ids() {
    static const std::vector<std::string> ids = [] {
        std::vector<std::string> v;
        for (const auto& e : kExperiments) v.emplace_back(e.id);
        return v;
    }();
    return ids;
}

ExperimentResult run_experiment(const std::string& id, const PaperlabOptions& opts) {
    const Entry* entry = nullptr;
    for (const auto& e : kExperiments)
        if (id == e.id) entry = &e;
    if (!entry) throw InvalidArgument("run_experiment(): unknown experiment '" + id + "'");

    ExperimentResult result;
    result.id = id;
    const auto start = std::chrono::steady_clock::now();
    try {
        const Outcome o = entry->run(opts);
        result.passed = o.passed;
        result.detail = o.detail;
    } catch (const Error& e) {
        result.passed = false;
        result.detail = std::string("error: ") + e.what();
    }
    result.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return result;
}

std::vector<ExperimentResult> run_paperlab(const PaperlabOptions& opts,
                                           const std::function<void(const ExperimentResult&)>& on_result) {
    for (const auto& id : opts.only)
        if (std::find(experiment_ids().begin(), experiment_ids().end(), id) == experiment_ids().end())
            throw InvalidArgument("run_paperlab(): unknown experiment '" + id + "'");
    std::vector<ExperimentResult> results;
    for (const auto& id : experiment_ids()) {
        if (!opts.only.empty() && std::find(opts.only.begin(), opts.only.end(), id) == opts.only.end()) continue;
        results.push_back(run_experiment(id, opts));
        if (on_result) on_result(results.back());
    }
    return results;
}

std::vector<CorpusEntry> random_corpus(int count, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> deg(3, 6);
    std::uniform_int_distribution<int> mult(1, 3);
    std::uniform_real_distribution<double> coord(-1.5, 1.5);
    std::uniform_real_distribution<double> lead(0.5, 2.0);
    std::uniform_real_distribution<double> turn(0.0, 2.0 * std::numbers::pi);
    std::vector<CorpusEntry> corpus;
    while (static_cast<int>(corpus.size()) < count) {
        const int d = deg(rng);
        CorpusEntry e;
        int used = 0;
        while (used < d) {
            int k = std::min(mult(rng), d - used);
            if (e.roots.empty() && k == d) k = d - 1;
            const Complex z(coord(rng), coord(rng));
            const bool apart = std::all_of(e.roots.begin(), e.roots.end(),
                                           [&](const RootCluster& r) { return std::abs(r.location - z) >= 0.3; });
            if (!apart) continue;
            e.roots.push_back({z, k});
            used += k;
        }
        e.polynomial = from_roots(e.roots, std::polar(lead(rng), turn(rng)));
        corpus.push_back(std::move(e));
    }
    return corpus;
}

}  // namespace halley
