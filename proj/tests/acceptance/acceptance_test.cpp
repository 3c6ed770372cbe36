// Runs E1..E10 at full size (800x800 grids, 200 iterations) and prints one
// line per criterion. Exits nonzero when any criterion fails or runs longer
// than a minute.
#include <cstdio>

#include "halley/paperlab.hpp"

int main() {
    constexpr double kBudgetSeconds = 60.0;
    halley::PaperlabOptions opts;
    opts.resolution = 800;
    opts.max_iter = 200;

    int failures = 0;
    for (const auto& id : halley::experiment_ids()) {
        const halley::ExperimentResult r = halley::run_experiment(id, opts);
        const bool in_budget = r.seconds < kBudgetSeconds;
        const bool ok = r.passed && in_budget;
        if (!ok) ++failures;
        std::printf("%-4s %s  (%.2f s)  %s%s\n", r.id.c_str(), ok ? "PASS" : "FAIL", r.seconds, r.detail.c_str(),
                    in_budget ? "" : "  [over time budget]");
        std::fflush(stdout);
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(halley::experiment_ids().size()) - failures,
                halley::experiment_ids().size());
    return failures == 0 ? 0 : 1;
}
