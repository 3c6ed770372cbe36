#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "halley/polycore.hpp"

namespace halley {

struct ExperimentResult {
    std::string id;
    bool passed = false;
    std::string detail;
    double seconds = 0.0;
};

struct PaperlabOptions {
    /// Grid side for the basin experiments.
    int resolution = 800;
    int max_iter = 200;
    /// Overrides the orbit capture radius everywhere, including the
    /// convergence-rate check of E2.
    std::optional<double> capture_radius;
    /// Experiment ids to run ("E1".."E10"); empty runs all.
    std::vector<std::string> only;
};

/// Ids in run order.
const std::vector<std::string>& experiment_ids();

/// Runs one experiment. Throws InvalidArgument for an unknown id.
ExperimentResult run_experiment(const std::string& id, const PaperlabOptions& opts = {});

/// Runs the selected experiments in order, calling `on_result` after each.
std::vector<ExperimentResult> run_paperlab(const PaperlabOptions& opts = {},
                                           const std::function<void(const ExperimentResult&)>& on_result = {});

struct CorpusEntry {
    std::vector<RootCluster> roots;
    Polynomial polynomial;
};

/// Degrees 3 to 6, multiplicities 1 to 3, roots in [-1.5, 1.5]^2 at least
/// 0.3 apart, complex leading coefficient. Deterministic in `seed`.
std::vector<CorpusEntry> random_corpus(int count, std::uint64_t seed);

}  // namespace halley
