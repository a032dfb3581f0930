#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "gdei/dataset.hpp"
#include "gdei/efficiency.hpp"
#include "gdei/loss.hpp"
#include "gdei/optim.hpp"

namespace gdei {

struct StoppingConfig {
    double threshold = 5.0;
    std::size_t patience = 10;

    bool operator==(const StoppingConfig&) const = default;
};

struct RunConfig {
    OptimizerConfig optimizer;
    std::uint64_t n_iterations = 1000;  // >= 2, E_k needs two losses
    double initial_learning_rate = 0.05;
    double decay_rate = 1.0;  // multiplicative, 1.0 = no decay
    std::uint64_t seed = 42;
    std::optional<StoppingConfig> stopping;

    bool operator==(const RunConfig&) const = default;
};

struct IterationRecord {
    std::uint64_t k = 0;
    double loss = 0.0;  // recorded after the parameter update
    double learning_rate_used = 0.0;
    std::optional<EfficiencyRecord> efficiency;  // absent at k = 1

    bool operator==(const IterationRecord&) const = default;
};

struct RunTrace {
    double loss_initial = 0.0;  // the k = 1 loss
    std::vector<IterationRecord> records;
    LinearModel final_model;
    std::optional<std::uint64_t> stopped_at;
    RunConfig config;  // echoed for provenance

    bool operator==(const RunTrace&) const = default;
};

// Loss went non-finite or past the guard bound; carries the iteration.
class DivergenceError : public std::runtime_error {
public:
    DivergenceError(std::uint64_t iteration, const std::string& what_arg)
        : std::runtime_error(what_arg), iteration_(iteration) {}
    std::uint64_t iteration() const { return iteration_; }

private:
    std::uint64_t iteration_;
};

struct RunSummary {
    double final_loss = 0.0;
    std::optional<double> final_efficiency;
    std::optional<std::uint64_t> stopped_at;
};

// One label's outcome: either a trace with its summary, or an error message.
struct ComparisonEntry {
    std::optional<RunTrace> trace;
    std::optional<RunSummary> summary;
    std::optional<std::string> error;
};

struct ComparisonReport {
    std::map<std::string, ComparisonEntry> entries;  // sorted by label
};

RunSummary summarize(const RunTrace& trace);

// Full-batch training loop: theta from a seeded standard-normal draw, bias
// column prepended once, loss recorded after each update, efficiencies from
// k = 2 on, multiplicative learning-rate decay (warm-restart schedule for
// SGDWarmRestarts), optional efficiency-based early stop.
RunTrace train(const Dataset& dataset, const RunConfig& config);

// Run every config against the shared dataset. A run that fails is reported
// in its entry; the remaining runs still complete. Labels must be unique
// and pair up with configs by position.
ComparisonReport compare(const Dataset& dataset, const std::vector<RunConfig>& configs,
                         const std::vector<std::string>& labels);

}  // namespace gdei
