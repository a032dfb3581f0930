#pragma once

#include <cstdint>
#include <vector>

namespace gdei {

struct EfficiencyInputs {
    double loss_initial;  // > 0
    double loss_prev;
    double loss_current;
};

struct EfficiencyRecord {
    std::uint64_t k = 0;   // iteration index, >= 2
    double p_k = 0.0;      // proportion of the initial loss eliminated
    double delta_k = 0.0;  // |L_{k-1} - L_k|
    double e_k = 0.0;      // score in [0, 99]

    bool operator==(const EfficiencyRecord&) const = default;
};

// (loss_initial - loss_current) / loss_initial. Negative when the loss has
// risen above its starting value.
double proportion_reduced(double loss_initial, double loss_current);

// |loss_prev - loss_current|
double delta_loss(double loss_prev, double loss_current);

// 100 - min(100, max(1, 100 p / (1 + ln(1 + delta^2)))).
// Lower is better: 0 means all of the initial loss is gone and the last
// step changed nothing; 99 means no retained progress.
double efficiency_score(double p_k, double delta_k);

// efficiency_score composed over the two loss-derived terms.
double efficiency_from_losses(const EfficiencyInputs& inputs);

// True iff at least `patience` scores exist and the last `patience` of them
// are all <= threshold.
bool should_stop(const std::vector<double>& recent_scores, double threshold,
                 std::size_t patience);

}  // namespace gdei
