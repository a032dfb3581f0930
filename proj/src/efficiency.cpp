#include "gdei/efficiency.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace gdei {

double proportion_reduced(double loss_initial, double loss_current) {
    if (!(loss_initial > 0.0)) {
        throw std::invalid_argument("proportion_reduced: loss_initial must be > 0");
    }
    return (loss_initial - loss_current) / loss_initial;
}

double delta_loss(double loss_prev, double loss_current) {
    return std::abs(loss_prev - loss_current);
}

double efficiency_score(double p_k, double delta_k) {
    const double damping = 1.0 + std::log(1.0 + delta_k * delta_k);
    const double raw = 100.0 * p_k / damping;
    return 100.0 - std::min(100.0, std::max(1.0, raw));
}

double efficiency_from_losses(const EfficiencyInputs& inputs) {
    return efficiency_score(proportion_reduced(inputs.loss_initial, inputs.loss_current),
                            delta_loss(inputs.loss_prev, inputs.loss_current));
}

bool should_stop(const std::vector<double>& recent_scores, double threshold,
                 std::size_t patience) {
    if (patience == 0) {
        throw std::invalid_argument("should_stop: patience must be >= 1");
    }
    if (recent_scores.size() < patience) {
        return false;
    }
    for (std::size_t i = recent_scores.size() - patience; i < recent_scores.size(); ++i) {
        if (!(recent_scores[i] <= threshold)) {
            return false;
        }
    }
    return true;
}

}  // namespace gdei
