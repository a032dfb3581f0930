#include "gdei/runner.hpp"

#include <cmath>
#include <set>

#include "gdei/rng.hpp"

namespace gdei {

namespace {

constexpr double kDivergenceBound = 1e12;

void validate_dataset(const Dataset& dataset) {
    if (dataset.n_samples() == 0 || dataset.n_features() == 0) {
        throw std::invalid_argument("train: dataset must have at least one row and column");
    }
    if (dataset.targets.size() != dataset.n_samples()) {
        throw std::invalid_argument("train: target length does not match row count");
    }
    for (double v : dataset.features.data) {
        if (!std::isfinite(v)) throw std::invalid_argument("train: non-finite feature value");
    }
    for (double v : dataset.targets) {
        if (!std::isfinite(v)) throw std::invalid_argument("train: non-finite target value");
    }
}

void validate_config(const RunConfig& config) {
    if (config.n_iterations < 2) {
        throw std::invalid_argument("train: n_iterations must be >= 2");
    }
    if (!(config.decay_rate > 0.0 && config.decay_rate <= 1.0)) {
        throw std::invalid_argument("train: decay_rate must lie in (0, 1]");
    }
    if (!(config.initial_learning_rate >= 0.0)) {
        throw std::invalid_argument("train: initial_learning_rate must be >= 0");
    }
    const OptimizerConfig& opt = config.optimizer;
    auto in_unit = [](double v) { return v >= 0.0 && v < 1.0; };
    if (!in_unit(opt.beta) || !in_unit(opt.beta1) || !in_unit(opt.beta2)) {
        throw std::invalid_argument("train: beta parameters must lie in [0, 1)");
    }
    if (!(opt.epsilon > 0.0)) {
        throw std::invalid_argument("train: epsilon must be > 0");
    }
    if (opt.restart_period == 0 || opt.restart_mult == 0) {
        throw std::invalid_argument("train: restart period and multiplier must be >= 1");
    }
    if (!(opt.eta_min >= 0.0)) {
        throw std::invalid_argument("train: eta_min must be >= 0");
    }
    if (config.stopping && config.stopping->patience == 0) {
        throw std::invalid_argument("train: stopping patience must be >= 1");
    }
}

double effective_learning_rate(const RunConfig& config, std::uint64_t k) {
    if (config.optimizer.variant == OptimizerVariant::SGDWarmRestarts) {
        return warm_restart_lr(k - 1, config.initial_learning_rate, config.optimizer.eta_min,
                               config.optimizer.restart_period, config.optimizer.restart_mult);
    }
    return config.initial_learning_rate *
           std::pow(config.decay_rate, static_cast<double>(k - 1));
}

}  // namespace

RunSummary summarize(const RunTrace& trace) {
    RunSummary summary;
    summary.final_loss = trace.records.back().loss;
    if (trace.records.back().efficiency) {
        summary.final_efficiency = trace.records.back().efficiency->e_k;
    }
    summary.stopped_at = trace.stopped_at;
    return summary;
}

RunTrace train(const Dataset& dataset, const RunConfig& config) {
    validate_dataset(dataset);
    validate_config(config);

    const Matrix xb = add_bias(dataset.features);
    const std::vector<double>& targets = dataset.targets;

    LinearModel model;
    model.theta.resize(xb.cols);
    std::mt19937_64 rng(config.seed);
    for (double& component : model.theta) {
        component = normal_unit(rng);
    }

    GradientFn gradient_at = [&](const std::vector<double>& point) {
        return mse_gradient(LinearModel{point}, xb, targets);
    };

    RunTrace trace;
    trace.config = config;
    OptimizerState state(xb.cols);
    std::vector<double> scores;
    double loss_prev = 0.0;

    for (std::uint64_t k = 1; k <= config.n_iterations; ++k) {
        const double lr = effective_learning_rate(config, k);

        std::vector<double> gradient;
        if (config.optimizer.variant != OptimizerVariant::NAG) {
            gradient = mse_gradient(model, xb, targets);
        }
        model.theta = apply_step(config.optimizer, state, model.theta, gradient, gradient_at, lr);

        const double loss = mse(predict(model, xb), targets);
        if (!std::isfinite(loss) || loss > kDivergenceBound) {
            throw DivergenceError(k, "training diverged at iteration " + std::to_string(k) +
                                         ": loss = " + std::to_string(loss));
        }

        IterationRecord record;
        record.k = k;
        record.loss = loss;
        record.learning_rate_used = lr;
        if (k == 1) {
            trace.loss_initial = loss;
        } else {
            EfficiencyRecord eff;
            eff.k = k;
            eff.p_k = proportion_reduced(trace.loss_initial, loss);
            eff.delta_k = delta_loss(loss_prev, loss);
            eff.e_k = efficiency_score(eff.p_k, eff.delta_k);
            record.efficiency = eff;
            scores.push_back(eff.e_k);
        }
        trace.records.push_back(record);
        loss_prev = loss;

        if (config.stopping && k >= 2 &&
            should_stop(scores, config.stopping->threshold, config.stopping->patience)) {
            trace.stopped_at = k;
            break;
        }
    }

    trace.final_model = model;
    return trace;
}

ComparisonReport compare(const Dataset& dataset, const std::vector<RunConfig>& configs,
                         const std::vector<std::string>& labels) {
    if (configs.size() < 2) {
        throw std::invalid_argument("compare: need at least two configs");
    }
    if (configs.size() != labels.size()) {
        throw std::invalid_argument("compare: configs and labels must pair up");
    }
    std::set<std::string> seen(labels.begin(), labels.end());
    if (seen.size() != labels.size()) {
        throw std::invalid_argument("compare: labels must be unique");
    }

    ComparisonReport report;
    for (std::size_t i = 0; i < configs.size(); ++i) {
        ComparisonEntry entry;
        try {
            RunTrace trace = train(dataset, configs[i]);
            entry.summary = summarize(trace);
            entry.trace = std::move(trace);
        } catch (const std::exception& e) {
            entry.error = e.what();
        }
        report.entries.emplace(labels[i], std::move(entry));
    }
    return report;
}

}  // namespace gdei
