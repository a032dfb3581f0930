#include "gdei/optim.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace gdei {

namespace {

void check_lengths(std::size_t a, std::size_t b, const char* op) {
    if (a != b) {
        throw std::invalid_argument(std::string(op) + ": theta and gradient lengths differ");
    }
}

void check_finite(const std::vector<double>& gradient, const char* op) {
    for (double g : gradient) {
        if (!std::isfinite(g)) {
            throw std::invalid_argument(std::string(op) + ": non-finite gradient component");
        }
    }
}

}  // namespace

OptimizerVariant optimizer_variant_from_name(const std::string& name) {
    if (name == "gd") return OptimizerVariant::GD;
    if (name == "momentum") return OptimizerVariant::Momentum;
    if (name == "nag") return OptimizerVariant::NAG;
    if (name == "adagrad") return OptimizerVariant::AdaGrad;
    if (name == "rmsprop") return OptimizerVariant::RMSProp;
    if (name == "adam") return OptimizerVariant::Adam;
    if (name == "adamax") return OptimizerVariant::AdaMax;
    if (name == "amsgrad") return OptimizerVariant::AMSGrad;
    if (name == "nadam") return OptimizerVariant::Nadam;
    if (name == "sgdwr") return OptimizerVariant::SGDWarmRestarts;
    throw std::invalid_argument("unknown optimizer \"" + name + "\"");
}

std::string optimizer_variant_name(OptimizerVariant variant) {
    switch (variant) {
        case OptimizerVariant::GD: return "gd";
        case OptimizerVariant::Momentum: return "momentum";
        case OptimizerVariant::NAG: return "nag";
        case OptimizerVariant::AdaGrad: return "adagrad";
        case OptimizerVariant::RMSProp: return "rmsprop";
        case OptimizerVariant::Adam: return "adam";
        case OptimizerVariant::AdaMax: return "adamax";
        case OptimizerVariant::AMSGrad: return "amsgrad";
        case OptimizerVariant::Nadam: return "nadam";
        case OptimizerVariant::SGDWarmRestarts: return "sgdwr";
    }
    throw std::invalid_argument("unknown optimizer variant");
}

std::vector<double> gd_step(const std::vector<double>& theta, const std::vector<double>& gradient,
                            double alpha) {
    check_lengths(theta.size(), gradient.size(), "gd_step");
    check_finite(gradient, "gd_step");
    std::vector<double> out(theta.size());
    for (std::size_t i = 0; i < theta.size(); ++i) {
        out[i] = theta[i] - alpha * gradient[i];
    }
    return out;
}

std::vector<double> momentum_step(OptimizerState& state, const std::vector<double>& theta,
                                  const std::vector<double>& gradient, double alpha, double beta) {
    check_lengths(theta.size(), gradient.size(), "momentum_step");
    check_lengths(theta.size(), state.velocity.size(), "momentum_step");
    state.step_count += 1;
    std::vector<double> out(theta.size());
    for (std::size_t i = 0; i < theta.size(); ++i) {
        state.velocity[i] = beta * state.velocity[i] + (1.0 - beta) * gradient[i];
        out[i] = theta[i] - alpha * state.velocity[i];
    }
    return out;
}

std::vector<double> nag_step(OptimizerState& state, const std::vector<double>& theta,
                             const GradientFn& gradient_at, double gamma, double eta) {
    check_lengths(theta.size(), state.velocity.size(), "nag_step");
    std::vector<double> lookahead(theta.size());
    for (std::size_t i = 0; i < theta.size(); ++i) {
        lookahead[i] = theta[i] - gamma * state.velocity[i];
    }
    std::vector<double> gradient = gradient_at(lookahead);
    check_lengths(theta.size(), gradient.size(), "nag_step");
    check_finite(gradient, "nag_step");
    state.step_count += 1;
    std::vector<double> out(theta.size());
    for (std::size_t i = 0; i < theta.size(); ++i) {
        state.velocity[i] = gamma * state.velocity[i] + eta * gradient[i];
        out[i] = theta[i] - state.velocity[i];
    }
    return out;
}

std::vector<double> adagrad_step(OptimizerState& state, const std::vector<double>& theta,
                                 const std::vector<double>& gradient, double alpha,
                                 double epsilon) {
    check_lengths(theta.size(), gradient.size(), "adagrad_step");
    check_lengths(theta.size(), state.grad_sq_accum.size(), "adagrad_step");
    state.step_count += 1;
    std::vector<double> out(theta.size());
    for (std::size_t i = 0; i < theta.size(); ++i) {
        state.grad_sq_accum[i] += gradient[i] * gradient[i];
        // epsilon sits inside the root for the AdaGrad/RMSProp family
        out[i] = theta[i] - alpha / std::sqrt(state.grad_sq_accum[i] + epsilon) * gradient[i];
    }
    return out;
}

std::vector<double> rmsprop_step(OptimizerState& state, const std::vector<double>& theta,
                                 const std::vector<double>& gradient, double alpha, double beta,
                                 double epsilon) {
    check_lengths(theta.size(), gradient.size(), "rmsprop_step");
    check_lengths(theta.size(), state.grad_sq_ema.size(), "rmsprop_step");
    state.step_count += 1;
    std::vector<double> out(theta.size());
    for (std::size_t i = 0; i < theta.size(); ++i) {
        state.grad_sq_ema[i] = beta * state.grad_sq_ema[i] + (1.0 - beta) * gradient[i] * gradient[i];
        out[i] = theta[i] - alpha / std::sqrt(state.grad_sq_ema[i] + epsilon) * gradient[i];
    }
    return out;
}

std::vector<double> adam_step(OptimizerState& state, const std::vector<double>& theta,
                              const std::vector<double>& gradient, double alpha, double beta1,
                              double beta2, double epsilon) {
    check_lengths(theta.size(), gradient.size(), "adam_step");
    check_lengths(theta.size(), state.first_moment.size(), "adam_step");
    state.step_count += 1;  // advance first so the correction sees t >= 1
    const auto t = static_cast<double>(state.step_count);
    const double correction1 = 1.0 - std::pow(beta1, t);
    const double correction2 = 1.0 - std::pow(beta2, t);
    std::vector<double> out(theta.size());
    for (std::size_t i = 0; i < theta.size(); ++i) {
        state.first_moment[i] = beta1 * state.first_moment[i] + (1.0 - beta1) * gradient[i];
        state.second_moment[i] =
            beta2 * state.second_moment[i] + (1.0 - beta2) * gradient[i] * gradient[i];
        const double m_hat = state.first_moment[i] / correction1;
        const double v_hat = state.second_moment[i] / correction2;
        out[i] = theta[i] - alpha * m_hat / (std::sqrt(v_hat) + epsilon);
    }
    return out;
}

std::vector<double> adamax_step(OptimizerState& state, const std::vector<double>& theta,
                                const std::vector<double>& gradient, double alpha, double beta1,
                                double beta2, double epsilon) {
    check_lengths(theta.size(), gradient.size(), "adamax_step");
    check_lengths(theta.size(), state.first_moment.size(), "adamax_step");
    state.step_count += 1;
    const auto t = static_cast<double>(state.step_count);
    const double correction1 = 1.0 - std::pow(beta1, t);
    std::vector<double> out(theta.size());
    for (std::size_t i = 0; i < theta.size(); ++i) {
        state.first_moment[i] = beta1 * state.first_moment[i] + (1.0 - beta1) * gradient[i];
        state.second_moment[i] =
            std::max(beta2 * state.second_moment[i], std::abs(gradient[i]));
        out[i] = theta[i] - alpha / correction1 * state.first_moment[i] /
                                (state.second_moment[i] + epsilon);
    }
    return out;
}

std::vector<double> amsgrad_step(OptimizerState& state, const std::vector<double>& theta,
                                 const std::vector<double>& gradient, double alpha, double beta1,
                                 double beta2, double epsilon) {
    check_lengths(theta.size(), gradient.size(), "amsgrad_step");
    check_lengths(theta.size(), state.first_moment.size(), "amsgrad_step");
    state.step_count += 1;
    const auto t = static_cast<double>(state.step_count);
    const double correction1 = 1.0 - std::pow(beta1, t);
    const double correction2 = 1.0 - std::pow(beta2, t);
    std::vector<double> out(theta.size());
    for (std::size_t i = 0; i < theta.size(); ++i) {
        state.first_moment[i] = beta1 * state.first_moment[i] + (1.0 - beta1) * gradient[i];
        state.second_moment[i] =
            beta2 * state.second_moment[i] + (1.0 - beta2) * gradient[i] * gradient[i];
        const double m_hat = state.first_moment[i] / correction1;
        const double v_hat = state.second_moment[i] / correction2;
        state.second_moment_max[i] = std::max(state.second_moment_max[i], v_hat);
        out[i] = theta[i] - alpha * m_hat / (std::sqrt(state.second_moment_max[i]) + epsilon);
    }
    return out;
}

std::vector<double> nadam_step(OptimizerState& state, const std::vector<double>& theta,
                               const std::vector<double>& gradient, double alpha, double beta1,
                               double beta2, double epsilon) {
    check_lengths(theta.size(), gradient.size(), "nadam_step");
    check_lengths(theta.size(), state.first_moment.size(), "nadam_step");
    state.step_count += 1;
    const auto t = static_cast<double>(state.step_count);
    const double correction1 = 1.0 - std::pow(beta1, t);
    const double correction2 = 1.0 - std::pow(beta2, t);
    std::vector<double> out(theta.size());
    for (std::size_t i = 0; i < theta.size(); ++i) {
        state.first_moment[i] = beta1 * state.first_moment[i] + (1.0 - beta1) * gradient[i];
        state.second_moment[i] =
            beta2 * state.second_moment[i] + (1.0 - beta2) * gradient[i] * gradient[i];
        const double m_hat = state.first_moment[i] / correction1;
        const double v_hat = state.second_moment[i] / correction2;
        const double blended = beta1 * m_hat + (1.0 - beta1) * (gradient[i] / correction1);
        out[i] = theta[i] - alpha * blended / (std::sqrt(v_hat) + epsilon);
    }
    return out;
}

double warm_restart_lr(std::uint64_t t, double eta_max, double eta_min,
                       std::uint64_t restart_period, std::uint64_t restart_mult) {
    if (restart_period == 0) {
        throw std::invalid_argument("warm_restart_lr: restart_period must be >= 1");
    }
    if (restart_mult == 0) {
        throw std::invalid_argument("warm_restart_lr: restart_mult must be >= 1");
    }
    if (eta_min > eta_max) {
        throw std::invalid_argument("warm_restart_lr: eta_min must not exceed eta_max");
    }
    std::uint64_t t_cur;
    std::uint64_t cycle_length = restart_period;
    if (restart_mult == 1) {
        t_cur = t % restart_period;  // constant cycles have a closed form
    } else {
        std::uint64_t cycle_start = 0;
        while (t >= cycle_start + cycle_length) {
            cycle_start += cycle_length;
            cycle_length *= restart_mult;
        }
        t_cur = t - cycle_start;
    }
    if (t_cur == 0) {
        return eta_max;  // exact at every cycle start
    }
    const double phase = std::numbers::pi * static_cast<double>(t_cur) /
                         static_cast<double>(cycle_length);
    return eta_min + 0.5 * (eta_max - eta_min) * (1.0 + std::cos(phase));
}

std::vector<double> apply_step(const OptimizerConfig& config, OptimizerState& state,
                               const std::vector<double>& theta,
                               const std::vector<double>& gradient, const GradientFn& gradient_at,
                               double effective_lr) {
    switch (config.variant) {
        case OptimizerVariant::GD:
        case OptimizerVariant::SGDWarmRestarts:
            state.step_count += 1;
            return gd_step(theta, gradient, effective_lr);
        case OptimizerVariant::Momentum:
            return momentum_step(state, theta, gradient, effective_lr, config.beta);
        case OptimizerVariant::NAG:
            return nag_step(state, theta, gradient_at, config.beta, effective_lr);
        case OptimizerVariant::AdaGrad:
            return adagrad_step(state, theta, gradient, effective_lr, config.epsilon);
        case OptimizerVariant::RMSProp:
            return rmsprop_step(state, theta, gradient, effective_lr, config.beta, config.epsilon);
        case OptimizerVariant::Adam:
            return adam_step(state, theta, gradient, effective_lr, config.beta1, config.beta2,
                             config.epsilon);
        case OptimizerVariant::AdaMax:
            return adamax_step(state, theta, gradient, effective_lr, config.beta1, config.beta2,
                               config.epsilon);
        case OptimizerVariant::AMSGrad:
            return amsgrad_step(state, theta, gradient, effective_lr, config.beta1, config.beta2,
                                config.epsilon);
        case OptimizerVariant::Nadam:
            return nadam_step(state, theta, gradient, effective_lr, config.beta1, config.beta2,
                              config.epsilon);
    }
    throw std::invalid_argument("apply_step: unknown optimizer variant");
}

}  // namespace gdei
