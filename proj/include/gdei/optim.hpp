#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace gdei {

enum class OptimizerVariant {
    GD,
    Momentum,
    NAG,
    AdaGrad,
    RMSProp,
    Adam,
    AdaMax,
    AMSGrad,
    Nadam,
    SGDWarmRestarts,
};

// Parse/format the CLI-facing optimizer names (gd, momentum, nag, adagrad,
// rmsprop, adam, adamax, amsgrad, nadam, sgdwr).
OptimizerVariant optimizer_variant_from_name(const std::string& name);
std::string optimizer_variant_name(OptimizerVariant variant);

struct OptimizerConfig {
    OptimizerVariant variant = OptimizerVariant::GD;
    double alpha = 0.05;    // learning rate (eta for NAG and warm restarts)
    double beta = 0.9;      // momentum / EMA decay (gamma for NAG)
    double beta1 = 0.9;
    double beta2 = 0.999;
    double epsilon = 1e-8;
    std::uint64_t restart_period = 100;  // T0, first warm-restart cycle length
    std::uint64_t restart_mult = 2;      // cycle growth factor, >= 1
    double eta_min = 0.0;

    bool operator==(const OptimizerConfig&) const = default;
};

// Mutable per-run accumulators. Each step op touches only the vectors its
// update rule needs; step_count advances by exactly one per step.
struct OptimizerState {
    std::uint64_t step_count = 0;
    std::vector<double> velocity;           // momentum / NAG
    std::vector<double> grad_sq_accum;      // AdaGrad G_t
    std::vector<double> grad_sq_ema;        // RMSProp E[g^2]_t
    std::vector<double> first_moment;       // Adam family m_t
    std::vector<double> second_moment;      // Adam v_t (AdaMax's infinity-norm u_t)
    std::vector<double> second_moment_max;  // AMSGrad running max of corrected v

    OptimizerState() = default;
    explicit OptimizerState(std::size_t dim)
        : velocity(dim, 0.0),
          grad_sq_accum(dim, 0.0),
          grad_sq_ema(dim, 0.0),
          first_moment(dim, 0.0),
          second_moment(dim, 0.0),
          second_moment_max(dim, 0.0) {}
};

using GradientFn = std::function<std::vector<double>(const std::vector<double>&)>;

// theta - alpha * g
std::vector<double> gd_step(const std::vector<double>& theta, const std::vector<double>& gradient,
                            double alpha);

// v <- beta v + (1 - beta) g; theta - alpha v
std::vector<double> momentum_step(OptimizerState& state, const std::vector<double>& theta,
                                  const std::vector<double>& gradient, double alpha, double beta);

// v <- gamma v + eta * grad(theta - gamma v); theta - v.
// gradient_at is probed at the look-ahead point, not at theta.
std::vector<double> nag_step(OptimizerState& state, const std::vector<double>& theta,
                             const GradientFn& gradient_at, double gamma, double eta);

// G <- G + g^2; theta - alpha / sqrt(G + eps) * g
std::vector<double> adagrad_step(OptimizerState& state, const std::vector<double>& theta,
                                 const std::vector<double>& gradient, double alpha, double epsilon);

// E <- beta E + (1 - beta) g^2; theta - alpha / sqrt(E + eps) * g
std::vector<double> rmsprop_step(OptimizerState& state, const std::vector<double>& theta,
                                 const std::vector<double>& gradient, double alpha, double beta,
                                 double epsilon);

// Bias-corrected first/second moments; theta - alpha mhat / (sqrt(vhat) + eps).
// The step counter is advanced before correction so t starts at 1.
std::vector<double> adam_step(OptimizerState& state, const std::vector<double>& theta,
                              const std::vector<double>& gradient, double alpha, double beta1,
                              double beta2, double epsilon);

// Adam with the infinity norm: u <- max(beta2 u, |g|); theta - alpha/(1-beta1^t) * m/(u+eps)
std::vector<double> adamax_step(OptimizerState& state, const std::vector<double>& theta,
                                const std::vector<double>& gradient, double alpha, double beta1,
                                double beta2, double epsilon);

// Adam with a running max over the corrected second moment in the denominator.
std::vector<double> amsgrad_step(OptimizerState& state, const std::vector<double>& theta,
                                 const std::vector<double>& gradient, double alpha, double beta1,
                                 double beta2, double epsilon);

// Adam with a Nesterov-blended numerator: beta1 mhat + (1 - beta1) g / (1 - beta1^t).
std::vector<double> nadam_step(OptimizerState& state, const std::vector<double>& theta,
                               const std::vector<double>& gradient, double alpha, double beta1,
                               double beta2, double epsilon);

// Cosine-annealed learning rate with warm restarts. Cycle lengths grow
// geometrically: T0, T0*mult, T0*mult^2, ... Returns eta_max exactly at
// every cycle start (t = 0 included).
double warm_restart_lr(std::uint64_t t, double eta_max, double eta_min,
                       std::uint64_t restart_period, std::uint64_t restart_mult);

// Dispatch one step for the configured variant at the given effective
// learning rate. gradient_at is only consulted by NAG.
std::vector<double> apply_step(const OptimizerConfig& config, OptimizerState& state,
                               const std::vector<double>& theta,
                               const std::vector<double>& gradient, const GradientFn& gradient_at,
                               double effective_lr);

}  // namespace gdei
