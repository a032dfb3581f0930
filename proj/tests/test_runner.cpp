#include <doctest.h>

#include <cmath>

#include "gdei/runner.hpp"
#include "oracles.hpp"

using gdei::Dataset;
using gdei::GeneratorConfig;
using gdei::OptimizerVariant;
using gdei::RunConfig;
using gdei::RunTrace;

namespace {

Dataset default_synthetic() {
    GeneratorConfig config;  // n=1000, m=1, seed=42
    return gdei::generate_data(config);
}

RunConfig gd_config(double alpha, std::uint64_t iters) {
    RunConfig config;
    config.optimizer.variant = OptimizerVariant::GD;
    config.optimizer.alpha = alpha;
    config.initial_learning_rate = alpha;
    config.n_iterations = iters;
    config.seed = 42;
    return config;
}

}  // namespace

TEST_CASE("a zero learning rate freezes the run at score 99") {
    const Dataset d = default_synthetic();
    RunConfig config = gd_config(0.0, 50);
    const RunTrace trace = gdei::train(d, config);
    REQUIRE(trace.records.size() == 50);
    CHECK(trace.records[0].loss == trace.loss_initial);
    for (const auto& record : trace.records) {
        CHECK(record.loss == trace.loss_initial);
        if (record.k >= 2) {
            REQUIRE(record.efficiency.has_value());
            CHECK(record.efficiency->p_k == 0.0);
            CHECK(record.efficiency->delta_k == 0.0);
            CHECK(record.efficiency->e_k == 99.0);
        } else {
            CHECK_FALSE(record.efficiency.has_value());
        }
    }
}

TEST_CASE("gd converges to the least-squares solution on noiseless data") {
    GeneratorConfig gen;
    gen.n = 200;
    gen.m = 1;
    gen.seed = 3;
    gen.noise_sigma = 0.0;
    const Dataset d = gdei::generate_data(gen);

    const RunTrace trace = gdei::train(d, gd_config(0.05, 20000));
    const auto expected = oracles::least_squares(gdei::add_bias(d.features), d.targets);
    REQUIRE(trace.final_model.theta.size() == expected.size());
    for (std::size_t j = 0; j < expected.size(); ++j) {
        CHECK(std::abs(trace.final_model.theta[j] - expected[j]) < 1e-3);
    }
    // the noiseless generating law is itself the solution
    CHECK(std::abs(expected[0] - 4.0) < 1e-9);
    CHECK(std::abs(expected[1] - 3.0) < 1e-9);
}

TEST_CASE("identical config and dataset give identical traces") {
    const Dataset d = default_synthetic();
    const RunConfig config = gd_config(0.05, 200);
    CHECK(gdei::train(d, config) == gdei::train(d, config));

    RunConfig reseeded = config;
    reseeded.seed = 43;
    CHECK(gdei::train(d, reseeded) != gdei::train(d, config));
}

TEST_CASE("stored efficiencies recompute bit-exactly from stored losses") {
    const Dataset d = default_synthetic();
    RunConfig config = gd_config(0.05, 300);
    config.optimizer.variant = OptimizerVariant::Adam;
    config.initial_learning_rate = 0.1;
    const RunTrace trace = gdei::train(d, config);
    for (std::size_t i = 1; i < trace.records.size(); ++i) {
        const auto& record = trace.records[i];
        REQUIRE(record.efficiency.has_value());
        const double recomputed = gdei::efficiency_from_losses(
            {trace.loss_initial, trace.records[i - 1].loss, record.loss});
        CHECK(record.efficiency->e_k == recomputed);
    }
}

TEST_CASE("multiplicative decay matches the closed-form schedule") {
    const Dataset d = default_synthetic();
    RunConfig config = gd_config(0.05, 120);
    config.decay_rate = 0.9;
    const RunTrace trace = gdei::train(d, config);
    for (const auto& record : trace.records) {
        const double expected =
            0.05 * std::pow(0.9, static_cast<double>(record.k - 1));
        CHECK(std::abs(record.learning_rate_used - expected) <= 1e-12 * expected);
    }
}

TEST_CASE("warm restarts override the decay schedule") {
    const Dataset d = default_synthetic();
    RunConfig config;
    config.optimizer.variant = OptimizerVariant::SGDWarmRestarts;
    config.optimizer.restart_period = 10;
    config.optimizer.restart_mult = 2;
    config.optimizer.eta_min = 0.001;
    config.initial_learning_rate = 0.05;
    config.decay_rate = 0.5;  // ignored for this variant
    config.n_iterations = 40;
    const RunTrace trace = gdei::train(d, config);
    for (const auto& record : trace.records) {
        const double expected = gdei::warm_restart_lr(record.k - 1, 0.05, 0.001, 10, 2);
        CHECK(record.learning_rate_used == expected);
    }
    CHECK(trace.records[0].learning_rate_used == 0.05);
    CHECK(trace.records[10].learning_rate_used == 0.05);  // k=11 starts the second cycle
}

TEST_CASE("early stopping fires at the first qualifying window") {
    const Dataset d = default_synthetic();
    RunConfig config = gd_config(0.05, 500);
    config.stopping = gdei::StoppingConfig{5.0, 10};
    const RunTrace trace = gdei::train(d, config);

    REQUIRE(trace.stopped_at.has_value());
    CHECK(*trace.stopped_at <= 500);
    CHECK(trace.records.back().k == *trace.stopped_at);

    // independent scan over the recorded scores
    std::vector<double> scores;
    std::optional<std::uint64_t> first_window;
    for (const auto& record : trace.records) {
        if (!record.efficiency) continue;
        scores.push_back(record.efficiency->e_k);
        if (scores.size() >= 10 && !first_window) {
            bool all_below = true;
            for (std::size_t i = scores.size() - 10; i < scores.size(); ++i) {
                if (!(scores[i] <= 5.0)) all_below = false;
            }
            if (all_below) first_window = record.k;
        }
    }
    REQUIRE(first_window.has_value());
    CHECK(*trace.stopped_at == *first_window);

    // without stopping configured the run goes the full distance
    RunConfig no_stop = gd_config(0.05, 500);
    CHECK_FALSE(gdei::train(d, no_stop).stopped_at.has_value());
}

TEST_CASE("divergence aborts with the iteration in the message") {
    const Dataset d = default_synthetic();
    try {
        gdei::train(d, gd_config(10.0, 100));
        FAIL("expected divergence");
    } catch (const gdei::DivergenceError& e) {
        CHECK(e.iteration() >= 1);
        CHECK(std::string(e.what()).find("iteration") != std::string::npos);
        CHECK(std::string(e.what()).find(std::to_string(e.iteration())) != std::string::npos);
    }
}

TEST_CASE("loss curve collapses early and flattens late") {
    const Dataset d = default_synthetic();
    const RunTrace trace = gdei::train(d, gd_config(0.05, 2000));
    const double l_initial = trace.loss_initial;
    const double l_100 = trace.records[99].loss;
    const double l_half = trace.records[999].loss;
    const double l_final = trace.records.back().loss;
    CHECK(l_100 < 0.2 * l_initial);
    CHECK(std::abs(l_half - l_final) < 1e-3 * (l_initial - l_final));
}

TEST_CASE("train validates its inputs") {
    const Dataset d = default_synthetic();
    RunConfig config = gd_config(0.05, 1);
    CHECK_THROWS_AS(gdei::train(d, config), std::invalid_argument);  // needs >= 2 iterations

    config = gd_config(0.05, 10);
    config.decay_rate = 0.0;
    CHECK_THROWS_AS(gdei::train(d, config), std::invalid_argument);
    config.decay_rate = 1.5;
    CHECK_THROWS_AS(gdei::train(d, config), std::invalid_argument);

    config = gd_config(0.05, 10);
    config.optimizer.beta = 1.0;
    CHECK_THROWS_AS(gdei::train(d, config), std::invalid_argument);

    config = gd_config(0.05, 10);
    config.optimizer.epsilon = 0.0;
    CHECK_THROWS_AS(gdei::train(d, config), std::invalid_argument);

    config = gd_config(-0.05, 10);
    CHECK_THROWS_AS(gdei::train(d, config), std::invalid_argument);

    CHECK_THROWS_AS(gdei::train(Dataset{}, gd_config(0.05, 10)), std::invalid_argument);
}

TEST_CASE("every optimizer variant completes a short run") {
    const Dataset d = default_synthetic();
    for (OptimizerVariant variant :
         {OptimizerVariant::GD, OptimizerVariant::Momentum, OptimizerVariant::NAG,
          OptimizerVariant::AdaGrad, OptimizerVariant::RMSProp, OptimizerVariant::Adam,
          OptimizerVariant::AdaMax, OptimizerVariant::AMSGrad, OptimizerVariant::Nadam,
          OptimizerVariant::SGDWarmRestarts}) {
        RunConfig config;
        config.optimizer.variant = variant;
        config.optimizer.alpha = variant == OptimizerVariant::NAG ? 0.01 : 0.05;
        config.initial_learning_rate = config.optimizer.alpha;
        config.n_iterations = 50;
        const RunTrace trace = gdei::train(d, config);
        CHECK(trace.records.size() == 50);
        CHECK(trace.records.back().loss < trace.loss_initial);
        for (std::size_t i = 0; i < trace.records.size(); ++i) {
            CHECK(trace.records[i].k == i + 1);
        }
    }
}

TEST_CASE("compare runs all configs and keys results by label") {
    const Dataset d = default_synthetic();
    const RunConfig gd = gd_config(0.05, 5000);
    RunConfig adam = gd_config(0.1, 5000);
    adam.optimizer.variant = OptimizerVariant::Adam;

    const gdei::ComparisonReport report = gdei::compare(d, {gd, adam}, {"gd", "adam"});
    REQUIRE(report.entries.size() == 2);
    REQUIRE(report.entries.count("gd") == 1);
    REQUIRE(report.entries.count("adam") == 1);

    // both optimizers approach the attainable least-squares floor
    const auto ols = oracles::least_squares(gdei::add_bias(d.features), d.targets);
    std::vector<double> residual(d.n_samples());
    const auto xb = gdei::add_bias(d.features);
    for (std::size_t i = 0; i < d.n_samples(); ++i) {
        double fit = 0.0;
        for (std::size_t j = 0; j < xb.cols; ++j) fit += xb(i, j) * ols[j];
        residual[i] = fit - d.targets[i];
    }
    double floor = 0.0;
    for (double r : residual) floor += r * r;
    floor /= static_cast<double>(d.n_samples());

    for (const auto& [label, entry] : report.entries) {
        REQUIRE(entry.summary.has_value());
        CHECK(entry.summary->final_loss <= 1.05 * floor);
        CHECK(entry.summary->final_loss >= floor * (1.0 - 1e-9));
    }
}

TEST_CASE("compare gives identical summaries for identical configs") {
    const Dataset d = default_synthetic();
    const RunConfig config = gd_config(0.05, 100);
    const auto report = gdei::compare(d, {config, config}, {"a", "b"});
    const auto& a = report.entries.at("a");
    const auto& b = report.entries.at("b");
    REQUIRE((a.trace.has_value() && b.trace.has_value()));
    CHECK(*a.trace == *b.trace);
    CHECK(a.summary->final_loss == b.summary->final_loss);
}

TEST_CASE("compare isolates a diverging run") {
    const Dataset d = default_synthetic();
    const auto report =
        gdei::compare(d, {gd_config(10.0, 100), gd_config(0.05, 100)}, {"wild", "sane"});
    const auto& wild = report.entries.at("wild");
    const auto& sane = report.entries.at("sane");
    REQUIRE(wild.error.has_value());
    CHECK(wild.error->find("diverged") != std::string::npos);
    CHECK_FALSE(wild.trace.has_value());
    REQUIRE(sane.summary.has_value());
    CHECK(sane.summary->final_loss < sane.trace->loss_initial);
}

TEST_CASE("compare validates labels and arity") {
    const Dataset d = default_synthetic();
    const RunConfig config = gd_config(0.05, 10);
    CHECK_THROWS_AS(gdei::compare(d, {config}, {"only"}), std::invalid_argument);
    CHECK_THROWS_AS(gdei::compare(d, {config, config}, {"dup", "dup"}), std::invalid_argument);
    CHECK_THROWS_AS(gdei::compare(d, {config, config}, {"a"}), std::invalid_argument);
}
