// gdei: train linear models with a family of gradient-descent optimizers,
// score every iteration's efficiency, and emit traces, reports, and plots.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gdei/dataset.hpp"
#include "gdei/report.hpp"
#include "gdei/runner.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitDivergence = 3;

std::uint64_t default_seed() {
    const char* env = std::getenv("GDEI_SEED");
    if (!env || *env == '\0') return 42;
    char* end = nullptr;
    unsigned long long value = std::strtoull(env, &end, 10);
    if (end == env || *end != '\0') {
        throw std::invalid_argument("GDEI_SEED is not a valid unsigned integer: \"" +
                                    std::string(env) + "\"");
    }
    return value;
}

// Write via a sibling temp file and rename, so failed commands never leave
// partial output behind.
void write_file_atomic(const std::string& path, const std::string& content) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw std::runtime_error("cannot open \"" + tmp + "\" for writing");
        }
        out << content;
        if (!out) {
            throw std::runtime_error("failed while writing \"" + tmp + "\"");
        }
    }
    std::filesystem::rename(tmp, path);
}

std::string strip_extension(const std::string& path) {
    std::filesystem::path p(path);
    return (p.parent_path() / p.stem()).string();
}

// Optimizer spec grammar for compare: name[:key=val[,key=val...]].
// Keys: alpha, beta, beta1, beta2, epsilon (eps), t0, tmult, eta_min,
// decay, label.
struct OptimizerSpec {
    gdei::OptimizerConfig optimizer;
    double decay = 1.0;
    std::string label;
    bool alpha_set = false;
};

double parse_double_value(const std::string& key, const std::string& value) {
    try {
        std::size_t consumed = 0;
        double parsed = std::stod(value, &consumed);
        if (consumed != value.size()) throw std::invalid_argument(value);
        return parsed;
    } catch (const std::exception&) {
        throw std::invalid_argument("bad numeric value for \"" + key + "\": \"" + value + "\"");
    }
}

std::uint64_t parse_uint_value(const std::string& key, const std::string& value) {
    char* end = nullptr;
    unsigned long long parsed = std::strtoull(value.c_str(), &end, 10);
    if (end == value.c_str() || *end != '\0') {
        throw std::invalid_argument("bad integer value for \"" + key + "\": \"" + value + "\"");
    }
    return parsed;
}

OptimizerSpec parse_optimizer_spec(const std::string& spec) {
    OptimizerSpec out;
    out.label = spec;

    const std::size_t colon = spec.find(':');
    const std::string name = spec.substr(0, colon);
    out.optimizer.variant = gdei::optimizer_variant_from_name(name);

    if (colon == std::string::npos) return out;
    std::string rest = spec.substr(colon + 1);
    std::size_t pos = 0;
    while (pos < rest.size()) {
        std::size_t comma = rest.find(',', pos);
        if (comma == std::string::npos) comma = rest.size();
        const std::string item = rest.substr(pos, comma - pos);
        pos = comma + 1;
        const std::size_t eq = item.find('=');
        if (eq == std::string::npos || eq == 0) {
            throw std::invalid_argument("optimizer spec item \"" + item +
                                        "\" is not key=value (in \"" + spec + "\")");
        }
        const std::string key = item.substr(0, eq);
        const std::string value = item.substr(eq + 1);
        if (key == "alpha") {
            out.optimizer.alpha = parse_double_value(key, value);
            out.alpha_set = true;
        }
        else if (key == "beta") out.optimizer.beta = parse_double_value(key, value);
        else if (key == "beta1") out.optimizer.beta1 = parse_double_value(key, value);
        else if (key == "beta2") out.optimizer.beta2 = parse_double_value(key, value);
        else if (key == "epsilon" || key == "eps") out.optimizer.epsilon = parse_double_value(key, value);
        else if (key == "t0") out.optimizer.restart_period = parse_uint_value(key, value);
        else if (key == "tmult") out.optimizer.restart_mult = parse_uint_value(key, value);
        else if (key == "eta_min") out.optimizer.eta_min = parse_double_value(key, value);
        else if (key == "decay") out.decay = parse_double_value(key, value);
        else if (key == "label") out.label = value;
        else {
            throw std::invalid_argument("unknown optimizer spec key \"" + key + "\" (in \"" +
                                        spec + "\")");
        }
    }
    return out;
}

struct GenerateArgs {
    gdei::GeneratorConfig config;
    std::optional<std::uint64_t> seed;
    std::string target = "y";
    std::string output;
};

struct TrainArgs {
    std::string data_path;
    std::string target = "y";
    std::string optimizer_name = "gd";
    double alpha = 0.05;
    double beta = 0.9;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double epsilon = 1e-8;
    std::uint64_t restart_period = 100;
    std::uint64_t restart_mult = 2;
    double eta_min = 0.0;
    std::uint64_t iters = 1000;
    double decay = 1.0;
    std::optional<std::uint64_t> seed;
    std::optional<double> stop_threshold;
    std::size_t stop_patience = 10;
    std::string output;
    bool plot = false;
    bool log_y = false;
};

struct CompareArgs {
    std::string data_path;
    std::string target = "y";
    std::vector<std::string> optimizer_specs;
    std::uint64_t iters = 1000;
    double alpha = 0.05;
    std::optional<std::uint64_t> seed;
    std::optional<double> stop_threshold;
    std::size_t stop_patience = 10;
    std::string output;
    bool plot = false;
};

struct PlotArgs {
    std::string trace_path;
    std::vector<std::uint64_t> limits;
    std::string output_prefix;
    bool log_y = false;
};

int run_generate(const GenerateArgs& args) {
    gdei::GeneratorConfig config = args.config;
    config.seed = args.seed ? *args.seed : default_seed();
    const gdei::Dataset dataset = gdei::generate_data(config);
    const std::string csv = gdei::dataset_to_csv(dataset, args.target);
    write_file_atomic(args.output, csv);
    std::cout << "wrote " << args.output << ": " << dataset.n_samples() << " rows, "
              << dataset.n_features() << " feature column(s) + target \"" << args.target
              << "\"\n";
    return kExitOk;
}

int run_train(const TrainArgs& args) {
    gdei::RunConfig config;
    config.optimizer.variant = gdei::optimizer_variant_from_name(args.optimizer_name);
    config.optimizer.alpha = args.alpha;
    config.optimizer.beta = args.beta;
    config.optimizer.beta1 = args.beta1;
    config.optimizer.beta2 = args.beta2;
    config.optimizer.epsilon = args.epsilon;
    config.optimizer.restart_period = args.restart_period;
    config.optimizer.restart_mult = args.restart_mult;
    config.optimizer.eta_min = args.eta_min;
    config.n_iterations = args.iters;
    config.initial_learning_rate = args.alpha;
    config.decay_rate = args.decay;
    config.seed = args.seed ? *args.seed : default_seed();
    if (args.stop_threshold) {
        config.stopping = gdei::StoppingConfig{*args.stop_threshold, args.stop_patience};
    }

    const gdei::Dataset dataset = gdei::load_csv(args.data_path, args.target);
    const gdei::RunTrace trace = gdei::train(dataset, config);
    const gdei::RunSummary summary = gdei::summarize(trace);

    const std::string csv = gdei::trace_to_csv(trace);
    std::string loss_svg;
    std::string efficiency_svg;
    if (args.plot) {
        loss_svg = gdei::plot_loss_curve(
            trace, {static_cast<std::uint64_t>(trace.records.size())}, args.log_y);
        efficiency_svg = gdei::plot_efficiency_curve(trace);
    }

    write_file_atomic(args.output, csv);
    const std::string prefix = strip_extension(args.output);
    if (args.plot) {
        write_file_atomic(prefix + "_loss.svg", loss_svg);
        write_file_atomic(prefix + "_efficiency.svg", efficiency_svg);
    }

    std::cout << "final_loss=" << gdei::format_double(summary.final_loss);
    if (summary.final_efficiency) {
        std::cout << " final_efficiency=" << gdei::format_double(*summary.final_efficiency);
    }
    if (summary.stopped_at) {
        std::cout << " stopped_at=" << *summary.stopped_at;
    }
    std::cout << "\nwrote " << args.output;
    if (args.plot) {
        std::cout << ", " << prefix << "_loss.svg, " << prefix << "_efficiency.svg";
    }
    std::cout << "\n";
    return kExitOk;
}

int run_compare(const CompareArgs& args) {
    std::vector<gdei::RunConfig> configs;
    std::vector<std::string> labels;
    for (const std::string& spec_text : args.optimizer_specs) {
        OptimizerSpec spec = parse_optimizer_spec(spec_text);
        gdei::RunConfig config;
        config.optimizer = spec.optimizer;
        if (!spec.alpha_set) {
            config.optimizer.alpha = args.alpha;
        }
        config.n_iterations = args.iters;
        config.initial_learning_rate = config.optimizer.alpha;
        config.decay_rate = spec.decay;
        config.seed = args.seed ? *args.seed : default_seed();
        if (args.stop_threshold) {
            config.stopping = gdei::StoppingConfig{*args.stop_threshold, args.stop_patience};
        }
        configs.push_back(config);
        labels.push_back(spec.label);
    }
    for (std::size_t i = 0; i < labels.size(); ++i) {
        for (std::size_t j = i + 1; j < labels.size(); ++j) {
            if (labels[i] == labels[j]) {
                throw std::invalid_argument("duplicate label \"" + labels[i] +
                                            "\"; disambiguate with label=...");
            }
        }
    }

    const gdei::Dataset dataset = gdei::load_csv(args.data_path, args.target);
    const gdei::ComparisonReport report = gdei::compare(dataset, configs, labels);

    const std::string json = gdei::comparison_to_json(report);
    std::string overlay_svg;
    if (args.plot) {
        overlay_svg = gdei::plot_efficiency_overlay(report);
    }

    write_file_atomic(args.output, json);
    const std::string svg_path = strip_extension(args.output) + "_efficiency.svg";
    if (args.plot) {
        write_file_atomic(svg_path, overlay_svg);
    }

    for (const auto& [label, entry] : report.entries) {
        std::cout << label << ": ";
        if (entry.error) {
            std::cout << "error: " << *entry.error;
        } else if (entry.summary) {
            std::cout << "final_loss=" << gdei::format_double(entry.summary->final_loss);
            if (entry.summary->final_efficiency) {
                std::cout << " final_efficiency="
                          << gdei::format_double(*entry.summary->final_efficiency);
            }
            if (entry.summary->stopped_at) {
                std::cout << " stopped_at=" << *entry.summary->stopped_at;
            }
        }
        std::cout << "\n";
    }
    std::cout << "wrote " << args.output;
    if (args.plot) {
        std::cout << ", " << svg_path;
    }
    std::cout << "\n";
    return kExitOk;
}

int run_plot(const PlotArgs& args) {
    std::ifstream file(args.trace_path, std::ios::binary);
    if (!file) {
        throw std::runtime_error("cannot open \"" + args.trace_path + "\"");
    }
    std::string text((std::istreambuf_iterator<char>(file)), std::istreambuf_iterator<char>());
    const gdei::RunTrace trace = gdei::trace_from_csv(text);

    std::vector<std::uint64_t> limits = args.limits;
    if (limits.empty()) {
        limits.push_back(trace.records.size());
    }

    const std::string loss_svg = gdei::plot_loss_curve(trace, limits, args.log_y);
    const std::string efficiency_svg = gdei::plot_efficiency_curve(trace);

    const std::string prefix =
        args.output_prefix.empty() ? strip_extension(args.trace_path) : args.output_prefix;
    write_file_atomic(prefix + "_loss.svg", loss_svg);
    write_file_atomic(prefix + "_efficiency.svg", efficiency_svg);
    std::cout << "wrote " << prefix << "_loss.svg, " << prefix << "_efficiency.svg\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "gdei: gradient-descent instrumentation for linear regression.\n"
        "Trains with one of ten optimizers, scores each iteration's efficiency\n"
        "(0 = converged and stable, 99 = no retained progress), and emits\n"
        "traces, comparison reports, and SVG plots."};
    app.require_subcommand(1);

    GenerateArgs gen;
    CLI::App* generate = app.add_subcommand("generate", "Write a synthetic regression CSV");
    generate->add_option("--n", gen.config.n, "Number of rows")->capture_default_str();
    generate->add_option("--m", gen.config.m, "Number of feature columns")->capture_default_str();
    generate->add_option("--seed", gen.seed, "PRNG seed (default: GDEI_SEED or 42)");
    generate->add_option("--intercept", gen.config.intercept, "True intercept")
        ->capture_default_str();
    generate->add_option("--slope", gen.config.slope, "True coefficient on the first feature")
        ->capture_default_str();
    generate->add_option("--noise-sigma", gen.config.noise_sigma, "Gaussian noise stddev")
        ->capture_default_str();
    generate->add_option("--feature-low", gen.config.feature_low, "Feature range lower bound")
        ->capture_default_str();
    generate->add_option("--feature-high", gen.config.feature_high, "Feature range upper bound")
        ->capture_default_str();
    generate->add_option("--target", gen.target, "Target column name")->capture_default_str();
    generate->add_option("-o,--output", gen.output, "Output CSV path")->required();

    TrainArgs train_args;
    CLI::App* train = app.add_subcommand("train", "Train on a CSV dataset and write the trace");
    train->add_option("--data", train_args.data_path, "Input dataset CSV")->required();
    train->add_option("--target", train_args.target, "Target column name")->capture_default_str();
    train->add_option("--optimizer", train_args.optimizer_name,
                      "One of: gd momentum nag adagrad rmsprop adam adamax amsgrad nadam sgdwr")
        ->capture_default_str();
    train->add_option("--alpha", train_args.alpha, "Learning rate")->capture_default_str();
    train->add_option("--beta", train_args.beta, "Momentum/EMA decay (gamma for nag)")
        ->capture_default_str();
    train->add_option("--beta1", train_args.beta1, "Adam-family first-moment decay")
        ->capture_default_str();
    train->add_option("--beta2", train_args.beta2, "Adam-family second-moment decay")
        ->capture_default_str();
    train->add_option("--epsilon", train_args.epsilon, "Division guard")->capture_default_str();
    train->add_option("--t0", train_args.restart_period, "sgdwr: first cycle length")
        ->capture_default_str();
    train->add_option("--tmult", train_args.restart_mult, "sgdwr: cycle growth factor")
        ->capture_default_str();
    train->add_option("--eta-min", train_args.eta_min, "sgdwr: learning-rate floor")
        ->capture_default_str();
    train->add_option("--iters", train_args.iters, "Iteration budget")->capture_default_str();
    train->add_option("--decay", train_args.decay, "Per-iteration learning-rate multiplier")
        ->capture_default_str();
    train->add_option("--seed", train_args.seed, "PRNG seed (default: GDEI_SEED or 42)");
    train->add_option("--stop-threshold", train_args.stop_threshold,
                      "Stop once recent efficiencies are all <= this");
    train->add_option("--stop-patience", train_args.stop_patience,
                      "Window size for --stop-threshold")
        ->capture_default_str();
    train->add_option("-o,--output", train_args.output, "Output trace CSV path")->required();
    train->add_flag("--plot", train_args.plot, "Also write loss and efficiency SVGs");
    train->add_flag("--log-y", train_args.log_y, "Log-scale the loss plot's y axis");

    CompareArgs compare_args;
    CLI::App* compare = app.add_subcommand("compare", "Run several optimizers, write a JSON report");
    compare->add_option("--data", compare_args.data_path, "Input dataset CSV")->required();
    compare->add_option("--target", compare_args.target, "Target column name")
        ->capture_default_str();
    compare
        ->add_option("--optimizer", compare_args.optimizer_specs,
                     "Optimizer spec name[:key=val,...]; keys: alpha beta beta1 beta2 epsilon "
                     "t0 tmult eta_min decay label")
        ->required()
        ->expected(-2);
    compare->add_option("--iters", compare_args.iters, "Iteration budget per run")
        ->capture_default_str();
    compare->add_option("--alpha", compare_args.alpha, "Default learning rate for specs without alpha=")
        ->capture_default_str();
    compare->add_option("--seed", compare_args.seed, "PRNG seed (default: GDEI_SEED or 42)");
    compare->add_option("--stop-threshold", compare_args.stop_threshold,
                        "Stop once recent efficiencies are all <= this");
    compare->add_option("--stop-patience", compare_args.stop_patience,
                        "Window size for --stop-threshold")
        ->capture_default_str();
    compare->add_option("-o,--output", compare_args.output, "Output JSON path")->required();
    compare->add_flag("--plot", compare_args.plot, "Also write an overlay efficiency SVG");

    PlotArgs plot_args;
    CLI::App* plot = app.add_subcommand("plot", "Render SVGs from a saved trace CSV");
    plot->add_option("trace", plot_args.trace_path, "Trace CSV written by train")->required();
    plot->add_option("--limit", plot_args.limits,
                     "Loss-curve iteration limit; repeat for side-by-side panels");
    plot->add_option("-o,--output-prefix", plot_args.output_prefix,
                     "Output prefix (default: trace path without extension)");
    plot->add_flag("--log-y", plot_args.log_y, "Log-scale the loss plot's y axis");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (app.got_subcommand(generate)) return run_generate(gen);
        if (app.got_subcommand(train)) return run_train(train_args);
        if (app.got_subcommand(compare)) return run_compare(compare_args);
        if (app.got_subcommand(plot)) return run_plot(plot_args);
    } catch (const gdei::DivergenceError& e) {
        std::cerr << "gdei: " << e.what() << "\n";
        return kExitDivergence;
    } catch (const std::exception& e) {
        std::cerr << "gdei: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
