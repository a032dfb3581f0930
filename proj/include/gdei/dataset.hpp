#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "gdei/matrix.hpp"

namespace gdei {

struct Dataset {
    Matrix features;              // n rows, m columns
    std::vector<double> targets;  // length n

    std::size_t n_samples() const { return features.rows; }
    std::size_t n_features() const { return features.cols; }

    bool operator==(const Dataset&) const = default;
};

// Synthetic regression data: features uniform on [feature_low, feature_high),
// targets linear in the first feature plus Gaussian noise.
struct GeneratorConfig {
    std::size_t n = 1000;
    std::size_t m = 1;
    std::uint64_t seed = 42;
    double intercept = 4.0;
    double slope = 3.0;
    double noise_sigma = 1.0;
    double feature_low = 0.0;
    double feature_high = 2.0;
};

// Draw order is fixed: the full feature matrix row-major, then one noise
// term per row. Identical configs give identical datasets.
Dataset generate_data(const GeneratorConfig& config);

// Headered CSV, comma-separated, one numeric column per feature plus the
// named target column. Feature columns keep their header order.
Dataset load_csv(const std::string& path, const std::string& target_column);

// CSV text for a dataset, feature columns named x1..xm.
std::string dataset_to_csv(const Dataset& dataset, const std::string& target_column);

// Seeded shuffle, then disjoint partition with floor(n * fraction)
// validation rows. Row order within each side is ascending by original index.
std::pair<Dataset, Dataset> split(const Dataset& dataset, double validation_fraction,
                                  std::uint64_t seed);

}  // namespace gdei
