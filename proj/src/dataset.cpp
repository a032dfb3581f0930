#include "gdei/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "gdei/rng.hpp"

namespace gdei {

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    for (char c : line) {
        if (c == ',') {
            fields.push_back(std::move(field));
            field.clear();
        } else if (c != '\r') {
            field.push_back(c);
        }
    }
    fields.push_back(std::move(field));
    return fields;
}

double parse_cell(const std::string& cell, std::size_t row, const std::string& column,
                  const std::string& path) {
    double value = 0.0;
    const char* begin = cell.data();
    const char* end = begin + cell.size();
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc{} || ptr != end || !std::isfinite(value)) {
        throw std::runtime_error(path + ": non-numeric value \"" + cell + "\" at row " +
                                 std::to_string(row) + ", column \"" + column + "\"");
    }
    return value;
}

std::string format_number(double value) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, ptr);
}

Dataset take_rows(const Dataset& dataset, const std::vector<std::uint64_t>& indices) {
    Dataset out;
    out.features = Matrix(indices.size(), dataset.n_features());
    out.targets.reserve(indices.size());
    for (std::size_t i = 0; i < indices.size(); ++i) {
        for (std::size_t j = 0; j < dataset.n_features(); ++j) {
            out.features(i, j) = dataset.features(indices[i], j);
        }
        out.targets.push_back(dataset.targets[indices[i]]);
    }
    return out;
}

}  // namespace

Dataset generate_data(const GeneratorConfig& config) {
    if (config.n == 0 || config.m == 0) {
        throw std::invalid_argument("generate_data: n and m must be positive");
    }
    if (!(config.feature_low < config.feature_high)) {
        throw std::invalid_argument("generate_data: feature_low must be below feature_high");
    }
    if (config.noise_sigma < 0.0) {
        throw std::invalid_argument("generate_data: noise_sigma must be >= 0");
    }

    std::mt19937_64 rng(config.seed);
    Dataset dataset;
    dataset.features = Matrix(config.n, config.m);
    for (std::size_t i = 0; i < config.n; ++i) {
        for (std::size_t j = 0; j < config.m; ++j) {
            dataset.features(i, j) = uniform_in(rng, config.feature_low, config.feature_high);
        }
    }
    dataset.targets.resize(config.n);
    for (std::size_t i = 0; i < config.n; ++i) {
        dataset.targets[i] = config.intercept + config.slope * dataset.features(i, 0) +
                             config.noise_sigma * normal_unit(rng);
    }
    return dataset;
}

Dataset load_csv(const std::string& path, const std::string& target_column) {
    std::ifstream file(path, std::ios::binary);
    if (!file) {
        throw std::runtime_error("load_csv: cannot open \"" + path + "\"");
    }

    std::string line;
    if (!std::getline(file, line) || line.empty()) {
        throw std::runtime_error(path + ": empty file");
    }
    std::vector<std::string> header = split_csv_line(line);

    std::size_t target_index = header.size();
    for (std::size_t j = 0; j < header.size(); ++j) {
        if (header[j] == target_column) {
            target_index = j;
            break;
        }
    }
    if (target_index == header.size()) {
        throw std::runtime_error(path + ": target column \"" + target_column + "\" not found");
    }
    if (header.size() < 2) {
        throw std::runtime_error(path + ": no feature columns besides the target");
    }

    Dataset dataset;
    const std::size_t m = header.size() - 1;
    std::size_t row = 0;
    while (std::getline(file, line)) {
        if (line.empty()) continue;  // tolerate a trailing newline
        ++row;
        std::vector<std::string> fields = split_csv_line(line);
        if (fields.size() != header.size()) {
            throw std::runtime_error(path + ": row " + std::to_string(row) + " has " +
                                     std::to_string(fields.size()) + " fields, expected " +
                                     std::to_string(header.size()));
        }
        for (std::size_t j = 0; j < fields.size(); ++j) {
            double value = parse_cell(fields[j], row, header[j], path);
            if (j == target_index) {
                dataset.targets.push_back(value);
            } else {
                dataset.features.data.push_back(value);
            }
        }
    }
    if (row == 0) {
        throw std::runtime_error(path + ": no data rows");
    }
    dataset.features.rows = row;
    dataset.features.cols = m;
    return dataset;
}

std::string dataset_to_csv(const Dataset& dataset, const std::string& target_column) {
    std::string out;
    for (std::size_t j = 1; j <= dataset.n_features(); ++j) {
        out += "x" + std::to_string(j) + ",";
    }
    out += target_column;
    out += '\n';
    for (std::size_t i = 0; i < dataset.n_samples(); ++i) {
        for (std::size_t j = 0; j < dataset.n_features(); ++j) {
            out += format_number(dataset.features(i, j));
            out += ',';
        }
        out += format_number(dataset.targets[i]);
        out += '\n';
    }
    return out;
}

std::pair<Dataset, Dataset> split(const Dataset& dataset, double validation_fraction,
                                  std::uint64_t seed) {
    if (!(validation_fraction > 0.0 && validation_fraction < 1.0)) {
        throw std::invalid_argument("split: validation_fraction must lie in (0, 1)");
    }
    const std::size_t n = dataset.n_samples();
    const auto validation_size =
        static_cast<std::size_t>(std::floor(static_cast<double>(n) * validation_fraction));
    if (validation_size == 0) {
        throw std::invalid_argument("split: validation set would be empty at this fraction");
    }
    if (n - validation_size == 0) {
        throw std::invalid_argument("split: train set would be empty at this fraction");
    }

    std::vector<std::uint64_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::mt19937_64 rng(seed);
    for (std::size_t i = n - 1; i > 0; --i) {
        std::uint64_t j = uniform_index(rng, i + 1);
        std::swap(order[i], order[j]);
    }

    std::vector<std::uint64_t> validation_idx(order.begin(), order.begin() + validation_size);
    std::vector<std::uint64_t> train_idx(order.begin() + validation_size, order.end());
    std::sort(validation_idx.begin(), validation_idx.end());
    std::sort(train_idx.begin(), train_idx.end());

    return {take_rows(dataset, train_idx), take_rows(dataset, validation_idx)};
}

}  // namespace gdei
