#include "gdei/loss.hpp"

#include <stdexcept>
#include <string>

namespace gdei {

Matrix add_bias(const Matrix& features) {
    if (features.rows == 0 || features.cols == 0) {
        throw std::invalid_argument("add_bias: features must have at least one row and column");
    }
    Matrix out(features.rows, features.cols + 1);
    for (std::size_t i = 0; i < features.rows; ++i) {
        out(i, 0) = 1.0;
        for (std::size_t j = 0; j < features.cols; ++j) {
            out(i, j + 1) = features(i, j);
        }
    }
    return out;
}

std::vector<double> predict(const LinearModel& model, const Matrix& features_with_bias) {
    if (model.theta.size() != features_with_bias.cols) {
        throw std::invalid_argument("predict: theta has " + std::to_string(model.theta.size()) +
                                    " components, features have " +
                                    std::to_string(features_with_bias.cols) + " columns");
    }
    std::vector<double> out(features_with_bias.rows, 0.0);
    for (std::size_t i = 0; i < features_with_bias.rows; ++i) {
        double acc = 0.0;
        for (std::size_t j = 0; j < features_with_bias.cols; ++j) {
            acc += features_with_bias(i, j) * model.theta[j];
        }
        out[i] = acc;
    }
    return out;
}

double mse(const std::vector<double>& predictions, const std::vector<double>& targets) {
    if (predictions.size() != targets.size()) {
        throw std::invalid_argument("mse: length mismatch");
    }
    if (predictions.empty()) {
        throw std::invalid_argument("mse: empty vectors");
    }
    double acc = 0.0;
    for (std::size_t i = 0; i < predictions.size(); ++i) {
        double r = predictions[i] - targets[i];
        acc += r * r;
    }
    return acc / static_cast<double>(predictions.size());
}

std::vector<double> mse_gradient(const LinearModel& model, const Matrix& features_with_bias,
                                 const std::vector<double>& targets) {
    if (targets.size() != features_with_bias.rows) {
        throw std::invalid_argument("mse_gradient: target length does not match row count");
    }
    std::vector<double> residuals = predict(model, features_with_bias);
    for (std::size_t i = 0; i < residuals.size(); ++i) {
        residuals[i] -= targets[i];
    }
    std::vector<double> gradient(features_with_bias.cols, 0.0);
    for (std::size_t i = 0; i < features_with_bias.rows; ++i) {
        for (std::size_t j = 0; j < features_with_bias.cols; ++j) {
            gradient[j] += features_with_bias(i, j) * residuals[i];
        }
    }
    const double scale = 2.0 / static_cast<double>(features_with_bias.rows);
    for (double& g : gradient) {
        g *= scale;
    }
    return gradient;
}

}  // namespace gdei
