#pragma once

#include <vector>

#include "gdei/matrix.hpp"

namespace gdei {

// Linear model with the intercept stored as theta[0]; the remaining
// components line up with the feature columns.
struct LinearModel {
    std::vector<double> theta;

    bool operator==(const LinearModel&) const = default;
};

// Prepend a ones column so the intercept is learned as theta[0].
Matrix add_bias(const Matrix& features);

// predictions[i] = dot(features_with_bias row i, theta)
std::vector<double> predict(const LinearModel& model, const Matrix& features_with_bias);

// (1/n) * sum((y - yhat)^2)
double mse(const std::vector<double>& predictions, const std::vector<double>& targets);

// Exact gradient of the MSE: (2/n) * X^T (X theta - y).
std::vector<double> mse_gradient(const LinearModel& model, const Matrix& features_with_bias,
                                 const std::vector<double>& targets);

}  // namespace gdei
