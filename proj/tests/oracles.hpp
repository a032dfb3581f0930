// Test-only reference implementations. These are deliberately independent
// of the library code they check: raw loops, no calls into gdei internals.
#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "gdei/matrix.hpp"

namespace oracles {

// Solve (X^T X) theta = X^T y by Gaussian elimination with partial pivoting.
inline std::vector<double> least_squares(const gdei::Matrix& x, const std::vector<double>& y) {
    const std::size_t n = x.rows;
    const std::size_t p = x.cols;
    std::vector<std::vector<double>> a(p, std::vector<double>(p + 1, 0.0));
    for (std::size_t i = 0; i < p; ++i) {
        for (std::size_t j = 0; j < p; ++j) {
            double acc = 0.0;
            for (std::size_t r = 0; r < n; ++r) acc += x(r, i) * x(r, j);
            a[i][j] = acc;
        }
        double acc = 0.0;
        for (std::size_t r = 0; r < n; ++r) acc += x(r, i) * y[r];
        a[i][p] = acc;
    }
    for (std::size_t col = 0; col < p; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < p; ++r) {
            if (std::abs(a[r][col]) > std::abs(a[pivot][col])) pivot = r;
        }
        if (a[pivot][col] == 0.0) throw std::runtime_error("least_squares: singular system");
        std::swap(a[col], a[pivot]);
        for (std::size_t r = 0; r < p; ++r) {
            if (r == col) continue;
            const double factor = a[r][col] / a[col][col];
            for (std::size_t c = col; c <= p; ++c) a[r][c] -= factor * a[col][c];
        }
    }
    std::vector<double> theta(p);
    for (std::size_t i = 0; i < p; ++i) theta[i] = a[i][p] / a[i][i];
    return theta;
}

// Central finite difference of a scalar function of theta.
template <typename F>
std::vector<double> finite_difference_gradient(F&& f, const std::vector<double>& theta, double h) {
    std::vector<double> gradient(theta.size());
    for (std::size_t i = 0; i < theta.size(); ++i) {
        std::vector<double> plus = theta;
        std::vector<double> minus = theta;
        plus[i] += h;
        minus[i] -= h;
        gradient[i] = (f(plus) - f(minus)) / (2.0 * h);
    }
    return gradient;
}

// Minimal XML well-formedness scan: balanced, properly nested tags with
// quoted attribute values, and only known entities in text.
inline bool xml_well_formed(const std::string& text) {
    std::vector<std::string> stack;
    std::size_t i = 0;
    auto starts_with = [&](std::size_t at, const char* prefix) {
        return text.compare(at, std::string(prefix).size(), prefix) == 0;
    };
    while (i < text.size()) {
        if (text[i] == '>') return false;  // stray close
        if (text[i] == '&') {
            if (!(starts_with(i, "&amp;") || starts_with(i, "&lt;") || starts_with(i, "&gt;") ||
                  starts_with(i, "&quot;") || starts_with(i, "&apos;"))) {
                return false;
            }
            i = text.find(';', i) + 1;
            continue;
        }
        if (text[i] != '<') {
            ++i;
            continue;
        }
        const std::size_t end = text.find('>', i);
        if (end == std::string::npos) return false;
        std::string tag = text.substr(i + 1, end - i - 1);
        i = end + 1;
        if (!tag.empty() && tag.front() == '?') {
            if (tag.back() != '?') return false;  // processing instruction
            continue;
        }
        bool closing = !tag.empty() && tag.front() == '/';
        bool self_closing = !tag.empty() && tag.back() == '/';
        if (closing) {
            const std::string name = tag.substr(1);
            if (stack.empty() || stack.back() != name) return false;
            stack.pop_back();
            continue;
        }
        if (self_closing) tag.pop_back();
        // attribute quotes must balance
        std::size_t quotes = 0;
        for (char c : tag) {
            if (c == '"') ++quotes;
        }
        if (quotes % 2 != 0) return false;
        const std::size_t space = tag.find_first_of(" \t\n");
        const std::string name = space == std::string::npos ? tag : tag.substr(0, space);
        if (name.empty()) return false;
        if (!self_closing) stack.push_back(name);
    }
    return stack.empty();
}

// Count occurrences of a substring.
inline std::size_t count_occurrences(const std::string& text, const std::string& needle) {
    std::size_t count = 0;
    std::size_t pos = text.find(needle);
    while (pos != std::string::npos) {
        ++count;
        pos = text.find(needle, pos + needle.size());
    }
    return count;
}

}  // namespace oracles
