#pragma once

#include "parobs/core/grid.hpp"

#include <functional>
#include <span>
#include <string>
#include <vector>

namespace parobs {

/// Sampled real values over every node of a grid at every time level.
/// Storage is time-major: values[k * grid.nodes() + node].
struct ScalarField {
    Grid grid;
    std::vector<double> values;
    std::string label;

    ScalarField() = default;
    explicit ScalarField(const Grid& g, std::string name = {});

    bool empty() const { return values.empty(); }

    double& at(int k, int node) { return values[static_cast<std::size_t>(k) * grid.nodes() + node]; }
    double at(int k, int node) const { return values[static_cast<std::size_t>(k) * grid.nodes() + node]; }

    std::span<double> slice(int k);
    std::span<const double> slice(int k) const;

    bool all_finite() const;
    /// Throws ShapeMismatch if the stored values do not cover the grid exactly.
    void check_shape() const;
};

using SampleFn = std::function<double(double x1, double x2, double t)>;

/// Evaluates fn at every (node, time level) of the grid.
ScalarField sample(const Grid& grid, const SampleFn& fn, std::string label = {});
/// Evaluates fn at t = grid.time(k) for one level only.
std::vector<double> sample_slice(const Grid& grid, const SampleFn& fn, int k);

double max_abs(std::span<const double> a);
double max_abs_diff(std::span<const double> a, std::span<const double> b);

}  // namespace parobs
