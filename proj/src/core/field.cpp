#include "parobs/core/field.hpp"

#include "parobs/core/error.hpp"

#include <algorithm>
#include <cmath>

namespace parobs {

ScalarField::ScalarField(const Grid& g, std::string name)
    : grid(g), values(static_cast<std::size_t>(g.n_time) * g.nodes(), 0.0), label(std::move(name)) {}

std::span<double> ScalarField::slice(int k) {
    return {values.data() + static_cast<std::size_t>(k) * grid.nodes(), static_cast<std::size_t>(grid.nodes())};
}

std::span<const double> ScalarField::slice(int k) const {
    return {values.data() + static_cast<std::size_t>(k) * grid.nodes(), static_cast<std::size_t>(grid.nodes())};
}

bool ScalarField::all_finite() const {
    return std::all_of(values.begin(), values.end(), [](double v) { return std::isfinite(v); });
}

void ScalarField::check_shape() const {
    const auto expected = static_cast<std::size_t>(grid.n_time) * grid.nodes();
    if (values.size() != expected) {
        throw Error(ErrorKind::ShapeMismatch, "field '" + label + "' has " + std::to_string(values.size()) +
                                                  " values, grid needs " + std::to_string(expected));
    }
}

ScalarField sample(const Grid& grid, const SampleFn& fn, std::string label) {
    ScalarField f(grid, std::move(label));
    for (int k = 0; k < grid.n_time; ++k) {
        const double t = grid.time(k);
        auto s = f.slice(k);
        for (int n = 0; n < grid.nodes(); ++n) s[n] = fn(grid.x1(n), grid.x2(n), t);
    }
    return f;
}

std::vector<double> sample_slice(const Grid& grid, const SampleFn& fn, int k) {
    std::vector<double> s(grid.nodes());
    const double t = grid.time(k);
    for (int n = 0; n < grid.nodes(); ++n) s[n] = fn(grid.x1(n), grid.x2(n), t);
    return s;
}

double max_abs(std::span<const double> a) {
    double m = 0.0;
    for (double v : a) m = std::max(m, std::abs(v));
    return m;
}

double max_abs_diff(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) throw Error(ErrorKind::ShapeMismatch, "max_abs_diff: length mismatch");
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

}  // namespace parobs
