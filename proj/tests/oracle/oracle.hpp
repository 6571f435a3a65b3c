#pragma once

// Slow reference implementations, for tests only. They share the kernel layer (recurrences) with the
// engines, so a disagreement points at an engine, not at a cost function.

#include "eap/kernels.hpp"

#include <span>
#include <vector>

namespace eap::oracle {

    /// (1 + n_lines) x (1 + n_cols) cost matrix, row-major. Row/column 0 hold the borders.
    struct FullMatrix {
        std::size_t rows{0};
        std::size_t cols{0};
        std::vector<double> cells;

        [[nodiscard]] double at(std::size_t i, std::size_t j) const { return cells.at(i * cols + j); }
        double& at(std::size_t i, std::size_t j) { return cells.at(i * cols + j); }
    };

    struct MatrixResult {
        double cost;
        FullMatrix matrix;
    };

    /// Whole matrix, straight from the recurrence. Interior cells with |i - j| > window are +inf.
    /// The matrix is oriented as the recurrence: the longer series on the rows.
    [[nodiscard]] MatrixResult full_matrix(const DistanceSpec& spec, std::span<const double> s, std::span<const double> t);

    /// Minimum over every monotone, continuous warping path, enumerated explicitly. A path starts at
    /// any finite border cell (the corner included) and ends at (n_lines, n_cols); interior cells must
    /// respect the window. Exponential: both lengths must be <= 8 (SearchError otherwise).
    [[nodiscard]] double path_enum(const DistanceSpec& spec, std::span<const double> s, std::span<const double> t);

    /// Naive O(L * w) sliding max/min.
    void naive_envelope(std::span<const double> s, std::size_t w, std::vector<double>& upper, std::vector<double>& lower);

} // namespace eap::oracle
