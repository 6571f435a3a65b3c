#include "oracle.hpp"

#include "eap/error.hpp"

#include <algorithm>
#include <functional>

namespace eap::oracle {

    namespace {

        bool in_band(std::size_t i, std::size_t j, std::size_t w) { return (i > j ? i - j : j - i) <= w; }

    } // namespace

    MatrixResult full_matrix(const DistanceSpec& spec, std::span<const double> s, std::span<const double> t) {
        const auto any = make_recurrence(spec, s, t);
        return std::visit([&](const auto& rec) {
            const std::size_t nl = rec.n_lines(), nc = rec.n_cols();
            const std::size_t w = spec.effective_window(nl);
            FullMatrix m{nl + 1, nc + 1, std::vector<double>((nl + 1) * (nc + 1), INF)};
            m.at(0, 0) = 0;
            for (std::size_t i = 1; i <= nl; ++i) { m.at(i, 0) = rec.init_v_border(i); }
            for (std::size_t j = 1; j <= nc; ++j) { m.at(0, j) = rec.init_h_border(j); }
            for (std::size_t i = 1; i <= nl; ++i) {
                for (std::size_t j = 1; j <= nc; ++j) {
                    if (!in_band(i, j, w)) { continue; }
                    m.at(i, j) = std::min({m.at(i - 1, j - 1) + rec.canonical(i, j),
                                           m.at(i - 1, j) + rec.alt_row(i, j),
                                           m.at(i, j - 1) + rec.alt_col(i, j)});
                }
            }
            // A window narrower than the length difference admits no path.
            const double cost = (w < nl - nc) ? INF : m.at(nl, nc);
            return MatrixResult{cost, std::move(m)};
        }, any);
    }

    double path_enum(const DistanceSpec& spec, std::span<const double> s, std::span<const double> t) {
        if (s.size() > 8 || t.size() > 8) { throw SearchError("path_enum: series longer than 8 points"); }
        const auto any = make_recurrence(spec, s, t);
        return std::visit([&](const auto& rec) {
            const std::size_t nl = rec.n_lines(), nc = rec.n_cols();
            const std::size_t w = spec.effective_window(nl);
            if (w < nl - nc) { return INF; }
            double best = INF;

            // Depth-first walk over interior cells, accumulating the cost of each move.
            std::function<void(std::size_t, std::size_t, double)> walk = [&](std::size_t i, std::size_t j, double acc) {
                if (i == nl && j == nc) {
                    best = std::min(best, acc);
                    return;
                }
                if (i < nl && j < nc && in_band(i + 1, j + 1, w)) { walk(i + 1, j + 1, acc + rec.canonical(i + 1, j + 1)); }
                if (i < nl && j >= 1 && in_band(i + 1, j, w)) { walk(i + 1, j, acc + rec.alt_row(i + 1, j)); }
                if (j < nc && i >= 1 && in_band(i, j + 1, w)) { walk(i, j + 1, acc + rec.alt_col(i, j + 1)); }
            };

            // Starting points: every finite border cell. From (i, 0) a path enters the interior by a
            // canonical move to (i+1, 1) or an alternate-column move to (i, 1); symmetrically for (0, j).
            walk(0, 0, 0.0);
            for (std::size_t i = 1; i <= nl; ++i) {
                const double b = rec.init_v_border(i);
                if (b == INF) { continue; }
                if (i < nl && in_band(i + 1, 1, w)) { walk(i + 1, 1, b + rec.canonical(i + 1, 1)); }
                if (in_band(i, 1, w)) { walk(i, 1, b + rec.alt_col(i, 1)); }
            }
            for (std::size_t j = 1; j <= nc; ++j) {
                const double b = rec.init_h_border(j);
                if (b == INF) { continue; }
                if (j < nc && in_band(1, j + 1, w)) { walk(1, j + 1, b + rec.canonical(1, j + 1)); }
                if (in_band(1, j, w)) { walk(1, j, b + rec.alt_row(1, j)); }
            }
            return best;
        }, any);
    }

    void naive_envelope(std::span<const double> s, std::size_t w, std::vector<double>& upper, std::vector<double>& lower) {
        const std::size_t n = s.size();
        upper.assign(n, 0);
        lower.assign(n, 0);
        for (std::size_t i = 0; i < n; ++i) {
            const std::size_t lo = i > w ? i - w : 0;
            const std::size_t hi = std::min(n - 1, i + w);
            upper[i] = *std::max_element(s.begin() + static_cast<std::ptrdiff_t>(lo), s.begin() + static_cast<std::ptrdiff_t>(hi) + 1);
            lower[i] = *std::min_element(s.begin() + static_cast<std::ptrdiff_t>(lo), s.begin() + static_cast<std::ptrdiff_t>(hi) + 1);
        }
    }

} // namespace eap::oracle
