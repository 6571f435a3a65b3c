#pragma once

#include "eap/engines.hpp"
#include "eap/kernels.hpp"
#include "eap/series.hpp"

#include <span>
#include <vector>

namespace eap {

    /// Running max (upper) and min (lower) of a series over [i - w, i + w], clamped to the series.
    struct Envelope {
        std::vector<double> upper;
        std::vector<double> lower;
        std::size_t window{0};

        [[nodiscard]] std::size_t size() const noexcept { return upper.size(); }
    };

    /// Lemire's streaming min/max, linear in the series length.
    [[nodiscard]] Envelope build_envelope(std::span<const double> s, std::size_t w);
    [[nodiscard]] inline Envelope build_envelope(const TimeSeries& s, std::size_t w) { return build_envelope(s.values(), w); }

    /// LB-Keogh of `q` against the envelope of a candidate. Lower-bounds the windowed DTW
    /// under the same cost mode. Throws DimensionError on a length mismatch.
    [[nodiscard]] double lb_keogh(std::span<const double> q, const Envelope& env, CostMode mode = CostMode::Squared);

    /// Cascade of LB-Keogh in both directions. The second direction is skipped when the first
    /// already exceeds `co`; otherwise the larger of the two is returned.
    [[nodiscard]] double lb_keogh2(std::span<const double> q, std::span<const double> c,
                                   const Envelope& env_c, const Envelope& env_q,
                                   Cutoff co, CostMode mode = CostMode::Squared);

} // namespace eap
