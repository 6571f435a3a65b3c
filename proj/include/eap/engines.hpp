#pragma once

#include "eap/error.hpp"
#include "eap/kernels.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <cstdint>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

// Span checks assert that no engine reads a previous-row cell outside the range written for that row.
#if !defined(NDEBUG) && !defined(EAP_CHECK_SPANS)
#define EAP_CHECK_SPANS 1
#endif

// Checked and unchecked instantiations of the engine templates must not collide across translation units.
#if EAP_CHECK_SPANS
#define EAP_ENGINE_ABI checked
#else
#define EAP_ENGINE_ABI unchecked
#endif

namespace eap {

    /// Upper bound above which a result is useless. +inf never abandons.
    /// Cells are kept when <= value and pruned when > value.
    class Cutoff {
    public:
        constexpr Cutoff() = default;
        explicit Cutoff(double value) : value_(value) {
            if (!(value >= 0)) { throw SpecError("cut-off must be a non-negative number or +inf"); }
        }
        [[nodiscard]] static constexpr Cutoff none() noexcept { return {}; }
        [[nodiscard]] constexpr double value() const noexcept { return value_; }
        [[nodiscard]] constexpr bool is_none() const noexcept { return value_ == INF; }

    private:
        double value_{INF};
    };

    struct EngineResult {
        /// Exact cost, or +inf when abandoned (or when the window admits no alignment).
        double cost{INF};
        /// Number of cell evaluations; border initialisation is not counted.
        std::uint64_t cells_computed{0};

        [[nodiscard]] bool abandoned() const noexcept { return cost == INF; }
    };

    enum class Variant { Base, EA, EAPruned, PrunedOnly };

    [[nodiscard]] std::string_view to_string(Variant v) noexcept;
    [[nodiscard]] std::optional<Variant> parse_variant(std::string_view name);

    inline namespace EAP_ENGINE_ABI {

    namespace detail {

        /// Two rows of the cost matrix, each of length n_cols + 1, filled with +inf.
        class RowPair {
        public:
            explicit RowPair(std::size_t n_cols) : buf_(2 * (n_cols + 1), INF), width_(n_cols + 1) {}
            void swap() noexcept {
                std::swap(curr_off_, prev_off_);
                std::swap(curr_, prev_);
            }
            [[nodiscard]] double* curr() noexcept { return buf_.data() + curr_off_; }
            [[nodiscard]] double* prev() noexcept { return buf_.data() + prev_off_; }

            // Written-range bookkeeping for the span checks. A previous-row cell is readable if it was
            // written for that row, or if it was never written in that buffer (still +inf).
            void begin_row(std::size_t lo) noexcept {
                curr_.lo = lo;
                curr_.hi = lo;
                curr_.ever = curr_.ever == npos ? lo : std::max(curr_.ever, lo);
            }
            void wrote(std::size_t j) noexcept {
                curr_.hi = std::max(curr_.hi, j);
                curr_.ever = curr_.ever == npos ? j : std::max(curr_.ever, j);
            }
            [[nodiscard]] bool prev_readable(std::size_t j) const noexcept {
                return prev_.ever == npos || (prev_.lo <= j && j <= prev_.hi) || j > prev_.ever;
            }

        private:
            static constexpr std::size_t npos = static_cast<std::size_t>(-1);
            struct Span {
                std::size_t lo{0}, hi{0};
                std::size_t ever{npos}; // highest column ever written, npos if none
            };
            std::vector<double> buf_;
            std::size_t width_;
            std::size_t curr_off_{0};
            std::size_t prev_off_{width_};
            Span curr_{}, prev_{};
        };

#if EAP_CHECK_SPANS
#define EAP_PREV(rows, j) ((rows).prev_readable(j) ? (rows).prev()[j] : ::eap::detail::span_violation(j))
#define EAP_WROTE(rows, j) (rows).wrote(j)
#else
#define EAP_PREV(rows, j) ((rows).prev()[j])
#define EAP_WROTE(rows, j) ((void)0)
#endif

        [[noreturn]] inline double span_violation(std::size_t j) {
            std::fprintf(stderr, "eap: engine read column %zu outside the previous row's written span\n", j);
            std::abort();
        }

        [[nodiscard]] constexpr double min3(double a, double b, double c) noexcept { return std::min(std::min(a, b), c); }

        /// Row 0: corner at 0, horizontal border up to column min(w + 1, n_cols). Returns the last written column.
        template<Recurrence R>
        std::size_t init_top_row(const R& rec, RowPair& rows, std::size_t w) {
            double* curr = rows.curr();
            rows.begin_row(0);
            curr[0] = 0;
            const std::size_t last = std::min(w + 1, rec.n_cols());
            for (std::size_t j = 1; j <= last; ++j) {
                curr[j] = rec.init_h_border(j);
                EAP_WROTE(rows, j);
            }
            return last;
        }

    } // namespace detail

    /// Full matrix, linear space, no window. The shorter series is on the columns.
    template<Recurrence R>
    [[nodiscard]] EngineResult compute_base(const R& rec) {
        const std::size_t nl = rec.n_lines();
        const std::size_t nc = rec.n_cols();
        detail::RowPair rows(nc);
        detail::init_top_row(rec, rows, nc);
        for (std::size_t i = 1; i <= nl; ++i) {
            rows.swap();
            double* curr = rows.curr();
            const double* prev = rows.prev();
            curr[0] = rec.init_v_border(i);
            for (std::size_t j = 1; j <= nc; ++j) {
                curr[j] = detail::min3(prev[j - 1] + rec.canonical(i, j),
                                       prev[j] + rec.alt_row(i, j),
                                       curr[j - 1] + rec.alt_col(i, j));
            }
        }
        return {rows.curr()[nc], static_cast<std::uint64_t>(nl) * nc};
    }

    /// Window `w` (capped to n_lines) and row-minimum early abandoning against `co`.
    /// Infeasible windows (w < n_lines - n_cols) return +inf without computing any cell.
    template<Recurrence R>
    [[nodiscard]] EngineResult compute_ea(const R& rec, std::size_t w, Cutoff co) {
        const std::size_t nl = rec.n_lines();
        const std::size_t nc = rec.n_cols();
        if (w < nl - nc) { return {INF, 0}; }
        w = std::min(w, nl);
        const double cutoff = co.value();

        EngineResult res{};
        detail::RowPair rows(nc);
        detail::init_top_row(rec, rows, w);
        for (std::size_t i = 1; i <= nl; ++i) {
            rows.swap();
            double* curr = rows.curr();
            const std::size_t j_start = i > w ? i - w : 1;
            const std::size_t j_stop = std::min(i + w, nc);
            rows.begin_row(j_start - 1);
            curr[j_start - 1] = j_start == 1 ? rec.init_v_border(i) : INF;
            // A computed left border is part of the frontier of open paths.
            double min_row = curr[j_start - 1];
            for (std::size_t j = j_start; j <= j_stop; ++j) {
                const double v = detail::min3(EAP_PREV(rows, j - 1) + rec.canonical(i, j),
                                              EAP_PREV(rows, j) + rec.alt_row(i, j),
                                              curr[j - 1] + rec.alt_col(i, j));
                curr[j] = v;
                EAP_WROTE(rows, j);
                min_row = std::min(min_row, v);
            }
            res.cells_computed += j_stop - j_start + 1;
            if (min_row > cutoff) { return {INF, res.cells_computed}; }
        }
        res.cost = rows.curr()[nc];
        return res;
    }

    /// Early abandoned and pruned: cells that cannot lead to a cost <= `co` are skipped.
    /// Returns the exact windowed cost when it is <= co, +inf otherwise.
    template<Recurrence R>
    [[nodiscard]] EngineResult compute_eapruned(const R& rec, std::size_t w, Cutoff co) {
        const std::size_t nl = rec.n_lines();
        const std::size_t nc = rec.n_cols();
        if (w < nl - nc) { return {INF, 0}; }
        w = std::min(w, nl);
        const double cutoff = co.value();

        std::uint64_t cells = 0;
        detail::RowPair rows(nc);

        // The top row's pruning point follows its last cell <= cut-off (the corner is always one).
        std::size_t pruning_point = 1;
        {
            const std::size_t last = detail::init_top_row(rec, rows, w);
            const double* top = rows.curr();
            for (std::size_t j = 1; j <= last; ++j) {
                if (top[j] <= cutoff) { pruning_point = j + 1; }
            }
        }
        std::size_t next_start = 1;
        std::size_t j = 0;
        double last_cost = INF;

        for (std::size_t i = 1; i <= nl; ++i) {
            rows.swap();
            double* curr = rows.curr();
            const std::size_t j_start = std::max(i > w ? i - w : std::size_t{1}, next_start);
            const std::size_t j_stop = std::min(i + w, nc);
            next_start = j_start;
            std::size_t next_pruning_point = j_start;
            j = j_start;

            // Stage 1: left border, computed or outside the window/discard zone.
            rows.begin_row(j_start - 1);
            curr[j_start - 1] = j_start == 1 ? rec.init_v_border(i) : INF;
            const bool left_discarded = curr[j_start - 1] > cutoff;

            // Stage 2: discard points before the pruning point. Left is above the cut-off: diagonal and top only.
            if (left_discarded) {
                for (; j == next_start && j < pruning_point; ++j) {
                    const double v = std::min(EAP_PREV(rows, j - 1) + rec.canonical(i, j),
                                              EAP_PREV(rows, j) + rec.alt_row(i, j));
                    curr[j] = v;
                    EAP_WROTE(rows, j);
                    ++cells;
                    if (v <= cutoff) { next_pruning_point = j + 1; }
                    else { ++next_start; }
                }
            }

            // Stage 3: all three dependencies, up to the pruning point.
            for (; j < pruning_point; ++j) {
                const double v = detail::min3(EAP_PREV(rows, j - 1) + rec.canonical(i, j),
                                              EAP_PREV(rows, j) + rec.alt_row(i, j),
                                              curr[j - 1] + rec.alt_col(i, j));
                curr[j] = v;
                EAP_WROTE(rows, j);
                ++cells;
                if (v <= cutoff) { next_pruning_point = j + 1; }
            }

            // Stage 4: at the pruning point the top dependency is above the cut-off.
            if (j <= j_stop) {
                if (left_discarded && j == next_start) {
                    const double v = EAP_PREV(rows, j - 1) + rec.canonical(i, j);
                    curr[j] = v;
                    EAP_WROTE(rows, j);
                    ++cells;
                    if (v > cutoff) { return {INF, cells}; }
                    next_pruning_point = j + 1;
                } else {
                    const double v = std::min(EAP_PREV(rows, j - 1) + rec.canonical(i, j),
                                              curr[j - 1] + rec.alt_col(i, j));
                    curr[j] = v;
                    EAP_WROTE(rows, j);
                    ++cells;
                    if (v <= cutoff) { next_pruning_point = j + 1; }
                }
                ++j;
            } else if (left_discarded && j == next_start) {
                // Discard points reached the end of the row.
                return {INF, cells};
            }

            // Stage 5: past the pruning point only the left dependency can be under the cut-off.
            for (; j == next_pruning_point && j <= j_stop; ++j) {
                const double v = curr[j - 1] + rec.alt_col(i, j);
                curr[j] = v;
                EAP_WROTE(rows, j);
                ++cells;
                if (v <= cutoff) { ++next_pruning_point; }
            }

            pruning_point = next_pruning_point;
            last_cost = curr[j - 1];
        }

        // The last cell counts only if the final row reached it with a cost within the cut-off.
        if (j == nc + 1 && last_cost <= cutoff) { return {last_cost, cells}; }
        return {INF, cells};
    }

    /// Cost of one feasible warping path: the diagonal over the columns, then down the last column.
    /// Requires w >= n_lines - n_cols. Always >= the exact windowed cost.
    template<Recurrence R>
    [[nodiscard]] double diagonal_upper_bound(const R& rec) {
        const std::size_t nl = rec.n_lines();
        const std::size_t nc = rec.n_cols();
        double ub = 0;
        for (std::size_t k = 1; k <= nc; ++k) { ub = ub + rec.canonical(k, k); }
        for (std::size_t k = nc + 1; k <= nl; ++k) { ub = ub + rec.alt_row(k, nc); }
        return ub;
    }

    /// EAPruned with the diagonal upper bound as cut-off: pruning only, never abandons a feasible window.
    template<Recurrence R>
    [[nodiscard]] EngineResult compute_pruned_only(const R& rec, std::size_t w) {
        if (w < rec.n_lines() - rec.n_cols()) { return {INF, 0}; }
        return compute_eapruned(rec, w, Cutoff(diagonal_upper_bound(rec)));
    }

    } // inline namespace EAP_ENGINE_ABI

    // --- Type-erased entry points

    [[nodiscard]] EngineResult compute_base(const AnyRecurrence& rec);
    [[nodiscard]] EngineResult compute_ea(const AnyRecurrence& rec, std::size_t w, Cutoff co);
    [[nodiscard]] EngineResult compute_eapruned(const AnyRecurrence& rec, std::size_t w, Cutoff co);
    [[nodiscard]] double diagonal_upper_bound(const AnyRecurrence& rec);
    [[nodiscard]] EngineResult compute_pruned_only(const AnyRecurrence& rec, std::size_t w);

    /// Bind `spec` to (s, t) and run `variant`. `co` is ignored by Base and PrunedOnly.
    /// Base with a window set on the spec runs the windowed engine with no cut-off.
    /// Throws SpecError for an invalid spec.
    [[nodiscard]] EngineResult distance(const DistanceSpec& spec, Variant variant,
                                        std::span<const double> s, std::span<const double> t,
                                        Cutoff co = Cutoff::none());

    [[nodiscard]] inline EngineResult distance(const DistanceSpec& spec, Variant variant,
                                               const TimeSeries& s, const TimeSeries& t,
                                               Cutoff co = Cutoff::none()) {
        return distance(spec, variant, s.values(), t.values(), co);
    }

} // namespace eap
