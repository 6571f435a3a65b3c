#pragma once

#include "eap/series.hpp"

#include <cmath>
#include <concepts>
#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

namespace eap {

    inline constexpr double INF = std::numeric_limits<double>::infinity();

    enum class DistanceKind { DTW, CDTW, WDTW, ERP, MSM, TWE };
    enum class CostMode { Squared, Absolute };

    [[nodiscard]] std::string_view to_string(DistanceKind k) noexcept;
    [[nodiscard]] std::string_view to_string(CostMode m) noexcept;
    /// Case-insensitive; nullopt on unknown names.
    [[nodiscard]] std::optional<DistanceKind> parse_kind(std::string_view name);
    [[nodiscard]] std::optional<CostMode> parse_cost_mode(std::string_view name);

    /// Which distance, and its parameters. Parameters irrelevant to `kind` are ignored.
    /// An empty `window` means unbounded; CDTW and ERP require one.
    struct DistanceSpec {
        DistanceKind kind{DistanceKind::DTW};
        std::optional<std::size_t> window{};
        double wdtw_g{0.05};
        double erp_gap{0.0};
        double msm_c{1.0};
        double twe_nu{0.001};
        double twe_lambda{1.0};
        CostMode cost{CostMode::Squared};

        [[nodiscard]] static DistanceSpec dtw() { return {}; }
        [[nodiscard]] static DistanceSpec cdtw(std::size_t w) { return {.kind = DistanceKind::CDTW, .window = w}; }
        [[nodiscard]] static DistanceSpec wdtw(double g) { return {.kind = DistanceKind::WDTW, .wdtw_g = g}; }
        [[nodiscard]] static DistanceSpec erp(double gap, std::size_t w) {
            return {.kind = DistanceKind::ERP, .window = w, .erp_gap = gap};
        }
        [[nodiscard]] static DistanceSpec msm(double c) { return {.kind = DistanceKind::MSM, .msm_c = c}; }
        [[nodiscard]] static DistanceSpec twe(double nu, double lambda) {
            return {.kind = DistanceKind::TWE, .twe_nu = nu, .twe_lambda = lambda};
        }

        /// Throws SpecError when the parameters are not valid for `kind`.
        void validate() const;

        /// Window as used by the engines for a pair whose longer series has `longest` points:
        /// unbounded maps to `longest`, and any window is capped there.
        [[nodiscard]] std::size_t effective_window(std::size_t longest) const noexcept {
            return window ? std::min(*window, longest) : longest;
        }
    };

    // --- Point costs

    template<CostMode M>
    [[nodiscard]] constexpr double point_cost(double a, double b) noexcept {
        const double d = a - b;
        if constexpr (M == CostMode::Squared) { return d * d; }
        else { return d < 0 ? -d : d; }
    }

    [[nodiscard]] constexpr double point_cost(double a, double b, CostMode m) noexcept {
        return m == CostMode::Squared ? point_cost<CostMode::Squared>(a, b) : point_cost<CostMode::Absolute>(a, b);
    }

    /// WDTW logistic weight for a cell at distance `d` from the diagonal, with series length `length`.
    [[nodiscard]] double wdtw_weight(double g, std::size_t d, std::size_t length) noexcept;

    /// Element d (0 <= d <= length) is wdtw_weight(g, d, length).
    [[nodiscard]] std::vector<double> wdtw_weight_table(double g, std::size_t length);

    /// MSM split/merge cost of the new point `np` given the neighbouring points `x` and `y`.
    [[nodiscard]] constexpr double msm_split_merge_cost(double np, double x, double y, double c) noexcept {
        if ((x <= np && np <= y) || (x >= np && np >= y)) { return c; }
        const double dx = np < x ? x - np : np - x;
        const double dy = np < y ? y - np : np - y;
        return c + (dx < dy ? dx : dy);
    }

    struct TweCosts {
        double match;
        double delete_a;
        double delete_b;
    };

    /// TWE move costs for cell (i, j), 1-based, with timestamps equal to the indices.
    /// Index 0 refers to a phantom point of value 0.
    [[nodiscard]] TweCosts twe_costs(const DistanceSpec& spec, std::span<const double> s, std::span<const double> t,
                                     std::size_t i, std::size_t j);

    // --- Recurrences
    //
    // A recurrence binds a distance to a pair of series: the "lines" series indexes rows (i) and the
    // "cols" series indexes columns (j) of the cost matrix. All indices are 1-based, matching the
    // matrix where row and column 0 hold the borders. Each recurrence provides the two border
    // initialisers and the costs of the three moves into cell (i, j):
    //   canonical  from (i-1, j-1)
    //   alt_row    from (i-1, j)
    //   alt_col    from (i,   j-1)

    template<typename R>
    concept Recurrence = requires(const R& r, std::size_t i, std::size_t j) {
        { r.n_lines() } -> std::convertible_to<std::size_t>;
        { r.n_cols() } -> std::convertible_to<std::size_t>;
        { r.init_v_border(i) } -> std::convertible_to<double>;
        { r.init_h_border(j) } -> std::convertible_to<double>;
        { r.canonical(i, j) } -> std::convertible_to<double>;
        { r.alt_row(i, j) } -> std::convertible_to<double>;
        { r.alt_col(i, j) } -> std::convertible_to<double>;
    };

    class PairBase {
    public:
        PairBase(std::span<const double> lines, std::span<const double> cols) : lines_(lines), cols_(cols) {}
        [[nodiscard]] std::size_t n_lines() const noexcept { return lines_.size(); }
        [[nodiscard]] std::size_t n_cols() const noexcept { return cols_.size(); }
        [[nodiscard]] std::span<const double> lines() const noexcept { return lines_; }
        [[nodiscard]] std::span<const double> cols() const noexcept { return cols_; }

    protected:
        [[nodiscard]] double l(std::size_t i) const noexcept { return lines_[i - 1]; }
        [[nodiscard]] double c(std::size_t j) const noexcept { return cols_[j - 1]; }
        std::span<const double> lines_;
        std::span<const double> cols_;
    };

    /// DTW and CDTW (the window lives in the engine). Borders are +inf.
    template<CostMode M>
    class DtwRecurrence : public PairBase {
    public:
        using PairBase::PairBase;
        [[nodiscard]] static double init_v_border(std::size_t) noexcept { return INF; }
        [[nodiscard]] static double init_h_border(std::size_t) noexcept { return INF; }
        [[nodiscard]] double canonical(std::size_t i, std::size_t j) const noexcept { return point_cost<M>(l(i), c(j)); }
        [[nodiscard]] double alt_row(std::size_t i, std::size_t j) const noexcept { return point_cost<M>(l(i), c(j)); }
        [[nodiscard]] double alt_col(std::size_t i, std::size_t j) const noexcept { return point_cost<M>(l(i), c(j)); }
    };

    /// DTW with every move weighted by w(|i-j|). The weight table is built for the lines length.
    template<CostMode M>
    class WdtwRecurrence : public PairBase {
    public:
        WdtwRecurrence(std::span<const double> lines, std::span<const double> cols, double g)
            : PairBase(lines, cols), weights_(wdtw_weight_table(g, lines.size())) {}
        [[nodiscard]] static double init_v_border(std::size_t) noexcept { return INF; }
        [[nodiscard]] static double init_h_border(std::size_t) noexcept { return INF; }
        [[nodiscard]] double canonical(std::size_t i, std::size_t j) const noexcept { return cell(i, j); }
        [[nodiscard]] double alt_row(std::size_t i, std::size_t j) const noexcept { return cell(i, j); }
        [[nodiscard]] double alt_col(std::size_t i, std::size_t j) const noexcept { return cell(i, j); }
        [[nodiscard]] std::span<const double> weights() const noexcept { return weights_; }

    private:
        [[nodiscard]] double cell(std::size_t i, std::size_t j) const noexcept {
            return weights_[i > j ? i - j : j - i] * point_cost<M>(l(i), c(j));
        }
        std::vector<double> weights_;
    };

    /// ERP: unmatched points are costed against the gap value. Borders are cumulative gap costs.
    template<CostMode M>
    class ErpRecurrence : public PairBase {
    public:
        ErpRecurrence(std::span<const double> lines, std::span<const double> cols, double gap)
            : PairBase(lines, cols), gap_(gap), v_border_(lines.size() + 1), h_border_(cols.size() + 1) {
            v_border_[0] = 0;
            for (std::size_t i = 1; i <= lines.size(); ++i) { v_border_[i] = v_border_[i - 1] + point_cost<M>(l(i), gap_); }
            h_border_[0] = 0;
            for (std::size_t j = 1; j <= cols.size(); ++j) { h_border_[j] = h_border_[j - 1] + point_cost<M>(gap_, c(j)); }
        }
        [[nodiscard]] double init_v_border(std::size_t i) const noexcept { return v_border_[i]; }
        [[nodiscard]] double init_h_border(std::size_t j) const noexcept { return h_border_[j]; }
        [[nodiscard]] double canonical(std::size_t i, std::size_t j) const noexcept { return point_cost<M>(l(i), c(j)); }
        [[nodiscard]] double alt_row(std::size_t i, std::size_t) const noexcept { return point_cost<M>(l(i), gap_); }
        [[nodiscard]] double alt_col(std::size_t, std::size_t j) const noexcept { return point_cost<M>(c(j), gap_); }

    private:
        double gap_;
        std::vector<double> v_border_;
        std::vector<double> h_border_;
    };

    /// MSM. The canonical move is always |l_i - c_j|, independent of the cost mode.
    class MsmRecurrence : public PairBase {
    public:
        MsmRecurrence(std::span<const double> lines, std::span<const double> cols, double c)
            : PairBase(lines, cols), penalty_(c) {}
        [[nodiscard]] static double init_v_border(std::size_t) noexcept { return INF; }
        [[nodiscard]] static double init_h_border(std::size_t) noexcept { return INF; }
        [[nodiscard]] double canonical(std::size_t i, std::size_t j) const noexcept {
            return point_cost<CostMode::Absolute>(l(i), c(j));
        }
        // At i == 1 (or j == 1) the move comes from a +inf border; the predecessor is clamped to index 1.
        [[nodiscard]] double alt_row(std::size_t i, std::size_t j) const noexcept {
            return msm_split_merge_cost(l(i), l(i > 1 ? i - 1 : 1), c(j), penalty_);
        }
        [[nodiscard]] double alt_col(std::size_t i, std::size_t j) const noexcept {
            return msm_split_merge_cost(c(j), l(i), c(j > 1 ? j - 1 : 1), penalty_);
        }

    private:
        double penalty_;
    };

    /// TWE without timestamps (timestamp of point i is i). Index 0 is a phantom point of value 0.
    template<CostMode M>
    class TweRecurrence : public PairBase {
    public:
        TweRecurrence(std::span<const double> lines, std::span<const double> cols, double nu, double lambda)
            : PairBase(lines, cols), nu_(nu), lambda_(lambda) {}
        [[nodiscard]] static double init_v_border(std::size_t) noexcept { return INF; }
        [[nodiscard]] static double init_h_border(std::size_t) noexcept { return INF; }
        [[nodiscard]] double canonical(std::size_t i, std::size_t j) const noexcept {
            const double dt = static_cast<double>(i > j ? i - j : j - i);
            return point_cost<M>(l(i), c(j)) + point_cost<M>(lp(i), cp(j)) + nu_ * (dt + dt);
        }
        [[nodiscard]] double alt_row(std::size_t i, std::size_t) const noexcept {
            return point_cost<M>(l(i), lp(i)) + nu_ + lambda_;
        }
        [[nodiscard]] double alt_col(std::size_t, std::size_t j) const noexcept {
            return point_cost<M>(c(j), cp(j)) + nu_ + lambda_;
        }

    private:
        [[nodiscard]] double lp(std::size_t i) const noexcept { return i > 1 ? l(i - 1) : 0.0; }
        [[nodiscard]] double cp(std::size_t j) const noexcept { return j > 1 ? c(j - 1) : 0.0; }
        double nu_;
        double lambda_;
    };

    using AnyRecurrence = std::variant<
        DtwRecurrence<CostMode::Squared>, DtwRecurrence<CostMode::Absolute>,
        WdtwRecurrence<CostMode::Squared>, WdtwRecurrence<CostMode::Absolute>,
        ErpRecurrence<CostMode::Squared>, ErpRecurrence<CostMode::Absolute>,
        MsmRecurrence,
        TweRecurrence<CostMode::Squared>, TweRecurrence<CostMode::Absolute>>;

    /// Bind `spec` to a pair of series. The longer series goes on the lines (S on ties).
    /// The recurrence views the series' storage: both must outlive it.
    /// Throws SpecError if the spec is invalid.
    [[nodiscard]] AnyRecurrence make_recurrence(const DistanceSpec& spec, std::span<const double> s, std::span<const double> t);

    [[nodiscard]] inline std::size_t n_lines(const AnyRecurrence& r) noexcept {
        return std::visit([](const auto& x) { return x.n_lines(); }, r);
    }
    [[nodiscard]] inline std::size_t n_cols(const AnyRecurrence& r) noexcept {
        return std::visit([](const auto& x) { return x.n_cols(); }, r);
    }

} // namespace eap
