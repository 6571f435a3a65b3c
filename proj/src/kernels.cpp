#include "eap/kernels.hpp"

#include "eap/error.hpp"

#include <algorithm>
#include <cctype>
#include <string>

namespace eap {

    std::string_view to_string(DistanceKind k) noexcept {
        switch (k) {
            case DistanceKind::DTW: return "dtw";
            case DistanceKind::CDTW: return "cdtw";
            case DistanceKind::WDTW: return "wdtw";
            case DistanceKind::ERP: return "erp";
            case DistanceKind::MSM: return "msm";
            case DistanceKind::TWE: return "twe";
        }
        return "?";
    }

    std::string_view to_string(CostMode m) noexcept {
        return m == CostMode::Squared ? "squared" : "absolute";
    }

    namespace {
        std::string lower(std::string_view s) {
            std::string out(s);
            std::ranges::transform(out, out.begin(), [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
            return out;
        }
    } // namespace

    std::optional<DistanceKind> parse_kind(std::string_view name) {
        const auto n = lower(name);
        for (auto k : {DistanceKind::DTW, DistanceKind::CDTW, DistanceKind::WDTW, DistanceKind::ERP, DistanceKind::MSM,
                       DistanceKind::TWE}) {
            if (n == to_string(k)) { return k; }
        }
        return std::nullopt;
    }

    std::optional<CostMode> parse_cost_mode(std::string_view name) {
        const auto n = lower(name);
        if (n == "squared" || n == "sq" || n == "l2") { return CostMode::Squared; }
        if (n == "absolute" || n == "abs" || n == "l1") { return CostMode::Absolute; }
        return std::nullopt;
    }

    void DistanceSpec::validate() const {
        const auto name = std::string(to_string(kind));
        auto require = [&](bool ok, const char* what) {
            if (!ok) { throw SpecError(name + ": " + what); }
        };
        switch (kind) {
            case DistanceKind::DTW: break;
            case DistanceKind::CDTW: require(window.has_value(), "a window is required"); break;
            case DistanceKind::WDTW: require(std::isfinite(wdtw_g) && wdtw_g >= 0, "weight factor g must be finite and >= 0"); break;
            case DistanceKind::ERP:
                require(window.has_value(), "a window is required");
                require(std::isfinite(erp_gap), "gap value must be finite");
                break;
            case DistanceKind::MSM: require(std::isfinite(msm_c) && msm_c >= 0, "split/merge cost c must be finite and >= 0"); break;
            case DistanceKind::TWE:
                require(std::isfinite(twe_nu) && twe_nu >= 0, "stiffness nu must be finite and >= 0");
                require(std::isfinite(twe_lambda) && twe_lambda >= 0, "penalty lambda must be finite and >= 0");
                break;
        }
    }

    double wdtw_weight(double g, std::size_t d, std::size_t length) noexcept {
        const double x = static_cast<double>(d) - static_cast<double>(length) / 2.0;
        return 1.0 / (1.0 + std::exp(-g * x));
    }

    std::vector<double> wdtw_weight_table(double g, std::size_t length) {
        std::vector<double> table(length + 1);
        for (std::size_t d = 0; d <= length; ++d) { table[d] = wdtw_weight(g, d, length); }
        return table;
    }

    TweCosts twe_costs(const DistanceSpec& spec, std::span<const double> s, std::span<const double> t,
                       std::size_t i, std::size_t j) {
        if (i < 1 || i > s.size() || j < 1 || j > t.size()) { throw DimensionError("twe_costs: index out of range"); }
        const auto cost = [&](double a, double b) { return point_cost(a, b, spec.cost); };
        const double si = s[i - 1], tj = t[j - 1];
        const double sp = i > 1 ? s[i - 2] : 0.0;
        const double tp = j > 1 ? t[j - 2] : 0.0;
        // Timestamps equal indices: |i - j| twice for the match, 1 for each delete.
        const double dt = static_cast<double>(i > j ? i - j : j - i);
        return {
            .match = cost(si, tj) + cost(sp, tp) + spec.twe_nu * (dt + dt),
            .delete_a = cost(si, sp) + spec.twe_nu + spec.twe_lambda,
            .delete_b = cost(tj, tp) + spec.twe_nu + spec.twe_lambda,
        };
    }

    AnyRecurrence make_recurrence(const DistanceSpec& spec, std::span<const double> s, std::span<const double> t) {
        spec.validate();
        if (s.empty() || t.empty()) { throw DimensionError("series must not be empty"); }
        const bool swap = t.size() > s.size();
        const auto lines = swap ? t : s;
        const auto cols = swap ? s : t;
        const bool sq = spec.cost == CostMode::Squared;
        switch (spec.kind) {
            case DistanceKind::DTW:
            case DistanceKind::CDTW:
                if (sq) { return DtwRecurrence<CostMode::Squared>(lines, cols); }
                return DtwRecurrence<CostMode::Absolute>(lines, cols);
            case DistanceKind::WDTW:
                if (sq) { return WdtwRecurrence<CostMode::Squared>(lines, cols, spec.wdtw_g); }
                return WdtwRecurrence<CostMode::Absolute>(lines, cols, spec.wdtw_g);
            case DistanceKind::ERP:
                if (sq) { return ErpRecurrence<CostMode::Squared>(lines, cols, spec.erp_gap); }
                return ErpRecurrence<CostMode::Absolute>(lines, cols, spec.erp_gap);
            case DistanceKind::MSM:
                return MsmRecurrence(lines, cols, spec.msm_c);
            case DistanceKind::TWE:
                if (sq) { return TweRecurrence<CostMode::Squared>(lines, cols, spec.twe_nu, spec.twe_lambda); }
                return TweRecurrence<CostMode::Absolute>(lines, cols, spec.twe_nu, spec.twe_lambda);
        }
        throw SpecError("unsupported distance kind");
    }

} // namespace eap
