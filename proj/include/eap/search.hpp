#pragma once

#include "eap/engines.hpp"
#include "eap/kernels.hpp"
#include "eap/lower_bounds.hpp"
#include "eap/series.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace eap {

    enum class LbMode { None, Keogh, Keogh2 };

    [[nodiscard]] std::string_view to_string(LbMode m) noexcept;
    [[nodiscard]] std::optional<LbMode> parse_lb_mode(std::string_view name);

    struct SearchConfig {
        DistanceSpec spec{};
        Variant variant{Variant::EAPruned};
        LbMode lb{LbMode::None};
        /// Subsequence search only: z-normalise the query and every window.
        bool normalize{false};
        /// Record the cut-off handed to every engine call in NnStats::cutoffs.
        bool trace_cutoffs{false};

        /// Throws SpecError: invalid spec, or lower bounding requested for a distance other than DTW/CDTW.
        void validate() const;
    };

    struct NnStats {
        std::size_t computed{0};  ///< engine calls that returned a finite cost
        std::size_t abandoned{0}; ///< engine calls that returned +inf
        std::size_t lb_skips{0};  ///< candidates rejected by the lower bound
        std::uint64_t cells{0};
        /// Best distance so far, after each candidate.
        std::vector<double> best_trace;
        /// Cut-off value of each engine call, when tracing is on.
        std::vector<double> cutoffs;

        [[nodiscard]] std::size_t total() const noexcept { return computed + abandoned + lb_skips; }
    };

    struct NnResult {
        double distance{INF};
        std::size_t index{0};
        NnStats stats;
    };

    /// Candidate series plus their envelopes for lower bounding (built once, read-only afterwards).
    class CandidateSet {
    public:
        CandidateSet(std::span<const TimeSeries> candidates, const SearchConfig& cfg);
        CandidateSet(const LabeledDataset& ds, const SearchConfig& cfg);

        [[nodiscard]] std::size_t size() const noexcept { return series_.size(); }
        [[nodiscard]] std::span<const double> operator[](std::size_t k) const noexcept { return series_[k]; }
        /// Envelope of candidate k, or nullptr when lower bounding is off.
        [[nodiscard]] const Envelope* envelope(std::size_t k) const noexcept {
            return envelopes_.empty() ? nullptr : &envelopes_[k];
        }

    private:
        void build(const SearchConfig& cfg);
        std::vector<std::span<const double>> series_;
        std::vector<Envelope> envelopes_;
    };

    /// Nearest neighbour of `q` among the candidates, scanned in order. The running best distance is
    /// the cut-off for lower bounds and early-abandoning engines; a candidate replaces the best only
    /// when strictly closer, so ties resolve to the lowest index.
    /// Throws SearchError on an empty candidate set.
    [[nodiscard]] NnResult nn_search(std::span<const double> q, const CandidateSet& candidates, const SearchConfig& cfg);
    [[nodiscard]] NnResult nn_search(const TimeSeries& q, std::span<const TimeSeries> candidates, const SearchConfig& cfg);

    struct QueryReport {
        std::size_t query{0};
        int truth{0};
        int predicted{0};
        std::size_t nn_index{0};
        double nn_distance{INF};
        std::size_t computed{0};
        std::size_t abandoned{0};
        std::size_t lb_skips{0};
        std::uint64_t cells{0};
        double wall_seconds{0};
    };

    /// 1-NN classification of every test series against the training set. Queries are spread over
    /// `threads` workers; reports come back in test order.
    [[nodiscard]] std::vector<QueryReport> classify_1nn(const LabeledDataset& train, const LabeledDataset& test,
                                                        const SearchConfig& cfg, std::size_t threads = 1);

    [[nodiscard]] double accuracy(std::span<const QueryReport> reports) noexcept;

    struct SubsequenceResult {
        std::size_t offset{0};
        double distance{INF};
        std::size_t windows{0};
        std::size_t computed{0};
        std::size_t abandoned{0};
        std::size_t lb_skips{0};
        std::uint64_t cells{0};
    };

    /// Best match of `q` over every window of `reference` of the same length (lowest offset on ties).
    /// DTW and CDTW only. Throws DimensionError when the query is longer than the reference.
    [[nodiscard]] SubsequenceResult subsequence_search(const TimeSeries& q, const TimeSeries& reference, const SearchConfig& cfg);

} // namespace eap
