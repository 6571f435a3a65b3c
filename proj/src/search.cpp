#include "eap/search.hpp"

#include "eap/error.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <chrono>
#include <string>
#include <thread>

namespace eap {

    std::string_view to_string(LbMode m) noexcept {
        switch (m) {
            case LbMode::None: return "none";
            case LbMode::Keogh: return "keogh";
            case LbMode::Keogh2: return "keogh2";
        }
        return "?";
    }

    std::optional<LbMode> parse_lb_mode(std::string_view name) {
        std::string n(name);
        std::ranges::transform(n, n.begin(), [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
        if (n == "none") { return LbMode::None; }
        if (n == "keogh") { return LbMode::Keogh; }
        if (n == "keogh2") { return LbMode::Keogh2; }
        return std::nullopt;
    }

    void SearchConfig::validate() const {
        spec.validate();
        if (lb != LbMode::None && spec.kind != DistanceKind::DTW && spec.kind != DistanceKind::CDTW) {
            throw SpecError("lower bound '" + std::string(to_string(lb)) + "' is only available for dtw and cdtw, not " +
                            std::string(to_string(spec.kind)));
        }
    }

    // --- Candidates

    CandidateSet::CandidateSet(std::span<const TimeSeries> candidates, const SearchConfig& cfg) {
        series_.reserve(candidates.size());
        for (const auto& c : candidates) { series_.push_back(c.values()); }
        build(cfg);
    }

    CandidateSet::CandidateSet(const LabeledDataset& ds, const SearchConfig& cfg) {
        series_.reserve(ds.size());
        for (const auto& e : ds.entries) { series_.push_back(e.series.values()); }
        build(cfg);
    }

    void CandidateSet::build(const SearchConfig& cfg) {
        cfg.validate();
        if (cfg.lb == LbMode::None) { return; }
        envelopes_.reserve(series_.size());
        for (auto s : series_) { envelopes_.push_back(build_envelope(s, cfg.spec.effective_window(s.size()))); }
    }

    // --- NN search

    namespace {

        /// Lower bound of q against candidate k, or nullopt when none applies (off, or unequal lengths).
        std::optional<double> lower_bound(std::span<const double> q, const Envelope* env_q,
                                          std::span<const double> c, const Envelope* env_c,
                                          const SearchConfig& cfg, double best) {
            if (cfg.lb == LbMode::None || env_c == nullptr || q.size() != c.size()) { return std::nullopt; }
            if (cfg.lb == LbMode::Keogh) { return lb_keogh(q, *env_c, cfg.spec.cost); }
            return lb_keogh2(q, c, *env_c, *env_q, Cutoff(best), cfg.spec.cost);
        }

        Cutoff engine_cutoff(const SearchConfig& cfg, double best) {
            return (cfg.variant == Variant::EA || cfg.variant == Variant::EAPruned) ? Cutoff(best) : Cutoff::none();
        }

    } // namespace

    NnResult nn_search(std::span<const double> q, const CandidateSet& candidates, const SearchConfig& cfg) {
        if (candidates.size() == 0) { throw SearchError("nn_search: empty candidate set"); }
        cfg.validate();

        std::optional<Envelope> env_q;
        if (cfg.lb == LbMode::Keogh2) { env_q = build_envelope(q, cfg.spec.effective_window(q.size())); }

        NnResult res;
        res.stats.best_trace.reserve(candidates.size());
        for (std::size_t k = 0; k < candidates.size(); ++k) {
            const auto c = candidates[k];
            const auto lb = lower_bound(q, env_q ? &*env_q : nullptr, c, candidates.envelope(k), cfg, res.distance);
            if (lb && *lb >= res.distance) {
                ++res.stats.lb_skips;
            } else {
                const auto co = engine_cutoff(cfg, res.distance);
                if (cfg.trace_cutoffs) { res.stats.cutoffs.push_back(co.value()); }
                const auto r = distance(cfg.spec, cfg.variant, q, c, co);
                res.stats.cells += r.cells_computed;
                if (r.abandoned()) { ++res.stats.abandoned; }
                else { ++res.stats.computed; }
                if (r.cost < res.distance) {
                    res.distance = r.cost;
                    res.index = k;
                }
            }
            res.stats.best_trace.push_back(res.distance);
        }
        return res;
    }

    NnResult nn_search(const TimeSeries& q, std::span<const TimeSeries> candidates, const SearchConfig& cfg) {
        if (candidates.empty()) { throw SearchError("nn_search: empty candidate set"); }
        return nn_search(q.values(), CandidateSet(candidates, cfg), cfg);
    }

    // --- Classification

    std::vector<QueryReport> classify_1nn(const LabeledDataset& train, const LabeledDataset& test,
                                          const SearchConfig& cfg, std::size_t threads) {
        if (train.empty() || test.empty()) { throw SearchError("classify_1nn: train and test must be non-empty"); }
        const CandidateSet candidates(train, cfg);
        std::vector<QueryReport> reports(test.size());

        auto run_query = [&](std::size_t k) {
            const auto t0 = std::chrono::steady_clock::now();
            auto nn = nn_search(test.entries[k].series.values(), candidates, cfg);
            const auto t1 = std::chrono::steady_clock::now();
            reports[k] = QueryReport{
                .query = k,
                .truth = test.entries[k].label,
                .predicted = train.entries[nn.index].label,
                .nn_index = nn.index,
                .nn_distance = nn.distance,
                .computed = nn.stats.computed,
                .abandoned = nn.stats.abandoned,
                .lb_skips = nn.stats.lb_skips,
                .cells = nn.stats.cells,
                .wall_seconds = std::chrono::duration<double>(t1 - t0).count(),
            };
        };

        threads = std::clamp<std::size_t>(threads, 1, test.size());
        if (threads == 1) {
            for (std::size_t k = 0; k < test.size(); ++k) { run_query(k); }
            return reports;
        }

        std::atomic<std::size_t> next{0};
        std::exception_ptr failure;
        std::atomic<bool> failed{false};
        std::vector<std::jthread> pool;
        pool.reserve(threads);
        for (std::size_t t = 0; t < threads; ++t) {
            pool.emplace_back([&] {
                for (std::size_t k = next++; k < test.size() && !failed; k = next++) {
                    try {
                        run_query(k);
                    } catch (...) {
                        if (!failed.exchange(true)) { failure = std::current_exception(); }
                    }
                }
            });
        }
        pool.clear();
        if (failure) { std::rethrow_exception(failure); }
        return reports;
    }

    double accuracy(std::span<const QueryReport> reports) noexcept {
        if (reports.empty()) { return 0; }
        const auto ok = std::ranges::count_if(reports, [](const QueryReport& r) { return r.predicted == r.truth; });
        return static_cast<double>(ok) / static_cast<double>(reports.size());
    }

    // --- Subsequence search

    SubsequenceResult subsequence_search(const TimeSeries& q, const TimeSeries& reference, const SearchConfig& cfg) {
        cfg.validate();
        if (cfg.spec.kind != DistanceKind::DTW && cfg.spec.kind != DistanceKind::CDTW) {
            throw SpecError("subsequence search supports dtw and cdtw only");
        }
        const std::size_t m = q.size();
        if (m > reference.size()) {
            throw DimensionError("query of length " + std::to_string(m) + " is longer than the reference (" +
                                 std::to_string(reference.size()) + ")");
        }
        const std::size_t w = cfg.spec.effective_window(m);

        std::vector<double> query(q.begin(), q.end());
        if (cfg.normalize) { znormalize_into(q.values(), query); }
        std::optional<Envelope> env_q;
        if (cfg.lb != LbMode::None) { env_q = build_envelope(query, w); }

        SubsequenceResult res;
        std::vector<double> window(m);
        const auto ref = reference.values();
        for (std::size_t o = 0; o + m <= ref.size(); ++o) {
            const auto raw = ref.subspan(o, m);
            if (cfg.normalize) { znormalize_into(raw, window); }
            else { std::ranges::copy(raw, window.begin()); }
            ++res.windows;

            if (env_q) {
                double lb = lb_keogh(window, *env_q, cfg.spec.cost);
                if (cfg.lb == LbMode::Keogh2 && !(lb > res.distance)) {
                    lb = std::max(lb, lb_keogh(query, build_envelope(window, w), cfg.spec.cost));
                }
                if (lb >= res.distance) {
                    ++res.lb_skips;
                    continue;
                }
            }

            const auto r = distance(cfg.spec, cfg.variant, query, window, engine_cutoff(cfg, res.distance));
            res.cells += r.cells_computed;
            if (r.abandoned()) { ++res.abandoned; }
            else { ++res.computed; }
            if (r.cost < res.distance) {
                res.distance = r.cost;
                res.offset = o;
            }
        }
        return res;
    }

} // namespace eap
