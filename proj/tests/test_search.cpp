#include "eap/engines.hpp"
#include "eap/error.hpp"
#include "eap/search.hpp"
#include "test_util.hpp"

#include <gtest/gtest.h>

using namespace eap;
using namespace eap::testing;

namespace {

    std::vector<TimeSeries> walks(std::mt19937_64& rng, std::size_t count, std::size_t length) {
        std::vector<TimeSeries> out;
        for (std::size_t k = 0; k < count; ++k) { out.emplace_back(random_walk(rng, length)); }
        return out;
    }

    /// Brute force: every candidate with the plain engine, first strict minimum.
    std::pair<std::size_t, double> brute_nn(const TimeSeries& q, const std::vector<TimeSeries>& cands, const DistanceSpec& spec) {
        std::pair<std::size_t, double> best{0, INF};
        for (std::size_t k = 0; k < cands.size(); ++k) {
            const double d = distance(spec, Variant::Base, q, cands[k]).cost;
            if (d < best.second) { best = {k, d}; }
        }
        return best;
    }

} // namespace

TEST(Search, NnMatchesBruteForceForEveryConfiguration) {
    std::mt19937_64 rng(301);
    for (auto kind : all_kinds) {
        for (int trial = 0; trial < 10; ++trial) {
            const auto cands = walks(rng, 30, 40);
            const TimeSeries q(random_walk(rng, 40));
            const auto spec = random_spec(rng, kind, 10);
            const auto [idx, dist] = brute_nn(q, cands, spec);
            for (auto v : {Variant::Base, Variant::EA, Variant::EAPruned, Variant::PrunedOnly}) {
                for (auto lb : {LbMode::None, LbMode::Keogh, LbMode::Keogh2}) {
                    SearchConfig cfg{.spec = spec, .variant = v, .lb = lb};
                    if (lb != LbMode::None && kind != DistanceKind::DTW && kind != DistanceKind::CDTW) {
                        EXPECT_THROW(cfg.validate(), SpecError);
                        continue;
                    }
                    const auto r = nn_search(q, cands, cfg);
                    EXPECT_EQ(r.index, idx) << to_string(kind) << ' ' << to_string(v) << ' ' << to_string(lb);
                    EXPECT_EQ(r.distance, dist) << to_string(kind) << ' ' << to_string(v) << ' ' << to_string(lb);
                    EXPECT_EQ(r.stats.total(), cands.size());
                }
            }
        }
    }
}

TEST(Search, CutoffIsRunningBest) {
    std::mt19937_64 rng(303);
    const auto cands = walks(rng, 25, 32);
    const TimeSeries q(random_walk(rng, 32));
    const SearchConfig cfg{.spec = DistanceSpec::cdtw(4), .variant = Variant::EAPruned, .trace_cutoffs = true};
    const auto r = nn_search(q, cands, cfg);
    ASSERT_EQ(r.stats.best_trace.size(), cands.size());
    ASSERT_EQ(r.stats.cutoffs.size(), cands.size());
    EXPECT_TRUE(std::isinf(r.stats.cutoffs[0]));
    for (std::size_t k = 1; k < cands.size(); ++k) {
        EXPECT_EQ(r.stats.cutoffs[k], r.stats.best_trace[k - 1]);
        EXPECT_LE(r.stats.best_trace[k], r.stats.best_trace[k - 1]);
    }
}

TEST(Search, TiesResolveToLowestIndex) {
    const std::vector<TimeSeries> cands{TimeSeries({5, 5}), TimeSeries({1, 2}), TimeSeries({1, 2})};
    for (auto v : {Variant::Base, Variant::EA, Variant::EAPruned}) {
        const auto r = nn_search(TimeSeries({1, 2}), cands, SearchConfig{.spec = DistanceSpec::dtw(), .variant = v});
        EXPECT_EQ(r.index, 1u);
        EXPECT_EQ(r.distance, 0.0);
    }
}

TEST(Search, EmptyCandidates) {
    const std::vector<TimeSeries> none;
    EXPECT_THROW((void)nn_search(TimeSeries({1}), none, SearchConfig{}), SearchError);
}

TEST(Search, ClassifyIsThreadInvariant) {
    const auto train = gen_random_walk(20, 48, 2, 7);
    const auto test = gen_random_walk(12, 48, 2, 8);
    const SearchConfig cfg{.spec = DistanceSpec::cdtw(5), .variant = Variant::EAPruned, .lb = LbMode::Keogh2};
    const auto one = classify_1nn(train, test, cfg, 1);
    const auto four = classify_1nn(train, test, cfg, 4);
    ASSERT_EQ(one.size(), test.size());
    ASSERT_EQ(four.size(), test.size());
    for (std::size_t k = 0; k < one.size(); ++k) {
        EXPECT_EQ(one[k].query, k);
        EXPECT_EQ(one[k].truth, test.entries[k].label);
        EXPECT_EQ(one[k].nn_index, four[k].nn_index);
        EXPECT_EQ(one[k].nn_distance, four[k].nn_distance);
        EXPECT_EQ(one[k].predicted, train.entries[one[k].nn_index].label);
    }
    EXPECT_EQ(accuracy(one), accuracy(four));
}

TEST(Search, Accuracy) {
    std::vector<QueryReport> r(4);
    r[0].truth = 1;
    r[0].predicted = 1;
    r[1].truth = 1;
    r[1].predicted = 0;
    EXPECT_DOUBLE_EQ(accuracy(r), 0.75);
    EXPECT_EQ(accuracy(std::span<const QueryReport>{}), 0.0);
}

TEST(Search, SubsequenceMatchesBruteForce) {
    std::mt19937_64 rng(307);
    for (bool normalize : {false, true}) {
        for (int trial = 0; trial < 6; ++trial) {
            const TimeSeries ref(random_walk(rng, 400));
            const TimeSeries q(random_walk(rng, 24));
            const auto spec = trial % 2 ? DistanceSpec::dtw() : DistanceSpec::cdtw(3);
            const auto qn = normalize ? znormalize(q) : q;
            std::size_t best_off = 0;
            double best = INF;
            std::vector<double> window(q.size());
            for (std::size_t off = 0; off + q.size() <= ref.size(); ++off) {
                const auto slice = ref.values().subspan(off, q.size());
                if (normalize) { znormalize_into(slice, window); }
                else { std::copy(slice.begin(), slice.end(), window.begin()); }
                const double d = distance(spec, Variant::Base, qn.values(), window).cost;
                if (d < best) { best = d, best_off = off; }
            }
            for (auto v : {Variant::Base, Variant::EA, Variant::EAPruned}) {
                for (auto lb : {LbMode::None, LbMode::Keogh, LbMode::Keogh2}) {
                    const auto r = subsequence_search(q, ref, SearchConfig{.spec = spec, .variant = v, .lb = lb, .normalize = normalize});
                    EXPECT_EQ(r.offset, best_off);
                    EXPECT_EQ(r.distance, best);
                    EXPECT_EQ(r.windows, ref.size() - q.size() + 1);
                    EXPECT_EQ(r.computed + r.abandoned + r.lb_skips, r.windows);
                }
            }
        }
    }
}

TEST(Search, SubsequenceErrors) {
    EXPECT_THROW((void)subsequence_search(TimeSeries({1, 2, 3}), TimeSeries({1, 2}), SearchConfig{}), DimensionError);
    EXPECT_THROW((void)subsequence_search(TimeSeries({1}), TimeSeries({1, 2}), SearchConfig{.spec = DistanceSpec::msm(1)}), SpecError);
}

TEST(Search, LbNames) {
    for (auto m : {LbMode::None, LbMode::Keogh, LbMode::Keogh2}) { EXPECT_EQ(parse_lb_mode(to_string(m)), m); }
}
