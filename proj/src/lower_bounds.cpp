#include "eap/lower_bounds.hpp"

#include "eap/error.hpp"

#include <algorithm>
#include <deque>

namespace eap {

    Envelope build_envelope(std::span<const double> s, std::size_t w) {
        const std::size_t n = s.size();
        Envelope env{std::vector<double>(n), std::vector<double>(n), w};
        if (n == 0) { return env; }
        w = std::min(w, n);

        // Monotonic deques of indices: front holds the max (resp. min) of the current window.
        // Each index is pushed and popped at most once per deque.
        std::deque<std::size_t> maxq;
        std::deque<std::size_t> minq;
        auto push = [&](std::size_t k) {
            while (!maxq.empty() && s[maxq.back()] <= s[k]) { maxq.pop_back(); }
            maxq.push_back(k);
            while (!minq.empty() && s[minq.back()] >= s[k]) { minq.pop_back(); }
            minq.push_back(k);
        };

        std::size_t next = 0; // next index to enter the window
        for (std::size_t i = 0; i < n; ++i) {
            const std::size_t hi = std::min(i + w, n - 1);
            while (next <= hi) { push(next++); }
            const std::size_t lo = i > w ? i - w : 0;
            while (maxq.front() < lo) { maxq.pop_front(); }
            while (minq.front() < lo) { minq.pop_front(); }
            env.upper[i] = s[maxq.front()];
            env.lower[i] = s[minq.front()];
        }
        return env;
    }

    double lb_keogh(std::span<const double> q, const Envelope& env, CostMode mode) {
        if (q.size() != env.size()) {
            throw DimensionError("lb_keogh: query length " + std::to_string(q.size()) + " differs from envelope length " +
                                 std::to_string(env.size()));
        }
        double lb = 0;
        for (std::size_t i = 0; i < q.size(); ++i) {
            const double qi = q[i];
            if (qi > env.upper[i]) { lb += point_cost(qi, env.upper[i], mode); }
            else if (qi < env.lower[i]) { lb += point_cost(qi, env.lower[i], mode); }
        }
        return lb;
    }

    double lb_keogh2(std::span<const double> q, std::span<const double> c,
                     const Envelope& env_c, const Envelope& env_q, Cutoff co, CostMode mode) {
        const double first = lb_keogh(q, env_c, mode);
        if (first > co.value()) { return first; }
        return std::max(first, lb_keogh(c, env_q, mode));
    }

} // namespace eap
