#pragma once

// Spatial sampling of node placements on the highway strip and empirical
// estimation of the analytic probabilities. Per-trial generator state is
// derived from (master seed, trial index), never from call order, so results
// are bit-identical under any degree of parallelism.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <stdexcept>
#include <thread>
#include <vector>

#include "ibgp/analytics.hpp"
#include "ibgp/geometry.hpp"

namespace ibgp {

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

inline std::uint64_t trial_stream_seed(std::uint64_t master_seed, std::uint64_t trial_index) {
    return splitmix64(splitmix64(master_seed) ^ splitmix64(trial_index + 0x5851F42D4C957F2Dull));
}

// Uniform double in [0, 1) with 53 random bits.
inline double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Deterministic parallel trial loop: workers grab fixed-size index blocks and
// per-trial results are reduced by commutative integer sums, so the outcome
// is independent of thread count and scheduling.
template <typename Result, typename PerTrial>
Result run_trials_reduce(std::uint64_t trials, int threads, PerTrial per_trial) {
    if (threads <= 0) {
        threads = static_cast<int>(std::thread::hardware_concurrency());
        if (threads <= 0) threads = 1;
    }
    if (threads == 1 || trials < 2048) {
        Result total{};
        for (std::uint64_t t = 0; t < trials; ++t) total += per_trial(t);
        return total;
    }
    constexpr std::uint64_t kBlock = 1024;
    std::atomic<std::uint64_t> next_block{0};
    const std::uint64_t block_count = (trials + kBlock - 1) / kBlock;
    std::vector<Result> partial(static_cast<std::size_t>(threads));
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(threads));
    for (int w = 0; w < threads; ++w) {
        pool.emplace_back([&, w] {
            Result local{};
            for (;;) {
                const std::uint64_t b = next_block.fetch_add(1, std::memory_order_relaxed);
                if (b >= block_count) break;
                const std::uint64_t begin = b * kBlock;
                const std::uint64_t end = std::min(begin + kBlock, trials);
                for (std::uint64_t t = begin; t < end; ++t) local += per_trial(t);
            }
            partial[static_cast<std::size_t>(w)] = local;
        });
    }
    for (auto& th : pool) th.join();
    Result total{};
    for (const auto& p : partial) total += p;
    return total;
}

}  // namespace detail

// One sampled node configuration on the strip.
struct Placement {
    std::vector<Point> positions;
    std::uint64_t master_seed = 0;
    NodeField::Mode field_mode = NodeField::Mode::poisson;
};

/// Draw one placement: node count Poisson(lambda * strip area) (or exactly N
/// in fixed mode), positions i.i.d. uniform on [0, nL] x [0, W]. Fully
/// determined by (seed, trial_index).
inline Placement sample_placement(const NodeField& field, const HighwayModel& m, std::uint64_t seed,
                                  std::uint64_t trial_index) {
    const double strip_mean = field.effective_lambda() * m.strip_area();
    const double expected =
        field.mode == NodeField::Mode::fixed ? field.count : strip_mean;
    if (expected > 1e8) throw std::domain_error("sample_placement: scale refused (expected count > 1e8)");

    std::mt19937_64 rng(detail::trial_stream_seed(seed, trial_index));
    std::size_t count = 0;
    if (field.mode == NodeField::Mode::fixed) {
        count = static_cast<std::size_t>(field.count);
    } else if (strip_mean > 0.0) {
        std::poisson_distribution<long long> dist(strip_mean);
        count = static_cast<std::size_t>(dist(rng));
    }

    Placement p;
    p.master_seed = seed;
    p.field_mode = field.mode;
    p.positions.reserve(count);
    const double len = m.strip_length();
    for (std::size_t i = 0; i < count; ++i) {
        const double x = detail::uniform01(rng) * len;
        const double y = detail::uniform01(rng) * m.width;
        p.positions.push_back({x, y});
    }
    return p;
}

inline long long count_in_region(const Placement& p, const Region& r, const HighwayModel& m) {
    detail::check_region_index(r, m);
    long long count = 0;
    for (const Point& pos : p.positions) {
        if (region_contains(r, pos, m)) ++count;
    }
    return count;
}

namespace detail {

// Counting capped at cap+1: enough to decide void / at-least-one / exactly-m
// events without scanning the full placement.
inline long long count_in_region_capped(const Placement& p, const Region& r, const HighwayModel& m,
                                        long long cap) {
    long long count = 0;
    for (const Point& pos : p.positions) {
        if (region_contains(r, pos, m)) {
            if (++count > cap) return count;
        }
    }
    return count;
}

}  // namespace detail

// An empirical probability with trial count and Wilson 95% interval.
struct SimEstimate {
    long long trials = 0;
    long long hits = 0;
    double p_hat = 0.0;
    double std_err = 0.0;
    double ci95_low = 0.0;
    double ci95_high = 0.0;
};

/// Wilson score interval at 95% confidence. The bound on the observed side
/// is exact at p_hat = 0 or 1 rather than a rounding residue away from it.
inline void wilson_interval(double p_hat, long long n, double& low, double& high) {
    constexpr double z = 1.959963984540054;
    const double nn = static_cast<double>(n);
    const double z2 = z * z;
    const double denom = 1.0 + z2 / nn;
    const double center = (p_hat + z2 / (2.0 * nn)) / denom;
    const double half = z * std::sqrt(p_hat * (1.0 - p_hat) / nn + z2 / (4.0 * nn * nn)) / denom;
    low = p_hat == 0.0 ? 0.0 : std::fmax(0.0, center - half);
    high = p_hat == 1.0 ? 1.0 : std::fmin(1.0, center + half);
}

inline SimEstimate make_estimate(long long trials, long long hits) {
    SimEstimate e;
    e.trials = trials;
    e.hits = hits;
    e.p_hat = static_cast<double>(hits) / static_cast<double>(trials);
    e.std_err = std::sqrt(e.p_hat * (1.0 - e.p_hat) / static_cast<double>(trials));
    wilson_interval(e.p_hat, trials, e.ci95_low, e.ci95_high);
    return e;
}

// Region-count event: void, at-least-one, or exactly m nodes.
struct Event {
    enum class Kind { void_region, at_least_one, exactly };
    Kind kind = Kind::void_region;
    long long m = 0;

    static Event void_region() { return {Kind::void_region, 0}; }
    static Event at_least_one() { return {Kind::at_least_one, 0}; }
    static Event exactly(long long m) {
        if (m < 0) throw std::domain_error("Event: node count must be >= 0");
        return {Kind::exactly, m};
    }
};

/// Empirical frequency of the event over independent placements.
inline SimEstimate estimate_probability(const NodeField& field, const HighwayModel& m, const Region& r,
                                        const Event& event, long long trials, std::uint64_t seed,
                                        int threads = 0) {
    if (trials < 100) throw std::domain_error("estimate_probability: trials must be >= 100");
    detail::check_region_index(r, m);
    const long long cap = event.kind == Event::Kind::exactly ? event.m : 0;
    const long long hits = detail::run_trials_reduce<long long>(
        static_cast<std::uint64_t>(trials), threads, [&](std::uint64_t t) -> long long {
            const Placement p = sample_placement(field, m, seed, t);
            const long long c = detail::count_in_region_capped(p, r, m, cap);
            switch (event.kind) {
                case Event::Kind::void_region: return c == 0 ? 1 : 0;
                case Event::Kind::at_least_one: return c >= 1 ? 1 : 0;
                case Event::Kind::exactly: return c == event.m ? 1 : 0;
            }
            return 0;
        });
    return make_estimate(trials, hits);
}

// Outcome of checking an empirical estimate against an analytic probability.
struct CompareReport {
    double z_score = 0.0;
    bool pass = false;
    bool exact_tail = false;   // Poisson tail test used instead of the z-test
    double tail_prob = 1.0;    // smaller one-sided tail probability when exact_tail
};

/// Compare an estimate against an analytic value. Uses the 4-sigma z-test
/// where the normal approximation holds; when the expected hit (or miss)
/// count is below 25 the z-test is invalid and an exact Poisson tail test on
/// the counts takes over, at the same two-sided significance as 4 sigma.
inline CompareReport compare_to_analytic(const SimEstimate& est, double analytic) {
    if (est.trials <= 0) throw std::domain_error("compare_to_analytic: estimate has no trials");
    CompareReport rep;
    if (est.std_err == 0.0) {
        rep.z_score = est.p_hat == analytic ? 0.0
                      : est.p_hat > analytic ? std::numeric_limits<double>::infinity()
                                             : -std::numeric_limits<double>::infinity();
    } else {
        rep.z_score = (est.p_hat - analytic) / est.std_err;
    }

    const double n = static_cast<double>(est.trials);
    const double expected_hits = analytic * n;
    const double expected_misses = (1.0 - analytic) * n;
    constexpr double kCountThreshold = 25.0;
    constexpr double kAlphaHalf = 3.16712418331199e-5;  // one-sided 4-sigma tail

    if (expected_hits >= kCountThreshold && expected_misses >= kCountThreshold) {
        rep.pass = std::fabs(rep.z_score) <= 4.0;
        return rep;
    }

    rep.exact_tail = true;
    const bool use_misses = expected_misses < expected_hits;
    const double mean = use_misses ? expected_misses : expected_hits;
    const long long observed = use_misses ? est.trials - est.hits : est.hits;
    const double upper = observed == 0 ? 1.0 : 1.0 - poisson_cdf(mean, observed - 1);  // P(X >= obs)
    const double lower = poisson_cdf(mean, observed);                                  // P(X <= obs)
    rep.tail_prob = std::fmin(lower, upper);
    rep.pass = rep.tail_prob > kAlphaHalf;
    return rep;
}

}  // namespace ibgp
