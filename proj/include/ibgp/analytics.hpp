#pragma once

// Closed-form probabilities of void and node presence in lenses and
// forwarding zones under a homogeneous planar Poisson node field, plus
// inverse (planning) queries.

#include <cmath>
#include <cstdint>
#include <stdexcept>

#include "ibgp/geometry.hpp"

namespace ibgp {

// Node population model: either a Poisson intensity (nodes per square meter)
// or a fixed node count over a reference area, mapped to lambda = N / A.
struct NodeField {
    enum class Mode { poisson, fixed };

    Mode mode = Mode::poisson;
    double lambda = 0.0;  // intensity in poisson mode
    double count = 0.0;   // N in fixed mode
    double area = 0.0;    // reference area A in fixed mode

    static NodeField poisson(double lambda) {
        if (!(lambda >= 0.0)) throw std::domain_error("NodeField: intensity must be >= 0");
        NodeField f;
        f.mode = Mode::poisson;
        f.lambda = lambda;
        return f;
    }

    static NodeField fixed(double N, double A) {
        if (!(N >= 0.0)) throw std::domain_error("NodeField: node count must be >= 0");
        if (!(A > 0.0)) throw std::domain_error("NodeField: reference area must be > 0");
        NodeField f;
        f.mode = Mode::fixed;
        f.count = N;
        f.area = A;
        f.lambda = N / A;
        return f;
    }

    double effective_lambda() const { return lambda; }
};

/// Poisson pmf: mean^m * e^(-mean) / m!. Evaluated in log space for
/// mean > 50 or m > 20 so large means do not overflow.
inline double poisson_pmf(double mean, long long m) {
    if (!(mean >= 0.0)) throw std::domain_error("poisson_pmf: mean must be >= 0");
    if (m < 0) throw std::domain_error("poisson_pmf: m must be >= 0");
    if (std::isinf(mean)) return 0.0;
    if (mean == 0.0) return m == 0 ? 1.0 : 0.0;
    if (mean > 50.0 || m > 20) {
        const double log_p =
            static_cast<double>(m) * std::log(mean) - mean - std::lgamma(static_cast<double>(m) + 1.0);
        return std::exp(log_p);
    }
    double p = std::exp(-mean);
    for (long long j = 1; j <= m; ++j) p *= mean / static_cast<double>(j);
    return p;
}

/// P(X <= m) for X ~ Poisson(mean), as the running sum of the pmf.
inline double poisson_cdf(double mean, long long m) {
    if (!(mean >= 0.0)) throw std::domain_error("poisson_cdf: mean must be >= 0");
    if (m < 0) throw std::domain_error("poisson_cdf: m must be >= 0");
    double sum = 0.0;
    for (long long j = 0; j <= m; ++j) sum += poisson_pmf(mean, j);
    return sum < 1.0 ? sum : 1.0;
}

/// Probability that an area holds no node: e^(-lambda * area).
inline double p_void(const NodeField& field, double area) {
    if (!(area >= 0.0)) throw std::domain_error("p_void: area must be >= 0");
    return poisson_pmf(field.effective_lambda() * area, 0);
}

/// Complement of the void probability, computed through expm1 for stability.
inline double p_at_least_one(const NodeField& field, double area) {
    if (!(area >= 0.0)) throw std::domain_error("p_at_least_one: area must be >= 0");
    return -std::expm1(-field.effective_lambda() * area);
}

/// Lens area used by the analytic formulas: the literal closed form in
/// paper_literal mode, the true two-disk overlap in chord_consistent mode.
/// The two coincide when the chord relation holds.
inline double analytic_lens_area(const HighwayModel& m) {
    if (m.mode == GeometryMode::paper_literal) {
        return lens_area_paper(m.radius, m.width, m.cell_length);
    }
    return lens_area_exact(m.radius, m.cell_length);
}

inline double p_m_in_lens(const NodeField& field, const HighwayModel& m, long long count) {
    const double area = analytic_lens_area(m);
    if (!(area >= 0.0)) throw std::domain_error("p_m_in_lens: negative lens area (paper formula outside its domain)");
    return poisson_pmf(field.effective_lambda() * area, count);
}

inline double p_m_in_zone(const NodeField& field, const HighwayModel& m, int k, long long count) {
    return poisson_pmf(field.effective_lambda() * zone_area(m, k), count);
}

/// Void probability of forwarding zone k; strictly increasing in k.
inline double p_void_zone(const NodeField& field, const HighwayModel& m, int k) {
    return p_void(field, zone_area(m, k));
}

// Target region of the inverse radius query: the lens or one forwarding zone.
struct VoidTarget {
    bool is_lens = true;
    int zone_k = 0;

    static VoidTarget lens() { return {true, 0}; }
    static VoidTarget zone(int k) {
        if (k < 1 || k > 3) throw std::domain_error("VoidTarget: zone index must be 1, 2 or 3");
        return {false, k};
    }
};

namespace detail {

inline double void_probability_at_radius(const NodeField& field, double W, double L, VoidTarget target,
                                         GeometryMode mode, double R) {
    const double lam = field.effective_lambda();
    const double eff_L = mode == GeometryMode::chord_consistent ? cell_length_from_radius(R, W) : L;
    double area = 0.0;
    if (target.is_lens) {
        area = mode == GeometryMode::chord_consistent ? lens_area_exact(R, eff_L)
                                                      : lens_area_paper(R, W, eff_L);
    } else {
        area = zone_half_angle(W, eff_L, target.zone_k) * R * R;
    }
    if (!(area >= 0.0)) throw std::domain_error("void probability: negative area (paper formula outside its domain)");
    return std::exp(-lam * area);
}

}  // namespace detail

/// Smallest radius R in (W/2, 1e6] whose void probability is <= epsilon,
/// located by a bracketing scan plus bisection to 0.01 m. paper_literal mode
/// holds W and L fixed while R varies; chord_consistent mode derives L from R.
/// Throws "unreachable target" when no radius in range qualifies (possible for
/// the chord-consistent lens, whose area shrinks as R grows).
inline double min_radius_for_void(const NodeField& field, double W, double L, VoidTarget target,
                                  double epsilon, GeometryMode mode) {
    if (!(epsilon > 0.0 && epsilon <= 1.0)) {
        throw std::domain_error("min_radius_for_void: epsilon must lie in (0, 1]");
    }
    if (mode == GeometryMode::paper_literal && !(L > 0.0)) {
        throw std::domain_error("min_radius_for_void: cell length must be > 0 in paper_literal mode");
    }
    constexpr double kResolution = 0.01;
    constexpr double kRadiusMax = 1e6;
    const double r_min = W / 2.0 + kResolution;
    if (r_min >= kRadiusMax) throw std::domain_error("min_radius_for_void: width exhausts scan range");

    const auto void_at = [&](double R) {
        return detail::void_probability_at_radius(field, W, L, target, mode, R);
    };

    if (void_at(r_min) <= epsilon) return r_min;

    // Geometric scan to bracket the first downward crossing of epsilon.
    constexpr int kScanSteps = 4096;
    const double ratio = std::pow(kRadiusMax / r_min, 1.0 / kScanSteps);
    double lo = r_min;
    double hi = 0.0;
    bool bracketed = false;
    for (int i = 1; i <= kScanSteps; ++i) {
        const double R = i == kScanSteps ? kRadiusMax : r_min * std::pow(ratio, i);
        if (void_at(R) <= epsilon) {
            hi = R;
            bracketed = true;
            break;
        }
        lo = R;
    }
    if (!bracketed) throw std::domain_error("min_radius_for_void: unreachable target");

    while (hi - lo > kResolution / 2.0) {
        const double mid = 0.5 * (lo + hi);
        if (void_at(mid) <= epsilon) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    return hi;
}

/// Probability that every one of `hops` successive lenses holds at least one
/// node: (1 - p_void(lens))^hops. Requires the lenses to be pairwise disjoint
/// (adjacent lenses overlap exactly when L < R), otherwise the independence
/// assumption behind the product is violated.
inline double end_to_end_connectivity(const NodeField& field, const HighwayModel& m, int hops) {
    if (hops < 1 || hops >= m.cell_count) {
        throw std::domain_error("end_to_end_connectivity: hops must lie in [1, n-1]");
    }
    if (m.cell_length < m.radius) {
        throw std::domain_error("overlapping lenses - independence assumption violated");
    }
    const double area = analytic_lens_area(m);
    if (!(area >= 0.0)) {
        throw std::domain_error("end_to_end_connectivity: negative lens area (paper formula outside its domain)");
    }
    return std::pow(p_at_least_one(field, area), hops);
}

}  // namespace ibgp
