#pragma once

// Discrete simulation of two-phase geocast delivery: Phase I hops a message
// toward the geocast region through relays restricted to lens / forwarding
// zone regions (with optional zone escalation), Phase II floods it inside
// the region over radius-R links.

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "ibgp/geometry.hpp"
#include "ibgp/montecarlo.hpp"

namespace ibgp {

// Next-relay search policy for Phase I.
struct ZonePolicy {
    enum class Kind { lens_only, fixed_zone, escalating };
    Kind kind = Kind::lens_only;
    int zone = 0;  // k for fixed_zone

    static ZonePolicy lens_only() { return {Kind::lens_only, 0}; }
    static ZonePolicy fixed_zone(int k) {
        if (k < 1 || k > 3) throw std::domain_error("ZonePolicy: zone index must be 1, 2 or 3");
        return {Kind::fixed_zone, k};
    }
    static ZonePolicy escalating() { return {Kind::escalating, 0}; }

    int max_level() const { return kind == Kind::escalating ? 3 : 0; }
};

struct GeocastScenario {
    int source_cell = 0;
    int geocast_lo = 0;  // contiguous geocast cell range [lo, hi]
    int geocast_hi = 0;
    ZonePolicy policy;
    int max_hops = 1;

    void validate(const HighwayModel& m) const {
        if (source_cell < 0 || geocast_hi >= m.cell_count || source_cell >= geocast_lo ||
            geocast_lo > geocast_hi) {
            throw std::domain_error("GeocastScenario: requires source_cell < geocast_lo <= geocast_hi < n");
        }
        if (max_hops < 1) throw std::domain_error("GeocastScenario: max_hops must be >= 1");
    }
};

struct DeliveryResult {
    bool delivered = false;
    int phase1_hops = 0;
    int relays_used = 0;
    int escalations = 0;
    long long entry_node = -1;  // placement index of the Phase-II entry relay
    long long phase2_reached = 0;
    long long phase2_total = 0;
};

/// Region searched for the next relay at the given escalation level.
/// Escalating widens alpha_3 -> alpha_2 -> alpha_1 -> forward half-disk.
inline Region candidate_region(const HighwayModel& m, int current_cell, const ZonePolicy& policy,
                               int escalation_level) {
    if (escalation_level < 0 || escalation_level > policy.max_level()) {
        throw std::domain_error("candidate_region: invalid escalation level for policy");
    }
    Region r;
    switch (policy.kind) {
        case ZonePolicy::Kind::lens_only:
            r = Region::lens(current_cell);
            break;
        case ZonePolicy::Kind::fixed_zone:
            r = Region::sector_zone(current_cell, policy.zone);
            break;
        case ZonePolicy::Kind::escalating:
            r = escalation_level < 3 ? Region::sector_zone(current_cell, 3 - escalation_level)
                                     : Region::forward_half_disk(current_cell);
            break;
    }
    detail::check_region_index(r, m);
    return r;
}

namespace detail {

inline bool in_geocast_cells(const Point& p, const HighwayModel& m, const GeocastScenario& s) {
    return p.x >= s.geocast_lo * m.cell_length && p.x <= (s.geocast_hi + 1) * m.cell_length &&
           p.y >= 0.0 && p.y <= m.width;
}

// Connected component reachable from `entry` over radius-R links, restricted
// to `members`. Unvisited candidates are swap-removed so dense components
// cost close to O(m).
inline long long flood_component_size(const std::vector<Point>& pts, std::vector<std::size_t> members,
                                      std::size_t entry, double R) {
    const double r2 = R * R;
    std::vector<std::size_t> frontier{entry};
    const auto it = std::find(members.begin(), members.end(), entry);
    if (it != members.end()) members.erase(it);
    long long reached = 1;
    while (!frontier.empty()) {
        const std::size_t u = frontier.back();
        frontier.pop_back();
        for (std::size_t i = 0; i < members.size();) {
            if (distance_sq(pts[u], pts[members[i]]) <= r2) {
                frontier.push_back(members[i]);
                ++reached;
                members[i] = members.back();
                members.pop_back();
            } else {
                ++i;
            }
        }
    }
    return reached;
}

}  // namespace detail

/// One full geocast delivery over a fixed placement. Phase I starts from a
/// virtual holder at the source cell center and greedily hops to the most
/// forward candidate inside the policy's region (ties: smaller y, then lower
/// index); holder x strictly increases, so the walk terminates. Phase II
/// floods the connected component of the entry node inside the geocast cells.
inline DeliveryResult run_geocast(const Placement& placement, const HighwayModel& m,
                                  const GeocastScenario& scenario) {
    scenario.validate(m);
    const auto& pts = placement.positions;
    const double R = m.radius;

    DeliveryResult result;
    std::vector<std::size_t> geocast_members;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (detail::in_geocast_cells(pts[i], m, scenario)) geocast_members.push_back(i);
    }
    result.phase2_total = static_cast<long long>(geocast_members.size());

    Point holder = m.cell_center(scenario.source_cell);
    int current_cell = scenario.source_cell;
    std::size_t holder_index = pts.size();  // virtual source, not a node

    while (result.phase1_hops < scenario.max_hops) {
        // Candidate search, widening the region on escalation.
        std::size_t best = pts.size();
        for (int level = 0; level <= scenario.policy.max_level(); ++level) {
            if (level > 0) ++result.escalations;
            const Region region = candidate_region(m, current_cell, scenario.policy, level);
            for (std::size_t i = 0; i < pts.size(); ++i) {
                const Point& p = pts[i];
                if (p.x <= holder.x) continue;
                if (distance_sq(p, holder) > R * R) continue;
                if (!region_contains(region, p, m)) continue;
                if (best == pts.size() || p.x > pts[best].x ||
                    (p.x == pts[best].x && p.y < pts[best].y)) {
                    best = i;
                }
            }
            if (best != pts.size()) break;
        }
        if (best == pts.size()) return result;  // no relay anywhere: Phase I fails

        holder = pts[best];
        holder_index = best;
        current_cell = m.cell_of(holder.x);
        ++result.phase1_hops;
        ++result.relays_used;

        if (current_cell >= scenario.geocast_lo && current_cell <= scenario.geocast_hi) {
            result.delivered = true;
            break;
        }
    }
    if (!result.delivered) return result;

    result.entry_node = static_cast<long long>(holder_index);
    result.phase2_reached =
        detail::flood_component_size(pts, geocast_members, holder_index, R);
    return result;
}

// Delivery ratio plus the mean escalation count per trial.
struct GeocastStats {
    SimEstimate delivery;
    double escalations_mean = 0.0;
};

inline GeocastStats geocast_stats(const NodeField& field, const HighwayModel& m,
                                  const GeocastScenario& scenario, long long trials,
                                  std::uint64_t seed, int threads = 0) {
    if (trials < 100) throw std::domain_error("geocast_stats: trials must be >= 100");
    scenario.validate(m);
    struct Acc {
        long long delivered = 0;
        long long escalations = 0;
        Acc& operator+=(const Acc& o) {
            delivered += o.delivered;
            escalations += o.escalations;
            return *this;
        }
    };
    const Acc total = detail::run_trials_reduce<Acc>(
        static_cast<std::uint64_t>(trials), threads, [&](std::uint64_t t) -> Acc {
            const Placement p = sample_placement(field, m, seed, t);
            const DeliveryResult r = run_geocast(p, m, scenario);
            return Acc{r.delivered ? 1 : 0, r.escalations};
        });
    GeocastStats stats;
    stats.delivery = make_estimate(trials, total.delivered);
    stats.escalations_mean = static_cast<double>(total.escalations) / static_cast<double>(trials);
    return stats;
}

/// Fraction of sampled placements in which Phase I reaches the geocast region.
inline SimEstimate delivery_ratio(const NodeField& field, const HighwayModel& m,
                                  const GeocastScenario& scenario, long long trials,
                                  std::uint64_t seed, int threads = 0) {
    return geocast_stats(field, m, scenario, trials, seed, threads).delivery;
}

}  // namespace ibgp
