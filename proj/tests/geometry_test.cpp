#include "ibgp/geometry.hpp"

#include <cmath>
#include <random>
#include <vector>

#include <gtest/gtest.h>

using namespace ibgp;

namespace {

constexpr double kChordL250 = 476.9696007084728;  // sqrt(4*250^2 - 150^2)

double rel_err(double a, double b) {
    const double scale = std::fmax(std::fabs(a), std::fabs(b));
    return scale == 0.0 ? 0.0 : std::fabs(a - b) / scale;
}

double uniform(std::mt19937_64& rng, double lo, double hi) {
    return lo + (hi - lo) * (static_cast<double>(rng() >> 11) * 0x1.0p-53);
}

// Test-side rejection integration over the region's bounding box.
double rejection_area(const Region& r, const HighwayModel& m, long long samples, std::uint64_t seed,
                      double* std_err_out) {
    const BoundingBox box = region_bbox(r, m);
    std::mt19937_64 rng(seed);
    long long hits = 0;
    for (long long i = 0; i < samples; ++i) {
        const Point p{uniform(rng, box.x0, box.x1), uniform(rng, box.y0, box.y1)};
        if (region_contains(r, p, m)) ++hits;
    }
    const double p_hat = static_cast<double>(hits) / static_cast<double>(samples);
    if (std_err_out) {
        *std_err_out = box.area() * std::sqrt(p_hat * (1.0 - p_hat) / static_cast<double>(samples));
    }
    return p_hat * box.area();
}

TEST(CellLengthFromRadius, KnownValues) {
    EXPECT_DOUBLE_EQ(cell_length_from_radius(250.0, 0.0), 500.0);
    // 4R^2 - W^2 = 250000 - 22500 = 227500
    EXPECT_DOUBLE_EQ(cell_length_from_radius(250.0, 150.0), std::sqrt(227500.0));
    EXPECT_NEAR(cell_length_from_radius(250.0, 150.0), kChordL250, 1e-9);
}

TEST(CellLengthFromRadius, DegenerateChord) {
    EXPECT_THROW(cell_length_from_radius(250.0, 500.0), std::domain_error);
    EXPECT_THROW(cell_length_from_radius(250.0, 600.0), std::domain_error);
    EXPECT_THROW(cell_length_from_radius(250.0, -1.0), std::domain_error);
}

TEST(ApexAngle, KnownValues) {
    EXPECT_DOUBLE_EQ(apex_angle(0.0, 100.0), 0.0);
    EXPECT_DOUBLE_EQ(apex_angle(123.0, 123.0), kPi / 2.0);
    const double alpha = apex_angle(150.0, kChordL250);
    EXPECT_NEAR(alpha, 0.6093853080307950, 1e-12);
    // Chord-consistent cross-check: 2*asin(W / 2R).
    EXPECT_NEAR(alpha, 2.0 * std::asin(150.0 / 500.0), 1e-12);
    EXPECT_THROW(apex_angle(10.0, 0.0), std::domain_error);
    EXPECT_THROW(apex_angle(10.0, -5.0), std::domain_error);
}

TEST(TriangleArea, DegenerateLimits) {
    EXPECT_DOUBLE_EQ(triangle_area(250.0, 0.0), 0.0);
    EXPECT_DOUBLE_EQ(triangle_area(250.0, 500.0), 0.0);
    EXPECT_THROW(triangle_area(250.0, 500.1), std::domain_error);
}

TEST(TriangleArea, MatchesHeronForm) {
    // Independent oracle: Heron's formula with semi-perimeter (2R + W) / 2.
    const auto heron = [](double R, double W) {
        const double s = (2.0 * R + W) / 2.0;
        return std::sqrt(s * (s - R) * (s - R) * (s - W));
    };
    EXPECT_NEAR(triangle_area(250.0, 150.0), 17886.360026567731, 1e-6);
    EXPECT_LT(rel_err(triangle_area(250.0, 150.0), heron(250.0, 150.0)), 1e-9);

    std::mt19937_64 rng(7001);
    for (int i = 0; i < 500; ++i) {
        const double R = uniform(rng, 50.0, 1000.0);
        const double W = uniform(rng, 1e-3, 1.9) * R;
        EXPECT_LT(rel_err(triangle_area(R, W), heron(R, W)), 1e-9) << "R=" << R << " W=" << W;
    }
}

TEST(SectorArea, KnownValues) {
    EXPECT_DOUBLE_EQ(sector_area(77.0, 0.0), 0.0);
    EXPECT_DOUBLE_EQ(sector_area(250.0, 2.0 * kPi), kPi * 62500.0);
    EXPECT_NEAR(sector_area(250.0, 0.60938), 19043.125, 1e-9);
    EXPECT_THROW(sector_area(250.0, -0.1), std::domain_error);
    EXPECT_THROW(sector_area(250.0, 2.0 * kPi + 0.1), std::domain_error);
    EXPECT_THROW(sector_area(0.0, 1.0), std::domain_error);
}

TEST(LensAreaPaper, KnownValues) {
    EXPECT_DOUBLE_EQ(lens_area_paper(250.0, 0.0, 100.0), 0.0);
    EXPECT_NEAR(lens_area_paper(250.0, 150.0, kChordL250), 2313.8616987892266, 1e-8);
    EXPECT_THROW(lens_area_paper(250.0, 500.0, 100.0), std::domain_error);
    EXPECT_THROW(lens_area_paper(250.0, 150.0, 0.0), std::domain_error);
}

TEST(LensAreaPaper, FullOverlapLimit) {
    // W -> 2R with L -> 0+: atan -> pi/2 and the triangle term vanishes.
    const double R = 250.0;
    const double area = lens_area_paper(R, 2.0 * R - 1e-9, 1e-9);
    EXPECT_NEAR(area, kPi * R * R, 1.0);
}

TEST(LensAreaExact, KnownValues) {
    const double R = 250.0;
    EXPECT_DOUBLE_EQ(lens_area_exact(R, 0.0), kPi * R * R);
    EXPECT_DOUBLE_EQ(lens_area_exact(R, 2.0 * R), 0.0);
    EXPECT_DOUBLE_EQ(lens_area_exact(R, 3.0 * R), 0.0);
    EXPECT_NEAR(lens_area_exact(R, kChordL250), 2313.8616987892266, 1e-8);
    EXPECT_THROW(lens_area_exact(R, -1.0), std::domain_error);
    EXPECT_THROW(lens_area_exact(0.0, 1.0), std::domain_error);
}

TEST(LensAreaExact, MatchesRejectionIntegration) {
    const HighwayModel m = HighwayModel::chord(150.0, 250.0, 3);
    double se = 0.0;
    const double mc = rejection_area(Region::lens(0), m, 1000000, 12345, &se);
    EXPECT_NEAR(mc, lens_area_exact(250.0, m.cell_length), 3.0 * se);
}

TEST(LensArea, OracleEquivalenceOnChordGrid) {
    std::mt19937_64 rng(7002);
    for (int i = 0; i < 2000; ++i) {
        const double R = uniform(rng, 50.0, 1000.0);
        const double W = uniform(rng, 1e-3, 1.9) * R;
        const double L = cell_length_from_radius(R, W);
        EXPECT_LT(rel_err(lens_area_paper(R, W, L), lens_area_exact(R, L)), 1e-9)
            << "R=" << R << " W=" << W;
    }
}

TEST(LensArea, DecompositionIdentity) {
    std::mt19937_64 rng(7003);
    for (int i = 0; i < 500; ++i) {
        const double R = uniform(rng, 50.0, 1000.0);
        const double W = uniform(rng, 1e-3, 1.9) * R;
        const double L = uniform(rng, 0.05, 3.0) * R;
        const double direct = lens_area_paper(R, W, L);
        const double decomposed = 2.0 * (sector_area(R, apex_angle(W, L)) - triangle_area(R, W));
        EXPECT_EQ(direct, decomposed) << "R=" << R << " W=" << W << " L=" << L;
        // And the flattened closed form agrees to ulp scale of its terms.
        const double flat = 2.0 * R * R * std::atan(W / L) - (W / 2.0) * std::sqrt(4.0 * R * R - W * W);
        const double term_scale = 2.0 * R * R * std::atan(W / L);
        EXPECT_NEAR(direct, flat, 1e-12 * term_scale) << "R=" << R << " W=" << W << " L=" << L;
    }
}

TEST(ZoneArea, KnownValues) {
    const HighwayModel square = HighwayModel::literal(100.0, 100.0, 250.0, 2);
    EXPECT_NEAR(zone_area(square, 1), (kPi / 4.0) * 62500.0, 1e-9);
    // Width limit handled by the half-angle helper (the model itself requires W > 0).
    for (int k = 1; k <= 3; ++k) EXPECT_DOUBLE_EQ(zone_half_angle(0.0, 100.0, k), 0.0);

    const HighwayModel m = HighwayModel::chord(150.0, 250.0, 2);
    EXPECT_NEAR(zone_area(m, 1), 19043.290875962344, 1e-8);
    EXPECT_NEAR(zone_area(m, 2), 9747.853847782855, 1e-8);
    EXPECT_NEAR(zone_area(m, 3), 4903.747897003429, 1e-8);
    EXPECT_THROW(zone_area(m, 0), std::domain_error);
    EXPECT_THROW(zone_area(m, 4), std::domain_error);
}

TEST(ZoneArea, StrictlyDecreasingInK) {
    std::mt19937_64 rng(7004);
    for (int i = 0; i < 200; ++i) {
        const double R = uniform(rng, 50.0, 1000.0);
        const double W = uniform(rng, 1e-3, 1.9) * R;
        const HighwayModel m = HighwayModel::chord(W, R, 2);
        EXPECT_GT(zone_area(m, 1), zone_area(m, 2));
        EXPECT_GT(zone_area(m, 2), zone_area(m, 3));
        EXPECT_DOUBLE_EQ(zone_area(m, 2), sector_area(R, 2.0 * zone_half_angle(W, m.cell_length, 2)));
    }
}

TEST(HighwayModel, Validation) {
    EXPECT_THROW(HighwayModel::chord(150.0, 250.0, 1), std::domain_error);
    EXPECT_THROW(HighwayModel::chord(500.0, 250.0, 3), std::domain_error);
    EXPECT_THROW(HighwayModel::literal(-1.0, 100.0, 250.0, 3), std::domain_error);
    EXPECT_THROW(HighwayModel::literal(100.0, 100.0, 40.0, 3), std::domain_error);

    const HighwayModel m = HighwayModel::chord(150.0, 250.0, 4);
    EXPECT_NEAR(m.cell_length, kChordL250, 1e-9);
    EXPECT_DOUBLE_EQ(m.cell_center(0).x, m.cell_length / 2.0);
    EXPECT_DOUBLE_EQ(m.cell_center(2).y, 75.0);
    EXPECT_EQ(m.cell_of(0.0), 0);
    EXPECT_EQ(m.cell_of(m.cell_length), 1);
    EXPECT_EQ(m.cell_of(m.strip_length()), 3);
}

TEST(RegionContains, LensMembership) {
    const HighwayModel m = HighwayModel::chord(150.0, 250.0, 3);
    const double L = m.cell_length;
    // Midpoint of the shared cell boundary, equidistant from both centers.
    EXPECT_TRUE(region_contains(Region::lens(0), {L, 75.0}, m));
    // Cell corner lies at distance exactly R from both centers: closed region.
    EXPECT_TRUE(region_contains(Region::lens(0), {L, 0.0}, m));
    EXPECT_TRUE(region_contains(Region::lens(0), {L, 150.0}, m));
    EXPECT_FALSE(region_contains(Region::lens(0), {0.0, 75.0}, m));
    EXPECT_THROW(region_contains(Region::lens(2), {0.0, 0.0}, m), std::domain_error);
    EXPECT_THROW(region_contains(Region::lens(-1), {0.0, 0.0}, m), std::domain_error);
}

TEST(RegionContains, SectorMembership) {
    const HighwayModel m = HighwayModel::chord(150.0, 250.0, 3);
    const Point c = m.cell_center(0);
    EXPECT_FALSE(region_contains(Region::sector_zone(0, 3), {c.x + 250.0 * 1.001, c.y}, m));
    EXPECT_TRUE(region_contains(Region::sector_zone(0, 3), {c.x + 200.0, c.y}, m));
    EXPECT_TRUE(region_contains(Region::sector_zone(0, 3), c, m));  // apex
    // On-axis but behind the apex.
    EXPECT_FALSE(region_contains(Region::sector_zone(0, 1), {c.x - 10.0, c.y}, m));
    EXPECT_THROW(region_contains(Region::sector_zone(0, 5), c, m), std::domain_error);
}

TEST(RegionContains, RectStripHalfDisk) {
    const HighwayModel m = HighwayModel::literal(10.0, 100.0, 60.0, 4);
    EXPECT_TRUE(region_contains(Region::cell_rect(1), {100.0, 0.0}, m));
    EXPECT_TRUE(region_contains(Region::cell_rect(1), {200.0, 10.0}, m));
    EXPECT_FALSE(region_contains(Region::cell_rect(1), {200.1, 5.0}, m));
    EXPECT_TRUE(region_contains(Region::strip(), {400.0, 10.0}, m));
    EXPECT_FALSE(region_contains(Region::strip(), {400.1, 5.0}, m));
    const Point c = m.cell_center(2);
    EXPECT_TRUE(region_contains(Region::forward_half_disk(2), {c.x, c.y + 59.0}, m));
    EXPECT_FALSE(region_contains(Region::forward_half_disk(2), {c.x - 1.0, c.y}, m));
}

TEST(RegionArea, Dispatch) {
    const HighwayModel m = HighwayModel::literal(10.0, 100.0, 60.0, 4);
    EXPECT_DOUBLE_EQ(region_area(Region::cell_rect(2), m), 1000.0);
    EXPECT_DOUBLE_EQ(region_area(Region::strip(), m), 4000.0);
    EXPECT_DOUBLE_EQ(region_area(Region::forward_half_disk(0), m), kPi * 3600.0 / 2.0);

    // Lens with centers exactly 2R apart is empty.
    const HighwayModel touching = HighwayModel::literal(10.0, 120.0, 60.0, 4);
    EXPECT_DOUBLE_EQ(region_area(Region::lens(0), touching), 0.0);

    const HighwayModel chord = HighwayModel::chord(150.0, 250.0, 3);
    EXPECT_NEAR(region_area(Region::lens(1), chord), 2313.8616987892266, 1e-8);
    EXPECT_THROW(region_area(Region::lens(5), chord), std::domain_error);
}

TEST(Regions, ZoneNestingOnRandomPoints) {
    std::mt19937_64 rng(7005);
    for (int trial = 0; trial < 20; ++trial) {
        const double R = uniform(rng, 50.0, 1000.0);
        const double W = uniform(rng, 1e-3, 1.9) * R;
        const HighwayModel m = HighwayModel::chord(W, R, 2);
        const Point c = m.cell_center(0);
        for (int i = 0; i < 500; ++i) {
            const Point p{uniform(rng, c.x - 1.2 * R, c.x + 1.2 * R),
                          uniform(rng, c.y - 1.2 * R, c.y + 1.2 * R)};
            const bool z3 = region_contains(Region::sector_zone(0, 3), p, m);
            const bool z2 = region_contains(Region::sector_zone(0, 2), p, m);
            const bool z1 = region_contains(Region::sector_zone(0, 1), p, m);
            const bool hd = region_contains(Region::forward_half_disk(0), p, m);
            if (z3) EXPECT_TRUE(z2);
            if (z2) EXPECT_TRUE(z1);
            if (z1) EXPECT_TRUE(hd);
        }
    }
}

TEST(Regions, ChordConsistentRegionsStayInStrip) {
    std::mt19937_64 rng(7006);
    for (int trial = 0; trial < 10; ++trial) {
        const double R = uniform(rng, 50.0, 1000.0);
        const double W = uniform(rng, 1e-3, 1.9) * R;
        const HighwayModel m = HighwayModel::chord(W, R, 3);
        const std::vector<Region> regions = {Region::lens(0), Region::sector_zone(1, 1),
                                             Region::sector_zone(1, 2), Region::sector_zone(1, 3)};
        for (const Region& r : regions) {
            const BoundingBox box = region_bbox(r, m);
            for (int i = 0; i < 2000; ++i) {
                const Point p{uniform(rng, box.x0, box.x1), uniform(rng, box.y0 - 0.1 * W, box.y1 + 0.1 * W)};
                if (region_contains(r, p, m)) {
                    EXPECT_GE(p.y, -1e-9 * W);
                    EXPECT_LE(p.y, W * (1.0 + 1e-9));
                }
            }
        }
    }
}

TEST(Regions, MonteCarloAreaConsistency) {
    const HighwayModel m = HighwayModel::chord(150.0, 250.0, 3);
    const std::vector<Region> regions = {Region::lens(0),           Region::sector_zone(0, 1),
                                         Region::sector_zone(0, 2), Region::sector_zone(0, 3),
                                         Region::cell_rect(1),      Region::strip(),
                                         Region::forward_half_disk(0)};
    std::uint64_t seed = 900;
    for (const Region& r : regions) {
        double se = 0.0;
        const double mc = rejection_area(r, m, 1000000, seed++, &se);
        EXPECT_NEAR(mc, region_area(r, m), 4.0 * se + 1e-12) << r.name();
    }
}

}  // namespace
