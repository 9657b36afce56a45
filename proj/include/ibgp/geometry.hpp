#pragma once

// Planar geometry of a cell-partitioned highway strip: covering disks,
// lens overlaps between successive cells, radian sector forwarding zones,
// and point-membership predicates for all of them.

#include <cmath>
#include <stdexcept>
#include <string>

namespace ibgp {

inline constexpr double kPi = 3.141592653589793238462643383279502884;

struct Point {
    double x = 0.0;
    double y = 0.0;
};

inline double distance(const Point& a, const Point& b) {
    return std::hypot(a.x - b.x, a.y - b.y);
}

inline double distance_sq(const Point& a, const Point& b) {
    const double dx = a.x - b.x;
    const double dy = a.y - b.y;
    return dx * dx + dy * dy;
}

enum class GeometryMode {
    chord_consistent,  // L = sqrt(4R^2 - W^2): covering circle passes through cell corners
    paper_literal,     // W, L, R independent inputs
};

/// Cell length forced by the covering-circle chord: L = sqrt(4R^2 - W^2).
inline double cell_length_from_radius(double R, double W) {
    if (W < 0.0 || !(W < 2.0 * R)) {
        throw std::domain_error("cell_length_from_radius: degenerate chord (requires 0 <= W < 2R)");
    }
    return std::sqrt(4.0 * R * R - W * W);
}

/// Apex angle of the lens half: alpha = 2*atan(W/L), in [0, pi).
inline double apex_angle(double W, double L) {
    if (!(L > 0.0)) throw std::domain_error("apex_angle: cell length must be > 0");
    if (W < 0.0) throw std::domain_error("apex_angle: width must be >= 0");
    return 2.0 * std::atan(W / L);
}

/// Area of the isoceles triangle with sides R, R and base W: (W/4)*sqrt(4R^2 - W^2).
inline double triangle_area(double R, double W) {
    if (W < 0.0 || W > 2.0 * R) {
        throw std::domain_error("triangle_area: requires 0 <= W <= 2R");
    }
    return (W / 4.0) * std::sqrt(4.0 * R * R - W * W);
}

/// Circular sector area, alpha in radians: (alpha/2)*R^2.
inline double sector_area(double R, double alpha) {
    if (!(R > 0.0)) throw std::domain_error("sector_area: radius must be > 0");
    if (!(alpha >= 0.0 && alpha <= 2.0 * kPi)) {
        throw std::domain_error("sector_area: angle must lie in [0, 2*pi]");
    }
    return (alpha / 2.0) * R * R;
}

/// Lens area in the paper's closed form, 2R^2*atan(W/L) - (W/2)*sqrt(4R^2 - W^2),
/// evaluated as twice the sector-minus-triangle decomposition it comes from.
/// Only describes a real planar region when L = sqrt(4R^2 - W^2).
inline double lens_area_paper(double R, double W, double L) {
    if (!(R > 0.0)) throw std::domain_error("lens_area_paper: radius must be > 0");
    if (!(L > 0.0)) throw std::domain_error("lens_area_paper: cell length must be > 0");
    if (W < 0.0 || W >= 2.0 * R) {
        throw std::domain_error("lens_area_paper: requires 0 <= W < 2R");
    }
    return 2.0 * (sector_area(R, apex_angle(W, L)) - triangle_area(R, W));
}

/// Intersection area of two radius-R disks with centers d apart:
/// 2R^2*acos(d/2R) - (d/2)*sqrt(4R^2 - d^2), evaluated as R^2*(x - sin x)
/// with x = 2*acos(d/2R), which stays accurate for thin lenses (d near 2R).
/// Returns 0 for disjoint disks (d >= 2R).
inline double lens_area_exact(double R, double d) {
    if (!(R > 0.0)) throw std::domain_error("lens_area_exact: radius must be > 0");
    if (d < 0.0) throw std::domain_error("lens_area_exact: distance must be >= 0");
    if (d >= 2.0 * R) return 0.0;
    const double half = d / 2.0;
    // (R - half)*(R + half) = R^2 - d^2/4 without cancellation.
    const double height = std::sqrt((R - half) * (R + half));
    const double x = 2.0 * std::atan2(height, half);
    if (x > 0.1) return R * R * (x - std::sin(x));
    const double x2 = x * x;
    return R * R * (x * x2 / 6.0) * (1.0 - x2 / 20.0 * (1.0 - x2 / 42.0 * (1.0 - x2 / 72.0)));
}

struct HighwayModel {
    double width = 0.0;        // W
    double cell_length = 0.0;  // L
    double radius = 0.0;       // R
    int cell_count = 0;        // n
    GeometryMode mode = GeometryMode::chord_consistent;

    static HighwayModel chord(double W, double R, int n) {
        HighwayModel m;
        m.width = W;
        m.radius = R;
        m.cell_length = cell_length_from_radius(R, W);
        m.cell_count = n;
        m.mode = GeometryMode::chord_consistent;
        m.validate();
        return m;
    }

    static HighwayModel literal(double W, double L, double R, int n) {
        HighwayModel m;
        m.width = W;
        m.cell_length = L;
        m.radius = R;
        m.cell_count = n;
        m.mode = GeometryMode::paper_literal;
        m.validate();
        return m;
    }

    void validate() const {
        if (!(width > 0.0)) throw std::domain_error("HighwayModel: width must be > 0");
        if (!(cell_length > 0.0)) throw std::domain_error("HighwayModel: cell length must be > 0");
        if (!(radius > width / 2.0)) throw std::domain_error("HighwayModel: requires R > W/2");
        if (cell_count < 2) throw std::domain_error("HighwayModel: requires at least 2 cells");
        if (mode == GeometryMode::chord_consistent) {
            const double chord = cell_length_from_radius(radius, width);
            if (std::fabs(cell_length - chord) > 1e-9 * radius) {
                throw std::domain_error("HighwayModel: cell length inconsistent with chord relation");
            }
        }
    }

    Point cell_center(int i) const { return {(i + 0.5) * cell_length, width / 2.0}; }

    double strip_length() const { return cell_count * cell_length; }
    double strip_area() const { return strip_length() * width; }

    // Cell index owning x; boundary points go to the right cell, clamped to [0, n-1].
    int cell_of(double x) const {
        const int i = static_cast<int>(std::floor(x / cell_length));
        if (i < 0) return 0;
        if (i >= cell_count) return cell_count - 1;
        return i;
    }
};

/// Half-angle of forwarding zone k: atan(W / (2^(k-1) * L)), k in {1,2,3}.
inline double zone_half_angle(double W, double L, int k) {
    if (k < 1 || k > 3) throw std::domain_error("zone_half_angle: zone index must be 1, 2 or 3");
    if (!(L > 0.0)) throw std::domain_error("zone_half_angle: cell length must be > 0");
    if (W < 0.0) throw std::domain_error("zone_half_angle: width must be >= 0");
    return std::atan(W / (std::pow(2.0, k - 1) * L));
}

/// Area of forwarding zone k: atan(W / (2^(k-1) * L)) * R^2. Strictly decreasing in k.
inline double zone_area(const HighwayModel& m, int k) {
    return zone_half_angle(m.width, m.cell_length, k) * m.radius * m.radius;
}

// A sampleable, area-measurable subset of the plane, tied to a HighwayModel.
struct Region {
    enum class Kind { lens, sector_zone, cell_rect, strip, forward_half_disk };

    Kind kind = Kind::strip;
    int cell = 0;  // anchor cell index (unused for strip)
    int zone = 0;  // k in {1,2,3} for sector_zone

    static Region lens(int i) { return {Kind::lens, i, 0}; }
    static Region sector_zone(int i, int k) { return {Kind::sector_zone, i, k}; }
    static Region cell_rect(int i) { return {Kind::cell_rect, i, 0}; }
    static Region strip() { return {Kind::strip, 0, 0}; }
    static Region forward_half_disk(int i) { return {Kind::forward_half_disk, i, 0}; }

    std::string name() const {
        switch (kind) {
            case Kind::lens: return "lens";
            case Kind::sector_zone: return "zone" + std::to_string(zone);
            case Kind::cell_rect: return "cell";
            case Kind::strip: return "strip";
            case Kind::forward_half_disk: return "half_disk";
        }
        return "?";
    }
};

namespace detail {

// Regions are closed sets; squared-distance and angular comparisons get a
// relative slack of ~1e-12 so points constructed to lie exactly on a
// boundary (e.g. cell corners at distance R) stay inside despite rounding.
inline constexpr double kBoundaryTol = 1e-12;

inline void check_region_index(const Region& r, const HighwayModel& m) {
    const int n = m.cell_count;
    switch (r.kind) {
        case Region::Kind::lens:
            if (r.cell < 0 || r.cell >= n - 1) throw std::domain_error("Region: lens index out of range");
            break;
        case Region::Kind::sector_zone:
            if (r.cell < 0 || r.cell >= n) throw std::domain_error("Region: cell index out of range");
            if (r.zone < 1 || r.zone > 3) throw std::domain_error("Region: zone index must be 1, 2 or 3");
            break;
        case Region::Kind::cell_rect:
        case Region::Kind::forward_half_disk:
            if (r.cell < 0 || r.cell >= n) throw std::domain_error("Region: cell index out of range");
            break;
        case Region::Kind::strip:
            break;
    }
}

inline bool in_disk(const Point& p, const Point& c, double R) {
    return distance_sq(p, c) <= R * R * (1.0 + kBoundaryTol);
}

}  // namespace detail

inline bool region_contains(const Region& r, const Point& p, const HighwayModel& m) {
    detail::check_region_index(r, m);
    const double R = m.radius;
    switch (r.kind) {
        case Region::Kind::lens:
            return detail::in_disk(p, m.cell_center(r.cell), R) &&
                   detail::in_disk(p, m.cell_center(r.cell + 1), R);
        case Region::Kind::sector_zone: {
            const Point c = m.cell_center(r.cell);
            if (!detail::in_disk(p, c, R)) return false;
            const double dx = p.x - c.x;
            const double dy = p.y - c.y;
            const double rr = std::sqrt(dx * dx + dy * dy);
            if (rr == 0.0) return true;
            // angle(v, +x) <= half  <=>  dx >= |v|*cos(half)  (half < pi/2)
            const double cos_half = std::cos(zone_half_angle(m.width, m.cell_length, r.zone));
            return dx >= rr * cos_half - R * detail::kBoundaryTol;
        }
        case Region::Kind::cell_rect:
            return p.x >= r.cell * m.cell_length && p.x <= (r.cell + 1) * m.cell_length &&
                   p.y >= 0.0 && p.y <= m.width;
        case Region::Kind::strip:
            return p.x >= 0.0 && p.x <= m.strip_length() && p.y >= 0.0 && p.y <= m.width;
        case Region::Kind::forward_half_disk: {
            const Point c = m.cell_center(r.cell);
            return detail::in_disk(p, c, R) && p.x >= c.x - R * detail::kBoundaryTol;
        }
    }
    return false;
}

inline double region_area(const Region& r, const HighwayModel& m) {
    detail::check_region_index(r, m);
    switch (r.kind) {
        case Region::Kind::lens:
            return lens_area_exact(m.radius, m.cell_length);
        case Region::Kind::sector_zone:
            return zone_area(m, r.zone);
        case Region::Kind::cell_rect:
            return m.cell_length * m.width;
        case Region::Kind::strip:
            return m.strip_area();
        case Region::Kind::forward_half_disk:
            return kPi * m.radius * m.radius / 2.0;
    }
    return 0.0;
}

struct BoundingBox {
    double x0 = 0.0, y0 = 0.0, x1 = 0.0, y1 = 0.0;
    double width() const { return x1 - x0; }
    double height() const { return y1 - y0; }
    double area() const { return width() > 0.0 && height() > 0.0 ? width() * height() : 0.0; }
};

/// Tight axis-aligned box around a region, for rejection sampling.
inline BoundingBox region_bbox(const Region& r, const HighwayModel& m) {
    detail::check_region_index(r, m);
    const double R = m.radius;
    switch (r.kind) {
        case Region::Kind::lens: {
            const Point a = m.cell_center(r.cell);
            const Point b = m.cell_center(r.cell + 1);
            const double d = m.cell_length;
            if (d >= 2.0 * R) return {};
            const double half_chord = std::sqrt(std::fmax(0.0, R * R - (d / 2.0) * (d / 2.0)));
            return {b.x - R, a.y - half_chord, a.x + R, a.y + half_chord};
        }
        case Region::Kind::sector_zone: {
            const Point c = m.cell_center(r.cell);
            const double half = zone_half_angle(m.width, m.cell_length, r.zone);
            const double dy = R * std::sin(half);
            return {c.x, c.y - dy, c.x + R, c.y + dy};
        }
        case Region::Kind::cell_rect:
            return {r.cell * m.cell_length, 0.0, (r.cell + 1) * m.cell_length, m.width};
        case Region::Kind::strip:
            return {0.0, 0.0, m.strip_length(), m.width};
        case Region::Kind::forward_half_disk: {
            const Point c = m.cell_center(r.cell);
            return {c.x, c.y - R, c.x + R, c.y + R};
        }
    }
    return {};
}

}  // namespace ibgp
