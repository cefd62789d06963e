// Connection-line machinery: anchor points on device symbols, endpoint
// snapping, orthogonal normalization of polylines and automatic junction
// dots where a line ends on another line.
#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "schemeforge/geometry.hpp"
#include "schemeforge/model.hpp"

namespace schemeforge {

struct NamedAnchor {
    std::string name;
    Point point;

    bool operator==(const NamedAnchor&) const = default;
};

// Quadrant points of the instrument circle plus its center. Names sort
// lexicographically; snap tie-breaking relies on that order.
inline std::vector<NamedAnchor> anchor_points(const Instrument& inst) {
    const double r = layout::kInstrumentDiameterMm / 2;
    const Point c = inst.attach;
    return {
        {"center", c},
        {"e", {c.x + r, c.y}},
        {"n", {c.x, c.y + r}},
        {"s", {c.x, c.y - r}},
        {"w", {c.x - r, c.y}},
    };
}

// Stem base (the attach point itself) plus the circle top and sides.
inline std::vector<NamedAnchor> anchor_points(const Actuator& act) {
    const double r = layout::kActuatorDiameterMm / 2;
    const Point c = act.attach;
    const double cy = c.y + layout::kActuatorStemMm + r;
    return {
        {"e", {c.x + r, cy}},
        {"n", {c.x, cy + r}},
        {"s", c},
        {"w", {c.x - r, cy}},
    };
}

namespace detail {

inline double dist2(const Point& a, const Point& b) {
    const double dx = a.x - b.x;
    const double dy = a.y - b.y;
    return dx * dx + dy * dy;
}

struct AnchorHit {
    double d2 = 0;
    std::string element_id;
    std::string name;
    Point point;
};

template <class Fn>
inline void for_each_anchor(const Scheme& scheme, Fn&& fn) {
    for (const auto& inst : scheme.instruments) {
        for (const auto& a : anchor_points(inst)) fn(inst.id, a);
    }
    for (const auto& act : scheme.actuators) {
        for (const auto& a : anchor_points(act)) fn(act.id, a);
    }
}

}  // namespace detail

// Moves p onto the nearest device anchor when one lies within the snap
// radius; ties break by (element id, anchor name).
inline Point snap(const Point& p, const Scheme& scheme, double radius = layout::kSnapRadiusMm) {
    const double limit2 = radius * radius;
    bool found = false;
    detail::AnchorHit best;
    detail::for_each_anchor(scheme, [&](const std::string& id, const NamedAnchor& a) {
        const double d2 = detail::dist2(p, a.point);
        if (d2 > limit2) return;
        const bool better = !found || d2 < best.d2
                            || (d2 == best.d2
                                && std::make_pair(std::cref(id), std::cref(a.name))
                                       < std::make_pair(std::cref(best.element_id), std::cref(best.name)));
        if (better) {
            best = {d2, id, a.name, a.point};
            found = true;
        }
    });
    return found ? best.point : p;
}

// Normalizes a polyline to horizontal/vertical segments. Diagonal steps get
// a single horizontal-first bend at (x2, y1). Consecutive duplicates drop;
// a vertex lying between its axis-collinear neighbours merges away.
inline std::vector<Point> orthogonalize(const std::vector<Point>& waypoints) {
    if (waypoints.size() < 2) throw std::invalid_argument("orthogonalize needs at least two points");

    std::vector<Point> pts;
    pts.reserve(waypoints.size() * 2);
    for (const auto& p : waypoints) {
        if (!pts.empty() && pts.back() == p) continue;
        if (!pts.empty()) {
            const Point& prev = pts.back();
            if (prev.x != p.x && prev.y != p.y) pts.push_back({p.x, prev.y});
        }
        pts.push_back(p);
    }
    if (pts.size() < 2) throw std::invalid_argument("orthogonalize needs two distinct points");

    auto between = [](double v, double a, double b) {
        return (a <= v && v <= b) || (b <= v && v <= a);
    };
    std::vector<Point> out;
    out.reserve(pts.size());
    for (const auto& p : pts) {
        while (out.size() >= 2) {
            const Point& a = out[out.size() - 2];
            const Point& b = out.back();
            const bool merge_h = a.y == b.y && b.y == p.y && between(b.x, a.x, p.x);
            const bool merge_v = a.x == b.x && b.x == p.x && between(b.y, a.y, p.y);
            if (merge_h || merge_v) out.pop_back();
            else break;
        }
        out.push_back(p);
    }
    return out;
}

namespace detail {

// Squared distance from p to an axis-parallel segment [a, b].
inline double dist2_point_segment_axis(const Point& p, const Point& a, const Point& b) {
    const double lox = std::min(a.x, b.x), hix = std::max(a.x, b.x);
    const double loy = std::min(a.y, b.y), hiy = std::max(a.y, b.y);
    const double dx = p.x < lox ? lox - p.x : (p.x > hix ? p.x - hix : 0.0);
    const double dy = p.y < loy ? loy - p.y : (p.y > hiy ? p.y - hiy : 0.0);
    return dx * dx + dy * dy;
}

inline bool segment_axis_parallel(const Point& a, const Point& b, double eps) {
    return std::abs(a.x - b.x) < eps || std::abs(a.y - b.y) < eps;
}

}  // namespace detail

// Junction dots appear where a polyline endpoint lands on another polyline
// (segment interior or endpoint, within the coincidence tolerance), and
// where endpoints of three or more polylines coincide. A crossing with no
// endpoint at the intersection is not a junction. Result sorted by (x, y).
inline std::vector<Point> junctions(const std::vector<std::vector<Point>>& polylines,
                                    double eps = layout::kCoincidenceEpsMm) {
    for (const auto& poly : polylines) {
        for (std::size_t i = 1; i < poly.size(); ++i) {
            if (!detail::segment_axis_parallel(poly[i - 1], poly[i], eps)) {
                throw std::invalid_argument("junctions requires orthogonal polylines");
            }
        }
    }

    const double eps2 = eps * eps;
    std::vector<Point> result;

    auto endpoint_hits = [&](const Point& p, std::size_t own) {
        for (std::size_t j = 0; j < polylines.size(); ++j) {
            if (j == own) continue;
            const auto& poly = polylines[j];
            for (std::size_t k = 1; k < poly.size(); ++k) {
                if (detail::dist2_point_segment_axis(p, poly[k - 1], poly[k]) <= eps2) return true;
            }
        }
        return false;
    };

    for (std::size_t i = 0; i < polylines.size(); ++i) {
        const auto& poly = polylines[i];
        if (poly.size() < 2) continue;
        for (const Point& p : {poly.front(), poly.back()}) {
            if (endpoint_hits(p, i)) result.push_back(p);
        }
    }

    // Coincident endpoints of >= 3 polylines are already junctions through
    // the pairwise endpoint-on-segment rule; nothing extra to collect.

    std::sort(result.begin(), result.end(), [](const Point& a, const Point& b) {
        return a.x != b.x ? a.x < b.x : a.y < b.y;
    });
    result.erase(std::unique(result.begin(), result.end()), result.end());
    return result;
}

namespace detail {

inline Point resolve_anchor_or_throw(const Scheme& scheme, const AnchorRef& ref) {
    for (const auto& inst : scheme.instruments) {
        if (inst.id != ref.element_id) continue;
        for (const auto& a : anchor_points(inst)) {
            if (a.name == ref.anchor) return a.point;
        }
        throw std::invalid_argument("anchor '" + ref.anchor + "' does not exist on '" + ref.element_id + "'");
    }
    for (const auto& act : scheme.actuators) {
        if (act.id != ref.element_id) continue;
        for (const auto& a : anchor_points(act)) {
            if (a.name == ref.anchor) return a.point;
        }
        throw std::invalid_argument("anchor '" + ref.anchor + "' does not exist on '" + ref.element_id + "'");
    }
    throw std::invalid_argument("anchor reference names unknown element '" + ref.element_id + "'");
}

}  // namespace detail

// Resolves a line's waypoints to raw coordinates: symbolic endpoints
// exactly, raw endpoints snapped, interior waypoints untouched.
inline std::vector<Point> resolve_line(const ConnectionLine& line, const Scheme& scheme,
                                       double snap_radius = layout::kSnapRadiusMm) {
    std::vector<Point> pts;
    pts.reserve(line.waypoints.size());
    for (std::size_t i = 0; i < line.waypoints.size(); ++i) {
        const bool endpoint = i == 0 || i + 1 == line.waypoints.size();
        if (const auto* ref = std::get_if<AnchorRef>(&line.waypoints[i])) {
            pts.push_back(detail::resolve_anchor_or_throw(scheme, *ref));
        } else {
            const Point p = std::get<Point>(line.waypoints[i]);
            pts.push_back(endpoint ? snap(p, scheme, snap_radius) : p);
        }
    }
    return pts;
}

// Emits every connection line as orthogonal segments plus the junction
// dots, in one geometry set with the reserved routing id. A line whose
// waypoints collapse to a single point after snapping contributes nothing.
inline GeometrySet route_all(const Scheme& scheme) {
    GeometrySet set;
    set.source_id = kRoutingSetId;

    std::vector<std::vector<Point>> normalized;
    std::vector<LineStyle> styles;
    for (const auto& line : scheme.lines) {
        std::vector<Point> pts = resolve_line(line, scheme);
        std::vector<Point> distinct;
        for (const auto& p : pts) {
            if (distinct.empty() || !(distinct.back() == p)) distinct.push_back(p);
        }
        if (distinct.size() < 2) continue;
        normalized.push_back(orthogonalize(distinct));
        styles.push_back(line.style);
    }

    for (std::size_t i = 0; i < normalized.size(); ++i) {
        const auto& poly = normalized[i];
        for (std::size_t k = 1; k < poly.size(); ++k) {
            set.primitives.push_back(SegmentPrim{poly[k - 1], poly[k], styles[i]});
        }
    }
    for (const Point& p : junctions(normalized)) {
        set.primitives.push_back(DotPrim{p, layout::kJunctionDotDiameterMm});
    }
    return set;
}

}  // namespace schemeforge
