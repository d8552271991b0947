#pragma once

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "affine.hpp"
#include "rational.hpp"

namespace afftop {

inline Rational cross(const PointQ& o, const PointQ& a, const PointQ& b) {
    return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

// Convex polygon with exact rational vertices in counterclockwise order,
// normalized: no repeated vertices, no collinear triples. Degenerate cases
// are allowed and carry 1 vertex (point) or 2 (segment); empty has none.
struct ConvexPolygon {
    std::vector<PointQ> verts;

    bool empty() const { return verts.empty(); }
    bool degenerate() const { return verts.size() < 3; }

    // Twice the enclosed area (shoelace); zero iff degenerate.
    Rational area2() const {
        Rational s(0);
        for (std::size_t i = 0; i < verts.size(); ++i) {
            const PointQ& a = verts[i];
            const PointQ& b = verts[(i + 1) % verts.size()];
            s += a.x * b.y - a.y * b.x;
        }
        return s;
    }

    void bbox(Rational& xmin, Rational& xmax, Rational& ymin, Rational& ymax) const {
        if (verts.empty()) throw std::logic_error("bbox of empty polygon");
        xmin = xmax = verts[0].x;
        ymin = ymax = verts[0].y;
        for (const PointQ& v : verts) {
            xmin = rat_min(xmin, v.x);
            xmax = rat_max(xmax, v.x);
            ymin = rat_min(ymin, v.y);
            ymax = rat_max(ymax, v.y);
        }
    }
};

namespace detail {

inline bool points_equal(const PointQ& a, const PointQ& b) { return a.x == b.x && a.y == b.y; }

// Removes duplicates and collinear middle vertices from a CCW-ordered ring;
// collapses fully collinear input to its extreme points.
inline ConvexPolygon normalize_ring(std::vector<PointQ> ring) {
    // drop consecutive duplicates (circularly)
    std::vector<PointQ> uniq;
    for (const PointQ& p : ring)
        if (uniq.empty() || !points_equal(uniq.back(), p)) uniq.push_back(p);
    while (uniq.size() > 1 && points_equal(uniq.front(), uniq.back())) uniq.pop_back();

    if (uniq.size() <= 2) return {uniq};

    // fully collinear ring -> keep the two extreme points (or one)
    bool all_collinear = true;
    for (std::size_t i = 2; i < uniq.size() && all_collinear; ++i)
        if (cross(uniq[0], uniq[1], uniq[i]) != 0) all_collinear = false;
    if (all_collinear) {
        auto cmp = [](const PointQ& a, const PointQ& b) {
            return a.x < b.x || (a.x == b.x && a.y < b.y);
        };
        PointQ lo = uniq[0], hi = uniq[0];
        for (const PointQ& p : uniq) {
            if (cmp(p, lo)) lo = p;
            if (cmp(hi, p)) hi = p;
        }
        if (points_equal(lo, hi)) return {{lo}};
        return {{lo, hi}};
    }

    // drop collinear middles until stable
    bool changed = true;
    while (changed && uniq.size() > 2) {
        changed = false;
        std::vector<PointQ> next;
        const std::size_t n = uniq.size();
        for (std::size_t i = 0; i < n; ++i) {
            const PointQ& prev = uniq[(i + n - 1) % n];
            const PointQ& cur = uniq[i];
            const PointQ& nxt = uniq[(i + 1) % n];
            if (cross(prev, cur, nxt) == 0) {
                changed = true;
                continue;
            }
            next.push_back(cur);
        }
        uniq = std::move(next);
    }
    return {uniq};
}

}  // namespace detail

// Builds a normalized CCW polygon from a convex ring given in either
// orientation.
inline ConvexPolygon make_polygon(std::vector<PointQ> ring) {
    ConvexPolygon p = detail::normalize_ring(std::move(ring));
    if (p.area2() < 0) std::reverse(p.verts.begin(), p.verts.end());
    // convexity sanity: every turn must be a strict left turn
    const std::size_t n = p.verts.size();
    if (n >= 3) {
        for (std::size_t i = 0; i < n; ++i)
            if (cross(p.verts[i], p.verts[(i + 1) % n], p.verts[(i + 2) % n]) <= 0)
                throw std::invalid_argument("ring is not convex");
    }
    return p;
}

inline ConvexPolygon unit_square() {
    return make_polygon({{rat(0), rat(0)}, {rat(1), rat(0)}, {rat(1), rat(1)}, {rat(0), rat(1)}});
}

inline ConvexPolygon rect_polygon(const Rational& x0, const Rational& x1, const Rational& y0,
                                  const Rational& y1) {
    return make_polygon({{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}});
}

// Intersection with the closed half-plane a*x + b*y <= c (exact clip).
inline ConvexPolygon clip_halfplane(const ConvexPolygon& poly, const Rational& a,
                                    const Rational& b, const Rational& c) {
    if (poly.empty()) return poly;
    auto side = [&](const PointQ& p) -> Rational { return a * p.x + b * p.y - c; };

    if (poly.verts.size() == 1)
        return side(poly.verts[0]) <= 0 ? poly : ConvexPolygon{};

    std::vector<PointQ> out;
    const std::size_t n = poly.verts.size();
    // For a segment, walking i -> i+1 twice would duplicate the crossing;
    // handle it as a single edge.
    const std::size_t edges = (n == 2) ? 1 : n;
    for (std::size_t i = 0; i < edges; ++i) {
        const PointQ& cur = poly.verts[i];
        const PointQ& nxt = poly.verts[(i + 1) % n];
        const Rational s_cur = side(cur);
        const Rational s_nxt = side(nxt);
        if (s_cur <= 0) out.push_back(cur);
        if ((s_cur < 0 && s_nxt > 0) || (s_cur > 0 && s_nxt < 0)) {
            const Rational t = s_cur / (s_cur - s_nxt);
            out.push_back({cur.x + t * (nxt.x - cur.x), cur.y + t * (nxt.y - cur.y)});
        }
    }
    if (n == 2) {
        const Rational s_last = side(poly.verts[1]);
        if (s_last <= 0) out.push_back(poly.verts[1]);
    }
    return detail::normalize_ring(std::move(out));
}

inline ConvexPolygon apply_map(const DiagMap& m, const ConvexPolygon& poly) {
    ConvexPolygon out;
    out.verts.reserve(poly.verts.size());
    for (const PointQ& v : poly.verts) out.verts.push_back(m(v));
    // positive diagonal scales preserve orientation and convexity
    return out;
}

// Closed containment test; true on the boundary as well.
inline bool contains_point(const ConvexPolygon& poly, const PointQ& p) {
    const std::size_t n = poly.verts.size();
    if (n == 0) return false;
    if (n == 1) return detail::points_equal(poly.verts[0], p);
    if (n == 2) {
        const PointQ& a = poly.verts[0];
        const PointQ& b = poly.verts[1];
        if (cross(a, b, p) != 0) return false;
        return rat_min(a.x, b.x) <= p.x && p.x <= rat_max(a.x, b.x) &&
               rat_min(a.y, b.y) <= p.y && p.y <= rat_max(a.y, b.y);
    }
    for (std::size_t i = 0; i < n; ++i)
        if (cross(poly.verts[i], poly.verts[(i + 1) % n], p) < 0) return false;
    return true;
}

// A inside B (closed); for convex polygons vertex containment suffices.
inline bool contained_in(const ConvexPolygon& a, const ConvexPolygon& b) {
    for (const PointQ& v : a.verts)
        if (!contains_point(b, v)) return false;
    return !a.empty();
}

namespace detail {

inline void project(const ConvexPolygon& poly, const Rational& nx, const Rational& ny,
                    Rational& lo, Rational& hi) {
    lo = hi = nx * poly.verts[0].x + ny * poly.verts[0].y;
    for (const PointQ& v : poly.verts) {
        const Rational d = nx * v.x + ny * v.y;
        lo = rat_min(lo, d);
        hi = rat_max(hi, d);
    }
}

inline bool axis_separates(const ConvexPolygon& a, const ConvexPolygon& b, const Rational& nx,
                           const Rational& ny) {
    Rational alo, ahi, blo, bhi;
    project(a, nx, ny, alo, ahi);
    project(b, nx, ny, blo, bhi);
    // touching projections are enough: interiors cannot overlap then
    return ahi <= blo || bhi <= alo;
}

}  // namespace detail

// True when the interiors are disjoint (touching boundaries allowed).
// Degenerate polygons have empty interior, so they are disjoint from
// everything. Separating-axis test over both polygons' edge normals.
inline bool interiors_disjoint(const ConvexPolygon& a, const ConvexPolygon& b) {
    if (a.degenerate() || b.degenerate()) return true;
    for (const ConvexPolygon* p : {&a, &b}) {
        const std::size_t n = p->verts.size();
        for (std::size_t i = 0; i < n; ++i) {
            const PointQ& u = p->verts[i];
            const PointQ& v = p->verts[(i + 1) % n];
            if (detail::axis_separates(a, b, u.y - v.y, v.x - u.x)) return true;
        }
    }
    return false;
}

// Equality up to cyclic rotation of the vertex ring.
inline bool same_polygon(const ConvexPolygon& a, const ConvexPolygon& b) {
    if (a.verts.size() != b.verts.size()) return false;
    const std::size_t n = a.verts.size();
    if (n == 0) return true;
    for (std::size_t shift = 0; shift < n; ++shift) {
        bool ok = true;
        for (std::size_t i = 0; i < n && ok; ++i)
            ok = detail::points_equal(a.verts[i], b.verts[(i + shift) % n]);
        if (ok) return true;
    }
    return false;
}

}  // namespace afftop
