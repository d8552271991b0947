#pragma once
// Monotone piecewise-linear curves over x-intervals, exact upper envelopes
// with jump diagnostics, the top-boundary step operator R, and controlled
// simplification for long iterations.

#include "afftop/affine.hpp"
#include "afftop/params.hpp"
#include "afftop/rational.hpp"

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace afftop {

// Graph of a continuous piecewise-linear function: vertex x strictly
// increasing, vertex y nondecreasing. Evaluation anywhere in the x-domain is
// exact linear interpolation.
struct MonotoneCurve {
    std::vector<PointQ> verts;
    bool strictly_increasing = false;  // y strictly increases across every segment

    MonotoneCurve() = default;
    explicit MonotoneCurve(std::vector<PointQ> vs) : verts(std::move(vs)) {
        if (verts.size() < 2) throw std::invalid_argument("curve needs at least 2 vertices");
        strictly_increasing = true;
        for (std::size_t i = 1; i < verts.size(); ++i) {
            if (!(verts[i - 1].x < verts[i].x))
                throw std::invalid_argument("curve x-coordinates must strictly increase");
            if (verts[i].y < verts[i - 1].y)
                throw std::invalid_argument("curve y-coordinates must not decrease");
            if (!(verts[i - 1].y < verts[i].y)) strictly_increasing = false;
        }
    }

    const Rational& x_lo() const { return verts.front().x; }
    const Rational& x_hi() const { return verts.back().x; }

    Rational eval(const Rational& x) const {
        if (x < x_lo() || x > x_hi()) throw std::domain_error("eval outside curve domain");
        // binary search for the segment whose x-range contains x
        std::size_t lo = 0, hi = verts.size() - 1;
        while (hi - lo > 1) {
            std::size_t mid = lo + (hi - lo) / 2;
            if (verts[mid].x <= x)
                lo = mid;
            else
                hi = mid;
        }
        if (x == verts[lo].x) return verts[lo].y;
        if (x == verts[hi].x) return verts[hi].y;
        Rational t = (x - verts[lo].x) / (verts[hi].x - verts[lo].x);
        return verts[lo].y + t * (verts[hi].y - verts[lo].y);
    }
};

// Open polyline with x nondecreasing; vertical segments are allowed, so a
// chain can represent the top boundary of a union even across jump
// discontinuities of the underlying function.
struct Chain {
    std::vector<PointQ> pts;
};

namespace detail {

// Drop consecutive duplicates and interior points of collinear runs.
inline std::vector<PointQ> compress_chain(const std::vector<PointQ>& in) {
    std::vector<PointQ> out;
    out.reserve(in.size());
    for (const PointQ& p : in) {
        if (!out.empty() && out.back().x == p.x && out.back().y == p.y) continue;
        while (out.size() >= 2) {
            const PointQ& a = out[out.size() - 2];
            const PointQ& b = out.back();
            Rational cr = (b.x - a.x) * (p.y - a.y) - (b.y - a.y) * (p.x - a.x);
            const bool between = rat_min(a.x, p.x) <= b.x && b.x <= rat_max(a.x, p.x) &&
                                 rat_min(a.y, p.y) <= b.y && b.y <= rat_max(a.y, p.y);
            if (cr == 0 && between)
                out.pop_back();
            else
                break;
        }
        out.push_back(p);
    }
    return out;
}

// Sequential evaluator for ascending query positions: amortized O(1) per
// query across a whole sweep.
class Walker {
  public:
    explicit Walker(const std::vector<PointQ>& verts) : v_(verts) {}
    Rational at(const Rational& x) {
        while (seg_ + 2 < v_.size() && v_[seg_ + 1].x <= x) ++seg_;
        const PointQ& a = v_[seg_];
        const PointQ& b = v_[seg_ + 1];
        if (x == a.x) return a.y;
        if (x == b.x) return b.y;
        Rational t = (x - a.x) / (b.x - a.x);
        return a.y + t * (b.y - a.y);
    }

  private:
    const std::vector<PointQ>& v_;
    std::size_t seg_ = 0;
};

}  // namespace detail

inline MonotoneCurve apply_map_to_curve(const DiagMap& m, const MonotoneCurve& c) {
    if (!(m.ax > 0) || !(m.dy > 0))
        throw std::invalid_argument("curve map needs positive axis scales");
    std::vector<PointQ> vs;
    vs.reserve(c.verts.size());
    for (const PointQ& p : c.verts) vs.push_back(m(p));
    return MonotoneCurve(std::move(vs));
}

// A jump discontinuity of the pointwise-maximum function at x: the value
// changes from y_from (limit on the side where the vanishing curve ruled)
// to y_to.
struct CurveJump {
    Rational x;
    Rational y_from;
    Rational y_to;
};

// Exact top boundary of the union of two curve graphs. When the union's
// boundary is the graph of a continuous function, `jumps` is empty,
// `monotone` is true, and curve() yields it as a MonotoneCurve. Otherwise
// the boundary is still available as `chain` (vertical segments at jumps)
// together with the structured jump list.
struct EnvelopeResult {
    Chain chain;
    std::vector<CurveJump> jumps;
    bool monotone = true;  // y nondecreasing along the chain

    bool continuous() const { return jumps.empty(); }
    MonotoneCurve curve() const {
        if (!continuous() || !monotone)
            throw std::logic_error("envelope is not a monotone continuous graph");
        return MonotoneCurve(chain.pts);
    }
};

// Pointwise maximum where both curves are defined, the single defined curve
// elsewhere. The union of the two x-domains must be an interval.
inline EnvelopeResult upper_envelope(const MonotoneCurve& c1, const MonotoneCurve& c2) {
    const Rational A = rat_max(c1.x_lo(), c2.x_lo());
    const Rational B = rat_min(c1.x_hi(), c2.x_hi());
    if (A > B) throw std::invalid_argument("curve domains' union is not an interval");

    EnvelopeResult res;
    std::vector<PointQ>& out = res.chain.pts;

    const MonotoneCurve* left = nullptr;   // sole owner of [x_lo_min, A]
    const MonotoneCurve* right = nullptr;  // sole owner of [B, x_hi_max]
    if (c1.x_lo() < A)
        left = &c1;
    else if (c2.x_lo() < A)
        left = &c2;
    if (c1.x_hi() > B)
        right = &c1;
    else if (c2.x_hi() > B)
        right = &c2;

    if (left)
        for (const PointQ& p : left->verts)
            if (p.x < A) out.push_back(p);

    // merged breakpoints of the common part
    std::vector<Rational> xs;
    xs.push_back(A);
    for (const PointQ& p : c1.verts)
        if (p.x > A && p.x < B) xs.push_back(p.x);
    for (const PointQ& p : c2.verts)
        if (p.x > A && p.x < B) xs.push_back(p.x);
    xs.push_back(B);
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());

    detail::Walker w1(c1.verts), w2(c2.verts);
    Rational prev_x = xs.front();
    Rational p1 = w1.at(prev_x), p2 = w2.at(prev_x);

    // junction with the left-only part: jump up if the common maximum starts
    // above the left curve's arriving value
    {
        Rational start_val = rat_max(p1, p2);
        if (left) {
            Rational arriving = (left == &c1) ? p1 : p2;
            if (arriving < start_val) {
                res.jumps.push_back({prev_x, arriving, start_val});
                out.push_back({prev_x, arriving});
            }
        }
        out.push_back({prev_x, start_val});
    }

    for (std::size_t i = 1; i < xs.size(); ++i) {
        const Rational& x = xs[i];
        Rational n1 = w1.at(x), n2 = w2.at(x);
        Rational da = p1 - p2, db = n1 - n2;
        if ((da > 0 && db < 0) || (da < 0 && db > 0)) {
            // exact crossing inside the slab
            Rational t = da / (da - db);
            Rational cx = prev_x + t * (x - prev_x);
            Rational cy = p1 + t * (n1 - p1);
            out.push_back({cx, cy});
        }
        out.push_back({x, rat_max(n1, n2)});
        prev_x = x;
        p1 = n1;
        p2 = n2;
    }

    // junction with the right-only part: jump down if the common maximum
    // ends above the right curve's departing value
    if (right) {
        Rational ending = rat_max(p1, p2);
        Rational departing = (right == &c1) ? p1 : p2;
        if (departing < ending) {
            res.jumps.push_back({prev_x, ending, departing});
            out.push_back({prev_x, departing});
            res.monotone = false;
        }
        for (const PointQ& p : right->verts)
            if (p.x > B) out.push_back(p);
    }

    res.chain.pts = detail::compress_chain(out);
    return res;
}

// Pointwise minimum of two curves over the same x-domain, with exact
// crossing points inserted. Used to clamp post-processed iterates back
// under the exact envelope they approximate.
inline MonotoneCurve pointwise_min(const MonotoneCurve& c1, const MonotoneCurve& c2) {
    if (!(c1.x_lo() == c2.x_lo()) || !(c1.x_hi() == c2.x_hi()))
        throw std::invalid_argument("pointwise_min needs identical domains");
    std::vector<Rational> xs;
    xs.reserve(c1.verts.size() + c2.verts.size());
    for (const PointQ& p : c1.verts) xs.push_back(p.x);
    for (const PointQ& p : c2.verts) xs.push_back(p.x);
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());

    detail::Walker w1(c1.verts), w2(c2.verts);
    std::vector<PointQ> out;
    Rational prev_x = xs.front();
    Rational p1 = w1.at(prev_x), p2 = w2.at(prev_x);
    out.push_back({prev_x, rat_min(p1, p2)});
    for (std::size_t i = 1; i < xs.size(); ++i) {
        const Rational& x = xs[i];
        Rational n1 = w1.at(x), n2 = w2.at(x);
        Rational da = p1 - p2, db = n1 - n2;
        if ((da > 0 && db < 0) || (da < 0 && db > 0)) {
            Rational t = da / (da - db);
            Rational cx = prev_x + t * (x - prev_x);
            Rational cy = p1 + t * (n1 - p1);
            out.push_back({cx, cy});
        }
        out.push_back({x, rat_min(n1, n2)});
        prev_x = x;
        p1 = n1;
        p2 = n2;
    }
    return MonotoneCurve(detail::compress_chain(out));
}

// One application of the top-boundary operator: boundary of T0(c) ∪ T1(c).
// The input must be a graph over [0,1]; since λ+μ>1 the two images overlap
// in x, so the result spans [0,1] again.
inline EnvelopeResult r_step(const Params& p, const MonotoneCurve& c) {
    if (!(c.x_lo() == 0) || !(c.x_hi() == 1))
        throw std::invalid_argument("r_step input must span [0,1]");
    MonotoneCurve i0 = apply_map_to_curve(map_for_symbol(p, '0'), c);
    MonotoneCurve i1 = apply_map_to_curve(map_for_symbol(p, '1'), c);
    return upper_envelope(i0, i1);
}

// Exact extremes of (a - b) over the intersection of the two x-domains.
// Both inputs are piecewise linear, so the extremes occur at merged
// breakpoints.
struct DiffStats {
    Rational max_diff, arg_max;
    Rational min_diff, arg_min;
};

inline DiffStats vertical_difference(const MonotoneCurve& a, const MonotoneCurve& b) {
    const Rational lo = rat_max(a.x_lo(), b.x_lo());
    const Rational hi = rat_min(a.x_hi(), b.x_hi());
    if (lo > hi) throw std::invalid_argument("curves share no x-domain");
    std::vector<Rational> xs;
    xs.push_back(lo);
    for (const PointQ& p : a.verts)
        if (p.x > lo && p.x < hi) xs.push_back(p.x);
    for (const PointQ& p : b.verts)
        if (p.x > lo && p.x < hi) xs.push_back(p.x);
    xs.push_back(hi);
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());

    detail::Walker wa(a.verts), wb(b.verts);
    DiffStats s;
    bool first = true;
    for (const Rational& x : xs) {
        Rational d = wa.at(x) - wb.at(x);
        if (first || d > s.max_diff) {
            s.max_diff = d;
            s.arg_max = x;
        }
        if (first || d < s.min_diff) {
            s.min_diff = d;
            s.arg_min = x;
        }
        first = false;
    }
    return s;
}

// Greedy vertex-subset simplification constrained to the corridor
// [c - budget, c]: the result never rises above the input and never drops
// more than `budget` below it, keeps the exact endpoints, and stays
// monotone. Only existing vertices are kept, so coordinates do not grow.
inline MonotoneCurve simplify_down(const MonotoneCurve& c, const Rational& budget) {
    if (budget < 0) throw std::invalid_argument("simplification budget must be >= 0");
    const std::vector<PointQ>& v = c.verts;
    if (v.size() <= 2) return c;

    // chord from v[i] to v[j] stays within [y_k - budget, y_k] at every
    // interior vertex k; differences are linear between vertices, so vertex
    // checks suffice
    auto chord_ok = [&](std::size_t i, std::size_t j) -> bool {
        const Rational dx = v[j].x - v[i].x;
        const Rational dy = v[j].y - v[i].y;
        for (std::size_t k = i + 1; k < j; ++k) {
            // chord value at x_k, kept as a single division-free comparison:
            // (y_i*dx + dy*(x_k - x_i)) vs y_k*dx, with dx > 0
            Rational chord_num = v[i].y * dx + dy * (v[k].x - v[i].x);
            Rational yk_dx = v[k].y * dx;
            if (chord_num > yk_dx) return false;                // rose above the curve
            if (yk_dx - chord_num > budget * dx) return false;  // dipped below corridor
        }
        return true;
    };

    std::vector<PointQ> out;
    out.push_back(v.front());
    std::size_t i = 0;
    while (i + 1 < v.size()) {
        // doubling probe, then bisection; every candidate chord is fully
        // validated, so non-monotone validity only costs optimality
        std::size_t best = i + 1;
        std::size_t step = 1;
        while (best + step < v.size() && chord_ok(i, best + step)) {
            best += step;
            step *= 2;
        }
        std::size_t lo = best, hi = std::min(best + step, v.size() - 1);
        while (lo < hi) {
            std::size_t mid = hi - (hi - lo) / 2;
            if (chord_ok(i, mid))
                lo = mid;
            else
                hi = mid - 1;
        }
        out.push_back(v[lo]);
        i = lo;
    }
    return MonotoneCurve(detail::compress_chain(out));
}

// Total bit size of a rational's numerator and denominator.
inline std::size_t rat_bits(const Rational& r) {
    return mpz_sizeinbase(r.get_num().get_mpz_t(), 2) +
           mpz_sizeinbase(r.get_den().get_mpz_t(), 2);
}

// Round down to a multiple of 2^-g.
inline Rational dyadic_floor(const Rational& r, int g) {
    Rational scaled = r;
    scaled <<= g;
    Rational out(rat_floor(scaled));
    out >>= g;
    return out;
}

// Coordinate-size control for long iterations: vertices whose coordinates
// stay small (pure affine images of the original breakpoints — in
// particular everything near the domain ends, where the curve is steep) are
// kept exactly; oversized vertices (descendants of envelope crossings, which
// otherwise compound in bit length every step) are moved onto a dyadic grid
// slightly below the curve. The result is exact-rational, monotone, keeps
// the exact endpoints, and deviates from the input only near replaced
// vertices (gentle mid-curve regions); every consumer re-checks the actual
// curves pointwise, so the replacement is a performance device, not an
// assumed bound.
inline MonotoneCurve snap_coordinates(const MonotoneCurve& c, std::size_t max_bits, int grid) {
    const std::vector<PointQ>& v = c.verts;
    std::vector<PointQ> out;
    out.reserve(v.size());
    out.push_back(v.front());
    for (std::size_t i = 1; i + 1 < v.size(); ++i) {
        if (rat_bits(v[i].x) + rat_bits(v[i].y) <= max_bits) {
            if (v[i].x > out.back().x) {
                PointQ q = v[i];
                if (q.y < out.back().y) q.y = out.back().y;
                out.push_back(q);
            }
            continue;
        }
        Rational sx = dyadic_floor(v[i].x, grid);
        if (!(sx > out.back().x) || !(sx < v.back().x)) continue;
        Rational sy = dyadic_floor(c.eval(sx), grid);
        if (sy < out.back().y) sy = out.back().y;
        out.push_back({sx, sy});
    }
    if (v.back().x > out.back().x)
        out.push_back(v.back());
    else
        out.back() = v.back();
    return MonotoneCurve(detail::compress_chain(out));
}

struct IterateStep {
    int step = 0;              // 1-based
    bool clean = false;        // envelope was a continuous monotone graph
    bool nondecreasing = false;  // new curve >= previous pointwise
    Rational sup_increment;    // max of (new - previous)
    Rational min_increment;    // min of (new - previous); negative => violation
    Rational offending_x;      // where the minimum occurs
    std::size_t vertices = 0;  // vertex count after simplification
};

struct CurveIterate {
    int n = 0;  // steps actually completed
    MonotoneCurve curve;
    std::vector<IterateStep> steps;
    bool all_clean = true;        // no envelope jump/monotonicity failure
    bool all_nondecreasing = true;
    std::string diagnostic;       // first structural problem, empty if none
    Rational simplify_budget;     // per-step corridor budget used
};

struct IterateOptions {
    Rational simplify_budget = dyadic_unit(16);
    bool simplify = true;
    std::size_t snap_max_bits = 256;  // 0 disables coordinate snapping
    int snap_grid = 48;
};

// n-fold r_step with per-step exact pointwise-monotonicity checks. Stops
// early (with a diagnostic) if an envelope fails to be a continuous
// monotone graph, which is the expected signature of parameters outside
// the certified region.
//
// The monotonicity verdict of step k is measured on the raw envelope
// R(c_k) against c_k, before any post-processing — that comparison is the
// genuine content and can fail. The curve actually carried forward is the
// raw envelope after coordinate snapping and corridor simplification,
// re-maxed pointwise with c_k: this keeps c_k <= c_{k+1} <= R(c_k) exactly,
// so the post-processing (a performance device) can never poison later
// steps — R is monotone as an operator, hence R(c_{k+1}) >= R(c_k) >=
// c_{k+1} once R(c_k) >= c_k holds.
inline CurveIterate iterate_top(const Params& p, const MonotoneCurve& start, int n,
                                const IterateOptions& opts = {}) {
    CurveIterate it;
    it.curve = start;
    it.simplify_budget = opts.simplify ? opts.simplify_budget : Rational(0);
    for (int k = 1; k <= n; ++k) {
        EnvelopeResult env = r_step(p, it.curve);
        IterateStep st;
        st.step = k;
        st.clean = env.continuous() && env.monotone;
        if (!st.clean) {
            it.all_clean = false;
            it.diagnostic = "step " + std::to_string(k) + ": envelope not a monotone graph";
            if (!env.jumps.empty())
                it.diagnostic += " (jump at x = " + rat_str(env.jumps.front().x) + ")";
            it.steps.push_back(st);
            return it;
        }
        MonotoneCurve raw = env.curve();
        DiffStats d = vertical_difference(raw, it.curve);
        st.sup_increment = d.max_diff;
        st.min_increment = d.min_diff;
        st.offending_x = d.arg_min;
        st.nondecreasing = d.min_diff >= 0;
        if (!st.nondecreasing && it.all_nondecreasing) {
            it.all_nondecreasing = false;
            if (it.diagnostic.empty())
                it.diagnostic = "step " + std::to_string(k) +
                                ": decrease at x = " + rat_str(d.arg_min);
        }
        MonotoneCurve next = raw;
        if (opts.snap_max_bits > 0 || opts.simplify) {
            if (opts.snap_max_bits > 0)
                next = snap_coordinates(next, opts.snap_max_bits, opts.snap_grid);
            if (opts.simplify) next = simplify_down(next, opts.simplify_budget);
            // clamp into [previous, raw envelope]; identical domains keep
            // both operations clean graphs
            next = upper_envelope(next, it.curve).curve();
            next = pointwise_min(next, raw);
        }
        st.vertices = next.verts.size();
        it.steps.push_back(st);
        it.curve = std::move(next);
        it.n = k;
    }
    return it;
}

}  // namespace afftop
