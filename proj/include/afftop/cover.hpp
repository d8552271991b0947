#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "affine.hpp"
#include "curve.hpp"
#include "limits.hpp"
#include "params.hpp"
#include "rational.hpp"

namespace afftop {

// Occupancy grid over [0,1]^2 with 2^k x 2^k half-open cells
// [c/N,(c+1)/N) x [r/N,(r+1)/N); the last row/column is closed so the grid
// partitions the closed square.  A cover marks every cell that meets the
// union of the iterated rectangle images of [0,1]^2, possibly overcounting
// by boundary-touching cells but never undercounting.
struct BoxCover {
    int k = 0;
    int N = 1;                   // 2^k
    int depth = 0;               // deepest rectangle-iteration level reached
    bool depth_capped = false;   // a rectangle hit the depth cap while still spanning >1 cell
    std::size_t occupied = 0;    // number of marked cells
    std::vector<bool> cells;     // row-major: cells[row * N + col]

    explicit BoxCover(int k_)
        : k(check_scale(k_)), N(1 << k_), cells(static_cast<std::size_t>(1) << (2 * k_), false) {}

    static int check_scale(int k_) {
        if (k_ < 0 || k_ > 15) throw std::invalid_argument("BoxCover: scale k out of range [0,15]");
        return k_;
    }

    bool occupied_at(int row, int col) const {
        return cells[static_cast<std::size_t>(row) * N + col];
    }
    void mark(int row, int col) {
        std::vector<bool>::reference b = cells[static_cast<std::size_t>(row) * N + col];
        if (!b) {
            b = true;
            ++occupied;
        }
    }

    // Topmost occupied row per column, -1 for an empty column (cannot happen
    // for attractor covers: the x-projection of the rectangle union is all
    // of [0,1] whenever lambda + mu > 1).
    std::vector<int> topmost_rows() const {
        std::vector<int> top(static_cast<std::size_t>(N), -1);
        for (int r = N - 1; r >= 0; --r)
            for (int c = 0; c < N; ++c)
                if (top[c] < 0 && occupied_at(r, c)) top[c] = r;
        return top;
    }

    // Cells marked after applying the involution (x,y) |-> (1-y, 1-x), which
    // maps cell (row, col) to (N-1-col, N-1-row).
    std::size_t mirror_mismatch() const {
        std::size_t bad = 0;
        for (int r = 0; r < N; ++r)
            for (int c = 0; c < N; ++c)
                if (occupied_at(r, c) != occupied_at(N - 1 - c, N - 1 - r)) ++bad;
        return bad;
    }
};

namespace detail {

// Index of the half-open cell containing v, clamped to the grid.
inline int cell_of(const Rational& v, int N) {
    Rational scaled = v * N;
    long idx = rat_floor(scaled).get_si();
    if (idx < 0) idx = 0;
    if (idx >= N) idx = N - 1;
    return static_cast<int>(idx);
}

// Largest cell index whose half-open cell meets the closed interval ending
// at v: cell floor(v*N) itself (v lies on its left edge when v*N is an
// integer), clamped to the grid.
inline int cell_hi(const Rational& v, int N) { return cell_of(v, N); }

struct RectQ {
    Rational x0, x1, y0, y1;
};

inline RectQ apply_rect(const DiagMap& m, const RectQ& r) {
    // Both generators have positive axis factors, so corners map to corners.
    return {m.ax * r.x0 + m.ex, m.ax * r.x1 + m.ex, m.dy * r.y0 + m.fy, m.dy * r.y1 + m.fy};
}

struct RectD {
    double x0, x1, y0, y1;
};

struct MapD {
    double ax, ex, dy, fy;
};

inline RectD apply_rect(const MapD& m, const RectD& r) {
    return {m.ax * r.x0 + m.ex, m.ax * r.x1 + m.ex, m.dy * r.y0 + m.fy, m.dy * r.y1 + m.fy};
}

inline int cell_of_d(double v, int N) {
    int idx = static_cast<int>(std::floor(v * N));
    if (idx < 0) idx = 0;
    if (idx >= N) idx = N - 1;
    return idx;
}

}  // namespace detail

// Exact cover: every cell meeting the union of the 2^depth rectangle images
// of [0,1]^2 is marked, and only such cells.  A branch whose rectangle fits
// inside a single cell stops early: all its descendants stay inside that
// rectangle, so the marked set is unchanged.  Runtime/memory guard: depth
// must not exceed the configured cap.
inline BoxCover attractor_cover(const Params& p, int k, int depth) {
    const int cap = cap_with_env(kCoverDepthCapDefault);
    if (depth < 0) throw std::invalid_argument("attractor_cover: negative depth");
    if (depth > cap)
        throw std::invalid_argument("attractor_cover: depth " + std::to_string(depth) +
                                    " exceeds cap " + std::to_string(cap));
    BoxCover cover(k);
    cover.depth = depth;
    const DiagMap m0 = map_for_symbol(p, '0');
    const DiagMap m1 = map_for_symbol(p, '1');

    struct Frame {
        detail::RectQ rect;
        int level;
    };
    std::vector<Frame> stack;
    stack.push_back({{Rational(0), Rational(1), Rational(0), Rational(1)}, 0});
    while (!stack.empty()) {
        Frame f = std::move(stack.back());
        stack.pop_back();
        const int c0 = detail::cell_of(f.rect.x0, cover.N);
        const int c1 = detail::cell_hi(f.rect.x1, cover.N);
        const int r0 = detail::cell_of(f.rect.y0, cover.N);
        const int r1 = detail::cell_hi(f.rect.y1, cover.N);
        if (f.level == depth || (c0 == c1 && r0 == r1)) {
            for (int r = r0; r <= r1; ++r)
                for (int c = c0; c <= c1; ++c) cover.mark(r, c);
            continue;
        }
        stack.push_back({detail::apply_rect(m0, f.rect), f.level + 1});
        stack.push_back({detail::apply_rect(m1, f.rect), f.level + 1});
    }
    return cover;
}

// Diameter-driven cover in double arithmetic, for the box-dimension
// estimator: a branch stops once its rectangle's larger side is below
// max_diameter (default: one cell) or once it fits in a single cell.  If the
// depth cap is reached first the rectangle is still marked and the cover is
// flagged depth_capped.  Floating point only shifts cell boundaries by ulps;
// the estimator's tolerances dwarf that.
inline BoxCover attractor_cover_diameter(const Params& p, int k, double max_diameter = 0.0,
                                         int depth_cap = 0) {
    if (depth_cap <= 0) depth_cap = cap_with_env(96);
    BoxCover cover(k);
    if (max_diameter <= 0.0) max_diameter = 1.0 / cover.N;
    const double lam = to_double(p.lambda);
    const double mu = to_double(p.mu);
    const detail::MapD m0{lam, 0.0, mu, 0.0};
    const detail::MapD m1{mu, 1.0 - mu, lam, 1.0 - lam};

    struct Frame {
        detail::RectD rect;
        int level;
    };
    std::vector<Frame> stack;
    stack.push_back({{0.0, 1.0, 0.0, 1.0}, 0});
    while (!stack.empty()) {
        Frame f = stack.back();
        stack.pop_back();
        if (f.level > cover.depth) cover.depth = f.level;
        const int c0 = detail::cell_of_d(f.rect.x0, cover.N);
        const int c1 = detail::cell_of_d(f.rect.x1, cover.N);
        const int r0 = detail::cell_of_d(f.rect.y0, cover.N);
        const int r1 = detail::cell_of_d(f.rect.y1, cover.N);
        const bool single = (c0 == c1 && r0 == r1);
        const bool small = std::max(f.rect.x1 - f.rect.x0, f.rect.y1 - f.rect.y0) <= max_diameter;
        if (single || small || f.level >= depth_cap) {
            if (!single && !small) cover.depth_capped = true;
            for (int r = r0; r <= r1; ++r)
                for (int c = c0; c <= c1; ++c) cover.mark(r, c);
            continue;
        }
        stack.push_back({detail::apply_rect(m0, f.rect), f.level + 1});
        stack.push_back({detail::apply_rect(m1, f.rect), f.level + 1});
    }
    return cover;
}

// Cover of the diagonal segment (0,0)-(1,1): the segment meets exactly the
// half-open cells (i,i).  Sanity fixture for the dimension estimator (a line
// has box dimension 1).
inline BoxCover diagonal_cover(int k) {
    BoxCover cover(k);
    for (int i = 0; i < cover.N; ++i) cover.mark(i, i);
    return cover;
}

// Column-wise comparison of a monotone curve over [0,1] against the topmost
// occupied cells of a cover.  For column j the curve's exact value range is
// [eval(j/N), eval((j+1)/N)]; its distance to the topmost cell interval
// [r/N, (r+1)/N] is max(0, range_lo - cell_hi, cell_lo - range_hi).
struct StaircaseCompare {
    Rational tolerance;       // one cell, 1/N
    Rational max_distance;    // max over columns of the interval distance
    int worst_column = -1;
    Rational max_curve_above; // max over columns of (range_lo - cell_hi); <= 0 means
                              // the curve never rises above the staircase cells
    bool all_within = false;  // max_distance <= tolerance
};

inline StaircaseCompare curve_vs_topmost(const MonotoneCurve& curve, const BoxCover& cover) {
    if (!(curve.x_lo() == 0) || !(curve.x_hi() == 1))
        throw std::invalid_argument("curve_vs_topmost: curve domain must be [0,1]");
    const int N = cover.N;
    const std::vector<int> top = cover.topmost_rows();
    StaircaseCompare out;
    out.tolerance = Rational(1, N);
    out.max_distance = Rational(-1);
    out.max_curve_above = Rational(-1);
    Rational lo = curve.eval(Rational(0));
    for (int j = 0; j < N; ++j) {
        if (top[j] < 0) throw std::logic_error("curve_vs_topmost: empty cover column");
        const Rational hi = curve.eval(Rational(j + 1, N));
        const Rational cell_lo(top[j], N);
        const Rational cell_hi(top[j] + 1, N);
        const Rational above = lo - cell_hi;  // curve range entirely above the cell
        const Rational below = cell_lo - hi;  // curve range entirely below the cell
        const Rational dist = rat_max(Rational(0), rat_max(above, below));
        if (dist > out.max_distance) {
            out.max_distance = dist;
            out.worst_column = j;
        }
        if (above > out.max_curve_above) out.max_curve_above = above;
        lo = hi;
    }
    out.all_within = out.max_distance <= out.tolerance;
    return out;
}

namespace detail {

// Leftmost x with curve value >= y (x_lo if already true there; requires
// y <= final value).
inline Rational leftmost_at_or_above(const MonotoneCurve& c, const Rational& y) {
    const std::vector<PointQ>& v = c.verts;
    if (v.front().y >= y) return v.front().x;
    if (v.back().y < y) throw std::domain_error("leftmost_at_or_above: y above curve range");
    std::size_t lo = 0, hi = v.size() - 1;  // v[lo].y < y <= v[hi].y
    while (hi - lo > 1) {
        const std::size_t mid = (lo + hi) / 2;
        if (v[mid].y >= y)
            hi = mid;
        else
            lo = mid;
    }
    const Rational dy = v[hi].y - v[lo].y;
    Rational x = v[lo].x + (y - v[lo].y) * (v[hi].x - v[lo].x) / dy;
    return x;
}

// Rightmost x with curve value <= y (x_hi if true there; requires y >= first
// value).
inline Rational rightmost_at_or_below(const MonotoneCurve& c, const Rational& y) {
    const std::vector<PointQ>& v = c.verts;
    if (v.back().y <= y) return v.back().x;
    if (v.front().y > y) throw std::domain_error("rightmost_at_or_below: y below curve range");
    std::size_t lo = 0, hi = v.size() - 1;  // v[lo].y <= y < v[hi].y
    while (hi - lo > 1) {
        const std::size_t mid = (lo + hi) / 2;
        if (v[mid].y <= y)
            lo = mid;
        else
            hi = mid;
    }
    const Rational dy = v[hi].y - v[lo].y;
    Rational x = v[lo].x + (y - v[lo].y) * (v[hi].x - v[lo].x) / dy;
    return x;
}

}  // namespace detail

// Self-symmetry of a curve under the involution (x,y) |-> (1-y, 1-x), sampled
// at the 2^k + 1 grid abscissas.  For each sample the exact L-infinity
// distance to the other set is bracketed: a point is within d of a monotone
// chain iff the chain's value range over [x-d, x+d] meets [y-d, y+d] (the
// chain is connected, so its values over a window form an interval).  Both
// directions are sampled — curve points against the mirrored chain and
// mirrored-chain points against the curve — which by the isometry of the
// involution covers both Hausdorff directions at grid resolution.
struct MirrorCompare {
    Rational tolerance;     // one cell, 1/N
    Rational max_distance;  // largest sampled distance, bisected to 2^-24
    Rational worst_x;       // sample abscissa attaining it
    bool all_within = false;
};

inline MirrorCompare mirror_symmetry_gap(const MonotoneCurve& curve, int k) {
    if (!(curve.x_lo() == 0) || !(curve.x_hi() == 1))
        throw std::invalid_argument("mirror_symmetry_gap: curve domain must be [0,1]");
    if (!(curve.verts.front().y == 0) || !(curve.verts.back().y == 1))
        throw std::invalid_argument("mirror_symmetry_gap: curve must run from (0,0) to (1,1)");
    const int N = 1 << k;
    const auto clamp01 = [](const Rational& v) -> Rational {
        if (v < 0) return Rational(0);
        if (v > 1) return Rational(1);
        return v;
    };
    // Value range of the mirrored chain at abscissa x': the curve's preimage
    // of y = 1-x' is [x_enter, x_exit], so the mirrored values are
    // [1-x_exit, 1-x_enter].
    const auto mirror_lo = [&](const Rational& xq) -> Rational {
        Rational r = 1 - detail::rightmost_at_or_below(curve, Rational(1 - xq));
        return r;
    };
    const auto mirror_hi = [&](const Rational& xq) -> Rational {
        Rational r = 1 - detail::leftmost_at_or_above(curve, Rational(1 - xq));
        return r;
    };
    const auto near_mirror = [&](const Rational& px, const Rational& py, const Rational& d) {
        const Rational lo = mirror_lo(clamp01(px - d));
        const Rational hi = mirror_hi(clamp01(px + d));
        return lo <= py + d && hi >= py - d;
    };
    const auto near_curve = [&](const Rational& px, const Rational& py, const Rational& d) {
        const Rational lo = curve.eval(clamp01(px - d));
        const Rational hi = curve.eval(clamp01(px + d));
        return lo <= py + d && hi >= py - d;
    };

    MirrorCompare out;
    out.tolerance = Rational(1, N);
    out.max_distance = Rational(-1);
    const auto record = [&](const Rational& px, const Rational& py, bool against_mirror) {
        const auto near = [&](const Rational& d) {
            return against_mirror ? near_mirror(px, py, d) : near_curve(px, py, d);
        };
        Rational dist(0);
        if (!near(Rational(0))) {
            Rational lo(0), hi(1);  // near(1) always holds: the window spans [0,1]
            for (int it = 0; it < 24; ++it) {
                const Rational mid = (lo + hi) / 2;
                if (near(mid))
                    hi = mid;
                else
                    lo = mid;
            }
            dist = hi;
        }
        if (dist > out.max_distance) {
            out.max_distance = dist;
            out.worst_x = px;
        }
    };
    for (int j = 0; j <= N; ++j) {
        const Rational x(j, N);
        record(x, curve.eval(x), true);
        record(x, mirror_lo(x), false);
        record(x, mirror_hi(x), false);
    }
    out.all_within = out.max_distance <= out.tolerance;
    return out;
}

// Least-squares fit of log2(cell count) against scale k.
struct BoxDimEstimate {
    int kmin = 0;
    int kmax = 0;
    std::vector<std::size_t> counts;  // counts[i] for k = kmin + i
    double slope = 0.0;
    double slope_stderr = 0.0;        // standard error of the fitted slope
    double r2 = 0.0;
    bool depth_capped = false;
};

inline BoxDimEstimate fit_box_dim(int kmin, const std::vector<std::size_t>& counts) {
    const int n = static_cast<int>(counts.size());
    if (n < 3) throw std::invalid_argument("fit_box_dim: need at least 3 scales");
    BoxDimEstimate est;
    est.kmin = kmin;
    est.kmax = kmin + n - 1;
    est.counts = counts;
    double sx = 0, sy = 0;
    std::vector<double> ys(counts.size());
    for (int i = 0; i < n; ++i) {
        ys[i] = std::log2(static_cast<double>(counts[i]));
        sx += kmin + i;
        sy += ys[i];
    }
    const double xbar = sx / n, ybar = sy / n;
    double sxx = 0, sxy = 0, syy = 0;
    for (int i = 0; i < n; ++i) {
        const double dx = kmin + i - xbar, dy = ys[i] - ybar;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    est.slope = sxy / sxx;
    double ss_res = 0;
    for (int i = 0; i < n; ++i) {
        const double r = ys[i] - (ybar + est.slope * (kmin + i - xbar));
        ss_res += r * r;
    }
    est.slope_stderr = std::sqrt(ss_res / (n - 2) / sxx);
    est.r2 = syy > 0 ? 1.0 - ss_res / syy : 1.0;
    return est;
}

inline BoxDimEstimate box_dim_estimate(const Params& p, int kmin, int kmax) {
    const int cap = cap_with_env(kScaleCapDefault);
    if (kmax > cap)
        throw std::invalid_argument("box_dim_estimate: kmax " + std::to_string(kmax) +
                                    " exceeds cap " + std::to_string(cap));
    if (kmax - kmin + 1 < 3) throw std::invalid_argument("box_dim_estimate: need at least 3 scales");
    std::vector<std::size_t> counts;
    bool capped = false;
    for (int k = kmin; k <= kmax; ++k) {
        BoxCover cover = attractor_cover_diameter(p, k);
        counts.push_back(cover.occupied);
        capped = capped || cover.depth_capped;
    }
    BoxDimEstimate est = fit_box_dim(kmin, counts);
    est.depth_capped = capped;
    return est;
}

}  // namespace afftop
