#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "affine.hpp"
#include "interval.hpp"
#include "jet.hpp"
#include "limits.hpp"
#include "params.hpp"
#include "rational.hpp"
#include "verdict.hpp"
#include "word.hpp"

namespace afftop {

// ---------------------------------------------------------------------------
// Membership certificates for the region G: parameter pairs where both
// off-diagonal corner images T1(0,0) and T0(1,1) lie strictly below the top
// boundary curve B. A witness is an eventually periodic word a whose coded
// point pt_a provably lies on B (orbit conditions) and strictly dominates the
// target corner image (dominance conditions). The mirror word witnesses the
// mirrored target.
// ---------------------------------------------------------------------------

constexpr int kGCertificateVersion = 1;
constexpr int kCertifyRefineDefault = 2;  // internal 4^k refinement for user rects

enum class GTarget { T1_ORIGIN, T0_CORNER };

inline std::string g_target_str(GTarget t) {
    return t == GTarget::T1_ORIGIN ? "T1(0,0)" : "T0(1,1)";
}

// T1(0,0) = (1-mu, 1-lambda); T0(1,1) = (lambda, mu).
template <class S>
PointT<S> g_target_point(const S& lambda, const S& mu, GTarget t) {
    const S one = scalar_from_rat<S>(1);
    if (t == GTarget::T1_ORIGIN) return {one - mu, one - lambda};
    return {lambda, mu};
}

// One switching-side condition along the tail orbit of the witness word: the
// tail point coded by shift j must satisfy x+y <= 1 when the next symbol is 0
// and x+y >= 1 when it is 1. These make the fold maps agree with the affine
// maps along the whole orbit, which pins pt_a to the boundary curve.
struct OrbitCondition {
    EPWord tail;
    char side;        // the symbol driving the required side
    Interval sum;     // enclosure of x+y at the tail point
    Interval margin;  // >= 0 required: 1-sum for side '0', sum-1 for side '1'
    Verdict verdict;
};

struct OrbitConditions {
    EPWord a;
    std::vector<OrbitCondition> items;
    Verdict verdict = Verdict::UNDECIDED;
};

namespace detail {

// Tight enclosure of x+y at the point coded by w, over the rectangle.
inline Interval tail_sum_enclosure(const ParamRect& pr, const EPWord& w, int refine) {
    // Explicit return type: with a deduced type the Rational instantiation
    // would return a GMP expression template referencing dead locals.
    auto expr = [&w](const auto& l, const auto& m) -> std::decay_t<decltype(l)> {
        auto p = point_of_word(l, m, w);
        return p.x + p.y;
    };
    return tight_eval_refined(pr, expr, refine);
}

}  // namespace detail

inline OrbitConditions orbit_conditions(const ParamRect& pr, const EPWord& a, int refine = 0) {
    OrbitConditions out{a, {}, Verdict::PASS};
    for (const EPWord& tail : distinct_shifts(a)) {
        const char side = tail.symbol_at(0);
        const Interval sum = detail::tail_sum_enclosure(pr, tail, refine);
        const Interval one(Rational(1));
        const Interval margin = side == '0' ? one - sum : sum - one;
        const Verdict v = tri_geq(margin, Interval(Rational(0)));
        out.items.push_back({tail, side, sum, margin, v});
        out.verdict = tri_and(out.verdict, v);
    }
    return out;
}

inline OrbitConditions orbit_conditions(const Params& p, const EPWord& a) {
    return orbit_conditions(ParamRect(p), a);
}

// Strict dominance of the witness point over a target corner image:
// pt_a.x < target.x and pt_a.y > target.y, uniformly over the rectangle.
// Margins are evaluated as joint expressions of (lambda, mu); comparing
// separate enclosures of the two sides would be hopeless, because the
// pointwise inequality generally fails to be uniform across the rectangle.
struct DominanceCheck {
    GTarget target;
    Interval margin_x;  // target.x - pt.x, strictly positive required
    Interval margin_y;  // pt.y - target.y, strictly positive required
    Verdict verdict;
};

inline DominanceCheck below_b(const ParamRect& pr, const EPWord& a, GTarget target,
                              int refine = 0) {
    auto mx = [&a, target](const auto& l, const auto& m) -> std::decay_t<decltype(l)> {
        auto p = point_of_word(l, m, a);
        auto t = g_target_point(l, m, target);
        return t.x - p.x;
    };
    auto my = [&a, target](const auto& l, const auto& m) -> std::decay_t<decltype(l)> {
        auto p = point_of_word(l, m, a);
        auto t = g_target_point(l, m, target);
        return p.y - t.y;
    };
    DominanceCheck out{target, tight_eval_refined(pr, mx, refine),
                       tight_eval_refined(pr, my, refine), Verdict::UNDECIDED};
    const Interval zero(Rational(0));
    out.verdict = tri_and(tri_greater(out.margin_x, zero), tri_greater(out.margin_y, zero));
    return out;
}

inline DominanceCheck below_b(const Params& p, const EPWord& a, GTarget target) {
    return below_b(ParamRect(p), a, target);
}

struct GCertificate {
    ParamRect rect;
    EPWord word;         // witness for T1(0,0)
    EPWord mirror_word;  // witness for T0(1,1)
    OrbitConditions orbit_word;
    OrbitConditions orbit_mirror;
    DominanceCheck dom_word;
    DominanceCheck dom_mirror;
    Verdict verdict = Verdict::UNDECIDED;
    int version = kGCertificateVersion;
};

// Runs the full two-sided check: orbit + dominance for a against T1(0,0) and
// for mirror(a) against T0(1,1). PASS means the whole rectangle is certified
// inside G; FAIL is only a statement about this witness, never about G.
inline GCertificate certify_g(const ParamRect& rect, const EPWord& a,
                              int refine = kCertifyRefineDefault) {
    const EPWord m = a.mirrored();
    GCertificate cert{rect,
                      a,
                      m,
                      orbit_conditions(rect, a, refine),
                      orbit_conditions(rect, m, refine),
                      below_b(rect, a, GTarget::T1_ORIGIN, refine),
                      below_b(rect, m, GTarget::T0_CORNER, refine),
                      Verdict::UNDECIDED,
                      kGCertificateVersion};
    cert.verdict = tri_and(tri_and(cert.orbit_word.verdict, cert.orbit_mirror.verdict),
                           tri_and(cert.dom_word.verdict, cert.dom_mirror.verdict));
    return cert;
}

inline GCertificate certify_g(const Params& p, const EPWord& a) {
    return certify_g(ParamRect(p), a, 0);
}

// Independent re-check from stored fields alone: reproduces every orbit and
// dominance verdict for the stored rectangle and words, and confirms the
// stored margins are consistent with freshly computed enclosures (fresh
// enclosures may be tighter, never contradictory).
inline bool check_g_certificate(const GCertificate& cert, int refine = kCertifyRefineDefault) {
    if (cert.verdict != Verdict::PASS) return false;
    if (!(cert.mirror_word == cert.word.mirrored())) return false;
    GCertificate redo = certify_g(cert.rect, cert.word, refine);
    return redo.verdict == Verdict::PASS;
}

// ---------------------------------------------------------------------------
// Dictionary of candidate witness words and the parameter sweep.
// ---------------------------------------------------------------------------

// All eventually periodic words u(v) with |u| <= max_prefix, 1 <= |v| <=
// max_period, deduplicated as infinite sequences (shortest representative
// kept), ordered by total length |u|+|v|, then prefix, then period.
inline std::vector<EPWord> default_g_dictionary(int max_prefix = 2, int max_period = 8) {
    std::vector<EPWord> out;
    std::vector<Word> keys;
    const std::size_t key_len =
        static_cast<std::size_t>(max_prefix) + 8 * static_cast<std::size_t>(max_period);
    std::vector<std::pair<int, std::pair<Word, Word>>> order;
    for (int lu = 0; lu <= max_prefix; ++lu)
        for (unsigned long ub = 0; ub < (1ul << lu); ++ub) {
            Word u;
            for (int i = lu - 1; i >= 0; --i) u.push_back((ub >> i) & 1 ? '1' : '0');
            for (int lv = 1; lv <= max_period; ++lv)
                for (unsigned long vb = 0; vb < (1ul << lv); ++vb) {
                    Word v;
                    for (int i = lv - 1; i >= 0; --i) v.push_back((vb >> i) & 1 ? '1' : '0');
                    order.push_back({lu + lv, {u, v}});
                }
        }
    std::sort(order.begin(), order.end());
    for (const auto& [total, uv] : order) {
        (void)total;
        EPWord w(uv.first, uv.second);
        Word key = w.expansion(key_len);
        if (std::find(keys.begin(), keys.end(), key) == keys.end()) {
            keys.push_back(std::move(key));
            out.push_back(std::move(w));
        }
    }
    return out;
}

struct GSweepCell {
    Interval lambda;
    Interval mu;
    int depth = 0;
    CellStatus status = CellStatus::UNDECIDED;
    int dict_index = -1;               // certified cells: which witness worked
    std::optional<EPWord> word;        // and the witness itself
};

struct SweepGReport {
    int depth = 0;
    std::vector<EPWord> dictionary;
    std::vector<GSweepCell> cells;
    Rational certified_area = 0;
    Rational undecided_area = 0;
    Rational boundary_area = 0;
    Rational outside_area = 0;
    Rational region_area = Rational(1, 4);
    std::size_t certified_cells = 0;
    std::size_t undecided_cells = 0;
    std::size_t boundary_cells = 0;
    std::size_t outside_cells = 0;

    Rational coverage() const { return certified_area / region_area; }
};

namespace detail {

// Shared per-rectangle evaluation context: rectangle, exact center, and the
// two parameter jets. Points are computed once per word under all three
// scalar types; every condition is then a cheap combination.
struct RectEval {
    const ParamRect& pr;
    bool point;  // degenerate rectangle: naive evaluation is already exact
    Params c;
    Jet jl, jm;

    explicit RectEval(const ParamRect& r)
        : pr(r),
          point(r.lambda.lo == r.lambda.hi && r.mu.lo == r.mu.hi),
          c(r.midpoint()),
          jl(Jet::var_lambda(r.lambda)),
          jm(Jet::var_mu(r.mu)) {}

    Interval combine(const Rational& at_center, const Interval& naive, const Jet& jet) const {
        if (point) return naive;
        const Interval mv = Interval(at_center) + jet.dl * (pr.lambda - Interval(c.lambda)) +
                            jet.dm * (pr.mu - Interval(c.mu));
        return meet(naive, mv);
    }
};

// Orbit conditions for one word, early-exiting on FAIL. Margins are tried
// with plain interval arithmetic first; the mean-value form is computed only
// when that stays undecided. Since the combined enclosure is a subset of the
// naive one, a decided naive verdict can never be flipped, so the lazy path
// returns exactly the verdicts the eager one would.
inline Verdict orbit_verdict_fast(const RectEval& ev, const EPWord& a) {
    const Interval one(Rational(1));
    const Interval zero(Rational(0));
    Verdict acc = Verdict::PASS;
    for (const EPWord& tail : distinct_shifts(a)) {
        const PointT<Interval> pi = point_of_word<Interval>(ev.pr.lambda, ev.pr.mu, tail);
        const bool zero_side = tail.symbol_at(0) == '0';
        Interval sum = pi.x + pi.y;
        Verdict v = tri_geq(zero_side ? one - sum : sum - one, zero);
        if (v == Verdict::UNDECIDED && !ev.point) {
            const PointQ pq = point_of_word<Rational>(ev.c.lambda, ev.c.mu, tail);
            const PointT<Jet> pj = point_of_word<Jet>(ev.jl, ev.jm, tail);
            sum = ev.combine(pq.x + pq.y, sum, pj.x + pj.y);
            v = tri_geq(zero_side ? one - sum : sum - one, zero);
        }
        if (v == Verdict::FAIL) return Verdict::FAIL;
        acc = tri_and(acc, v);
    }
    return acc;
}

// Dominance for one word against its target, margins as joint expressions,
// with the same lazy mean-value fallback as the orbit check.
inline Verdict dominance_verdict_fast(const RectEval& ev, const EPWord& a, GTarget target) {
    const Interval zero(Rational(0));
    const PointT<Interval> pi = point_of_word<Interval>(ev.pr.lambda, ev.pr.mu, a);
    const PointT<Interval> ti = g_target_point<Interval>(ev.pr.lambda, ev.pr.mu, target);
    Interval mx = ti.x - pi.x;
    Interval my = pi.y - ti.y;
    Verdict vx = tri_greater(mx, zero);
    Verdict vy = tri_greater(my, zero);
    if ((vx == Verdict::UNDECIDED || vy == Verdict::UNDECIDED) && !ev.point) {
        const PointQ pq = point_of_word<Rational>(ev.c.lambda, ev.c.mu, a);
        const PointT<Jet> pj = point_of_word<Jet>(ev.jl, ev.jm, a);
        const PointQ tq = g_target_point<Rational>(ev.c.lambda, ev.c.mu, target);
        const PointT<Jet> tj = g_target_point<Jet>(ev.jl, ev.jm, target);
        if (vx == Verdict::UNDECIDED) {
            mx = ev.combine(tq.x - pq.x, mx, tj.x - pj.x);
            vx = tri_greater(mx, zero);
        }
        if (vx != Verdict::FAIL && vy == Verdict::UNDECIDED) {
            my = ev.combine(pq.y - tq.y, my, pj.y - tj.y);
            vy = tri_greater(my, zero);
        }
    }
    if (vx == Verdict::FAIL || vy == Verdict::FAIL) return Verdict::FAIL;
    return tri_and(vx, vy);
}

// Fast single-word check used inside the sweep: evaluates conditions in
// cheapest-first order with early exit. Returns PASS/FAIL/UNDECIDED for this
// word on this rectangle; FAIL is uniform over the rectangle and therefore
// inherited by subrectangles.
inline Verdict try_g_word(const RectEval& ev, const EPWord& a) {
    Verdict acc = dominance_verdict_fast(ev, a, GTarget::T1_ORIGIN);
    if (acc == Verdict::FAIL) return Verdict::FAIL;
    const Verdict orbit_a = orbit_verdict_fast(ev, a);
    if (orbit_a == Verdict::FAIL) return Verdict::FAIL;
    acc = tri_and(acc, orbit_a);
    // Mirror side (equivalent by symmetry, but verified, not assumed).
    const EPWord m = a.mirrored();
    const Verdict dom_m = dominance_verdict_fast(ev, m, GTarget::T0_CORNER);
    if (dom_m == Verdict::FAIL) return Verdict::FAIL;
    acc = tri_and(acc, dom_m);
    const Verdict orbit_m = orbit_verdict_fast(ev, m);
    if (orbit_m == Verdict::FAIL) return Verdict::FAIL;
    return tri_and(acc, orbit_m);
}

}  // namespace detail

inline SweepGReport sweep_g(int depth,
                            const std::vector<EPWord>& dictionary = default_g_dictionary()) {
    if (depth < 0) throw std::invalid_argument("sweep depth must be nonnegative");
    const int cap = cap_with_env(kSweepGCapDefault);
    if (depth > cap)
        throw std::invalid_argument("sweep depth " + std::to_string(depth) + " above cap " +
                                    std::to_string(cap));
    if (dictionary.empty()) throw std::invalid_argument("empty witness dictionary");
    SweepGReport rep;
    rep.depth = depth;
    rep.dictionary = dictionary;

    struct Frame {
        Interval l, m;
        int d;
        std::vector<int> candidates;  // dictionary indices not yet proven FAIL
    };
    std::vector<int> all(dictionary.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<int>(i);
    std::vector<Frame> stack;
    stack.push_back(
        {Interval(Rational(0), Rational(1)), Interval(Rational(0), Rational(1)), 0, all});
    while (!stack.empty()) {
        Frame f = std::move(stack.back());
        stack.pop_back();
        const Rational area = rat_pow(rat(1, 4), static_cast<unsigned long>(f.d));

        GSweepCell cell;
        cell.lambda = f.l;
        cell.mu = f.m;
        cell.depth = f.d;

        if (rect_outside_region(f.l, f.m)) {
            cell.status = CellStatus::OUTSIDE;
            rep.outside_area += area;
            ++rep.outside_cells;
            rep.cells.push_back(std::move(cell));
            continue;
        }

        const bool inside = ParamRect::admissible(f.l, f.m);
        std::vector<int> surviving;
        if (inside) {
            ParamRect rect(f.l, f.m);
            detail::RectEval ev(rect);
            int hit = -1;
            surviving.reserve(f.candidates.size());
            for (int idx : f.candidates) {
                const Verdict v = detail::try_g_word(ev, dictionary[static_cast<std::size_t>(idx)]);
                if (v == Verdict::PASS) {
                    hit = idx;
                    break;
                }
                if (v == Verdict::UNDECIDED) surviving.push_back(idx);
                // FAIL: uniformly wrong on this rectangle, drop for children too.
            }
            if (hit >= 0) {
                cell.status = CellStatus::CERTIFIED;
                cell.dict_index = hit;
                cell.word = dictionary[static_cast<std::size_t>(hit)];
                rep.certified_area += area;
                ++rep.certified_cells;
                rep.cells.push_back(std::move(cell));
                continue;
            }
            if (f.d == depth || surviving.empty()) {
                // No witness left that could ever certify this cell or any
                // subcell: report undecided here instead of splitting.
                cell.status = CellStatus::UNDECIDED;
                rep.undecided_area += area;
                ++rep.undecided_cells;
                rep.cells.push_back(std::move(cell));
                continue;
            }
        } else if (f.d == depth) {
            cell.status = CellStatus::BOUNDARY;
            rep.boundary_area += area;
            ++rep.boundary_cells;
            rep.cells.push_back(std::move(cell));
            continue;
        }

        const std::vector<int>& pass_down = inside ? surviving : f.candidates;
        const Rational lm = (f.l.lo + f.l.hi) / 2;
        const Rational mm = (f.m.lo + f.m.hi) / 2;
        stack.push_back({Interval(f.l.lo, lm), Interval(f.m.lo, mm), f.d + 1, pass_down});
        stack.push_back({Interval(lm, f.l.hi), Interval(f.m.lo, mm), f.d + 1, pass_down});
        stack.push_back({Interval(f.l.lo, lm), Interval(mm, f.m.hi), f.d + 1, pass_down});
        stack.push_back({Interval(lm, f.l.hi), Interval(mm, f.m.hi), f.d + 1, pass_down});
    }
    return rep;
}

}  // namespace afftop
