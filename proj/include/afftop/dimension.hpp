#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "affine.hpp"
#include "interval.hpp"
#include "limits.hpp"
#include "params.hpp"
#include "rational.hpp"
#include "realpow.hpp"
#include "verdict.hpp"
#include "word.hpp"

namespace afftop {

// ---------------------------------------------------------------------------
// Axis scales of a word map.
//
// The composition along a word w is (x, y) |-> (a*x + e, b*y + f) with
//   a = lambda^{#0(w)} * mu^{#1(w)}   (horizontal contraction)
//   b = mu^{#0(w)} * lambda^{#1(w)}   (vertical contraction)
// so a*b = (lambda*mu)^{|w|} and a >= b exactly when #1(w) >= #0(w).
// ---------------------------------------------------------------------------

template <class S>
struct ScalePairT {
    S a;  // horizontal factor
    S b;  // vertical factor
};

using ScalePair = ScalePairT<Rational>;
using ScalePairI = ScalePairT<Interval>;

template <class S>
ScalePairT<S> axis_scales(const S& lambda, const S& mu, const Word& w) {
    const DiagMapT<S> m = word_map<S>(lambda, mu, w);
    return {m.ax, m.dy};
}

inline ScalePair axis_scales(const Params& p, const Word& w) {
    return axis_scales<Rational>(p.lambda, p.mu, w);
}
inline ScalePairI axis_scales(const ParamRect& p, const Word& w) {
    return axis_scales<Interval>(p.lambda, p.mu, w);
}

// ---------------------------------------------------------------------------
// Family geometry: reference box and its images.
//
// For a family of words {w_1, ..., w_n} (n >= 2) the reference box X is the
// bounding box of the fixed points of the word maps. Every word map has both
// axis factors in (0, 1) and its fixed point inside X, so T_{w_i}(X) is
// contained in X automatically; the point-parameter builder asserts this
// exactly, the rectangle-parameter builder checks the factor enclosures.
// ---------------------------------------------------------------------------

template <class S>
struct BoxT {
    S x0, x1, y0, y1;
};

using BoxQ = BoxT<Rational>;
using BoxI = BoxT<Interval>;

template <class S>
BoxT<S> apply_box(const DiagMapT<S>& m, const BoxT<S>& r) {
    // Positive diagonal factors map the min/max corners to min/max corners.
    return {m.ax * r.x0 + m.ex, m.ax * r.x1 + m.ex, m.dy * r.y0 + m.fy, m.dy * r.y1 + m.fy};
}

template <class S>
struct FamilyGeometryT {
    std::vector<Word> words;
    std::vector<DiagMapT<S>> maps;
    std::vector<PointT<S>> fixed_points;
    BoxT<S> box;                  // bounding box of the fixed points
    std::vector<BoxT<S>> images;  // T_{w_i}(box), one per word
};

using FamilyGeometry = FamilyGeometryT<Rational>;
using FamilyGeometryI = FamilyGeometryT<Interval>;

// Fixed point of a word map. The constant words have parameter-independent
// fixed points (0,0) and (1,1); returning those exactly matters for interval
// scalars, where the generic quotient e/(1-a) cannot see that numerator and
// denominator share their parameter dependence.
template <class S>
PointT<S> word_fixed_point(const Word& w, const DiagMapT<S>& m) {
    if (w.find('0') == Word::npos) {
        const S one = scalar_from_rat<S>(1);
        return {one, one};
    }
    if (w.find('1') == Word::npos) {
        const S zero = scalar_from_rat<S>(0);
        return {zero, zero};
    }
    return fixed_point(m);
}

template <class S>
FamilyGeometryT<S> build_family(const S& lambda, const S& mu, const std::vector<Word>& words) {
    if (words.size() < 2) throw std::invalid_argument("a word family needs at least two words");
    for (std::size_t i = 0; i < words.size(); ++i) {
        if (words[i].empty()) throw std::invalid_argument("word families must not contain the empty word");
        for (std::size_t j = i + 1; j < words.size(); ++j)
            if (words[i] == words[j])
                throw std::invalid_argument("duplicate word in family: " + words[i]);
    }
    FamilyGeometryT<S> fam;
    fam.words = words;
    fam.maps.reserve(words.size());
    fam.fixed_points.reserve(words.size());
    for (const Word& w : words) {
        DiagMapT<S> m = word_map<S>(lambda, mu, w);
        fam.fixed_points.push_back(word_fixed_point(w, m));
        fam.maps.push_back(std::move(m));
    }
    fam.box = {fam.fixed_points[0].x, fam.fixed_points[0].x, fam.fixed_points[0].y,
               fam.fixed_points[0].y};
    for (const PointT<S>& q : fam.fixed_points) {
        fam.box.x0 = smin(fam.box.x0, q.x);
        fam.box.x1 = smax(fam.box.x1, q.x);
        fam.box.y0 = smin(fam.box.y0, q.y);
        fam.box.y1 = smax(fam.box.y1, q.y);
    }
    fam.images.reserve(words.size());
    for (const DiagMapT<S>& m : fam.maps) fam.images.push_back(apply_box(m, fam.box));
    return fam;
}

inline FamilyGeometry build_family(const Params& p, const std::vector<Word>& words) {
    FamilyGeometry fam = build_family<Rational>(p.lambda, p.mu, words);
    for (const BoxQ& img : fam.images) {
        // Exact sanity check of the automatic containment T_{w_i}(X) within X.
        if (img.x0 < fam.box.x0 || img.x1 > fam.box.x1 || img.y0 < fam.box.y0 ||
            img.y1 > fam.box.y1)
            throw std::logic_error("family image escaped its reference box");
    }
    return fam;
}

inline FamilyGeometryI build_family(const ParamRect& p, const std::vector<Word>& words) {
    FamilyGeometryI fam = build_family<Interval>(p.lambda, p.mu, words);
    const Interval one(Rational(1));
    const Interval zero(Rational(0));
    for (const DiagMapI& m : fam.maps)
        if (!certainly_greater(m.ax, zero) || !certainly_less(m.ax, one) ||
            !certainly_greater(m.dy, zero) || !certainly_less(m.dy, one))
            throw std::domain_error("word-map factors not certainly inside (0,1) on this rectangle");
    return fam;
}

template <class S>
bool degenerate_box(const BoxT<S>& b) {
    // Degenerate when we cannot certify positive extent in both axes.
    return !(tri_less(b.x0, b.x1) == Verdict::PASS) || !(tri_less(b.y0, b.y1) == Verdict::PASS);
}

// ---------------------------------------------------------------------------
// Rectangular separation / covering check.
//
//   disjoint: every pair of image boxes is separated by a strict gap along
//             some axis (closed boxes disjoint). Touching edges count as a
//             failure: the certificates downstream need strict separation.
//   cover:    the x-projections of the images cover the x-projection of the
//             reference box.
//
// Both verdicts are three-valued; with exact rational inputs they are always
// decided, with rectangle (interval) parameters UNDECIDED means the evidence
// straddles and subdivision is required.
// ---------------------------------------------------------------------------

struct RoscReport {
    Verdict disjoint = Verdict::UNDECIDED;
    Verdict cover = Verdict::UNDECIDED;
    // First pair that is provably (or possibly) not separated, when disjoint != PASS.
    int bad_i = -1;
    int bad_j = -1;
    std::string note;

    Verdict overall() const { return tri_and(disjoint, cover); }
};

namespace detail {

template <class S>
Verdict pair_separated(const BoxT<S>& a, const BoxT<S>& b) {
    return tri_or(tri_or(tri_less(a.x1, b.x0), tri_less(b.x1, a.x0)),
                  tri_or(tri_less(a.y1, b.y0), tri_less(b.y1, a.y0)));
}

// Tries to prove a genuine gap in the x-projections: a test point certainly
// interior to the box projection that every image projection certainly
// misses. Probe points are midpoints between (and at) all endpoint bounds;
// for exact rational data this probe set is complete, because a true gap has
// image endpoints as its boundary and the box edges are always attained by
// the min/max-attaining images.
template <class S>
bool projection_gap_witness(const BoxT<S>& box, const std::vector<BoxT<S>>& images,
                            Rational* witness = nullptr) {
    std::vector<Rational> cuts;
    for (const BoxT<S>& img : images) {
        cuts.push_back(scalar_lo(img.x0));
        cuts.push_back(scalar_hi(img.x0));
        cuts.push_back(scalar_lo(img.x1));
        cuts.push_back(scalar_hi(img.x1));
    }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    std::vector<Rational> probes;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
        probes.push_back((cuts[i] + cuts[i + 1]) / 2);
    probes.insert(probes.end(), cuts.begin(), cuts.end());
    for (const Rational& t : probes) {
        if (!(scalar_hi(box.x0) < t && t < scalar_lo(box.x1))) continue;
        bool missed_by_all = true;
        for (const BoxT<S>& img : images)
            if (!(t < scalar_lo(img.x0) || scalar_hi(img.x1) < t)) {
                missed_by_all = false;
                break;
            }
        if (missed_by_all) {
            if (witness) *witness = t;
            return true;
        }
    }
    return false;
}

// Can a chain of image projections provably cover [x0, x1]?
//
// The box edges are attained by fixed points, so the image of the word whose
// fixed point attains the horizontal minimum starts exactly at x0 (for every
// parameter), and the image of the maximum-attaining word ends exactly at x1.
// Those two identities hold pointwise and sidestep interval arithmetic, which
// could never certify an equality with positive-width parameters. In
// between, a greedy chain over the relation "certainly starts at or below the
// proven reach" is used; maximizing the proven right end is optimal because
// eligibility only consults that same lower bound.
template <class S>
Verdict projections_cover(const FamilyGeometryT<S>& fam) {
    const std::size_t n = fam.images.size();
    std::size_t imin = n, imax = n;
    for (std::size_t i = 0; i < n && (imin == n || imax == n); ++i) {
        bool is_min = true, is_max = true;
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i) continue;
            if (tri_leq(fam.fixed_points[i].x, fam.fixed_points[j].x) != Verdict::PASS)
                is_min = false;
            if (tri_leq(fam.fixed_points[j].x, fam.fixed_points[i].x) != Verdict::PASS)
                is_max = false;
        }
        if (is_min && imin == n) imin = i;
        if (is_max && imax == n) imax = i;
    }
    if (imin == n || imax == n || imin == imax)
        return projection_gap_witness(fam.box, fam.images) ? Verdict::FAIL : Verdict::UNDECIDED;

    std::vector<bool> used(n, false);
    used[imin] = true;
    S reach = fam.images[imin].x1;  // covered so far: [x0, reach], left end exact
    for (std::size_t step = 0; step < n; ++step) {
        // The maximum-attaining image ends exactly at x1: once it chains on,
        // the whole projection is covered.
        if (tri_leq(fam.images[imax].x0, reach) == Verdict::PASS) return Verdict::PASS;
        std::size_t best = n;
        for (std::size_t i = 0; i < n; ++i) {
            if (used[i] || i == imax) continue;
            if (tri_leq(fam.images[i].x0, reach) != Verdict::PASS) continue;
            if (best == n || scalar_lo(fam.images[i].x1) > scalar_lo(fam.images[best].x1)) best = i;
        }
        if (best == n || !(scalar_lo(fam.images[best].x1) > scalar_lo(reach))) break;
        reach = fam.images[best].x1;
        used[best] = true;
    }
    return projection_gap_witness(fam.box, fam.images) ? Verdict::FAIL : Verdict::UNDECIDED;
}

}  // namespace detail

template <class S>
RoscReport rosc_check(const FamilyGeometryT<S>& fam) {
    RoscReport rep;
    if (degenerate_box(fam.box)) {
        rep.disjoint = Verdict::FAIL;
        rep.cover = Verdict::FAIL;
        rep.note = "reference box is degenerate";
        return rep;
    }
    rep.disjoint = Verdict::PASS;
    for (std::size_t i = 0; i < fam.images.size() && rep.disjoint != Verdict::FAIL; ++i)
        for (std::size_t j = i + 1; j < fam.images.size(); ++j) {
            const Verdict v = detail::pair_separated(fam.images[i], fam.images[j]);
            if (v != Verdict::PASS) {
                rep.disjoint = v;
                rep.bad_i = static_cast<int>(i);
                rep.bad_j = static_cast<int>(j);
                rep.note = "images " + fam.words[i] + " and " + fam.words[j] +
                           (v == Verdict::FAIL ? " intersect" : " may intersect");
                if (v == Verdict::FAIL) break;
            }
        }
    rep.cover = detail::projections_cover(fam);
    return rep;
}

// ---------------------------------------------------------------------------
// The dimension equation   sum_i a_i * b_i^(s-1) = 1.
//
// Each term is positive and strictly decreasing in s (all b_i < 1), so the
// left-hand side is strictly decreasing; with sum a_i > 1 and
// sum a_i*b_i < 1 there is a unique root in (1, 2).
// ---------------------------------------------------------------------------

inline Interval dim_equation_lhs(const std::vector<ScalePair>& scales, const Rational& s,
                                 int prec = 128) {
    Interval total(Rational(0));
    const Rational e = s - 1;
    for (const ScalePair& sp : scales) total = total + Interval(sp.a) * pow_enclosure(sp.b, e, prec);
    return total;
}

inline Interval dim_equation_lhs(const std::vector<ScalePairI>& scales, const Rational& s,
                                 int prec = 128) {
    Interval total(Rational(0));
    const Rational e = s - 1;
    for (const ScalePairI& sp : scales) total = total + sp.a * pow_enclosure(sp.b, e, prec);
    return total;
}

inline std::vector<ScalePair> family_scales(const Params& p, const std::vector<Word>& words) {
    std::vector<ScalePair> out;
    out.reserve(words.size());
    for (const Word& w : words) out.push_back(axis_scales(p, w));
    return out;
}

inline std::vector<ScalePairI> family_scales(const ParamRect& p, const std::vector<Word>& words) {
    std::vector<ScalePairI> out;
    out.reserve(words.size());
    for (const Word& w : words) out.push_back(axis_scales(p, w));
    return out;
}

struct DimSolveOpts {
    Rational tol = dyadic_unit(30);  // bracket width target for the root
    int prec = 128;                  // working bits for power enclosures
    int max_prec = 1024;             // escalation ceiling near the root
};

struct DimCertificate {
    std::vector<Word> words;
    RoscReport rosc;
    Rational sum_a;              // exact sum of horizontal factors
    Rational sum_ab;             // exact value of the equation at s = 2
    bool boundary = false;       // sum_a == 1: the root is exactly s = 1
    Rational s_lo = 1, s_hi = 2; // proven bracket for the root
    Interval lhs_at_s_lo;        // enclosure with lhs_at_s_lo.lo > 1 (unless boundary)
    Interval lhs_at_s_hi;        // enclosure with lhs_at_s_hi.hi < 1 (unless boundary)
    int prec_used = 0;

    double s_mid() const { return to_double((s_lo + s_hi) / 2); }
};

// Solves the dimension equation for a family already known to be strictly
// separated and covering. Preconditions (checked, violations throw):
//   - exact rosc_check passes both clauses,
//   - every word has #1 >= #0 (so a_i >= b_i) and at least one is strict.
inline DimCertificate feng_wang_dim(const Params& p, const std::vector<Word>& words,
                                    const DimSolveOpts& opts = {}) {
    DimCertificate cert;
    cert.words = words;
    FamilyGeometry fam = build_family(p, words);
    if (degenerate_box(fam.box)) throw std::domain_error("degenerate family box");
    cert.rosc = rosc_check(fam);
    if (cert.rosc.disjoint != Verdict::PASS || cert.rosc.cover != Verdict::PASS)
        throw std::domain_error("family is not certified separated+covering: " + cert.rosc.note);

    bool strict = false;
    for (const Word& w : words) {
        const std::size_t ones = count_symbol(w, '1');
        const std::size_t zeros = count_symbol(w, '0');
        if (ones < zeros)
            throw std::domain_error("word " + w + " has more 0s than 1s (vertical factor dominates)");
        if (ones > zeros) strict = true;
    }
    if (!strict)
        throw std::domain_error("family has no word with strictly dominant horizontal factor");

    const std::vector<ScalePair> scales = family_scales(p, words);
    cert.sum_a = 0;
    cert.sum_ab = 0;
    for (const ScalePair& sp : scales) {
        cert.sum_a += sp.a;
        cert.sum_ab += sp.a * sp.b;
    }
    if (cert.sum_a < 1)
        throw std::logic_error("covering family with sum of horizontal factors below 1");
    if (!(cert.sum_ab < 1))
        throw std::logic_error("separated family with sum of box areas not below 1");

    if (cert.sum_a == 1) {
        // Exact tiling in projection: the equation value at s = 1 is exactly 1.
        cert.boundary = true;
        cert.s_lo = cert.s_hi = 1;
        cert.lhs_at_s_lo = Interval(Rational(1));
        cert.lhs_at_s_hi = Interval(Rational(1));
        cert.prec_used = 0;
        return cert;
    }

    cert.s_lo = 1;
    cert.s_hi = 2;
    cert.lhs_at_s_lo = Interval(cert.sum_a);   // exact: b^0 = 1
    cert.lhs_at_s_hi = Interval(cert.sum_ab);  // exact: b^1 = b
    int prec = opts.prec;
    cert.prec_used = prec;
    while (cert.s_hi - cert.s_lo > opts.tol) {
        const Rational mid = (cert.s_lo + cert.s_hi) / 2;
        Interval lhs = dim_equation_lhs(scales, mid, prec);
        while (!(lhs.lo > 1) && !(lhs.hi < 1) && prec < opts.max_prec) {
            prec *= 2;
            cert.prec_used = prec;
            lhs = dim_equation_lhs(scales, mid, prec);
        }
        if (lhs.lo > 1) {
            cert.s_lo = mid;
            cert.lhs_at_s_lo = lhs;
        } else if (lhs.hi < 1) {
            cert.s_hi = mid;
            cert.lhs_at_s_hi = lhs;
        } else {
            throw std::logic_error("dimension equation undecidable at working precision");
        }
    }
    return cert;
}

// Independent re-check of a certificate (used by the verifier): reproduces
// the separation/cover evidence and the sign of the equation at both bracket
// ends without trusting any stored intermediate.
inline bool check_dim_certificate(const Params& p, const DimCertificate& cert, int prec = 128) {
    try {
        FamilyGeometry fam = build_family(p, cert.words);
        RoscReport rep = rosc_check(fam);
        if (rep.disjoint != Verdict::PASS || rep.cover != Verdict::PASS) return false;
        if (cert.boundary) {
            Rational sum_a = 0;
            for (const ScalePair& sp : family_scales(p, cert.words)) sum_a += sp.a;
            return sum_a == 1 && cert.s_lo == 1 && cert.s_hi == 1;
        }
        if (!(1 <= cert.s_lo && cert.s_lo < cert.s_hi && cert.s_hi <= 2)) return false;
        const std::vector<ScalePair> scales = family_scales(p, cert.words);
        return dim_equation_lhs(scales, cert.s_lo, prec).lo > 1 &&
               dim_equation_lhs(scales, cert.s_hi, prec).hi < 1;
    } catch (const std::exception&) {
        return false;
    }
}

// ---------------------------------------------------------------------------
// Family search at fixed parameters.
//
// Scans, in order:
//   (A) {0 1^m, 1^n}                       for m = 1..m_max, n = 1..n_max,
//   (B) {0 1^m} with {1^k 0 : k = 1..n}    for m = 1..m_max, n = 1..n_max,
//   (C) all subsets (size 2..subset_max) of words of length <= general_len
//       with #1 >= #0, pruned by the necessary condition sum a_i >= 1.
// Returns the first family whose exact checks pass, together with a log of
// every candidate tried and why it was rejected.
// ---------------------------------------------------------------------------

struct DimSearchOpts {
    int m_max = 8;
    int n_max = 8;
    int general_len = 10;
    int subset_max = 3;
    bool enable_general = true;
    std::size_t trail_cap = 20000;
    DimSolveOpts solve;
};

struct SearchLog {
    std::size_t families_tried = 0;
    std::size_t disjoint_failures = 0;
    std::size_t cover_failures = 0;
    std::size_t degenerate = 0;
    std::size_t precondition_failures = 0;  // word balance / duplicate style rejections
    std::size_t pruned_subsets = 0;         // cut by the sum a_i >= 1 bound
    bool truncated = false;
    std::vector<std::string> trail;

    void add(std::size_t cap, std::string line) {
        if (trail.size() < cap)
            trail.push_back(std::move(line));
        else
            truncated = true;
    }
};

struct DimSearchResult {
    std::optional<DimCertificate> certificate;
    SearchLog log;
};

namespace detail {

inline std::string family_label(const std::vector<Word>& words) {
    std::string s = "{";
    for (std::size_t i = 0; i < words.size(); ++i) {
        if (i) s += ",";
        s += words[i];
    }
    return s + "}";
}

// Tries one family; fills the log and returns a certificate when everything
// passes. Exact arithmetic throughout.
inline std::optional<DimCertificate> try_family(const Params& p, const std::vector<Word>& words,
                                                const std::string& tag, SearchLog& log,
                                                const DimSearchOpts& opts) {
    ++log.families_tried;
    const std::string label = tag + " " + family_label(words);
    try {
        FamilyGeometry fam = build_family(p, words);
        if (degenerate_box(fam.box)) {
            ++log.degenerate;
            log.add(opts.trail_cap, label + ": degenerate box");
            return std::nullopt;
        }
        RoscReport rep = rosc_check(fam);
        if (rep.disjoint != Verdict::PASS) {
            ++log.disjoint_failures;
            log.add(opts.trail_cap, label + ": disjointness " + verdict_str(rep.disjoint) +
                                        (rep.note.empty() ? "" : " (" + rep.note + ")"));
            return std::nullopt;
        }
        if (rep.cover != Verdict::PASS) {
            ++log.cover_failures;
            log.add(opts.trail_cap, label + ": cover " + verdict_str(rep.cover));
            return std::nullopt;
        }
        DimCertificate cert = feng_wang_dim(p, words, opts.solve);
        log.add(opts.trail_cap, label + ": CERTIFIED s in [" + rat_str(cert.s_lo) + ", " +
                                    rat_str(cert.s_hi) + "] ~ " + std::to_string(cert.s_mid()));
        return cert;
    } catch (const std::domain_error& e) {
        ++log.precondition_failures;
        log.add(opts.trail_cap, label + ": rejected (" + std::string(e.what()) + ")");
        return std::nullopt;
    }
}

inline Word repeat_word(char c, int k) { return Word(static_cast<std::size_t>(k), c); }

}  // namespace detail

inline DimSearchResult search_family(const Params& p, const DimSearchOpts& opts = {}) {
    DimSearchResult res;
    SearchLog& log = res.log;

    // (A) {0 1^m, 1^n}
    for (int m = 1; m <= opts.m_max; ++m)
        for (int n = 1; n <= opts.n_max; ++n) {
            std::vector<Word> words = {"0" + detail::repeat_word('1', m),
                                       detail::repeat_word('1', n)};
            if (auto cert = detail::try_family(p, words, "A", log, opts)) {
                res.certificate = std::move(cert);
                return res;
            }
        }

    // (B) {0 1^m, 1 0, 1 1 0, ..., 1^n 0}
    for (int m = 1; m <= opts.m_max; ++m)
        for (int n = 1; n <= opts.n_max; ++n) {
            std::vector<Word> words = {"0" + detail::repeat_word('1', m)};
            for (int k = 1; k <= n; ++k) words.push_back(detail::repeat_word('1', k) + "0");
            if (auto cert = detail::try_family(p, words, "B", log, opts)) {
                res.certificate = std::move(cert);
                return res;
            }
        }

    if (!opts.enable_general) return res;

    // (C) general subsets. Words with #1 >= #0 sorted by decreasing
    // horizontal factor; depth-first over index-increasing subsets with the
    // bound  chosen sum + slots_left * next factor >= 1  (necessary for a
    // covering family, since the image widths are a_i times the box width).
    std::vector<Word> pool;
    for (int len = 1; len <= opts.general_len; ++len) {
        for (unsigned long bits = 0; bits < (1ul << len); ++bits) {
            Word w;
            for (int i = 0; i < len; ++i) w.push_back((bits >> i) & 1 ? '1' : '0');
            if (count_symbol(w, '1') >= count_symbol(w, '0')) pool.push_back(std::move(w));
        }
    }
    std::vector<Rational> pool_a(pool.size());
    for (std::size_t i = 0; i < pool.size(); ++i) pool_a[i] = axis_scales(p, pool[i]).a;
    std::vector<std::size_t> order(pool.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
        if (pool_a[i] != pool_a[j]) return pool_a[i] > pool_a[j];
        if (pool[i].size() != pool[j].size()) return pool[i].size() < pool[j].size();
        return pool[i] < pool[j];
    });

    std::vector<std::size_t> chosen;
    std::optional<DimCertificate> found;
    // Recursive lambdas need an explicit functor; a small Y-combinator style
    // std::function keeps this local.
    struct Dfs {
        const Params& p;
        const DimSearchOpts& opts;
        SearchLog& log;
        const std::vector<Word>& pool;
        const std::vector<Rational>& pool_a;
        const std::vector<std::size_t>& order;
        std::vector<std::size_t>& chosen;
        std::optional<DimCertificate>& found;

        void run(std::size_t start, const Rational& sum) {
            if (found) return;
            if (chosen.size() >= 2) {
                if (sum >= 1) {
                    std::vector<Word> words;
                    words.reserve(chosen.size());
                    for (std::size_t idx : chosen) words.push_back(pool[order[idx]]);
                    std::sort(words.begin(), words.end(), [](const Word& a, const Word& b) {
                        if (a.size() != b.size()) return a.size() < b.size();
                        return a < b;
                    });
                    if (auto cert = detail::try_family(p, words, "C", log, opts)) {
                        found = std::move(cert);
                        return;
                    }
                } else {
                    ++log.pruned_subsets;
                }
            }
            if (chosen.size() == static_cast<std::size_t>(opts.subset_max)) return;
            const std::size_t slots = static_cast<std::size_t>(opts.subset_max) - chosen.size();
            for (std::size_t t = start; t < order.size(); ++t) {
                // Factors are sorted descending: if even taking the current
                // candidate for every remaining slot cannot reach 1, no
                // extension from here can cover.
                if (sum + Rational(static_cast<long>(slots)) * pool_a[order[t]] < 1) {
                    ++log.pruned_subsets;
                    break;
                }
                chosen.push_back(t);
                run(t + 1, sum + pool_a[order[t]]);
                chosen.pop_back();
                if (found) return;
            }
        }
    } dfs{p, opts, log, pool, pool_a, order, chosen, found};
    dfs.run(0, Rational(0));
    res.certificate = std::move(found);
    return res;
}

// ---------------------------------------------------------------------------
// Parameter sweep: adaptive dyadic subdivision of the (lambda, mu) square.
//
// A cell is OUTSIDE when it provably misses the admissible region
// {0 < lambda < mu < 1, lambda + mu > 1}, INSIDE when it is provably
// contained in it, and BOUNDARY when it straddles at maximal depth (cells
// touching lambda + mu = 1 or mu = 1 stay BOUNDARY forever). INSIDE cells
// are tried against a dictionary of families using rectangle-parameter
// interval arithmetic; failures subdivide until the depth cap.
// ---------------------------------------------------------------------------

struct DimSweepCell {
    Interval lambda;  // exact dyadic cell bounds
    Interval mu;
    int depth = 0;
    CellStatus status = CellStatus::UNDECIDED;
    int dict_index = -1;          // which dictionary family certified the cell
    std::vector<Word> words;      // that family's words
    Rational s_lo = 1, s_hi = 2;  // uniform root bracket over the cell (certified only)
    bool product_lt_half = false; // lambda*mu certainly below 1/2 on the cell
};

struct SweepDimReport {
    int depth = 0;
    std::vector<std::vector<Word>> dictionary;
    std::vector<DimSweepCell> cells;
    Rational certified_area = 0;
    Rational undecided_area = 0;
    Rational boundary_area = 0;
    Rational outside_area = 0;
    Rational region_area = Rational(1, 4);  // exact area of the admissible region
    std::size_t certified_cells = 0;
    std::size_t undecided_cells = 0;
    std::size_t boundary_cells = 0;
    std::size_t outside_cells = 0;

    Rational coverage() const { return certified_area / region_area; }
};

inline std::vector<std::vector<Word>> default_dim_dictionary(int m_max = 4, int n_max = 4) {
    std::vector<std::vector<Word>> dict;
    for (int total = 2; total <= m_max + n_max; ++total)
        for (int m = 1; m <= m_max; ++m) {
            const int n = total - m;
            if (n < 1 || n > n_max) continue;
            dict.push_back({"0" + detail::repeat_word('1', m), detail::repeat_word('1', n)});
        }
    return dict;
}

namespace detail {

// Certified uniform root bracket over a parameter rectangle: bisection on s
// using interval evaluations, stopping when the interval evidence can no
// longer decide a side (width is limited by parameter spread, not precision).
inline void cell_root_bracket(const std::vector<ScalePairI>& scales, Rational& s_lo, Rational& s_hi,
                              int prec, int max_steps = 12) {
    s_lo = 1;
    s_hi = 2;
    if (dim_equation_lhs(scales, Rational(2), prec).hi >= 1) return;  // keep [1,2]
    for (int step = 0; step < max_steps; ++step) {
        const Rational mid = (s_lo + s_hi) / 2;
        const Interval lhs = dim_equation_lhs(scales, mid, prec);
        if (lhs.lo > 1)
            s_lo = mid;
        else if (lhs.hi < 1)
            s_hi = mid;
        else
            return;
    }
}

}  // namespace detail

inline SweepDimReport sweep_dim(int depth,
                                const std::vector<std::vector<Word>>& dictionary =
                                    default_dim_dictionary(),
                                int prec = 96) {
    if (depth < 0) throw std::invalid_argument("sweep depth must be nonnegative");
    const int cap = cap_with_env(kSweepDimCapDefault);
    if (depth > cap)
        throw std::invalid_argument("sweep depth " + std::to_string(depth) +
                                    " above cap " + std::to_string(cap));
    SweepDimReport rep;
    rep.depth = depth;
    rep.dictionary = dictionary;

    struct Frame {
        Interval l, m;
        int d;
    };
    std::vector<Frame> stack;
    stack.push_back({Interval(Rational(0), Rational(1)), Interval(Rational(0), Rational(1)), 0});
    while (!stack.empty()) {
        Frame f = stack.back();
        stack.pop_back();
        const Rational area = rat_pow(rat(1, 4), static_cast<unsigned long>(f.d));

        DimSweepCell cell;
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
        if (inside) {
            ParamRect rect(f.l, f.m);
            bool certified = false;
            for (std::size_t di = 0; di < dictionary.size() && !certified; ++di) {
                try {
                    FamilyGeometryI fam = build_family(rect, dictionary[di]);
                    RoscReport rc = rosc_check(fam);
                    if (rc.disjoint != Verdict::PASS || rc.cover != Verdict::PASS) continue;
                    const std::vector<ScalePairI> scales = family_scales(rect, dictionary[di]);
                    Interval sum_a(Rational(0));
                    for (const ScalePairI& sp : scales) sum_a = sum_a + sp.a;
                    if (!(sum_a.lo > 1)) continue;  // strict overlap in projection
                    cell.status = CellStatus::CERTIFIED;
                    cell.dict_index = static_cast<int>(di);
                    cell.words = dictionary[di];
                    detail::cell_root_bracket(scales, cell.s_lo, cell.s_hi, prec);
                    certified = true;
                } catch (const std::domain_error&) {
                    continue;  // factor enclosures too wide on this cell
                }
            }
            if (certified) {
                cell.product_lt_half = (f.l.hi * f.m.hi < rat(1, 2));
                rep.certified_area += area;
                ++rep.certified_cells;
                rep.cells.push_back(std::move(cell));
                continue;
            }
            if (f.d == depth) {
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

        const Rational lm = (f.l.lo + f.l.hi) / 2;
        const Rational mm = (f.m.lo + f.m.hi) / 2;
        stack.push_back({Interval(f.l.lo, lm), Interval(f.m.lo, mm), f.d + 1});
        stack.push_back({Interval(lm, f.l.hi), Interval(f.m.lo, mm), f.d + 1});
        stack.push_back({Interval(f.l.lo, lm), Interval(mm, f.m.hi), f.d + 1});
        stack.push_back({Interval(lm, f.l.hi), Interval(mm, f.m.hi), f.d + 1});
    }
    return rep;
}

}  // namespace afftop
