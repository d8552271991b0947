#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "interval.hpp"
#include "limits.hpp"
#include "params.hpp"
#include "rational.hpp"
#include "verdict.hpp"
#include "word.hpp"

namespace afftop {

// ---------------------------------------------------------------------------
// Exact non-empty-interior predicates for the attractor. Both tests reduce to
// a closed rational inequality on a product of determinants; the irrational
// threshold (a power of 1/sqrt(2)) is never evaluated -- every comparison is
// squared into exact rational arithmetic first.
// ---------------------------------------------------------------------------

// 2x2 rational matrix, row-major [[a, b], [c, d]].
struct Matrix2 {
    Rational a, b, c, d;

    static Matrix2 diag(const Rational& x, const Rational& y) {
        return {x, Rational(0), Rational(0), y};
    }

    Rational det() const { return a * d - b * c; }
    Rational trace() const { return a + d; }

    bool operator==(const Matrix2& o) const {
        return a == o.a && b == o.b && c == o.c && d == o.d;
    }

    // Scalar multiple of the identity: exact entry tests.
    bool is_scalar() const { return b == 0 && c == 0 && a == d; }

    // Both eigenvalues strictly inside the unit disk, decided exactly from
    // the characteristic polynomial x^2 - t x + D (Schur--Cohn conditions
    // for a real quadratic: |D| < 1 and |t| < 1 + D).
    bool spectral_radius_lt_one() const {
        const Rational t = trace();
        const Rational D = det();
        return rat_abs(D) < 1 && rat_abs(t) < 1 + D;
    }
};

inline Matrix2 operator*(const Matrix2& m, const Matrix2& n) {
    return {m.a * n.a + m.b * n.c, m.a * n.b + m.b * n.d, m.c * n.a + m.d * n.c,
            m.c * n.b + m.d * n.d};
}

enum class InteriorCase { NON_SCALAR, SCALAR, NOT_APPLICABLE };

inline std::string interior_case_str(InteriorCase c) {
    switch (c) {
        case InteriorCase::NON_SCALAR: return "NON_SCALAR";
        case InteriorCase::SCALAR: return "SCALAR";
        default: return "NOT_APPLICABLE";
    }
}

// Outcome of an interior test. `holds` is the exact comparison result; a
// true verdict asserts non-empty interior via the commuting-matrix theorem,
// with `witness` naming the two-map sub-IFS realizing the hypothesis. The
// contraction flags are informational (reported, never gating).
struct InteriorVerdict {
    InteriorCase branch = InteriorCase::NOT_APPLICABLE;
    bool holds = false;
    bool commuting = false;
    Rational det_tested = 0;    // determinant entering the squared inequality
    Rational twice_square = 0;  // 2 * det_tested^2, compared against 1
    std::vector<Word> witness;  // composition words of the sub-IFS
    bool m0_contracting = false;
    bool m1_contracting = false;
    std::string note;
};

// General commuting-matrix test for the pair {x -> M0 x, x -> M1 x + u}.
// The translation u plays no role in the hypothesis; it is accepted so call
// sites can pass the full IFS. Applicability requires exact commutativity
// and invertibility of both linear parts. With M = M0 M1:
//   M not scalar: interior is non-empty when 2 (det M)^2 >= 1,
//                 witnessed by {T0 T1, T1 T0};
//   M scalar:     interior is non-empty when 2 (det M0^2 M1)^2 >= 1,
//                 witnessed by {T0 T1 T0, T0^2 T1}.
inline InteriorVerdict interior_general(const Matrix2& M0, const Matrix2& M1,
                                        const std::pair<Rational, Rational>& u = {Rational(0),
                                                                                  Rational(0)}) {
    (void)u;
    InteriorVerdict out;
    out.m0_contracting = M0.spectral_radius_lt_one();
    out.m1_contracting = M1.spectral_radius_lt_one();
    if (!(M0 * M1 == M1 * M0)) {
        out.note = "linear parts do not commute";
        return out;
    }
    out.commuting = true;
    if (M0.det() == 0 || M1.det() == 0) {
        out.note = "linear part singular";
        return out;
    }
    const Matrix2 M = M0 * M1;
    if (!M.is_scalar()) {
        out.branch = InteriorCase::NON_SCALAR;
        out.det_tested = M.det();
        out.witness = {Word("01"), Word("10")};
    } else {
        out.branch = InteriorCase::SCALAR;
        out.det_tested = (M0 * M0 * M1).det();
        out.witness = {Word("010"), Word("001")};
    }
    out.twice_square = 2 * out.det_tested * out.det_tested;
    out.holds = out.twice_square >= 1;
    return out;
}

// Interior test for the diagonal family itself: with M0 = diag(lambda, mu)
// and M1 = diag(mu, lambda), M = M0 M1 = (lambda mu) I is scalar, so the
// test is 2 (lambda mu)^6 >= 1 -- equivalent to lambda mu >= 2^(-1/6) but
// decided without ever forming the irrational threshold.
inline InteriorVerdict interior_diag(const Params& p) {
    const Rational q = p.lambda * p.mu;
    InteriorVerdict out;
    out.branch = InteriorCase::SCALAR;
    out.commuting = true;
    out.det_tested = q * q * q;
    out.twice_square = 2 * out.det_tested * out.det_tested;
    out.holds = out.twice_square >= 1;
    out.witness = {Word("010"), Word("001")};
    out.m0_contracting = true;  // diagonal entries in (0, 1) by Params validity
    out.m1_contracting = true;
    return out;
}

// The two diagonal linear parts induced by a parameter pair, for feeding
// interior_general in agreement tests.
inline std::pair<Matrix2, Matrix2> diag_linear_parts(const Params& p) {
    return {Matrix2::diag(p.lambda, p.mu), Matrix2::diag(p.mu, p.lambda)};
}

// ---------------------------------------------------------------------------
// Parameter sweep for the diagonal interior test. Unlike the witness-based
// sweeps, the predicate here is an exact equivalence in the product q =
// lambda mu, which is monotone over a cell: TRUE everywhere iff it holds at
// the lower-left product, FALSE everywhere iff it fails at the upper-right.
// Cells therefore resolve to CERTIFIED or REFUTED except along the threshold
// curve and the region boundary.
// ---------------------------------------------------------------------------

struct InteriorSweepCell {
    Interval lambda;
    Interval mu;
    int depth = 0;
    CellStatus status = CellStatus::UNDECIDED;
};

struct SweepInteriorReport {
    int depth = 0;
    std::vector<InteriorSweepCell> cells;
    Rational certified_area = 0;
    Rational refuted_area = 0;
    Rational undecided_area = 0;
    Rational boundary_area = 0;
    Rational outside_area = 0;
    Rational region_area = Rational(1, 4);
    std::size_t certified_cells = 0;
    std::size_t refuted_cells = 0;
    std::size_t undecided_cells = 0;
    std::size_t boundary_cells = 0;
    std::size_t outside_cells = 0;

    Rational coverage() const { return certified_area / region_area; }
};

// True when 2 q^6 >= 1 for the exact rational product q (the closed-form
// interior condition with the irrational threshold squared away).
inline bool interior_product_holds(const Rational& q) {
    return 2 * rat_pow(q, 6) >= 1;
}

inline SweepInteriorReport sweep_interior(int depth) {
    if (depth < 0) throw std::invalid_argument("sweep depth must be nonnegative");
    const int cap = cap_with_env(kSweepInteriorCapDefault);
    if (depth > cap)
        throw std::invalid_argument("sweep depth " + std::to_string(depth) + " above cap " +
                                    std::to_string(cap));
    SweepInteriorReport rep;
    rep.depth = depth;
    struct Frame {
        Interval l, m;
        int d;
    };
    std::vector<Frame> stack;
    stack.push_back({Interval(Rational(0), Rational(1)), Interval(Rational(0), Rational(1)), 0});
    while (!stack.empty()) {
        const Frame f = stack.back();
        stack.pop_back();
        const Rational area = rat_pow(rat(1, 4), static_cast<unsigned long>(f.d));
        InteriorSweepCell cell{f.l, f.m, f.d, CellStatus::UNDECIDED};

        if (rect_outside_region(f.l, f.m)) {
            cell.status = CellStatus::OUTSIDE;
            rep.outside_area += area;
            ++rep.outside_cells;
            rep.cells.push_back(cell);
            continue;
        }
        if (ParamRect::admissible(f.l, f.m)) {
            if (interior_product_holds(f.l.lo * f.m.lo)) {
                cell.status = CellStatus::CERTIFIED;
                rep.certified_area += area;
                ++rep.certified_cells;
                rep.cells.push_back(cell);
                continue;
            }
            if (!interior_product_holds(f.l.hi * f.m.hi)) {
                cell.status = CellStatus::REFUTED;
                rep.refuted_area += area;
                ++rep.refuted_cells;
                rep.cells.push_back(cell);
                continue;
            }
            if (f.d == depth) {
                cell.status = CellStatus::UNDECIDED;
                rep.undecided_area += area;
                ++rep.undecided_cells;
                rep.cells.push_back(cell);
                continue;
            }
        } else if (f.d == depth) {
            cell.status = CellStatus::BOUNDARY;
            rep.boundary_area += area;
            ++rep.boundary_cells;
            rep.cells.push_back(cell);
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
