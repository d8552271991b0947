#pragma once

#include <string>

#include "interval.hpp"
#include "rational.hpp"

namespace afftop {

// Three-valued certification outcome.  PASS and FAIL are proved; UNDECIDED
// means the interval evidence straddles a boundary and only subdivision (or
// exact point arithmetic) can settle it.  UNDECIDED is never treated as a
// negative claim.
enum class Verdict { PASS, FAIL, UNDECIDED };

inline std::string verdict_str(Verdict v) {
    switch (v) {
        case Verdict::PASS: return "PASS";
        case Verdict::FAIL: return "FAIL";
        default: return "UNDECIDED";
    }
}

// Status of one dyadic parameter cell in an adaptive sweep. REFUTED is used
// only by sweeps whose predicate is an exact equivalence (the cell provably
// fails everywhere); witness-based sweeps report UNDECIDED instead, since a
// failed witness says nothing about the property itself.
enum class CellStatus { CERTIFIED, REFUTED, UNDECIDED, BOUNDARY, OUTSIDE };

inline std::string cell_status_str(CellStatus s) {
    switch (s) {
        case CellStatus::CERTIFIED: return "CERTIFIED";
        case CellStatus::REFUTED: return "REFUTED";
        case CellStatus::UNDECIDED: return "UNDECIDED";
        case CellStatus::BOUNDARY: return "BOUNDARY";
        default: return "OUTSIDE";
    }
}

inline Verdict tri_and(Verdict a, Verdict b) {
    if (a == Verdict::FAIL || b == Verdict::FAIL) return Verdict::FAIL;
    if (a == Verdict::PASS && b == Verdict::PASS) return Verdict::PASS;
    return Verdict::UNDECIDED;
}

inline Verdict tri_or(Verdict a, Verdict b) {
    if (a == Verdict::PASS || b == Verdict::PASS) return Verdict::PASS;
    if (a == Verdict::FAIL && b == Verdict::FAIL) return Verdict::FAIL;
    return Verdict::UNDECIDED;
}

// Three-valued comparisons, exact for rationals and certified for intervals.
inline Verdict tri_less(const Rational& a, const Rational& b) {
    return a < b ? Verdict::PASS : Verdict::FAIL;
}
inline Verdict tri_leq(const Rational& a, const Rational& b) {
    return a <= b ? Verdict::PASS : Verdict::FAIL;
}
inline Verdict tri_less(const Interval& a, const Interval& b) {
    if (certainly_less(a, b)) return Verdict::PASS;
    if (a.lo >= b.hi) return Verdict::FAIL;
    return Verdict::UNDECIDED;
}
inline Verdict tri_leq(const Interval& a, const Interval& b) {
    if (certainly_leq(a, b)) return Verdict::PASS;
    if (a.lo > b.hi) return Verdict::FAIL;
    return Verdict::UNDECIDED;
}
template <class S>
Verdict tri_greater(const S& a, const S& b) {
    return tri_less(b, a);
}
template <class S>
Verdict tri_geq(const S& a, const S& b) {
    return tri_leq(b, a);
}

// Scalar min/max that work for exact rationals and as sound enclosures of
// the parametrized min/max for intervals (min and max are monotone in each
// argument, so taking them endpoint-wise encloses the image).
inline Rational smin(const Rational& a, const Rational& b) { return rat_min(a, b); }
inline Rational smax(const Rational& a, const Rational& b) { return rat_max(a, b); }
inline Interval smin(const Interval& a, const Interval& b) {
    return {rat_min(a.lo, b.lo), rat_min(a.hi, b.hi)};
}
inline Interval smax(const Interval& a, const Interval& b) {
    return {rat_max(a.lo, b.lo), rat_max(a.hi, b.hi)};
}

inline const Rational& scalar_lo(const Rational& a) { return a; }
inline const Rational& scalar_lo(const Interval& a) { return a.lo; }
inline const Rational& scalar_hi(const Rational& a) { return a; }
inline const Rational& scalar_hi(const Interval& a) { return a.hi; }

}  // namespace afftop
