#pragma once

#include <stdexcept>
#include <string>

#include "rational.hpp"

namespace afftop {

// Closed interval with exact rational endpoints. Arithmetic is outward-exact:
// results are the exact image intervals, no rounding is ever introduced.
struct Interval {
    Rational lo;
    Rational hi;

    Interval() : lo(0), hi(0) {}
    Interval(Rational point) : lo(point), hi(point) {}  // NOLINT(google-explicit-constructor)
    Interval(Rational l, Rational h) : lo(std::move(l)), hi(std::move(h)) {
        if (lo > hi) throw std::invalid_argument("interval with lo > hi");
    }

    bool is_point() const { return lo == hi; }
    Rational width() const { return hi - lo; }
    Rational mid() const { return (lo + hi) / 2; }
    bool contains(const Rational& q) const { return lo <= q && q <= hi; }
    bool contains(const Interval& other) const { return lo <= other.lo && other.hi <= hi; }
    bool intersects(const Interval& other) const { return lo <= other.hi && other.lo <= hi; }

    bool operator==(const Interval& o) const { return lo == o.lo && hi == o.hi; }
    bool operator!=(const Interval& o) const { return !(*this == o); }
};

inline Interval operator+(const Interval& a, const Interval& b) {
    return {a.lo + b.lo, a.hi + b.hi};
}

inline Interval operator-(const Interval& a, const Interval& b) {
    return {a.lo - b.hi, a.hi - b.lo};
}

inline Interval operator-(const Interval& a) { return {-a.hi, -a.lo}; }

inline Interval operator*(const Interval& a, const Interval& b) {
    const Rational p1 = a.lo * b.lo, p2 = a.lo * b.hi, p3 = a.hi * b.lo, p4 = a.hi * b.hi;
    return {rat_min(rat_min(p1, p2), rat_min(p3, p4)),
            rat_max(rat_max(p1, p2), rat_max(p3, p4))};
}

inline Interval operator/(const Interval& a, const Interval& b) {
    if (b.lo <= 0 && 0 <= b.hi)
        throw std::domain_error("interval division by interval containing zero");
    const Rational p1 = a.lo / b.lo, p2 = a.lo / b.hi, p3 = a.hi / b.lo, p4 = a.hi / b.hi;
    return {rat_min(rat_min(p1, p2), rat_min(p3, p4)),
            rat_max(rat_max(p1, p2), rat_max(p3, p4))};
}

inline Interval& operator+=(Interval& a, const Interval& b) { return a = a + b; }
inline Interval& operator-=(Interval& a, const Interval& b) { return a = a - b; }
inline Interval& operator*=(Interval& a, const Interval& b) { return a = a * b; }

inline Interval hull(const Interval& a, const Interval& b) {
    return {rat_min(a.lo, b.lo), rat_max(a.hi, b.hi)};
}

// Intersection of two enclosures of the same quantity. Emptiness would mean
// at least one input was not actually an enclosure, so it throws rather than
// returning something unsound.
inline Interval meet(const Interval& a, const Interval& b) {
    const Rational lo = rat_max(a.lo, b.lo);
    const Rational hi = rat_min(a.hi, b.hi);
    if (lo > hi)
        throw std::logic_error("meet of disjoint enclosures: " + std::string("[") + rat_str(a.lo) +
                               "," + rat_str(a.hi) + "] vs [" + rat_str(b.lo) + "," + rat_str(b.hi) +
                               "]");
    return {lo, hi};
}

// Certified order tests: true only when the relation holds for every pair of
// members, so a "false" answer means "not provable", not "provably false".
inline bool certainly_less(const Interval& a, const Interval& b) { return a.hi < b.lo; }
inline bool certainly_leq(const Interval& a, const Interval& b) { return a.hi <= b.lo; }
inline bool certainly_greater(const Interval& a, const Interval& b) { return a.lo > b.hi; }
inline bool certainly_geq(const Interval& a, const Interval& b) { return a.lo >= b.hi; }

inline std::string interval_str(const Interval& a) {
    return "[" + rat_str(a.lo) + ", " + rat_str(a.hi) + "]";
}

// --- generic scalar helpers so map/point code can run on Rational or Interval ---

inline Rational scalar_from_rat(const Rational& q, const Rational*) { return q; }
inline Interval scalar_from_rat(const Rational& q, const Interval*) { return Interval(q); }

template <class S>
inline S scalar_from_rat(const Rational& q) {
    return scalar_from_rat(q, static_cast<const S*>(nullptr));
}

}  // namespace afftop
