#pragma once

#include <type_traits>
#include <utility>

#include "interval.hpp"
#include "params.hpp"
#include "rational.hpp"

namespace afftop {

// First-order interval jet in the two parameters: an enclosure of a function
// value over a parameter rectangle together with enclosures of its partial
// derivatives with respect to lambda and mu. Propagating jets through an
// expression and combining them with the exact value at the rectangle center
// gives a mean-value-form enclosure, which is far tighter than plain interval
// evaluation when the same parameter occurs many times in the expression.
struct Jet {
    Interval v;   // value enclosure over the rectangle
    Interval dl;  // d/d(lambda) enclosure
    Interval dm;  // d/d(mu) enclosure

    static Jet constant(const Rational& q) {
        return {Interval(q), Interval(Rational(0)), Interval(Rational(0))};
    }
    static Jet var_lambda(const Interval& range) {
        return {range, Interval(Rational(1)), Interval(Rational(0))};
    }
    static Jet var_mu(const Interval& range) {
        return {range, Interval(Rational(0)), Interval(Rational(1))};
    }
};

inline Jet operator+(const Jet& a, const Jet& b) { return {a.v + b.v, a.dl + b.dl, a.dm + b.dm}; }
inline Jet operator-(const Jet& a, const Jet& b) { return {a.v - b.v, a.dl - b.dl, a.dm - b.dm}; }
inline Jet operator-(const Jet& a) { return {-a.v, -a.dl, -a.dm}; }
inline Jet operator*(const Jet& a, const Jet& b) {
    return {a.v * b.v, a.dl * b.v + a.v * b.dl, a.dm * b.v + a.v * b.dm};
}
inline Jet operator/(const Jet& a, const Jet& b) {
    const Interval b2 = b.v * b.v;  // denominator certainly avoids zero or this throws
    return {a.v / b.v, (a.dl * b.v - a.v * b.dl) / b2, (a.dm * b.v - a.v * b.dm) / b2};
}

inline Jet scalar_from_rat(const Rational& q, const Jet*) { return Jet::constant(q); }

// Evaluates a generic scalar expression f(lambda, mu) over a parameter
// rectangle three ways -- exactly at the center, naively in interval
// arithmetic, and in jet arithmetic for the derivative ranges -- and returns
// the intersection of the naive enclosure with the mean-value form
//   f(center) + df/dl * (lambda - center) + df/dm * (mu - center).
// f must be callable with both arguments Rational, both Interval, and both
// Jet, returning that same scalar type.
template <class F>
Interval tight_eval(const ParamRect& pr, F&& f) {
    // The callable must return the scalar type itself. A deduced return type
    // would hand back a GMP expression template that references locals of f
    // after they are gone; rejecting it here turns that into a compile error.
    static_assert(
        std::is_same_v<decltype(f(std::declval<const Rational&>(), std::declval<const Rational&>())),
                       Rational>,
        "tight_eval expression must return Rational by value, not an expression template");
    const Interval naive = f(pr.lambda, pr.mu);
    if (pr.lambda.lo == pr.lambda.hi && pr.mu.lo == pr.mu.hi) return naive;  // exact point
    const Params c = pr.midpoint();
    const Rational at_center = f(c.lambda, c.mu);
    const Jet j = f(Jet::var_lambda(pr.lambda), Jet::var_mu(pr.mu));
    const Interval mv = Interval(at_center) + j.dl * (pr.lambda - Interval(c.lambda)) +
                        j.dm * (pr.mu - Interval(c.mu));
    return meet(naive, mv);
}

// Same, after subdividing the rectangle `splits` times in both axes (the
// returned interval is the hull over all 4^splits pieces). Internal
// refinement sharpens enclosures without changing what is being certified.
template <class F>
Interval tight_eval_refined(const ParamRect& pr, F&& f, int splits) {
    if (splits <= 0) return tight_eval(pr, f);
    const Rational lm = pr.lambda.mid();
    const Rational mm = pr.mu.mid();
    Interval out =
        tight_eval_refined(ParamRect(Interval(pr.lambda.lo, lm), Interval(pr.mu.lo, mm)), f,
                           splits - 1);
    out = hull(out, tight_eval_refined(
                        ParamRect(Interval(lm, pr.lambda.hi), Interval(pr.mu.lo, mm)), f,
                        splits - 1));
    out = hull(out, tight_eval_refined(
                        ParamRect(Interval(pr.lambda.lo, lm), Interval(mm, pr.mu.hi)), f,
                        splits - 1));
    out = hull(out, tight_eval_refined(
                        ParamRect(Interval(lm, pr.lambda.hi), Interval(mm, pr.mu.hi)), f,
                        splits - 1));
    return out;
}

}  // namespace afftop
