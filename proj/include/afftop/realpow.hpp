#pragma once

#include <mpfr.h>

#include <stdexcept>

#include "interval.hpp"
#include "rational.hpp"

namespace afftop {

namespace detail {

// Exact rational value of an mpfr number (mpfr values are dyadic, so this
// loses nothing; rounding direction chosen upstream is preserved).
inline Rational rational_of_mpfr(mpfr_t f) {
    if (mpfr_zero_p(f)) return Rational(0);
    if (!mpfr_number_p(f)) throw std::overflow_error("rational_of_mpfr: non-finite value");
    mpz_class z;
    mpfr_exp_t e = mpfr_get_z_2exp(z.get_mpz_t(), f);
    Rational r(z);
    if (e >= 0)
        r <<= static_cast<unsigned long>(e);
    else
        r >>= static_cast<unsigned long>(-e);
    return r;
}

}  // namespace detail

// Enclosure of base^exponent for exact rational base > 0 and any rational
// exponent.  The only approximation is MPFR's working precision: arguments
// are rounded outward onto prec-bit floats, then mpfr_pow is evaluated with
// directed rounding in the monotonicity direction decided by the exact signs
// of (exponent) and (base - 1).  Width shrinks like 2^-prec, far below every
// tolerance used by callers.
inline Interval pow_enclosure(const Rational& base, const Rational& exponent, int prec = 128) {
    if (base <= 0) throw std::domain_error("pow_enclosure: base must be positive");
    if (exponent == 0 || base == 1) return Interval(Rational(1));
    // Integer exponents are exact in rational arithmetic.
    if (exponent.get_den() == 1) {
        const mpz_class& n = exponent.get_num();
        if (n.fits_slong_p()) {
            long k = n.get_si();
            Rational r = k >= 0 ? rat_pow(base, static_cast<unsigned long>(k))
                                : Rational(1) / rat_pow(base, static_cast<unsigned long>(-k));
            return Interval(r);
        }
    }

    mpfr_t b_lo, b_hi, e_lo, e_hi, r_lo, r_hi;
    mpfr_inits2(prec, b_lo, b_hi, e_lo, e_hi, r_lo, r_hi, static_cast<mpfr_ptr>(nullptr));
    mpfr_set_q(b_lo, base.get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(b_hi, base.get_mpq_t(), MPFR_RNDU);
    mpfr_set_q(e_lo, exponent.get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(e_hi, exponent.get_mpq_t(), MPFR_RNDU);

    // b^e is increasing in b iff e > 0, increasing in e iff b > 1.
    const bool inc_in_b = exponent > 0;
    const bool inc_in_e = base > 1;
    mpfr_pow(r_lo, inc_in_b ? b_lo : b_hi, inc_in_e ? e_lo : e_hi, MPFR_RNDD);
    mpfr_pow(r_hi, inc_in_b ? b_hi : b_lo, inc_in_e ? e_hi : e_lo, MPFR_RNDU);

    Rational lo = detail::rational_of_mpfr(r_lo);
    Rational hi = detail::rational_of_mpfr(r_hi);
    mpfr_clears(b_lo, b_hi, e_lo, e_hi, r_lo, r_hi, static_cast<mpfr_ptr>(nullptr));
    if (lo < 0) lo = 0;  // powers of a positive base are positive
    return Interval(lo, hi);
}

// Range enclosure of b^exponent over b in a positive interval: the map is
// monotone in the base (increasing for positive exponents), so endpoint
// enclosures hulled together cover the whole range.
inline Interval pow_enclosure(const Interval& base, const Rational& exponent, int prec = 128) {
    if (base.lo <= 0) throw std::domain_error("pow_enclosure needs a certainly positive base");
    if (exponent == 0) return Interval(Rational(1));
    const Interval at_lo = pow_enclosure(base.lo, exponent, prec);
    const Interval at_hi = pow_enclosure(base.hi, exponent, prec);
    return exponent > 0 ? Interval(at_lo.lo, at_hi.hi) : Interval(at_hi.lo, at_lo.hi);
}

// Convenience: double approximation of base^exponent (midpoint of a modest
// enclosure), for reporting only.
inline double pow_approx(const Rational& base, const Rational& exponent) {
    Interval e = pow_enclosure(base, exponent, 64);
    return to_double(e.mid());
}

}  // namespace afftop
