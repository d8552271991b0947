#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace afftop {

// Exact arbitrary-precision rational. All certified arithmetic in this
// library is closed over these; floating point appears only in rendering
// and estimation code.
using Rational = mpq_class;

inline Rational rat(long num, long den = 1) {
    if (den == 0) throw std::domain_error("rational with zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

// Parses "p/q", plain integers, and decimal strings ("0.4" -> 2/5).
inline Rational parse_rational(const std::string& text) {
    if (text.empty()) throw std::invalid_argument("empty rational literal");
    const auto dot = text.find('.');
    if (dot != std::string::npos) {
        if (text.find('/') != std::string::npos)
            throw std::invalid_argument("rational literal mixes '.' and '/': " + text);
        std::string digits = text.substr(0, dot) + text.substr(dot + 1);
        const std::size_t frac_len = text.size() - dot - 1;
        if (frac_len == 0) throw std::invalid_argument("trailing dot in rational literal: " + text);
        mpz_class num, den(1);
        if (num.set_str(digits, 10) != 0)
            throw std::invalid_argument("bad rational literal: " + text);
        for (std::size_t i = 0; i < frac_len; ++i) den *= 10;
        Rational q(num, den);
        q.canonicalize();
        return q;
    }
    Rational q;
    if (q.set_str(text, 10) != 0)
        throw std::invalid_argument("bad rational literal: " + text);
    if (q.get_den() == 0) throw std::domain_error("rational with zero denominator: " + text);
    q.canonicalize();
    return q;
}

// Canonical "p/q" form ("p" when q == 1); inverse of parse_rational.
inline std::string rat_str(const Rational& q) {
    return q.get_str();
}

inline double to_double(const Rational& q) { return q.get_d(); }

inline Rational rat_abs(const Rational& q) { return q < 0 ? Rational(-q) : q; }

inline Rational rat_min(const Rational& a, const Rational& b) { return a < b ? a : b; }
inline Rational rat_max(const Rational& a, const Rational& b) { return a < b ? b : a; }

// floor(q) as an integer-valued rational.
inline mpz_class rat_floor(const Rational& q) {
    mpz_class f;
    mpz_fdiv_q(f.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return f;
}

// q^k for k >= 0.
inline Rational rat_pow(const Rational& q, unsigned long k) {
    Rational r;
    mpz_pow_ui(r.get_num().get_mpz_t(), q.get_num().get_mpz_t(), k);
    mpz_pow_ui(r.get_den().get_mpz_t(), q.get_den().get_mpz_t(), k);
    return r;
}

// 2^-k as a rational.
inline Rational dyadic_unit(unsigned k) {
    mpz_class den(1);
    mpz_mul_2exp(den.get_mpz_t(), den.get_mpz_t(), k);
    Rational q(1, den);
    q.canonicalize();
    return q;
}

}  // namespace afftop
