#pragma once

#include <stdexcept>
#include <string>

#include "interval.hpp"
#include "rational.hpp"

namespace afftop {

// Map-pair parameters (lambda, mu). Valid parameters satisfy
//   0 < lambda < mu < 1  and  lambda + mu > 1,
// the regime where the two planar maps overlap horizontally and the
// attractor's top boundary is the object of study.
struct Params {
    Rational lambda;
    Rational mu;

    Params(Rational l, Rational m) : lambda(std::move(l)), mu(std::move(m)) {
        if (!(0 < lambda && lambda < mu && mu < 1 && lambda + mu > 1))
            throw std::invalid_argument("parameters outside the admissible region: lambda=" +
                                        rat_str(lambda) + " mu=" + rat_str(mu));
    }
};

// Axis-aligned rectangle of parameter pairs, every point of which must be
// admissible. Used for interval evaluation over whole parameter boxes.
struct ParamRect {
    Interval lambda;
    Interval mu;

    static bool admissible(const Interval& l, const Interval& m) {
        return l.lo > 0 && l.hi < m.lo && m.hi < 1 && l.lo + m.lo > 1;
    }

    ParamRect(Interval l, Interval m) : lambda(std::move(l)), mu(std::move(m)) {
        if (!admissible(lambda, mu))
            throw std::invalid_argument("parameter rectangle leaves the admissible region: " +
                                        interval_str(lambda) + " x " + interval_str(mu));
    }

    explicit ParamRect(const Params& p) : lambda(p.lambda), mu(p.mu) {}

    Params midpoint() const { return Params(lambda.mid(), mu.mid()); }

    std::string str() const { return interval_str(lambda) + " x " + interval_str(mu); }
};

// True when the rectangle provably misses the admissible region entirely
// (used by sweeps to discard cells; the complement of this test together
// with ParamRect::admissible leaves exactly the straddling cells).
inline bool rect_outside_region(const Interval& l, const Interval& m) {
    return l.lo >= m.hi || l.hi + m.hi <= 1 || m.lo >= 1 || l.hi <= 0;
}

}  // namespace afftop
