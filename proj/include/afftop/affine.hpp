#pragma once

#include <string>

#include "interval.hpp"
#include "params.hpp"
#include "rational.hpp"
#include "word.hpp"

namespace afftop {

template <class S>
struct PointT {
    S x;
    S y;
    bool operator==(const PointT& o) const { return x == o.x && y == o.y; }
};

using PointQ = PointT<Rational>;
using PointI = PointT<Interval>;

// Axis-aligned affine planar map  (x, y) |-> (ax*x + ex, dy*y + fy).
// Both generator maps and all their compositions have this shape, which is
// why rectangles map to rectangles throughout.
template <class S>
struct DiagMapT {
    S ax, ex, dy, fy;

    PointT<S> operator()(const PointT<S>& p) const { return {ax * p.x + ex, dy * p.y + fy}; }

    static DiagMapT identity() {
        return {scalar_from_rat<S>(1), scalar_from_rat<S>(0), scalar_from_rat<S>(1),
                scalar_from_rat<S>(0)};
    }
};

using DiagMap = DiagMapT<Rational>;
using DiagMapI = DiagMapT<Interval>;

// The two generators:
//   symbol '0':  (x, y) |-> (lambda*x,        mu*y)
//   symbol '1':  (x, y) |-> (mu*x + 1 - mu,   lambda*y + 1 - lambda)
template <class S>
DiagMapT<S> map_for_symbol(const S& lambda, const S& mu, char symbol) {
    const S one = scalar_from_rat<S>(1);
    if (symbol == '0') return {lambda, scalar_from_rat<S>(0), mu, scalar_from_rat<S>(0)};
    if (symbol == '1') return {mu, one - mu, lambda, one - lambda};
    throw std::invalid_argument(std::string("unknown map symbol: ") + symbol);
}

inline DiagMap map_for_symbol(const Params& p, char symbol) {
    return map_for_symbol<Rational>(p.lambda, p.mu, symbol);
}

inline DiagMapI map_for_symbol(const ParamRect& p, char symbol) {
    return map_for_symbol<Interval>(p.lambda, p.mu, symbol);
}

// Composition f after g: (f o g)(p) = f(g(p)).
template <class S>
DiagMapT<S> compose(const DiagMapT<S>& f, const DiagMapT<S>& g) {
    return {f.ax * g.ax, f.ax * g.ex + f.ex, f.dy * g.dy, f.dy * g.fy + f.fy};
}

// T_{w[0]} o T_{w[1]} o ... o T_{w[n-1]}; the empty word gives the identity.
template <class S>
DiagMapT<S> word_map(const S& lambda, const S& mu, const Word& w) {
    check_word(w);
    DiagMapT<S> m = DiagMapT<S>::identity();
    for (char c : w) m = compose(m, map_for_symbol<S>(lambda, mu, c));
    return m;
}

inline DiagMap word_map(const Params& p, const Word& w) {
    return word_map<Rational>(p.lambda, p.mu, w);
}

inline DiagMapI word_map(const ParamRect& p, const Word& w) {
    return word_map<Interval>(p.lambda, p.mu, w);
}

// Unique fixed point of a map whose axis factors differ from 1; for the
// contractions arising from nonempty words both factors lie in (0, 1).
template <class S>
PointT<S> fixed_point(const DiagMapT<S>& m) {
    const S one = scalar_from_rat<S>(1);
    return {m.ex / (one - m.ax), m.fy / (one - m.dy)};
}

// Point coded by the eventually periodic word u(v): the image under the
// prefix map of the fixed point of the period map.
template <class S>
PointT<S> point_of_word(const S& lambda, const S& mu, const EPWord& w) {
    const PointT<S> cycle = fixed_point(word_map<S>(lambda, mu, w.period));
    return word_map<S>(lambda, mu, w.prefix)(cycle);
}

inline PointQ point_of_word(const Params& p, const EPWord& w) {
    return point_of_word<Rational>(p.lambda, p.mu, w);
}

inline PointI point_of_word(const ParamRect& p, const EPWord& w) {
    return point_of_word<Interval>(p.lambda, p.mu, w);
}

// The involution conjugating the two generators: mirror_point o T0 = T1 o mirror_point.
template <class S>
PointT<S> mirror_point(const PointT<S>& p) {
    const S one = scalar_from_rat<S>(1);
    return {one - p.y, one - p.x};
}

}  // namespace afftop
