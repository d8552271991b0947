#pragma once
// Monotone curve enclosures of the maximal attractor B extracted from the
// exact level-n polygon towers.

#include "afftop/curve.hpp"
#include "afftop/ylevel.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <vector>

namespace afftop {

// A two-sided piecewise-linear enclosure of the graph of B over [0,1].
//
// Construction: for every maximal x-slab not crossing any piece's bounding
// box edge, the stack of boxes covering the slab gives a lower step (least
// box bottom) and an upper step (greatest box top); the graph of B runs
// inside that stack. Steps are then monotonized — valid because B is a
// nondecreasing graph — and turned into continuous curves: the lower curve
// delays each step's rise by one slab (a pointwise minorant of the lower
// steps), the upper curve completes each rise at the step start (a pointwise
// majorant).
//
// Corner closure: the honest lower steps end at x=1 slightly below 1, and
// the honest upper steps start at x=0 slightly above 0. Both corners belong
// to B exactly, so the returned curves are pinned to (0,0) and (1,1); the
// pinned first slab of `upper` (x in [0, sliver_left]) and last slab of
// `lower` (x in [sliver_right, 1]) are interpolations to a known point of B
// rather than box-certified bounds. Both slivers shrink geometrically in n.
struct BEnclosure {
    int level = 0;
    MonotoneCurve lower, upper;
    Rational width;         // sup of (upper - lower) over [0,1], exact
    Rational sliver_left;   // upper is corner-pinned on [0, sliver_left]
    Rational sliver_right;  // lower is corner-pinned on [sliver_right, 1]
};

inline BEnclosure b_enclosure(const Params& p, int n) {
    if (n < 1) throw std::invalid_argument("enclosure level must be >= 1");
    YLevel lvl = build_y(p, n);

    struct Box {
        Rational xmin, xmax, ymin, ymax;
    };
    std::vector<Box> boxes;
    std::vector<Rational> cuts;
    for (const YPiece& piece : lvl.pieces) {
        if (piece.collapsed) continue;
        Box b;
        piece.poly.bbox(b.xmin, b.xmax, b.ymin, b.ymax);
        if (b.xmin == b.xmax) continue;  // vertical segment: no x-extent
        cuts.push_back(b.xmin);
        cuts.push_back(b.xmax);
        boxes.push_back(std::move(b));
    }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    const std::size_t m = cuts.size() - 1;  // number of slabs
    if (m == 0) throw std::logic_error("no x-extent in level pieces");
    if (!(cuts.front() == 0) || !(cuts.back() == 1))
        throw std::logic_error("level pieces do not span [0,1] in x");

    std::map<Rational, std::vector<std::size_t>> starts, ends;
    for (std::size_t i = 0; i < boxes.size(); ++i) {
        starts[boxes[i].xmin].push_back(i);
        ends[boxes[i].xmax].push_back(i);
    }

    std::vector<Rational> L(m), U(m);
    std::multiset<Rational> bottoms, tops;
    for (std::size_t i = 0; i < m; ++i) {
        if (auto it = starts.find(cuts[i]); it != starts.end())
            for (std::size_t b : it->second) {
                bottoms.insert(boxes[b].ymin);
                tops.insert(boxes[b].ymax);
            }
        if (auto it = ends.find(cuts[i]); it != ends.end())
            for (std::size_t b : it->second) {
                bottoms.erase(bottoms.find(boxes[b].ymin));
                tops.erase(tops.find(boxes[b].ymax));
            }
        if (bottoms.empty())
            throw std::logic_error("enclosure gap: no piece covers an x-slab");
        L[i] = *bottoms.begin();
        U[i] = *tops.rbegin();
    }

    // monotonize: B is a nondecreasing graph, so prefix-max of lower steps
    // and suffix-min of upper steps remain valid bounds
    for (std::size_t i = 1; i < m; ++i) L[i] = rat_max(L[i], L[i - 1]);
    for (std::size_t i = m - 1; i-- > 0;) U[i] = rat_min(U[i], U[i + 1]);

    BEnclosure enc;
    enc.level = n;
    enc.sliver_left = cuts[1];
    enc.sliver_right = cuts[m - 1];

    // lower minorant: constant on the first slab, each later segment rises
    // only to the PREVIOUS slab's step value; corner-pinned to (1,1)
    {
        std::vector<PointQ> vs;
        vs.push_back({cuts[0], L[0]});
        for (std::size_t i = 1; i <= m; ++i) vs.push_back({cuts[i], L[i - 1]});
        vs.back().y = Rational(1);
        enc.lower = MonotoneCurve(detail::compress_chain(vs));
    }
    // upper majorant: each segment rises to the NEXT slab's step value
    // already at the step start; corner-pinned to (0,0)
    {
        std::vector<PointQ> vs;
        vs.push_back({cuts[0], Rational(0)});
        for (std::size_t i = 1; i < m; ++i) vs.push_back({cuts[i], U[i]});
        vs.push_back({cuts[m], U[m - 1]});
        enc.upper = MonotoneCurve(detail::compress_chain(vs));
    }

    DiffStats d = vertical_difference(enc.upper, enc.lower);
    enc.width = d.max_diff;
    return enc;
}

}  // namespace afftop
