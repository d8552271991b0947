#include <catch2/catch_amalgamated.hpp>

#include "afftop/benclosure.hpp"
#include "afftop/cover.hpp"

using namespace afftop;

namespace {

MonotoneCurve segment(Rational x0, Rational y0, Rational x1, Rational y1) {
    return MonotoneCurve({{x0, y0}, {x1, y1}});
}

}  // namespace

TEST_CASE("box cover grid basics") {
    BoxCover c(2);
    REQUIRE(c.N == 4);
    REQUIRE(c.cells.size() == 16);
    CHECK(c.occupied == 0);
    c.mark(1, 2);
    c.mark(1, 2);  // idempotent
    CHECK(c.occupied == 1);
    CHECK(c.occupied_at(1, 2));
    CHECK_FALSE(c.occupied_at(2, 1));

    CHECK_THROWS_AS(BoxCover(-1), std::invalid_argument);
    CHECK_THROWS_AS(BoxCover(16), std::invalid_argument);
}

TEST_CASE("depth-0 cover marks the whole grid") {
    BoxCover c = attractor_cover(Params(rat(2, 5), rat(9, 10)), 3, 0);
    CHECK(c.occupied == 64);
}

TEST_CASE("depth-1 cover at (2/5, 9/10) marks exactly the two generator rectangles") {
    // T0([0,1]^2) = [0,2/5] x [0,9/10] -> columns 0..1, rows 0..3 on a 4x4 grid;
    // T1([0,1]^2) = [1/10,1] x [3/5,1] -> columns 0..3, rows 2..3.  Union: 12 cells.
    BoxCover c = attractor_cover(Params(rat(2, 5), rat(9, 10)), 2, 1);
    CHECK(c.occupied == 12);
    CHECK(c.occupied_at(0, 0));
    CHECK(c.occupied_at(3, 3));
    CHECK(c.occupied_at(2, 3));
    CHECK_FALSE(c.occupied_at(0, 2));
    CHECK_FALSE(c.occupied_at(1, 3));
}

TEST_CASE("deeper covers shed cells but keep the x-projection full") {
    Params p(rat(2, 5), rat(9, 10));
    BoxCover shallow = attractor_cover(p, 5, 4);
    BoxCover deep = attractor_cover(p, 5, 8);
    CHECK(deep.occupied < shallow.occupied);
    for (int r = 0; r < 32; ++r)
        for (int col = 0; col < 32; ++col)
            if (deep.occupied_at(r, col)) CHECK(shallow.occupied_at(r, col));
    for (int v : deep.topmost_rows()) CHECK(v >= 0);
}

TEST_CASE("exact covers are mirror-symmetric cell sets") {
    Params p(rat(2, 5), rat(9, 10));
    CHECK(attractor_cover(p, 7, 12).mirror_mismatch() == 0);
    Params q(rat(9, 20), rat(3, 5));
    CHECK(attractor_cover(q, 6, 10).mirror_mismatch() == 0);
}

TEST_CASE("cover depth is capped") {
    Params p(rat(2, 5), rat(9, 10));
    CHECK_THROWS_AS(attractor_cover(p, 4, 1000), std::invalid_argument);
    CHECK_THROWS_AS(attractor_cover(p, 4, -1), std::invalid_argument);
}

TEST_CASE("diameter-driven cover agrees with small exact cover scales") {
    Params p(rat(2, 5), rat(9, 10));
    BoxCover c = attractor_cover_diameter(p, 5);
    CHECK_FALSE(c.depth_capped);
    CHECK(c.occupied > 0);
    // every diameter-cover cell meets the depth-6 rectangle union
    BoxCover exact = attractor_cover(p, 5, 6);
    for (int r = 0; r < 32; ++r)
        for (int col = 0; col < 32; ++col)
            if (c.occupied_at(r, col)) CHECK(exact.occupied_at(r, col));
}

TEST_CASE("topmost staircase of the diagonal cover is the diagonal") {
    BoxCover c = diagonal_cover(3);
    CHECK(c.occupied == 8);
    CHECK(c.mirror_mismatch() == 0);
    std::vector<int> top = c.topmost_rows();
    for (int j = 0; j < 8; ++j) CHECK(top[j] == j);
}

TEST_CASE("curve-vs-staircase distance on constructed cases") {
    // The diagonal curve sits exactly inside the diagonal cover's cells.
    MonotoneCurve diag = segment(rat(0), rat(0), rat(1), rat(1));
    StaircaseCompare same = curve_vs_topmost(diag, diagonal_cover(3));
    CHECK(same.all_within);
    CHECK(same.max_distance == 0);
    CHECK(same.max_curve_above == rat(-1, 8));

    // y = x/2 falls 3/8 below the diagonal staircase at the last column.
    MonotoneCurve half = segment(rat(0), rat(0), rat(1), rat(1, 2));
    StaircaseCompare far = curve_vs_topmost(half, diagonal_cover(3));
    CHECK_FALSE(far.all_within);
    CHECK(far.max_distance == rat(3, 8));
    CHECK(far.worst_column == 7);

    MonotoneCurve off = segment(rat(0), rat(0), rat(1, 2), rat(1));
    CHECK_THROWS_AS(curve_vs_topmost(off, diagonal_cover(3)), std::invalid_argument);
}

TEST_CASE("mirror gap vanishes for the diagonal and flags an asymmetric curve") {
    MonotoneCurve diag = segment(rat(0), rat(0), rat(1), rat(1));
    MirrorCompare sym = mirror_symmetry_gap(diag, 4);
    CHECK(sym.all_within);
    CHECK(sym.max_distance == 0);

    MonotoneCurve skew({{rat(0), rat(0)}, {rat(1, 2), rat(7, 8)}, {rat(1), rat(1)}});
    MirrorCompare bad = mirror_symmetry_gap(skew, 4);
    CHECK_FALSE(bad.all_within);
    CHECK(bad.max_distance > rat(1, 16));

    CHECK_THROWS_AS(mirror_symmetry_gap(segment(rat(0), rat(0), rat(1), rat(1, 2)), 3),
                    std::invalid_argument);
}

TEST_CASE("box-dimension fit recovers exact power laws") {
    std::vector<std::size_t> line;
    for (int k = 4; k <= 9; ++k) line.push_back(diagonal_cover(k).occupied);
    BoxDimEstimate e1 = fit_box_dim(4, line);
    CHECK(e1.slope == Catch::Approx(1.0).margin(1e-12));
    CHECK(e1.r2 == Catch::Approx(1.0).margin(1e-12));

    std::vector<std::size_t> quad;
    for (int k = 2; k <= 6; ++k) quad.push_back(static_cast<std::size_t>(1) << (2 * k));
    BoxDimEstimate e2 = fit_box_dim(2, quad);
    CHECK(e2.slope == Catch::Approx(2.0).margin(1e-12));

    CHECK_THROWS_AS(fit_box_dim(3, std::vector<std::size_t>{8, 16}), std::invalid_argument);
}

TEST_CASE("box-dimension estimates at the two reference parameter pairs") {
    // Modest scale range keeps this fast; the wider acceptance band is run
    // over k in [6,11] by the acceptance harness.
    BoxDimEstimate flat = box_dim_estimate(Params(rat(9, 20), rat(3, 5)), 4, 9);
    CHECK(flat.slope > 0.9);
    CHECK(flat.slope < 1.3);
    CHECK(flat.r2 > 0.99);
    for (std::size_t i = 1; i < flat.counts.size(); ++i) CHECK(flat.counts[i] > flat.counts[i - 1]);

    BoxDimEstimate steep = box_dim_estimate(Params(rat(2, 5), rat(9, 10)), 4, 9);
    CHECK(steep.slope > flat.slope);
    CHECK(steep.slope > 1.1);
    CHECK(steep.slope < 1.6);
}

TEST_CASE("iterated top curve hugs a fine cover staircase from below") {
    Params p(rat(2, 5), rat(9, 10));
    BEnclosure enc = b_enclosure(p, 10);
    CurveIterate it = iterate_top(p, enc.lower, 12);
    REQUIRE(it.all_clean);
    REQUIRE(it.all_nondecreasing);

    BoxCover cover = attractor_cover(p, 5, 10);
    StaircaseCompare sc = curve_vs_topmost(it.curve, cover);
    CHECK(sc.all_within);
    CHECK(sc.max_distance < rat(1, 1000));
    // the iterate never rises above the staircase cells
    CHECK(sc.max_curve_above <= 0);

    MirrorCompare mc = mirror_symmetry_gap(it.curve, 5);
    CHECK(mc.all_within);
    CHECK(mc.max_distance < rat(1, 10000));

    // strict increase on every window of width 2^-8
    const int M = 1 << 8;
    Rational prev = it.curve.eval(Rational(0));
    Rational min_inc(2);
    for (int j = 1; j <= M; ++j) {
        Rational cur = it.curve.eval(Rational(j, M));
        min_inc = rat_min(min_inc, Rational(cur - prev));
        prev = cur;
    }
    CHECK(min_inc > 0);
}
