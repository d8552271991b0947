#include <catch2/catch_amalgamated.hpp>

#include "afftop/benclosure.hpp"
#include "afftop/curve.hpp"

#include <random>

using namespace afftop;

namespace {

MonotoneCurve segment(Rational x0, Rational y0, Rational x1, Rational y1) {
    return MonotoneCurve({{x0, y0}, {x1, y1}});
}

MonotoneCurve random_monotone_curve(std::mt19937& rng, int pieces) {
    std::uniform_int_distribution<int> num(0, 512);
    std::vector<Rational> xs{rat(0), rat(1)}, ys;
    for (int i = 0; i < pieces - 1; ++i) xs.push_back(rat(num(rng), 512));
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    for (std::size_t i = 0; i < xs.size(); ++i) ys.push_back(rat(num(rng), 512));
    std::sort(ys.begin(), ys.end());
    std::vector<PointQ> vs;
    for (std::size_t i = 0; i < xs.size(); ++i) vs.push_back({xs[i], ys[i]});
    return MonotoneCurve(std::move(vs));
}

}  // namespace

TEST_CASE("monotone curve construction and evaluation") {
    MonotoneCurve diag = segment(rat(0), rat(0), rat(1), rat(1));
    CHECK(diag.strictly_increasing);
    CHECK(diag.eval(rat(1, 3)) == rat(1, 3));
    CHECK(diag.eval(rat(0)) == 0);
    CHECK(diag.eval(rat(1)) == 1);

    MonotoneCurve steps(
        {{rat(0), rat(0)}, {rat(1, 4), rat(1, 2)}, {rat(1, 2), rat(1, 2)}, {rat(1), rat(1)}});
    CHECK_FALSE(steps.strictly_increasing);
    CHECK(steps.eval(rat(1, 8)) == rat(1, 4));
    CHECK(steps.eval(rat(3, 8)) == rat(1, 2));
    CHECK(steps.eval(rat(3, 4)) == rat(3, 4));

    CHECK_THROWS_AS(MonotoneCurve({{rat(0), rat(0)}}), std::invalid_argument);
    CHECK_THROWS_AS(MonotoneCurve({{rat(0), rat(0)}, {rat(0), rat(1)}}), std::invalid_argument);
    CHECK_THROWS_AS(MonotoneCurve({{rat(0), rat(1)}, {rat(1), rat(0)}}), std::invalid_argument);
    CHECK_THROWS_AS(diag.eval(rat(2)), std::domain_error);
}

TEST_CASE("affine images of curves") {
    Params p(rat(2, 5), rat(9, 10));
    MonotoneCurve diag = segment(rat(0), rat(0), rat(1), rat(1));

    MonotoneCurve i0 = apply_map_to_curve(map_for_symbol(p, '0'), diag);
    CHECK(i0.verts.front().x == 0);
    CHECK(i0.verts.front().y == 0);
    CHECK(i0.verts.back().x == rat(2, 5));
    CHECK(i0.verts.back().y == rat(9, 10));

    MonotoneCurve i1 = apply_map_to_curve(map_for_symbol(p, '1'), diag);
    CHECK(i1.verts.front().x == rat(1, 10));
    CHECK(i1.verts.front().y == rat(3, 5));
    CHECK(i1.verts.back().x == 1);
    CHECK(i1.verts.back().y == 1);

    MonotoneCurve same = apply_map_to_curve(DiagMap::identity(), diag);
    CHECK(same.verts == diag.verts);

    DiagMap flip{rat(-1), rat(1), rat(1), rat(0)};
    CHECK_THROWS_AS(apply_map_to_curve(flip, diag), std::invalid_argument);
}

TEST_CASE("upper envelope of two lines") {
    MonotoneCurve a = segment(rat(0), rat(0), rat(1), rat(1));            // y = x
    MonotoneCurve b = segment(rat(0), rat(1, 4), rat(1), rat(3, 4));      // y = x/2 + 1/4
    EnvelopeResult env = upper_envelope(a, b);
    REQUIRE(env.continuous());
    REQUIRE(env.monotone);
    MonotoneCurve c = env.curve();
    REQUIRE(c.verts.size() == 3);
    CHECK(c.verts[0] == PointQ{rat(0), rat(1, 4)});
    CHECK(c.verts[1] == PointQ{rat(1, 2), rat(1, 2)});
    CHECK(c.verts[2] == PointQ{rat(1), rat(1)});

    // idempotence
    EnvelopeResult same = upper_envelope(a, a);
    REQUIRE(same.continuous());
    CHECK(same.curve().verts == a.verts);

    // disjoint domains are rejected
    MonotoneCurve far = segment(rat(2), rat(0), rat(3), rat(1));
    CHECK_THROWS_AS(upper_envelope(a, far), std::invalid_argument);
}

TEST_CASE("envelope equals pointwise maximum on the common domain") {
    std::mt19937 rng(561204);
    std::uniform_int_distribution<int> xpick(0, 1 << 14);
    for (int trial = 0; trial < 20; ++trial) {
        MonotoneCurve c1 = random_monotone_curve(rng, 12);
        MonotoneCurve c2 = random_monotone_curve(rng, 12);
        EnvelopeResult env = upper_envelope(c1, c2);
        REQUIRE(env.continuous());  // identical domains: no junction jumps
        MonotoneCurve e = env.curve();
        for (int i = 0; i < 50; ++i) {
            Rational x = rat(xpick(rng), 1 << 14);
            CHECK(e.eval(x) == rat_max(c1.eval(x), c2.eval(x)));
        }
    }
}

TEST_CASE("r_step of the diagonal reports its jumps") {
    Params p(rat(2, 5), rat(9, 10));
    MonotoneCurve diag = segment(rat(0), rat(0), rat(1), rat(1));
    EnvelopeResult env = r_step(p, diag);

    // image domains [0, 2/5] and [1/10, 1]: the envelope jumps up where the
    // T1 image starts and drops where the T0 image ends
    REQUIRE(env.jumps.size() == 2);
    CHECK(env.jumps[0].x == rat(1, 10));
    CHECK(env.jumps[0].y_from == rat(9, 40));
    CHECK(env.jumps[0].y_to == rat(3, 5));
    CHECK(env.jumps[1].x == rat(2, 5));
    CHECK(env.jumps[1].y_from == rat(9, 10));
    CHECK(env.jumps[1].y_to == rat(11, 15));
    CHECK_FALSE(env.monotone);
    CHECK_THROWS_AS(env.curve(), std::logic_error);

    // exact crossing of the two image lines
    bool found_kink = false;
    for (const PointQ& q : env.chain.pts)
        if (q.x == rat(4, 13) && q.y == rat(9, 13)) found_kink = true;
    CHECK(found_kink);
}

TEST_CASE("vertical difference statistics") {
    MonotoneCurve a = segment(rat(0), rat(0), rat(1), rat(1));
    MonotoneCurve b(
        {{rat(0), rat(0)}, {rat(1, 2), rat(3, 4)}, {rat(1), rat(1)}});
    DiffStats d = vertical_difference(b, a);
    CHECK(d.max_diff == rat(1, 4));
    CHECK(d.arg_max == rat(1, 2));
    CHECK(d.min_diff == 0);
}

TEST_CASE("corridor simplification stays within budget") {
    std::mt19937 rng(443191);
    for (int trial = 0; trial < 10; ++trial) {
        MonotoneCurve c = random_monotone_curve(rng, 60);
        Rational budget = rat(1, 64);
        MonotoneCurve s = simplify_down(c, budget);
        CHECK(s.verts.size() <= c.verts.size());
        CHECK(s.verts.front() == c.verts.front());
        CHECK(s.verts.back() == c.verts.back());
        DiffStats d = vertical_difference(s, c);
        CHECK(d.max_diff <= 0);        // never above the input
        CHECK(d.min_diff >= -budget);  // never more than budget below

        // zero budget only merges exactly collinear vertices
        MonotoneCurve z = simplify_down(c, rat(0));
        DiffStats dz = vertical_difference(z, c);
        CHECK(dz.max_diff == 0);
        CHECK(dz.min_diff == 0);
    }
}

TEST_CASE("enclosure of the maximal attractor") {
    Params p(rat(2, 5), rat(9, 10));
    BEnclosure enc = b_enclosure(p, 10);

    CHECK(enc.lower.verts.front() == PointQ{rat(0), rat(0)});
    CHECK(enc.lower.verts.back() == PointQ{rat(1), rat(1)});
    CHECK(enc.upper.verts.front() == PointQ{rat(0), rat(0)});
    CHECK(enc.upper.verts.back() == PointQ{rat(1), rat(1)});

    // lower <= upper pointwise
    DiffStats d = vertical_difference(enc.upper, enc.lower);
    CHECK(d.min_diff >= 0);
    CHECK(enc.width == d.max_diff);

    // the known point of B with x = 1/16 sits inside the enclosure
    CHECK(enc.lower.eval(rat(1, 16)) <= rat(27, 32));
    CHECK(enc.upper.eval(rat(1, 16)) >= rat(27, 32));

    // enclosure width shrinks monotonically with the level
    Rational prev_width(-1);
    for (int n = 4; n <= 12; ++n) {
        BEnclosure e = b_enclosure(p, n);
        if (prev_width >= 0) CHECK(e.width < prev_width);
        prev_width = e.width;
    }

    CHECK_THROWS_AS(b_enclosure(p, 0), std::invalid_argument);
}

TEST_CASE("top-boundary iteration from the lower enclosure") {
    Params p(rat(2, 5), rat(9, 10));
    BEnclosure enc = b_enclosure(p, 10);
    IterateOptions opts;
    opts.simplify_budget = dyadic_unit(16);
    CurveIterate it = iterate_top(p, enc.lower, 6, opts);

    REQUIRE(it.n == 6);
    CHECK(it.all_clean);
    CHECK(it.all_nondecreasing);
    CHECK(it.diagnostic.empty());
    for (const IterateStep& st : it.steps) {
        CHECK(st.clean);
        CHECK(st.nondecreasing);
        CHECK(st.sup_increment >= 0);
    }
    // increments settle downward overall
    CHECK(it.steps.back().sup_increment < it.steps.front().sup_increment);

    CHECK(it.curve.verts.front() == PointQ{rat(0), rat(0)});
    CHECK(it.curve.verts.back() == PointQ{rat(1), rat(1)});

    // zero steps leave the start curve untouched
    CurveIterate none = iterate_top(p, enc.lower, 0);
    CHECK(none.n == 0);
    CHECK(none.curve.verts == enc.lower.verts);
}

TEST_CASE("a coarse enclosure floor is not automatically a subsolution") {
    // The level-8 staircase minorant dips above R(c) near x ~ 0.118: the
    // operator image there is built from cruder corner-column values, so one
    // step genuinely decreases the curve by about 6.6e-4.  The iterator must
    // report this honestly rather than mask it.
    Params p(rat(2, 5), rat(9, 10));
    BEnclosure enc = b_enclosure(p, 8);
    CurveIterate it = iterate_top(p, enc.lower, 1);
    REQUIRE(it.steps.size() == 1);
    CHECK(it.all_clean);
    CHECK_FALSE(it.all_nondecreasing);
    CHECK_FALSE(it.steps[0].nondecreasing);
    CHECK(it.steps[0].min_increment < 0);
    CHECK(it.steps[0].min_increment > rat(-1, 1000));
    CHECK_FALSE(it.diagnostic.empty());
}
