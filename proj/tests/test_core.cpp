#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "afftop/affine.hpp"
#include "afftop/interval.hpp"
#include "afftop/params.hpp"
#include "afftop/rational.hpp"
#include "afftop/word.hpp"

using namespace afftop;

TEST_CASE("rational parsing and printing") {
    CHECK(parse_rational("2/5") == rat(2, 5));
    CHECK(parse_rational("-3/6") == rat(-1, 2));
    CHECK(parse_rational("7") == rat(7));
    CHECK(parse_rational("0.4") == rat(2, 5));
    CHECK(parse_rational("1.25") == rat(5, 4));
    CHECK(parse_rational("0.890898718") == rat(890898718, 1000000000));
    CHECK(rat_str(rat(2, 5)) == "2/5");
    CHECK(rat_str(rat(7)) == "7");
    CHECK(parse_rational(rat_str(rat(-22, 7))) == rat(-22, 7));
    CHECK_THROWS(parse_rational(""));
    CHECK_THROWS(parse_rational("1/0"));
    CHECK_THROWS(parse_rational("abc"));
    CHECK_THROWS(parse_rational("1.2/3"));
}

TEST_CASE("rational helpers") {
    CHECK(rat_pow(rat(2, 5), 3) == rat(8, 125));
    CHECK(rat_pow(rat(2, 5), 0) == 1);
    CHECK(dyadic_unit(10) == rat(1, 1024));
    CHECK(rat_floor(rat(7, 2)) == 3);
    CHECK(rat_floor(rat(-7, 2)) == -4);
    CHECK(rat_floor(rat(4)) == 4);
}

TEST_CASE("interval arithmetic is exact on endpoints") {
    Interval a(rat(1, 3), rat(1, 2));
    Interval b(rat(-1, 4), rat(2));
    CHECK((a + b) == Interval(rat(1, 12), rat(5, 2)));
    CHECK((a - b) == Interval(rat(1, 3) - rat(2), rat(1, 2) + rat(1, 4)));
    CHECK((a * b) == Interval(rat(-1, 8), rat(1)));
    CHECK_THROWS(a / b);  // divisor straddles zero
    CHECK((a / Interval(rat(2), rat(4))) == Interval(rat(1, 12), rat(1, 4)));
    CHECK(certainly_less(Interval(rat(0), rat(1, 3)), Interval(rat(1, 2), rat(1))));
    CHECK_FALSE(certainly_less(Interval(rat(0), rat(1, 2)), Interval(rat(1, 2), rat(1))));
    CHECK(certainly_leq(Interval(rat(0), rat(1, 2)), Interval(rat(1, 2), rat(1))));
}

TEST_CASE("interval arithmetic contains pointwise results") {
    std::mt19937_64 rng(20240817);
    std::uniform_int_distribution<int> num(-12, 12);
    std::uniform_int_distribution<int> den(1, 9);
    auto random_interval = [&]() {
        Rational p = rat(num(rng), den(rng));
        Rational q = rat(num(rng), den(rng));
        return Interval(rat_min(p, q), rat_max(p, q));
    };
    auto sample = [&](const Interval& iv) -> Rational {
        // random convex combination of the endpoints (explicit return type:
        // deduced returns on GMP expressions dangle)
        Rational t = rat(std::uniform_int_distribution<int>(0, 16)(rng), 16);
        return iv.lo + t * (iv.hi - iv.lo);
    };
    for (int trial = 0; trial < 200; ++trial) {
        Interval a = random_interval(), b = random_interval();
        Rational x = sample(a), y = sample(b);
        CHECK((a + b).contains(x + y));
        CHECK((a - b).contains(x - y));
        CHECK((a * b).contains(x * y));
        if (!b.contains(rat(0))) CHECK((a / b).contains(x / y));
    }
}

TEST_CASE("parameter domain invariants") {
    CHECK_NOTHROW(Params(rat(2, 5), rat(9, 10)));
    CHECK_THROWS(Params(rat(1, 2), rat(1, 2)));   // lambda == mu
    CHECK_THROWS(Params(rat(2, 5), rat(1, 2)));   // lambda + mu <= 1
    CHECK_THROWS(Params(rat(9, 10), rat(2, 5)));  // lambda > mu
    CHECK_THROWS(Params(rat(2, 5), rat(1)));      // mu == 1
    CHECK_THROWS(Params(rat(0), rat(9, 10)));     // lambda == 0

    CHECK_NOTHROW(ParamRect({rat(3, 8), rat(7, 16)}, {rat(7, 8), rat(15, 16)}));
    // leaves the region: lambda can reach mu
    CHECK_THROWS(ParamRect({rat(3, 8), rat(7, 8)}, {rat(7, 8), rat(15, 16)}));
    // leaves the region: lambda + mu can reach 1
    CHECK_THROWS(ParamRect({rat(1, 16), rat(7, 16)}, {rat(7, 8), rat(15, 16)}));
}

TEST_CASE("generator maps at (2/5, 9/10)") {
    Params p(rat(2, 5), rat(9, 10));
    DiagMap t0 = map_for_symbol(p, '0');
    CHECK(t0.ax == rat(2, 5));
    CHECK(t0.ex == 0);
    CHECK(t0.dy == rat(9, 10));
    CHECK(t0.fy == 0);
    DiagMap t1 = map_for_symbol(p, '1');
    CHECK(t1.ax == rat(9, 10));
    CHECK(t1.ex == rat(1, 10));
    CHECK(t1.dy == rat(2, 5));
    CHECK(t1.fy == rat(3, 5));

    PointQ img0 = t0({rat(1), rat(1)});
    CHECK(img0 == PointQ{rat(2, 5), rat(9, 10)});
    PointQ img1 = t1({rat(0), rat(0)});
    CHECK(img1 == PointQ{rat(1, 10), rat(3, 5)});
}

TEST_CASE("composition and word maps") {
    Params p(rat(2, 5), rat(9, 10));
    DiagMap m01 = word_map(p, "01");
    CHECK(m01.ax == rat(9, 25));
    CHECK(m01.ex == rat(1, 25));
    CHECK(m01.dy == rat(9, 25));
    CHECK(m01.fy == rat(27, 50));
    // leftmost symbol acts last (outermost)
    DiagMap t0 = map_for_symbol(p, '0'), t1 = map_for_symbol(p, '1');
    DiagMap byhand = compose(t0, t1);
    CHECK(m01.ax == byhand.ax);
    CHECK(m01.ex == byhand.ex);
    CHECK(m01.dy == byhand.dy);
    CHECK(m01.fy == byhand.fy);

    DiagMap id = word_map(p, "");
    CHECK(id.ax == 1);
    CHECK(id.ex == 0);
    CHECK_THROWS(word_map(p, "012"));
}

TEST_CASE("axis contraction factors count symbols") {
    std::mt19937_64 rng(7121);
    Params p(rat(5, 8), rat(7, 8));
    for (int trial = 0; trial < 50; ++trial) {
        std::size_t len = std::uniform_int_distribution<std::size_t>(1, 12)(rng);
        Word w;
        for (std::size_t i = 0; i < len; ++i)
            w.push_back(std::uniform_int_distribution<int>(0, 1)(rng) ? '1' : '0');
        DiagMap m = word_map(p, w);
        unsigned long zeros = count_symbol(w, '0');
        unsigned long ones = count_symbol(w, '1');
        CHECK(m.ax == rat_pow(p.lambda, zeros) * rat_pow(p.mu, ones));
        CHECK(m.dy == rat_pow(p.mu, zeros) * rat_pow(p.lambda, ones));
    }
}

TEST_CASE("fixed points and coded points") {
    Params p(rat(2, 5), rat(9, 10));
    PointQ fp01 = fixed_point(word_map(p, "01"));
    CHECK(fp01 == PointQ{rat(1, 16), rat(27, 32)});

    CHECK(point_of_word(p, EPWord::parse("(01)")) == PointQ{rat(1, 16), rat(27, 32)});
    CHECK(point_of_word(p, EPWord::parse("(10)")) == PointQ{rat(5, 32), rat(15, 16)});
    CHECK(point_of_word(p, EPWord::parse("1(0)")) == PointQ{rat(1, 10), rat(3, 5)});
    CHECK(point_of_word(p, EPWord::parse("(0)")) == PointQ{rat(0), rat(0)});
    CHECK(point_of_word(p, EPWord::parse("(1)")) == PointQ{rat(1), rat(1)});
}

TEST_CASE("mirror involution conjugates the generators") {
    std::mt19937_64 rng(90210);
    for (int trial = 0; trial < 40; ++trial) {
        // random admissible rational parameters
        int mu_num = std::uniform_int_distribution<int>(60, 99)(rng);
        Rational mu = rat(mu_num, 100);
        int lam_lo = 100 - mu_num + 1;
        int lam_num = std::uniform_int_distribution<int>(lam_lo, mu_num - 1)(rng);
        Rational lambda = rat(lam_num, 100);
        Params p(lambda, mu);

        std::size_t len = std::uniform_int_distribution<std::size_t>(1, 6)(rng);
        Word u, v;
        for (std::size_t i = 0; i < len; ++i)
            v.push_back(std::uniform_int_distribution<int>(0, 1)(rng) ? '1' : '0');
        std::size_t plen = std::uniform_int_distribution<std::size_t>(0, 4)(rng);
        for (std::size_t i = 0; i < plen; ++i)
            u.push_back(std::uniform_int_distribution<int>(0, 1)(rng) ? '1' : '0');
        EPWord w(u, v);

        PointQ direct = point_of_word(p, w.mirrored());
        PointQ conj = mirror_point(point_of_word(p, w));
        CHECK(direct == conj);
    }
}

TEST_CASE("interval evaluation encloses rational evaluation") {
    ParamRect rect({rat(3, 8), rat(7, 16)}, {rat(7, 8), rat(15, 16)});
    EPWord w = EPWord::parse("(01)");
    PointI box = point_of_word(rect, w);
    // endpoints and midpoint of the rectangle
    for (const Rational& l : {rat(3, 8), rat(7, 16), rat(13, 32)}) {
        for (const Rational& m : {rat(7, 8), rat(15, 16), rat(29, 32)}) {
            PointQ v = point_of_word(Params(l, m), w);
            CHECK(box.x.contains(v.x));
            CHECK(box.y.contains(v.y));
        }
    }
}

TEST_CASE("eventually periodic words") {
    EPWord w = EPWord::parse("01(10)");
    CHECK(w.prefix == "01");
    CHECK(w.period == "10");
    CHECK(w.str() == "01(10)");
    CHECK(w.expansion(7) == "0110101");
    CHECK_THROWS(EPWord::parse("01"));      // no period
    CHECK_THROWS(EPWord::parse("01()"));    // empty period
    CHECK_THROWS(EPWord::parse("0(1)2"));   // trailing garbage
    CHECK_THROWS(EPWord::parse("0(12)"));   // bad symbol

    CHECK(EPWord::parse("(01)").shift(1) == EPWord::parse("(10)"));
    CHECK(EPWord::parse("0(01)").shift(1) == EPWord::parse("(01)"));
    CHECK(EPWord::parse("0(01)").shift(2) == EPWord::parse("(10)"));
    CHECK(EPWord::parse("0(01)").shift(3) == EPWord::parse("(01)"));
    CHECK(EPWord::parse("01(01)") == EPWord::parse("(01)"));  // equal as sequences
    CHECK(EPWord::parse("(01)").mirrored() == EPWord::parse("(10)"));
    CHECK(EPWord::parse("0(01)").mirrored().str() == "1(10)");

    CHECK(distinct_shifts(EPWord::parse("(01)")).size() == 2);
    CHECK(distinct_shifts(EPWord::parse("0(01)")).size() == 3);
    CHECK(distinct_shifts(EPWord::parse("01(01)")).size() == 2);
    CHECK(distinct_shifts(EPWord::parse("(0)")).size() == 1);
    CHECK(distinct_shifts(EPWord::parse("1(0)")).size() == 2);

    CHECK(mirror_word("00110") == "11001");
    CHECK(count_symbol("00110", '0') == 3);
}
