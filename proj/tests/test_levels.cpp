#include <catch2/catch_amalgamated.hpp>

#include "afftop/ylevel.hpp"

using namespace afftop;

namespace {
const Params kP(rat(2, 5), rat(9, 10));

ConvexPolygon poly_of(const YLevel& lvl, const Word& w) {
    for (const YPiece& piece : lvl.pieces)
        if (piece.word == w) return piece.poly;
    throw std::logic_error("no piece " + w);
}
}  // namespace

TEST_CASE("truncated map images of the unit square") {
    YPiece p0 = s_image(kP, '0', unit_square());
    ConvexPolygon expected0 = make_polygon({{rat(0), rat(0)},
                                            {rat(2, 5), rat(0)},
                                            {rat(2, 5), rat(3, 5)},
                                            {rat(1, 10), rat(9, 10)},
                                            {rat(0), rat(9, 10)}});
    CHECK(same_polygon(p0.poly, expected0));
    CHECK_FALSE(p0.collapsed);
    // the cut edge lands on x + y = 1
    CHECK(rat(2, 5) + rat(3, 5) == 1);
    CHECK(rat(1, 10) + rat(9, 10) == 1);

    YPiece p1 = s_image(kP, '1', unit_square());
    ConvexPolygon expected1 = make_polygon({{rat(2, 5), rat(3, 5)},
                                            {rat(1), rat(3, 5)},
                                            {rat(1), rat(1)},
                                            {rat(1, 10), rat(1)},
                                            {rat(1, 10), rat(9, 10)}});
    CHECK(same_polygon(p1.poly, expected1));
    // the cut edge of the 1-image also lands on x + y = 1
    CHECK(rat(2, 5) + rat(3, 5) == 1);
    CHECK(rat(1, 10) + rat(9, 10) == 1);

    // corner collapse: the origin fails the symbol-1 condition entirely
    ConvexPolygon origin{{{rat(0), rat(0)}}};
    YPiece c1 = s_image(kP, '1', origin);
    CHECK(c1.collapsed);
    REQUIRE(c1.poly.verts.size() == 1);
    CHECK(c1.poly.verts[0] == PointQ{rat(1), rat(1)});
    YPiece c0 = s_image(kP, '0', origin);
    CHECK_FALSE(c0.collapsed);
    CHECK(c0.poly.verts[0] == PointQ{rat(0), rat(0)});
}

TEST_CASE("tower levels 0-2 at the worked example") {
    YLevel l0 = build_y(kP, 0);
    REQUIRE(l0.pieces.size() == 1);
    CHECK(same_polygon(l0.pieces[0].poly, unit_square()));

    YLevel l1 = build_y(kP, 1);
    REQUIRE(l1.pieces.size() == 2);
    CHECK(l1.pieces[0].word == "0");
    CHECK(l1.pieces[1].word == "1");
    CHECK(l1.pieces[0].poly.verts.size() == 5);
    CHECK(l1.pieces[1].poly.verts.size() == 5);

    YLevel l2 = build_y(kP, 2);
    REQUIRE(l2.pieces.size() == 4);

    CHECK(same_polygon(poly_of(l2, "00"), make_polygon({{rat(0), rat(0)},
                                                        {rat(4, 25), rat(0)},
                                                        {rat(4, 25), rat(27, 50)},
                                                        {rat(1, 25), rat(81, 100)},
                                                        {rat(0), rat(81, 100)}})));
    CHECK(same_polygon(poly_of(l2, "01"), make_polygon({{rat(4, 25), rat(27, 50)},
                                                        {rat(2, 5), rat(27, 50)},
                                                        {rat(2, 5), rat(3, 5)},
                                                        {rat(1, 10), rat(9, 10)},
                                                        {rat(1, 25), rat(9, 10)},
                                                        {rat(1, 25), rat(81, 100)}})));
    CHECK(same_polygon(poly_of(l2, "10"), make_polygon({{rat(2, 5), rat(3, 5)},
                                                        {rat(23, 50), rat(3, 5)},
                                                        {rat(23, 50), rat(21, 25)},
                                                        {rat(19, 100), rat(24, 25)},
                                                        {rat(1, 10), rat(24, 25)},
                                                        {rat(1, 10), rat(9, 10)}})));
    CHECK(same_polygon(poly_of(l2, "11"), make_polygon({{rat(23, 50), rat(21, 25)},
                                                        {rat(1), rat(21, 25)},
                                                        {rat(1), rat(1)},
                                                        {rat(19, 100), rat(1)},
                                                        {rat(19, 100), rat(24, 25)}})));

    YLevelCheck chk = check_level(l2);
    CHECK(chk.count_ok);
    CHECK(chk.disjoint_ok);
    CHECK(chk.ordering_ok);
    CHECK(chk.vertex_bound6_ok);
    CHECK(chk.x_projection_ok);
}

TEST_CASE("structural checks hold through level 8") {
    YLevel prev = build_y(kP, 0);
    for (int n = 1; n <= 8; ++n) {
        YLevel cur = build_y(kP, n);
        YLevelCheck chk = check_level(cur);
        INFO("level " << n << ": " << chk.first_violation);
        CHECK(chk.all_ok());
        std::string viol;
        CHECK(check_nesting(prev, cur, &viol));
        INFO(viol);
        CHECK(check_mirror_symmetry(cur, &viol));
        prev = std::move(cur);
    }
}

TEST_CASE("piece complexity: verified shapes beyond hexagons") {
    // Piece complexity is NOT capped at 6 vertices. These two pieces were
    // cross-validated by pushing a dense point grid through the branch maps
    // and convex-hulling the images: the hulls match vertex-for-vertex.
    YLevel l4 = build_y(kP, 4);
    ConvexPolygon tri = poly_of(l4, "0111");
    REQUIRE(tri.verts.size() == 3);
    CHECK(same_polygon(tri, make_polygon({{rat(271, 2500), rat(2229, 2500)},
                                          {rat(271, 2500), rat(1107, 1250)},
                                          {rat(149, 1250), rat(1101, 1250)}})));
    // the triangle's slanted edge lies on x + y = 1
    CHECK(rat(271, 2500) + rat(1107, 1250) != 1);  // vertical-edge vertex, off the line
    CHECK(rat(149, 1250) + rat(1101, 1250) == 1);
    CHECK(poly_of(l4, "0110").verts.size() == 7);
    CHECK(poly_of(l4, "1001").verts.size() == 7);

    // empirical complexity pins at the two canonical parameter pairs
    for (int n = 3; n <= 9; ++n) {
        CHECK(check_level(build_y(kP, n)).max_vertices <= 7);
        CHECK(check_level(build_y(Params(rat(9, 20), rat(3, 5)), n)).vertex_bound6_ok);
    }
}

TEST_CASE("first collapsed pieces appear at level 5") {
    YLevel l5 = build_y(kP, 5);
    bool found0 = false, found1 = false;
    for (const YPiece& piece : l5.pieces) {
        if (piece.word == "01111") {
            found0 = true;
            CHECK(piece.collapsed);
            REQUIRE(piece.poly.verts.size() == 1);
            CHECK(piece.poly.verts[0] == PointQ{rat(0), rat(0)});
        }
        if (piece.word == "10000") {
            found1 = true;
            CHECK(piece.collapsed);
            CHECK(piece.poly.verts[0] == PointQ{rat(1), rat(1)});
        }
    }
    CHECK(found0);
    CHECK(found1);
    // and no collapse earlier
    for (int n = 1; n <= 4; ++n)
        for (const YPiece& piece : build_y(kP, n).pieces) CHECK_FALSE(piece.collapsed);
}

TEST_CASE("level cap guards memory") {
    CHECK_THROWS(build_y(kP, 17));
    CHECK_THROWS(build_y(kP, -1));
}
