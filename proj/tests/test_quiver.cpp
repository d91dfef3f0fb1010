#include <doctest.h>

#include "helpers.hpp"

using namespace rsq;
using namespace rsqtest;

TEST_CASE("walk degrees")
{
    auto q = a2();
    int alpha = q->arrow_index("alpha");
    CHECK(walk_degree(*q, {q->vertex_index("a"), {{alpha, 1}}}) == 1);
    CHECK(walk_degree(*q, {q->vertex_index("a"), {{alpha, 1}, {alpha, -1}}}) == 0);
    CHECK(walk_degree(*q, {q->vertex_index("a"), {}}) == 0);
    CHECK_THROWS_AS(walk_degree(*q, {q->vertex_index("b"), {{alpha, 1}}}), DomainError);

    auto c2 = two_cycle();
    Walk w{c2->vertex_index("a"),
           {{c2->arrow_index("alpha"), 1}, {c2->arrow_index("beta"), 1}}};
    CHECK(walk_degree(*c2, w) == 2);
}

TEST_CASE("gradability and grading period")
{
    CHECK(is_gradable(*a3()));
    CHECK(grading_period(*a3()) == 0);
    CHECK_FALSE(is_gradable(*three_cycle()));
    CHECK(grading_period(*three_cycle()) == 3);
    CHECK(is_gradable(*kronecker()));
    CHECK(grading_period(*two_cycle()) == 2);
    CHECK(grading_period(*loop_quiver()) == 1);
    CHECK(grading_period(*mixed_three_cycle()) == 1);

    auto disconnected = make_quiver({"a", "b"}, {});
    CHECK_THROWS_AS(grading_period(*disconnected), DomainError);
    CHECK_THROWS_WITH_AS(grading_period(*disconnected),
                         doctest::Contains("components"), DomainError);
}

TEST_CASE("grading period agrees with the exhaustive closed-walk oracle")
{
    for (auto q : {a2(), a3(), loop_quiver(), two_cycle(), three_cycle(), mixed_three_cycle(),
                   kronecker(), d4_star()}) {
        int oracle = closed_walk_gcd_oracle(*q, 2 * q->num_arrows());
        CHECK(grading_period(*q) == oracle);
    }
}

TEST_CASE("closed walks are 0 mod the grading period")
{
    auto q = mixed_three_cycle();
    int r = grading_period(*q);
    // all closed walks up to length 6 from every vertex
    std::function<void(int, int, int, int)> walk = [&](int start, int at, int deg, int len) {
        if (len > 0 && at == start) {
            if (r == 0)
                CHECK(deg == 0);
            else
                CHECK(deg % r == 0);
        }
        if (len == 6) return;
        for (int a = 0; a < q->num_arrows(); ++a) {
            const auto& ar = q->arrow(a);
            if (ar.src == at) walk(start, ar.tgt, deg + 1, len + 1);
            if (ar.tgt == at) walk(start, ar.src, deg - 1, len + 1);
        }
    };
    for (int v = 0; v < q->num_vertices(); ++v) walk(v, v, 0, 0);
}

TEST_CASE("shape classification")
{
    CHECK(classify_shape(*a3()).str() == "DynkinA(3)");
    CHECK(classify_shape(*three_cycle()).str() == "TildeA(3, oriented)");
    CHECK(classify_shape(*d4_star()).str() == "DynkinD(4)");
    CHECK(classify_shape(*loop_quiver()).str() == "TildeA(1, oriented)");
    auto kk = classify_shape(*kronecker());
    CHECK(kk.tag == ShapeClass::Tag::TildeA);
    CHECK(kk.n == 2);
    CHECK(kk.cw == 1);
    CHECK(kk.ccw == 1);
    auto m3 = classify_shape(*mixed_three_cycle());
    CHECK(m3.tag == ShapeClass::Tag::TildeA);
    CHECK(std::abs(m3.cw - m3.ccw) == grading_period(*mixed_three_cycle()));

    auto e6 = make_quiver({"1", "2", "3", "4", "5", "6"},
                          {{"a", "1", "2"},
                           {"b", "2", "3"},
                           {"c", "3", "4"},
                           {"d", "4", "5"},
                           {"e", "3", "6"}});
    CHECK(classify_shape(*e6).str() == "DynkinE(6)");

    auto d4tilde = make_quiver({"c", "l1", "l2", "l3", "l4"},
                               {{"a1", "l1", "c"},
                                {"a2", "l2", "c"},
                                {"a3", "l3", "c"},
                                {"a4", "l4", "c"}});
    CHECK(classify_shape(*d4tilde).str() == "TildeD(4)");
}

TEST_CASE("cycle orientation count cross-checks the grading period")
{
    for (auto q : {loop_quiver(), two_cycle(), three_cycle(), mixed_three_cycle(), kronecker()}) {
        auto s = classify_shape(*q);
        REQUIRE(s.tag == ShapeClass::Tag::TildeA);
        CHECK(std::abs(s.cw - s.ccw) == grading_period(*q));
    }
}

TEST_CASE("opposite quiver")
{
    auto q = a2();
    auto op = opposite(*q);
    CHECK(op.arrow(0).src == op.vertex_index("b"));
    CHECK(op.arrow(0).tgt == op.vertex_index("a"));
    CHECK(opposite(opposite(*two_cycle())) == *two_cycle());
    auto lp = opposite(*loop_quiver());
    CHECK(lp == *loop_quiver());
}

TEST_CASE("infinite path profile")
{
    CHECK_FALSE(infinite_path_profile(*a3()).has_right_infinite);
    CHECK_FALSE(infinite_path_profile(*a3()).has_left_infinite);
    CHECK(infinite_path_profile(*loop_quiver()).has_right_infinite);
    CHECK(infinite_path_profile(*loop_quiver()).has_left_infinite);
    CHECK(infinite_path_profile(*three_cycle()).has_right_infinite);
}
