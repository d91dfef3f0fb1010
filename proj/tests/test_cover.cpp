#include <doctest.h>

#include <set>

#include "helpers.hpp"
#include "rsq/cover.hpp"

using namespace rsq;
using namespace rsqtest;

namespace {

// Independent oracle: BFS closure of (anchor, 0) inside Q^Z, explored with a
// generous level margin, then restricted to [lo, hi].
std::set<std::pair<int, int>> bfs_window_oracle(const Quiver& q, int anchor, int lo, int hi)
{
    int margin = 4 * (q.num_vertices() + q.num_arrows()) + 8;
    std::set<std::pair<int, int>> seen{{anchor, 0}};
    std::vector<std::pair<int, int>> stack{{anchor, 0}};
    while (!stack.empty()) {
        auto [v, l] = stack.back();
        stack.pop_back();
        for (int a = 0; a < q.num_arrows(); ++a) {
            const auto& ar = q.arrow(a);
            if (ar.src == v && l + 1 <= hi + margin && !seen.count({ar.tgt, l + 1})) {
                seen.insert({ar.tgt, l + 1});
                stack.push_back({ar.tgt, l + 1});
            }
            if (ar.tgt == v && l - 1 >= lo - margin && !seen.count({ar.src, l - 1})) {
                seen.insert({ar.src, l - 1});
                stack.push_back({ar.src, l - 1});
            }
        }
    }
    std::set<std::pair<int, int>> out;
    for (auto& [v, l] : seen)
        if (l >= lo && l <= hi) out.insert({v, l});
    return out;
}

void check_against_oracle(QuiverPtr q, int lo, int hi)
{
    CoverWindow cw = build_cover_window(q, -1, lo, hi);
    auto oracle = bfs_window_oracle(*q, cw.anchor(), lo, hi);
    std::set<std::pair<int, int>> got;
    for (auto& v : cw.vertices()) got.insert({v.base, v.level});
    CHECK(got == oracle);
}

}  // namespace

TEST_CASE("window of a gradable quiver is a copy of the quiver")
{
    auto q = a2();
    CoverWindow cw = build_cover_window(q, -1, -2, 2);
    CHECK(cw.r() == 0);
    REQUIRE(cw.vertices().size() == 2);
    CHECK(cw.window_quiver().num_arrows() == 1);
    CHECK(cw.window_index(q->vertex_index("a"), 0) >= 0);
    CHECK(cw.window_index(q->vertex_index("b"), 1) >= 0);
    check_against_oracle(q, -2, 2);
}

TEST_CASE("loop window unfolds to a linear quiver")
{
    auto q = loop_quiver();
    CoverWindow cw = build_cover_window(q, -1, -2, 2);
    CHECK(cw.r() == 1);
    CHECK(cw.vertices().size() == 5);
    CHECK(cw.window_quiver().num_arrows() == 4);
    CHECK(classify_shape(cw.window_quiver()).str() == "DynkinA(5)");
    check_against_oracle(q, -2, 2);
}

TEST_CASE("two-cycle window is an alternating path")
{
    auto q = two_cycle();
    CoverWindow cw = build_cover_window(q, -1, 0, 2);
    REQUIRE(cw.vertices().size() == 3);
    CHECK(cw.vertices()[0].level == 0);
    CHECK(q->vertex_name(cw.vertices()[0].base) == "a");
    CHECK(q->vertex_name(cw.vertices()[1].base) == "b");
    CHECK(q->vertex_name(cw.vertices()[2].base) == "a");
    CHECK(cw.window_quiver().num_arrows() == 2);
    check_against_oracle(q, 0, 2);
}

TEST_CASE("membership rule")
{
    auto q = two_cycle();
    CoverWindow cw = build_cover_window(q, -1, -2, 2);
    int b = q->vertex_index("b"), a = q->vertex_index("a");
    CHECK(cw.contains(b, 1));
    CHECK_FALSE(cw.contains(b, 2));
    CHECK(cw.contains(a, -2));
    CHECK_FALSE(cw.contains(a, 3));

    auto lp = loop_quiver();
    CoverWindow lw = build_cover_window(lp, -1, -2, 2);
    for (int n = -5; n <= 5; ++n) CHECK(lw.contains(0, n));

    auto g = a2();
    CoverWindow gw = build_cover_window(g, -1, -2, 2);
    CHECK(gw.contains(g->vertex_index("b"), 1));
    CHECK_FALSE(gw.contains(g->vertex_index("b"), 0));
}

TEST_CASE("rho shift and projection")
{
    auto lp = loop_quiver();
    CoverWindow lw = build_cover_window(lp, -1, -4, 4);
    auto [v3, in3] = lw.rho_shift({0, 0}, 3);
    CHECK(v3.level == 3);
    CHECK(in3);
    auto [v9, in9] = lw.rho_shift({0, 0}, 9);
    CHECK_FALSE(in9);

    auto c2 = two_cycle();
    CoverWindow c2w = build_cover_window(c2, -1, -4, 4);
    CHECK(c2w.rho_shift({c2->vertex_index("a"), 0}, 1).first.level == 2);
    CHECK(c2w.rho_shift({c2->vertex_index("a"), 0}, 0).first.level == 0);

    auto g = a2();
    CoverWindow gw = build_cover_window(g, -1, -2, 2);
    CHECK_THROWS_AS(gw.rho_shift({0, 0}, 1), DomainError);
}

TEST_CASE("project commutes with rho")
{
    auto lp = loop_quiver();
    CoverWindow lw = build_cover_window(lp, -1, -4, 4);
    for (auto& v : lw.vertices()) {
        CHECK(lw.project(v) == v.base);
        auto [w, inr] = lw.rho_shift(v, 1);
        if (inr) CHECK(lw.project(w) == v.base);
    }
    CHECK_THROWS_AS(lw.project({0, 99}), DomainError);
}

TEST_CASE("fibers over a vertex")
{
    auto c2 = two_cycle();
    CoverWindow cw = build_cover_window(c2, -1, 0, 4);
    int a = c2->vertex_index("a");
    std::vector<int> fiber_levels;
    for (auto& v : cw.vertices())
        if (v.base == a) fiber_levels.push_back(v.level);
    CHECK(fiber_levels == std::vector<int>{0, 2, 4});
}

TEST_CASE("Galois local bijectivity at interior vertices")
{
    for (auto q : {loop_quiver(), two_cycle(), three_cycle(), mixed_three_cycle()}) {
        CoverWindow cw = build_cover_window(q, -1, -4, 4);
        const Quiver& w = cw.window_quiver();
        for (int wi = 0; wi < w.num_vertices(); ++wi) {
            auto cv = cw.vertex_at(wi);
            // neighborhoods are only complete on the safe sub-range
            if (cv.level + 1 <= cw.hi())
                CHECK(w.out_arrows(wi).size() == q->out_arrows(cv.base).size());
            if (cv.level - 1 >= cw.lo())
                CHECK(w.in_arrows(wi).size() == q->in_arrows(cv.base).size());
        }
        // window quiver is acyclic and every arrow raises the level by one
        CHECK_FALSE(has_oriented_cycle(w));
        for (int wa = 0; wa < w.num_arrows(); ++wa) {
            auto s = cw.vertex_at(w.arrow(wa).src);
            auto t = cw.vertex_at(w.arrow(wa).tgt);
            CHECK(t.level == s.level + 1);
        }
    }
}
