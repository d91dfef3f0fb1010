#include <doctest.h>

#include "complex_helpers.hpp"
#include "rsq/koszul.hpp"

using namespace rsq;
using namespace rsqtest;

namespace {

FieldSpec fp() { return FieldSpec::prime(32003); }

// rho^s on a complex over the window algebra: relabel summands and arrows
RadicalComplex rho_complex(const CoverWindow& cw, const RadicalComplex& c, int s)
{
    RadicalComplex r(cw.window_ptr(), c.field());
    int shift = s * cw.r();
    for (auto& [n, vs] : c.terms())
        for (auto& [wi, mult] : vs) {
            CoverVertex cv = cw.vertex_at(wi);
            int target = cw.window_index(cv.base, cv.level + shift);
            REQUIRE(target >= 0);
            r.set_mult(n, target, mult);
        }
    for (auto& [key, b] : c.blocks()) {
        auto [n, wa] = key;
        int ba = cw.base_arrow_of(wa);
        int l = cw.level_of_window_arrow(wa);
        int ta = cw.window_quiver().arrow_index(cover_name(cw.base().arrow(ba).id, l + shift));
        REQUIRE(ta >= 0);
        r.set_block(n, ta, b);
    }
    return r;
}

bool proj_equal(const ProjComplex& a, const ProjComplex& b)
{
    if (a.copies() != b.copies()) return false;
    for (auto& [n, cs] : a.copies()) {
        auto ea = a.entries(n), eb = b.entries(n);
        if (ea.size() != eb.size()) return false;
        for (auto& [ij, gens] : ea) {
            auto it = eb.find(ij);
            if (it == eb.end()) return false;
            if (gens.size() != it->second.size()) return false;
            for (auto& [g, c] : gens) {
                auto jt = it->second.find(g);
                if (jt == it->second.end() || !(jt->second == c)) return false;
            }
        }
    }
    return true;
}

}  // namespace

TEST_CASE("Koszul image of the A2 injective is the simple's resolution")
{
    auto q = a2();
    CoverWindow cw = build_cover_window(q, -1, 0, 1);
    int a = q->vertex_index("a");
    QuiverRep I = window_op_injective(cw, fp(), {a, 0});
    CHECK(I.total_dim() == 2);
    RadicalComplex c = koszul_rep(cw, I);
    CHECK_FALSE(c.truncated_below());
    CHECK(c.lo() == -1);
    CHECK(c.hi() == 0);
    int wa0 = cw.window_index(a, 0);
    int wb1 = cw.window_index(q->vertex_index("b"), 1);
    CHECK(c.mult(0, wa0) == 1);
    CHECK(c.mult(-1, wb1) == 1);
    // H^0 = S[(a,0)], H^{-1} = 0
    auto h0 = c.homology_dims(0);
    CHECK(h0 == std::map<int, int>{{wa0, 1}});
    CHECK(c.homology_dims(-1).empty());
}

TEST_CASE("Koszul image of a simple is a stalk")
{
    auto q = a2();
    CoverWindow cw = build_cover_window(q, -1, 0, 1);
    QuiverRep S = window_op_simple(cw, fp(), {q->vertex_index("b"), 1});
    RadicalComplex c = koszul_rep(cw, S);
    CHECK(c.lo() == -1);
    CHECK(c.hi() == -1);
    CHECK(c.blocks().empty());
}

TEST_CASE("Koszul morphism is a chain map, functorial on an easy case")
{
    auto q = a2();
    CoverWindow cw = build_cover_window(q, -1, 0, 1);
    int a = q->vertex_index("a");
    QuiverRep I = window_op_injective(cw, fp(), {a, 0});
    QuiverRep S = window_op_simple(cw, fp(), {a, 0});
    // soc I_{(a,0)^o} = S[(a,0)]: the inclusion has a single 1x1 block
    std::vector<Mat> incl;
    for (int v = 0; v < cw.window_quiver().num_vertices(); ++v) {
        Mat m(fp(), I.dim(v), S.dim(v));
        if (S.dim(v) == 1) m.set(0, 0, 1);
        incl.push_back(m);
    }
    RadicalComplex FX = koszul_rep(cw, S), FY = koszul_rep(cw, I);
    ChainMap f = koszul_morphism(cw, S, I, incl);
    CHECK_FALSE(f.is_zero());
    CHECK(chain_is_morphism(FX, FY, f));

    ChainMap idm = koszul_morphism(cw, I, I, {Mat::identity(fp(), 1), Mat::identity(fp(), 1)});
    CHECK(chain_is_morphism(FY, FY, idm));
    // F(id o incl) = F(id) o F(incl)
    ChainMap comp = chain_compose(FX, FY, FY, idm, f);
    CHECK(chain_is_morphism(FX, FY, comp));
}

TEST_CASE("total complex of a stalk is the Koszul image, with the shift law")
{
    auto q = loop_quiver();
    CoverWindow cw = build_cover_window(q, -1, 0, 3);
    QuiverRep I = window_op_injective(cw, fp(), {0, 0});
    RadicalComplex F = koszul_rep(cw, I);

    ProjComplex t0 = koszul_total(cw, {I}, {}, 0);
    CHECK(proj_equal(t0, ProjComplex::from_radical(F)));

    // M in homological degree 1: F(M[-1]) = F(M)[-1]
    ProjComplex t1 = koszul_total(cw, {I}, {}, 1);
    CHECK(proj_equal(t1, ProjComplex::from_radical(F.shifted(-1))));
}

TEST_CASE("cone compatibility of the total complex")
{
    auto q = two_cycle();
    CoverWindow cw = build_cover_window(q, -1, 0, 3);
    int a = q->vertex_index("a");
    QuiverRep I = window_op_injective(cw, fp(), {a, 0});
    QuiverRep S = window_op_simple(cw, fp(), {a, 0});
    std::vector<Mat> incl;
    for (int v = 0; v < cw.window_quiver().num_vertices(); ++v) {
        Mat m(fp(), I.dim(v), S.dim(v));
        if (S.dim(v) == 1) m.set(0, 0, 1);
        incl.push_back(m);
    }
    // cone(S -> I) as a complex of representations sits in degrees -1, 0
    ProjComplex total = koszul_total(cw, {S, I}, {incl}, -1);
    ChainMap f = koszul_morphism(cw, S, I, incl);
    ProjComplex cone = mapping_cone(koszul_rep(cw, S), koszul_rep(cw, I), f);
    CHECK(proj_equal(total, cone));
}

TEST_CASE("pushdown over a gradable base relabels only")
{
    auto q = a2();
    CoverWindow cw = build_cover_window(q, -1, 0, 1);
    int a = q->vertex_index("a"), b = q->vertex_index("b");
    RadicalComplex c = koszul_rep(cw, window_op_injective(cw, fp(), {a, 0}));
    auto pd = pushdown(cw, c);
    CHECK(pd.complex.mult(0, a) == 1);
    CHECK(pd.complex.mult(-1, b) == 1);
    CHECK(pd.complex.block(-1, q->arrow_index("alpha")) == Mat::identity(fp(), 1));
    // matches the combinatorial resolution of S[a]
    CHECK(pd.complex.equal_to(path_resolution(q, fp(), a, 1, false)));
}

TEST_CASE("pushdown of the truncated loop injective is the dual-numbers resolution")
{
    auto q = loop_quiver();
    CoverWindow cw = build_cover_window(q, -1, 0, 4);
    RadicalComplex c = koszul_rep(cw, window_op_injective(cw, fp(), {0, 0}));
    CHECK(c.truncated_below());
    auto pd = pushdown(cw, c);
    CHECK(pd.complex.truncated_below());
    RadicalComplex oracle = path_resolution(q, fp(), 0, 4);
    CHECK(pd.complex.equal_to(oracle));

    // simple at (a,0) pushes down to the stalk P[a]
    RadicalComplex cs = koszul_rep(cw, window_op_simple(cw, fp(), {0, 0}));
    auto pds = pushdown(cw, cs);
    CHECK(pds.complex.mult(0, 0) == 1);
    CHECK(pds.complex.hi() == 0);
    CHECK(pds.complex.lo() == 0);
}

TEST_CASE("verify_injective_image")
{
    auto q = a2();
    CoverWindow cw = build_cover_window(q, -1, 0, 1);
    for (auto& cv : cw.vertices()) {
        auto rep = verify_injective_image(cw, fp(), cv);
        CHECK(rep.pass);
        CHECK(rep.top_degree == -cv.level);
        CHECK_FALSE(rep.truncated);
    }
    auto lq = loop_quiver();
    CoverWindow lw = build_cover_window(lq, -1, 0, 4);
    auto rep = verify_injective_image(lw, fp(), {0, 0});
    CHECK(rep.pass);
    CHECK(rep.truncated);
    CHECK(rep.top_degree == 0);
}

TEST_CASE("morphism shift dichotomy on the A2 window")
{
    auto q = a2();
    CoverWindow cw = build_cover_window(q, -1, 0, 1);
    std::vector<QuiverRep> reps;
    reps.push_back(window_op_injective(cw, fp(), {q->vertex_index("a"), 0}));
    reps.push_back(window_op_simple(cw, fp(), {q->vertex_index("a"), 0}));
    reps.push_back(window_op_simple(cw, fp(), {q->vertex_index("b"), 1}));
    for (const auto& m : reps)
        for (const auto& n : reps) {
            RadicalComplex F = koszul_rep(cw, m), G = koszul_rep(cw, n);
            for (int s = -2; s <= 3; ++s) {
                int d = hom_homotopy(F, G.shifted(s)).dim;
                if (s != 0 && s != 1) CHECK(d == 0);
            }
        }
}

TEST_CASE("translation/twist law")
{
    auto q = two_cycle();
    CoverWindow cw = build_cover_window(q, -1, -4, 4);
    // M supported on levels 0..1, well inside the window
    auto opw = std::make_shared<Quiver>(opposite(cw.window_quiver()));
    QuiverRep M(opw, fp());
    M.set_dim(cw.window_index(q->vertex_index("a"), 0), 1);
    M.set_dim(cw.window_index(q->vertex_index("b"), 1), 1);
    int wa = cw.window_quiver().arrow_index(cover_name("alpha", 0));
    Mat one = Mat::identity(fp(), 1);
    M.set_map(wa, one);
    for (int s : {-1, 1}) {
        QuiverRep Ms = rho_shift_rep(cw, M, s);
        RadicalComplex lhs = rho_complex(cw, koszul_rep(cw, M), s);
        if ((s * cw.r()) % 2 != 0) lhs = lhs.twisted();
        RadicalComplex rhs = koszul_rep(cw, Ms).shifted(-s * cw.r());
        // compare terms and blocks only; the truncation flag may differ at
        // the window boundary
        rhs.set_truncated_below(lhs.truncated_below());
        CHECK(lhs.equal_to(rhs));
    }
}

TEST_CASE("extraction inverts the Koszul functor on support-connected complexes")
{
    auto q = three_cycle();
    CoverWindow cw = build_cover_window(q, -1, 0, 5);
    std::mt19937_64 rng(99u);
    auto opw = std::make_shared<Quiver>(opposite(cw.window_quiver()));
    for (int trial = 0; trial < 8; ++trial) {
        QuiverRep m(opw, fp());
        // random rep supported on a connected band of levels
        for (int wi = 0; wi < cw.window_quiver().num_vertices(); ++wi) {
            int l = cw.vertex_at(wi).level;
            if (l >= 1 && l <= 3) m.set_dim(wi, 1 + int(rng() % 2));
        }
        for (int wa = 0; wa < cw.window_quiver().num_arrows(); ++wa) {
            const Arrow& ar = opw->arrow(wa);
            if (m.dim(ar.src) == 0 || m.dim(ar.tgt) == 0) continue;
            Mat b(fp(), m.dim(ar.tgt), m.dim(ar.src));
            for (int i = 0; i < b.rows(); ++i)
                for (int j = 0; j < b.cols(); ++j) b.set(i, j, std::int64_t(rng() % 5));
            m.set_map(wa, b);
        }
        if (m.total_dim() == 0) continue;
        RadicalComplex c = koszul_rep(cw, m);
        if (c.support_quiver().components.size() != 1) continue;
        for (int s : {0, 1, -2}) {
            auto ext = koszul_extract(cw, c.shifted(s));
            CHECK(ext.shift == s);
            RadicalComplex back = koszul_rep(cw, ext.rep).shifted(ext.shift);
            back.set_truncated_below(c.shifted(s).truncated_below());
            CHECK(back.equal_to(c.shifted(s)));
        }
    }
}

TEST_CASE("exact on short exact sequences, degreewise")
{
    auto q = loop_quiver();
    CoverWindow cw = build_cover_window(q, -1, 0, 3);
    QuiverRep I = window_op_injective(cw, fp(), {0, 0});
    // soc I -> I: dims are exact per level, so F is degreewise exact by
    // construction; check that the image chain map has degreewise full rank
    QuiverRep S = window_op_simple(cw, fp(), {0, 0});
    std::vector<Mat> incl;
    for (int v = 0; v < cw.window_quiver().num_vertices(); ++v) {
        Mat m(fp(), I.dim(v), S.dim(v));
        if (S.dim(v) == 1) m.set(0, 0, 1);
        incl.push_back(m);
    }
    ChainMap f = koszul_morphism(cw, S, I, incl);
    RadicalComplex FS = koszul_rep(cw, S), FI = koszul_rep(cw, I);
    CHECK(chain_is_morphism(FS, FI, f));
    // degree 0 block is injective
    auto blk = f.block(fp(), 0, cw.window_index(0, 0), cw.window_index(0, 0), -1, 1, 1);
    CHECK_FALSE(blk.is_zero());
}
