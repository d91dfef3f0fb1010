#include "rsq/rsz.hpp"

#include <algorithm>

namespace rsq {

std::vector<int> RszAlgebra::hom_basis(int x, int y) const
{
    std::vector<int> gens;
    if (x == y) gens.push_back(-1);
    for (int a : q_->arrows_between(y, x)) gens.push_back(a);
    return gens;
}

int RszAlgebra::basis_pos(int x, int arrow) const
{
    const auto& outs = q_->out_arrows(x);
    auto it = std::find(outs.begin(), outs.end(), arrow);
    if (it == outs.end()) throw DomainError("arrow not in P[x] basis");
    return 1 + int(it - outs.begin());
}

int RszAlgebra::basis_grade(int x, int k) const
{
    if (k == 0) return x;
    return q_->arrow(q_->out_arrows(x).at(k - 1)).tgt;
}

int ProjObj::total_mult() const
{
    int t = 0;
    for (auto& [v, m] : mult) t += m;
    return t;
}

int proj_obj_dim(const RszAlgebra& alg, const ProjObj& o)
{
    int d = 0;
    for (auto& [v, m] : o.mult) d += alg.proj_dim(v) * m;
    return d;
}

Mat ProjMorphism::block(FieldSpec f, const std::pair<int, int>& yx, int gen) const
{
    auto it = blocks.find(yx);
    if (it != blocks.end()) {
        auto jt = it->second.find(gen);
        if (jt != it->second.end()) return jt->second;
    }
    int rows = tgt.mult.count(yx.first) ? tgt.mult.at(yx.first) : 0;
    int cols = src.mult.count(yx.second) ? src.mult.at(yx.second) : 0;
    return Mat(f, rows, cols);
}

void ProjMorphism::add_block(const std::pair<int, int>& yx, int gen, const Mat& m)
{
    if (m.is_zero()) return;
    auto& slot = blocks[yx];
    auto it = slot.find(gen);
    if (it == slot.end()) {
        slot.emplace(gen, m);
    } else {
        it->second = it->second + m;
        if (it->second.is_zero()) slot.erase(it);
    }
    if (slot.empty()) blocks.erase(yx);
}

bool ProjMorphism::is_zero() const
{
    for (auto& [yx, gens] : blocks)
        for (auto& [g, m] : gens)
            if (!m.is_zero()) return false;
    return true;
}

ProjMorphism pm_zero(const ProjObj& src, const ProjObj& tgt)
{
    ProjMorphism f;
    f.src = src;
    f.tgt = tgt;
    return f;
}

ProjMorphism pm_identity(const RszAlgebra& alg, const ProjObj& obj)
{
    ProjMorphism f = pm_zero(obj, obj);
    for (auto& [v, m] : obj.mult) f.add_block({v, v}, -1, Mat::identity(alg.field(), m));
    return f;
}

ProjMorphism pm_add(const ProjMorphism& f, const ProjMorphism& g)
{
    if (!(f.src == g.src) || !(f.tgt == g.tgt)) throw DomainError("shape mismatch in pm_add");
    ProjMorphism r = f;
    for (auto& [yx, gens] : g.blocks)
        for (auto& [gen, m] : gens) r.add_block(yx, gen, m);
    return r;
}

ProjMorphism pm_negate(const ProjMorphism& f)
{
    ProjMorphism r = pm_zero(f.src, f.tgt);
    for (auto& [yx, gens] : f.blocks)
        for (auto& [gen, m] : gens) r.add_block(yx, gen, m.neg());
    return r;
}

std::optional<int> gen_compose(const Quiver& q, int x, int y, int z, int gen_second, int gen_first)
{
    // gen_first in Hom(P[x], P[y]), gen_second in Hom(P[y], P[z]).
    if (gen_first == -1 && gen_second == -1) {
        if (x != y || y != z) throw DomainError("trivial generators at distinct vertices");
        return -1;
    }
    if (gen_first == -1) {
        if (x != y) throw DomainError("trivial generator at distinct vertices");
        return gen_second;
    }
    if (gen_second == -1) {
        if (y != z) throw DomainError("trivial generator at distinct vertices");
        return gen_first;
    }
    (void)q;
    return std::nullopt;  // two arrows compose to zero
}

ProjMorphism pm_compose(const RszAlgebra& alg, const ProjMorphism& g, const ProjMorphism& f)
{
    if (!(f.tgt == g.src)) throw DomainError("shape mismatch in pm_compose: target(f) != source(g)");
    ProjMorphism r = pm_zero(f.src, g.tgt);
    for (auto& [zy, gens_g] : g.blocks) {
        int z = zy.first, y = zy.second;
        for (auto& [yx, gens_f] : f.blocks) {
            if (yx.first != y) continue;
            int x = yx.second;
            for (auto& [gg, mg] : gens_g)
                for (auto& [gf, mf] : gens_f) {
                    auto gen = gen_compose(alg.quiver(), x, y, z, gg, gf);
                    if (!gen) continue;
                    r.add_block({z, x}, *gen, mg * mf);
                }
        }
    }
    return r;
}

bool pm_is_radical(const ProjMorphism& f)
{
    for (auto& [yx, gens] : f.blocks)
        for (auto& [gen, m] : gens)
            if (gen == -1 && !m.is_zero()) return false;
    return true;
}

bool pm_equal(const ProjMorphism& f, const ProjMorphism& g)
{
    if (!(f.src == g.src) || !(f.tgt == g.tgt)) return false;
    return pm_add(f, pm_negate(g)).is_zero();
}

namespace {

// Offset of (vertex copy) blocks in the realized basis.
struct Layout {
    std::vector<std::pair<int, int>> order;  // (vertex, copy)
    std::map<int, int> start;                // vertex -> first basis index
    int dim = 0;
};

Layout layout_of(const RszAlgebra& alg, const ProjObj& o)
{
    Layout l;
    for (auto& [v, m] : o.mult) {
        l.start[v] = l.dim;
        for (int i = 0; i < m; ++i) l.order.emplace_back(v, i);
        l.dim += m * alg.proj_dim(v);
    }
    return l;
}

}  // namespace

RealizedMorphism pm_realize(const RszAlgebra& alg, const ProjMorphism& f)
{
    Layout ls = layout_of(alg, f.src), lt = layout_of(alg, f.tgt);
    RealizedMorphism r{Mat(alg.field(), lt.dim, ls.dim), {}, {}};
    auto grades = [&](const ProjObj& o, std::vector<int>& out) {
        for (auto& [v, m] : o.mult)
            for (int i = 0; i < m; ++i)
                for (int k = 0; k < alg.proj_dim(v); ++k) out.push_back(alg.basis_grade(v, k));
    };
    grades(f.tgt, r.row_grade);
    grades(f.src, r.col_grade);

    for (auto& [yx, gens] : f.blocks) {
        auto [y, x] = yx;
        int dpx = alg.proj_dim(x), dpy = alg.proj_dim(y);
        for (auto& [gen, m] : gens) {
            for (int i = 0; i < m.rows(); ++i)
                for (int j = 0; j < m.cols(); ++j) {
                    Scalar c = m.at(i, j);
                    if (c.is_zero()) continue;
                    int r0 = lt.start.at(y) + i * dpy;
                    int c0 = ls.start.at(x) + j * dpx;
                    if (gen == -1) {
                        // identity on P[x]
                        for (int k = 0; k < dpx; ++k) {
                            Scalar cur = r.mat.at(r0 + k, c0 + k);
                            r.mat.set(r0 + k, c0 + k, cur + c);
                        }
                    } else {
                        // P[a]: eps_x |-> abar in P[y], arrows |-> 0
                        int pos = alg.basis_pos(y, gen);
                        Scalar cur = r.mat.at(r0 + pos, c0);
                        r.mat.set(r0 + pos, c0 + 0, cur + c);
                    }
                }
        }
    }
    return r;
}

ProjMorphism pm_unrealize(const RszAlgebra& alg, const ProjObj& src, const ProjObj& tgt, const Mat& m)
{
    Layout ls = layout_of(alg, src), lt = layout_of(alg, tgt);
    if (m.rows() != lt.dim || m.cols() != ls.dim) throw DomainError("pm_unrealize: shape mismatch");
    ProjMorphism f = pm_zero(src, tgt);
    for (auto& [x, mx] : src.mult) {
        int dpx = alg.proj_dim(x);
        for (auto& [y, my] : tgt.mult) {
            int dpy = alg.proj_dim(y);
            for (int gen : alg.hom_basis(x, y)) {
                Mat coeff(alg.field(), my, mx);
                for (int i = 0; i < my; ++i)
                    for (int j = 0; j < mx; ++j) {
                        int r0 = lt.start.at(y) + i * dpy;
                        int c0 = ls.start.at(x) + j * dpx;
                        coeff.set(i, j, gen == -1 ? m.at(r0 + 0, c0 + 0)
                                                  : m.at(r0 + alg.basis_pos(y, gen), c0 + 0));
                    }
                f.add_block({y, x}, gen, coeff);
            }
        }
    }
    // Uniqueness check: the decomposition must realize back to m.
    if (!(pm_realize(alg, f).mat == m))
        throw DomainError("pm_unrealize: matrix is not a Lambda-linear morphism");
    return f;
}

}  // namespace rsq
