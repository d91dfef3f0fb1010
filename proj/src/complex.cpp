#include "rsq/complex.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

namespace rsq {

int RadicalComplex::lo() const { return terms_.empty() ? 0 : terms_.begin()->first; }
int RadicalComplex::hi() const { return terms_.empty() ? -1 : terms_.rbegin()->first; }

void RadicalComplex::set_mult(int degree, int vertex, int mult)
{
    if (vertex < 0 || vertex >= q_->num_vertices()) throw DomainError("vertex out of range");
    if (mult < 0) throw DomainError("negative multiplicity");
    if (mult == 0) {
        auto it = terms_.find(degree);
        if (it != terms_.end()) {
            it->second.erase(vertex);
            if (it->second.empty()) terms_.erase(it);
        }
        return;
    }
    terms_[degree][vertex] = mult;
}

int RadicalComplex::mult(int degree, int vertex) const
{
    auto it = terms_.find(degree);
    if (it == terms_.end()) return 0;
    auto jt = it->second.find(vertex);
    return jt == it->second.end() ? 0 : jt->second;
}

std::map<int, std::map<int, int>> RadicalComplex::dim_table() const
{
    RszAlgebra alg(q_, f_);
    std::map<int, std::map<int, int>> t;
    for (auto& [n, vs] : terms_)
        for (auto& [v, m] : vs) t[n][v] = m * alg.proj_dim(v);
    return t;
}

int RadicalComplex::total_dim() const
{
    int d = 0;
    for (auto& [n, vs] : dim_table())
        for (auto& [v, k] : vs) d += k;
    return d;
}

void RadicalComplex::set_block(int degree, int arrow, const Mat& m)
{
    const Arrow& a = q_->arrow(arrow);
    if (m.is_zero()) {
        diff_.erase({degree, arrow});
        return;
    }
    if (m.field() != f_) throw DomainError("field mismatch in set_block");
    if (m.rows() != mult(degree + 1, a.src) || m.cols() != mult(degree, a.tgt))
        throw DomainError("block shape mismatch for arrow " + a.id + " at degree " +
                          std::to_string(degree));
    diff_[{degree, arrow}] = m;
}

Mat RadicalComplex::block(int degree, int arrow) const
{
    auto it = diff_.find({degree, arrow});
    if (it != diff_.end()) return it->second;
    const Arrow& a = q_->arrow(arrow);
    return Mat(f_, mult(degree + 1, a.src), mult(degree, a.tgt));
}

bool RadicalComplex::has_block(int degree, int arrow) const
{
    return diff_.count({degree, arrow}) > 0;
}

void RadicalComplex::validate() const
{
    for (auto& [key, m] : diff_) {
        auto [n, arrow] = key;
        const Arrow& a = q_->arrow(arrow);
        if (m.rows() != mult(n + 1, a.src) || m.cols() != mult(n, a.tgt))
            throw DomainError("dangling block for arrow " + a.id);
    }
    // d^2 = 0 holds since rad^2 = 0; assert anyway on realized morphisms.
    RszAlgebra alg(q_, f_);
    for (auto it = terms_.begin(); it != terms_.end(); ++it) {
        int n = it->first;
        ProjMorphism sq = pm_compose(alg, differential(n + 1), differential(n));
        if (!sq.is_zero()) throw DomainError("d^2 != 0");
    }
}

ProjObj RadicalComplex::term_obj(int degree) const
{
    ProjObj o;
    auto it = terms_.find(degree);
    if (it != terms_.end()) o.mult = it->second;
    return o;
}

ProjMorphism RadicalComplex::differential(int degree) const
{
    ProjMorphism d = pm_zero(term_obj(degree), term_obj(degree + 1));
    for (auto& [key, m] : diff_) {
        if (key.first != degree) continue;
        const Arrow& a = q_->arrow(key.second);
        d.add_block({a.src, a.tgt}, key.second, m);
    }
    return d;
}

SupportQuiver RadicalComplex::support_quiver() const
{
    SupportQuiver s;
    for (auto& [n, vs] : terms_)
        for (auto& [v, m] : vs) s.vertices.emplace_back(v, n);
    std::sort(s.vertices.begin(), s.vertices.end(),
              [](const auto& a, const auto& b) { return std::make_pair(a.second, a.first) <
                                                        std::make_pair(b.second, b.first); });
    for (auto& [key, m] : diff_) s.arrows.emplace_back(key.second, key.first);

    auto index_of = [&](int v, int n) {
        for (size_t i = 0; i < s.vertices.size(); ++i)
            if (s.vertices[i].first == v && s.vertices[i].second == n) return int(i);
        return -1;
    };
    int nv = int(s.vertices.size());
    std::vector<std::vector<int>> adj(nv);
    for (auto& [arrow, n] : s.arrows) {
        const Arrow& a = q_->arrow(arrow);
        int u = index_of(a.tgt, n), w = index_of(a.src, n + 1);
        adj[u].push_back(w);
        adj[w].push_back(u);
    }
    std::vector<int> comp(nv, -1);
    int nc = 0;
    for (int i = 0; i < nv; ++i) {
        if (comp[i] >= 0) continue;
        std::deque<int> bfs{i};
        comp[i] = nc;
        while (!bfs.empty()) {
            int u = bfs.front();
            bfs.pop_front();
            for (int w : adj[u])
                if (comp[w] < 0) {
                    comp[w] = nc;
                    bfs.push_back(w);
                }
        }
        ++nc;
    }
    s.components.assign(nc, {});
    for (int i = 0; i < nv; ++i) s.components[comp[i]].push_back(i);
    return s;
}

std::vector<RadicalComplex> RadicalComplex::decompose_by_support() const
{
    SupportQuiver s = support_quiver();
    std::vector<RadicalComplex> parts;
    for (const auto& comp : s.components) {
        RadicalComplex part(q_, f_);
        std::vector<std::pair<int, int>> verts;  // (vertex, degree)
        for (int i : comp) verts.push_back(s.vertices[i]);
        auto in_part = [&](int v, int n) {
            return std::find(verts.begin(), verts.end(), std::make_pair(v, n)) != verts.end();
        };
        for (auto& [v, n] : verts) part.set_mult(n, v, mult(n, v));
        for (auto& [key, m] : diff_) {
            auto [n, arrow] = key;
            const Arrow& a = q_->arrow(arrow);
            if (in_part(a.tgt, n)) part.set_block(n, arrow, m);
        }
        part.set_truncated_below(truncated_below_ && !part.is_zero() && part.lo() == lo());
        parts.push_back(std::move(part));
    }
    return parts;
}

RadicalComplex RadicalComplex::shifted(int s) const
{
    RadicalComplex r(q_, f_);
    r.truncated_below_ = truncated_below_;
    for (auto& [n, vs] : terms_)
        for (auto& [v, m] : vs) r.set_mult(n - s, v, m);
    bool flip = (s % 2) != 0;
    for (auto& [key, m] : diff_) r.set_block(key.first - s, key.second, flip ? m.neg() : m);
    return r;
}

RadicalComplex RadicalComplex::twisted() const
{
    RadicalComplex r = *this;
    for (auto& [key, m] : r.diff_) m = m.neg();
    return r;
}

RadicalComplex RadicalComplex::truncate_below(int cut) const
{
    RadicalComplex r(q_, f_);
    bool dropped = false;
    for (auto& [n, vs] : terms_) {
        if (n < cut) {
            dropped = true;
            continue;
        }
        for (auto& [v, m] : vs) r.set_mult(n, v, m);
    }
    for (auto& [key, m] : diff_) {
        if (key.first < cut) continue;
        r.set_block(key.first, key.second, m);
    }
    r.set_truncated_below(truncated_below_ || dropped);
    return r;
}

RadicalComplex RadicalComplex::direct_sum(const RadicalComplex& a, const RadicalComplex& b)
{
    if (!(a.quiver() == b.quiver()) || a.field() != b.field())
        throw DomainError("direct_sum: mismatched algebras");
    RadicalComplex r(a.q_, a.f_);
    r.truncated_below_ = a.truncated_below_ || b.truncated_below_;
    for (auto& [n, vs] : a.terms_)
        for (auto& [v, m] : vs) r.set_mult(n, v, m);
    for (auto& [n, vs] : b.terms_)
        for (auto& [v, m] : vs) r.set_mult(n, v, r.mult(n, v) + m);
    auto all_keys = [&]() {
        std::vector<std::pair<int, int>> keys;
        for (auto& [k, m] : a.diff_) keys.push_back(k);
        for (auto& [k, m] : b.diff_)
            if (!a.diff_.count(k)) keys.push_back(k);
        return keys;
    }();
    for (auto& [n, arrow] : all_keys) {
        const Arrow& ar = a.q_->arrow(arrow);
        Mat blk(r.f_, r.mult(n + 1, ar.src), r.mult(n, ar.tgt));
        Mat ba = a.block(n, arrow), bb = b.block(n, arrow);
        blk.paste(0, 0, ba);
        blk.paste(ba.rows(), ba.cols(), bb);
        r.set_block(n, arrow, blk);
    }
    return r;
}

std::map<int, int> homology_of_pair(const RszAlgebra& alg, const ProjMorphism& d_in,
                                    const ProjMorphism& d_out)
{
    RealizedMorphism rin = pm_realize(alg, d_in);
    RealizedMorphism rout = pm_realize(alg, d_out);
    std::map<int, int> h;
    for (int v = 0; v < alg.quiver().num_vertices(); ++v) {
        std::vector<int> mid_cols, mid_rows;
        for (int j = 0; j < int(rout.col_grade.size()); ++j)
            if (rout.col_grade[j] == v) mid_cols.push_back(j);
        for (int i = 0; i < int(rin.row_grade.size()); ++i)
            if (rin.row_grade[i] == v) mid_rows.push_back(i);
        if (mid_cols.size() != mid_rows.size()) throw DomainError("inconsistent middle layout");
        if (mid_cols.empty()) continue;
        // restrict d_out to grade v
        std::vector<int> out_rows;
        for (int i = 0; i < int(rout.row_grade.size()); ++i)
            if (rout.row_grade[i] == v) out_rows.push_back(i);
        Mat dout_v(alg.field(), int(out_rows.size()), int(mid_cols.size()));
        for (int i = 0; i < int(out_rows.size()); ++i)
            for (int j = 0; j < int(mid_cols.size()); ++j)
                dout_v.set(i, j, rout.mat.at(out_rows[i], mid_cols[j]));
        std::vector<int> in_cols;
        for (int j = 0; j < int(rin.col_grade.size()); ++j)
            if (rin.col_grade[j] == v) in_cols.push_back(j);
        Mat din_v(alg.field(), int(mid_rows.size()), int(in_cols.size()));
        for (int i = 0; i < int(mid_rows.size()); ++i)
            for (int j = 0; j < int(in_cols.size()); ++j)
                din_v.set(i, j, rin.mat.at(mid_rows[i], in_cols[j]));
        int dim = int(mid_cols.size()) - dout_v.rank() - din_v.rank();
        if (dim < 0) throw DomainError("negative homology dimension (not a complex?)");
        if (dim > 0) h[v] = dim;
    }
    return h;
}

std::map<int, int> RadicalComplex::homology_dims(int degree) const
{
    if (truncated_below_ && degree <= lo())
        throw DomainError("homology at degree " + std::to_string(degree) +
                          " is unreliable below the truncation cut");
    RszAlgebra alg(q_, f_);
    return homology_of_pair(alg, differential(degree - 1), differential(degree));
}

bool RadicalComplex::equal_to(const RadicalComplex& o) const
{
    if (f_ != o.f_ || !(quiver() == o.quiver())) return false;
    if (terms_ != o.terms_ || truncated_below_ != o.truncated_below_) return false;
    for (auto& [key, m] : diff_)
        if (!(o.block(key.first, key.second) == m)) return false;
    for (auto& [key, m] : o.diff_)
        if (!(block(key.first, key.second) == m)) return false;
    return true;
}

// ---------------------------------------------------------------------------
// chain maps

bool ChainMap::is_zero() const
{
    for (auto& [k, gens] : blocks)
        for (auto& [g, m] : gens)
            if (!m.is_zero()) return false;
    return true;
}

void ChainMap::add_block(int degree, int y, int x, int gen, const Mat& m)
{
    if (m.is_zero()) return;
    auto& slot = blocks[{degree, y, x}];
    auto it = slot.find(gen);
    if (it == slot.end())
        slot.emplace(gen, m);
    else {
        it->second = it->second + m;
        if (it->second.is_zero()) slot.erase(it);
    }
    if (slot.empty()) blocks.erase({degree, y, x});
}

Mat ChainMap::block(FieldSpec f, int degree, int y, int x, int gen, int rows, int cols) const
{
    auto it = blocks.find({degree, y, x});
    if (it != blocks.end()) {
        auto jt = it->second.find(gen);
        if (jt != it->second.end()) return jt->second;
    }
    return Mat(f, rows, cols);
}

ProjMorphism chain_component(const RadicalComplex& x, const RadicalComplex& y, const ChainMap& f,
                             int degree)
{
    ProjMorphism m = pm_zero(x.term_obj(degree), y.term_obj(degree));
    for (auto& [key, gens] : f.blocks) {
        auto [n, yv, xv] = key;
        if (n != degree) continue;
        for (auto& [g, blk] : gens) m.add_block({yv, xv}, g, blk);
    }
    return m;
}

bool chain_is_morphism(const RadicalComplex& x, const RadicalComplex& y, const ChainMap& f)
{
    RszAlgebra alg(x.quiver_ptr(), x.field());
    int lo = std::min(x.lo(), y.lo()) - 1, hi = std::max(x.hi(), y.hi());
    for (int n = lo; n <= hi; ++n) {
        ProjMorphism lhs =
            pm_compose(alg, chain_component(x, y, f, n + 1), x.differential(n));
        ProjMorphism rhs = pm_compose(alg, y.differential(n), chain_component(x, y, f, n));
        if (!pm_equal(lhs, rhs)) return false;
    }
    return true;
}

ChainMap chain_compose(const RadicalComplex& x, const RadicalComplex& y, const RadicalComplex& z,
                       const ChainMap& f, const ChainMap& g)
{
    // g: x -> y, f: y -> z
    RszAlgebra alg(x.quiver_ptr(), x.field());
    ChainMap r;
    int lo = std::max(x.lo(), z.lo()), hi = std::min(x.hi(), z.hi());
    for (int n = lo; n <= hi; ++n) {
        ProjMorphism comp = pm_compose(alg, chain_component(y, z, f, n), chain_component(x, y, g, n));
        for (auto& [yx, gens] : comp.blocks)
            for (auto& [gen, m] : gens) r.add_block(n, yx.first, yx.second, gen, m);
    }
    return r;
}

ChainMap chain_shift(const ChainMap& f, int s)
{
    ChainMap r;
    for (auto& [key, gens] : f.blocks) {
        auto [n, yv, xv] = key;
        for (auto& [g, m] : gens) r.add_block(n - s, yv, xv, g, m);
    }
    return r;
}

// ---------------------------------------------------------------------------
// hom_homotopy

namespace {

struct VarBlock {
    int n, yv, xv, gen;
    int rows, cols, offset;
};

struct VarSpace {
    std::vector<VarBlock> blocks;
    int total = 0;
    int find(int n, int yv, int xv, int gen) const
    {
        for (const auto& b : blocks)
            if (b.n == n && b.yv == yv && b.xv == xv && b.gen == gen) return b.offset;
        return -1;
    }
};

VarSpace make_var_space(const RszAlgebra& alg, const RadicalComplex& x, const RadicalComplex& y)
{
    VarSpace vs;
    int nlo = std::max(x.lo(), y.lo()), nhi = std::min(x.hi(), y.hi());
    for (int n = nlo; n <= nhi; ++n) {
        for (auto& [yv, my] : y.term_obj(n).mult)
            for (auto& [xv, mx] : x.term_obj(n).mult)
                for (int gen : alg.hom_basis(xv, yv)) {
                    vs.blocks.push_back({n, yv, xv, gen, my, mx, vs.total});
                    vs.total += my * mx;
                }
    }
    return vs;
}

}  // namespace

namespace {

struct HomProblem {
    VarSpace vars;
    Mat eq;     // chain-map equations on the variable space
    Mat bspan;  // boundary columns, including the truncated-bottom correction
};

HomProblem build_hom_problem(const RadicalComplex& x, const RadicalComplex& y)
{
    FieldSpec f = x.field();
    RszAlgebra alg(x.quiver_ptr(), f);
    HomProblem pr;
    pr.vars = make_var_space(alg, x, y);

    // Chain-map equations f^{n+1} d_x^n = d_y^n f^n. Only trivial-path blocks
    // of f are constrained; the equations are indexed by the radical
    // generators of Hom(X^n, Y^{n+1}).
    int eq_lo = y.truncated_below() ? std::max(x.lo(), y.lo()) : std::max(x.lo(), y.lo() - 1);
    int eq_hi = std::min(x.hi(), y.hi() - 1);

    std::vector<std::vector<std::pair<int, Scalar>>> rows;
    for (int n = eq_lo; n <= eq_hi; ++n) {
        for (auto& [zv, mz] : y.term_obj(n + 1).mult) {
            for (auto& [xv, mx] : x.term_obj(n).mult) {
                for (int a : alg.quiver().arrows_between(zv, xv)) {
                    for (int i = 0; i < mz; ++i)
                        for (int j = 0; j < mx; ++j) {
                            std::vector<std::pair<int, Scalar>> row;
                            // LHS: F_eps^{n+1}(z,z) * XB(n, a)
                            int off = pr.vars.find(n + 1, zv, zv, -1);
                            if (off >= 0 && x.mult(n + 1, zv) > 0) {
                                Mat xb = x.block(n, a);
                                int kk = x.mult(n + 1, zv);
                                for (int k = 0; k < kk; ++k) {
                                    Scalar c = xb.at(k, j);
                                    if (!c.is_zero()) row.emplace_back(off + i * kk + k, c);
                                }
                            }
                            // RHS: YB(n, a) * F_eps^{n}(x,x)
                            off = pr.vars.find(n, xv, xv, -1);
                            if (off >= 0 && y.mult(n, xv) > 0) {
                                Mat yb = y.block(n, a);
                                int kk = x.mult(n, xv);
                                int rowsF = y.mult(n, xv);
                                for (int k = 0; k < rowsF; ++k) {
                                    Scalar c = yb.at(i, k);
                                    if (!c.is_zero()) row.emplace_back(off + k * kk + j, c.neg());
                                }
                            }
                            if (!row.empty()) rows.push_back(std::move(row));
                        }
                }
            }
        }
    }
    pr.eq = Mat(f, int(rows.size()), pr.vars.total);
    for (int i = 0; i < int(rows.size()); ++i)
        for (auto& [j, c] : rows[i]) pr.eq.set(i, j, pr.eq.at(i, j) + c);

    // Boundary space: images of trivial-path homotopy blocks h^n(v, v).
    std::vector<Mat> boundary_cols;
    int h_lo = std::max(x.lo(), y.lo() + 1), h_hi = std::min(x.hi(), y.hi() + 1);
    for (int n = h_lo; n <= h_hi; ++n) {
        for (auto& [v, mxv] : x.term_obj(n).mult) {
            int myv = y.mult(n - 1, v);
            if (myv == 0) continue;
            for (int i = 0; i < myv; ++i)
                for (int j = 0; j < mxv; ++j) {
                    Mat col(f, pr.vars.total, 1);
                    bool nonzero = false;
                    // h^n . d_x^{n-1}: lands in degree n-1 blocks
                    for (int a : alg.quiver().out_arrows(v)) {
                        Mat xb = x.block(n - 1, a);
                        if (xb.is_zero()) continue;
                        int xsrc = alg.quiver().arrow(a).tgt;
                        int off = pr.vars.find(n - 1, v, xsrc, a);
                        if (off < 0) continue;
                        int cols2 = x.mult(n - 1, xsrc);
                        for (int j2 = 0; j2 < cols2; ++j2) {
                            Scalar c = xb.at(j, j2);
                            if (c.is_zero()) continue;
                            col.set(off + i * cols2 + j2, 0, col.at(off + i * cols2 + j2, 0) + c);
                            nonzero = true;
                        }
                    }
                    // d_y^{n-1} . h^n: lands in degree n blocks
                    for (int a : alg.quiver().in_arrows(v)) {
                        const Arrow& ar = alg.quiver().arrow(a);
                        Mat yb = y.block(n - 1, a);
                        if (yb.is_zero()) continue;
                        int off = pr.vars.find(n, ar.src, v, a);
                        if (off < 0) continue;
                        int cols2 = x.mult(n, v);
                        for (int i2 = 0; i2 < yb.rows(); ++i2) {
                            Scalar c = yb.at(i2, i);
                            if (c.is_zero()) continue;
                            col.set(off + i2 * cols2 + j, 0, col.at(off + i2 * cols2 + j, 0) + c);
                            nonzero = true;
                        }
                    }
                    if (nonzero) boundary_cols.push_back(col);
                }
        }
    }

    // Truncated bottom correction: quotient additionally by radical window
    // cycles supported in y's lowest degree (see header).
    if (y.truncated_below() && !y.is_zero()) {
        int bot = y.lo();
        std::vector<int> w_coords;
        for (const auto& b : pr.vars.blocks)
            if (b.n == bot && b.gen != -1)
                for (int k = 0; k < b.rows * b.cols; ++k) w_coords.push_back(b.offset + k);
        if (!w_coords.empty()) {
            std::vector<bool> in_w(pr.vars.total, false);
            for (int c : w_coords) in_w[c] = true;
            int extra = 0;
            for (int c = 0; c < pr.vars.total; ++c)
                if (!in_w[c]) ++extra;
            Mat sys(f, pr.eq.rows() + extra, pr.vars.total);
            sys.paste(0, 0, pr.eq);
            int r = pr.eq.rows();
            for (int c = 0; c < pr.vars.total; ++c)
                if (!in_w[c]) sys.set(r++, c, 1);
            Mat ker = sys.rank_kernel().kernel;
            for (int c = 0; c < ker.cols(); ++c)
                boundary_cols.push_back(ker.submat(0, c, pr.vars.total, 1));
        }
    }

    pr.bspan = Mat(f, pr.vars.total, int(boundary_cols.size()));
    for (int c = 0; c < int(boundary_cols.size()); ++c) pr.bspan.paste(0, c, boundary_cols[c]);
    return pr;
}

Mat chain_vec(const VarSpace& vars, FieldSpec f, const ChainMap& g)
{
    Mat v(f, vars.total, 1);
    for (auto& [key, gens] : g.blocks) {
        auto [n, yv, xv] = key;
        for (auto& [gen, m] : gens) {
            if (m.is_zero()) continue;
            int off = vars.find(n, yv, xv, gen);
            if (off < 0) throw DomainError("chain map has a block outside the hom window");
            for (int i = 0; i < m.rows(); ++i)
                for (int j = 0; j < m.cols(); ++j)
                    v.set(off + i * m.cols() + j, 0, m.at(i, j));
        }
    }
    return v;
}

void check_hom_preconditions(const RadicalComplex& x, const RadicalComplex& y)
{
    if (x.field() != y.field() || !(x.quiver() == y.quiver()))
        throw DomainError("hom_homotopy: mismatched algebras");
    if (y.truncated_below() && x.truncated_below() && x.lo() > y.lo() - 1)
        throw DomainError("hom_homotopy: insufficient truncation overlap; extend x's window at "
                          "least one degree below y's lowest degree");
}

}  // namespace

HomResult hom_homotopy(const RadicalComplex& x, const RadicalComplex& y)
{
    check_hom_preconditions(x, y);
    FieldSpec f = x.field();
    if (x.is_zero() || y.is_zero()) return {0, {}};
    HomProblem pr = build_hom_problem(x, y);
    if (pr.vars.total == 0) return {0, {}};
    Mat zbasis = pr.eq.rank_kernel().kernel;
    int brank = pr.bspan.rank();
    int dim = zbasis.cols() - brank;

    HomResult res;
    res.dim = dim;
    Mat span = pr.bspan;
    int span_rank = brank;
    for (int c = 0; c < zbasis.cols() && int(res.basis.size()) < dim; ++c) {
        Mat cand = Mat::hcat(span, zbasis.submat(0, c, pr.vars.total, 1));
        int cr = cand.rank();
        if (cr > span_rank) {
            span = cand;
            span_rank = cr;
            ChainMap cm;
            for (const auto& b : pr.vars.blocks) {
                Mat blk(f, b.rows, b.cols);
                bool nz = false;
                for (int i = 0; i < b.rows; ++i)
                    for (int j = 0; j < b.cols; ++j) {
                        Scalar v = zbasis.at(b.offset + i * b.cols + j, c);
                        if (!v.is_zero()) nz = true;
                        blk.set(i, j, v);
                    }
                if (nz) cm.add_block(b.n, b.yv, b.xv, b.gen, blk);
            }
            res.basis.push_back(std::move(cm));
        }
    }
    return res;
}

bool chain_null_homotopic(const RadicalComplex& x, const RadicalComplex& y, const ChainMap& f)
{
    check_hom_preconditions(x, y);
    if (f.is_zero()) return true;
    if (x.is_zero() || y.is_zero()) return true;
    HomProblem pr = build_hom_problem(x, y);
    Mat v = chain_vec(pr.vars, x.field(), f);
    if (!(pr.eq * v).is_zero()) throw DomainError("not a chain map");
    return Mat::hcat(pr.bspan, v).rank() == pr.bspan.rank();
}

bool chain_in_span(const RadicalComplex& x, const RadicalComplex& y, const ChainMap& f,
                   const std::vector<ChainMap>& span)
{
    check_hom_preconditions(x, y);
    if (x.is_zero() || y.is_zero()) return true;
    HomProblem pr = build_hom_problem(x, y);
    Mat base = pr.bspan;
    for (const auto& g : span) base = Mat::hcat(base, chain_vec(pr.vars, x.field(), g));
    Mat v = chain_vec(pr.vars, x.field(), f);
    return Mat::hcat(base, v).rank() == base.rank();
}

// ---------------------------------------------------------------------------
// ProjComplex

void ProjComplex::add_entry(int degree, int i, int j, int gen, const Scalar& c)
{
    if (c.is_zero()) return;
    auto& perdeg = blocks_[degree];
    auto& slot = perdeg[{i, j}];
    auto it = slot.find(gen);
    if (it == slot.end())
        slot.emplace(gen, c);
    else {
        it->second = it->second + c;
        if (it->second.is_zero()) slot.erase(it);
    }
    if (slot.empty()) perdeg.erase({i, j});
    if (perdeg.empty()) blocks_.erase(degree);
}

const std::map<std::pair<int, int>, std::map<int, Scalar>>& ProjComplex::entries(int degree) const
{
    static const std::map<std::pair<int, int>, std::map<int, Scalar>> empty;
    auto it = blocks_.find(degree);
    return it == blocks_.end() ? empty : it->second;
}

ProjComplex ProjComplex::from_radical(const RadicalComplex& c)
{
    ProjComplex p(c.quiver_ptr(), c.field());
    p.set_truncated_below(c.truncated_below());
    // copies in vertex order, unrolled
    std::map<int, std::map<int, int>> first;  // degree -> vertex -> first copy index
    for (auto& [n, vs] : c.terms()) {
        for (auto& [v, m] : vs) {
            first[n][v] = int(p.copies_[n].size());
            for (int i = 0; i < m; ++i) p.copies_[n].push_back(v);
        }
    }
    for (auto& [key, m] : c.blocks()) {
        auto [n, arrow] = key;
        const Arrow& a = c.quiver().arrow(arrow);
        for (int i = 0; i < m.rows(); ++i)
            for (int j = 0; j < m.cols(); ++j)
                p.add_entry(n, first[n + 1][a.src] + i, first[n][a.tgt] + j, arrow, m.at(i, j));
    }
    return p;
}

bool ProjComplex::is_radical() const
{
    for (auto& [n, ent] : blocks_)
        for (auto& [ij, gens] : ent)
            if (gens.count(-1)) return false;
    return true;
}

RadicalComplex ProjComplex::to_radical() const
{
    if (!is_radical()) throw DomainError("complex has trivial-path differential components");
    RadicalComplex r(q_, f_);
    r.set_truncated_below(truncated_below_);
    // positions of each copy among its vertex group
    std::map<int, std::vector<int>> pos;  // degree -> per-copy rank within vertex
    std::map<int, std::map<int, int>> count;
    for (auto& [n, cs] : copies_) {
        pos[n].resize(cs.size());
        for (size_t i = 0; i < cs.size(); ++i) pos[n][i] = count[n][cs[i]]++;
        for (auto& [v, m] : count[n]) r.set_mult(n, v, m);
    }
    for (auto& [n, ent] : blocks_) {
        std::map<int, Mat> arrow_blocks;
        for (auto& [ij, gens] : ent) {
            auto [i, j] = ij;
            for (auto& [gen, c] : gens) {
                const Arrow& a = q_->arrow(gen);
                auto it = arrow_blocks.find(gen);
                if (it == arrow_blocks.end())
                    it = arrow_blocks
                             .emplace(gen, Mat(f_, count[n + 1][a.src], count[n][a.tgt]))
                             .first;
                int ri = pos[n + 1][i], cj = pos[n][j];
                it->second.set(ri, cj, it->second.at(ri, cj) + c);
            }
        }
        for (auto& [arrow, m] : arrow_blocks) r.set_block(n, arrow, m);
    }
    r.validate();
    return r;
}

ProjObj ProjComplex::term_obj(int degree) const
{
    ProjObj o;
    auto it = copies_.find(degree);
    if (it == copies_.end()) return o;
    for (int v : it->second) ++o.mult[v];
    return o;
}

ProjMorphism ProjComplex::differential(int degree) const
{
    ProjMorphism d = pm_zero(term_obj(degree), term_obj(degree + 1));
    auto itc = copies_.find(degree);
    auto itc1 = copies_.find(degree + 1);
    if (itc == copies_.end() || itc1 == copies_.end()) return d;
    // per-vertex copy ranks
    auto ranks = [&](const std::vector<int>& cs) {
        std::map<int, int> cnt;
        std::vector<int> r(cs.size());
        for (size_t i = 0; i < cs.size(); ++i) r[i] = cnt[cs[i]]++;
        return r;
    };
    auto rlo = ranks(itc->second), rhi = ranks(itc1->second);
    for (auto& [ij, gens] : entries(degree)) {
        auto [i, j] = ij;
        int xv = itc->second.at(j), yv = itc1->second.at(i);
        for (auto& [gen, c] : gens) {
            Mat m(f_, d.tgt.mult.count(yv) ? d.tgt.mult.at(yv) : 0,
                  d.src.mult.count(xv) ? d.src.mult.at(xv) : 0);
            m.set(rhi[i], rlo[j], c);
            d.add_block({yv, xv}, gen, m);
        }
    }
    return d;
}

void ProjComplex::validate() const
{
    RszAlgebra alg(q_, f_);
    for (auto& [n, ent] : blocks_) {
        auto itc = copies_.find(n), itc1 = copies_.find(n + 1);
        for (auto& [ij, gens] : ent) {
            auto [i, j] = ij;
            if (itc == copies_.end() || j >= int(itc->second.size()))
                throw DomainError("entry references missing source copy");
            if (itc1 == copies_.end() || i >= int(itc1->second.size()))
                throw DomainError("entry references missing target copy");
            int xv = itc->second[j], yv = itc1->second[i];
            for (auto& [gen, c] : gens) {
                if (gen == -1) {
                    if (xv != yv) throw DomainError("trivial-path entry between distinct vertices");
                } else {
                    const Arrow& a = q_->arrow(gen);
                    if (a.tgt != xv || a.src != yv)
                        throw DomainError("arrow entry with mismatched endpoints");
                }
            }
        }
    }
    for (auto& [n, cs] : copies_) {
        ProjMorphism sq = pm_compose(alg, differential(n + 1), differential(n));
        if (!sq.is_zero()) throw DomainError("d^2 != 0 in ProjComplex");
    }
}

std::map<int, int> ProjComplex::homology_dims(int degree) const
{
    if (truncated_below_ && !copies_.empty() && degree <= copies_.begin()->first)
        throw DomainError("homology unreliable below the truncation cut");
    RszAlgebra alg(q_, f_);
    return homology_of_pair(alg, differential(degree - 1), differential(degree));
}

std::map<int, std::map<int, int>> ProjComplex::dim_table() const
{
    RszAlgebra alg(q_, f_);
    std::map<int, std::map<int, int>> t;
    for (auto& [n, cs] : copies_)
        for (int v : cs) t[n][v] += alg.proj_dim(v);
    return t;
}

ProjComplex ProjComplex::shifted(int s) const
{
    ProjComplex r(q_, f_);
    r.truncated_below_ = truncated_below_;
    for (auto& [n, cs] : copies_) r.copies_[n - s] = cs;
    bool flip = (s % 2) != 0;
    for (auto& [n, ent] : blocks_)
        for (auto& [ij, gens] : ent)
            for (auto& [gen, c] : gens)
                r.add_entry(n - s, ij.first, ij.second, gen, flip ? c.neg() : c);
    return r;
}

ProjComplex ProjComplex::direct_sum(const ProjComplex& a, const ProjComplex& b)
{
    if (!(a.quiver() == b.quiver()) || a.field() != b.field())
        throw DomainError("direct_sum: mismatched algebras");
    ProjComplex r(a.q_, a.f_);
    r.truncated_below_ = a.truncated_below_ || b.truncated_below_;
    std::map<int, int> a_size;
    for (auto& [n, cs] : a.copies_) {
        r.copies_[n] = cs;
        a_size[n] = int(cs.size());
    }
    for (auto& [n, cs] : b.copies_)
        for (int v : cs) r.copies_[n].push_back(v);
    for (auto& [n, ent] : a.blocks_)
        for (auto& [ij, gens] : ent)
            for (auto& [gen, c] : gens) r.add_entry(n, ij.first, ij.second, gen, c);
    for (auto& [n, ent] : b.blocks_)
        for (auto& [ij, gens] : ent)
            for (auto& [gen, c] : gens)
                r.add_entry(n, ij.first + (a_size.count(n + 1) ? a_size[n + 1] : 0),
                            ij.second + (a_size.count(n) ? a_size[n] : 0), gen, c);
    return r;
}

ProjComplex mapping_cone(const RadicalComplex& x, const RadicalComplex& y, const ChainMap& f)
{
    if (!(x.quiver() == y.quiver()) || x.field() != y.field())
        throw DomainError("mapping_cone: mismatched algebras");
    ProjComplex c(x.quiver_ptr(), x.field());
    c.set_truncated_below(x.truncated_below() || y.truncated_below());
    // copies: x-part (degree n+1) first, then y-part (degree n)
    std::map<int, std::map<int, int>> xfirst, yfirst;  // degree -> vertex -> first copy
    int clo = std::min(x.lo() - 1, y.lo()), chi = std::max(x.hi() - 1, y.hi());
    for (int n = clo; n <= chi; ++n) {
        auto& cs = c.copies()[n];
        for (auto& [v, m] : x.term_obj(n + 1).mult) {
            xfirst[n][v] = int(cs.size());
            for (int i = 0; i < m; ++i) cs.push_back(v);
        }
        for (auto& [v, m] : y.term_obj(n).mult) {
            yfirst[n][v] = int(cs.size());
            for (int i = 0; i < m; ++i) cs.push_back(v);
        }
        if (cs.empty()) c.copies().erase(n);
    }
    // -d_x blocks
    for (auto& [key, m] : x.blocks()) {
        auto [n, arrow] = key;
        const Arrow& a = x.quiver().arrow(arrow);
        for (int i = 0; i < m.rows(); ++i)
            for (int j = 0; j < m.cols(); ++j)
                c.add_entry(n - 1, xfirst[n][a.src] + i, xfirst[n - 1][a.tgt] + j, arrow,
                            m.at(i, j).neg());
    }
    // d_y blocks
    for (auto& [key, m] : y.blocks()) {
        auto [n, arrow] = key;
        const Arrow& a = y.quiver().arrow(arrow);
        for (int i = 0; i < m.rows(); ++i)
            for (int j = 0; j < m.cols(); ++j)
                c.add_entry(n, yfirst[n + 1][a.src] + i, yfirst[n][a.tgt] + j, arrow, m.at(i, j));
    }
    // f blocks: x^{n+1} -> y^{n+1}, i.e. cone degree n -> n+1
    for (auto& [key, gens] : f.blocks) {
        auto [n, yv, xv] = key;
        for (auto& [g, m] : gens)
            for (int i = 0; i < m.rows(); ++i)
                for (int j = 0; j < m.cols(); ++j)
                    c.add_entry(n - 1, yfirst[n][yv] + i, xfirst[n - 1][xv] + j, g, m.at(i, j));
    }
    c.validate();
    return c;
}

// ---------------------------------------------------------------------------
// radicalize

namespace {

using GenPoly = std::map<int, Scalar>;  // gen -> coeff

GenPoly poly_neg(const GenPoly& p)
{
    GenPoly r;
    for (auto& [g, c] : p) r[g] = c.neg();
    return r;
}

void poly_accum(GenPoly& into, const GenPoly& p)
{
    for (auto& [g, c] : p) {
        auto it = into.find(g);
        if (it == into.end())
            into.emplace(g, c);
        else {
            it->second = it->second + c;
            if (it->second.is_zero()) into.erase(it);
        }
    }
}

// second o first between single projectives; vertices give the composability
// context (x --first--> y --second--> z).
GenPoly poly_compose(const Quiver& q, int x, int y, int z, const GenPoly& second, const GenPoly& first)
{
    GenPoly r;
    for (auto& [g2, c2] : second)
        for (auto& [g1, c1] : first) {
            auto gen = gen_compose(q, x, y, z, g2, g1);
            if (!gen) continue;
            Scalar c = c2 * c1;
            if (c.is_zero()) continue;
            auto it = r.find(*gen);
            if (it == r.end())
                r.emplace(*gen, c);
            else {
                it->second = it->second + c;
                if (it->second.is_zero()) r.erase(it);
            }
        }
    return r;
}

// inverse of an invertible endomorphism eps*a + radical of P[v]
GenPoly poly_inverse(const GenPoly& u, FieldSpec f)
{
    auto it = u.find(-1);
    if (it == u.end() || it->second.is_zero()) throw DomainError("pivot not invertible");
    Scalar a_inv = it->second.inv();
    GenPoly r;
    r[-1] = a_inv;
    Scalar m = (a_inv * a_inv).neg();
    for (auto& [g, c] : u)
        if (g != -1) r[g] = m * c;
    return r;
}

struct Atomic {
    // mutable working form of a ProjComplex
    std::map<int, std::vector<int>> copies;
    std::map<int, std::map<std::pair<int, int>, GenPoly>> blocks;

    GenPoly get(int n, int i, int j) const
    {
        auto it = blocks.find(n);
        if (it == blocks.end()) return {};
        auto jt = it->second.find({i, j});
        return jt == it->second.end() ? GenPoly{} : jt->second;
    }
    void put(int n, int i, int j, GenPoly p)
    {
        if (p.empty()) {
            auto it = blocks.find(n);
            if (it != blocks.end()) {
                it->second.erase({i, j});
                if (it->second.empty()) blocks.erase(it);
            }
            return;
        }
        blocks[n][{i, j}] = std::move(p);
    }
    void drop_copy(int n, int idx)
    {
        auto& cs = copies[n];
        cs.erase(cs.begin() + idx);
        if (cs.empty()) copies.erase(n);
        // reindex blocks at degrees n-1 (targets) and n (sources)
        auto reindex = [&](int deg, bool target_side) {
            auto it = blocks.find(deg);
            if (it == blocks.end()) return;
            std::map<std::pair<int, int>, GenPoly> nb;
            for (auto& [ij, p] : it->second) {
                auto [i, j] = ij;
                if (target_side) {
                    if (i == idx) throw DomainError("dropping copy with live block");
                    nb[{i > idx ? i - 1 : i, j}] = p;
                } else {
                    if (j == idx) throw DomainError("dropping copy with live block");
                    nb[{i, j > idx ? j - 1 : j}] = p;
                }
            }
            it->second = std::move(nb);
            if (it->second.empty()) blocks.erase(deg);
        };
        reindex(n - 1, true);
        reindex(n, false);
    }
};

}  // namespace

RadicalComplex radicalize(const ProjComplex& x)
{
    x.validate();
    Atomic w;
    w.copies = x.copies();
    for (auto& [n, cs] : x.copies())
        for (auto& [ij, gens] : x.entries(n))
            if (!gens.empty()) w.blocks[n][ij] = gens;

    FieldSpec f = x.field();
    const Quiver& q = x.quiver();

    for (;;) {
        // topmost trivial-path pivot
        int pn = 0, pi = -1, pj = -1;
        bool found = false;
        for (auto it = w.blocks.rbegin(); it != w.blocks.rend() && !found; ++it) {
            for (auto& [ij, p] : it->second) {
                auto e = p.find(-1);
                if (e != p.end() && !e->second.is_zero()) {
                    pn = it->first;
                    pi = ij.first;
                    pj = ij.second;
                    found = true;
                    break;
                }
            }
        }
        if (!found) break;

        int v = w.copies[pn][pj];  // = w.copies[pn+1][pi]
        GenPoly u = w.get(pn, pi, pj);
        GenPoly u_inv = poly_inverse(u, f);

        int n_src = int(w.copies[pn].size());
        int n_tgt = int(w.copies[pn + 1].size());

        // Schur update of d^pn: d_{ij} -= d_{i,pj} u^{-1} d_{pi,j}
        std::map<int, GenPoly> row_pi;  // d_{pi, j}
        std::map<int, GenPoly> col_pj;  // d_{i, pj}
        for (int j = 0; j < n_src; ++j)
            if (j != pj) {
                auto p = w.get(pn, pi, j);
                if (!p.empty()) row_pi[j] = p;
            }
        for (int i = 0; i < n_tgt; ++i)
            if (i != pi) {
                auto p = w.get(pn, i, pj);
                if (!p.empty()) col_pj[i] = p;
            }
        for (auto& [i, dcol] : col_pj)
            for (auto& [j, drow] : row_pi) {
                int xv = w.copies[pn][j];
                int yv = w.copies[pn + 1][i];
                // P[xv] -> P[v] -> P[v] -> P[yv]
                GenPoly mid = poly_compose(q, xv, v, v, u_inv, drow);
                GenPoly corr = poly_compose(q, xv, v, yv, dcol, mid);
                GenPoly cur = w.get(pn, i, j);
                poly_accum(cur, poly_neg(corr));
                w.put(pn, i, j, cur);
            }
        // clear pivot row and column at degree pn
        for (auto& [j, p] : row_pi) w.put(pn, pi, j, {});
        for (auto& [i, p] : col_pj) w.put(pn, i, pj, {});
        w.put(pn, pi, pj, {});

        // d^{pn+1} <- d^{pn+1} S^{-1}: column pi receives -sum_m d_{k,m} s_m,
        // s_m = -d_{m,pj} u^{-1} (m != pi). Afterwards the column must vanish.
        if (w.copies.count(pn + 2)) {
            int n_up = int(w.copies[pn + 2].size());
            for (int k = 0; k < n_up; ++k) {
                GenPoly acc = w.get(pn + 1, k, pi);
                for (auto& [m, dm] : col_pj) {
                    GenPoly dk = w.get(pn + 1, k, m);
                    if (dk.empty()) continue;
                    int yv = w.copies[pn + 2][k];
                    // s_m = -(d_{m,pj} u^{-1}): P[v] -> P[copies[pn+1][m]]
                    GenPoly sm = poly_neg(poly_compose(q, v, v, w.copies[pn + 1][m], dm, u_inv));
                    GenPoly corr = poly_compose(q, v, w.copies[pn + 1][m], yv, dk, sm);
                    poly_accum(acc, poly_neg(corr));
                }
                if (!acc.empty()) throw DomainError("radicalize: pivot column failed to clear");
                w.put(pn + 1, k, pi, {});
            }
        }

        // d^{pn-1} <- T^{-1} d^{pn-1}: row pj receives -sum_j t_j d_{j,l},
        // t_j = -(u^{-1} d_{pi,j}). Afterwards the row must vanish.
        if (w.copies.count(pn - 1)) {
            int n_dn = int(w.copies[pn - 1].size());
            for (int l = 0; l < n_dn; ++l) {
                GenPoly acc = w.get(pn - 1, pj, l);
                int xv = w.copies[pn - 1][l];
                for (auto& [j, dj] : row_pi) {
                    GenPoly dl = w.get(pn - 1, j, l);
                    if (dl.empty()) continue;
                    // t_j = -(u^{-1} d_{pi,j}): P[copies[pn][j]] -> P[v]
                    GenPoly tj = poly_neg(poly_compose(q, w.copies[pn][j], v, v, u_inv, dj));
                    GenPoly corr = poly_compose(q, xv, w.copies[pn][j], v, tj, dl);
                    poly_accum(acc, poly_neg(corr));
                }
                if (!acc.empty()) throw DomainError("radicalize: pivot row failed to clear");
                w.put(pn - 1, pj, l, {});
            }
        }

        // remove the cancelled pair (order matters: higher degree first)
        w.drop_copy(pn + 1, pi);
        w.drop_copy(pn, pj);
        // drop now-empty degrees already handled in drop_copy
    }

    ProjComplex out(x.quiver_ptr(), f);
    out.set_truncated_below(x.truncated_below());
    for (auto& [n, cs] : w.copies) out.copies()[n] = cs;
    for (auto& [n, ent] : w.blocks)
        for (auto& [ij, p] : ent)
            for (auto& [g, c] : p) out.add_entry(n, ij.first, ij.second, g, c);
    return out.to_radical();
}

}  // namespace rsq
