#include "rsq/koszul.hpp"

#include <sstream>

namespace rsq {

namespace {

QuiverPtr op_window(const CoverWindow& cw)
{
    // cached per window would be nicer; windows are small
    return std::make_shared<Quiver>(opposite(cw.window_quiver()));
}

void check_rep_over_op_window(const CoverWindow& cw, const QuiverRep& m)
{
    if (!(m.quiver() == opposite(cw.window_quiver())))
        throw DomainError("representation is not over the opposite window quiver");
}

}  // namespace

QuiverRep window_op_injective(const CoverWindow& cw, FieldSpec f, const CoverVertex& x)
{
    int wi = cw.window_index(x);
    if (wi < 0) throw DomainError("vertex not in window");
    return injective_at(op_window(cw), f, wi);
}

QuiverRep window_op_projective(const CoverWindow& cw, FieldSpec f, const CoverVertex& x)
{
    int wi = cw.window_index(x);
    if (wi < 0) throw DomainError("vertex not in window");
    return projective_at(op_window(cw), f, wi);
}

QuiverRep window_op_simple(const CoverWindow& cw, FieldSpec f, const CoverVertex& x)
{
    int wi = cw.window_index(x);
    if (wi < 0) throw DomainError("vertex not in window");
    return simple_at(op_window(cw), f, wi);
}

bool koszul_truncation_flag(const CoverWindow& cw, const QuiverRep& m)
{
    for (int wi = 0; wi < cw.window_quiver().num_vertices(); ++wi) {
        if (m.dim(wi) == 0) continue;
        CoverVertex cv = cw.vertex_at(wi);
        if (cv.level == cw.hi() && !cw.base().out_arrows(cv.base).empty()) return true;
    }
    return false;
}

RadicalComplex koszul_rep(const CoverWindow& cw, const QuiverRep& m)
{
    check_rep_over_op_window(cw, m);
    RadicalComplex c(cw.window_ptr(), m.field());
    const Quiver& w = cw.window_quiver();
    for (int wi = 0; wi < w.num_vertices(); ++wi) {
        if (m.dim(wi) == 0) continue;
        c.set_mult(-cw.vertex_at(wi).level, wi, m.dim(wi));
    }
    for (int wa = 0; wa < w.num_arrows(); ++wa) {
        const Arrow& ar = w.arrow(wa);  // src at level l, tgt at level l+1
        if (m.dim(ar.src) == 0 || m.dim(ar.tgt) == 0) continue;
        int l = cw.vertex_at(ar.src).level;
        // block of d^{-l-1}: from the tgt summand (level l+1, degree -l-1)
        // to the src summand (level l, degree -l); matrix M(alpha^o)
        c.set_block(-l - 1, wa, m.map_of(wa));
    }
    c.set_truncated_below(koszul_truncation_flag(cw, m));
    return c;
}

ChainMap koszul_morphism(const CoverWindow& cw, const QuiverRep& m, const QuiverRep& n,
                         const std::vector<Mat>& f)
{
    check_rep_over_op_window(cw, m);
    check_rep_over_op_window(cw, n);
    ChainMap r;
    const Quiver& w = cw.window_quiver();
    for (int wi = 0; wi < w.num_vertices(); ++wi) {
        if (m.dim(wi) == 0 || n.dim(wi) == 0) continue;
        if (f[wi].is_zero()) continue;
        r.add_block(-cw.vertex_at(wi).level, wi, wi, -1, f[wi]);
    }
    return r;
}

ProjComplex koszul_total(const CoverWindow& cw, const std::vector<QuiverRep>& terms,
                         const std::vector<std::vector<Mat>>& maps, int lo_degree)
{
    if (terms.empty()) throw DomainError("koszul_total: empty complex");
    if (maps.size() + 1 != terms.size()) throw DomainError("koszul_total: map count mismatch");
    for (const auto& t : terms) check_rep_over_op_window(cw, t);
    FieldSpec f = terms[0].field();
    ProjComplex c(cw.window_ptr(), f);
    const Quiver& w = cw.window_quiver();

    // copies: (horizontal index i, window vertex, copy) in that order
    // total degree n collects F(M^i)^{n-i}, i.e. level i - n vertices of M^i
    std::map<std::pair<int, int>, int> first;  // (degree, i * W + wi) -> first copy
    int lo_total = 0, hi_total = 0;
    bool any = false;
    for (size_t i = 0; i < terms.size(); ++i) {
        for (int wi = 0; wi < w.num_vertices(); ++wi) {
            if (terms[i].dim(wi) == 0) continue;
            int n = int(i) + lo_degree - cw.vertex_at(wi).level;
            if (!any) {
                lo_total = hi_total = n;
                any = true;
            }
            lo_total = std::min(lo_total, n);
            hi_total = std::max(hi_total, n);
        }
    }
    for (int n = lo_total; n <= hi_total && any; ++n) {
        auto& cs = c.copies()[n];
        for (size_t i = 0; i < terms.size(); ++i)
            for (int wi = 0; wi < w.num_vertices(); ++wi) {
                if (terms[i].dim(wi) == 0) continue;
                if (int(i) + lo_degree - cw.vertex_at(wi).level != n) continue;
                first[{n, int(i) * w.num_vertices() + wi}] = int(cs.size());
                for (int k = 0; k < terms[i].dim(wi); ++k) cs.push_back(wi);
            }
        if (cs.empty()) c.copies().erase(n);
    }

    // vertical differentials (-1)^i d_{F(M^i)}
    for (size_t i = 0; i < terms.size(); ++i) {
        int deg_i = int(i) + lo_degree;
        bool flip = (deg_i % 2) != 0;
        for (int wa = 0; wa < w.num_arrows(); ++wa) {
            const Arrow& ar = w.arrow(wa);
            if (terms[i].dim(ar.src) == 0 || terms[i].dim(ar.tgt) == 0) continue;
            int l = cw.vertex_at(ar.src).level;
            int n = deg_i - l - 1;  // F-degree -l-1 shifted by i
            Mat b = terms[i].map_of(wa);
            int off_tgt = first.at({n, int(i) * w.num_vertices() + ar.tgt});
            int off_src = first.at({n + 1, int(i) * w.num_vertices() + ar.src});
            for (int r = 0; r < b.rows(); ++r)
                for (int col = 0; col < b.cols(); ++col) {
                    Scalar v = b.at(r, col);
                    if (flip) v = v.neg();
                    c.add_entry(n, off_src + r, off_tgt + col, wa, v);
                }
        }
    }
    // horizontal differentials F(d^i): trivial-path blocks
    for (size_t i = 0; i + 1 < terms.size(); ++i) {
        int deg_i = int(i) + lo_degree;
        for (int wi = 0; wi < w.num_vertices(); ++wi) {
            if (terms[i].dim(wi) == 0 || terms[i + 1].dim(wi) == 0) continue;
            const Mat& b = maps[i][wi];
            if (b.is_zero()) continue;
            int n = deg_i - cw.vertex_at(wi).level;
            int off_src = first.at({n, int(i) * w.num_vertices() + wi});
            int off_tgt = first.at({n + 1, (int(i) + 1) * w.num_vertices() + wi});
            for (int r = 0; r < b.rows(); ++r)
                for (int col = 0; col < b.cols(); ++col)
                    c.add_entry(n, off_tgt + r, off_src + col, -1, b.at(r, col));
        }
    }
    bool trunc = false;
    for (const auto& t : terms) trunc = trunc || koszul_truncation_flag(cw, t);
    c.set_truncated_below(trunc);
    c.validate();
    return c;
}

QuiverRep rho_shift_rep(const CoverWindow& cw, const QuiverRep& m, int power)
{
    check_rep_over_op_window(cw, m);
    if (cw.r() == 0 && power != 0) throw DomainError("trivial translation group (r = 0)");
    QuiverRep out(m.quiver_ptr(), m.field());
    const Quiver& w = cw.window_quiver();
    int shift = power * cw.r();
    for (int wi = 0; wi < w.num_vertices(); ++wi) {
        if (m.dim(wi) == 0) continue;
        CoverVertex cv = cw.vertex_at(wi);
        int target = cw.window_index(cv.base, cv.level + shift);
        if (target < 0)
            throw DomainError("rho shift leaves the window; enlarge the level range");
        out.set_dim(target, m.dim(wi));
    }
    for (int wa = 0; wa < w.num_arrows(); ++wa) {
        if (m.map_of(wa).is_zero()) continue;
        int base_arrow = cw.base_arrow_of(wa);
        int l = cw.level_of_window_arrow(wa);
        const std::string target_name =
            cover_name(cw.base().arrow(base_arrow).id, l + shift);
        int ta = w.arrow_index(target_name);
        if (ta < 0) throw DomainError("rho shift leaves the window; enlarge the level range");
        out.set_map(ta, m.map_of(wa));
    }
    return out;
}

PushdownResult pushdown(const CoverWindow& cw, const RadicalComplex& c)
{
    if (!(c.quiver() == cw.window_quiver()))
        throw DomainError("pushdown expects a complex over the window algebra");
    PushdownResult out;
    out.complex = RadicalComplex(cw.base_ptr(), c.field());
    out.complex.set_truncated_below(c.truncated_below());
    // multiplicities aggregate over fibers; offsets in window-vertex order
    for (auto& [n, vs] : c.terms()) {
        std::map<int, int> base_mult;
        for (auto& [wi, mult] : vs) {
            int bv = cw.vertex_at(wi).base;
            out.offset[{n, wi}] = base_mult[bv];
            base_mult[bv] += mult;
        }
        for (auto& [bv, mult] : base_mult) out.complex.set_mult(n, bv, mult);
    }
    for (auto& [key, b] : c.blocks()) {
        auto [n, wa] = key;
        int ba = cw.base_arrow_of(wa);
        const Arrow& war = cw.window_quiver().arrow(wa);
        const Arrow& bar = out.complex.quiver().arrow(ba);
        Mat blk = out.complex.block(n, ba);
        if (blk.rows() == 0 || blk.cols() == 0) continue;
        blk.paste(out.offset.at({n + 1, war.src}), out.offset.at({n, war.tgt}), b);
        (void)bar;
        out.complex.set_block(n, ba, blk);
    }
    return out;
}

ChainMap pushdown_chain_map(const CoverWindow& cw, const RadicalComplex& xw,
                            const RadicalComplex& yw, const ChainMap& f,
                            const PushdownResult& px, const PushdownResult& py)
{
    ChainMap r;
    FieldSpec fld = xw.field();
    for (auto& [key, gens] : f.blocks) {
        auto [n, ywi, xwi] = key;
        int by = cw.vertex_at(ywi).base, bx = cw.vertex_at(xwi).base;
        int rows = py.complex.mult(n, by), cols = px.complex.mult(n, bx);
        for (auto& [g, m] : gens) {
            int bg = g == -1 ? -1 : cw.base_arrow_of(g);
            Mat blk(fld, rows, cols);
            blk.paste(py.offset.at({n, ywi}), px.offset.at({n, xwi}), m);
            r.add_block(n, by, bx, bg, blk);
        }
    }
    (void)yw;
    return r;
}

InjImageReport verify_injective_image(const CoverWindow& cw, FieldSpec f, const CoverVertex& x)
{
    InjImageReport rep;
    QuiverRep inj = window_op_injective(cw, f, x);
    RadicalComplex c = koszul_rep(cw, inj);
    rep.truncated = c.truncated_below();
    rep.top_degree = c.hi();
    std::ostringstream os;
    bool ok = true;

    int t = x.level;
    if (c.hi() != -t) {
        ok = false;
        os << "top degree " << c.hi() << " != " << -t << "; ";
    }
    int wi = cw.window_index(x);
    auto top = c.term_obj(-t);
    if (!(top.mult.size() == 1 && top.mult.count(wi) && top.mult.at(wi) == 1)) {
        ok = false;
        os << "top term is not a single copy of P[" << cw.window_quiver().vertex_name(wi) << "]; ";
    }
    // homology: simple at the top, zero elsewhere in the reliable range
    auto htop = c.homology_dims(-t);
    std::map<int, int> want{{wi, 1}};
    if (htop != want) {
        ok = false;
        os << "top homology is not the simple at " << cw.window_quiver().vertex_name(wi) << "; ";
    }
    int reliable_lo = c.truncated_below() ? c.lo() + 1 : c.lo();
    for (int n = reliable_lo; n < -t; ++n) {
        if (!c.homology_dims(n).empty()) {
            ok = false;
            os << "nonzero homology at degree " << n << "; ";
        }
    }
    if (c.truncated_below())
        os << "degrees <= " << c.lo() << " unreliable (truncated); ";
    os << "checked H^" << reliable_lo << ".." << -t;
    rep.pass = ok;
    rep.detail = os.str();
    return rep;
}

ExtractedRep koszul_extract(const CoverWindow& cw, const RadicalComplex& c)
{
    if (!(c.quiver() == cw.window_quiver()))
        throw DomainError("koszul_extract expects a complex over the window algebra");
    if (c.is_zero()) throw DomainError("koszul_extract: zero complex");
    if (c.support_quiver().components.size() != 1)
        throw DomainError("koszul_extract: complex is not support-connected");
    // s with every degree-n summand at level -n-s
    int n0 = c.hi();
    int wi0 = c.term_obj(n0).mult.begin()->first;
    int s = -n0 - cw.vertex_at(wi0).level;
    for (auto& [n, vs] : c.terms())
        for (auto& [wi, mult] : vs)
            if (cw.vertex_at(wi).level != -n - s)
                throw DomainError("summand level breaks the graded layout");

    ExtractedRep out;
    out.shift = s;
    out.rep = QuiverRep(std::make_shared<Quiver>(opposite(cw.window_quiver())), c.field());
    for (auto& [n, vs] : c.terms())
        for (auto& [wi, mult] : vs) out.rep.set_dim(wi, mult);
    bool flip = (s % 2) != 0;
    for (auto& [key, b] : c.blocks()) {
        auto [n, wa] = key;
        out.rep.set_map(wa, flip ? b.neg() : b);
    }
    return out;
}

}  // namespace rsq
