#include "rsq/rep.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <numeric>
#include <sstream>

namespace rsq {

void QuiverRep::set_dim(int v, int d)
{
    if (d < 0) throw DomainError("negative dimension");
    dims_.at(v) = d;
}

int QuiverRep::total_dim() const
{
    return std::accumulate(dims_.begin(), dims_.end(), 0);
}

Mat QuiverRep::map_of(int arrow) const
{
    auto it = maps_.find(arrow);
    if (it != maps_.end()) return it->second;
    const Arrow& a = q_->arrow(arrow);
    return Mat(f_, dims_[a.tgt], dims_[a.src]);
}

void QuiverRep::set_map(int arrow, const Mat& m)
{
    const Arrow& a = q_->arrow(arrow);
    if (m.rows() != dims_[a.tgt] || m.cols() != dims_[a.src])
        throw DomainError("map shape mismatch for arrow " + a.id);
    if (m.is_zero())
        maps_.erase(arrow);
    else
        maps_[arrow] = m;
}

void QuiverRep::validate() const
{
    for (auto& [a, m] : maps_) {
        const Arrow& ar = q_->arrow(a);
        if (m.rows() != dims_[ar.tgt] || m.cols() != dims_[ar.src])
            throw DomainError("map shape mismatch for arrow " + ar.id);
    }
}

bool QuiverRep::operator==(const QuiverRep& o) const
{
    if (f_ != o.f_ || !(quiver() == o.quiver()) || dims_ != o.dims_) return false;
    for (int a = 0; a < q_->num_arrows(); ++a)
        if (!(map_of(a) == o.map_of(a))) return false;
    return true;
}

std::vector<std::vector<int>> enumerate_paths(const Quiver& q, int a, int b)
{
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    std::function<void(int)> walk = [&](int v) {
        if (v == b) out.push_back(cur);
        for (int ar : q.out_arrows(v)) {
            cur.push_back(ar);
            walk(q.arrow(ar).tgt);
            cur.pop_back();
        }
    };
    walk(a);
    return out;
}

QuiverRep injective_at(QuiverPtr q, FieldSpec f, int a)
{
    topological_order(*q);  // rejects oriented cycles
    QuiverRep m(q, f);
    std::vector<std::vector<std::vector<int>>> paths(q->num_vertices());
    for (int x = 0; x < q->num_vertices(); ++x) {
        paths[x] = enumerate_paths(*q, x, a);
        m.set_dim(x, int(paths[x].size()));
    }
    for (int ar = 0; ar < q->num_arrows(); ++ar) {
        const Arrow& arr = q->arrow(ar);
        Mat mp(f, m.dim(arr.tgt), m.dim(arr.src));
        for (int j = 0; j < int(paths[arr.src].size()); ++j) {
            const auto& p = paths[arr.src][j];
            if (p.empty() || p.front() != ar) continue;  // not factoring through ar
            std::vector<int> rest(p.begin() + 1, p.end());
            auto it = std::find(paths[arr.tgt].begin(), paths[arr.tgt].end(), rest);
            mp.set(int(it - paths[arr.tgt].begin()), j, 1);
        }
        m.set_map(ar, mp);
    }
    return m;
}

QuiverRep projective_at(QuiverPtr q, FieldSpec f, int a)
{
    topological_order(*q);
    QuiverRep m(q, f);
    std::vector<std::vector<std::vector<int>>> paths(q->num_vertices());
    for (int x = 0; x < q->num_vertices(); ++x) {
        paths[x] = enumerate_paths(*q, a, x);
        m.set_dim(x, int(paths[x].size()));
    }
    for (int ar = 0; ar < q->num_arrows(); ++ar) {
        const Arrow& arr = q->arrow(ar);
        Mat mp(f, m.dim(arr.tgt), m.dim(arr.src));
        for (int j = 0; j < int(paths[arr.src].size()); ++j) {
            auto ext = paths[arr.src][j];
            ext.push_back(ar);
            auto it = std::find(paths[arr.tgt].begin(), paths[arr.tgt].end(), ext);
            mp.set(int(it - paths[arr.tgt].begin()), j, 1);
        }
        m.set_map(ar, mp);
    }
    return m;
}

QuiverRep simple_at(QuiverPtr q, FieldSpec f, int a)
{
    QuiverRep m(q, f);
    m.set_dim(a, 1);
    return m;
}

QuiverRep rep_direct_sum(const QuiverRep& a, const QuiverRep& b)
{
    if (!(a.quiver() == b.quiver()) || a.field() != b.field())
        throw DomainError("rep_direct_sum: mismatched data");
    QuiverRep r(a.quiver_ptr(), a.field());
    for (int v = 0; v < a.quiver().num_vertices(); ++v) r.set_dim(v, a.dim(v) + b.dim(v));
    for (int ar = 0; ar < a.quiver().num_arrows(); ++ar) {
        const Arrow& arr = a.quiver().arrow(ar);
        Mat m(a.field(), r.dim(arr.tgt), r.dim(arr.src));
        m.paste(0, 0, a.map_of(ar));
        m.paste(a.dim(arr.tgt), a.dim(arr.src), b.map_of(ar));
        r.set_map(ar, m);
    }
    return r;
}

// ---------------------------------------------------------------------------
// sub/quotient machinery

namespace {

// Extend the columns of b to a basis of k^n, preferring standard vectors.
Mat extend_to_basis(const Mat& b, int n)
{
    FieldSpec f = b.field();
    Mat cur = b;
    for (int i = 0; i < n && cur.cols() < n; ++i) {
        Mat e(f, n, 1);
        e.set(i, 0, 1);
        Mat cand = Mat::hcat(cur, e);
        if (cand.rank() > cur.rank()) cur = cand;
    }
    if (cur.cols() != n || (n > 0 && cur.rank() != n))
        throw DomainError("could not extend to a basis");
    return cur;
}

struct QuotientData {
    QuiverRep rep;
    std::vector<Mat> proj;  // dim_quot x dim_m
    std::vector<Mat> sect;  // dim_m x dim_quot
};

QuotientData quotient_rep(const QuiverRep& m, const std::vector<Mat>& basis)
{
    const Quiver& q = m.quiver();
    FieldSpec f = m.field();
    QuotientData out;
    out.rep = QuiverRep(m.quiver_ptr(), f);
    out.proj.assign(q.num_vertices(), Mat(f, 0, 0));
    out.sect.assign(q.num_vertices(), Mat(f, 0, 0));
    for (int v = 0; v < q.num_vertices(); ++v) {
        int n = m.dim(v), k = basis[v].cols();
        Mat full = extend_to_basis(basis[v], n);
        Mat inv = n > 0 ? *full.inverse() : Mat(f, 0, 0);
        out.rep.set_dim(v, n - k);
        out.proj[v] = inv.submat(k, 0, n - k, n);
        out.sect[v] = full.submat(0, k, n, n - k);
    }
    for (int ar = 0; ar < q.num_arrows(); ++ar) {
        const Arrow& arr = q.arrow(ar);
        out.rep.set_map(ar, out.proj[arr.tgt] * m.map_of(ar) * out.sect[arr.src]);
    }
    return out;
}

QuiverRep sub_rep(const QuiverRep& m, const std::vector<Mat>& basis)
{
    const Quiver& q = m.quiver();
    QuiverRep s(m.quiver_ptr(), m.field());
    for (int v = 0; v < q.num_vertices(); ++v) s.set_dim(v, basis[v].cols());
    for (int ar = 0; ar < q.num_arrows(); ++ar) {
        const Arrow& arr = q.arrow(ar);
        auto sol = Mat::solve_all(basis[arr.tgt], m.map_of(ar) * basis[arr.src]);
        if (!sol) throw DomainError("subspace not arrow-stable");
        s.set_map(ar, sol->particular);
    }
    return s;
}

Mat column_space_basis(const Mat& h)
{
    Mat r = h.rref();
    std::vector<int> pivots;
    int row = 0;
    for (int c = 0; c < h.cols() && row < h.rows(); ++c) {
        if (!r.at(row, c).is_zero()) {
            pivots.push_back(c);
            ++row;
        }
    }
    Mat b(h.field(), h.rows(), int(pivots.size()));
    for (int j = 0; j < int(pivots.size()); ++j)
        for (int i = 0; i < h.rows(); ++i) b.set(i, j, h.at(i, pivots[j]));
    return b;
}

std::vector<Mat> rad_basis(const QuiverRep& m)
{
    const Quiver& q = m.quiver();
    FieldSpec f = m.field();
    std::vector<Mat> radb(q.num_vertices(), Mat(f, 0, 0));
    for (int v = 0; v < q.num_vertices(); ++v) {
        Mat h(f, m.dim(v), 0);
        for (int ar : q.in_arrows(v)) h = Mat::hcat(h, m.map_of(ar));
        radb[v] = column_space_basis(h);
    }
    return radb;
}

}  // namespace

SocQuot soc_and_quotient(const QuiverRep& m)
{
    const Quiver& q = m.quiver();
    FieldSpec f = m.field();
    std::vector<Mat> socb(q.num_vertices(), Mat(f, 0, 0));
    for (int v = 0; v < q.num_vertices(); ++v) {
        Mat stacked(f, 0, m.dim(v));
        for (int ar : q.out_arrows(v)) stacked = Mat::vcat(stacked, m.map_of(ar));
        socb[v] = stacked.rank_kernel().kernel;
    }
    SocQuot r;
    r.soc = QuiverRep(m.quiver_ptr(), f);
    for (int v = 0; v < q.num_vertices(); ++v) r.soc.set_dim(v, socb[v].cols());
    r.quotient = quotient_rep(m, socb).rep;
    return r;
}

QuiverRep rad_sub(const QuiverRep& m) { return sub_rep(m, rad_basis(m)); }

QuiverRep top_quotient(const QuiverRep& m) { return quotient_rep(m, rad_basis(m)).rep; }

// ---------------------------------------------------------------------------
// hom spaces

std::vector<std::vector<Mat>> hom_space(const QuiverRep& a, const QuiverRep& b)
{
    if (!(a.quiver() == b.quiver()) || a.field() != b.field())
        throw DomainError("hom_space: mismatched data");
    const Quiver& q = a.quiver();
    FieldSpec f = a.field();
    std::vector<int> offset(q.num_vertices() + 1, 0);
    for (int v = 0; v < q.num_vertices(); ++v) offset[v + 1] = offset[v] + b.dim(v) * a.dim(v);
    int nvars = offset[q.num_vertices()];
    if (nvars == 0) return {};

    std::vector<std::vector<std::pair<int, Scalar>>> rows;
    for (int ar = 0; ar < q.num_arrows(); ++ar) {
        const Arrow& arr = q.arrow(ar);
        Mat A = a.map_of(ar), B = b.map_of(ar);
        // f_tgt A = B f_src
        for (int i = 0; i < b.dim(arr.tgt); ++i)
            for (int j = 0; j < a.dim(arr.src); ++j) {
                std::vector<std::pair<int, Scalar>> row;
                for (int k = 0; k < a.dim(arr.tgt); ++k) {
                    Scalar c = A.at(k, j);
                    if (!c.is_zero()) row.emplace_back(offset[arr.tgt] + i * a.dim(arr.tgt) + k, c);
                }
                for (int k = 0; k < b.dim(arr.src); ++k) {
                    Scalar c = B.at(i, k);
                    if (!c.is_zero())
                        row.emplace_back(offset[arr.src] + k * a.dim(arr.src) + j, c.neg());
                }
                if (!row.empty()) rows.push_back(std::move(row));
            }
    }
    Mat eq(f, int(rows.size()), nvars);
    for (int i = 0; i < int(rows.size()); ++i)
        for (auto& [j, c] : rows[i]) eq.set(i, j, eq.at(i, j) + c);
    Mat ker = eq.rank_kernel().kernel;

    std::vector<std::vector<Mat>> basis;
    for (int c = 0; c < ker.cols(); ++c) {
        std::vector<Mat> elt;
        for (int v = 0; v < q.num_vertices(); ++v) {
            Mat fv(f, b.dim(v), a.dim(v));
            for (int i = 0; i < b.dim(v); ++i)
                for (int j = 0; j < a.dim(v); ++j)
                    fv.set(i, j, ker.at(offset[v] + i * a.dim(v) + j, c));
            elt.push_back(fv);
        }
        basis.push_back(std::move(elt));
    }
    return basis;
}

int hom_dim(const QuiverRep& a, const QuiverRep& b) { return int(hom_space(a, b).size()); }

namespace {

bool tuple_invertible(const std::vector<Mat>& t)
{
    for (const Mat& m : t) {
        if (m.rows() != m.cols()) return false;
        if (m.rank() != m.rows()) return false;
    }
    return true;
}

std::vector<Mat> tuple_add(const std::vector<Mat>& a, const std::vector<Mat>& b)
{
    std::vector<Mat> r;
    for (size_t i = 0; i < a.size(); ++i) r.push_back(a[i] + b[i]);
    return r;
}

std::vector<Mat> tuple_scale(const std::vector<Mat>& a, const Scalar& c)
{
    std::vector<Mat> r;
    for (const Mat& m : a) r.push_back(m.scaled(c));
    return r;
}

std::vector<Mat> tuple_mul(const std::vector<Mat>& a, const std::vector<Mat>& b)
{
    std::vector<Mat> r;
    for (size_t v = 0; v < a.size(); ++v) r.push_back(a[v] * b[v]);
    return r;
}

std::uint64_t splitmix(std::uint64_t& s)
{
    s += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = s;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

}  // namespace

bool is_isomorphic(const QuiverRep& a, const QuiverRep& b)
{
    if (!(a.quiver() == b.quiver()) || a.field() != b.field()) return false;
    if (a.dims() != b.dims()) return false;
    if (a.total_dim() == 0) return true;
    auto hom = hom_space(a, b);
    if (hom.empty()) return false;
    for (const auto& h : hom)
        if (tuple_invertible(h)) return true;
    std::vector<Mat> acc = hom[0];
    for (size_t i = 1; i < hom.size(); ++i) {
        acc = tuple_add(acc, hom[i]);
        if (tuple_invertible(acc)) return true;
    }
    FieldSpec f = a.field();
    std::uint64_t seed = 0x5eed5eed5eedull;
    for (int trial = 0; trial < 64; ++trial) {
        std::vector<Mat> cand;
        for (size_t i = 0; i < hom.size(); ++i) {
            std::int64_t c = std::int64_t(splitmix(seed) % 1000) - 500;
            auto term = tuple_scale(hom[i], Scalar::from_int(f, c));
            cand = cand.empty() ? term : tuple_add(cand, term);
        }
        if (!cand.empty() && tuple_invertible(cand)) return true;
    }
    return false;
}

// ---------------------------------------------------------------------------
// polynomials over the coefficient field (internal helpers)

namespace {

using Poly = std::vector<Scalar>;  // low degree first, trimmed

void poly_trim(Poly& p)
{
    while (!p.empty() && p.back().is_zero()) p.pop_back();
}

int poly_deg(const Poly& p) { return int(p.size()) - 1; }

Poly poly_from(FieldSpec f, std::initializer_list<std::int64_t> cs)
{
    Poly p;
    for (auto c : cs) p.push_back(Scalar::from_int(f, c));
    poly_trim(p);
    return p;
}

Poly poly_add(const Poly& a, const Poly& b)
{
    if (a.empty()) return b;
    if (b.empty()) return a;
    Poly r = a;
    if (b.size() > r.size()) r.resize(b.size(), Scalar(a[0].field(), 0));
    for (size_t i = 0; i < b.size(); ++i) r[i] = r[i] + b[i];
    poly_trim(r);
    return r;
}

Poly poly_mul(const Poly& a, const Poly& b)
{
    if (a.empty() || b.empty()) return {};
    FieldSpec f = a[0].field();
    Poly r(a.size() + b.size() - 1, Scalar(f, 0));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) r[i + j] = r[i + j] + a[i] * b[j];
    poly_trim(r);
    return r;
}

std::pair<Poly, Poly> poly_divmod(Poly a, const Poly& b)
{
    if (b.empty()) throw DomainError("polynomial division by zero");
    FieldSpec f = b[0].field();
    if (a.size() < b.size()) return {{}, a};
    Poly quo(a.size() - b.size() + 1, Scalar(f, 0));
    Scalar lead_inv = b.back().inv();
    while (a.size() >= b.size()) {
        Scalar c = a.back() * lead_inv;
        size_t shift = a.size() - b.size();
        quo[shift] = quo[shift] + c;
        for (size_t i = 0; i < b.size(); ++i) a[shift + i] = a[shift + i] - c * b[i];
        poly_trim(a);
        if (a.empty()) break;
    }
    poly_trim(quo);
    return {quo, a};
}

Poly poly_mod(const Poly& a, const Poly& b) { return poly_divmod(a, b).second; }

Poly poly_monic(Poly p)
{
    if (p.empty()) return p;
    Scalar inv = p.back().inv();
    for (auto& c : p) c = c * inv;
    return p;
}

Poly poly_gcd(Poly a, Poly b)
{
    while (!b.empty()) {
        Poly r = poly_mod(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return poly_monic(a);
}

Poly poly_derivative(const Poly& p)
{
    if (p.size() <= 1) return {};
    FieldSpec f = p[0].field();
    Poly r(p.size() - 1, Scalar(f, 0));
    for (size_t i = 1; i < p.size(); ++i) r[i - 1] = p[i] * Scalar::from_int(f, std::int64_t(i));
    poly_trim(r);
    return r;
}

Scalar poly_eval(const Poly& p, const Scalar& x)
{
    Scalar r(x.field(), 0);
    for (size_t i = p.size(); i-- > 0;) r = r * x + p[i];
    return r;
}

Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& m) { return poly_mod(poly_mul(a, b), m); }

Poly poly_powmod(Poly base, mpz_class e, const Poly& m)
{
    FieldSpec f = m[0].field();
    Poly r = poly_from(f, {1});
    base = poly_mod(base, m);
    while (e > 0) {
        if (mpz_odd_p(e.get_mpz_t())) r = poly_mulmod(r, base, m);
        base = poly_mulmod(base, base, m);
        e >>= 1;
    }
    return r;
}

Poly squarefree_part(const Poly& p)
{
    Poly d = poly_derivative(p);
    if (d.empty()) {
        // p = g(x^q) over F_q: extract the q-th root
        FieldSpec f = p[0].field();
        size_t q = size_t(f.p());
        Poly r((p.size() - 1) / q + 1, Scalar(f, 0));
        for (size_t i = 0; i < p.size(); i += q) r[i / q] = p[i];
        return squarefree_part(r);
    }
    return poly_monic(poly_divmod(p, poly_gcd(p, d)).first);
}

// A nontrivial monic factor of a squarefree polynomial over F_p, or empty
// when irreducible. Distinct-degree sieve plus bounded deterministic
// equal-degree sweeps.
Poly squarefree_split(const Poly& f0)
{
    int n = poly_deg(f0);
    if (n <= 1) return {};
    FieldSpec f = f0[0].field();
    Poly x = poly_from(f, {0, 1});
    Poly frob = x;
    for (int d = 1; d <= n; ++d) {
        frob = poly_powmod(frob, mpz_class(long(f.p())), f0);
        Poly diff = poly_add(frob, poly_mul(poly_from(f, {-1}), x));
        Poly g = poly_gcd(f0, diff);
        if (poly_deg(g) <= 0) continue;
        if (poly_deg(g) < n) return g;  // proper product of the degree-<=d part
        // all factors have degree exactly d
        if (d == n) return {};  // irreducible
        // equal-degree splitting of f0 into factors of degree d
        if (f.p() == 2) {
            for (int cand = 2; cand < (1 << 12); ++cand) {
                Poly a;
                for (int bit = 0; bit <= n; ++bit) a.push_back(Scalar::from_int(f, (cand >> bit) & 1));
                poly_trim(a);
                if (poly_deg(a) < 1) continue;
                Poly tr;
                Poly t = poly_mod(a, f0);
                for (int j = 0; j < d; ++j) {
                    tr = poly_add(tr, t);
                    t = poly_mulmod(t, t, f0);
                }
                Poly g2 = poly_gcd(f0, tr);
                if (poly_deg(g2) > 0 && poly_deg(g2) < n) return g2;
            }
        } else {
            mpz_class e;
            mpz_ui_pow_ui(e.get_mpz_t(), unsigned(f.p()), unsigned(d));
            e = (e - 1) / 2;
            for (int cand = 0; cand < (1 << 12); ++cand) {
                Poly a = poly_from(f, {cand, 1});
                Poly pw = poly_powmod(a, e, f0);
                pw = poly_add(pw, poly_from(f, {-1}));
                Poly g2 = poly_gcd(f0, pw);
                if (poly_deg(g2) > 0 && poly_deg(g2) < n) return g2;
            }
        }
        return {};
    }
    return {};
}

// Over Q: a linear factor of the squarefree part found by the rational root
// theorem. Sufficient for the idempotent-driven splits arising here.
Poly rational_root_factor(const Poly& f0)
{
    if (poly_deg(f0) <= 1) return {};
    FieldSpec f = f0[0].field();
    mpz_class lcm_den = 1;
    for (const auto& c : f0) lcm_den = lcm(lcm_den, c.q_value().get_den());
    std::vector<mpz_class> z;
    for (const auto& c : f0) z.push_back(mpz_class(c.q_value() * lcm_den));
    mpz_class a0 = abs(z.front()), an = abs(z.back());
    if (a0 == 0) return poly_from(f, {0, 1});
    auto divisors = [](const mpz_class& n) {
        std::vector<mpz_class> d;
        for (mpz_class i = 1; i * i <= n && i < 100000; ++i)
            if (n % i == 0) {
                d.push_back(i);
                d.push_back(n / i);
            }
        return d;
    };
    for (const auto& num : divisors(a0))
        for (const auto& den : divisors(an))
            for (int sgn : {1, -1}) {
                mpq_class root(num * sgn, den);
                root.canonicalize();
                if (poly_eval(f0, Scalar::from_mpq(f, root)).is_zero()) {
                    Poly lin;
                    lin.push_back(Scalar::from_mpq(f, -root));
                    lin.push_back(Scalar::from_int(f, 1));
                    return lin;
                }
            }
    return {};
}

Poly tuple_min_poly(const QuiverRep& m, const std::vector<Mat>& phi)
{
    FieldSpec f = m.field();
    Poly mp = poly_from(f, {1});
    for (int v = 0; v < m.quiver().num_vertices(); ++v) {
        int n = m.dim(v);
        if (n == 0) continue;
        for (int s = 0; s < n; ++s) {
            Mat vec(f, n, 1);
            vec.set(s, 0, 1);
            Mat kry(f, n, 0);
            Mat cur = vec;
            for (;;) {
                Mat cand = Mat::hcat(kry, cur);
                if (cand.rank() == kry.cols()) break;
                kry = cand;
                cur = phi[v] * cur;
            }
            auto sol = Mat::solve_all(kry, cur);
            Poly local(size_t(kry.cols()) + 1, Scalar(f, 0));
            for (int i = 0; i < kry.cols(); ++i) local[i] = sol->particular.at(i, 0).neg();
            local[kry.cols()] = Scalar::from_int(f, 1);
            Poly g = poly_gcd(mp, local);
            mp = poly_monic(poly_mul(poly_divmod(mp, g).first, local));
        }
    }
    return mp;
}

std::vector<Mat> tuple_poly_eval(const QuiverRep& m, const std::vector<Mat>& phi, const Poly& p)
{
    FieldSpec f = m.field();
    std::vector<Mat> r;
    for (int v = 0; v < m.quiver().num_vertices(); ++v) {
        int n = m.dim(v);
        Mat acc(f, n, n);
        Mat pw = Mat::identity(f, n);
        for (size_t i = 0; i < p.size(); ++i) {
            acc = acc + pw.scaled(p[i]);
            pw = pw * phi[v];
        }
        r.push_back(acc);
    }
    return r;
}

std::vector<Mat> tuple_power(const QuiverRep& m, std::vector<Mat> t, int e)
{
    FieldSpec f = m.field();
    std::vector<Mat> r;
    for (int v = 0; v < m.quiver().num_vertices(); ++v) r.push_back(Mat::identity(f, m.dim(v)));
    while (e > 0) {
        if (e & 1) r = tuple_mul(r, t);
        t = tuple_mul(t, t);
        e >>= 1;
    }
    return r;
}

// Fitting split along a candidate endomorphism, or nullopt.
std::optional<std::pair<QuiverRep, QuiverRep>> try_split(const QuiverRep& m,
                                                         const std::vector<Mat>& phi)
{
    FieldSpec f = m.field();
    Poly mp = tuple_min_poly(m, phi);
    if (poly_deg(mp) <= 1) return std::nullopt;
    Poly f0 = squarefree_part(mp);
    if (poly_deg(f0) < 1) return std::nullopt;
    Poly h;
    if (f.is_prime_field()) {
        if (poly_deg(f0) >= 2 && f.p() <= (1 << 16)) {
            for (std::int64_t c = 0; c < f.p() && h.empty(); ++c)
                if (poly_eval(f0, Scalar::from_int(f, c)).is_zero())
                    h = Poly{Scalar::from_int(f, -c), Scalar::from_int(f, 1)};
        }
        if (h.empty()) h = squarefree_split(f0);
    } else {
        h = rational_root_factor(f0);
    }
    if (h.empty() || poly_deg(h) <= 0 || poly_deg(h) >= poly_deg(f0)) return std::nullopt;
    Poly g = poly_monic(poly_divmod(f0, h).first);
    int N = m.total_dim();
    auto hN = tuple_power(m, tuple_poly_eval(m, phi, h), N);
    auto gN = tuple_power(m, tuple_poly_eval(m, phi, g), N);
    std::vector<Mat> kb1, kb2;
    int d1 = 0, d2 = 0;
    for (int v = 0; v < m.quiver().num_vertices(); ++v) {
        kb1.push_back(hN[v].rank_kernel().kernel);
        kb2.push_back(gN[v].rank_kernel().kernel);
        d1 += kb1.back().cols();
        d2 += kb2.back().cols();
    }
    if (d1 == 0 || d2 == 0 || d1 + d2 != m.total_dim()) return std::nullopt;
    return std::make_pair(sub_rep(m, kb1), sub_rep(m, kb2));
}

}  // namespace

std::vector<QuiverRep> decompose_rep(const QuiverRep& m)
{
    if (m.total_dim() == 0) return {};
    auto end = hom_space(m, m);
    int d = int(end.size());
    if (d == 1) return {m};

    FieldSpec f = m.field();
    std::vector<std::vector<Mat>> cands;
    for (auto& e : end) cands.push_back(e);
    for (int i = 0; i < d; ++i)
        for (int j = i + 1; j < d && int(cands.size()) < 4000; ++j)
            cands.push_back(tuple_add(end[i], end[j]));
    bool exhaustive = false;
    if (f.is_prime_field()) {
        double total = 1;
        for (int i = 0; i < d && total <= double(1 << 20); ++i) total *= double(f.p());
        exhaustive = total <= double(1 << 20);
    }
    if (exhaustive) {
        std::vector<std::int64_t> coef(d, 0);
        for (;;) {
            int k = 0;
            while (k < d && ++coef[k] == f.p()) coef[k++] = 0;
            if (k == d) break;
            std::vector<Mat> t;
            for (int i = 0; i < d; ++i) {
                if (coef[i] == 0) continue;
                auto term = tuple_scale(end[i], Scalar::from_int(f, coef[i]));
                t = t.empty() ? term : tuple_add(t, term);
            }
            if (!t.empty()) cands.push_back(std::move(t));
        }
    } else {
        std::uint64_t seed = 0xdec0de5eedull;
        for (int trial = 0; trial < 64; ++trial) {
            std::vector<Mat> t;
            for (int i = 0; i < d; ++i) {
                std::int64_t c = std::int64_t(splitmix(seed) % 19) - 9;
                if (c == 0) continue;
                auto term = tuple_scale(end[i], Scalar::from_int(f, c));
                t = t.empty() ? term : tuple_add(t, term);
            }
            if (!t.empty()) cands.push_back(std::move(t));
        }
    }

    for (auto& phi : cands) {
        auto split = try_split(m, phi);
        if (split) {
            auto a = decompose_rep(split->first);
            auto b = decompose_rep(split->second);
            a.insert(a.end(), b.begin(), b.end());
            return a;
        }
    }
    return {m};
}

namespace {

Mat tuple_vec(const QuiverRep& m, const std::vector<Mat>& t)
{
    FieldSpec f = m.field();
    int total = 0;
    for (int v = 0; v < m.quiver().num_vertices(); ++v) total += m.dim(v) * m.dim(v);
    Mat r(f, total, 1);
    int at = 0;
    for (int v = 0; v < m.quiver().num_vertices(); ++v)
        for (int i = 0; i < m.dim(v); ++i)
            for (int j = 0; j < m.dim(v); ++j) r.set(at++, 0, t[v].at(i, j));
    return r;
}

// Locality of End(m) via the trace form; valid when char = 0 or p > dim m.
bool local_by_trace_form(const QuiverRep& m, const std::vector<std::vector<Mat>>& end)
{
    FieldSpec f = m.field();
    int d = int(end.size());
    Mat gram(f, d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            Scalar tr(f, 0);
            for (int v = 0; v < m.quiver().num_vertices(); ++v) {
                Mat prod = end[i][v] * end[j][v];
                for (int k = 0; k < prod.rows(); ++k) tr = tr + prod.at(k, k);
            }
            gram.set(i, j, tr);
        }
    Mat radc = gram.rank_kernel().kernel;
    int rad_dim = radc.cols();
    int sdim = d - rad_dim;
    if (sdim == 1) return true;

    int total = 0;
    for (int v = 0; v < m.quiver().num_vertices(); ++v) total += m.dim(v) * m.dim(v);
    Mat bm(f, total, d);
    for (int i = 0; i < d; ++i) bm.paste(0, i, tuple_vec(m, end[i]));
    auto coords_of = [&](const std::vector<Mat>& t) {
        auto sol = Mat::solve_all(bm, tuple_vec(m, t));
        if (!sol) throw DomainError("product left End(m)");
        return sol->particular;
    };
    Mat full = extend_to_basis(radc, d);
    Mat inv = *full.inverse();
    Mat projS = inv.submat(rad_dim, 0, sdim, d);
    Mat sectS = full.submat(0, rad_dim, d, sdim);
    auto s_elt = [&](int k) {
        std::vector<Mat> t;
        for (int v = 0; v < m.quiver().num_vertices(); ++v) {
            Mat acc(f, m.dim(v), m.dim(v));
            for (int i = 0; i < d; ++i) {
                Scalar c = sectS.at(i, k);
                if (!c.is_zero()) acc = acc + end[i][v].scaled(c);
            }
            t.push_back(acc);
        }
        return t;
    };
    for (int a = 0; a < sdim; ++a)
        for (int b = a + 1; b < sdim; ++b) {
            auto sa = s_elt(a), sb = s_elt(b);
            auto comm =
                tuple_add(tuple_mul(sa, sb), tuple_scale(tuple_mul(sb, sa), Scalar::from_int(f, -1)));
            if (!(projS * coords_of(comm)).is_zero()) return false;
        }
    if (!f.is_prime_field()) {
        // commutative semisimple over Q: exact only in the splitting-field
        // regime, where factor fields are Q itself
        return sdim == 1;
    }
    // number of factor fields = fixed space of Frobenius on End/rad
    Mat frob(f, sdim, sdim);
    for (int k = 0; k < sdim; ++k) {
        auto base = s_elt(k);
        std::vector<Mat> pw;
        for (int v = 0; v < m.quiver().num_vertices(); ++v)
            pw.push_back(Mat::identity(f, m.dim(v)));
        std::int64_t e = f.p();
        while (e > 0) {
            if (e & 1) pw = tuple_mul(pw, base);
            base = tuple_mul(base, base);
            e >>= 1;
        }
        frob.paste(0, k, projS * coords_of(pw));
    }
    Mat diff = frob - Mat::identity(f, sdim);
    return sdim - diff.rank() == 1;
}

}  // namespace

bool is_indecomposable(const QuiverRep& m)
{
    if (m.total_dim() == 0) throw DomainError("is_indecomposable: zero representation");
    auto end = hom_space(m, m);
    if (end.size() == 1) return true;
    FieldSpec f = m.field();
    if (!f.is_prime_field() || f.p() > m.total_dim()) return local_by_trace_form(m, end);
    return decompose_rep(m).size() == 1;
}

// ---------------------------------------------------------------------------
// minimal presentation, transpose, tau, almost split sequences

namespace {

Mat eval_path_matrix(const QuiverRep& m, int src, const std::vector<int>& path)
{
    Mat r = Mat::identity(m.field(), m.dim(src));
    for (int ar : path) r = m.map_of(ar) * r;
    return r;
}

struct Cover {
    QuiverRep p;                // direct sum of projectives
    std::vector<int> summands;  // vertex per copy, in vertex order
    std::vector<Mat> map;       // per vertex x: m.dim(x) x p.dim(x)
};

// Minimal projective cover P -> m built from lifts of top(m).
Cover projective_cover(const QuiverRep& m)
{
    const Quiver& q = m.quiver();
    FieldSpec f = m.field();
    auto radb = rad_basis(m);
    Cover c;
    std::vector<Mat> lifts;  // column vectors, aligned with c.summands
    for (int v = 0; v < q.num_vertices(); ++v) {
        Mat full = extend_to_basis(radb[v], m.dim(v));
        for (int k = radb[v].cols(); k < m.dim(v); ++k) {
            c.summands.push_back(v);
            lifts.push_back(full.submat(0, k, m.dim(v), 1));
        }
    }
    c.p = QuiverRep(m.quiver_ptr(), f);
    bool first = true;
    for (int s : c.summands) {
        QuiverRep ps = projective_at(m.quiver_ptr(), f, s);
        c.p = first ? ps : rep_direct_sum(c.p, ps);
        first = false;
    }
    c.map.assign(q.num_vertices(), Mat(f, 0, 0));
    for (int x = 0; x < q.num_vertices(); ++x) c.map[x] = Mat(f, m.dim(x), c.p.dim(x));
    std::vector<int> offset(q.num_vertices(), 0);
    for (size_t si = 0; si < c.summands.size(); ++si) {
        int s = c.summands[si];
        for (int x = 0; x < q.num_vertices(); ++x) {
            auto paths = enumerate_paths(q, s, x);
            for (size_t pi = 0; pi < paths.size(); ++pi) {
                Mat img = eval_path_matrix(m, s, paths[pi]) * lifts[si];
                c.map[x].paste(0, offset[x] + int(pi), img);
            }
            offset[x] += int(paths.size());
        }
    }
    return c;
}

struct Presentation {
    Cover c0;               // P0 -> m
    QuiverRep k;            // ker(P0 -> m)
    std::vector<Mat> kb;    // kernel basis inside P0, per vertex
    Cover c1;               // P1 -> k (an isomorphism, k projective)
    std::vector<Mat> f;     // P1 -> P0, per vertex
};

Presentation minimal_presentation(const QuiverRep& m)
{
    Presentation pr;
    pr.c0 = projective_cover(m);
    const Quiver& q = m.quiver();
    pr.kb.clear();
    for (int v = 0; v < q.num_vertices(); ++v) pr.kb.push_back(pr.c0.map[v].rank_kernel().kernel);
    pr.k = sub_rep(pr.c0.p, pr.kb);
    pr.c1 = projective_cover(pr.k);
    if (pr.c1.p.total_dim() != pr.k.total_dim())
        throw DomainError("kernel of a projective cover is not projective (quiver not acyclic?)");
    pr.f.clear();
    for (int v = 0; v < q.num_vertices(); ++v) pr.f.push_back(pr.kb[v] * pr.c1.map[v]);
    return pr;
}

// Right multiplication P_y -> P_x along an arrow x -> y, in path bases.
std::vector<Mat> proj_right_mult(QuiverPtr qp, FieldSpec f, int arrow)
{
    const Quiver& q = *qp;
    const Arrow& ar = q.arrow(arrow);
    int x = ar.src, y = ar.tgt;
    std::vector<Mat> maps;
    for (int w = 0; w < q.num_vertices(); ++w) {
        auto from = enumerate_paths(q, y, w);
        auto to = enumerate_paths(q, x, w);
        Mat mp(f, int(to.size()), int(from.size()));
        for (size_t j = 0; j < from.size(); ++j) {
            std::vector<int> ext{arrow};
            ext.insert(ext.end(), from[j].begin(), from[j].end());
            auto it = std::find(to.begin(), to.end(), ext);
            mp.set(int(it - to.begin()), int(j), 1);
        }
        maps.push_back(mp);
    }
    return maps;
}

Mat hom_tuple_vec(const QuiverRep& a, const QuiverRep& b, const std::vector<Mat>& t)
{
    FieldSpec f = a.field();
    int total = 0;
    for (int v = 0; v < a.quiver().num_vertices(); ++v) total += b.dim(v) * a.dim(v);
    Mat r(f, total, 1);
    int at = 0;
    for (int v = 0; v < a.quiver().num_vertices(); ++v)
        for (int i = 0; i < b.dim(v); ++i)
            for (int j = 0; j < a.dim(v); ++j) r.set(at++, 0, t[v].at(i, j));
    return r;
}

}  // namespace

QuiverRep tau_of(const QuiverRep& m)
{
    const Quiver& q = m.quiver();
    FieldSpec f = m.field();
    Presentation pr = minimal_presentation(m);
    if (pr.k.total_dim() == 0) throw DomainError("tau of a projective representation");

    int nv = q.num_vertices();
    // Tr m (v) = coker(Hom(P0, P_v) -> Hom(P1, P_v))
    std::vector<QuiverRep> projs;
    for (int v = 0; v < nv; ++v) projs.push_back(projective_at(m.quiver_ptr(), f, v));
    std::vector<std::vector<std::vector<Mat>>> h0(nv), h1(nv);
    std::vector<Mat> h1_basis_mat(nv, Mat(f, 0, 0));
    std::vector<Mat> proj_cok(nv, Mat(f, 0, 0)), sect_cok(nv, Mat(f, 0, 0));
    std::vector<int> cok_dim(nv, 0);
    for (int v = 0; v < nv; ++v) {
        h0[v] = hom_space(pr.c0.p, projs[v]);
        h1[v] = hom_space(pr.c1.p, projs[v]);
        int n1 = int(h1[v].size());
        int total = 0;
        for (int w = 0; w < nv; ++w) total += projs[v].dim(w) * pr.c1.p.dim(w);
        Mat b1(f, total, n1);
        for (int i = 0; i < n1; ++i) b1.paste(0, i, hom_tuple_vec(pr.c1.p, projs[v], h1[v][i]));
        h1_basis_mat[v] = b1;
        // image of precomposition with f
        Mat img(f, n1, int(h0[v].size()));
        for (size_t i = 0; i < h0[v].size(); ++i) {
            std::vector<Mat> comp;
            for (int w = 0; w < nv; ++w) comp.push_back(h0[v][i][w] * pr.f[w]);
            auto sol = Mat::solve_all(b1, hom_tuple_vec(pr.c1.p, projs[v], comp));
            if (!sol) throw DomainError("composition left Hom(P1, P_v)");
            img.paste(0, int(i), sol->particular);
        }
        Mat imgb = column_space_basis(img);
        Mat full = extend_to_basis(imgb, n1);
        Mat inv = n1 > 0 ? *full.inverse() : Mat(f, 0, 0);
        cok_dim[v] = n1 - imgb.cols();
        proj_cok[v] = inv.submat(imgb.cols(), 0, cok_dim[v], n1);
        sect_cok[v] = full.submat(0, imgb.cols(), n1, cok_dim[v]);
    }

    QuiverRep tau(m.quiver_ptr(), f);
    for (int v = 0; v < nv; ++v) tau.set_dim(v, cok_dim[v]);
    for (int ar = 0; ar < q.num_arrows(); ++ar) {
        const Arrow& arr = q.arrow(ar);
        int x = arr.src, y = arr.tgt;
        // T: Tr(y) -> Tr(x) by postcomposition with P_y -> P_x
        auto rmul = proj_right_mult(m.quiver_ptr(), f, ar);
        Mat T(f, cok_dim[x], cok_dim[y]);
        for (int k = 0; k < cok_dim[y]; ++k) {
            // lift the k-th coker basis vector to Hom(P1, P_y)
            Mat coords = sect_cok[y].submat(0, k, sect_cok[y].rows(), 1);
            std::vector<Mat> psi;
            for (int w = 0; w < nv; ++w) {
                Mat acc(f, projs[y].dim(w), pr.c1.p.dim(w));
                for (int i = 0; i < coords.rows(); ++i) {
                    Scalar c = coords.at(i, 0);
                    if (!c.is_zero()) acc = acc + h1[y][i][w].scaled(c);
                }
                psi.push_back(acc);
            }
            std::vector<Mat> comp;
            for (int w = 0; w < nv; ++w) comp.push_back(rmul[w] * psi[w]);
            auto sol = Mat::solve_all(h1_basis_mat[x], hom_tuple_vec(pr.c1.p, projs[x], comp));
            if (!sol) throw DomainError("postcomposition left Hom(P1, P_x)");
            T.paste(0, k, proj_cok[x] * sol->particular);
        }
        tau.set_map(ar, T.transpose());
    }
    return tau;
}

std::optional<ArSeq> ar_sequence_ending_at(const QuiverRep& m)
{
    if (m.total_dim() == 0) throw DomainError("almost split sequence of the zero representation");
    const Quiver& q = m.quiver();
    FieldSpec f = m.field();
    Presentation pr = minimal_presentation(m);
    if (pr.k.total_dim() == 0) return std::nullopt;  // projective

    QuiverRep tau = tau_of(m);
    int nv = q.num_vertices();
    // Ext^1(m, tau) = coker(Hom(P0, tau) -> Hom(P1, tau)); take the first
    // coker basis vector as the class of the almost split sequence.
    auto h0 = hom_space(pr.c0.p, tau);
    auto h1 = hom_space(pr.c1.p, tau);
    int n1 = int(h1.size());
    int total = 0;
    for (int w = 0; w < nv; ++w) total += tau.dim(w) * pr.c1.p.dim(w);
    Mat b1(f, total, n1);
    for (int i = 0; i < n1; ++i) b1.paste(0, i, hom_tuple_vec(pr.c1.p, tau, h1[i]));
    Mat img(f, n1, int(h0.size()));
    for (size_t i = 0; i < h0.size(); ++i) {
        std::vector<Mat> comp;
        for (int w = 0; w < nv; ++w) comp.push_back(h0[i][w] * pr.f[w]);
        auto sol = Mat::solve_all(b1, hom_tuple_vec(pr.c1.p, tau, comp));
        if (!sol) throw DomainError("composition left Hom(P1, tau)");
        img.paste(0, int(i), sol->particular);
    }
    Mat imgb = column_space_basis(img);
    if (imgb.cols() == n1) throw DomainError("Ext^1(m, tau m) = 0; not an AR input");
    Mat full = extend_to_basis(imgb, n1);
    Mat coords = full.submat(0, imgb.cols(), n1, 1);  // first complement vector
    std::vector<Mat> xi;
    for (int w = 0; w < nv; ++w) {
        Mat acc(f, tau.dim(w), pr.c1.p.dim(w));
        for (int i = 0; i < n1; ++i) {
            Scalar c = coords.at(i, 0);
            if (!c.is_zero()) acc = acc + h1[i][w].scaled(c);
        }
        xi.push_back(acc);
    }

    // E = coker(P1 -> P0 (+) tau, p |-> (f(p), -xi(p)))
    QuiverRep mid0 = rep_direct_sum(pr.c0.p, tau);
    std::vector<Mat> imgbase;
    for (int w = 0; w < nv; ++w) {
        Mat u = Mat::vcat(pr.f[w], xi[w].neg());
        if (u.rank() != u.cols()) throw DomainError("presentation map not injective");
        imgbase.push_back(column_space_basis(u));
    }
    ArSeq seq;
    seq.left = tau;
    seq.middle = quotient_rep(mid0, imgbase).rep;
    if (seq.middle.total_dim() != m.total_dim() + tau.total_dim())
        throw DomainError("almost split middle term has wrong dimension");
    return seq;
}

// ---------------------------------------------------------------------------
// knitting

ARWindow knit_component(QuiverPtr q, FieldSpec f, const std::vector<QuiverRep>& seeds, int steps)
{
    topological_order(*q);  // acyclic only
    ARWindow w;
    std::vector<QuiverRep> reps;
    std::vector<QuiverRep> projs, injs;
    for (int v = 0; v < q->num_vertices(); ++v) {
        projs.push_back(projective_at(q, f, v));
        injs.push_back(injective_at(q, f, v));
    }

    auto find_or_add = [&](const QuiverRep& r) {
        for (size_t i = 0; i < reps.size(); ++i)
            if (reps[i].dims() == r.dims() && is_isomorphic(reps[i], r)) return std::make_pair(int(i), false);
        reps.push_back(r);
        ARVertex v;
        v.id = "v" + std::to_string(reps.size() - 1);
        v.dims = r.dims();
        for (int p = 0; p < q->num_vertices(); ++p) {
            if (r.dims() == projs[p].dims() && is_isomorphic(r, projs[p])) v.projective = true;
            if (r.dims() == injs[p].dims() && is_isomorphic(r, injs[p])) v.injective = true;
        }
        v.frontier = true;
        w.vertices.push_back(v);
        return std::make_pair(int(reps.size() - 1), true);
    };

    std::deque<int> queue;
    for (const auto& s : seeds) {
        if (s.total_dim() == 0) throw DomainError("zero seed");
        auto [id, fresh] = find_or_add(s);
        if (fresh) queue.push_back(id);
    }

    auto add_arrow = [&](int from, int to, int mult) {
        for (auto& a : w.arrows)
            if (a.from == from && a.to == to) {
                a.mult = std::max(a.mult, mult);
                return;
            }
        w.arrows.push_back({from, to, mult});
    };

    int done = 0;
    while (!queue.empty() && done < steps) {
        int v = queue.front();
        queue.pop_front();
        ++done;
        w.vertices[v].frontier = false;
        if (w.vertices[v].projective) {
            // arrows into a projective come from its radical summands
            QuiverRep rad = rad_sub(reps[v]);
            if (rad.total_dim() == 0) continue;
            std::map<int, int> mults;
            for (const auto& s : decompose_rep(rad)) {
                auto [id, fresh] = find_or_add(s);
                if (fresh) queue.push_back(id);
                ++mults[id];
            }
            for (auto& [id, mu] : mults) add_arrow(id, v, mu);
            continue;
        }
        auto seq = ar_sequence_ending_at(reps[v]);
        if (!seq) continue;
        auto [lid, lfresh] = find_or_add(seq->left);
        if (lfresh) queue.push_back(lid);
        w.tau[v] = lid;
        std::map<int, int> mults;
        for (const auto& s : decompose_rep(seq->middle)) {
            auto [id, fresh] = find_or_add(s);
            if (fresh) queue.push_back(id);
            ++mults[id];
        }
        for (auto& [id, mu] : mults) add_arrow(id, v, mu);
    }
    // remaining queued vertices stay flagged as frontier
    return w;
}

}  // namespace rsq
