#include "rsq/matrix.hpp"

#include <sstream>

namespace rsq {

namespace {

struct FpOps {
    std::int64_t p;
    using T = std::int64_t;
    T zero() const { return 0; }
    T one() const { return 1; }
    bool is_zero(T a) const { return a == 0; }
    T add(T a, T b) const { return (a + b) % p; }
    T sub(T a, T b) const { return fp_sub(a, b, p); }
    T mul(T a, T b) const { return (a * b) % p; }
    T neg(T a) const { return fp_neg(a, p); }
    T inv(T a) const { return fp_inv(a, p); }
};

struct QOps {
    using T = mpq_class;
    T zero() const { return T(0); }
    T one() const { return T(1); }
    bool is_zero(const T& a) const { return a == 0; }
    T add(const T& a, const T& b) const { return a + b; }
    T sub(const T& a, const T& b) const { return a - b; }
    T mul(const T& a, const T& b) const { return a * b; }
    T neg(const T& a) const { return -a; }
    T inv(const T& a) const
    {
        if (a == 0) throw DomainError("division by zero");
        return 1 / a;
    }
};

// In-place row reduction of an (rows x cols) array, eliminating only on the
// first `elim_cols` columns; returns pivot columns in order.
template <class O>
std::vector<int> row_reduce(std::vector<typename O::T>& a, int rows, int cols, int elim_cols, const O& o)
{
    std::vector<int> pivots;
    int r = 0;
    for (int c = 0; c < elim_cols && r < rows; ++c) {
        int pr = -1;
        for (int i = r; i < rows; ++i) {
            if (!o.is_zero(a[size_t(i) * cols + c])) {
                pr = i;
                break;
            }
        }
        if (pr < 0) continue;
        if (pr != r)
            for (int j = 0; j < cols; ++j) std::swap(a[size_t(pr) * cols + j], a[size_t(r) * cols + j]);
        auto piv_inv = o.inv(a[size_t(r) * cols + c]);
        for (int j = 0; j < cols; ++j) a[size_t(r) * cols + j] = o.mul(a[size_t(r) * cols + j], piv_inv);
        for (int i = 0; i < rows; ++i) {
            if (i == r) continue;
            auto f = a[size_t(i) * cols + c];
            if (o.is_zero(f)) continue;
            for (int j = 0; j < cols; ++j)
                a[size_t(i) * cols + j] = o.sub(a[size_t(i) * cols + j], o.mul(f, a[size_t(r) * cols + j]));
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

template <class O>
void mul_into(const std::vector<typename O::T>& a, const std::vector<typename O::T>& b,
              std::vector<typename O::T>& out, int n, int k, int m, const O& o)
{
    // (n x k) * (k x m)
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < m; ++j) {
            auto acc = o.zero();
            for (int l = 0; l < k; ++l) {
                const auto& x = a[size_t(i) * k + l];
                if (o.is_zero(x)) continue;
                acc = o.add(acc, o.mul(x, b[size_t(l) * m + j]));
            }
            out[size_t(i) * m + j] = acc;
        }
    }
}

}  // namespace

struct MatImpl {
    template <class F>
    static auto dispatch(const Mat& m, F&& f)
    {
        if (m.f_.is_prime_field())
            return f(m.fp_, FpOps{m.f_.p()});
        return f(m.q_, QOps{});
    }
};

Mat::Mat(FieldSpec f, int rows, int cols) : f_(f), rows_(rows), cols_(cols)
{
    if (rows < 0 || cols < 0) throw DomainError("negative matrix dimension");
    if (f_.is_prime_field())
        fp_.assign(size_t(rows) * cols, 0);
    else
        q_.assign(size_t(rows) * cols, mpq_class(0));
}

Mat Mat::identity(FieldSpec f, int n)
{
    Mat m(f, n, n);
    for (int i = 0; i < n; ++i) m.set(i, i, 1);
    return m;
}

Mat Mat::from_ints(FieldSpec f, const std::vector<std::vector<std::int64_t>>& rows)
{
    int nr = int(rows.size());
    int nc = nr ? int(rows[0].size()) : 0;
    Mat m(f, nr, nc);
    for (int i = 0; i < nr; ++i) {
        if (int(rows[i].size()) != nc) throw DomainError("ragged matrix literal");
        for (int j = 0; j < nc; ++j) m.set(i, j, rows[i][j]);
    }
    return m;
}

Scalar Mat::at(int i, int j) const
{
    if (i < 0 || i >= rows_ || j < 0 || j >= cols_) throw DomainError("matrix index out of range");
    Scalar s(f_);
    if (f_.is_prime_field()) return Scalar::from_int(f_, fp_[size_t(i) * cols_ + j]);
    return Scalar::from_mpq(f_, q_[size_t(i) * cols_ + j]);
}

void Mat::set(int i, int j, const Scalar& v)
{
    if (i < 0 || i >= rows_ || j < 0 || j >= cols_) throw DomainError("matrix index out of range");
    if (v.field() != f_) throw DomainError("field mismatch in Mat::set");
    if (f_.is_prime_field())
        fp_[size_t(i) * cols_ + j] = v.fp_value();
    else
        q_[size_t(i) * cols_ + j] = v.q_value();
}

bool Mat::is_zero() const
{
    return MatImpl::dispatch(*this, [&](const auto& data, auto o) {
        for (const auto& x : data)
            if (!o.is_zero(x)) return false;
        return true;
    });
}

bool Mat::is_identity() const
{
    if (rows_ != cols_) return false;
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) {
            Scalar v = at(i, j);
            if (i == j ? !v.is_one() : !v.is_zero()) return false;
        }
    return true;
}

bool Mat::operator==(const Mat& o) const
{
    if (f_ != o.f_ || rows_ != o.rows_ || cols_ != o.cols_) return false;
    return f_.is_prime_field() ? fp_ == o.fp_ : q_ == o.q_;
}

Mat Mat::operator+(const Mat& o) const
{
    if (f_ != o.f_ || rows_ != o.rows_ || cols_ != o.cols_) throw DomainError("shape mismatch in Mat::+");
    Mat r(f_, rows_, cols_);
    if (f_.is_prime_field()) {
        FpOps ops{f_.p()};
        for (size_t i = 0; i < fp_.size(); ++i) r.fp_[i] = ops.add(fp_[i], o.fp_[i]);
    } else {
        for (size_t i = 0; i < q_.size(); ++i) r.q_[i] = q_[i] + o.q_[i];
    }
    return r;
}

Mat Mat::operator-(const Mat& o) const
{
    if (f_ != o.f_ || rows_ != o.rows_ || cols_ != o.cols_) throw DomainError("shape mismatch in Mat::-");
    Mat r(f_, rows_, cols_);
    if (f_.is_prime_field()) {
        FpOps ops{f_.p()};
        for (size_t i = 0; i < fp_.size(); ++i) r.fp_[i] = ops.sub(fp_[i], o.fp_[i]);
    } else {
        for (size_t i = 0; i < q_.size(); ++i) r.q_[i] = q_[i] - o.q_[i];
    }
    return r;
}

Mat Mat::operator*(const Mat& o) const
{
    if (f_ != o.f_ || cols_ != o.rows_) throw DomainError("shape mismatch in Mat::*");
    Mat r(f_, rows_, o.cols_);
    if (f_.is_prime_field())
        mul_into(fp_, o.fp_, r.fp_, rows_, cols_, o.cols_, FpOps{f_.p()});
    else
        mul_into(q_, o.q_, r.q_, rows_, cols_, o.cols_, QOps{});
    return r;
}

Mat Mat::neg() const
{
    Mat r(f_, rows_, cols_);
    if (f_.is_prime_field()) {
        FpOps ops{f_.p()};
        for (size_t i = 0; i < fp_.size(); ++i) r.fp_[i] = ops.neg(fp_[i]);
    } else {
        for (size_t i = 0; i < q_.size(); ++i) r.q_[i] = -q_[i];
    }
    return r;
}

Mat Mat::scaled(const Scalar& c) const
{
    if (c.field() != f_) throw DomainError("field mismatch in Mat::scaled");
    Mat r(f_, rows_, cols_);
    if (f_.is_prime_field()) {
        FpOps ops{f_.p()};
        for (size_t i = 0; i < fp_.size(); ++i) r.fp_[i] = ops.mul(fp_[i], c.fp_value());
    } else {
        for (size_t i = 0; i < q_.size(); ++i) r.q_[i] = q_[i] * c.q_value();
    }
    return r;
}

Mat Mat::transpose() const
{
    Mat r(f_, cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) r.set(j, i, at(i, j));
    return r;
}

Mat Mat::hcat(const Mat& a, const Mat& b)
{
    if (a.f_ != b.f_ || a.rows_ != b.rows_) throw DomainError("shape mismatch in hcat");
    Mat r(a.f_, a.rows_, a.cols_ + b.cols_);
    r.paste(0, 0, a);
    r.paste(0, a.cols_, b);
    return r;
}

Mat Mat::vcat(const Mat& a, const Mat& b)
{
    if (a.f_ != b.f_ || a.cols_ != b.cols_) throw DomainError("shape mismatch in vcat");
    Mat r(a.f_, a.rows_ + b.rows_, a.cols_);
    r.paste(0, 0, a);
    r.paste(a.rows_, 0, b);
    return r;
}

Mat Mat::submat(int r0, int c0, int nr, int nc) const
{
    if (r0 < 0 || c0 < 0 || r0 + nr > rows_ || c0 + nc > cols_) throw DomainError("submat out of range");
    Mat r(f_, nr, nc);
    for (int i = 0; i < nr; ++i)
        for (int j = 0; j < nc; ++j) r.set(i, j, at(r0 + i, c0 + j));
    return r;
}

void Mat::paste(int r0, int c0, const Mat& m)
{
    if (m.f_ != f_) throw DomainError("field mismatch in paste");
    if (r0 + m.rows_ > rows_ || c0 + m.cols_ > cols_) throw DomainError("paste out of range");
    for (int i = 0; i < m.rows_; ++i)
        for (int j = 0; j < m.cols_; ++j) set(r0 + i, c0 + j, m.at(i, j));
}

int Mat::rank() const
{
    if (f_.is_prime_field()) {
        auto a = fp_;
        return int(row_reduce(a, rows_, cols_, cols_, FpOps{f_.p()}).size());
    }
    auto a = q_;
    return int(row_reduce(a, rows_, cols_, cols_, QOps{}).size());
}

Mat Mat::rref() const
{
    Mat r = *this;
    if (f_.is_prime_field())
        row_reduce(r.fp_, rows_, cols_, cols_, FpOps{f_.p()});
    else
        row_reduce(r.q_, rows_, cols_, cols_, QOps{});
    return r;
}

MatRankKernel Mat::rank_kernel() const
{
    Mat r = *this;
    std::vector<int> pivots;
    if (f_.is_prime_field())
        pivots = row_reduce(r.fp_, rows_, cols_, cols_, FpOps{f_.p()});
    else
        pivots = row_reduce(r.q_, rows_, cols_, cols_, QOps{});
    int rk = int(pivots.size());
    std::vector<bool> is_pivot(cols_, false);
    for (int c : pivots) is_pivot[c] = true;
    Mat ker(f_, cols_, cols_ - rk);
    int kcol = 0;
    for (int c = 0; c < cols_; ++c) {
        if (is_pivot[c]) continue;
        ker.set(c, kcol, 1);
        for (int pi = 0; pi < rk; ++pi)
            ker.set(pivots[pi], kcol, r.at(pi, c).neg());
        ++kcol;
    }
    return {rk, ker};
}

std::optional<MatSolution> Mat::solve_all(const Mat& A, const Mat& B)
{
    if (A.field() != B.field() || A.rows() != B.rows()) throw DomainError("shape mismatch in solve_all");
    Mat aug = hcat(A, B);
    std::vector<int> pivots;
    if (aug.f_.is_prime_field())
        pivots = row_reduce(aug.fp_, aug.rows_, aug.cols_, A.cols(), FpOps{aug.f_.p()});
    else
        pivots = row_reduce(aug.q_, aug.rows_, aug.cols_, A.cols(), QOps{});
    int rk = int(pivots.size());
    // inconsistent iff a row is zero on the A side but nonzero on the B side
    for (int i = rk; i < aug.rows_; ++i)
        for (int j = A.cols(); j < aug.cols_; ++j)
            if (!aug.at(i, j).is_zero()) return std::nullopt;
    Mat x(A.field(), A.cols(), B.cols());
    for (int pi = 0; pi < rk; ++pi)
        for (int j = 0; j < B.cols(); ++j) x.set(pivots[pi], j, aug.at(pi, A.cols() + j));
    return MatSolution{x, A.rank_kernel().kernel};
}

std::optional<Mat> Mat::inverse() const
{
    if (rows_ != cols_) return std::nullopt;
    auto sol = solve_all(*this, identity(f_, rows_));
    if (!sol || sol->kernel.cols() != 0) return std::nullopt;
    return sol->particular;
}

std::string Mat::str() const
{
    std::ostringstream os;
    os << "[";
    for (int i = 0; i < rows_; ++i) {
        os << (i ? "; " : "");
        for (int j = 0; j < cols_; ++j) os << (j ? " " : "") << at(i, j).str();
    }
    os << "]";
    return os.str();
}

}  // namespace rsq
