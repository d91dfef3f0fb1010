#ifndef RSQ_MATRIX_HPP
#define RSQ_MATRIX_HPP

#include <optional>
#include <vector>

#include "rsq/field.hpp"

namespace rsq {

struct MatRankKernel;
struct MatSolution;

/// Dense exact matrix over a FieldSpec. Prime-field entries are int64
/// residues; rational entries are GMP rationals. All reductions are
/// deterministic (leftmost-pivot Gaussian elimination, no pivoting
/// heuristics), so echelon bases are reproducible bit for bit.
class Mat {
  public:
    Mat() : Mat(FieldSpec(), 0, 0) {}
    Mat(FieldSpec f, int rows, int cols);

    static Mat identity(FieldSpec f, int n);
    static Mat from_ints(FieldSpec f, const std::vector<std::vector<std::int64_t>>& rows);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    FieldSpec field() const { return f_; }

    Scalar at(int i, int j) const;
    void set(int i, int j, const Scalar& v);
    void set(int i, int j, std::int64_t v) { set(i, j, Scalar::from_int(f_, v)); }

    bool is_zero() const;
    bool is_identity() const;
    bool operator==(const Mat& o) const;
    bool operator!=(const Mat& o) const { return !(*this == o); }

    Mat operator+(const Mat& o) const;
    Mat operator-(const Mat& o) const;
    Mat operator*(const Mat& o) const;
    Mat neg() const;
    Mat scaled(const Scalar& c) const;
    Mat transpose() const;

    static Mat hcat(const Mat& a, const Mat& b);
    static Mat vcat(const Mat& a, const Mat& b);
    Mat submat(int r0, int c0, int nr, int nc) const;
    void paste(int r0, int c0, const Mat& m);

    int rank() const;
    /// Row-reduced echelon form.
    Mat rref() const;

    MatRankKernel rank_kernel() const;

    /// Full affine solution set of A X = B, or nullopt when inconsistent.
    static std::optional<MatSolution> solve_all(const Mat& A, const Mat& B);

    std::optional<Mat> inverse() const;

    std::string str() const;  // debugging aid

  private:
    FieldSpec f_;
    int rows_ = 0, cols_ = 0;
    std::vector<std::int64_t> fp_;   // prime fields
    std::vector<mpq_class> q_;       // rationals

    friend struct MatImpl;
};

struct MatRankKernel {
    int rank;
    Mat kernel;  // columns form a basis of the right kernel, reduced echelon
};

struct MatSolution {
    Mat particular;  // one solution X of A X = B
    Mat kernel;      // kernel basis of A
};

}  // namespace rsq

#endif
