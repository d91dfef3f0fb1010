#ifndef RSQ_RSZ_HPP
#define RSQ_RSZ_HPP

#include <map>

#include "rsq/matrix.hpp"
#include "rsq/quiver.hpp"

namespace rsq {

/// Lambda = kQ/(kQ+)^2. Basis: the vertex idempotents and the arrows;
/// products of two arrows vanish. P[x] = Lambda e_x carries the ordered
/// basis (eps_x, arrows out of x in arrow order).
class RszAlgebra {
  public:
    RszAlgebra(QuiverPtr q, FieldSpec f) : q_(std::move(q)), f_(f) {}

    const Quiver& quiver() const { return *q_; }
    QuiverPtr quiver_ptr() const { return q_; }
    FieldSpec field() const { return f_; }

    int dim() const { return q_->num_vertices() + q_->num_arrows(); }
    int proj_dim(int x) const { return 1 + int(q_->out_arrows(x).size()); }

    /// Generators of Hom(P[x], P[y]) = span Q_{<=1}(y, x): the trivial path
    /// (encoded -1, present iff x == y) followed by the arrows y -> x in
    /// arrow order. dim Hom(P[x] (x) U, P[y] (x) V) = |result| dim U dim V.
    std::vector<int> hom_basis(int x, int y) const;

    /// Position of basis element in P[x]: eps_x at 0, arrow a at
    /// 1 + its rank among out-arrows of x.
    int basis_pos(int x, int arrow) const;
    /// Vertex grade of the k-th basis element of P[x] (eps at x, arrow at
    /// its target).
    int basis_grade(int x, int k) const;

  private:
    QuiverPtr q_;
    FieldSpec f_;
};

/// Formal finite sum  (+)_x P[x] (x) k^{m_x}, vertex-sorted.
struct ProjObj {
    std::map<int, int> mult;  // vertex -> multiplicity > 0
    int total_mult() const;
    bool operator==(const ProjObj& o) const { return mult == o.mult; }
};

int proj_obj_dim(const RszAlgebra& alg, const ProjObj& o);

/// A morphism between ProjObjs in the unique block form
/// f = sum_{gamma in Q_{<=1}(y, x)} P[gamma] (x) f_gamma. Generators are
/// encoded as -1 (trivial path) or an arrow index.
struct ProjMorphism {
    ProjObj src, tgt;
    // (target vertex y, source vertex x) -> generator -> Mat (mult_y x mult_x)
    std::map<std::pair<int, int>, std::map<int, Mat>> blocks;

    Mat block(FieldSpec f, const std::pair<int, int>& yx, int gen) const;
    void add_block(const std::pair<int, int>& yx, int gen, const Mat& m);  // accumulates, drops zeros
    bool is_zero() const;
};

ProjMorphism pm_zero(const ProjObj& src, const ProjObj& tgt);
ProjMorphism pm_identity(const RszAlgebra& alg, const ProjObj& obj);
ProjMorphism pm_add(const ProjMorphism& f, const ProjMorphism& g);
ProjMorphism pm_negate(const ProjMorphism& f);
/// g after f; DomainError on shape mismatch.
ProjMorphism pm_compose(const RszAlgebra& alg, const ProjMorphism& g, const ProjMorphism& f);
bool pm_is_radical(const ProjMorphism& f);
bool pm_equal(const ProjMorphism& f, const ProjMorphism& g);

/// Generator composition: second o first, or nullopt when the composite path
/// has length two (rad^2 = 0). DomainError when the generators do not meet.
std::optional<int> gen_compose(const Quiver& q, int x, int y, int z, int gen_second, int gen_first);

struct RealizedMorphism {
    Mat mat;
    std::vector<int> row_grade;  // vertex grade of each target basis element
    std::vector<int> col_grade;
};

/// Concrete matrix on the Lambda-bases of the projectives, row/column order:
/// summand vertices ascending, copies, then the P[x] basis order.
RealizedMorphism pm_realize(const RszAlgebra& alg, const ProjMorphism& f);

/// Unique block decomposition of a concrete matrix; DomainError when the
/// matrix is not Lambda-linear.
ProjMorphism pm_unrealize(const RszAlgebra& alg, const ProjObj& src, const ProjObj& tgt, const Mat& m);

}  // namespace rsq

#endif
