#ifndef RSQ_COMPLEX_HPP
#define RSQ_COMPLEX_HPP

#include <tuple>

#include "rsq/rsz.hpp"

namespace rsq {

struct SupportQuiver {
    std::vector<std::pair<int, int>> vertices;        // (vertex, degree), sorted
    std::vector<std::pair<int, int>> arrows;          // (arrow, degree)
    std::vector<std::vector<int>> components;         // indices into vertices, each sorted
};

/// Cohomological complex over Proj Lambda with radical differentials,
/// stored as graded multiplicities plus one block matrix per (degree,
/// arrow). d^2 = 0 holds automatically since rad^2 = 0. `truncated_below`
/// marks an artificial cut: the complex continues below lo() and degree
/// lo() carries unreliable homology.
class RadicalComplex {
  public:
    RadicalComplex() = default;
    RadicalComplex(QuiverPtr q, FieldSpec f) : q_(std::move(q)), f_(f) {}

    const Quiver& quiver() const { return *q_; }
    QuiverPtr quiver_ptr() const { return q_; }
    FieldSpec field() const { return f_; }

    /// Degree range of nonzero terms; lo() > hi() when zero.
    int lo() const;
    int hi() const;
    bool is_zero() const { return terms_.empty(); }
    bool truncated_below() const { return truncated_below_; }
    void set_truncated_below(bool t) { truncated_below_ = t; }

    void set_mult(int degree, int vertex, int mult);
    int mult(int degree, int vertex) const;
    const std::map<int, std::map<int, int>>& terms() const { return terms_; }
    /// k-dimensions per degree and vertex (multiplicity times dim P[x]).
    std::map<int, std::map<int, int>> dim_table() const;
    int total_dim() const;

    /// Block M_alpha^n for arrow alpha = (y -> x): mult_n(x) -> mult_{n+1}(y).
    void set_block(int degree, int arrow, const Mat& m);
    Mat block(int degree, int arrow) const;
    bool has_block(int degree, int arrow) const;
    const std::map<std::pair<int, int>, Mat>& blocks() const { return diff_; }

    void validate() const;

    ProjObj term_obj(int degree) const;
    ProjMorphism differential(int degree) const;

    SupportQuiver support_quiver() const;
    std::vector<RadicalComplex> decompose_by_support() const;

    RadicalComplex shifted(int s) const;  // X[s]
    RadicalComplex twisted() const;       // negate all differentials
    /// Brutal truncation keeping degrees >= cut; marks the result truncated
    /// when anything was dropped.
    RadicalComplex truncate_below(int cut) const;
    static RadicalComplex direct_sum(const RadicalComplex& a, const RadicalComplex& b);

    /// Dimensions of H^n as a module, per vertex. DomainError at the
    /// unreliable boundary degree of a truncated complex.
    std::map<int, int> homology_dims(int degree) const;

    bool equal_to(const RadicalComplex& o) const;

  private:
    QuiverPtr q_;
    FieldSpec f_;
    bool truncated_below_ = false;
    std::map<int, std::map<int, int>> terms_;      // degree -> vertex -> mult
    std::map<std::pair<int, int>, Mat> diff_;      // (degree, arrow) -> block
};

/// Degree-0 morphism of complexes in block form: (degree, target vertex,
/// source vertex) -> generator -> coefficient matrix.
struct ChainMap {
    std::map<std::tuple<int, int, int>, std::map<int, Mat>> blocks;
    bool is_zero() const;
    void add_block(int degree, int y, int x, int gen, const Mat& m);
    Mat block(FieldSpec f, int degree, int y, int x, int gen, int rows, int cols) const;
};

struct HomResult {
    int dim = 0;
    std::vector<ChainMap> basis;  // representatives of a basis mod homotopy
};

/// dim and basis of Hom_{K}(x, y) in degree 0. Preconditions: y bounded, or
/// y truncated while x is bounded or truncated with x.lo() <= y.lo() - 1.
/// For truncated y the computation additionally quotients by radical cycles
/// supported in the bottom degree; this matches the homotopy category of
/// the untruncated objects when y is exact at and below its cut.
HomResult hom_homotopy(const RadicalComplex& x, const RadicalComplex& y);

/// True when the chain map f: x -> y is null-homotopic (same window
/// semantics and preconditions as hom_homotopy).
bool chain_null_homotopic(const RadicalComplex& x, const RadicalComplex& y, const ChainMap& f);

/// Class-membership test: is f in the span of the given chain maps modulo
/// homotopy?
bool chain_in_span(const RadicalComplex& x, const RadicalComplex& y, const ChainMap& f,
                   const std::vector<ChainMap>& span);

/// f o g as maps x -> y -> z.
ChainMap chain_compose(const RadicalComplex& x, const RadicalComplex& y, const RadicalComplex& z,
                       const ChainMap& f, const ChainMap& g);
/// Morphism check: f d_x = d_y f.
bool chain_is_morphism(const RadicalComplex& x, const RadicalComplex& y, const ChainMap& f);
ChainMap chain_shift(const ChainMap& f, int s);

/// General complex over Proj Lambda with per-copy generator blocks (trivial
/// paths allowed). Used for total complexes, cones and as radicalize input.
class ProjComplex {
  public:
    ProjComplex() = default;
    ProjComplex(QuiverPtr q, FieldSpec f) : q_(std::move(q)), f_(f) {}

    QuiverPtr quiver_ptr() const { return q_; }
    const Quiver& quiver() const { return *q_; }
    FieldSpec field() const { return f_; }
    bool truncated_below() const { return truncated_below_; }
    void set_truncated_below(bool t) { truncated_below_ = t; }

    std::map<int, std::vector<int>>& copies() { return copies_; }
    const std::map<int, std::vector<int>>& copies() const { return copies_; }

    /// Generator coefficient of the differential block copy j at degree n ->
    /// copy i at degree n+1.
    void add_entry(int degree, int i, int j, int gen, const Scalar& c);
    const std::map<std::pair<int, int>, std::map<int, Scalar>>& entries(int degree) const;

    static ProjComplex from_radical(const RadicalComplex& c);
    /// Aggregates to a RadicalComplex; DomainError if not radical.
    RadicalComplex to_radical() const;
    bool is_radical() const;

    ProjObj term_obj(int degree) const;
    ProjMorphism differential(int degree) const;

    void validate() const;  // includes an honest d^2 = 0 check
    std::map<int, int> homology_dims(int degree) const;
    std::map<int, std::map<int, int>> dim_table() const;

    ProjComplex shifted(int s) const;
    static ProjComplex direct_sum(const ProjComplex& a, const ProjComplex& b);

  private:
    QuiverPtr q_;
    FieldSpec f_;
    bool truncated_below_ = false;
    std::map<int, std::vector<int>> copies_;  // degree -> vertex of each copy
    // degree -> (target copy i at degree+1, source copy j at degree) -> gen -> coeff
    std::map<int, std::map<std::pair<int, int>, std::map<int, Scalar>>> blocks_;
};

/// Homotopy-equivalent radical complex, by repeated contraction of
/// invertible trivial-path pivots (generalized Gaussian elimination over
/// Proj Lambda). Idempotent on radical inputs.
RadicalComplex radicalize(const ProjComplex& x);

/// Mapping cone of f: x -> y: C^n = x^{n+1} (+) y^n with differential
/// [[-d_x, 0], [f, d_y]].
ProjComplex mapping_cone(const RadicalComplex& x, const RadicalComplex& y, const ChainMap& f);

/// Homology dims shared helper for a pair of consecutive differentials.
std::map<int, int> homology_of_pair(const RszAlgebra& alg, const ProjMorphism& d_in,
                                    const ProjMorphism& d_out);

}  // namespace rsq

#endif
