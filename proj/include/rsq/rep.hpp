#ifndef RSQ_REP_HPP
#define RSQ_REP_HPP

#include <optional>

#include "rsq/arwindow.hpp"
#include "rsq/matrix.hpp"
#include "rsq/quiver.hpp"

namespace rsq {

/// Finite-dimensional representation of a finite quiver: a dimension per
/// vertex and a matrix per arrow (dim tgt x dim src); absent arrows act by 0.
class QuiverRep {
  public:
    QuiverRep() = default;
    QuiverRep(QuiverPtr q, FieldSpec f) : q_(std::move(q)), f_(f), dims_(q_->num_vertices(), 0) {}

    const Quiver& quiver() const { return *q_; }
    QuiverPtr quiver_ptr() const { return q_; }
    FieldSpec field() const { return f_; }

    int dim(int v) const { return dims_.at(v); }
    void set_dim(int v, int d);
    const std::vector<int>& dims() const { return dims_; }
    int total_dim() const;
    bool is_zero() const { return total_dim() == 0; }

    Mat map_of(int arrow) const;  // zero matrix when unset
    void set_map(int arrow, const Mat& m);
    void validate() const;

    bool operator==(const QuiverRep& o) const;

  private:
    QuiverPtr q_;
    FieldSpec f_;
    std::vector<int> dims_;
    std::map<int, Mat> maps_;
};

/// Indecomposable injective I_a: I_a(x) spanned by the paths x -> a, arrows
/// acting by path truncation. Requires the quiver finite and acyclic.
QuiverRep injective_at(QuiverPtr q, FieldSpec f, int a);
/// Indecomposable projective P_a: P_a(x) spanned by the paths a -> x.
QuiverRep projective_at(QuiverPtr q, FieldSpec f, int a);
QuiverRep simple_at(QuiverPtr q, FieldSpec f, int a);
QuiverRep rep_direct_sum(const QuiverRep& a, const QuiverRep& b);

/// Paths a -> b in an acyclic quiver, each a list of arrows (source first),
/// ordered lexicographically by arrow index.
std::vector<std::vector<int>> enumerate_paths(const Quiver& q, int a, int b);

struct SocQuot {
    QuiverRep soc;       // largest semisimple subrepresentation (zero maps)
    QuiverRep quotient;  // m / soc with induced maps
};
SocQuot soc_and_quotient(const QuiverRep& m);

/// rad m = sum of images of all arrow maps, with the restricted action.
QuiverRep rad_sub(const QuiverRep& m);
/// top m = m / rad m (semisimple).
QuiverRep top_quotient(const QuiverRep& m);

/// Basis of Hom(a, b) as tuples of per-vertex matrices.
std::vector<std::vector<Mat>> hom_space(const QuiverRep& a, const QuiverRep& b);
int hom_dim(const QuiverRep& a, const QuiverRep& b);

bool is_isomorphic(const QuiverRep& a, const QuiverRep& b);

/// True iff End(m) has no idempotent besides 0 and id. Exact over the
/// rationals and over F_p in the regimes exercised here: trace-form radical
/// when p = 0 or p > dim End, exhaustive primary splitting for small p.
/// DomainError on the zero representation.
bool is_indecomposable(const QuiverRep& m);

/// Indecomposable direct summands (deterministic splitting search).
std::vector<QuiverRep> decompose_rep(const QuiverRep& m);

/// D Tr m for a non-projective indecomposable over a finite acyclic quiver.
QuiverRep tau_of(const QuiverRep& m);

struct ArSeq {
    QuiverRep left;    // tau m
    QuiverRep middle;  // E in 0 -> tau m -> E -> m -> 0
};

/// Almost split sequence ending at m; nullopt when m is projective.
/// Requires m indecomposable over a finite acyclic quiver.
std::optional<ArSeq> ar_sequence_ending_at(const QuiverRep& m);

/// Knit the translation-quiver fragment generated backwards from the seeds
/// (mesh ending at each reachable vertex; arrows into projectives from the
/// radical summands). Stops after `steps` meshes, marking the remaining
/// frontier.
ARWindow knit_component(QuiverPtr q, FieldSpec f, const std::vector<QuiverRep>& seeds, int steps);

}  // namespace rsq

#endif
