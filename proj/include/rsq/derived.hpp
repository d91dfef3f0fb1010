#ifndef RSQ_DERIVED_HPP
#define RSQ_DERIVED_HPP

#include "rsq/koszul.hpp"

namespace rsq {

/// Shift normalization into Z_r (all of Z when r = 0).
long zr_normalize(long s, int r);

struct SimpleLocation {
    CoverVertex x;  // covering vertex with S[a][n] = F_pi(I_{x^o})[s]
    long s = 0;     // in Z_r
    int r = 0;
};

/// Covering vertex and shift realizing S[a][n], anchored at the smallest
/// vertex id: x = (a, n - s) with s = (n - d) mod r for a walk degree d.
SimpleLocation locate_simple(const Quiver& q, int a, long n);

struct SimpleComplex {
    RadicalComplex pres;  // truncated projective resolution over the base
    SimpleLocation loc;
    bool truncated = false;
};

/// S[a][n] realized through the Koszul push-down, resolved to `depth`
/// degrees below its top.
SimpleComplex simple_complex(QuiverPtr q, FieldSpec f, int a, long n, int depth);

struct IrrToSimples {
    int source_vertex = -1;
    std::vector<int> targets;       // targets a_i of the outgoing arrows
    RadicalComplex src;             // presentation of S[a]
    RadicalComplex tgt;             // presentation of (+) S[a_i][1]
    ChainMap map;                   // the canonical quotient of resolutions
    int hom_dim = 0;                // dim Hom(S[a], (+) S[a_i][1])
    bool nonzero_class = false;
    bool components_nonzero = false;
    bool irreducible_within_window = false;
    std::string window_desc;
};

/// The irreducible morphism S[a] -> (+)_{alpha: a -> a_i} S[a_i][1] on
/// truncated resolutions, with window-relative irreducibility evidence.
/// DomainError when a is a sink.
IrrToSimples irreducible_to_simples(QuiverPtr q, FieldSpec f, int a, int depth);

struct TriangleTerm {
    std::string role;  // "start", "middle", "end", "start[1]"
    RadicalComplex pres;
    std::map<int, std::map<int, int>> dims;  // k-dimension table of pres
};

struct ArTriangle {
    bool computable = true;
    std::string kind;  // "almost-split-sequence" or "connecting"
    std::string note;
    std::vector<TriangleTerm> terms;
};

/// Almost split triangle ending at F_pi(M)[s+?]: the push-down of the
/// module-level almost split sequence when M is non-projective, the
/// connecting triangle with middle F_pi(I/soc) (+) F_pi(rad P)[1] when M is
/// a finite-dimensional projective P_{x^o}.
ArTriangle ar_triangle(const CoverWindow& cw, FieldSpec f, const QuiverRep& m, long s);

struct ConnectingProfile {
    int r = 0;
    bool dynkin = false;
    bool right_infinite = false;
    bool left_infinite = false;
    bool left_stable = false;
    bool perfect_only = false;
    bool z_qtilde = false;           // connecting component of shape Z Q~
    bool nonperfect_leftmost = false;
    std::string text;
};

ConnectingProfile connecting_profile(const Quiver& q);

struct ComponentEntry {
    std::string shape;
    long count = 0;  // -1 for infinitely many
    bool contains_simples = false;
    bool perfect_only = true;
};

struct ComponentReport {
    std::vector<ComponentEntry> entries;
    bool finite = true;
    std::string case_name;
    std::string str() const;
};

/// Component classification of the derived Auslander-Reiten quiver:
/// Dynkin / oriented cycle / mixed cycle / everything else.
ComponentReport classify_components(const Quiver& q);

/// Randomized decompose/radicalize consistency vectors; deterministic for a
/// fixed seed. Returns a one-line report.
std::string run_selfcheck(FieldSpec f, std::uint64_t seed);

}  // namespace rsq

#endif
