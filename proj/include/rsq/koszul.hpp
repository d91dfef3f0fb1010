#ifndef RSQ_KOSZUL_HPP
#define RSQ_KOSZUL_HPP

#include "rsq/complex.hpp"
#include "rsq/cover.hpp"
#include "rsq/rep.hpp"

namespace rsq {

/// Representations feeding the Koszul functor live over the opposite of the
/// covering window quiver; vertex and arrow indices agree with the window
/// quiver (opposite() keeps names).
QuiverRep window_op_injective(const CoverWindow& cw, FieldSpec f, const CoverVertex& x);
QuiverRep window_op_projective(const CoverWindow& cw, FieldSpec f, const CoverVertex& x);
QuiverRep window_op_simple(const CoverWindow& cw, FieldSpec f, const CoverVertex& x);

/// True when the support of m reaches the top window level and the covering
/// continues above it (the Koszul image is then a truncation).
bool koszul_truncation_flag(const CoverWindow& cw, const QuiverRep& m);

/// F(M): level -n vertices feed degree n; differential blocks P[alpha] (x)
/// M(alpha^o). Output over the window algebra, radical by construction.
RadicalComplex koszul_rep(const CoverWindow& cw, const QuiverRep& m);

/// F(f) for a morphism f: m -> n of window-op representations (per-vertex
/// matrices): degreewise trivial-path blocks id (x) f(x).
ChainMap koszul_morphism(const CoverWindow& cw, const QuiverRep& m, const QuiverRep& n,
                         const std::vector<Mat>& f);

/// Sum total complex of the double complex F(M^*) with vertical signs
/// (-1)^i; terms[i] sits in horizontal degree lo_degree + i.
ProjComplex koszul_total(const CoverWindow& cw, const std::vector<QuiverRep>& terms,
                         const std::vector<std::vector<Mat>>& maps, int lo_degree);

/// rho^power . m; DomainError when the shifted support leaves the window.
QuiverRep rho_shift_rep(const CoverWindow& cw, const QuiverRep& m, int power);

struct PushdownResult {
    RadicalComplex complex;                 // over the base quiver
    std::map<std::pair<int, int>, int> offset;  // (degree, window vertex) -> block offset
};

/// Koszul push-down: relabel window summands P[(x, n)] as P[x] and window
/// arrows along pi, aggregating colliding fibers per degree.
PushdownResult pushdown(const CoverWindow& cw, const RadicalComplex& c);

/// Push down a chain map between window complexes, consistently with the
/// offsets of the two push-downs.
ChainMap pushdown_chain_map(const CoverWindow& cw, const RadicalComplex& xw,
                            const RadicalComplex& yw, const ChainMap& f,
                            const PushdownResult& px, const PushdownResult& py);

struct InjImageReport {
    bool pass = false;
    int top_degree = 0;
    bool truncated = false;
    std::string detail;
};

/// Checks F(I_{x^o}) ~ P_{S[x]}[level(x)]: single top summand P[x] at degree
/// -level, simple top homology, all other reliable homology zero. Partial
/// verification when the injective is truncated by the window.
InjImageReport verify_injective_image(const CoverWindow& cw, FieldSpec f, const CoverVertex& x);

struct ExtractedRep {
    QuiverRep rep;
    int shift = 0;
};

/// Inverse of koszul_rep on support-connected window complexes:
/// c = koszul_rep(rep)[shift] with N(alpha^o) = (-1)^shift M_alpha.
ExtractedRep koszul_extract(const CoverWindow& cw, const RadicalComplex& c);

}  // namespace rsq

#endif
