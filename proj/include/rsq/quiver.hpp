#ifndef RSQ_QUIVER_HPP
#define RSQ_QUIVER_HPP

#include <memory>
#include <string>
#include <vector>

#include "rsq/field.hpp"

namespace rsq {

struct Arrow {
    std::string id;
    int src = -1;
    int tgt = -1;
};

/// Finite directed multigraph. Vertices and arrows are stored sorted by id,
/// so every index-based traversal below is reproducible.
class Quiver {
  public:
    Quiver() = default;
    /// arrows given as (id, source name, target name). ParseError on
    /// duplicate or empty ids and dangling endpoints.
    Quiver(std::vector<std::string> vertices,
           std::vector<std::tuple<std::string, std::string, std::string>> arrows);

    int num_vertices() const { return int(vertex_names_.size()); }
    int num_arrows() const { return int(arrows_.size()); }
    const std::string& vertex_name(int v) const { return vertex_names_.at(v); }
    const Arrow& arrow(int a) const { return arrows_.at(a); }
    int vertex_index(const std::string& name) const;  // -1 if absent
    int arrow_index(const std::string& name) const;   // -1 if absent

    const std::vector<int>& out_arrows(int v) const { return out_.at(v); }
    const std::vector<int>& in_arrows(int v) const { return in_.at(v); }
    /// Q_1(a, b): arrows a -> b, in arrow order.
    std::vector<int> arrows_between(int a, int b) const;

    bool operator==(const Quiver& o) const;

  private:
    std::vector<std::string> vertex_names_;
    std::vector<Arrow> arrows_;
    std::vector<std::vector<int>> out_, in_;
};

using QuiverPtr = std::shared_ptr<const Quiver>;

struct WalkStep {
    int arrow;
    int dir;  // +1 forward, -1 backward
};

/// A walk w = a_r^{e_r} ... a_1^{e_1} starting at `base`; trivial when empty.
struct Walk {
    int base = -1;
    std::vector<WalkStep> steps;
};

/// Sum of the step exponents. DomainError on non-composable steps.
int walk_degree(const Quiver& q, const Walk& w);

/// Connected components of the underlying graph, each sorted.
std::vector<std::vector<int>> underlying_components(const Quiver& q);
bool is_connected(const Quiver& q);
/// DomainError listing the components when disconnected.
void require_connected(const Quiver& q);

/// Degree of a tree walk root -> v for each v, along a breadth-first
/// spanning tree explored over sorted vertex and arrow ids.
std::vector<int> tree_potentials(const Quiver& q, int root);

/// True iff every closed walk has degree 0. Requires q connected.
bool is_gradable(const Quiver& q);

/// 0 when gradable, otherwise the minimum positive closed-walk degree
/// (= gcd of the spanning-tree defects). Requires q connected.
int grading_period(const Quiver& q);

struct ShapeClass {
    enum class Tag { DynkinA, DynkinD, DynkinE, TildeA, EuclideanOther, Wild };
    Tag tag = Tag::Wild;
    int n = 0;         // Dynkin index, or cycle edge count for TildeA
    int cw = 0;        // TildeA: arrows along the traversal direction
    int ccw = 0;       // TildeA: arrows against it
    std::string kind;  // EuclideanOther: "TildeD", "TildeE6", ...
    std::string str() const;
    bool is_dynkin() const
    {
        return tag == Tag::DynkinA || tag == Tag::DynkinD || tag == Tag::DynkinE;
    }
};

/// Underlying-graph shape recognition. Requires q connected.
ShapeClass classify_shape(const Quiver& q);

Quiver opposite(const Quiver& q);

struct InfinitePathProfile {
    bool has_right_infinite = false;
    bool has_left_infinite = false;
};

/// For a finite quiver both flags reduce to the existence of an oriented cycle.
InfinitePathProfile infinite_path_profile(const Quiver& q);

bool has_oriented_cycle(const Quiver& q);

/// Vertices in a topological order; DomainError if q has an oriented cycle.
std::vector<int> topological_order(const Quiver& q);

}  // namespace rsq

#endif
