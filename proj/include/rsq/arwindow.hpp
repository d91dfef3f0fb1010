#ifndef RSQ_ARWINDOW_HPP
#define RSQ_ARWINDOW_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rsq/quiver.hpp"

namespace rsq {

struct ARVertex {
    std::string id;
    std::vector<int> dims;       // dimension vector (empty when symbolic)
    bool projective = false;     // tau undefined
    bool injective = false;      // tau^- undefined
    bool frontier = false;       // mesh not computed inside this window
    bool perfect = true;
    bool simple_complex = false;
    bool symbolic = false;       // non-perfect placeholder, no matrices
};

struct ARArrow {
    int from = -1, to = -1;
    int mult = 1;
};

/// A finite fragment of a translation quiver: vertices with flags, arrows
/// with irr multiplicities, and a partial translation tau (target -> source
/// of the mesh). Frontier vertices have incomplete neighborhoods.
struct ARWindow {
    std::vector<ARVertex> vertices;
    std::vector<ARArrow> arrows;
    std::map<int, int> tau;  // vertex v -> tau(v)

    int arrow_mult(int from, int to) const;
    std::vector<std::pair<int, int>> arrows_into(int v) const;   // (from, mult)
    std::vector<std::pair<int, int>> arrows_out_of(int v) const; // (to, mult)
    int tau_inverse(int v) const;  // -1 when undefined
    bool is_connected() const;

    /// Sum over the mesh ending at v of dim-vector additivity:
    /// dims(tau v) + dims(v) == sum of middle dims (counted with mult).
    bool mesh_additive(int v) const;
};

/// A section: connected, convex, cycle-free, meeting each tau-orbit within
/// the window exactly once. Returns vertex indices, or nullopt.
std::optional<std::vector<int>> find_section(const ARWindow& w);

struct ShapeReport {
    enum class Tag {
        ZDelta,
        NDelta,
        NMinusDelta,
        StableTubeCandidate,
        Wing,
        DoubleInfinitePath,
        Indeterminate,
    };
    Tag tag = Tag::Indeterminate;
    int rank = 0;            // tube rank / wing size
    std::vector<int> section;
    std::string evidence;    // window-relative justification
    std::string str() const;
};

/// Window-relative shape recognition; Indeterminate rather than a guess when
/// the window is too small.
ShapeReport shape_report(const ARWindow& w);

std::string ar_to_dot(const ARWindow& w);

}  // namespace rsq

#endif
