#ifndef RSQ_COVER_HPP
#define RSQ_COVER_HPP

#include <optional>

#include "rsq/quiver.hpp"

namespace rsq {

struct CoverVertex {
    int base = -1;
    int level = 0;
    bool operator==(const CoverVertex& o) const { return base == o.base && level == o.level; }
    bool operator<(const CoverVertex& o) const
    {
        return level != o.level ? level < o.level : base < o.base;
    }
};

/// Window vertex/arrow names are "<base>@<level>".
std::string cover_name(const std::string& base, int level);
/// Splits "<base>@<level>"; ParseError on bad syntax.
std::pair<std::string, int> split_cover_name(const std::string& name);

/// A finite slice of the minimal gradable covering pi: Q~ -> Q through
/// (anchor, 0), restricted to levels [lo, hi]. Membership is decided by the
/// mod-r walk-degree rule, so no vertex reachable only through detours that
/// leave the level range is missed. Arrows raise level by exactly one; both endpoints must lie in
/// range, hence boundary levels have incomplete neighborhoods and the safe
/// sub-range is [lo+1, hi-1].
class CoverWindow {
  public:
    CoverWindow(QuiverPtr base, int anchor, int lo, int hi);

    const Quiver& base() const { return *base_; }
    QuiverPtr base_ptr() const { return base_; }
    const Quiver& window_quiver() const { return *window_; }
    QuiverPtr window_ptr() const { return window_; }

    int r() const { return r_; }
    int lo() const { return lo_; }
    int hi() const { return hi_; }
    int safe_lo() const { return lo_ + 1; }
    int safe_hi() const { return hi_ - 1; }
    int anchor() const { return anchor_; }

    /// Degree of a tree walk anchor -> v in the base quiver.
    int walk_degree_to(int base_vertex) const { return pot_.at(base_vertex) - pot_.at(anchor_); }

    /// Membership in the full covering Q~ (any level, not just the window).
    bool contains(int base_vertex, long level) const;
    bool in_range(long level) const { return level >= lo_ && level <= hi_; }

    /// Window vertices sorted by (level, base).
    const std::vector<CoverVertex>& vertices() const { return vertices_; }
    /// Index into window_quiver()'s vertex table, or -1.
    int window_index(int base_vertex, int level) const;
    int window_index(const CoverVertex& v) const { return window_index(v.base, v.level); }
    /// Decode a window_quiver() vertex index.
    CoverVertex vertex_at(int window_index) const;
    int window_vertex_by_name(const std::string& name) const;

    /// rho^power; DomainError when r = 0 and power != 0. The bool reports
    /// whether the image lies inside the window range.
    std::pair<CoverVertex, bool> rho_shift(const CoverVertex& v, long power) const;

    /// First coordinate; DomainError when v is not a window vertex.
    int project(const CoverVertex& v) const;

    int base_arrow_of(int window_arrow) const { return arrow_base_.at(window_arrow); }
    int level_of_window_arrow(int window_arrow) const { return arrow_level_.at(window_arrow); }
    int level_of_window_vertex(int wi) const { return vertices_.at(wi).level; }

  private:
    QuiverPtr base_;
    QuiverPtr window_;
    int anchor_ = 0;
    int r_ = 0;
    int lo_ = 0, hi_ = 0;
    std::vector<int> pot_;
    std::vector<CoverVertex> vertices_;
    std::vector<int> arrow_base_, arrow_level_;
};

/// anchor < 0 picks the lexicographically smallest vertex id.
CoverWindow build_cover_window(QuiverPtr q, int anchor, int lo, int hi);

}  // namespace rsq

#endif
