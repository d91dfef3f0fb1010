#include "rsq/cover.hpp"

#include <algorithm>

namespace rsq {

std::string cover_name(const std::string& base, int level)
{
    return base + "@" + std::to_string(level);
}

std::pair<std::string, int> split_cover_name(const std::string& name)
{
    auto pos = name.rfind('@');
    if (pos == std::string::npos || pos == 0 || pos + 1 == name.size())
        throw ParseError("expected '<vertex>@<level>', got: " + name);
    try {
        return {name.substr(0, pos), std::stoi(name.substr(pos + 1))};
    } catch (const std::exception&) {
        throw ParseError("bad level in: " + name);
    }
}

CoverWindow::CoverWindow(QuiverPtr base, int anchor, int lo, int hi)
    : base_(std::move(base)), anchor_(anchor), lo_(lo), hi_(hi)
{
    require_connected(*base_);
    if (anchor_ < 0 || anchor_ >= base_->num_vertices()) throw DomainError("anchor not a vertex");
    if (!(lo_ <= 0 && 0 <= hi_)) throw DomainError("window must satisfy lo <= 0 <= hi");
    r_ = grading_period(*base_);
    pot_ = tree_potentials(*base_, anchor_);

    for (int lvl = lo_; lvl <= hi_; ++lvl)
        for (int v = 0; v < base_->num_vertices(); ++v)
            if (contains(v, lvl)) vertices_.push_back({v, lvl});
    std::sort(vertices_.begin(), vertices_.end());

    std::vector<std::string> names;
    names.reserve(vertices_.size());
    for (const auto& cv : vertices_) names.push_back(cover_name(base_->vertex_name(cv.base), cv.level));

    std::vector<std::tuple<std::string, std::string, std::string>> arrows;
    for (const auto& cv : vertices_) {
        if (cv.level + 1 > hi_) continue;
        for (int a : base_->out_arrows(cv.base)) {
            const Arrow& ar = base_->arrow(a);
            if (!contains(ar.tgt, cv.level + 1)) continue;  // always true, but keep the check
            arrows.emplace_back(cover_name(ar.id, cv.level),
                                cover_name(base_->vertex_name(cv.base), cv.level),
                                cover_name(base_->vertex_name(ar.tgt), cv.level + 1));
        }
    }
    window_ = std::make_shared<Quiver>(names, arrows);

    arrow_base_.assign(window_->num_arrows(), -1);
    arrow_level_.assign(window_->num_arrows(), 0);
    for (int wa = 0; wa < window_->num_arrows(); ++wa) {
        auto [base_id, lvl] = split_cover_name(window_->arrow(wa).id);
        arrow_base_[wa] = base_->arrow_index(base_id);
        arrow_level_[wa] = lvl;
    }
}

bool CoverWindow::contains(int base_vertex, long level) const
{
    if (base_vertex < 0 || base_vertex >= base_->num_vertices())
        throw DomainError("vertex out of range");
    long d = walk_degree_to(base_vertex);
    if (r_ == 0) return level == d;
    long m = (level - d) % r_;
    return m == 0;
}

int CoverWindow::window_index(int base_vertex, int level) const
{
    CoverVertex key{base_vertex, level};
    auto it = std::lower_bound(vertices_.begin(), vertices_.end(), key);
    if (it == vertices_.end() || !(*it == key)) return -1;
    return window_->vertex_index(cover_name(base_->vertex_name(base_vertex), level));
}

CoverVertex CoverWindow::vertex_at(int window_index) const
{
    auto [base_id, lvl] = split_cover_name(window_->vertex_name(window_index));
    return {base_->vertex_index(base_id), lvl};
}

int CoverWindow::window_vertex_by_name(const std::string& name) const
{
    auto [base_id, lvl] = split_cover_name(name);
    int b = base_->vertex_index(base_id);
    if (b < 0) return -1;
    return window_index(b, lvl);
}

std::pair<CoverVertex, bool> CoverWindow::rho_shift(const CoverVertex& v, long power) const
{
    if (r_ == 0 && power != 0) throw DomainError("trivial translation group (r = 0)");
    CoverVertex w{v.base, int(v.level + power * r_)};
    return {w, in_range(w.level)};
}

int CoverWindow::project(const CoverVertex& v) const
{
    if (window_index(v) < 0) throw DomainError("vertex not in window");
    return v.base;
}

CoverWindow build_cover_window(QuiverPtr q, int anchor, int lo, int hi)
{
    if (anchor < 0) anchor = 0;  // vertices sorted by id, so 0 is the smallest
    return CoverWindow(std::move(q), anchor, lo, hi);
}

}  // namespace rsq
