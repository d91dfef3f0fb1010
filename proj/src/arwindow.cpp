#include "rsq/arwindow.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <set>
#include <sstream>

namespace rsq {

int ARWindow::arrow_mult(int from, int to) const
{
    for (const auto& a : arrows)
        if (a.from == from && a.to == to) return a.mult;
    return 0;
}

std::vector<std::pair<int, int>> ARWindow::arrows_into(int v) const
{
    std::vector<std::pair<int, int>> r;
    for (const auto& a : arrows)
        if (a.to == v) r.emplace_back(a.from, a.mult);
    return r;
}

std::vector<std::pair<int, int>> ARWindow::arrows_out_of(int v) const
{
    std::vector<std::pair<int, int>> r;
    for (const auto& a : arrows)
        if (a.from == v) r.emplace_back(a.to, a.mult);
    return r;
}

int ARWindow::tau_inverse(int v) const
{
    for (auto& [t, s] : tau)
        if (s == v) return t;
    return -1;
}

bool ARWindow::is_connected() const
{
    if (vertices.empty()) return false;
    std::vector<bool> seen(vertices.size(), false);
    std::deque<int> bfs{0};
    seen[0] = true;
    size_t count = 1;
    while (!bfs.empty()) {
        int v = bfs.front();
        bfs.pop_front();
        auto visit = [&](int w) {
            if (!seen[w]) {
                seen[w] = true;
                ++count;
                bfs.push_back(w);
            }
        };
        for (const auto& a : arrows) {
            if (a.from == v) visit(a.to);
            if (a.to == v) visit(a.from);
        }
        auto it = tau.find(v);
        if (it != tau.end()) visit(it->second);
        int ti = tau_inverse(v);
        if (ti >= 0) visit(ti);
    }
    return count == vertices.size();
}

bool ARWindow::mesh_additive(int v) const
{
    auto it = tau.find(v);
    if (it == tau.end()) return true;
    const auto& dv = vertices[v].dims;
    const auto& dt = vertices[it->second].dims;
    if (dv.empty() || dt.empty()) return true;  // symbolic vertices are not checked
    std::vector<long> sum(dv.size(), 0);
    for (auto& [from, mult] : arrows_into(v)) {
        const auto& dm = vertices[from].dims;
        if (dm.empty()) return true;
        for (size_t i = 0; i < sum.size(); ++i) sum[i] += long(mult) * dm[i];
    }
    for (size_t i = 0; i < sum.size(); ++i)
        if (sum[i] != long(dv[i]) + long(dt[i])) return false;
    return true;
}

namespace {

// tau-orbit identifiers via union-find
std::vector<int> tau_orbits(const ARWindow& w)
{
    std::vector<int> parent(w.vertices.size());
    for (size_t i = 0; i < parent.size(); ++i) parent[i] = int(i);
    std::function<int(int)> find = [&](int v) {
        while (parent[v] != v) v = parent[v] = parent[parent[v]];
        return v;
    };
    for (auto& [v, t] : w.tau) parent[find(v)] = find(t);
    std::vector<int> orbit(w.vertices.size());
    for (size_t i = 0; i < orbit.size(); ++i) orbit[i] = find(int(i));
    return orbit;
}

bool section_valid(const ARWindow& w, const std::vector<int>& sec)
{
    if (sec.empty()) return false;
    std::set<int> s(sec.begin(), sec.end());
    auto orbit = tau_orbits(w);
    std::set<int> used;
    for (int v : sec) {
        if (used.count(orbit[v])) return false;  // meets an orbit twice
        used.insert(orbit[v]);
    }
    for (size_t v = 0; v < w.vertices.size(); ++v)
        if (!used.count(orbit[int(v)])) return false;  // misses an orbit
    // connected within the section
    std::set<int> seen;
    std::deque<int> bfs{sec[0]};
    seen.insert(sec[0]);
    while (!bfs.empty()) {
        int v = bfs.front();
        bfs.pop_front();
        for (const auto& a : w.arrows) {
            int u = -1;
            if (a.from == v && s.count(a.to)) u = a.to;
            if (a.to == v && s.count(a.from)) u = a.from;
            if (u >= 0 && !seen.count(u)) {
                seen.insert(u);
                bfs.push_back(u);
            }
        }
    }
    if (seen.size() != s.size()) return false;
    // convexity: an oriented path leaving the section must not re-enter it
    std::function<bool(int, int)> escapes = [&](int v, int depth) {
        if (depth > int(w.vertices.size())) return false;
        for (auto& [to, mult] : w.arrows_out_of(v)) {
            (void)mult;
            if (s.count(to)) {
                if (depth > 0) return true;  // left the section and came back
            } else if (escapes(to, depth + 1)) {
                return true;
            }
        }
        return false;
    };
    for (int v : sec)
        if (escapes(v, 0)) return false;
    return true;
}

}  // namespace

std::optional<std::vector<int>> find_section(const ARWindow& w)
{
    if (w.vertices.empty()) return std::nullopt;
    if (!w.is_connected()) throw DomainError("find_section: disconnected window");
    std::vector<std::vector<int>> candidates;
    std::vector<int> injs, projs;
    for (size_t v = 0; v < w.vertices.size(); ++v) {
        if (w.vertices[v].injective) injs.push_back(int(v));
        if (w.vertices[v].projective) projs.push_back(int(v));
    }
    if (!injs.empty()) candidates.push_back(injs);
    if (!projs.empty()) candidates.push_back(projs);
    auto orbit = tau_orbits(w);
    for (size_t start = 0; start < w.vertices.size(); ++start) {
        std::vector<int> sec{int(start)};
        std::set<int> used{orbit[int(start)]};
        bool grew = true;
        while (grew) {
            grew = false;
            for (const auto& a : w.arrows) {
                int in = -1, out = -1;
                if (std::count(sec.begin(), sec.end(), a.from) &&
                    !std::count(sec.begin(), sec.end(), a.to))
                    out = a.to;
                if (std::count(sec.begin(), sec.end(), a.to) &&
                    !std::count(sec.begin(), sec.end(), a.from))
                    in = a.from;
                for (int cand : {out, in}) {
                    if (cand < 0 || used.count(orbit[cand])) continue;
                    sec.push_back(cand);
                    used.insert(orbit[cand]);
                    grew = true;
                }
            }
        }
        std::sort(sec.begin(), sec.end());
        candidates.push_back(sec);
    }
    for (auto& c : candidates) {
        std::sort(c.begin(), c.end());
        if (section_valid(w, c)) return c;
    }
    return std::nullopt;
}

std::string ShapeReport::str() const
{
    std::ostringstream os;
    switch (tag) {
        case Tag::ZDelta: os << "ZDelta"; break;
        case Tag::NDelta: os << "NDelta"; break;
        case Tag::NMinusDelta: os << "NMinusDelta"; break;
        case Tag::StableTubeCandidate: os << "StableTubeCandidate(" << rank << ")"; break;
        case Tag::Wing: os << "Wing(" << rank << ")"; break;
        case Tag::DoubleInfinitePath: os << "DoubleInfinitePath"; break;
        case Tag::Indeterminate: os << "Indeterminate"; break;
    }
    if (!evidence.empty()) os << " [" << evidence << "]";
    return os.str();
}

ShapeReport shape_report(const ARWindow& w)
{
    ShapeReport r;
    if (w.vertices.empty()) {
        r.evidence = "empty window";
        return r;
    }

    for (size_t v = 0; v < w.vertices.size(); ++v) {
        int cur = int(v), steps = 0;
        std::set<int> seen;
        while (w.tau.count(cur)) {
            cur = w.tau.at(cur);
            ++steps;
            if (cur == int(v)) {
                r.tag = ShapeReport::Tag::StableTubeCandidate;
                r.rank = steps;
                r.evidence = "tau-periodic orbit of period " + std::to_string(steps);
                return r;
            }
            if (seen.count(cur)) break;
            seen.insert(cur);
        }
    }

    if (w.tau.empty()) {
        bool path = true;
        int ends_out = 0, ends_in = 0;
        for (size_t v = 0; v < w.vertices.size(); ++v) {
            int outs = 0, ins = 0;
            for (const auto& a : w.arrows) {
                if (a.from == int(v)) outs += a.mult;
                if (a.to == int(v)) ins += a.mult;
            }
            if (outs > 1 || ins > 1) path = false;
            if (outs == 0) ++ends_out;
            if (ins == 0) ++ends_in;
        }
        if (path && ends_out == 1 && ends_in == 1 && w.vertices.size() > 1) {
            r.tag = ShapeReport::Tag::DoubleInfinitePath;
            r.evidence = "no meshes; single directed chain within window";
            return r;
        }
    }

    if (!w.is_connected()) {
        r.evidence = "disconnected window";
        return r;
    }

    // wing: full triangular orbit pattern with no frontier
    {
        auto orbit = tau_orbits(w);
        std::map<int, int> sizes;
        for (size_t v = 0; v < w.vertices.size(); ++v) ++sizes[orbit[int(v)]];
        std::vector<int> sz;
        for (auto& [o, s] : sizes) sz.push_back(s);
        std::sort(sz.begin(), sz.end());
        bool tri = sz.size() > 1;
        for (size_t i = 0; i < sz.size(); ++i)
            if (tri && sz[i] != int(i) + 1) tri = false;
        bool no_frontier = true;
        for (auto& v : w.vertices)
            if (v.frontier) no_frontier = false;
        bool has_non_perfect = false;
        for (auto& v : w.vertices)
            if (!v.perfect || v.symbolic) has_non_perfect = true;
        if (tri && no_frontier && has_non_perfect &&
            int(w.vertices.size()) == (int(sz.size()) * (int(sz.size()) + 1)) / 2) {
            r.tag = ShapeReport::Tag::Wing;
            r.rank = int(sz.size());
            r.evidence = "triangular orbit pattern, no frontier";
            return r;
        }
    }

    std::optional<std::vector<int>> sec;
    try {
        sec = find_section(w);
    } catch (const DomainError&) {
        sec = std::nullopt;
    }
    if (!sec) {
        r.evidence = "no section found within window";
        return r;
    }
    r.section = *sec;
    std::vector<int> pset, iset;
    for (size_t v = 0; v < w.vertices.size(); ++v) {
        if (w.vertices[v].projective) pset.push_back(int(v));
        if (w.vertices[v].injective) iset.push_back(int(v));
    }
    bool proj_section = !pset.empty() && section_valid(w, pset);
    bool inj_section = !iset.empty() && section_valid(w, iset);

    int stable = 0, interior = 0;
    for (size_t v = 0; v < w.vertices.size(); ++v) {
        if (w.vertices[v].frontier) continue;
        ++interior;
        if (w.tau.count(int(v)) || w.tau_inverse(int(v)) >= 0) ++stable;
    }
    std::ostringstream ev;
    ev << stable << "/" << interior << " interior vertices stable in window";

    if (proj_section && inj_section) {
        r.tag = ShapeReport::Tag::ZDelta;
        r.evidence =
            "projective and injective slices are both sections within window; " + ev.str();
    } else if (proj_section) {
        r.tag = ShapeReport::Tag::NDelta;
        r.section = pset;
        r.evidence = "left-most section of projectives within window";
    } else if (inj_section) {
        r.tag = ShapeReport::Tag::NMinusDelta;
        r.section = iset;
        r.evidence = "right-most section of injectives within window";
    } else {
        r.tag = ShapeReport::Tag::ZDelta;
        r.evidence = ev.str();
    }
    return r;
}

std::string ar_to_dot(const ARWindow& w)
{
    std::ostringstream os;
    os << "digraph ar {\n  rankdir=LR;\n";
    for (size_t v = 0; v < w.vertices.size(); ++v) {
        const auto& vx = w.vertices[v];
        os << "  \"" << vx.id << "\" [label=\"" << vx.id << "\\n(";
        for (size_t i = 0; i < vx.dims.size(); ++i) os << (i ? "," : "") << vx.dims[i];
        os << ")\"";
        if (vx.projective) os << " shape=box";
        else if (vx.injective) os << " shape=diamond";
        if (vx.frontier) os << " style=dotted";
        os << "];\n";
    }
    for (const auto& a : w.arrows) {
        os << "  \"" << w.vertices[a.from].id << "\" -> \"" << w.vertices[a.to].id << "\"";
        if (a.mult > 1) os << " [label=\"" << a.mult << "\"]";
        os << ";\n";
    }
    for (auto& [v, t] : w.tau)
        os << "  \"" << w.vertices[v].id << "\" -> \"" << w.vertices[t].id
           << "\" [style=dashed, arrowhead=onormal, constraint=false];\n";
    os << "}\n";
    return os.str();
}

}  // namespace rsq
