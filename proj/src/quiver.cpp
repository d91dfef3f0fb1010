#include "rsq/quiver.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace rsq {

Quiver::Quiver(std::vector<std::string> vertices,
               std::vector<std::tuple<std::string, std::string, std::string>> arrows)
{
    for (const auto& v : vertices)
        if (v.empty()) throw ParseError("empty vertex id");
    std::sort(vertices.begin(), vertices.end());
    for (size_t i = 1; i < vertices.size(); ++i)
        if (vertices[i] == vertices[i - 1]) throw ParseError("duplicate vertex id: " + vertices[i]);
    vertex_names_ = std::move(vertices);

    std::sort(arrows.begin(), arrows.end(),
              [](const auto& a, const auto& b) { return std::get<0>(a) < std::get<0>(b); });
    for (size_t i = 0; i < arrows.size(); ++i) {
        const auto& [id, src, tgt] = arrows[i];
        if (id.empty()) throw ParseError("empty arrow id");
        if (i > 0 && id == std::get<0>(arrows[i - 1])) throw ParseError("duplicate arrow id: " + id);
        int s = vertex_index(src), t = vertex_index(tgt);
        if (s < 0) throw ParseError("arrow " + id + " has unknown source: " + src);
        if (t < 0) throw ParseError("arrow " + id + " has unknown target: " + tgt);
        arrows_.push_back({id, s, t});
    }
    out_.assign(vertex_names_.size(), {});
    in_.assign(vertex_names_.size(), {});
    for (int a = 0; a < int(arrows_.size()); ++a) {
        out_[arrows_[a].src].push_back(a);
        in_[arrows_[a].tgt].push_back(a);
    }
}

int Quiver::vertex_index(const std::string& name) const
{
    auto it = std::lower_bound(vertex_names_.begin(), vertex_names_.end(), name);
    if (it == vertex_names_.end() || *it != name) return -1;
    return int(it - vertex_names_.begin());
}

int Quiver::arrow_index(const std::string& name) const
{
    auto it = std::lower_bound(arrows_.begin(), arrows_.end(), name,
                               [](const Arrow& a, const std::string& n) { return a.id < n; });
    if (it == arrows_.end() || it->id != name) return -1;
    return int(it - arrows_.begin());
}

std::vector<int> Quiver::arrows_between(int a, int b) const
{
    std::vector<int> r;
    for (int i : out_.at(a))
        if (arrows_[i].tgt == b) r.push_back(i);
    return r;
}

bool Quiver::operator==(const Quiver& o) const
{
    if (vertex_names_ != o.vertex_names_ || arrows_.size() != o.arrows_.size()) return false;
    for (size_t i = 0; i < arrows_.size(); ++i)
        if (arrows_[i].id != o.arrows_[i].id || arrows_[i].src != o.arrows_[i].src ||
            arrows_[i].tgt != o.arrows_[i].tgt)
            return false;
    return true;
}

int walk_degree(const Quiver& q, const Walk& w)
{
    if (w.base < 0 || w.base >= q.num_vertices()) throw DomainError("walk base not a vertex");
    int at = w.base, deg = 0;
    for (const auto& st : w.steps) {
        if (st.arrow < 0 || st.arrow >= q.num_arrows() || (st.dir != 1 && st.dir != -1))
            throw DomainError("malformed walk step");
        const Arrow& a = q.arrow(st.arrow);
        int from = st.dir == 1 ? a.src : a.tgt;
        int to = st.dir == 1 ? a.tgt : a.src;
        if (from != at) throw DomainError("non-composable walk steps");
        at = to;
        deg += st.dir;
    }
    return deg;
}

std::vector<std::vector<int>> underlying_components(const Quiver& q)
{
    int n = q.num_vertices();
    std::vector<int> comp(n, -1);
    int nc = 0;
    for (int s = 0; s < n; ++s) {
        if (comp[s] >= 0) continue;
        std::deque<int> bfs{s};
        comp[s] = nc;
        while (!bfs.empty()) {
            int v = bfs.front();
            bfs.pop_front();
            auto visit = [&](int w) {
                if (comp[w] < 0) {
                    comp[w] = nc;
                    bfs.push_back(w);
                }
            };
            for (int a : q.out_arrows(v)) visit(q.arrow(a).tgt);
            for (int a : q.in_arrows(v)) visit(q.arrow(a).src);
        }
        ++nc;
    }
    std::vector<std::vector<int>> comps(nc);
    for (int v = 0; v < n; ++v) comps[comp[v]].push_back(v);
    return comps;
}

bool is_connected(const Quiver& q)
{
    return q.num_vertices() > 0 && underlying_components(q).size() == 1;
}

void require_connected(const Quiver& q)
{
    if (q.num_vertices() == 0) throw DomainError("empty quiver");
    auto comps = underlying_components(q);
    if (comps.size() == 1) return;
    std::ostringstream os;
    os << "quiver is disconnected; components:";
    for (const auto& c : comps) {
        os << " {";
        for (size_t i = 0; i < c.size(); ++i) os << (i ? "," : "") << q.vertex_name(c[i]);
        os << "}";
    }
    throw DomainError(os.str());
}

std::vector<int> tree_potentials(const Quiver& q, int root)
{
    int n = q.num_vertices();
    std::vector<int> pot(n, 0);
    std::vector<bool> seen(n, false);
    std::deque<int> bfs{root};
    seen[root] = true;
    while (!bfs.empty()) {
        int v = bfs.front();
        bfs.pop_front();
        for (int a = 0; a < q.num_arrows(); ++a) {
            const Arrow& ar = q.arrow(a);
            if (ar.src == v && !seen[ar.tgt]) {
                seen[ar.tgt] = true;
                pot[ar.tgt] = pot[v] + 1;
                bfs.push_back(ar.tgt);
            }
            if (ar.tgt == v && !seen[ar.src]) {
                seen[ar.src] = true;
                pot[ar.src] = pot[v] - 1;
                bfs.push_back(ar.src);
            }
        }
    }
    return pot;
}

bool is_gradable(const Quiver& q)
{
    return grading_period(q) == 0;
}

int grading_period(const Quiver& q)
{
    require_connected(q);
    auto pot = tree_potentials(q, 0);
    int g = 0;
    for (int a = 0; a < q.num_arrows(); ++a) {
        const Arrow& ar = q.arrow(a);
        int defect = pot[ar.tgt] - pot[ar.src] - 1;
        g = std::gcd(g, std::abs(defect));
    }
    return g;
}

Quiver opposite(const Quiver& q)
{
    std::vector<std::string> vs;
    for (int v = 0; v < q.num_vertices(); ++v) vs.push_back(q.vertex_name(v));
    std::vector<std::tuple<std::string, std::string, std::string>> as;
    for (int a = 0; a < q.num_arrows(); ++a) {
        const Arrow& ar = q.arrow(a);
        as.emplace_back(ar.id, q.vertex_name(ar.tgt), q.vertex_name(ar.src));
    }
    return Quiver(vs, as);
}

bool has_oriented_cycle(const Quiver& q)
{
    int n = q.num_vertices();
    std::vector<int> state(n, 0);  // 0 new, 1 active, 2 done
    std::vector<std::pair<int, size_t>> stack;
    for (int s = 0; s < n; ++s) {
        if (state[s]) continue;
        stack.push_back({s, 0});
        state[s] = 1;
        while (!stack.empty()) {
            auto& [v, idx] = stack.back();
            if (idx < q.out_arrows(v).size()) {
                int w = q.arrow(q.out_arrows(v)[idx]).tgt;
                ++idx;
                if (state[w] == 1) return true;
                if (state[w] == 0) {
                    state[w] = 1;
                    stack.push_back({w, 0});
                }
            } else {
                state[v] = 2;
                stack.pop_back();
            }
        }
    }
    return false;
}

std::vector<int> topological_order(const Quiver& q)
{
    int n = q.num_vertices();
    std::vector<int> indeg(n, 0), order;
    for (int a = 0; a < q.num_arrows(); ++a) ++indeg[q.arrow(a).tgt];
    std::set<int> ready;
    for (int v = 0; v < n; ++v)
        if (indeg[v] == 0) ready.insert(v);
    while (!ready.empty()) {
        int v = *ready.begin();
        ready.erase(ready.begin());
        order.push_back(v);
        for (int a : q.out_arrows(v))
            if (--indeg[q.arrow(a).tgt] == 0) ready.insert(q.arrow(a).tgt);
    }
    if (int(order.size()) != n) throw DomainError("quiver has an oriented cycle");
    return order;
}

InfinitePathProfile infinite_path_profile(const Quiver& q)
{
    bool cyc = has_oriented_cycle(q);
    return {cyc, cyc};
}

std::string ShapeClass::str() const
{
    switch (tag) {
        case Tag::DynkinA: return "DynkinA(" + std::to_string(n) + ")";
        case Tag::DynkinD: return "DynkinD(" + std::to_string(n) + ")";
        case Tag::DynkinE: return "DynkinE(" + std::to_string(n) + ")";
        case Tag::TildeA: {
            if (ccw == 0 || cw == 0) return "TildeA(" + std::to_string(n) + ", oriented)";
            return "TildeA(" + std::to_string(n) + ", cw=" + std::to_string(cw) +
                   " ccw=" + std::to_string(ccw) + ")";
        }
        case Tag::EuclideanOther: return kind;
        case Tag::Wild: return "Wild";
    }
    return "?";
}

namespace {

// Undirected degree; loops count twice.
std::vector<int> undirected_degrees(const Quiver& q)
{
    std::vector<int> deg(q.num_vertices(), 0);
    for (int a = 0; a < q.num_arrows(); ++a) {
        ++deg[q.arrow(a).src];
        ++deg[q.arrow(a).tgt];
    }
    return deg;
}

// Branch lengths (in edges) from a branch vertex of a tree, sorted.
std::vector<int> branch_lengths(const Quiver& q, int center)
{
    auto deg = undirected_degrees(q);
    auto neighbors = [&](int v) {
        std::vector<int> r;
        for (int a = 0; a < q.num_arrows(); ++a) {
            const Arrow& ar = q.arrow(a);
            if (ar.src == v) r.push_back(ar.tgt);
            if (ar.tgt == v) r.push_back(ar.src);
        }
        return r;
    };
    std::vector<int> lens;
    for (int start : neighbors(center)) {
        int prev = center, cur = start, len = 1;
        while (deg[cur] == 2) {
            int nxt = -1;
            for (int w : neighbors(cur))
                if (w != prev) { nxt = w; break; }
            prev = cur;
            cur = nxt;
            ++len;
        }
        lens.push_back(len);
    }
    std::sort(lens.begin(), lens.end());
    return lens;
}

ShapeClass classify_cycle(const Quiver& q)
{
    ShapeClass s;
    s.tag = ShapeClass::Tag::TildeA;
    s.n = q.num_arrows();
    if (q.num_arrows() == 1) {
        s.cw = 1;
        return s;
    }
    // Walk around the cycle counting arrows with/against the traversal.
    std::vector<bool> used(q.num_arrows(), false);
    int at = 0;
    for (int step = 0; step < q.num_arrows(); ++step) {
        int chosen = -1, to = -1, dir = 0;
        for (int a = 0; a < q.num_arrows(); ++a) {
            if (used[a]) continue;
            const Arrow& ar = q.arrow(a);
            if (ar.src == at) { chosen = a; to = ar.tgt; dir = 1; break; }
            if (ar.tgt == at) { chosen = a; to = ar.src; dir = -1; break; }
        }
        used[chosen] = true;
        (dir == 1 ? s.cw : s.ccw)++;
        at = to;
    }
    return s;
}

}  // namespace

ShapeClass classify_shape(const Quiver& q)
{
    require_connected(q);
    ShapeClass s;
    int n = q.num_vertices(), m = q.num_arrows();
    auto deg = undirected_degrees(q);

    bool all_deg2 = true;
    for (int v = 0; v < n; ++v)
        if (deg[v] != 2) all_deg2 = false;
    if (m == n && all_deg2) return classify_cycle(q);

    if (m != n - 1) {
        s.tag = ShapeClass::Tag::Wild;
        return s;
    }

    // Tree shapes.
    int maxdeg = 0, branch3 = 0, branch4 = 0, branch_big = 0, center3 = -1, center4 = -1;
    for (int v = 0; v < n; ++v) {
        maxdeg = std::max(maxdeg, deg[v]);
        if (deg[v] == 3) { ++branch3; center3 = v; }
        if (deg[v] == 4) { ++branch4; center4 = v; }
        if (deg[v] > 4) ++branch_big;
    }
    if (branch_big > 0) {
        s.tag = ShapeClass::Tag::Wild;
        return s;
    }
    if (maxdeg <= 2) {
        s.tag = ShapeClass::Tag::DynkinA;
        s.n = n;
        return s;
    }
    if (branch4 == 1 && branch3 == 0) {
        auto lens = branch_lengths(q, center4);
        if (lens == std::vector<int>{1, 1, 1, 1}) {
            s.tag = ShapeClass::Tag::EuclideanOther;
            s.kind = "TildeD(4)";
            return s;
        }
        s.tag = ShapeClass::Tag::Wild;
        return s;
    }
    if (branch4 == 0 && branch3 == 1) {
        auto l = branch_lengths(q, center3);
        if (l[0] == 1 && l[1] == 1) {
            s.tag = ShapeClass::Tag::DynkinD;
            s.n = n;
            return s;
        }
        if (l == std::vector<int>{1, 2, 2}) { s.tag = ShapeClass::Tag::DynkinE; s.n = 6; return s; }
        if (l == std::vector<int>{1, 2, 3}) { s.tag = ShapeClass::Tag::DynkinE; s.n = 7; return s; }
        if (l == std::vector<int>{1, 2, 4}) { s.tag = ShapeClass::Tag::DynkinE; s.n = 8; return s; }
        if (l == std::vector<int>{2, 2, 2}) { s.tag = ShapeClass::Tag::EuclideanOther; s.kind = "TildeE(6)"; return s; }
        if (l == std::vector<int>{1, 3, 3}) { s.tag = ShapeClass::Tag::EuclideanOther; s.kind = "TildeE(7)"; return s; }
        if (l == std::vector<int>{1, 2, 5}) { s.tag = ShapeClass::Tag::EuclideanOther; s.kind = "TildeE(8)"; return s; }
        s.tag = ShapeClass::Tag::Wild;
        return s;
    }
    if (branch4 == 0 && branch3 == 2) {
        // TildeD(n): two degree-3 vertices, each carrying two pendant leaves.
        bool ok = true;
        for (int v = 0; v < n; ++v) {
            if (deg[v] != 3) continue;
            auto l = branch_lengths(q, v);
            if (!(l[0] == 1 && l[1] == 1)) ok = false;
        }
        if (ok) {
            s.tag = ShapeClass::Tag::EuclideanOther;
            s.kind = "TildeD(" + std::to_string(n - 1) + ")";
            return s;
        }
    }
    s.tag = ShapeClass::Tag::Wild;
    return s;
}

}  // namespace rsq
