#ifndef RSQ_TEST_HELPERS_HPP
#define RSQ_TEST_HELPERS_HPP

#include <memory>
#include <numeric>
#include <vector>

#include "rsq/quiver.hpp"

namespace rsqtest {

using rsq::Quiver;
using rsq::QuiverPtr;

inline QuiverPtr make_quiver(std::vector<std::string> vs,
                             std::vector<std::tuple<std::string, std::string, std::string>> as)
{
    return std::make_shared<Quiver>(std::move(vs), std::move(as));
}

inline QuiverPtr a2() { return make_quiver({"a", "b"}, {{"alpha", "a", "b"}}); }
inline QuiverPtr a3()
{
    return make_quiver({"a", "b", "c"}, {{"alpha", "a", "b"}, {"beta", "b", "c"}});
}
inline QuiverPtr loop_quiver() { return make_quiver({"a"}, {{"ell", "a", "a"}}); }
inline QuiverPtr two_cycle()
{
    return make_quiver({"a", "b"}, {{"alpha", "a", "b"}, {"beta", "b", "a"}});
}
inline QuiverPtr three_cycle()
{
    return make_quiver({"a", "b", "c"},
                       {{"alpha", "a", "b"}, {"beta", "b", "c"}, {"gamma", "c", "a"}});
}
// cycle graph with arrows a->b, b->c, a->c (grading period 1)
inline QuiverPtr mixed_three_cycle()
{
    return make_quiver({"a", "b", "c"},
                       {{"alpha", "a", "b"}, {"beta", "b", "c"}, {"gamma", "a", "c"}});
}
inline QuiverPtr kronecker()
{
    return make_quiver({"a", "b"}, {{"alpha", "a", "b"}, {"beta", "a", "b"}});
}
inline QuiverPtr d4_star()
{
    return make_quiver({"b1", "b2", "b3", "c"},
                       {{"a1", "b1", "c"}, {"a2", "b2", "c"}, {"a3", "b3", "c"}});
}

// Exhaustive closed-walk degrees: gcd of |degree| over all closed walks of
// length <= maxlen (independent oracle for the grading period).
inline int closed_walk_gcd_oracle(const Quiver& q, int maxlen)
{
    int g = 0;
    struct State {
        int at;
        int deg;
        int len;
    };
    for (int start = 0; start < q.num_vertices(); ++start) {
        std::vector<State> stack{{start, 0, 0}};
        // depth-first over all walks
        std::function<void(int, int, int)> walk = [&](int at, int deg, int len) {
            if (len > 0 && at == start) g = std::gcd(g, std::abs(deg));
            if (len == maxlen) return;
            for (int a = 0; a < q.num_arrows(); ++a) {
                const auto& ar = q.arrow(a);
                if (ar.src == at) walk(ar.tgt, deg + 1, len + 1);
                if (ar.tgt == at) walk(ar.src, deg - 1, len + 1);
            }
        };
        walk(start, 0, 0);
    }
    return g;
}

}  // namespace rsqtest

#endif
