#include <random>
#include <sstream>

#include "rsq/derived.hpp"
#include "rsq/json_io.hpp"

namespace rsq {

namespace {

RadicalComplex random_radical(QuiverPtr q, FieldSpec f, int lo, int hi, int max_mult,
                              std::mt19937_64& rng)
{
    RadicalComplex c(q, f);
    std::uniform_int_distribution<int> md(0, max_mult);
    for (int n = lo; n <= hi; ++n)
        for (int v = 0; v < q->num_vertices(); ++v) c.set_mult(n, v, md(rng));
    std::uniform_int_distribution<std::int64_t> ent(-3, 3);
    for (int n = lo; n < hi; ++n)
        for (int ar = 0; ar < q->num_arrows(); ++ar) {
            const Arrow& arr = q->arrow(ar);
            int rows = c.mult(n + 1, arr.src), cols = c.mult(n, arr.tgt);
            if (rows == 0 || cols == 0) continue;
            Mat b(f, rows, cols);
            for (int i = 0; i < rows; ++i)
                for (int j = 0; j < cols; ++j) b.set(i, j, ent(rng));
            c.set_block(n, ar, b);
        }
    return c;
}

ProjComplex random_contractible(QuiverPtr q, FieldSpec f, int lo, int hi, int pairs,
                                std::mt19937_64& rng)
{
    ProjComplex x(q, f);
    std::uniform_int_distribution<int> nd(lo, hi - 1);
    std::uniform_int_distribution<int> vd(0, q->num_vertices() - 1);
    std::uniform_int_distribution<std::int64_t> sc(1, 5);
    for (int p = 0; p < pairs; ++p) {
        int n = nd(rng), v = vd(rng);
        int j = int(x.copies()[n].size());
        x.copies()[n].push_back(v);
        int i = int(x.copies()[n + 1].size());
        x.copies()[n + 1].push_back(v);
        x.add_entry(n, i, j, -1, Scalar::from_int(f, sc(rng)));
    }
    return x;
}

}  // namespace

std::string run_selfcheck(FieldSpec f, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::ostringstream os;
    int vectors = 0, failures = 0;

    auto q3 = std::make_shared<Quiver>(
        std::vector<std::string>{"a", "b", "c"},
        std::vector<std::tuple<std::string, std::string, std::string>>{
            {"alpha", "a", "b"}, {"beta", "b", "c"}});
    auto qc = std::make_shared<Quiver>(
        std::vector<std::string>{"a", "b", "c"},
        std::vector<std::tuple<std::string, std::string, std::string>>{
            {"alpha", "a", "b"}, {"beta", "b", "c"}, {"gamma", "c", "a"}});

    for (auto q : {q3, qc}) {
        for (int trial = 0; trial < 10; ++trial) {
            RadicalComplex c = random_radical(q, f, -2, 2, 2, rng);
            ++vectors;
            auto parts = c.decompose_by_support();
            if (parts.size() != c.support_quiver().components.size()) ++failures;
            if (!parts.empty()) {
                RadicalComplex resum = parts[0];
                for (size_t i = 1; i < parts.size(); ++i)
                    resum = RadicalComplex::direct_sum(resum, parts[i]);
                if (!(resum.terms() == c.terms())) ++failures;
            }
            ++vectors;
            ProjComplex mixed = ProjComplex::direct_sum(ProjComplex::from_radical(c),
                                                        random_contractible(q, f, -2, 2, 2, rng));
            RadicalComplex r = radicalize(mixed);
            RadicalComplex r2 = radicalize(ProjComplex::from_radical(r));
            if (!r2.equal_to(r)) ++failures;
            for (int n = -1; n <= 1; ++n)
                if (!(mixed.homology_dims(n) == r.homology_dims(n))) ++failures;
        }
    }
    os << "selfcheck " << (failures == 0 ? "ok" : "FAILED") << " (" << vectors
       << " vectors over " << f.str() << ", seed " << seed << ")";
    if (failures) os << ": " << failures << " failures";
    return os.str();
}

}  // namespace rsq
