#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <string>

#include "rsq/rsq.h"

namespace {

const char* kThreeCycle =
    R"({"vertices": ["a","b","c"], "arrows": [{"id":"alpha","src":"a","tgt":"b"},)"
    R"({"id":"beta","src":"b","tgt":"c"},{"id":"gamma","src":"c","tgt":"a"}]})";

struct Str {
    char* s = nullptr;
    ~Str() { rsq_string_free(s); }
    std::string get() const { return s ? s : ""; }
};

}  // namespace

TEST_CASE("quiver parse and analyze")
{
    rsq_quiver* q = nullptr;
    REQUIRE(rsq_quiver_parse(kThreeCycle, &q) == RSQ_OK);
    Str out;
    REQUIRE(rsq_analyze(q, &out.s) == RSQ_OK);
    CHECK(out.get().find("gradable: no, r_Q: 3, shape: TildeA(3, oriented)") == 0);
    rsq_quiver_free(q);
}

TEST_CASE("parse errors set status and message")
{
    rsq_quiver* q = nullptr;
    CHECK(rsq_quiver_parse("{not json", &q) == RSQ_ERR_PARSE);
    CHECK(std::string(rsq_last_error()).size() > 0);

    CHECK(rsq_quiver_parse(R"({"vertices":["a","a"],"arrows":[]})", &q) == RSQ_ERR_PARSE);

    const char* disconnected = R"({"vertices":["a","b"],"arrows":[]})";
    REQUIRE(rsq_quiver_parse(disconnected, &q) == RSQ_OK);
    Str out;
    CHECK(rsq_analyze(q, &out.s) == RSQ_ERR_DOMAIN);
    CHECK(std::string(rsq_last_error()).find("disconnected") != std::string::npos);
    rsq_quiver_free(q);
}

TEST_CASE("koszul / decompose / homology / hom round trip")
{
    rsq_quiver* q = nullptr;
    REQUIRE(rsq_quiver_parse(kThreeCycle, &q) == RSQ_OK);
    Str res;
    REQUIRE(rsq_koszul_injective(q, "a", 0, "fp:32003", 1, 6, &res.s) == RSQ_OK);
    CHECK(res.get().find("\"truncated_below\": true") != std::string::npos);

    Str hom;  // Ext^3(S_a, S_a) = k on the oriented 3-cycle
    Str res2;
    REQUIRE(rsq_koszul_injective(q, "a", 0, "fp:32003", 1, 10, &res2.s) == RSQ_OK);
    REQUIRE(rsq_hom(q, res2.s, res.s, 3, &hom.s) == RSQ_OK);
    CHECK(hom.get().find("\"dim\": 1") != std::string::npos);

    Str parts;
    REQUIRE(rsq_decompose(q, res.s, &parts.s) == RSQ_OK);

    Str h;
    REQUIRE(rsq_homology(q, res.s, &h.s) == RSQ_OK);
    CHECK(h.get().find("\"0\"") != std::string::npos);
    rsq_quiver_free(q);
}

TEST_CASE("classify and simples text reports")
{
    rsq_quiver* q = nullptr;
    REQUIRE(rsq_quiver_parse(kThreeCycle, &q) == RSQ_OK);
    Str table;
    REQUIRE(rsq_classify(q, 0, 0, nullptr, &table.s) == RSQ_OK);
    CHECK(table.get().find("ZA_inf") != std::string::npos);
    CHECK(table.get().find("3") != std::string::npos);

    Str s;
    REQUIRE(rsq_simples(q, "b", 0, nullptr, 4, &s.s) == RSQ_OK);
    CHECK(s.get().find("irreducible") != std::string::npos);

    Str none;
    CHECK(rsq_simples(q, "zz", 0, nullptr, 4, &none.s) == RSQ_ERR_DOMAIN);
    rsq_quiver_free(q);
}

TEST_CASE("cover dot and knit")
{
    rsq_quiver* q = nullptr;
    REQUIRE(rsq_quiver_parse(kThreeCycle, &q) == RSQ_OK);
    Str dot;
    REQUIRE(rsq_cover_dot(q, -2, 2, nullptr, &dot.s) == RSQ_OK);
    CHECK(dot.get().find("a@0") != std::string::npos);

    Str ardot, report;
    REQUIRE(rsq_ar_knit(q, -2, 2, 10, nullptr, &ardot.s, &report.s) == RSQ_OK);
    CHECK(report.get().find("mesh additivity") != std::string::npos);
    rsq_quiver_free(q);
}

TEST_CASE("selfcheck")
{
    Str out;
    REQUIRE(rsq_selfcheck(nullptr, 42, &out.s) == RSQ_OK);
    CHECK(out.get().find("selfcheck ok") == 0);
}
