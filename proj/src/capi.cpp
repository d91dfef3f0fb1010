#include "rsq/rsq.h"

#include <cstring>
#include <sstream>

#include <json.hpp>

#include "rsq/derived.hpp"
#include "rsq/json_io.hpp"

using namespace rsq;

struct rsq_quiver {
    QuiverPtr q;
};

namespace {

thread_local std::string g_last_error;

char* dup_string(const std::string& s)
{
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

template <class F>
rsq_status guarded(F&& fn)
{
    try {
        g_last_error.clear();
        fn();
        return RSQ_OK;
    } catch (const ParseError& e) {
        g_last_error = e.what();
        return RSQ_ERR_PARSE;
    } catch (const DomainError& e) {
        g_last_error = e.what();
        return RSQ_ERR_DOMAIN;
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return RSQ_ERR_DOMAIN;
    }
}

FieldSpec field_of(const char* field)
{
    if (field == nullptr || *field == '\0') return FieldSpec::prime(32003);
    return FieldSpec::parse(field);
}

const Quiver& need(const rsq_quiver* q)
{
    if (q == nullptr || !q->q) throw DomainError("null quiver handle");
    return *q->q;
}

int need_vertex(const Quiver& q, const char* name)
{
    if (name == nullptr) throw DomainError("null vertex name");
    int v = q.vertex_index(name);
    if (v < 0) throw DomainError(std::string("unknown vertex: ") + name);
    return v;
}

std::string knit_report(QuiverPtr base, FieldSpec f, int lo, int hi, int steps,
                        std::string* dot_out)
{
    CoverWindow cw = build_cover_window(base, -1, lo, hi);
    auto opw = std::make_shared<Quiver>(opposite(cw.window_quiver()));
    std::vector<QuiverRep> seeds;
    for (int v = 0; v < opw->num_vertices(); ++v) seeds.push_back(injective_at(opw, f, v));
    ARWindow w = knit_component(opw, f, seeds, steps);
    if (dot_out) *dot_out = ar_to_dot(w);
    std::ostringstream os;
    int interior = 0, additive = 0, frontier = 0;
    for (size_t v = 0; v < w.vertices.size(); ++v) {
        if (w.vertices[v].frontier) {
            ++frontier;
            continue;
        }
        ++interior;
        if (w.mesh_additive(int(v))) ++additive;
    }
    os << "knitted window of the opposite covering quiver, levels [" << lo << "," << hi << "]\n";
    os << "vertices: " << w.vertices.size() << " (" << frontier << " frontier), meshes: "
       << w.tau.size() << "\n";
    os << "mesh additivity: " << additive << "/" << interior << " interior vertices\n";
    os << "shape (within window): " << shape_report(w).str() << "\n";
    return os.str();
}

}  // namespace

extern "C" {

const char* rsq_version(void) { return "rsq 1.0.0"; }

const char* rsq_last_error(void) { return g_last_error.c_str(); }

void rsq_string_free(char* s) { std::free(s); }

rsq_status rsq_quiver_parse(const char* json_text, rsq_quiver** out)
{
    return guarded([&] {
        if (json_text == nullptr || out == nullptr) throw ParseError("null argument");
        auto q = quiver_from_json(json_text);
        *out = new rsq_quiver{q};
    });
}

void rsq_quiver_free(rsq_quiver* q) { delete q; }

rsq_status rsq_analyze(const rsq_quiver* q, char** out_text)
{
    return guarded([&] {
        const Quiver& quiver = need(q);
        require_connected(quiver);
        int r = grading_period(quiver);
        std::ostringstream os;
        os << "gradable: " << (r == 0 ? "yes" : "no") << ", r_Q: " << r
           << ", shape: " << classify_shape(quiver).str();
        auto ipp = infinite_path_profile(quiver);
        os << "\nvertices: " << quiver.num_vertices() << ", arrows: " << quiver.num_arrows()
           << ", dim Lambda: " << quiver.num_vertices() + quiver.num_arrows();
        os << "\ninfinite paths: right=" << (ipp.has_right_infinite ? "yes" : "no")
           << ", left=" << (ipp.has_left_infinite ? "yes" : "no") << "\n";
        *out_text = dup_string(os.str());
    });
}

rsq_status rsq_quiver_dot(const rsq_quiver* q, char** out_dot)
{
    return guarded([&] { *out_dot = dup_string(quiver_to_dot(need(q))); });
}

rsq_status rsq_cover_dot(const rsq_quiver* q, int lo, int hi, const char* anchor, char** out_dot)
{
    return guarded([&] {
        const Quiver& quiver = need(q);
        int a = anchor == nullptr ? -1 : need_vertex(quiver, anchor);
        CoverWindow cw = build_cover_window(q->q, a, lo, hi);
        *out_dot = dup_string(cover_to_dot(cw));
    });
}

rsq_status rsq_koszul(const rsq_quiver* q, const char* rep_json, const char* field, int pushdown_,
                      char** out_json)
{
    return guarded([&] {
        need(q);
        if (rep_json == nullptr) throw ParseError("null rep");
        auto [lo, hi] = rep_json_level_range(rep_json);
        CoverWindow cw = build_cover_window(q->q, -1, std::min(lo, 0), std::max(hi, 0));
        QuiverRep m = rep_from_json(rep_json, cw, field_of(field));
        RadicalComplex c = koszul_rep(cw, m);
        if (pushdown_) {
            *out_json = dup_string(complex_to_json(pushdown(cw, c).complex));
        } else {
            *out_json = dup_string(complex_to_json(c));
        }
    });
}

rsq_status rsq_koszul_injective(const rsq_quiver* q, const char* vertex, int level,
                                const char* field, int pushdown_, int depth, char** out_json)
{
    return guarded([&] {
        const Quiver& quiver = need(q);
        if (depth < 1) throw DomainError("depth must be >= 1");
        int v = need_vertex(quiver, vertex);
        CoverWindow cw =
            build_cover_window(q->q, -1, std::min(0, level), std::max(0, level + depth));
        if (cw.window_index(v, level) < 0)
            throw DomainError("vertex is not in the covering at this level");
        RadicalComplex c = koszul_rep(cw, window_op_injective(cw, field_of(field), {v, level}));
        *out_json =
            dup_string(complex_to_json(pushdown_ ? pushdown(cw, c).complex : c));
    });
}

rsq_status rsq_decompose(const rsq_quiver* q, const char* complex_json, char** out_json)
{
    return guarded([&] {
        if (complex_json == nullptr) throw ParseError("null complex");
        QuiverPtr base = q ? q->q : quiver_from_complex_json(complex_json);
        RadicalComplex c = complex_from_json(complex_json, base);
        auto parts = c.decompose_by_support();
        nlohmann::ordered_json arr = nlohmann::ordered_json::array();
        for (const auto& p : parts)
            arr.push_back(nlohmann::ordered_json::parse(complex_to_json(p)));
        *out_json = dup_string(arr.dump(2) + "\n");
    });
}

rsq_status rsq_homology(const rsq_quiver* q, const char* complex_json, char** out_json)
{
    return guarded([&] {
        const Quiver& quiver = need(q);
        RadicalComplex c = complex_from_json(complex_json, q->q);
        nlohmann::ordered_json table = nlohmann::ordered_json::object();
        int lo = c.truncated_below() ? c.lo() + 1 : c.lo();
        for (int n = lo; n <= c.hi(); ++n) {
            auto h = c.homology_dims(n);
            nlohmann::ordered_json entry = nlohmann::ordered_json::object();
            for (auto& [v, d] : h) entry[quiver.vertex_name(v)] = d;
            table[std::to_string(n)] = entry;
        }
        nlohmann::ordered_json out;
        out["homology"] = table;
        if (c.truncated_below())
            out["note"] = "degrees <= " + std::to_string(c.lo()) + " unreliable (truncated)";
        *out_json = dup_string(out.dump(2) + "\n");
    });
}

rsq_status rsq_hom(const rsq_quiver* q, const char* x_json, const char* y_json, int shift,
                   char** out_json)
{
    return guarded([&] {
        need(q);
        RadicalComplex x = complex_from_json(x_json, q->q);
        RadicalComplex y = complex_from_json(y_json, q->q).shifted(shift);
        auto r = hom_homotopy(x, y);
        nlohmann::ordered_json out;
        out["dim"] = r.dim;
        out["shift"] = shift;
        *out_json = dup_string(out.dump(2) + "\n");
    });
}

rsq_status rsq_ar_knit(const rsq_quiver* q, int lo, int hi, int steps, const char* field,
                       char** out_dot, char** out_report)
{
    return guarded([&] {
        need(q);
        if (steps < 0) throw DomainError("steps must be >= 0");
        std::string dot;
        std::string report = knit_report(q->q, field_of(field), lo, hi, steps, &dot);
        if (out_dot) *out_dot = dup_string(dot);
        if (out_report) *out_report = dup_string(report);
    });
}

rsq_status rsq_simples(const rsq_quiver* q, const char* vertex, int shift, const char* field,
                       int depth, char** out_text)
{
    return guarded([&] {
        const Quiver& quiver = need(q);
        int a = need_vertex(quiver, vertex);
        if (depth < 1) throw DomainError("depth must be >= 1");
        FieldSpec f = field_of(field);
        SimpleLocation loc = locate_simple(quiver, a, shift);
        std::ostringstream os;
        os << "S[" << quiver.vertex_name(a) << "][" << shift << "] = F_pi(I_{x^o})[s] with x = ("
           << quiver.vertex_name(loc.x.base) << ", " << loc.x.level << "), s = " << loc.s
           << " (r_Q = " << loc.r << ")\n";
        if (quiver.out_arrows(a).empty()) {
            os << "no outgoing arrows at " << quiver.vertex_name(a)
               << ": no irreducible map to shifted simples\n";
        } else {
            auto irr = irreducible_to_simples(q->q, f, a, depth);
            os << "irreducible map S[" << quiver.vertex_name(a) << "] -> ";
            for (size_t i = 0; i < irr.targets.size(); ++i)
                os << (i ? " (+) " : "") << "S[" << quiver.vertex_name(irr.targets[i]) << "][1]";
            os << "\n";
            os << "dim Hom = " << irr.hom_dim << ", class nonzero: "
               << (irr.nonzero_class ? "yes" : "no") << ", components nonzero: "
               << (irr.components_nonzero ? "yes" : "no") << "\n";
            os << "irreducible within window: "
               << (irr.irreducible_within_window ? "yes" : "no") << " (" << irr.window_desc
               << ")\n";
        }
        *out_text = dup_string(os.str());
    });
}

rsq_status rsq_classify(const rsq_quiver* q, int evidence, int steps, const char* field,
                        char** out_text)
{
    return guarded([&] {
        const Quiver& quiver = need(q);
        ComponentReport rep = classify_components(quiver);
        std::ostringstream os;
        os << rep.str();
        os << "connecting profile: " << connecting_profile(quiver).text << "\n";
        if (evidence) {
            int r = grading_period(quiver);
            int hi = std::max(3, r + 2);
            os << "\nevidence:\n"
               << knit_report(q->q, field_of(field), -hi, hi, steps > 0 ? steps : 24, nullptr);
        }
        *out_text = dup_string(os.str());
    });
}

rsq_status rsq_selfcheck(const char* field, unsigned long long seed, char** out_text)
{
    return guarded([&] {
        std::string r = run_selfcheck(field_of(field), seed);
        if (r.find("FAILED") != std::string::npos) throw DomainError(r);
        *out_text = dup_string(r + "\n");
    });
}

}  // extern "C"
