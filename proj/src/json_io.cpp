#include "rsq/json_io.hpp"

#include <sstream>

#include <json.hpp>

namespace rsq {

using json = nlohmann::ordered_json;

namespace {

json parse_text(const std::string& text)
{
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) throw ParseError("malformed JSON");
    return j;
}

Scalar scalar_from_json(FieldSpec f, const json& v)
{
    if (v.is_number_integer()) return Scalar::from_int(f, v.get<std::int64_t>());
    if (v.is_string()) return Scalar::from_string(f, v.get<std::string>());
    throw ParseError("matrix entries must be integers or strings");
}

json scalar_to_json(const Scalar& s)
{
    if (s.field().is_prime_field()) return json(s.fp_value());
    return json(s.str());
}

Mat matrix_from_json(FieldSpec f, const json& v, int rows, int cols)
{
    if (!v.is_array() || int(v.size()) != rows) throw ParseError("matrix row count mismatch");
    Mat m(f, rows, cols);
    for (int i = 0; i < rows; ++i) {
        if (!v[i].is_array() || int(v[i].size()) != cols)
            throw ParseError("matrix column count mismatch");
        for (int j = 0; j < cols; ++j) m.set(i, j, scalar_from_json(f, v[i][j]));
    }
    return m;
}

json matrix_to_json(const Mat& m)
{
    json rows = json::array();
    for (int i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (int j = 0; j < m.cols(); ++j) row.push_back(scalar_to_json(m.at(i, j)));
        rows.push_back(row);
    }
    return rows;
}

}  // namespace

QuiverPtr quiver_from_json(const std::string& text)
{
    json j = parse_text(text);
    if (!j.is_object() || !j.contains("vertices") || !j.contains("arrows"))
        throw ParseError("quiver file needs 'vertices' and 'arrows'");
    std::vector<std::string> vs;
    for (const auto& v : j["vertices"]) {
        if (!v.is_string()) throw ParseError("vertex ids must be strings");
        vs.push_back(v.get<std::string>());
    }
    std::vector<std::tuple<std::string, std::string, std::string>> as;
    for (const auto& a : j["arrows"]) {
        if (!a.is_object() || !a.contains("id") || !a.contains("src") || !a.contains("tgt"))
            throw ParseError("arrows need 'id', 'src', 'tgt'");
        as.emplace_back(a["id"].get<std::string>(), a["src"].get<std::string>(),
                        a["tgt"].get<std::string>());
    }
    return std::make_shared<Quiver>(vs, as);
}

std::string quiver_to_json(const Quiver& q)
{
    json j;
    j["vertices"] = json::array();
    for (int v = 0; v < q.num_vertices(); ++v) j["vertices"].push_back(q.vertex_name(v));
    j["arrows"] = json::array();
    for (int a = 0; a < q.num_arrows(); ++a) {
        const Arrow& ar = q.arrow(a);
        j["arrows"].push_back({{"id", ar.id},
                               {"src", q.vertex_name(ar.src)},
                               {"tgt", q.vertex_name(ar.tgt)}});
    }
    return j.dump(2) + "\n";
}

std::string quiver_to_dot(const Quiver& q)
{
    std::ostringstream os;
    os << "digraph quiver {\n";
    for (int v = 0; v < q.num_vertices(); ++v) os << "  \"" << q.vertex_name(v) << "\";\n";
    for (int a = 0; a < q.num_arrows(); ++a) {
        const Arrow& ar = q.arrow(a);
        os << "  \"" << q.vertex_name(ar.src) << "\" -> \"" << q.vertex_name(ar.tgt)
           << "\" [label=\"" << ar.id << "\"];\n";
    }
    os << "}\n";
    return os.str();
}

std::string cover_to_dot(const CoverWindow& cw)
{
    std::ostringstream os;
    os << "digraph cover {\n  rankdir=LR;\n";
    for (int l = cw.lo(); l <= cw.hi(); ++l) {
        std::vector<std::string> names;
        for (const auto& v : cw.vertices())
            if (v.level == l) names.push_back(cover_name(cw.base().vertex_name(v.base), v.level));
        if (names.empty()) continue;
        os << "  { rank=same;";
        for (const auto& n : names) os << " \"" << n << "\";";
        os << " }\n";
    }
    const Quiver& w = cw.window_quiver();
    for (int v = 0; v < w.num_vertices(); ++v)
        os << "  \"" << w.vertex_name(v) << "\" [label=\"" << w.vertex_name(v) << "\"];\n";
    for (int a = 0; a < w.num_arrows(); ++a) {
        const Arrow& ar = w.arrow(a);
        os << "  \"" << w.vertex_name(ar.src) << "\" -> \"" << w.vertex_name(ar.tgt)
           << "\" [label=\"" << ar.id << "\"];\n";
    }
    os << "}\n";
    return os.str();
}

RadicalComplex complex_from_json(const std::string& text, QuiverPtr q)
{
    json j = parse_text(text);
    if (!j.is_object() || !j.contains("terms")) throw ParseError("complex file needs 'terms'");
    FieldSpec f = FieldSpec::prime(32003);
    if (j.contains("field")) f = FieldSpec::parse(j["field"].get<std::string>());
    RadicalComplex c(q, f);
    for (auto& [deg_str, entries] : j["terms"].items()) {
        int n = 0;
        try {
            n = std::stoi(deg_str);
        } catch (const std::exception&) {
            throw ParseError("bad degree key: " + deg_str);
        }
        for (const auto& e : entries) {
            int v = q->vertex_index(e.at("vertex").get<std::string>());
            if (v < 0) throw ParseError("unknown vertex: " + e.at("vertex").get<std::string>());
            c.set_mult(n, v, e.at("mult").get<int>());
        }
    }
    if (j.contains("diff")) {
        for (auto& [deg_str, entries] : j["diff"].items()) {
            int n = std::stoi(deg_str);
            for (const auto& e : entries) {
                std::string aid = e.at("arrow").get<std::string>();
                int a = q->arrow_index(aid);
                if (a < 0) throw ParseError("unknown arrow: " + aid);
                const Arrow& ar = q->arrow(a);
                // sanity: summand endpoints match the arrow
                if (e.contains("tgt") &&
                    q->vertex_index(e.at("tgt").get<std::string>()) != ar.src)
                    throw ParseError("arrow " + aid + " does not match its 'tgt' summand");
                if (e.contains("src") &&
                    q->vertex_index(e.at("src").get<std::string>()) != ar.tgt)
                    throw ParseError("arrow " + aid + " does not match its 'src' summand");
                try {
                    c.set_block(n, a,
                                matrix_from_json(f, e.at("matrix"), c.mult(n + 1, ar.src),
                                                 c.mult(n, ar.tgt)));
                } catch (const DomainError& err) {
                    throw ParseError(err.what());
                }
            }
        }
    }
    if (j.contains("truncated_below")) c.set_truncated_below(j["truncated_below"].get<bool>());
    c.validate();
    return c;
}

std::string complex_to_json(const RadicalComplex& c)
{
    const Quiver& q = c.quiver();
    json j;
    j["field"] = c.field().str();
    j["terms"] = json::object();
    for (auto& [n, vs] : c.terms()) {
        json arr = json::array();
        for (auto& [v, m] : vs) arr.push_back({{"vertex", q.vertex_name(v)}, {"mult", m}});
        j["terms"][std::to_string(n)] = arr;
    }
    j["diff"] = json::object();
    for (auto& [key, m] : c.blocks()) {
        auto [n, a] = key;
        const Arrow& ar = q.arrow(a);
        json entry = {{"tgt", q.vertex_name(ar.src)},
                      {"src", q.vertex_name(ar.tgt)},
                      {"arrow", ar.id},
                      {"matrix", matrix_to_json(m)}};
        std::string k = std::to_string(n);
        if (!j["diff"].contains(k)) j["diff"][k] = json::array();
        j["diff"][k].push_back(entry);
    }
    j["truncated_below"] = c.truncated_below();
    return j.dump(2) + "\n";
}

QuiverPtr quiver_from_complex_json(const std::string& text)
{
    json j = parse_text(text);
    if (!j.is_object() || !j.contains("terms")) throw ParseError("complex file needs 'terms'");
    std::vector<std::string> vs;
    auto add_vertex = [&](const std::string& v) {
        for (auto& x : vs)
            if (x == v) return;
        vs.push_back(v);
    };
    for (auto& [deg, entries] : j["terms"].items())
        for (const auto& e : entries) add_vertex(e.at("vertex").get<std::string>());
    std::vector<std::tuple<std::string, std::string, std::string>> as;
    if (j.contains("diff")) {
        for (auto& [deg, entries] : j["diff"].items())
            for (const auto& e : entries) {
                // the quiver arrow runs from the 'tgt' summand to the 'src' summand
                std::string id = e.at("arrow").get<std::string>();
                bool seen = false;
                for (auto& [i, s, t] : as)
                    if (i == id) seen = true;
                if (!seen)
                    as.emplace_back(id, e.at("tgt").get<std::string>(),
                                    e.at("src").get<std::string>());
            }
    }
    return std::make_shared<Quiver>(vs, as);
}

QuiverRep rep_from_json(const std::string& text, const CoverWindow& cw, FieldSpec f)
{
    json j = parse_text(text);
    if (!j.is_object() || !j.contains("dims")) throw ParseError("rep file needs 'dims'");
    auto opw = std::make_shared<Quiver>(opposite(cw.window_quiver()));
    QuiverRep m(opw, f);
    for (auto& [key, dim] : j["dims"].items()) {
        int wi = cw.window_vertex_by_name(key);
        if (wi < 0) throw ParseError("vertex " + key + " is not in the covering window");
        m.set_dim(wi, dim.get<int>());
    }
    if (j.contains("maps")) {
        for (auto& [key, mat] : j["maps"].items()) {
            int wa = cw.window_quiver().arrow_index(key);
            if (wa < 0) throw ParseError("arrow " + key + " is not in the covering window");
            const Arrow& oar = opw->arrow(wa);  // opposite arrow of the named one
            try {
                m.set_map(wa, matrix_from_json(f, mat, m.dim(oar.tgt), m.dim(oar.src)));
            } catch (const DomainError& err) {
                throw ParseError(err.what());
            }
        }
    }
    m.validate();
    return m;
}

std::pair<int, int> rep_json_level_range(const std::string& text)
{
    json j = parse_text(text);
    if (!j.is_object() || !j.contains("dims")) throw ParseError("rep file needs 'dims'");
    bool any = false;
    int lo = 0, hi = 0;
    for (auto& [key, dim] : j["dims"].items()) {
        auto [base, lvl] = split_cover_name(key);
        if (!any) {
            lo = hi = lvl;
            any = true;
        }
        lo = std::min(lo, lvl);
        hi = std::max(hi, lvl);
    }
    if (!any) throw ParseError("rep file has no dims");
    return {lo, hi};
}

}  // namespace rsq
