// rsq: exact computations around radical-square-zero algebras, their quiver
// coverings and the bounded derived category. Thin driver over the C API.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "rsq/rsq.h"

namespace {

struct StringOut {
    char* s = nullptr;
    ~StringOut() { rsq_string_free(s); }
    std::string str() const { return s ? std::string(s) : std::string(); }
};

struct QuiverHandle {
    rsq_quiver* q = nullptr;
    QuiverHandle() = default;
    QuiverHandle(QuiverHandle&& o) : q(o.q) { o.q = nullptr; }
    QuiverHandle& operator=(QuiverHandle&& o)
    {
        std::swap(q, o.q);
        return *this;
    }
    QuiverHandle(const QuiverHandle&) = delete;
    ~QuiverHandle() { rsq_quiver_free(q); }
};

[[noreturn]] void fail(rsq_status st)
{
    std::cerr << "rsq: error: " << rsq_last_error() << "\n";
    std::exit(st == RSQ_ERR_PARSE ? 2 : 1);
}

void check(rsq_status st)
{
    if (st != RSQ_OK) fail(st);
}

std::string slurp(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        std::cerr << "rsq: error: cannot read " << path << "\n";
        std::exit(2);
    }
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void spill(const std::string& path, const std::string& content)
{
    if (path == "-") {
        std::cout << content;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        std::cerr << "rsq: error: cannot write " << path << "\n";
        std::exit(1);
    }
    out << content;
}

QuiverHandle load_quiver(const std::string& path)
{
    QuiverHandle h;
    check(rsq_quiver_parse(slurp(path).c_str(), &h.q));
    return h;
}

std::pair<int, int> parse_window(const std::string& text)
{
    auto pos = text.find("..");
    if (pos == std::string::npos) {
        std::cerr << "rsq: error: window must look like LO..HI\n";
        std::exit(64);
    }
    try {
        return {std::stoi(text.substr(0, pos)), std::stoi(text.substr(pos + 2))};
    } catch (const std::exception&) {
        std::cerr << "rsq: error: bad window bounds\n";
        std::exit(64);
    }
}

std::string strip_json_suffix(const std::string& path)
{
    if (path.size() > 5 && path.substr(path.size() - 5) == ".json")
        return path.substr(0, path.size() - 5);
    return path;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"exact derived-category toolkit for radical-square-zero algebras"};
    app.require_subcommand(1);
    std::string field = "fp:32003";
    app.add_option("--field", field, "coefficient field: q or fp:P")->capture_default_str();

    std::string q_path, window = "-2..2", anchor, dot_path;
    std::string rep_path, out_path = "-", injective;
    std::string complex_path, quiver_opt, prefix, x_path, y_path, vertex;
    bool do_pushdown = false, evidence = false;
    int depth = 4, shift = 0, steps = 24;

    auto* analyze = app.add_subcommand("analyze", "gradability, grading period, shape");
    analyze->add_option("quiver", q_path, "quiver JSON file")->required();

    auto* cover = app.add_subcommand("cover", "materialize a covering window");
    cover->add_option("quiver", q_path, "quiver JSON file")->required();
    cover->add_option("--window", window, "level range LO..HI")->required();
    cover->add_option("--anchor", anchor, "anchor vertex (default: smallest id)");
    cover->add_option("--dot", dot_path, "DOT output file ('-' for stdout)");

    auto* koszul = app.add_subcommand("koszul", "Koszul image of a window representation");
    koszul->add_option("quiver", q_path, "quiver JSON file")->required();
    koszul->add_option("--rep", rep_path, "representation JSON file");
    koszul->add_option("--injective", injective,
                       "use the injective at vertex@level instead of --rep");
    koszul->add_flag("--pushdown", do_pushdown, "push the image down to the base algebra");
    koszul->add_option("--depth", depth, "resolution depth for --injective")
        ->capture_default_str();
    koszul->add_option("-o", out_path, "output file ('-' for stdout)")->capture_default_str();

    auto* decompose = app.add_subcommand("decompose", "split a complex along its support");
    decompose->add_option("complex", complex_path, "complex JSON file")->required();
    decompose->add_option("--quiver", quiver_opt, "quiver JSON file (else reconstructed)");
    decompose->add_option("-o", prefix, "output prefix (default: input minus .json)");

    auto* homology = app.add_subcommand("homology", "homology dimension table");
    homology->add_option("complex", complex_path, "complex JSON file")->required();
    homology->add_option("--quiver", quiver_opt, "quiver JSON file")->required();

    auto* hom = app.add_subcommand("hom", "dim Hom_K(X, Y[shift])");
    hom->add_option("x", x_path, "complex JSON file")->required();
    hom->add_option("y", y_path, "complex JSON file")->required();
    hom->add_option("--quiver", quiver_opt, "quiver JSON file")->required();
    hom->add_option("--shift", shift, "shift applied to y")->capture_default_str();

    auto* ar = app.add_subcommand("ar", "Auslander-Reiten windows");
    auto* knit = ar->add_subcommand("knit", "knit the window AR quiver from its injectives");
    knit->add_option("quiver", q_path, "quiver JSON file")->required();
    knit->add_option("--window", window, "level range LO..HI")->required();
    knit->add_option("--steps", steps, "mesh budget")->capture_default_str();
    knit->add_option("--dot", dot_path, "DOT output file ('-' for stdout)");
    ar->require_subcommand(1);

    auto* simples = app.add_subcommand("simples", "simple complexes and irreducible maps");
    simples->add_option("quiver", q_path, "quiver JSON file")->required();
    simples->add_option("--vertex", vertex, "base vertex")->required();
    simples->add_option("--shift", shift, "shift n of S[a][n]")->capture_default_str();
    simples->add_option("--depth", depth, "resolution depth")->capture_default_str();

    auto* classify = app.add_subcommand("classify", "derived AR component classification");
    classify->add_option("quiver", q_path, "quiver JSON file")->required();
    classify->add_flag("--evidence", evidence, "append a knitted-window evidence report");
    classify->add_option("--steps", steps, "mesh budget for the evidence")
        ->capture_default_str();

    auto* selfcheck = app.add_subcommand("selfcheck", "randomized consistency vectors");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 64;
    }

    if (*analyze) {
        auto q = load_quiver(q_path);
        StringOut out;
        check(rsq_analyze(q.q, &out.s));
        std::cout << out.str();
    } else if (*cover) {
        auto q = load_quiver(q_path);
        auto [lo, hi] = parse_window(window);
        StringOut out;
        check(rsq_cover_dot(q.q, lo, hi, anchor.empty() ? nullptr : anchor.c_str(), &out.s));
        spill(dot_path.empty() ? "-" : dot_path, out.str());
    } else if (*koszul) {
        auto q = load_quiver(q_path);
        StringOut out;
        if (!injective.empty()) {
            auto at = injective.rfind('@');
            if (at == std::string::npos || at == 0 || at + 1 == injective.size()) {
                std::cerr << "rsq: error: --injective expects vertex@level\n";
                return 64;
            }
            int level = 0;
            try {
                level = std::stoi(injective.substr(at + 1));
            } catch (const std::exception&) {
                std::cerr << "rsq: error: bad level in --injective\n";
                return 64;
            }
            check(rsq_koszul_injective(q.q, injective.substr(0, at).c_str(), level,
                                       field.c_str(), do_pushdown ? 1 : 0, depth, &out.s));
        } else if (!rep_path.empty()) {
            check(rsq_koszul(q.q, slurp(rep_path).c_str(), field.c_str(), do_pushdown ? 1 : 0,
                             &out.s));
        } else {
            std::cerr << "rsq: error: koszul needs --rep or --injective\n";
            return 64;
        }
        spill(out_path, out.str());
    } else if (*decompose) {
        QuiverHandle q;
        if (!quiver_opt.empty()) q = load_quiver(quiver_opt);
        StringOut out;
        check(rsq_decompose(q.q, slurp(complex_path).c_str(), &out.s));
        auto arr = nlohmann::ordered_json::parse(out.str());
        std::string base = prefix.empty() ? strip_json_suffix(complex_path) : prefix;
        for (size_t i = 0; i < arr.size(); ++i) {
            std::string p = base + "." + std::to_string(i) + ".json";
            spill(p, arr[i].dump(2) + "\n");
            std::cout << p << "\n";
        }
        std::cout << arr.size() << " summand(s)\n";
    } else if (*homology) {
        auto q = load_quiver(quiver_opt);
        StringOut out;
        check(rsq_homology(q.q, slurp(complex_path).c_str(), &out.s));
        std::cout << out.str();
    } else if (*hom) {
        auto q = load_quiver(quiver_opt);
        StringOut out;
        check(rsq_hom(q.q, slurp(x_path).c_str(), slurp(y_path).c_str(), shift, &out.s));
        std::cout << out.str();
    } else if (*knit) {
        auto q = load_quiver(q_path);
        auto [lo, hi] = parse_window(window);
        StringOut dot, report;
        check(rsq_ar_knit(q.q, lo, hi, steps, field.c_str(), &dot.s, &report.s));
        if (!dot_path.empty()) spill(dot_path, dot.str());
        std::cout << report.str();
    } else if (*simples) {
        auto q = load_quiver(q_path);
        StringOut out;
        check(rsq_simples(q.q, vertex.c_str(), shift, field.c_str(), depth, &out.s));
        std::cout << out.str();
    } else if (*classify) {
        auto q = load_quiver(q_path);
        StringOut out;
        check(rsq_classify(q.q, evidence ? 1 : 0, steps, field.c_str(), &out.s));
        std::cout << out.str();
    } else if (*selfcheck) {
        unsigned long long seed = 12345;
        if (const char* env = std::getenv("RSQ_SEED")) seed = std::strtoull(env, nullptr, 10);
        StringOut out;
        check(rsq_selfcheck(field.c_str(), seed, &out.s));
        std::cout << out.str();
    }
    return 0;
}
