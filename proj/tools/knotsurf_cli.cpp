#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "knotsurf/jones.hpp"
#include "knotsurf/report.hpp"

using namespace knotsurf;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

struct Config {
    std::string input;
    int n = 1;
    std::string format = "text";
    int bound = 1;
    std::string convention = "verbatim";
    std::string saddle = "+";
    long long guard = 1000000;
};

int run_pipeline(const Config& cfg, const std::string& cmd) {
    WeightedPlanarGraph g = parse_graph(slurp(cfg.input));
    KnotDiagram d = build_diagram(g);
    BracketConvention conv = cfg.convention == "classical" ? BracketConvention::Classical
                                                           : BracketConvention::Verbatim;
    int saddle = cfg.saddle == "-" ? -1 : +1;

    if (cmd == "jones") {
        LaurentPoly j = colored_jones(d, cfg.n, conv, cfg.guard);
        if (cfg.format == "json") {
            std::cout << "{\"n\": " << cfg.n << ", \"jones\": \"" << j.str() << "\"}\n";
        } else {
            std::cout << j.str() << "\n";
        }
        return 0;
    }
    if (cmd == "kh") {
        KhovanovResult kh = khovanov_homology(d);
        if (cfg.format == "json") {
            std::cout << khovanov_to_json(kh) << "\n";
        } else {
            std::cout << "graded ranks (i, j, rank):\n";
            for (auto& [ij, rk] : kh.ranks)
                std::cout << "  " << ij.first << " " << ij.second << " " << rk << "\n";
            std::cout << "euler: " << kh.euler.str() << "\n";
        }
        return 0;
    }

    InflatedTriangulation T = triangulate(d);
    if (cmd == "triangulate") {
        std::cout << T.tri.export_gluing_table();
        return 0;
    }
    QMatchingSystem sys = qmatching_matrix(T.tri);
    if (cmd == "qmatrix") {
        std::cout << sys.to_triplet_text();
        return 0;
    }
    if (cmd == "enumerate") {
        auto sols = fundamental_solutions(sys, cfg.bound);
        if (cfg.format == "json") {
            std::cout << "[";
            for (size_t i = 0; i < sols.size(); ++i) {
                if (i) std::cout << ",";
                std::cout << "\n  " << qvector_to_json(sols[i]);
            }
            std::cout << "\n]\n";
        } else {
            std::cout << sols.size() << " fundamental solutions (bound " << cfg.bound << ")\n";
            for (auto& v : sols) std::cout << qvector_to_json(v) << "\n";
        }
        return 0;
    }

    VerifyOptions opts;
    opts.saddle_sign = saddle;
    opts.guard = cfg.guard;
    auto records = verify_main_theorem(d, T, sys, cfg.n, opts);
    Rational tau0 = state_surface_twist(d, seifert_colored_state(d, cfg.n), saddle);
    if (cmd == "slopes" || cmd == "verify") {
        if (cfg.format == "json")
            std::cout << records_to_json(records, cfg.n, tau0) << "\n";
        else
            std::cout << records_to_table(records);
        if (cmd == "verify") {
            for (auto& r : records)
                if (!r.verdict) return 4;
        }
        return 0;
    }
    return 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"knot exterior triangulations, normal surface slopes, and colored gradings"};
    app.require_subcommand(1);
    Config cfg;

    std::vector<std::string> names = {"triangulate", "qmatrix", "enumerate",
                                      "slopes",      "jones",   "kh",       "verify"};
    std::map<std::string, CLI::App*> subs;
    for (auto& name : names) {
        CLI::App* sub = app.add_subcommand(name);
        sub->add_option("input", cfg.input, "graph JSON file")->required();
        sub->add_option("--n", cfg.n, "color");
        sub->add_option("--format", cfg.format, "json|text")
            ->check(CLI::IsMember({"json", "text"}));
        sub->add_option("--bound", cfg.bound, "coordinate bound");
        sub->add_option("--convention", cfg.convention, "verbatim|classical")
            ->check(CLI::IsMember({"verbatim", "classical"}));
        sub->add_option("--saddle-sign", cfg.saddle, "+|-")
            ->check(CLI::IsMember({"+", "-"}));
        sub->add_option("--guard", cfg.guard, "resource guard");
        subs[name] = sub;
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) ? 1 : 0;
    }
    std::string cmd;
    for (auto& [name, sub] : subs)
        if (sub->parsed()) cmd = name;
    if (cmd.empty()) return 1;
    if (cfg.n < 1 || cfg.bound < 1) {
        std::cerr << "error: bounds must be positive\n";
        return 1;
    }
    try {
        return run_pipeline(cfg, cmd);
    } catch (const GraphError& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return 2;
    } catch (const DiagramError& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return 2;
    } catch (const std::runtime_error& e) {
        std::string msg = e.what();
        std::cerr << "error: " << msg << "\n";
        if (msg.find("guard") != std::string::npos || msg.find("resource") != std::string::npos)
            return 3;
        return 2;
    }
}
