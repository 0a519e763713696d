#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "avn/graphstate.hpp"
#include "avn/semantics.hpp"
#include "avn/subgroup.hpp"
#include "avn/triples.hpp"
#include "avn/verify.hpp"

namespace {

using namespace avn;

// Exit-code contract: 0 success, 1 property failure, 2 usage/parse,
// 3 size cap exceeded, 4 cross-check mismatch.
constexpr int kExitPropertyFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitSizeCap = 3;
constexpr int kExitMismatch = 4;

void warn_cap_override(uint32_t requested, uint32_t standard) {
    if (requested > standard) {
        std::cerr << "warning: raising the size cap from " << standard << " to "
                  << requested << "; expect long runtimes\n";
    }
}

std::string record_line(uint32_t n, const AvnTriple& t, const PatternCounts& c) {
    std::ostringstream os;
    os << "{\"n\":" << n << ",\"e\":\"" << t.e.str() << "\",\"f\":\"" << t.f.str()
       << "\",\"g\":\"" << t.g.str() << "\",\"ne\":" << c.n_e << ",\"nf\":" << c.n_f
       << ",\"ng\":" << c.n_g << "}";
    return os.str();
}

int cmd_enumerate(uint32_t qubits, bool phases, const std::string& format,
                  uint64_t limit, uint32_t max_qubits) {
    warn_cap_override(max_qubits, kEnumerationCap);
    const bool records = format == "records";
    uint64_t emitted = 0;
    enumerate_triples(
        qubits, phases,
        [&](const AvnTriple& t, const PatternCounts& c) {
            if (records) {
                std::cout << record_line(qubits, t, c) << "\n";
            } else {
                std::cout << t.str() << "\n";
            }
            ++emitted;
            return limit == 0 || emitted < limit;
        },
        max_qubits);
    std::cout << "count=" << emitted << "\n";
    return 0;
}

int cmd_count(uint32_t qubits, const std::string& mode, uint32_t max_qubits) {
    const BigInt formula = count_formula(qubits);
    if (mode == "formula") {
        std::cout << "count=" << formula << "\n";
        return 0;
    }
    BigInt phase_free;
    if (mode == "brute") {
        warn_cap_override(max_qubits, kBruteForceCap);
        phase_free = brute_force_enumerate(
            qubits, [](const AvnTriple&, const PatternCounts&) { return true; },
            max_qubits);
    } else {
        phase_free = structured_count_phase_free(qubits);
    }
    const BigInt total = phase_free * 8;
    std::cout << "count=" << total << " (phase-free " << phase_free << ")\n";
    if (total == formula) {
        std::cout << "formula=" << formula << " -> MATCH\n";
        return 0;
    }
    std::cout << "formula=" << formula << " -> MISMATCH\n";
    return kExitMismatch;
}

Graph load_graph(const std::string& path) {
    std::string text;
    if (path.empty()) {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        text = ss.str();
    } else {
        std::ifstream in(path);
        if (!in) {
            throw std::invalid_argument("cannot open graph file \"" + path + "\"");
        }
        std::ostringstream ss;
        ss << in.rdbuf();
        text = ss.str();
    }
    return Graph::parse(text);
}

void print_triple_block(const ExtractedTriple& ext, uint32_t n) {
    std::cout << "vertices: u=" << ext.u << " v=" << ext.v << " w=" << ext.w << "\n";
    std::cout << "case: " << ext.triangle_case << "\n";
    std::cout << "triple: " << ext.triple.str() << "\n";
    // The four equations of e, f, g and efg refute the theory by themselves.
    XorTheory theory;
    theory.num_vars = 3 * n;
    theory.var_names = pauli_var_names(n);
    const PauliElement product = ext.triple.e * ext.triple.f * ext.triple.g;
    theory.equations = {equation_of(ext.triple.e), equation_of(ext.triple.f),
                        equation_of(ext.triple.g), equation_of(product)};
    const Gf2Result res = gf2_solve(theory.to_system());
    if (res.consistent) {
        throw std::logic_error("extracted triple fails to refute its theory");
    }
    std::cout << "certificate:\n";
    for (const auto& eq : theory.equations) {
        std::cout << "  " << theory.equation_str(eq) << "\n";
    }
    std::cout << "sum: 0 = 1\n";
}

int cmd_graph(const std::string& action, const std::string& file, int vertex,
              bool all, uint32_t max_qubits) {
    const Graph g = load_graph(file);
    if (action == "avn") {
        for (uint32_t v = 0; v < g.n(); ++v) {
            if (g.degree(v) >= 2) {
                std::cout << "avn: yes (vertex " << v << " has degree " << g.degree(v)
                          << ")\n";
                return 0;
            }
        }
        std::cout << "avn: no\n";
        return 0;
    }
    if (action == "triple") {
        if (all) {
            const auto triples = extract_all_avn_triples(g);
            for (const auto& ext : triples) {
                print_triple_block(ext, g.n());
            }
            std::cout << "triples=" << triples.size() << "\n";
            return 0;
        }
        const auto ext = extract_avn_triple(g);
        if (!ext) {
            std::cout << "triple: none (max degree <= 1)\n";
            return 0;
        }
        print_triple_block(*ext, g.n());
        return 0;
    }
    if (action == "lc") {
        if (vertex < 0) {
            throw std::invalid_argument("action lc needs --vertex");
        }
        std::cout << g.local_complement(uint32_t(vertex)).str();
        return 0;
    }
    if (action == "orbit") {
        warn_cap_override(max_qubits, kOrbitCap);
        const auto orbit = lc_orbit(g, max_qubits);
        std::cout << "n=" << g.n() << "\n";
        for (const auto& member : orbit) {
            std::string text = member.str();
            const size_t nl = text.find('\n');
            std::cout << text.substr(nl + 1);  // just the edges= line
        }
        std::cout << "orbit_size=" << orbit.size() << "\n";
        return 0;
    }
    throw std::invalid_argument("unknown graph action \"" + action + "\"");
}

int cmd_theory(const std::string& generators) {
    const StabiliserGroup s = StabiliserGroup::parse(generators);
    std::cout << "group: n=" << s.n() << " rank=" << s.rank() << " ("
              << (BigInt(1) << s.rank()) << " elements, dimension "
              << s.stabiliser_dimension() << ")\n";
    const AvnVerdict verdict = s.is_avn();
    const XorTheory theory = s.xor_theory();
    std::cout << "theory: " << theory.equations.size() << " equations over "
              << theory.num_vars << " variables\n";
    if (verdict.avn) {
        std::cout << "AvN: yes\n";
        std::cout << "certificate:\n";
        for (const auto& p : verdict.certificate) {
            std::cout << "  " << theory.equation_str(equation_of(p)) << "   [" << p.str()
                      << "]\n";
        }
        std::cout << "sum: 0 = 1\n";
    } else {
        std::cout << "AvN: no\n";
        std::cout << "assignment:";
        for (uint32_t v = 0; v < theory.num_vars; ++v) {
            std::cout << " " << theory.var_names[v] << "="
                      << (verdict.assignment[v] ? 1 : 0);
        }
        std::cout << "\n";
    }
    if (s.rank() <= kTripleSearchCap) {
        const auto triple = s.find_avn_triple();
        std::cout << "triple: " << (triple ? triple->str() : "none") << "\n";
    } else {
        std::cout << "triple: not searched (rank over cap)\n";
    }
    return 0;
}

int cmd_model(const std::string& spec) {
    EmpiricalModel m;
    if (spec == "ghz3" || spec == "prbox" || spec == "cluster4") {
        m = fixture_model(spec);
    } else {
        const StabiliserGroup s = StabiliserGroup::parse(spec);
        m = empirical_model(stabiliser_state(s));
    }
    std::cout << "model: " << spec << " (" << m.parties() << " parties, "
              << m.context_count() << " contexts)\n";
    for (size_t ci = 0; ci < m.context_count(); ++ci) {
        std::cout << m.context_label(ci) << " |";
        for (size_t out = 0; out < m.outcome_count(); ++out) {
            if (m.table[ci][out] == 0) {
                continue;
            }
            std::string bits;
            for (uint32_t b = m.parties(); b-- > 0;) {
                bits.push_back(((out >> b) & 1u) ? '1' : '0');
            }
            std::cout << " " << bits << ":" << rational_str(m.table[ci][out]);
        }
        std::cout << "\n";
    }
    std::cout << "strongly_contextual=" << (is_strongly_contextual(m) ? "yes" : "no")
              << "\n";
    return 0;
}

int cmd_verify(uint64_t seed) {
    const auto results = run_verification_suite(seed);
    size_t passed = 0;
    for (const auto& r : results) {
        std::cout << r.name << ": " << (r.passed ? "PASS" : "FAIL") << " (" << r.detail
                  << ")\n";
        passed += r.passed ? 1 : 0;
    }
    std::cout << "verify: " << passed << "/" << results.size() << " properties passed\n";
    return passed == results.size() ? 0 : kExitPropertyFailure;
}

}  // namespace

int main(int argc, char** argv) {
    std::ios::sync_with_stdio(false);
    CLI::App app{"All-versus-Nothing arguments for n-qubit stabiliser states"};
    app.require_subcommand(1);

    uint32_t qubits = 3;
    bool phases = false;
    std::string format = "text";
    uint64_t limit = 0;
    uint32_t max_qubits = 0;

    auto* enumerate = app.add_subcommand("enumerate", "stream AvN triples of P_n");
    enumerate->add_option("--qubits", qubits, "number of qubits (>= 3)")->required();
    enumerate->add_flag("--phases", phases, "emit all +/-1 phase choices");
    enumerate->add_option("--format", format, "text | records")
        ->check(CLI::IsMember({"text", "records"}));
    enumerate->add_option("--limit", limit, "stop after this many triples");
    enumerate->add_option("--max-qubits", max_qubits, "override the size cap");

    std::string mode = "formula";
    auto* count = app.add_subcommand("count", "count AvN triples of P_n");
    count->add_option("--qubits", qubits, "number of qubits (>= 3)")->required();
    count->add_option("--mode", mode, "formula | brute | structured")
        ->check(CLI::IsMember({"formula", "brute", "structured"}));
    count->add_option("--max-qubits", max_qubits, "override the size cap");

    std::string action;
    std::string file;
    int vertex = -1;
    bool all = false;
    auto* graph = app.add_subcommand("graph", "graph-state checks");
    graph->add_option("--action", action, "avn | triple | lc | orbit")->required();
    graph->add_option("--file", file, "graph file (default: stdin)");
    graph->add_option("--vertex", vertex, "vertex for action lc");
    graph->add_flag("--all", all, "list every extraction witness (action triple)");
    graph->add_option("--max-qubits", max_qubits, "override the orbit cap");

    std::string generators;
    auto* theory = app.add_subcommand("theory", "decide AvN for a stabiliser group");
    theory->add_option("generators", generators, "comma-separated signed Pauli words")
        ->required();

    std::string model_spec;
    auto* model = app.add_subcommand("model", "exact empirical model table");
    model->add_option("model", model_spec, "ghz3 | prbox | cluster4 | generator list")
        ->required();

    uint64_t seed = 1;
    auto* verify = app.add_subcommand("verify", "run the cross-module invariant suite");
    verify->add_option("--seed", seed, "seed for the randomised properties");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        if (enumerate->parsed()) {
            return cmd_enumerate(qubits, phases, format, limit,
                                 max_qubits ? max_qubits : kEnumerationCap);
        }
        if (count->parsed()) {
            return cmd_count(qubits, mode, max_qubits ? max_qubits : kBruteForceCap);
        }
        if (graph->parsed()) {
            return cmd_graph(action, file, vertex, all,
                             max_qubits ? max_qubits : kOrbitCap);
        }
        if (theory->parsed()) {
            return cmd_theory(generators);
        }
        if (model->parsed()) {
            return cmd_model(model_spec);
        }
        if (verify->parsed()) {
            return cmd_verify(seed);
        }
    } catch (const SizeCapExceeded& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitSizeCap;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return 0;
}
