#include "avn/verify.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <sstream>

#include "avn/semantics.hpp"

namespace avn {

Graph random_graph(std::mt19937_64& rng, uint32_t n) {
    Graph g(n);
    for (uint32_t u = 0; u < n; ++u) {
        for (uint32_t v = u + 1; v < n; ++v) {
            if (rng() & 1u) {
                g.add_edge(u, v);
            }
        }
    }
    return g;
}

LocalCliffordFrame random_frame(std::mt19937_64& rng, uint32_t n) {
    static const std::vector<LocalCliffordFrame::Site> sites =
        LocalCliffordFrame::all_sites();
    std::vector<LocalCliffordFrame::Site> chosen;
    chosen.reserve(n);
    for (uint32_t q = 0; q < n; ++q) {
        chosen.push_back(sites[rng() % sites.size()]);
    }
    return LocalCliffordFrame(std::move(chosen));
}

StabiliserGroup random_maximal_group(std::mt19937_64& rng, uint32_t n) {
    const Graph g = random_graph(rng, n);
    const LocalCliffordFrame frame = random_frame(rng, n);
    std::vector<PauliElement> gens;
    for (const auto& p : graph_generators(g)) {
        gens.push_back(conjugate(frame, p));
    }
    return StabiliserGroup(n, std::move(gens));
}

StabiliserGroup random_group(std::mt19937_64& rng, uint32_t n) {
    const StabiliserGroup maximal = random_maximal_group(rng, n);
    const uint32_t k = uint32_t(rng() % (n + 1));
    std::vector<uint32_t> order(n);
    for (uint32_t i = 0; i < n; ++i) {
        order[i] = i;
    }
    std::shuffle(order.begin(), order.end(), rng);
    std::vector<PauliElement> gens;
    for (uint32_t i = 0; i < k; ++i) {
        gens.push_back(maximal.generators()[order[i]]);
    }
    return StabiliserGroup(n, std::move(gens));
}

namespace {

// All 40 per-column letter assignments with at least two of e, f, g equal.
const std::vector<std::array<PauliLetter, 3>>& condition1_columns() {
    static const std::vector<std::array<PauliLetter, 3>> table = [] {
        std::vector<std::array<PauliLetter, 3>> out;
        for (int e = 0; e < 4; ++e) {
            for (int f = 0; f < 4; ++f) {
                for (int g = 0; g < 4; ++g) {
                    if (e == f || f == g || e == g) {
                        out.push_back({PauliLetter(e), PauliLetter(f), PauliLetter(g)});
                    }
                }
            }
        }
        return out;
    }();
    return table;
}

AvnTriple assemble(std::mt19937_64& rng,
                   const std::vector<std::array<PauliLetter, 3>>& cols,
                   bool random_phases) {
    const uint32_t n = uint32_t(cols.size());
    std::vector<PauliLetter> le(n), lf(n), lg(n);
    for (uint32_t q = 0; q < n; ++q) {
        le[q] = cols[q][0];
        lf[q] = cols[q][1];
        lg[q] = cols[q][2];
    }
    const auto phase = [&]() -> uint8_t {
        return random_phases && (rng() & 1u) ? 2 : 0;
    };
    return AvnTriple{PauliElement::from_letters(le, phase()),
                     PauliElement::from_letters(lf, phase()),
                     PauliElement::from_letters(lg, phase())};
}

}  // namespace

AvnTriple random_condition1_triple(std::mt19937_64& rng, uint32_t n) {
    const auto& table = condition1_columns();
    std::vector<std::array<PauliLetter, 3>> cols(n);
    for (uint32_t q = 0; q < n; ++q) {
        cols[q] = table[rng() % table.size()];
    }
    return assemble(rng, cols, true);
}

AvnTriple random_valid_triple(std::mt19937_64& rng, uint32_t n) {
    if (n < 3) {
        throw std::invalid_argument("valid triples need n >= 3");
    }
    for (;;) {
        AvnTriple t = random_condition1_triple(rng, n);
        if (is_avn_triple_def2(t)) {
            return t;
        }
    }
}

namespace {

using Check = std::pair<bool, std::string>;

Check check_commutation_routes(std::mt19937_64& rng) {
    for (int it = 0; it < 20000; ++it) {
        const uint32_t n = 1 + uint32_t(rng() % 8);
        std::vector<PauliLetter> a(n), b(n);
        for (uint32_t q = 0; q < n; ++q) {
            a[q] = PauliLetter(rng() % 4);
            b[q] = PauliLetter(rng() % 4);
        }
        const PauliElement p = PauliElement::from_letters(a, uint8_t(rng() % 4));
        const PauliElement q = PauliElement::from_letters(b, uint8_t(rng() % 4));
        const bool via_mul = commutes(p, q);
        const bool via_symplectic =
            symplectic_product(p.check_vector(), q.check_vector()) == 0;
        int distinct = 0;
        for (uint32_t i = 0; i < n; ++i) {
            if (p.letter(i) != q.letter(i) && p.letter(i) != PauliLetter::I &&
                q.letter(i) != PauliLetter::I) {
                ++distinct;
            }
        }
        const bool via_letters = (distinct & 1) == 0;
        if (via_mul != via_symplectic || via_mul != via_letters) {
            return {false, "disagreement on " + p.str() + " vs " + q.str()};
        }
    }
    return {true, "20000 random pairs, three routes agree"};
}

Check check_definition_equivalence(std::mt19937_64& rng) {
    // Exhaustive at n = 3 over phase-free words, then randomised beyond.
    uint64_t checked = 0;
    for (uint64_t ce = 0; ce < 64; ++ce) {
        for (uint64_t cf = 0; cf < 64; ++cf) {
            for (uint64_t cg = 0; cg < 64; ++cg) {
                std::vector<PauliLetter> le(3), lf(3), lg(3);
                for (uint32_t q = 0; q < 3; ++q) {
                    le[q] = PauliLetter((ce >> (2 * (2 - q))) & 3);
                    lf[q] = PauliLetter((cf >> (2 * (2 - q))) & 3);
                    lg[q] = PauliLetter((cg >> (2 * (2 - q))) & 3);
                }
                const PauliElement e = PauliElement::from_letters(le);
                const PauliElement f = PauliElement::from_letters(lf);
                const PauliElement g = PauliElement::from_letters(lg);
                bool cond1 = true;
                for (uint32_t q = 0; q < 3; ++q) {
                    if (le[q] != lf[q] && lf[q] != lg[q] && le[q] != lg[q]) {
                        cond1 = false;
                        break;
                    }
                }
                if (!cond1) {
                    continue;
                }
                ++checked;
                const PatternCounts counts = pattern_counts(e, f, g);
                const bool same_parity = ((counts.n_e ^ counts.n_f) & 1) == 0 &&
                                         ((counts.n_f ^ counts.n_g) & 1) == 0;
                const bool pairwise =
                    commutes(e, f) && commutes(f, g) && commutes(e, g);
                if (pairwise != same_parity) {
                    return {false, "lemma fails on " + e.str() + "," + f.str() + "," +
                                       g.str()};
                }
                if (is_avn_triple_def1(e, f, g) != is_avn_triple_def2(e, f, g)) {
                    return {false, "definitions differ on " + e.str() + "," + f.str() +
                                       "," + g.str()};
                }
            }
        }
    }
    for (int it = 0; it < 100000; ++it) {
        const uint32_t n = 3 + uint32_t(rng() % 4);
        const AvnTriple t = random_condition1_triple(rng, n);
        if (is_avn_triple_def1(t.e, t.f, t.g) != is_avn_triple_def2(t.e, t.f, t.g)) {
            return {false, "definitions differ on " + t.str()};
        }
    }
    std::ostringstream os;
    os << checked << " exhaustive n=3 triples + 100000 random, def1 == def2";
    return {true, os.str()};
}

Check check_triple_theorem(std::mt19937_64& rng) {
    int avn_count = 0;
    for (int it = 0; it < 200; ++it) {
        const uint32_t n = 3 + uint32_t(rng() % 3);
        const StabiliserGroup s = random_maximal_group(rng, n);
        const AvnVerdict verdict = s.is_avn();
        const auto triple = s.find_avn_triple();
        if (verdict.avn != triple.has_value()) {
            return {false, "is_avn and find_avn_triple disagree at n=" +
                               std::to_string(n)};
        }
        if (triple && !is_avn_triple_def2(*triple)) {
            return {false, "reported triple is invalid"};
        }
        if (triple && !(s.contains(triple->e) && s.contains(triple->f) &&
                        s.contains(triple->g))) {
            return {false, "reported triple leaves the group"};
        }
        if (verdict.avn) {
            ++avn_count;
            // The four equations of e, f, g, efg refute the theory alone.
            const AvnTriple& t = *triple;
            const PauliElement h = t.e * t.f * t.g;
            XorTheory theory;
            theory.num_vars = 3 * n;
            theory.var_names = pauli_var_names(n);
            theory.equations = {equation_of(t.e), equation_of(t.f), equation_of(t.g),
                                equation_of(h)};
            const Gf2Result res = gf2_solve(theory.to_system());
            if (res.consistent || res.certificate.size() != 4) {
                return {false, "triple equations do not refute in 4 rows"};
            }
        }
    }
    std::ostringstream os;
    os << "200 random maximal groups (n in 3..5), " << avn_count
       << " AvN, equivalence holds";
    return {true, os.str()};
}

Check check_graph_corollary(std::mt19937_64&) {
    for (uint32_t n = 1; n <= 4; ++n) {
        const uint32_t pairs = n * (n - 1) / 2;
        for (uint64_t mask = 0; mask < (uint64_t(1) << pairs); ++mask) {
            Graph g(n);
            uint32_t bit = 0;
            for (uint32_t u = 0; u < n; ++u) {
                for (uint32_t v = u + 1; v < n; ++v, ++bit) {
                    if ((mask >> bit) & 1u) {
                        g.add_edge(u, v);
                    }
                }
            }
            const bool degree_route = has_avn(g);
            const bool theory_route = graph_group(g).is_avn().avn;
            const bool extract_route = extract_avn_triple(g).has_value();
            if (degree_route != theory_route || degree_route != extract_route) {
                return {false, "corollary fails on " + g.str()};
            }
        }
    }
    return {true, "all graphs with n <= 4: degree, theory and extraction agree"};
}

Check check_lc_preservation(std::mt19937_64& rng) {
    for (int it = 0; it < 2000; ++it) {
        const uint32_t n = 3 + uint32_t(rng() % 3);
        const AvnTriple t = random_valid_triple(rng, n);
        const LocalCliffordFrame frame = random_frame(rng, n);
        const AvnTriple image{conjugate(frame, t.e), conjugate(frame, t.f),
                              conjugate(frame, t.g)};
        if (!is_avn_triple_def2(image)) {
            return {false, "conjugation broke " + t.str()};
        }
    }
    return {true, "2000 random triples stay valid under random frames"};
}

Check check_galois_laws(std::mt19937_64& rng) {
    // Unit inequalities on random element sets and random vector sets.
    for (int it = 0; it < 60; ++it) {
        const uint32_t n = 1 + uint32_t(rng() % 2);
        std::vector<PauliElement> set;
        const uint32_t size = 1 + uint32_t(rng() % 4);
        for (uint32_t i = 0; i < size; ++i) {
            std::vector<PauliLetter> letters(n);
            for (uint32_t q = 0; q < n; ++q) {
                letters[q] = PauliLetter(rng() % 4);
            }
            set.push_back(PauliElement::from_letters(letters, uint8_t(rng() % 4)));
        }
        const auto subspace = stabilised_subspace(n, set);
        const auto closure = isotropy_group(n, subspace);
        for (const auto& p : set) {
            if (std::find(closure.begin(), closure.end(), p) == closure.end()) {
                return {false, "S not contained in its double dual"};
            }
        }
    }
    for (int it = 0; it < 40; ++it) {
        const uint32_t n = 1 + uint32_t(rng() % 2);
        std::vector<ExactState> vecs;
        const uint32_t size = 1 + uint32_t(rng() % 2);
        for (uint32_t i = 0; i < size; ++i) {
            ExactState v = ExactState::zero_state(n);
            bool nonzero = false;
            for (auto& a : v.amp) {
                a = ExactScalar{BigInt(int(rng() % 5) - 2), BigInt(int(rng() % 5) - 2),
                                0};
                nonzero = nonzero || !a.is_zero();
            }
            if (!nonzero) {
                v.amp[0] = ExactScalar::one();
            }
            vecs.push_back(std::move(v));
        }
        const auto iso = isotropy_group(n, vecs);
        const auto closure = stabilised_subspace(n, iso);
        for (const auto& v : vecs) {
            if (!subspace_contains(closure, v)) {
                return {false, "V not contained in its double dual"};
            }
        }
    }
    for (int it = 0; it < 30; ++it) {
        const uint32_t n = 1 + uint32_t(rng() % 3);
        const StabiliserGroup s = random_maximal_group(rng, n);
        const auto elements = s.elements();
        const auto subspace = stabilised_subspace(n, elements);
        if (subspace.size() != 1) {
            return {false, "maximal group fixes a non-line"};
        }
        auto closure = isotropy_group(n, subspace);
        std::vector<PauliElement> sorted_elements = elements;
        std::sort(sorted_elements.begin(), sorted_elements.end());
        std::sort(closure.begin(), closure.end());
        if (closure != sorted_elements) {
            return {false, "G(F(S)) != S for a maximal group"};
        }
    }
    return {true, "unit laws on 100 random sets, closure on 30 maximal groups"};
}

Check check_model_properties(std::mt19937_64& rng) {
    for (int it = 0; it < 6; ++it) {
        const uint32_t n = 2 + uint32_t(rng() % 2);
        const StabiliserGroup s = random_maximal_group(rng, n);
        const ExactState state = stabiliser_state(s);
        const EmpiricalModel m = empirical_model(state);
        if (!no_signalling_ok(m)) {
            return {false, "model violates no-signalling"};
        }
        const XorTheory group_theory = s.xor_theory();
        const XorTheory model_theory = xor_theory_of_model(m);
        for (const auto& eq : group_theory.equations) {
            if (std::find(model_theory.equations.begin(), model_theory.equations.end(),
                          eq) == model_theory.equations.end()) {
                return {false, "group equation missing from model theory"};
            }
        }
        if (s.is_avn().avn && !is_strongly_contextual(m)) {
            return {false, "AvN group realised a non-strongly-contextual model"};
        }
    }
    return {true, "6 random stabiliser models: no-signalling, containment, AvN=>SC"};
}

}  // namespace

std::vector<PropertyResult> run_verification_suite(uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<PropertyResult> results;
    const auto run = [&](const std::string& name, Check (*fn)(std::mt19937_64&)) {
        const Check c = fn(rng);
        results.push_back(PropertyResult{name, c.first, c.second});
    };
    run("commutation-routes", check_commutation_routes);
    run("definition-equivalence", check_definition_equivalence);
    run("avn-triple-theorem", check_triple_theorem);
    run("graph-degree-corollary", check_graph_corollary);
    run("lc-preservation", check_lc_preservation);
    run("galois-laws", check_galois_laws);
    run("model-properties", check_model_properties);
    return results;
}

}  // namespace avn
