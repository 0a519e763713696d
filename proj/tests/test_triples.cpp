#include <algorithm>
#include <random>
#include <set>
#include <vector>

#include "avn/graphstate.hpp"
#include "avn/triples.hpp"
#include "avn/verify.hpp"
#include "doctest.h"

using namespace avn;

namespace {

AvnTriple parse_triple(const char* e, const char* f, const char* g) {
    return AvnTriple{PauliElement::parse(e), PauliElement::parse(f),
                     PauliElement::parse(g)};
}

// The K3 generator pattern extended by Z tails (inactive columns).
const AvnTriple kTriangleTails = parse_triple("XZZZZ", "ZXZZZ", "ZZXZZ");

std::vector<AvnTriple> cluster_triples() {
    Graph g(4);
    g.add_edge(0, 1);
    g.add_edge(0, 2);
    g.add_edge(1, 3);
    g.add_edge(2, 3);
    const auto gens = graph_generators(g);
    return {
        {gens[0], gens[0] * gens[1], gens[0] * gens[2]},
        {gens[3], gens[3] * gens[1], gens[3] * gens[2]},
    };
}

}  // namespace

TEST_CASE("pattern counts") {
    const PatternCounts c = pattern_counts(kTriangleTails.e, kTriangleTails.f,
                                           kTriangleTails.g);
    CHECK(c == PatternCounts{1, 1, 1});

    const auto e = PauliElement::parse("XYZ");
    CHECK(pattern_counts(e, e, e) == PatternCounts{0, 0, 0});

    const auto cluster = cluster_triples()[0];
    const PatternCounts cc = pattern_counts(cluster.e, cluster.f, cluster.g);
    CHECK((cc.n_e & 1) == 1);
    CHECK((cc.n_f & 1) == 1);
    CHECK((cc.n_g & 1) == 1);
}

TEST_CASE("pattern violations raise") {
    CHECK_THROWS_AS(pattern_counts(PauliElement::parse("X"), PauliElement::parse("Y"),
                                   PauliElement::parse("Z")),
                    std::invalid_argument);
    CHECK_THROWS_AS(pattern_counts(PauliElement::parse("I"), PauliElement::parse("X"),
                                   PauliElement::parse("Y")),
                    std::invalid_argument);
    CHECK_THROWS_AS(pattern_counts(PauliElement::parse("X"), PauliElement::parse("XX"),
                                   PauliElement::parse("XX")),
                    std::invalid_argument);
}

TEST_CASE("definition 1") {
    CHECK(is_avn_triple_def1(kTriangleTails.e, kTriangleTails.f, kTriangleTails.g));
    CHECK_FALSE(is_avn_triple_def1(PauliElement::parse("X"), PauliElement::parse("X"),
                                   PauliElement::parse("X")));
    const auto cluster = cluster_triples()[1];  // g^4, g^4 g^2, g^4 g^3
    CHECK(is_avn_triple_def1(cluster.e, cluster.f, cluster.g));
}

TEST_CASE("definition 2") {
    // The four-vertex graph with hub edges: generators g1 = XZZZ, g3 = ZIXZ,
    // g4 = ZZZX form a triple directly.
    const auto t = parse_triple("XZZZ", "ZIXZ", "ZZZX");
    CHECK(is_avn_triple_def2(t));
    const auto id3 = PauliElement::identity(3);
    CHECK_FALSE(is_avn_triple_def2(id3, id3, id3));
    // Imaginary phases are never part of a triple.
    CHECK_FALSE(is_avn_triple_def2(kTriangleTails.e.with_phase(1), kTriangleTails.f,
                                   kTriangleTails.g));
}

TEST_CASE("definitions agree on random condition-1 triples") {
    std::mt19937_64 rng(31);
    for (int it = 0; it < 20000; ++it) {
        const uint32_t n = 3 + uint32_t(rng() % 4);
        const AvnTriple t = random_condition1_triple(rng, n);
        CHECK(is_avn_triple_def1(t.e, t.f, t.g) == is_avn_triple_def2(t.e, t.f, t.g));
    }
}

TEST_CASE("reduction to three qubits") {
    SUBCASE("triangle pattern with Z tails") {
        const ReducedTriple r = reduce_to_three(kTriangleTails);
        // Column roles: qubit 0 deviates in e, qubit 1 in f, qubit 2 in g.
        CHECK(r.indices == std::array<uint32_t, 3>{2, 0, 1});
        CHECK(r.triple.e.str() == "+XZZ");
        CHECK(r.triple.f.str() == "+ZXZ");
        CHECK(r.triple.g.str() == "+ZZX");
        CHECK(is_avn_triple_def2(r.triple));
    }
    SUBCASE("length-3 triples restrict to themselves") {
        const auto t = parse_triple("XZZ", "ZXZ", "ZZX");
        const ReducedTriple r = reduce_to_three(t);
        CHECK(r.triple == t);
        std::array<uint32_t, 3> sorted = r.indices;
        std::sort(sorted.begin(), sorted.end());
        CHECK(sorted == std::array<uint32_t, 3>{0, 1, 2});
    }
    SUBCASE("cluster triple restricts to the first three qubits") {
        const auto t = cluster_triples()[0];
        const ReducedTriple r = reduce_to_three(t);
        CHECK(r.triple.e.str() == "+XZZ");
        CHECK(r.triple.f.str() == "+YYZ");
        CHECK(r.triple.g.str() == "+YZY");
        CHECK(is_avn_triple_def2(r.triple));
    }
    SUBCASE("signs survive the restriction") {
        AvnTriple t = kTriangleTails;
        t.f = t.f.with_phase(2);
        const ReducedTriple r = reduce_to_three(t);
        CHECK(r.triple.f.str() == "-ZXZ");
        CHECK(is_avn_triple_def2(r.triple));
    }
    CHECK_THROWS_AS(reduce_to_three(parse_triple("XXX", "XXX", "XXX")),
                    std::invalid_argument);
}

TEST_CASE("stream counts and canonical order") {
    std::vector<std::string> lines;
    const uint64_t count = enumerate_triples(
        3, false, [&](const AvnTriple& t, const PatternCounts&) {
            lines.push_back(t.str());
            return true;
        });
    CHECK(count == 216);
    CHECK(lines.size() == 216);
    CHECK(lines.front() == "+XXX | +YYX | +YXY");
    CHECK(std::is_sorted(lines.begin(), lines.end()));
    CHECK(std::set<std::string>(lines.begin(), lines.end()).size() == 216);

    const uint64_t phased = enumerate_triples(
        3, true, [](const AvnTriple&, const PatternCounts&) { return true; });
    CHECK(phased == 1728);
}

TEST_CASE("the two engines emit identical streams") {
    std::vector<std::string> structured, brute;
    enumerate_triples(3, false, [&](const AvnTriple& t, const PatternCounts&) {
        structured.push_back(t.str());
        return true;
    });
    brute_force_enumerate(3, [&](const AvnTriple& t, const PatternCounts&) {
        brute.push_back(t.str());
        return true;
    });
    CHECK(structured == brute);

    const uint64_t s4 = enumerate_triples(
        4, false, [](const AvnTriple&, const PatternCounts&) { return true; });
    const uint64_t b4 = brute_force_enumerate(
        4, [](const AvnTriple&, const PatternCounts&) { return true; });
    CHECK(s4 == 19008);
    CHECK(b4 == 19008);
}

TEST_CASE("every streamed triple is valid; membership is exactly def2 + role order") {
    std::set<std::string> streamed;
    enumerate_triples(3, false, [&](const AvnTriple& t, const PatternCounts& c) {
        CHECK(is_avn_triple_def1(t.e, t.f, t.g));
        CHECK(is_avn_triple_def2(t));
        CHECK(pattern_counts(t.e, t.f, t.g) == c);
        streamed.insert(t.str());
        return true;
    });
    // Exhaustive scan of all 64^3 phase-free word triples.
    uint64_t valid_total = 0;
    for (uint64_t ce = 0; ce < 64; ++ce) {
        for (uint64_t cf = 0; cf < 64; ++cf) {
            for (uint64_t cg = 0; cg < 64; ++cg) {
                const auto word = [](uint64_t code) {
                    std::vector<PauliLetter> letters(3);
                    for (uint32_t q = 0; q < 3; ++q) {
                        letters[q] = PauliLetter((code >> (2 * (2 - q))) & 3);
                    }
                    return PauliElement::from_letters(letters);
                };
                const AvnTriple t{word(ce), word(cf), word(cg)};
                if (!is_avn_triple_def2(t)) {
                    CHECK(streamed.count(t.str()) == 0);
                    continue;
                }
                ++valid_total;
                // Role order: the first deviating column deviates in e, the
                // last in g.
                const PatternCounts c = pattern_counts(t.e, t.f, t.g);
                bool role_ordered = true;
                int last_rank = 0;
                for (uint32_t q = 0; q < 3; ++q) {
                    const auto le = t.e.letter(q);
                    const auto lf = t.f.letter(q);
                    const auto lg = t.g.letter(q);
                    if (le == PauliLetter::I || lf == PauliLetter::I ||
                        lg == PauliLetter::I) {
                        continue;
                    }
                    int rank = -1;
                    if (lf == lg && le != lf) {
                        rank = 0;
                    } else if (le == lg && le != lf) {
                        rank = 1;
                    } else if (le == lf && le != lg) {
                        rank = 2;
                    }
                    if (rank < 0) {
                        continue;
                    }
                    if (rank < last_rank) {
                        role_ordered = false;
                    }
                    last_rank = rank;
                }
                CHECK(streamed.count(t.str()) == (role_ordered ? 1 : 0));
                CHECK(c.all_odd());
            }
        }
    }
    // Every valid triple is a role permutation of a streamed one: at n = 3
    // each of the 216 patterns has 3! role orders.
    CHECK(valid_total == 216 * 6);
}

TEST_CASE("limit semantics stop the stream") {
    uint64_t seen = 0;
    const uint64_t emitted = enumerate_triples(
        3, false, [&](const AvnTriple&, const PatternCounts&) {
            ++seen;
            return seen < 5;
        });
    CHECK(emitted == 5);
}

TEST_CASE("counting formula values") {
    CHECK(count_formula(3) == 1728);
    CHECK(count_formula(4) == 152064);
    CHECK(count_formula(5) == 8550144);
    CHECK_THROWS_AS(count_formula(2), std::invalid_argument);
}

TEST_CASE("structured column DP agrees with the formula") {
    for (uint32_t n = 3; n <= 9; ++n) {
        CHECK(structured_count_phase_free(n) * 8 == count_formula(n));
    }
}

TEST_CASE("caps and preconditions") {
    CHECK_THROWS_AS(enumerate_triples(
                        2, false,
                        [](const AvnTriple&, const PatternCounts&) { return true; }),
                    std::invalid_argument);
    CHECK_THROWS_AS(enumerate_triples(
                        7, false,
                        [](const AvnTriple&, const PatternCounts&) { return true; }),
                    SizeCapExceeded);
    CHECK_THROWS_AS(brute_force_enumerate(
                        5, [](const AvnTriple&, const PatternCounts&) { return true; }),
                    SizeCapExceeded);
}

TEST_CASE("local Clifford frames preserve triple validity") {
    std::mt19937_64 rng(32);
    for (int it = 0; it < 500; ++it) {
        const uint32_t n = 3 + uint32_t(rng() % 3);
        const AvnTriple t = random_valid_triple(rng, n);
        const LocalCliffordFrame frame = random_frame(rng, n);
        const AvnTriple image{conjugate(frame, t.e), conjugate(frame, t.f),
                              conjugate(frame, t.g)};
        CHECK(is_avn_triple_def2(image));
        CHECK(is_avn_triple_def1(image.e, image.f, image.g));
    }
}

TEST_CASE("reduction of streamed n=4 triples stays valid") {
    enumerate_triples(4, false, [](const AvnTriple& t, const PatternCounts&) {
        const ReducedTriple r = reduce_to_three(t);
        CHECK(is_avn_triple_def2(r.triple));
        return true;
    });
}
