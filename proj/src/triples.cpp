#include "avn/triples.hpp"

#include <bit>
#include <stdexcept>

namespace avn {

namespace {

struct TripleMasks {
    uint64_t col;      // valid column positions
    uint64_t eq_ef;    // columns where e and f agree (including I = I)
    uint64_t eq_fg;
    uint64_t eq_eg;
    uint64_t all_non_i;
};

TripleMasks triple_masks(const PauliElement& e, const PauliElement& f,
                         const PauliElement& g) {
    const uint64_t col = (e.n() == 64) ? ~uint64_t(0) : ((uint64_t(1) << e.n()) - 1);
    const auto eq = [col](const PauliElement& a, const PauliElement& b) {
        return ~((a.x_bits() ^ b.x_bits()) | (a.z_bits() ^ b.z_bits())) & col;
    };
    return TripleMasks{
        col,
        eq(e, f),
        eq(f, g),
        eq(e, g),
        e.support() & f.support() & g.support(),
    };
}

void require_same_length(const PauliElement& e, const PauliElement& f,
                         const PauliElement& g) {
    if (e.n() != f.n() || e.n() != g.n()) {
        throw std::invalid_argument("triple: length mismatch");
    }
}

PatternCounts counts_from_masks(const TripleMasks& m) {
    return PatternCounts{
        uint32_t(std::popcount(m.eq_fg & ~m.eq_ef & m.all_non_i)),  // e deviates
        uint32_t(std::popcount(m.eq_eg & ~m.eq_ef & m.all_non_i)),  // f deviates
        uint32_t(std::popcount(m.eq_ef & ~m.eq_fg & m.all_non_i)),  // g deviates
    };
}

bool condition1(const TripleMasks& m) {
    return (~m.eq_ef & ~m.eq_fg & ~m.eq_eg & m.col) == 0;
}

}  // namespace

PatternCounts pattern_counts(const PauliElement& e, const PauliElement& f,
                             const PauliElement& g) {
    require_same_length(e, f, g);
    const TripleMasks m = triple_masks(e, f, g);
    if (!condition1(m)) {
        throw std::invalid_argument(
            "triple has a column with three pairwise-distinct letters");
    }
    return counts_from_masks(m);
}

bool is_avn_triple_def1(const PauliElement& e, const PauliElement& f,
                        const PauliElement& g) {
    require_same_length(e, f, g);
    if (!e.has_real_phase() || !f.has_real_phase() || !g.has_real_phase()) {
        return false;
    }
    if (!commutes(e, f) || !commutes(f, g) || !commutes(e, g)) {
        return false;
    }
    const TripleMasks m = triple_masks(e, f, g);
    if (!condition1(m)) {
        return false;
    }
    return (counts_from_masks(m).n_f & 1) != 0;
}

bool is_avn_triple_def2(const PauliElement& e, const PauliElement& f,
                        const PauliElement& g) {
    require_same_length(e, f, g);
    if (!e.has_real_phase() || !f.has_real_phase() || !g.has_real_phase()) {
        return false;
    }
    const TripleMasks m = triple_masks(e, f, g);
    if (!condition1(m)) {
        return false;
    }
    return counts_from_masks(m).all_odd();
}

ReducedTriple reduce_to_three(const AvnTriple& t) {
    if (!is_avn_triple_def2(t)) {
        throw std::invalid_argument("reduce_to_three requires a valid AvN triple");
    }
    const TripleMasks m = triple_masks(t.e, t.f, t.g);
    const uint64_t g_cols = m.eq_ef & ~m.eq_fg & m.all_non_i;
    const uint64_t e_cols = m.eq_fg & ~m.eq_ef & m.all_non_i;
    const uint64_t f_cols = m.eq_eg & ~m.eq_ef & m.all_non_i;
    const uint32_t i1 = uint32_t(std::countr_zero(g_cols));
    const uint32_t i2 = uint32_t(std::countr_zero(e_cols));
    const uint32_t i3 = uint32_t(std::countr_zero(f_cols));

    std::array<uint32_t, 3> sorted{i1, i2, i3};
    std::sort(sorted.begin(), sorted.end());
    const auto restrict_word = [&](const PauliElement& p) {
        std::vector<PauliLetter> letters(3);
        for (int j = 0; j < 3; ++j) {
            letters[size_t(j)] = p.letter(sorted[size_t(j)]);
        }
        return PauliElement::from_letters(letters, p.phase_exp());
    };
    return ReducedTriple{
        {i1, i2, i3},
        AvnTriple{restrict_word(t.e), restrict_word(t.f), restrict_word(t.g)},
    };
}

namespace {

// Letter words are iterated as integer codes whose base-4 digits are the
// letters with qubit 0 most significant, so ascending code = canonical order.
struct WordTable {
    uint32_t n;
    std::vector<uint64_t> x;
    std::vector<uint64_t> z;

    explicit WordTable(uint32_t n_) : n(n_) {
        const uint64_t total = uint64_t(1) << (2 * n);
        x.resize(total);
        z.resize(total);
        for (uint64_t code = 0; code < total; ++code) {
            uint64_t xb = 0;
            uint64_t zb = 0;
            uint64_t c = code;
            // The least significant digit is the letter of qubit n-1, so that
            // ascending codes order words lexicographically from qubit 0.
            for (uint32_t q = n; q-- > 0;) {
                const auto letter = PauliLetter(c & 3u);
                c >>= 2;
                auto [xbit, zbit] = bits_from_letter(letter);
                xb |= uint64_t(xbit) << q;
                zb |= uint64_t(zbit) << q;
            }
            x[code] = xb;
            z[code] = zb;
        }
    }
};

PauliElement element_of(const WordTable& tab, uint64_t code, bool negative) {
    return PauliElement::from_check_vector(CheckVector{tab.n, tab.x[code], tab.z[code]},
                                           negative ? 2 : 0);
}

// Emits the 8 phased variants (or the single phase-free triple) in canonical
// order. Returns false when the visitor stopped the stream.
bool emit(const WordTable& tab, uint64_t ce, uint64_t cf, uint64_t cg,
          const PatternCounts& counts, bool include_phases, const TripleVisitor& visit,
          uint64_t& emitted) {
    if (!include_phases) {
        ++emitted;
        return visit(AvnTriple{element_of(tab, ce, false), element_of(tab, cf, false),
                               element_of(tab, cg, false)},
                     counts);
    }
    for (int se = 0; se < 2; ++se) {
        for (int sf = 0; sf < 2; ++sf) {
            for (int sg = 0; sg < 2; ++sg) {
                ++emitted;
                if (!visit(AvnTriple{element_of(tab, ce, se != 0),
                                     element_of(tab, cf, sf != 0),
                                     element_of(tab, cg, sg != 0)},
                           counts)) {
                    return false;
                }
            }
        }
    }
    return true;
}

// Column classes for a fixed (e, f) pair:
//   A: e = f != I   (g may deviate; the only source of N_g)
//   B: e != f, both non-I  (g must equal one of them; sources of N_e / N_f)
//   C: exactly one of e, f is I  (g is forced inactive)
//   D: e = f = I    (g free, always inactive)
struct PairClasses {
    uint64_t a, b, c, d;
};

PairClasses classify(uint32_t n, uint64_t xe, uint64_t ze, uint64_t xf, uint64_t zf) {
    const uint64_t col = (n == 64) ? ~uint64_t(0) : ((uint64_t(1) << n) - 1);
    const uint64_t eq = ~((xe ^ xf) | (ze ^ zf)) & col;
    const uint64_t ni_e = xe | ze;
    const uint64_t ni_f = xf | zf;
    return PairClasses{
        eq & ni_e,
        ~eq & ni_e & ni_f & col,
        (ni_e ^ ni_f) & col,
        eq & ~ni_e & col,
    };
}

// The stream counts one triple per (active-column set, deviation-count
// composition, letter assignment): the deviating columns must appear in role
// order, all e-deviating columns first, then f-deviating, then g-deviating.
// Any valid triple maps onto a streamed one by permuting the roles of its
// three elements, and this convention is what the closed counting formula
// evaluates. The def1/def2 predicates stay role-order-free.
//
// Deviation ranks: e-deviating = 0, f-deviating = 1, g-deviating = 2.

// Depth-first construction of every g compatible with a fixed pair, in
// ascending letter order, with parity- and rank-feasibility pruning.
struct GSearch {
    const WordTable& tab;
    uint32_t n;
    uint64_t ce, cf;
    std::vector<PauliLetter> e_letters, f_letters;
    std::vector<int> col_class;        // 0=A 1=B 2=C 3=D
    std::vector<uint32_t> a_left, b_left;  // counts over columns >= i
    std::vector<PauliLetter> g_letters;
    bool include_phases;
    const TripleVisitor* visit;
    uint64_t* emitted;
    bool stopped = false;

    // rank: the minimum deviation rank the next active column may take.
    bool feasible(uint32_t i, uint32_t pe, uint32_t pf, uint32_t pg,
                  uint32_t rank) const {
        const uint32_t rb = b_left[i];
        const uint32_t ra = a_left[i];
        if (rank == 2) {
            // Only g-deviations may follow; every B column is forced active
            // at rank 0 or 1.
            if (rb > 0 || pe == 0 || pf == 0) {
                return false;
            }
        } else if (rank == 1) {
            if (pe == 0 || ((pf + rb) & 1) == 0) {
                return false;
            }
        } else {
            const uint32_t t1 = 1 - pe;
            const uint32_t t2 = 1 - pf;
            if (rb == 0 ? (t1 | t2) != 0 : (rb & 1) != ((t1 + t2) & 1)) {
                return false;
            }
        }
        return pg == 1 || ra >= 1;
    }

    void run(uint32_t i, uint32_t pe, uint32_t pf, uint32_t pg, uint32_t rank) {
        if (stopped || !feasible(i, pe, pf, pg, rank)) {
            return;
        }
        if (i == n) {
            uint64_t cg = 0;
            for (uint32_t q = 0; q < n; ++q) {
                cg = (cg << 2) | uint64_t(g_letters[q]);
            }
            PatternCounts counts;
            for (uint32_t q = 0; q < n; ++q) {
                if (col_class[q] == 0 && g_letters[q] != e_letters[q] &&
                    g_letters[q] != PauliLetter::I) {
                    ++counts.n_g;
                } else if (col_class[q] == 1) {
                    if (g_letters[q] == f_letters[q]) {
                        ++counts.n_e;
                    } else {
                        ++counts.n_f;
                    }
                }
            }
            if (!emit(tab, ce, cf, cg, counts, include_phases, *visit, *emitted)) {
                stopped = true;
            }
            return;
        }
        const PauliLetter el = e_letters[i];
        const PauliLetter fl = f_letters[i];
        switch (col_class[i]) {
            case 0:  // A: I inactive, own letter inactive, other two rank 2
                for (uint8_t v = 0; v < 4 && !stopped; ++v) {
                    const auto letter = PauliLetter(v);
                    const bool active = letter != PauliLetter::I && letter != el;
                    g_letters[i] = letter;
                    if (active) {
                        run(i + 1, pe, pf, pg ^ 1, 2);
                    } else {
                        run(i + 1, pe, pf, pg, rank);
                    }
                }
                break;
            case 1: {  // B: g = f is an e-deviation (0), g = e an f-deviation (1)
                const PauliLetter lo = el < fl ? el : fl;
                const PauliLetter hi = el < fl ? fl : el;
                for (const PauliLetter letter : {lo, hi}) {
                    if (stopped) {
                        break;
                    }
                    const uint32_t r = letter == fl ? 0 : 1;
                    if (r < rank) {
                        continue;
                    }
                    g_letters[i] = letter;
                    if (r == 0) {
                        run(i + 1, pe ^ 1, pf, pg, 0);
                    } else {
                        run(i + 1, pe, pf ^ 1, pg, 1);
                    }
                }
                break;
            }
            case 2: {  // C: g = I or the non-identity one of e, f
                const PauliLetter other = el == PauliLetter::I ? fl : el;
                g_letters[i] = PauliLetter::I;
                run(i + 1, pe, pf, pg, rank);
                if (!stopped) {
                    g_letters[i] = other;
                    run(i + 1, pe, pf, pg, rank);
                }
                break;
            }
            default:  // D: free, never active
                for (uint8_t v = 0; v < 4 && !stopped; ++v) {
                    g_letters[i] = PauliLetter(v);
                    run(i + 1, pe, pf, pg, rank);
                }
                break;
        }
    }
};

}  // namespace

uint64_t enumerate_triples(uint32_t n, bool include_phases, const TripleVisitor& visit,
                           uint32_t cap) {
    if (n < 3) {
        throw std::invalid_argument("AvN triples need at least 3 qubits");
    }
    if (n > cap) {
        throw SizeCapExceeded("enumeration cap is " + std::to_string(cap) +
                              " qubits (override to go further)");
    }
    const WordTable tab(n);
    const uint64_t total = uint64_t(1) << (2 * n);
    uint64_t emitted = 0;

    GSearch search{tab, n,  0,  0,  {}, {},
                   {},  {}, {}, {}, include_phases, &visit, &emitted};
    search.e_letters.resize(n);
    search.f_letters.resize(n);
    search.col_class.resize(n);
    search.a_left.resize(n + 1);
    search.b_left.resize(n + 1);
    search.g_letters.resize(n);

    for (uint64_t ce = 0; ce < total && !search.stopped; ++ce) {
        // e needs at least 3 non-identity letters to host three odd counts.
        if (std::popcount(tab.x[ce] | tab.z[ce]) < 3) {
            continue;
        }
        for (uint64_t cf = 0; cf < total && !search.stopped; ++cf) {
            const PairClasses cls =
                classify(n, tab.x[ce], tab.z[ce], tab.x[cf], tab.z[cf]);
            const int b_count = std::popcount(cls.b);
            if (std::popcount(cls.a) < 1 || b_count < 2 || (b_count & 1) != 0) {
                continue;
            }
            search.ce = ce;
            search.cf = cf;
            for (uint32_t q = 0; q < n; ++q) {
                const uint64_t bit = uint64_t(1) << q;
                search.e_letters[q] =
                    letter_from_bits(tab.x[ce] & bit, tab.z[ce] & bit);
                search.f_letters[q] =
                    letter_from_bits(tab.x[cf] & bit, tab.z[cf] & bit);
                search.col_class[q] = (cls.a & bit)   ? 0
                                      : (cls.b & bit) ? 1
                                      : (cls.c & bit) ? 2
                                                      : 3;
            }
            search.a_left[n] = 0;
            search.b_left[n] = 0;
            for (uint32_t q = n; q-- > 0;) {
                search.a_left[q] = search.a_left[q + 1] + (search.col_class[q] == 0);
                search.b_left[q] = search.b_left[q + 1] + (search.col_class[q] == 1);
            }
            search.run(0, 0, 0, 0, 0);
        }
    }
    return emitted;
}

uint64_t brute_force_enumerate(uint32_t n, const TripleVisitor& visit, uint32_t cap) {
    if (n < 3) {
        throw std::invalid_argument("AvN triples need at least 3 qubits");
    }
    if (n > cap) {
        throw SizeCapExceeded("brute-force cap is " + std::to_string(cap) + " qubits");
    }
    const WordTable tab(n);
    const uint64_t total = uint64_t(1) << (2 * n);
    const uint64_t col = (uint64_t(1) << n) - 1;
    uint64_t emitted = 0;
    for (uint64_t ce = 0; ce < total; ++ce) {
        const uint64_t xe = tab.x[ce];
        const uint64_t ze = tab.z[ce];
        for (uint64_t cf = 0; cf < total; ++cf) {
            const uint64_t xf = tab.x[cf];
            const uint64_t zf = tab.z[cf];
            const uint64_t eq_ef = ~((xe ^ xf) | (ze ^ zf)) & col;
            for (uint64_t cg = 0; cg < total; ++cg) {
                const uint64_t xg = tab.x[cg];
                const uint64_t zg = tab.z[cg];
                const uint64_t eq_fg = ~((xf ^ xg) | (zf ^ zg)) & col;
                const uint64_t eq_eg = ~((xe ^ xg) | (ze ^ zg)) & col;
                if ((~eq_ef & ~eq_fg & ~eq_eg & col) != 0) {
                    continue;
                }
                const uint64_t non_i = (xe | ze) & (xf | zf) & (xg | zg);
                const uint64_t e_cols = eq_fg & ~eq_ef & non_i;
                const uint64_t f_cols = eq_eg & ~eq_ef & non_i;
                const uint64_t g_cols = eq_ef & ~eq_fg & non_i;
                const int ne = std::popcount(e_cols);
                const int nf = std::popcount(f_cols);
                const int ng = std::popcount(g_cols);
                if ((ne & nf & ng & 1) == 0) {
                    continue;
                }
                // Role order over column positions: every e-deviation before
                // every f-deviation before every g-deviation.
                if (64 - std::countl_zero(e_cols) > std::countr_zero(f_cols) ||
                    64 - std::countl_zero(f_cols) > std::countr_zero(g_cols)) {
                    continue;
                }
                ++emitted;
                if (!visit(AvnTriple{element_of(tab, ce, false),
                                     element_of(tab, cf, false),
                                     element_of(tab, cg, false)},
                           PatternCounts{uint32_t(ne), uint32_t(nf), uint32_t(ng)})) {
                    return emitted;
                }
            }
        }
    }
    return emitted;
}

BigInt count_formula(uint32_t n) {
    if (n < 3) {
        throw std::invalid_argument("count_formula needs n >= 3");
    }
    const auto binomial = [](uint32_t a, uint32_t b) {
        if (b > a) {
            return BigInt(0);
        }
        BigInt r = 1;
        for (uint32_t i = 0; i < b; ++i) {
            r *= a - i;
            r /= i + 1;
        }
        return r;
    };
    const uint32_t k_max = (n + (n & 1)) / 2 - 1;
    BigInt sum = 0;
    for (uint32_t k = 1; k <= k_max; ++k) {
        BigInt term = binomial(n, 2 * k + 1) * binomial(k + 1, k - 1);
        term *= boost::multiprecision::pow(BigInt(6), 2 * k + 1);
        term *= boost::multiprecision::pow(BigInt(22), n - 2 * k - 1);
        sum += term;
    }
    return 8 * sum;
}

BigInt structured_count_phase_free(uint32_t n) {
    if (n < 3) {
        throw std::invalid_argument("structured count needs n >= 3");
    }
    // Column-wise count of the role-ordered stream. State = (minimum rank the
    // next deviation may take, parities of N_e, N_f, N_g). Per column: 22
    // inactive letter assignments keep the state, 6 assignments per
    // admissible deviation rank flip one parity and pin the rank floor.
    constexpr size_t kStates = 3 * 8;
    const auto idx = [](uint32_t rank, uint32_t parities) {
        return size_t(rank * 8 + parities);
    };
    std::array<BigInt, kStates> dp{};
    dp[idx(0, 0)] = 1;
    for (uint32_t col = 0; col < n; ++col) {
        std::array<BigInt, kStates> next{};
        for (uint32_t rank = 0; rank < 3; ++rank) {
            for (uint32_t par = 0; par < 8; ++par) {
                const BigInt& ways = dp[idx(rank, par)];
                if (ways == 0) {
                    continue;
                }
                next[idx(rank, par)] += 22 * ways;
                for (uint32_t r = rank; r < 3; ++r) {
                    next[idx(r, par ^ (1u << r))] += 6 * ways;
                }
            }
        }
        dp = next;
    }
    BigInt total = 0;
    for (uint32_t rank = 0; rank < 3; ++rank) {
        total += dp[idx(rank, 7)];
    }
    return total;
}

}  // namespace avn
