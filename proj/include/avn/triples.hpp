#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <string>

#include "avn/pauli.hpp"

#include <boost/multiprecision/cpp_int.hpp>

namespace avn {

using BigInt = boost::multiprecision::cpp_int;

/// Deviation-pattern counts of a triple: n_g counts columns with
/// e_i = f_i != g_i (all letters non-identity), and cyclically for the rest.
struct PatternCounts {
    uint32_t n_e = 0;
    uint32_t n_f = 0;
    uint32_t n_g = 0;

    bool operator==(const PatternCounts&) const = default;
    bool all_odd() const { return (n_e & 1) && (n_f & 1) && (n_g & 1); }
};

/// An ordered triple of Pauli elements with +/-1 phases. Producers only
/// construct triples that pass is_avn_triple_def2.
struct AvnTriple {
    PauliElement e, f, g;

    bool operator==(const AvnTriple&) const = default;
    std::string str() const { return e.str() + " | " + f.str() + " | " + g.str(); }
};

/// Column-pattern counts. Throws std::invalid_argument on length mismatch or
/// when some column has three pairwise-distinct letters (condition 1 fails).
PatternCounts pattern_counts(const PauliElement& e, const PauliElement& f,
                             const PauliElement& g);

/// Pairwise commutation + condition 1 + odd N_f. Violations return false.
bool is_avn_triple_def1(const PauliElement& e, const PauliElement& f,
                        const PauliElement& g);

/// Condition 1 + all of N_e, N_f, N_g odd; commutation not tested.
bool is_avn_triple_def2(const PauliElement& e, const PauliElement& f,
                        const PauliElement& g);

inline bool is_avn_triple_def2(const AvnTriple& t) {
    return is_avn_triple_def2(t.e, t.f, t.g);
}

struct ReducedTriple {
    /// Columns with patterns e=f!=g, e!=f=g, e=g!=f, in that order, each the
    /// smallest such index.
    std::array<uint32_t, 3> indices;
    /// The triple restricted to those three columns (kept in ascending qubit
    /// order), original sign bits unchanged.
    AvnTriple triple;
};

/// Projects a valid triple onto three witnessing columns; the result is a
/// valid triple of length 3. Throws std::invalid_argument on invalid input.
ReducedTriple reduce_to_three(const AvnTriple& t);

constexpr uint32_t kEnumerationCap = 6;
constexpr uint32_t kBruteForceCap = 4;

/// Visitor invoked per triple in canonical order. Return false to stop.
using TripleVisitor = std::function<bool(const AvnTriple&, const PatternCounts&)>;

/// Streams AvN triples of P_n in canonical lexicographic order on
/// (e letters, f letters, g letters), phases innermost. Phase-free when
/// include_phases is false, otherwise each element carries each +/-1 phase.
/// Returns the number of triples emitted.
///
/// The stream lists one triple per deviation pattern: the columns where e,
/// f and g deviate appear in that role order (this is the convention the
/// counting formula evaluates). Every valid triple is a role permutation of
/// exactly one streamed triple.
uint64_t enumerate_triples(uint32_t n, bool include_phases, const TripleVisitor& visit,
                           uint32_t cap = kEnumerationCap);

/// Reference engine: scans all 64^n phase-free word triples and filters by
/// definition and role order. Same output and order as
/// enumerate_triples(n, false, ...).
uint64_t brute_force_enumerate(uint32_t n, const TripleVisitor& visit,
                               uint32_t cap = kBruteForceCap);

/// Closed-form count of AvN triples in P_n (phases included).
BigInt count_formula(uint32_t n);

/// Column-pattern dynamic-programming count of phase-free triples; an
/// independent oracle for count_formula(n) / 8.
BigInt structured_count_phase_free(uint32_t n);

}  // namespace avn
