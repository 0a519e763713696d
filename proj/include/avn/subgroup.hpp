#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "avn/gf2.hpp"
#include "avn/pauli.hpp"
#include "avn/triples.hpp"

#include <boost/multiprecision/cpp_int.hpp>

namespace avn {

using BigInt = boost::multiprecision::cpp_int;

/// One parity assertion over measurement-outcome variables. Identity letters
/// never appear in the support.
struct XorEquation {
    std::vector<uint32_t> support;  // sorted variable ids
    bool rhs = false;

    bool operator==(const XorEquation&) const = default;
    friend bool operator<(const XorEquation& a, const XorEquation& b) {
        if (a.support != b.support) {
            return a.support < b.support;
        }
        return a.rhs < b.rhs;
    }
};

/// A set of XOR equations together with the naming of its variables.
/// For qubit scenarios the ids follow x < y < z per qubit, qubits ascending:
/// id = 3 * qubit + (X -> 0, Y -> 1, Z -> 2).
struct XorTheory {
    uint32_t num_vars = 0;
    std::vector<std::string> var_names;
    std::vector<XorEquation> equations;

    Gf2System to_system() const;
    std::string equation_str(const XorEquation& eq) const;
};

/// Variable id of the outcome of measuring `letter` on `qubit`.
inline uint32_t pauli_var_id(uint32_t qubit, PauliLetter letter) {
    return 3 * qubit + (uint8_t(letter) - 1);
}

std::vector<std::string> pauli_var_names(uint32_t n);

/// The parity equation an element with +/-1 phase imposes on the outcomes of
/// its letterwise measurements.
XorEquation equation_of(const PauliElement& p);

constexpr uint32_t kElementCap = 24;      // refuse groups beyond 2^24 elements
constexpr uint32_t kTripleSearchCap = 12; // refuse triple scans beyond 2^12 elements

/// Verdict of the AvN decision. When avn is true the certificate lists group
/// elements whose equations XOR to 0 = 1, in canonical order.
struct AvnVerdict {
    bool avn = false;
    std::vector<PauliElement> certificate;
    std::vector<bool> assignment;  // a satisfying assignment when not AvN
};

/// A stabiliser subgroup of P_n given by independent, pairwise-commuting
/// generators with +/-1 phases. Immutable once constructed.
///
/// -I is excluded automatically: commuting Hermitian generators make every
/// subset product an involution (so phases stay +/-1), and independence of
/// the check vectors means no nonempty subset multiplies to an identity
/// word at all.
class StabiliserGroup {
  public:
    /// Validates and adopts the generators. Throws std::invalid_argument on
    /// length mismatch, imaginary phase, non-commuting or dependent sets.
    StabiliserGroup(uint32_t n, std::vector<PauliElement> generators);

    /// Parses "XXX,ZZI,IZZ"; n is taken from the first word.
    static StabiliserGroup parse(std::string_view text);

    uint32_t n() const { return n_; }
    uint32_t rank() const { return uint32_t(generators_.size()); }
    bool is_maximal() const { return rank() == n_; }
    const std::vector<PauliElement>& generators() const { return generators_; }

    /// dim V_S = 2^(n-k).
    BigInt stabiliser_dimension() const;

    /// Visits all 2^k subset products exactly once, identity first, in a
    /// fixed Gray-code order (each step multiplies by one generator).
    void for_each_element(const std::function<void(const PauliElement&)>& fn,
                          uint32_t cap = kElementCap) const;

    /// Materialised element list in the same order.
    std::vector<PauliElement> elements(uint32_t cap = kElementCap) const;

    /// Product of the generators selected by `mask`.
    PauliElement element_at(uint64_t mask) const;

    /// Membership test for arbitrary elements (phase included).
    bool contains(const PauliElement& p) const;

    /// One equation per non-identity element of the generated group.
    XorTheory xor_theory(uint32_t cap = kElementCap) const;

    /// Decides AvN by streaming elimination over the full theory. The
    /// certificate is re-validated before being returned.
    AvnVerdict is_avn(uint32_t cap = kElementCap) const;

    /// Exhaustive scan for an AvN triple among the group elements, smallest
    /// triple in canonical order first.
    std::optional<AvnTriple> find_avn_triple(uint32_t cap = kTripleSearchCap) const;

  private:
    uint32_t n_;
    std::vector<PauliElement> generators_;
};

}  // namespace avn
