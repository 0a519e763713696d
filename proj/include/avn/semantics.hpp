#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "avn/pauli.hpp"
#include "avn/subgroup.hpp"

#include <boost/multiprecision/cpp_int.hpp>

namespace avn {

using Rational = boost::multiprecision::cpp_rational;

std::string rational_str(const Rational& r);

constexpr uint32_t kStateCap = 10;       // exact states and projector traces
constexpr uint32_t kModelCap = 5;        // 3^n contexts x 2^n outcomes
constexpr uint32_t kGaloisCap = 4;       // isotropy scans all 4 * 4^n elements
constexpr uint32_t kAssignmentCapBits = 15;

/// A Gaussian-dyadic number (re + i*im) / 2^exp2 with arbitrary-precision
/// integer parts. Normal form: re and im are never both even while exp2 > 0.
struct ExactScalar {
    BigInt re{0};
    BigInt im{0};
    uint32_t exp2 = 0;

    static ExactScalar zero() { return {}; }
    static ExactScalar one() { return {1, 0, 0}; }

    bool is_zero() const { return re == 0 && im == 0; }
    void normalise();
    ExactScalar times_i() const { return ExactScalar{-im, re, exp2}; }
    /// Multiplies by i^t.
    ExactScalar rotated(uint8_t t) const;
    ExactScalar halved() const;
    Rational norm_sq() const;
    std::string str() const;

    friend ExactScalar operator+(const ExactScalar& a, const ExactScalar& b);
    friend ExactScalar operator-(const ExactScalar& a, const ExactScalar& b);
    friend ExactScalar operator*(const ExactScalar& a, const ExactScalar& b);
    bool operator==(const ExactScalar&) const = default;
};

/// An exact (generally unnormalised) vector in (C^2)^(x)n. Basis index bit
/// (n-1-q) holds qubit q, so printed outcome strings read left to right.
struct ExactState {
    uint32_t n = 0;
    std::vector<ExactScalar> amp;

    static ExactState zero_state(uint32_t n);
    static ExactState basis(uint32_t n, uint64_t index);

    bool is_zero() const;
    Rational norm_sq() const;

    /// Deterministic representative: integer amplitudes with content 1 and
    /// the first nonzero amplitude rotated into re > 0, im >= 0.
    void canonicalise();

    bool operator==(const ExactState&) const = default;
};

/// Exact action of a Pauli element, letterwise with exact phase.
ExactState apply_pauli(const PauliElement& p, const ExactState& s);

/// (s + (-1)^sign_bit p s) / 2.
ExactState project_eigen(const PauliElement& p, bool sign_bit, const ExactState& s);

/// Equality of rays: one state is a nonzero complex multiple of the other.
bool ray_equal(const ExactState& a, const ExactState& b);

/// tr prod_i (I + g_i)/2, evaluated exactly by summing element traces over
/// all 2^k subset products. Must equal 2^(n-k) for valid groups; the rank
/// route lives in StabiliserGroup::stabiliser_dimension.
BigInt projector_trace(const StabiliserGroup& s, uint32_t cap = kStateCap);

/// The unique state fixed by a maximal group, exact, deterministic
/// representative. Verifies g |psi> = |psi> for every generator.
ExactState stabiliser_state(const StabiliserGroup& s, uint32_t cap = kStateCap);

/// Context-indexed exact outcome distributions for parties that each choose
/// one local measurement per run. Context index digits are party-major.
struct EmpiricalModel {
    std::vector<std::vector<std::string>> settings;  // labels per party
    std::vector<std::vector<Rational>> table;        // [context][outcome]

    uint32_t parties() const { return uint32_t(settings.size()); }
    size_t context_count() const;
    std::vector<uint32_t> context_choice(size_t ci) const;
    std::string context_label(size_t ci) const;
    size_t outcome_count() const { return size_t(1) << parties(); }

    uint32_t num_labels() const;
    /// Flattened variable id of (party, setting), party-major.
    uint32_t label_id(uint32_t party, uint32_t setting) const;
    std::vector<std::string> label_names() const;

    /// Exact marginal of context `ci` onto the given parties (ascending).
    std::vector<Rational> marginal(size_t ci, const std::vector<uint32_t>& parties) const;
};

/// Measures X, Y or Z on every qubit of the state; exact probabilities.
EmpiricalModel empirical_model(const ExactState& state, uint32_t cap = kModelCap);

/// The non-quantum no-signalling box with the inconsistent 4-equation theory.
EmpiricalModel pr_box();

/// "ghz3", "prbox" or "cluster4".
EmpiricalModel fixture_model(const std::string& name);

/// Exact marginal-compatibility check across every pair of contexts.
bool no_signalling_ok(const EmpiricalModel& m);

/// One equation per (sub-)context whose support has uniform parity.
XorTheory xor_theory_of_model(const EmpiricalModel& m);

/// True iff no global outcome assignment hits every context's support.
bool is_strongly_contextual(const EmpiricalModel& m);

/// Exact basis of the common +1 eigenspace of an arbitrary element set,
/// by kernel computation of the stacked (P - I) blocks.
std::vector<ExactState> stabilised_subspace(uint32_t n,
                                            const std::vector<PauliElement>& elems,
                                            uint32_t cap = kGaloisCap);

/// Every element of P_n fixing every basis vector, canonical order.
std::vector<PauliElement> isotropy_group(uint32_t n,
                                         const std::vector<ExactState>& basis,
                                         uint32_t cap = kGaloisCap);

/// Membership of a vector in the span of a basis, exact.
bool subspace_contains(const std::vector<ExactState>& basis, const ExactState& v);

}  // namespace avn
