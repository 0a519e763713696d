#pragma once

#include <bit>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace avn {

/// Thrown when an operation would exceed its configured size cap.
/// Callers that want bigger runs raise the cap explicitly.
struct SizeCapExceeded : std::runtime_error {
    explicit SizeCapExceeded(const std::string& msg) : std::runtime_error(msg) {}
};

/// Single-site Pauli letter. The numeric order I < X < Y < Z is the canonical
/// order used everywhere output has to be deterministic.
enum class PauliLetter : uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

inline char letter_char(PauliLetter p) {
    return "IXYZ"[static_cast<uint8_t>(p)];
}

/// Maximum number of qubits representable in one machine word per bit plane.
constexpr uint32_t kMaxQubits = 64;

/// The 2n-bit (x || z) encoding of a Pauli word, phase discarded.
/// Per qubit: I = (0,0), X = (1,0), Y = (1,1), Z = (0,1).
struct CheckVector {
    uint32_t n = 0;
    uint64_t x = 0;
    uint64_t z = 0;

    bool operator==(const CheckVector&) const = default;
};

/// Letter stored at bit position i of a check-vector pair.
inline PauliLetter letter_from_bits(bool xbit, bool zbit) {
    // (x,z): 00 -> I, 10 -> X, 11 -> Y, 01 -> Z
    static constexpr PauliLetter table[4] = {PauliLetter::I, PauliLetter::X,
                                             PauliLetter::Z, PauliLetter::Y};
    return table[(uint8_t(zbit) << 1) | uint8_t(xbit)];
}

inline std::pair<bool, bool> bits_from_letter(PauliLetter p) {
    switch (p) {
        case PauliLetter::I: return {false, false};
        case PauliLetter::X: return {true, false};
        case PauliLetter::Y: return {true, true};
        case PauliLetter::Z: return {false, true};
    }
    return {false, false};
}

/// Phase exponent (power of i, mod 4) picked up when multiplying two Pauli
/// words given as bit planes. Uses the normal form P = i^{xz} X^x Z^z per
/// site, so the whole word costs four popcounts.
inline uint8_t word_mul_phase(uint64_t x1, uint64_t z1, uint64_t x2, uint64_t z2) {
    const uint64_t x3 = x1 ^ x2;
    const uint64_t z3 = z1 ^ z2;
    const unsigned t = unsigned(std::popcount(x1 & z1)) + unsigned(std::popcount(x2 & z2)) +
                       2u * unsigned(std::popcount(z1 & x2)) +
                       3u * unsigned(std::popcount(x3 & z3));
    return uint8_t(t & 3u);
}

/// An element of the Pauli n-group: a global phase i^phase_exp and a word of
/// n letters, bit-packed as (x, z) planes.
class PauliElement {
  public:
    PauliElement() = default;

    static PauliElement identity(uint32_t n) { return PauliElement(n, 0, 0, 0); }

    static PauliElement from_letters(const std::vector<PauliLetter>& letters,
                                     uint8_t phase_exp = 0);

    /// Word with a single non-identity letter at `qubit`.
    static PauliElement single(uint32_t n, uint32_t qubit, PauliLetter p,
                               uint8_t phase_exp = 0);

    static PauliElement from_check_vector(const CheckVector& r, uint8_t phase_exp = 0) {
        return PauliElement(r.n, phase_exp, r.x, r.z);
    }

    /// Parses the text form: optional sign prefix "+", "-", "i", "-i" (also
    /// "+i"), then letters, case-insensitive. E.g. "-XYY", "iZZ", "xx".
    static PauliElement parse(std::string_view text);

    uint32_t n() const { return n_; }
    uint8_t phase_exp() const { return phase_; }
    bool has_real_phase() const { return (phase_ & 1u) == 0; }
    /// Sign bit for real-phase elements: 0 for +1, 1 for -1.
    bool sign_bit() const { return phase_ == 2; }

    uint64_t x_bits() const { return x_; }
    uint64_t z_bits() const { return z_; }
    /// Mask of positions carrying a non-identity letter.
    uint64_t support() const { return x_ | z_; }
    bool is_identity_word() const { return (x_ | z_) == 0; }

    PauliLetter letter(uint32_t i) const {
        return letter_from_bits((x_ >> i) & 1u, (z_ >> i) & 1u);
    }

    CheckVector check_vector() const { return CheckVector{n_, x_, z_}; }

    PauliElement with_phase(uint8_t phase_exp) const {
        return PauliElement(n_, uint8_t(phase_exp & 3u), x_, z_);
    }

    std::string str() const;

    friend PauliElement operator*(const PauliElement& a, const PauliElement& b) {
        if (a.n_ != b.n_) {
            throw std::invalid_argument("pauli product: length mismatch");
        }
        const uint8_t phase =
            uint8_t((a.phase_ + b.phase_ + word_mul_phase(a.x_, a.z_, b.x_, b.z_)) & 3u);
        return PauliElement(a.n_, phase, a.x_ ^ b.x_, a.z_ ^ b.z_);
    }

    bool operator==(const PauliElement&) const = default;

    /// Canonical order: letters under I < X < Y < Z, then phase exponent.
    friend bool operator<(const PauliElement& a, const PauliElement& b) {
        if (a.n_ != b.n_) {
            return a.n_ < b.n_;
        }
        for (uint32_t i = 0; i < a.n_; ++i) {
            const auto la = a.letter(i);
            const auto lb = b.letter(i);
            if (la != lb) {
                return la < lb;
            }
        }
        return a.phase_ < b.phase_;
    }

  private:
    PauliElement(uint32_t n, uint8_t phase, uint64_t x, uint64_t z)
        : n_(n), phase_(phase), x_(x), z_(z) {
        if (n == 0 || n > kMaxQubits) {
            throw std::invalid_argument("pauli word length must be in [1, 64]");
        }
    }

    uint32_t n_ = 1;
    uint8_t phase_ = 0;
    uint64_t x_ = 0;
    uint64_t z_ = 0;
};

/// True iff mul(p,q) == mul(q,p), evaluated by actually comparing the two
/// products. symplectic_product is the fast route; the tests hold them to
/// each other.
inline bool commutes(const PauliElement& p, const PauliElement& q) {
    return (p * q) == (q * p);
}

/// Sum_i (x_i z'_i + x'_i z_i) mod 2; zero iff the underlying words commute.
inline int symplectic_product(const CheckVector& r, const CheckVector& s) {
    if (r.n != s.n) {
        throw std::invalid_argument("symplectic product: length mismatch");
    }
    return std::popcount((r.x & s.z) ^ (s.x & r.z)) & 1;
}

/// Parses a comma-separated list of signed Pauli words, e.g. "XXX,ZZI,IZZ".
std::vector<PauliElement> parse_pauli_list(std::string_view text);

}  // namespace avn
