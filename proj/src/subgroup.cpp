#include "avn/subgroup.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <stdexcept>

namespace avn {

Gf2System XorTheory::to_system() const {
    Gf2System sys;
    sys.num_vars = num_vars;
    for (const auto& eq : equations) {
        sys.add_row(eq.support, eq.rhs);
    }
    return sys;
}

std::string XorTheory::equation_str(const XorEquation& eq) const {
    std::string out;
    if (eq.support.empty()) {
        out = "0";
    } else {
        for (size_t i = 0; i < eq.support.size(); ++i) {
            if (i > 0) {
                out += "+";
            }
            out += var_names.at(eq.support[i]);
        }
    }
    out += " = ";
    out += eq.rhs ? "1" : "0";
    return out;
}

std::vector<std::string> pauli_var_names(uint32_t n) {
    std::vector<std::string> names;
    names.reserve(3 * n);
    for (uint32_t q = 0; q < n; ++q) {
        for (char c : {'x', 'y', 'z'}) {
            names.push_back(std::string(1, c) + std::to_string(q + 1));
        }
    }
    return names;
}

XorEquation equation_of(const PauliElement& p) {
    if (!p.has_real_phase()) {
        throw std::invalid_argument("only +/-1-phase elements induce parity equations");
    }
    XorEquation eq;
    for (uint32_t q = 0; q < p.n(); ++q) {
        const PauliLetter letter = p.letter(q);
        if (letter != PauliLetter::I) {
            eq.support.push_back(pauli_var_id(q, letter));
        }
    }
    eq.rhs = p.sign_bit();
    return eq;
}

StabiliserGroup::StabiliserGroup(uint32_t n, std::vector<PauliElement> generators)
    : n_(n), generators_(std::move(generators)) {
    if (n_ == 0 || n_ > kMaxQubits) {
        throw std::invalid_argument("qubit count must be in [1, 64]");
    }
    for (const auto& g : generators_) {
        if (g.n() != n_) {
            throw std::invalid_argument("generator length differs from qubit count");
        }
        if (!g.has_real_phase()) {
            throw std::invalid_argument("generator " + g.str() +
                                        " has an imaginary global phase");
        }
    }
    for (size_t i = 0; i < generators_.size(); ++i) {
        for (size_t j = i + 1; j < generators_.size(); ++j) {
            if (symplectic_product(generators_[i].check_vector(),
                                   generators_[j].check_vector()) != 0) {
                throw std::invalid_argument("generators " + generators_[i].str() +
                                            " and " + generators_[j].str() +
                                            " do not commute");
            }
        }
    }
    // Independence of the check vectors over GF(2). Together with the checks
    // above this also rules out -I in the generated group.
    Gf2Eliminator elim(2 * n_);
    for (const auto& g : generators_) {
        const uint64_t mask[2] = {g.x_bits(), g.z_bits()};
        if (n_ <= 32) {
            const uint64_t packed = g.x_bits() | (g.z_bits() << n_);
            elim.add_row(std::span<const uint64_t>(&packed, 1), false);
        } else {
            std::vector<uint64_t> bits(Gf2System::words_for(2 * n_), 0);
            for (uint32_t q = 0; q < n_; ++q) {
                if ((mask[0] >> q) & 1u) {
                    bits[q / 64] |= uint64_t(1) << (q % 64);
                }
                if ((mask[1] >> q) & 1u) {
                    bits[(n_ + q) / 64] |= uint64_t(1) << ((n_ + q) % 64);
                }
            }
            elim.add_row(bits, false);
        }
    }
    if (elim.rank() != generators_.size()) {
        throw std::invalid_argument("generator check vectors are linearly dependent");
    }
    if (generators_.size() > n_) {
        throw std::invalid_argument("more independent generators than qubits");
    }
}

StabiliserGroup StabiliserGroup::parse(std::string_view text) {
    auto gens = parse_pauli_list(text);
    if (gens.empty()) {
        throw std::invalid_argument("empty generator list");
    }
    const uint32_t n = gens.front().n();
    return StabiliserGroup(n, std::move(gens));
}

BigInt StabiliserGroup::stabiliser_dimension() const {
    return BigInt(1) << (n_ - rank());
}

void StabiliserGroup::for_each_element(const std::function<void(const PauliElement&)>& fn,
                                       uint32_t cap) const {
    const uint32_t k = rank();
    if (k > cap) {
        throw SizeCapExceeded("group has 2^" + std::to_string(k) +
                              " elements, over the cap of 2^" + std::to_string(cap));
    }
    PauliElement current = PauliElement::identity(n_);
    fn(current);
    // Gray-code walk: step t toggles generator countr_zero(t), so each
    // element is one multiplication away from the previous one.
    const uint64_t total = uint64_t(1) << k;
    for (uint64_t t = 1; t < total; ++t) {
        current = current * generators_[size_t(std::countr_zero(t))];
        fn(current);
    }
}

std::vector<PauliElement> StabiliserGroup::elements(uint32_t cap) const {
    std::vector<PauliElement> out;
    out.reserve(size_t(1) << std::min<uint32_t>(rank(), 24));
    for_each_element([&](const PauliElement& p) { out.push_back(p); }, cap);
    return out;
}

PauliElement StabiliserGroup::element_at(uint64_t mask) const {
    PauliElement out = PauliElement::identity(n_);
    while (mask != 0) {
        const int bit = std::countr_zero(mask);
        mask &= mask - 1;
        out = out * generators_[size_t(bit)];
    }
    return out;
}

bool StabiliserGroup::contains(const PauliElement& p) const {
    if (p.n() != n_ || !p.has_real_phase()) {
        return false;
    }
    // Solve for the generator subset reproducing the check vector, then let
    // the group's own multiplication settle the phase.
    struct Row {
        uint64_t x = 0, z = 0, combo = 0;
    };
    const auto lowbit = [](const Row& r) -> int {
        if (r.x) {
            return std::countr_zero(r.x);
        }
        return r.z ? 64 + std::countr_zero(r.z) : -1;
    };
    std::array<std::optional<Row>, 128> piv{};
    const auto reduce = [&](Row r) {
        // Pivots have no bits below their lead, so the lowest set bit moves
        // strictly up and this terminates.
        for (;;) {
            const int lead = lowbit(r);
            if (lead < 0 || !piv[size_t(lead)]) {
                return r;
            }
            r.x ^= piv[size_t(lead)]->x;
            r.z ^= piv[size_t(lead)]->z;
            r.combo ^= piv[size_t(lead)]->combo;
        }
    };
    for (size_t i = 0; i < generators_.size(); ++i) {
        const Row r = reduce(
            Row{generators_[i].x_bits(), generators_[i].z_bits(), uint64_t(1) << i});
        piv[size_t(lowbit(r))] = r;
    }
    const Row residue = reduce(Row{p.x_bits(), p.z_bits(), 0});
    if (residue.x | residue.z) {
        return false;
    }
    return element_at(residue.combo) == p;
}

XorTheory StabiliserGroup::xor_theory(uint32_t cap) const {
    XorTheory theory;
    theory.num_vars = 3 * n_;
    theory.var_names = pauli_var_names(n_);
    for_each_element(
        [&](const PauliElement& p) {
            if (!p.is_identity_word()) {
                theory.equations.push_back(equation_of(p));
            }
        },
        cap);
    return theory;
}

AvnVerdict StabiliserGroup::is_avn(uint32_t cap) const {
    const uint32_t num_vars = 3 * n_;
    Gf2Eliminator elim(num_vars);
    // Stream the equations of all non-identity elements; remember only the
    // Gray position of each row so certificate elements can be rebuilt.
    std::vector<uint64_t> row_to_gray;
    uint32_t gray_pos = 0;
    bool done = false;
    for_each_element(
        [&](const PauliElement& p) {
            const uint32_t pos = gray_pos++;
            if (done || p.is_identity_word()) {
                return;
            }
            std::vector<uint64_t> mask(Gf2System::words_for(num_vars), 0);
            for (uint32_t q = 0; q < n_; ++q) {
                const PauliLetter letter = p.letter(q);
                if (letter != PauliLetter::I) {
                    const uint32_t v = pauli_var_id(q, letter);
                    mask[v / 64] |= uint64_t(1) << (v % 64);
                }
            }
            row_to_gray.push_back(pos);
            if (elim.add_row(mask, p.sign_bit())) {
                done = true;
            }
        },
        cap);

    AvnVerdict verdict;
    if (!elim.inconsistent()) {
        verdict.avn = false;
        verdict.assignment = elim.solve();
        return verdict;
    }
    verdict.avn = true;
    XorEquation sum;
    bool rhs = false;
    std::vector<uint64_t> support_acc(Gf2System::words_for(num_vars), 0);
    for (uint32_t row : *elim.certificate()) {
        const uint64_t pos = row_to_gray.at(row);
        const uint64_t mask = pos ^ (pos >> 1);  // Gray position -> subset
        const PauliElement p = element_at(mask);
        verdict.certificate.push_back(p);
        const XorEquation eq = equation_of(p);
        for (uint32_t v : eq.support) {
            support_acc[v / 64] ^= uint64_t(1) << (v % 64);
        }
        rhs ^= eq.rhs;
    }
    for (uint64_t w : support_acc) {
        if (w != 0) {
            throw std::logic_error("AvN certificate does not cancel");
        }
    }
    if (!rhs) {
        throw std::logic_error("AvN certificate XORs to 0 = 0");
    }
    std::sort(verdict.certificate.begin(), verdict.certificate.end());
    return verdict;
}

std::optional<AvnTriple> StabiliserGroup::find_avn_triple(uint32_t cap) const {
    const uint32_t k = rank();
    if (k > cap) {
        throw SizeCapExceeded("triple search over 2^" + std::to_string(k) +
                              " elements exceeds the cap of 2^" + std::to_string(cap));
    }
    std::vector<PauliElement> elems = elements(cap);
    std::sort(elems.begin(), elems.end());
    const uint64_t col = (n_ == 64) ? ~uint64_t(0) : ((uint64_t(1) << n_) - 1);
    for (const PauliElement& e : elems) {
        if (std::popcount(e.support()) < 3) {
            continue;
        }
        for (const PauliElement& f : elems) {
            // A pair can extend to a triple only with at least one agreeing
            // non-identity column and an even count (>= 2) of disagreeing
            // non-identity columns.
            const uint64_t eq =
                ~((e.x_bits() ^ f.x_bits()) | (e.z_bits() ^ f.z_bits())) & col;
            const int b = std::popcount(~eq & e.support() & f.support() & col);
            if (std::popcount(eq & e.support()) < 1 || b < 2 || (b & 1)) {
                continue;
            }
            for (const PauliElement& g : elems) {
                if (is_avn_triple_def2(e, f, g)) {
                    return AvnTriple{e, f, g};
                }
            }
        }
    }
    return std::nullopt;
}

}  // namespace avn
