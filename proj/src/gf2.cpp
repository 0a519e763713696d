#include "avn/gf2.hpp"

#include <algorithm>
#include <bit>
#include <cassert>
#include <stdexcept>

namespace avn {

namespace {

int lowest_set_bit(std::span<const uint64_t> mask) {
    for (size_t w = 0; w < mask.size(); ++w) {
        if (mask[w] != 0) {
            return int(w * 64 + std::countr_zero(mask[w]));
        }
    }
    return -1;
}

void xor_into(std::vector<uint64_t>& dst, std::span<const uint64_t> src) {
    for (size_t w = 0; w < dst.size(); ++w) {
        dst[w] ^= src[w];
    }
}

// Symmetric difference of two sorted index lists.
std::vector<uint32_t> merge_origins(const std::vector<uint32_t>& a,
                                    const std::vector<uint32_t>& b) {
    std::vector<uint32_t> out;
    out.reserve(a.size() + b.size());
    size_t i = 0;
    size_t j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] < b[j]) {
            out.push_back(a[i++]);
        } else if (b[j] < a[i]) {
            out.push_back(b[j++]);
        } else {
            ++i;
            ++j;
        }
    }
    out.insert(out.end(), a.begin() + i, a.end());
    out.insert(out.end(), b.begin() + j, b.end());
    return out;
}

}  // namespace

void Gf2System::add_row(const std::vector<uint32_t>& support, bool rhs) {
    Gf2Row row;
    row.mask.assign(words_for(num_vars), 0);
    for (uint32_t v : support) {
        if (v >= num_vars) {
            throw std::invalid_argument("gf2 row references variable out of range");
        }
        row.mask[v / 64] |= uint64_t(1) << (v % 64);
    }
    row.rhs = rhs;
    rows.push_back(std::move(row));
}

Gf2Eliminator::Gf2Eliminator(uint32_t num_vars)
    : num_vars_(num_vars),
      words_(Gf2System::words_for(num_vars)),
      pivot_at_(num_vars, -1) {}

bool Gf2Eliminator::add_row(std::span<const uint64_t> mask, bool rhs) {
    const uint32_t index = next_index_++;
    if (conflict_.has_value()) {
        return false;
    }
    std::vector<uint64_t> m(mask.begin(), mask.end());
    m.resize(words_, 0);
    bool r = rhs;
    std::vector<uint32_t> origin{index};

    for (;;) {
        const int lead = lowest_set_bit(m);
        if (lead < 0) {
            if (r) {
                conflict_ = std::move(origin);
                return true;
            }
            return false;  // redundant row
        }
        const int32_t p = pivot_at_[uint32_t(lead)];
        if (p < 0) {
            pivot_at_[uint32_t(lead)] = int32_t(pivots_.size());
            pivots_.push_back(Pivot{std::move(m), r, std::move(origin)});
            pivot_order_.push_back(uint32_t(lead));
            return false;
        }
        xor_into(m, pivots_[size_t(p)].mask);
        r ^= pivots_[size_t(p)].rhs;
        origin = merge_origins(origin, pivots_[size_t(p)].origin);
    }
}

std::vector<bool> Gf2Eliminator::solve() const {
    if (conflict_.has_value()) {
        throw std::logic_error("solve() called on an inconsistent system");
    }
    // A pivot was reduced against everything inserted before it, so its mask
    // only mentions its own lead, free variables, and leads of later pivots.
    // Back-substituting in reverse insertion order with free variables at 0
    // therefore resolves every row in one pass.
    std::vector<uint64_t> assign_bits(words_, 0);
    for (size_t a = pivots_.size(); a-- > 0;) {
        const Pivot& p = pivots_[a];
        unsigned parity = 0;
        for (uint32_t w = 0; w < words_; ++w) {
            parity ^= unsigned(std::popcount(p.mask[w] & assign_bits[w])) & 1u;
        }
        if (bool(parity) != p.rhs) {
            const uint32_t lead = pivot_order_[a];
            assign_bits[lead / 64] |= uint64_t(1) << (lead % 64);
        }
    }
    std::vector<bool> assignment(num_vars_, false);
    for (uint32_t v = 0; v < num_vars_; ++v) {
        assignment[v] = (assign_bits[v / 64] >> (v % 64)) & 1u;
    }
    return assignment;
}

Gf2Result gf2_solve(const Gf2System& sys) {
    Gf2Eliminator elim(sys.num_vars);
    for (const auto& row : sys.rows) {
        if (elim.add_row(row)) {
            break;
        }
    }
    Gf2Result result;
    if (elim.inconsistent()) {
        result.consistent = false;
        result.certificate = *elim.certificate();
        if (!gf2_certificate_sound(sys, result.certificate)) {
            throw std::logic_error("gf2_solve produced an unsound certificate");
        }
    } else {
        result.solution = elim.solve();
    }
    return result;
}

bool gf2_certificate_sound(const Gf2System& sys, const std::vector<uint32_t>& certificate) {
    std::vector<uint64_t> acc(Gf2System::words_for(sys.num_vars), 0);
    bool rhs = false;
    for (uint32_t idx : certificate) {
        if (idx >= sys.rows.size()) {
            return false;
        }
        xor_into(acc, sys.rows[idx].mask);
        rhs ^= sys.rows[idx].rhs;
    }
    return rhs && lowest_set_bit(acc) < 0;
}

}  // namespace avn
