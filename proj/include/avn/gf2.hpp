#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace avn {

/// One parity constraint: a coefficient bit-mask over variable ids plus a
/// right-hand side bit.
struct Gf2Row {
    std::vector<uint64_t> mask;  // ceil(num_vars / 64) words
    bool rhs = false;
};

/// A system of XOR equations over GF(2).
struct Gf2System {
    uint32_t num_vars = 0;
    std::vector<Gf2Row> rows;

    static uint32_t words_for(uint32_t num_vars) { return (num_vars + 63) / 64; }

    void add_row(const std::vector<uint32_t>& support, bool rhs);
};

struct Gf2Result {
    bool consistent = true;
    /// Valid when consistent: one satisfying assignment, free variables 0.
    std::vector<bool> solution;
    /// Valid when inconsistent: indices of input rows whose GF(2) sum is the
    /// all-zero coefficient row with rhs 1.
    std::vector<uint32_t> certificate;
};

/// Streaming Gaussian elimination. Rows are folded one at a time into a
/// reduced pivot basis of at most num_vars rows, so systems with 2^n rows
/// never hold more than O(num_vars^2) bits. Each pivot remembers which
/// original rows were XORed into it, which is what makes refutation
/// certificates possible after the rows themselves are gone.
class Gf2Eliminator {
  public:
    explicit Gf2Eliminator(uint32_t num_vars);

    /// Folds in the next row. Returns true if this row completed a
    /// contradiction (0 = 1); the certificate is frozen at the first one.
    bool add_row(std::span<const uint64_t> mask, bool rhs);
    bool add_row(const Gf2Row& row) { return add_row(row.mask, row.rhs); }

    bool inconsistent() const { return conflict_.has_value(); }
    /// Sorted indices (in insertion order numbering) of the conflicting
    /// combination. Empty optional while the system is still consistent.
    const std::optional<std::vector<uint32_t>>& certificate() const { return conflict_; }

    uint32_t rows_seen() const { return next_index_; }
    uint32_t rank() const { return uint32_t(pivot_order_.size()); }

    /// One satisfying assignment of the rows folded in so far (free
    /// variables set to 0). Must not be called after a contradiction.
    std::vector<bool> solve() const;

  private:
    struct Pivot {
        std::vector<uint64_t> mask;
        bool rhs = false;
        std::vector<uint32_t> origin;  // sorted original-row indices
    };

    uint32_t num_vars_;
    uint32_t words_;
    uint32_t next_index_ = 0;
    std::vector<int32_t> pivot_at_;  // var id -> index into pivots_, or -1
    std::vector<Pivot> pivots_;
    std::vector<uint32_t> pivot_order_;  // lead var of each pivot, insertion order
    std::optional<std::vector<uint32_t>> conflict_;
};

/// Solves the whole system at once. Inconsistent results carry a certificate
/// that is re-validated against the original rows before being returned.
Gf2Result gf2_solve(const Gf2System& sys);

/// True iff the XOR of the cited rows has all-zero coefficients and rhs 1.
bool gf2_certificate_sound(const Gf2System& sys, const std::vector<uint32_t>& certificate);

}  // namespace avn
