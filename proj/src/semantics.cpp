#include "avn/semantics.hpp"

#include <algorithm>
#include <bit>
#include <set>
#include <stdexcept>

#include "avn/graphstate.hpp"

namespace avn {

namespace mp = boost::multiprecision;

std::string rational_str(const Rational& r) {
    const BigInt num = mp::numerator(r);
    const BigInt den = mp::denominator(r);
    if (den == 1) {
        return num.str();
    }
    return num.str() + "/" + den.str();
}

// ---------------------------------------------------------------------------
// ExactScalar

void ExactScalar::normalise() {
    if (re == 0 && im == 0) {
        exp2 = 0;
        return;
    }
    while (exp2 > 0 && (re & 1) == 0 && (im & 1) == 0) {
        re >>= 1;
        im >>= 1;
        --exp2;
    }
}

ExactScalar ExactScalar::rotated(uint8_t t) const {
    switch (t & 3u) {
        case 0: return *this;
        case 1: return ExactScalar{-im, re, exp2};
        case 2: return ExactScalar{-re, -im, exp2};
        default: return ExactScalar{im, -re, exp2};
    }
}

ExactScalar ExactScalar::halved() const {
    ExactScalar out{re, im, exp2 + 1};
    out.normalise();
    return out;
}

Rational ExactScalar::norm_sq() const {
    Rational num(re * re + im * im);
    Rational den(BigInt(1) << (2 * exp2));
    return num / den;
}

ExactScalar operator+(const ExactScalar& a, const ExactScalar& b) {
    const uint32_t e = std::max(a.exp2, b.exp2);
    ExactScalar out{(a.re << (e - a.exp2)) + (b.re << (e - b.exp2)),
                    (a.im << (e - a.exp2)) + (b.im << (e - b.exp2)), e};
    out.normalise();
    return out;
}

ExactScalar operator-(const ExactScalar& a, const ExactScalar& b) {
    return a + b.rotated(2);
}

ExactScalar operator*(const ExactScalar& a, const ExactScalar& b) {
    ExactScalar out{a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re,
                    a.exp2 + b.exp2};
    out.normalise();
    return out;
}

std::string ExactScalar::str() const {
    std::string s = "(" + re.str();
    if (im >= 0) {
        s += "+";
    }
    s += im.str() + "i)";
    if (exp2 > 0) {
        s += "/2^" + std::to_string(exp2);
    }
    return s;
}

// ---------------------------------------------------------------------------
// ExactState

ExactState ExactState::zero_state(uint32_t n) {
    if (n == 0 || n > kStateCap * 2) {
        throw std::invalid_argument("state qubit count out of range");
    }
    ExactState s;
    s.n = n;
    s.amp.assign(size_t(1) << n, ExactScalar::zero());
    return s;
}

ExactState ExactState::basis(uint32_t n, uint64_t index) {
    ExactState s = zero_state(n);
    s.amp.at(index) = ExactScalar::one();
    return s;
}

bool ExactState::is_zero() const {
    return std::all_of(amp.begin(), amp.end(),
                       [](const ExactScalar& a) { return a.is_zero(); });
}

Rational ExactState::norm_sq() const {
    Rational total = 0;
    for (const auto& a : amp) {
        total += a.norm_sq();
    }
    return total;
}

void ExactState::canonicalise() {
    uint32_t e = 0;
    for (const auto& a : amp) {
        e = std::max(e, a.exp2);
    }
    BigInt content = 0;
    for (auto& a : amp) {
        a.re <<= (e - a.exp2);
        a.im <<= (e - a.exp2);
        a.exp2 = 0;
        content = mp::gcd(content, mp::abs(a.re));
        content = mp::gcd(content, mp::abs(a.im));
    }
    if (content == 0) {
        return;  // zero vector
    }
    for (auto& a : amp) {
        a.re /= content;
        a.im /= content;
    }
    for (const auto& a : amp) {
        if (a.is_zero()) {
            continue;
        }
        for (uint8_t t = 0; t < 4; ++t) {
            const ExactScalar r = a.rotated(t);
            if (r.re > 0 && r.im >= 0) {
                if (t != 0) {
                    for (auto& b : amp) {
                        b = b.rotated(t);
                    }
                }
                return;
            }
        }
    }
}

namespace {

uint64_t reverse_low_bits(uint64_t v, uint32_t n) {
    uint64_t out = 0;
    for (uint32_t i = 0; i < n; ++i) {
        out |= ((v >> i) & 1u) << (n - 1 - i);
    }
    return out;
}

}  // namespace

ExactState apply_pauli(const PauliElement& p, const ExactState& s) {
    if (p.n() != s.n) {
        throw std::invalid_argument("apply_pauli: length mismatch");
    }
    // Qubit q sits at basis-index bit n-1-q, so mirror the bit planes.
    const uint64_t flip = reverse_low_bits(p.x_bits(), s.n);
    const uint64_t phase_bits = reverse_low_bits(p.z_bits(), s.n);
    const unsigned y_count = unsigned(std::popcount(p.x_bits() & p.z_bits()));
    ExactState out = ExactState::zero_state(s.n);
    for (uint64_t b = 0; b < s.amp.size(); ++b) {
        if (s.amp[b].is_zero()) {
            continue;
        }
        const uint8_t t = uint8_t(
            (p.phase_exp() + y_count + 2u * unsigned(std::popcount(phase_bits & b))) & 3u);
        out.amp[b ^ flip] = s.amp[b].rotated(t);
    }
    return out;
}

ExactState project_eigen(const PauliElement& p, bool sign_bit, const ExactState& s) {
    const ExactState ps = apply_pauli(p, s);
    ExactState out = ExactState::zero_state(s.n);
    for (size_t b = 0; b < s.amp.size(); ++b) {
        out.amp[b] = (s.amp[b] + ps.amp[b].rotated(sign_bit ? 2 : 0)).halved();
    }
    return out;
}

bool ray_equal(const ExactState& a, const ExactState& b) {
    if (a.n != b.n) {
        return false;
    }
    if (a.is_zero() || b.is_zero()) {
        return a.is_zero() && b.is_zero();
    }
    size_t first = 0;
    while (a.amp[first].is_zero() && b.amp[first].is_zero()) {
        ++first;
    }
    const ExactScalar& ra = a.amp[first];
    const ExactScalar& rb = b.amp[first];
    if (ra.is_zero() != rb.is_zero()) {
        return false;
    }
    for (size_t j = 0; j < a.amp.size(); ++j) {
        if (!(ra * b.amp[j] == rb * a.amp[j])) {
            return false;
        }
    }
    return true;
}

// ---------------------------------------------------------------------------
// Group semantics

BigInt projector_trace(const StabiliserGroup& s, uint32_t cap) {
    if (s.n() > cap) {
        throw SizeCapExceeded("projector trace cap is " + std::to_string(cap) +
                              " qubits");
    }
    // tr prod (I+g)/2 = 2^-k sum_subsets tr(subset product); only identity
    // words have nonzero trace (+-2^n). A stray -I would show up here as a
    // negative contribution.
    BigInt total = 0;
    s.for_each_element([&](const PauliElement& p) {
        if (p.is_identity_word()) {
            const BigInt term = BigInt(1) << s.n();
            total += p.sign_bit() ? -term : term;
        }
    });
    const BigInt denom = BigInt(1) << s.rank();
    if (total % denom != 0) {
        throw std::logic_error("projector trace is not an integer");
    }
    return total / denom;
}

ExactState stabiliser_state(const StabiliserGroup& s, uint32_t cap) {
    if (!s.is_maximal()) {
        throw std::invalid_argument("stabiliser_state needs a maximal group");
    }
    if (s.n() > cap) {
        throw SizeCapExceeded("state cap is " + std::to_string(cap) + " qubits");
    }
    const uint64_t dim = uint64_t(1) << s.n();
    for (uint64_t seed = 0; seed < dim; ++seed) {
        ExactState v = ExactState::basis(s.n(), seed);
        for (const auto& g : s.generators()) {
            v = project_eigen(g, false, v);
            if (v.is_zero()) {
                break;
            }
        }
        if (v.is_zero()) {
            continue;
        }
        v.canonicalise();
        for (const auto& g : s.generators()) {
            if (!(apply_pauli(g, v) == v)) {
                throw std::logic_error("projected state is not stabilised");
            }
        }
        return v;
    }
    throw std::logic_error("maximal stabiliser group fixed no basis seed");
}

// ---------------------------------------------------------------------------
// Empirical models

size_t EmpiricalModel::context_count() const {
    size_t total = 1;
    for (const auto& s : settings) {
        total *= s.size();
    }
    return total;
}

std::vector<uint32_t> EmpiricalModel::context_choice(size_t ci) const {
    std::vector<uint32_t> choice(parties(), 0);
    for (uint32_t party = parties(); party-- > 0;) {
        const size_t radix = settings[party].size();
        choice[party] = uint32_t(ci % radix);
        ci /= radix;
    }
    return choice;
}

std::string EmpiricalModel::context_label(size_t ci) const {
    const auto choice = context_choice(ci);
    std::string out;
    for (uint32_t party = 0; party < parties(); ++party) {
        if (party > 0) {
            out += " ";
        }
        out += settings[party][choice[party]];
    }
    return out;
}

uint32_t EmpiricalModel::num_labels() const {
    uint32_t total = 0;
    for (const auto& s : settings) {
        total += uint32_t(s.size());
    }
    return total;
}

uint32_t EmpiricalModel::label_id(uint32_t party, uint32_t setting) const {
    uint32_t base = 0;
    for (uint32_t p = 0; p < party; ++p) {
        base += uint32_t(settings[p].size());
    }
    return base + setting;
}

std::vector<std::string> EmpiricalModel::label_names() const {
    std::vector<std::string> names;
    for (const auto& s : settings) {
        names.insert(names.end(), s.begin(), s.end());
    }
    return names;
}

std::vector<Rational> EmpiricalModel::marginal(size_t ci,
                                               const std::vector<uint32_t>& parts) const {
    std::vector<Rational> out(size_t(1) << parts.size(), 0);
    const uint32_t p = parties();
    for (size_t outcome = 0; outcome < table[ci].size(); ++outcome) {
        if (table[ci][outcome] == 0) {
            continue;
        }
        size_t idx = 0;
        for (size_t j = 0; j < parts.size(); ++j) {
            const int bit = int(outcome >> (p - 1 - parts[j])) & 1;
            idx = (idx << 1) | size_t(bit);
        }
        out[idx] += table[ci][outcome];
    }
    return out;
}

namespace {

void split_outcomes(const ExactState& v, uint32_t q,
                    const std::vector<PauliLetter>& letters, uint64_t prefix,
                    const Rational& norm0, std::vector<Rational>& row) {
    if (v.is_zero()) {
        return;
    }
    const uint32_t n = v.n;
    if (q == n) {
        row[prefix] = v.norm_sq() / norm0;
        return;
    }
    const PauliElement m = PauliElement::single(n, q, letters[q]);
    split_outcomes(project_eigen(m, false, v), q + 1, letters, prefix << 1, norm0, row);
    split_outcomes(project_eigen(m, true, v), q + 1, letters, (prefix << 1) | 1, norm0,
                   row);
}

}  // namespace

EmpiricalModel empirical_model(const ExactState& state, uint32_t cap) {
    if (state.n > cap) {
        throw SizeCapExceeded("empirical model cap is " + std::to_string(cap) +
                              " qubits");
    }
    if (state.is_zero()) {
        throw std::invalid_argument("empirical model of the zero vector");
    }
    const uint32_t n = state.n;
    EmpiricalModel m;
    m.settings.resize(n);
    for (uint32_t q = 0; q < n; ++q) {
        const std::string suffix = std::to_string(q + 1);
        m.settings[q] = {"x" + suffix, "y" + suffix, "z" + suffix};
    }
    const Rational norm0 = state.norm_sq();
    static constexpr PauliLetter kLetters[3] = {PauliLetter::X, PauliLetter::Y,
                                                PauliLetter::Z};
    m.table.assign(m.context_count(), std::vector<Rational>(m.outcome_count(), 0));
    for (size_t ci = 0; ci < m.context_count(); ++ci) {
        const auto choice = m.context_choice(ci);
        std::vector<PauliLetter> letters(n);
        for (uint32_t q = 0; q < n; ++q) {
            letters[q] = kLetters[choice[q]];
        }
        split_outcomes(state, 0, letters, 0, norm0, m.table[ci]);
    }
    return m;
}

EmpiricalModel pr_box() {
    EmpiricalModel m;
    m.settings = {{"a1", "a2"}, {"b1", "b2"}};
    const Rational half(1, 2);
    m.table.assign(4, std::vector<Rational>(4, 0));
    for (size_t ci : {size_t(0), size_t(1), size_t(2)}) {
        m.table[ci][0b00] = half;
        m.table[ci][0b11] = half;
    }
    m.table[3][0b01] = half;
    m.table[3][0b10] = half;
    return m;
}

EmpiricalModel fixture_model(const std::string& name) {
    if (name == "prbox") {
        return pr_box();
    }
    if (name == "ghz3") {
        const StabiliserGroup s = StabiliserGroup::parse("XXX,ZZI,IZZ");
        return empirical_model(stabiliser_state(s));
    }
    if (name == "cluster4") {
        Graph g(4);
        g.add_edge(0, 1);
        g.add_edge(0, 2);
        g.add_edge(1, 3);
        g.add_edge(2, 3);
        return empirical_model(stabiliser_state(graph_group(g)));
    }
    throw std::invalid_argument("unknown fixture \"" + name +
                                "\" (expected ghz3, prbox or cluster4)");
}

bool no_signalling_ok(const EmpiricalModel& m) {
    const size_t contexts = m.context_count();
    for (size_t a = 0; a < contexts; ++a) {
        const auto ca = m.context_choice(a);
        for (size_t b = a + 1; b < contexts; ++b) {
            const auto cb = m.context_choice(b);
            std::vector<uint32_t> shared;
            for (uint32_t p = 0; p < m.parties(); ++p) {
                if (ca[p] == cb[p]) {
                    shared.push_back(p);
                }
            }
            if (shared.empty()) {
                continue;
            }
            if (m.marginal(a, shared) != m.marginal(b, shared)) {
                return false;
            }
        }
    }
    return true;
}

XorTheory xor_theory_of_model(const EmpiricalModel& m) {
    XorTheory theory;
    theory.num_vars = m.num_labels();
    theory.var_names = m.label_names();

    std::set<XorEquation> seen;
    // Walk every sub-context: per party a setting or "absent" (radix+1).
    std::vector<uint32_t> digits(m.parties(), 0);
    const uint32_t p = m.parties();
    for (;;) {
        std::vector<uint32_t> present;
        for (uint32_t q = 0; q < p; ++q) {
            if (digits[q] < m.settings[q].size()) {
                present.push_back(q);
            }
        }
        if (!present.empty()) {
            // Any extension gives the same marginal for no-signalling models;
            // use setting 0 for absent parties.
            size_t ci = 0;
            for (uint32_t q = 0; q < p; ++q) {
                const uint32_t digit = digits[q] < m.settings[q].size() ? digits[q] : 0;
                ci = ci * m.settings[q].size() + digit;
            }
            const auto marg = m.marginal(ci, present);
            int parity = -1;
            bool uniform = true;
            for (size_t out = 0; out < marg.size(); ++out) {
                if (marg[out] == 0) {
                    continue;
                }
                const int par = std::popcount(out) & 1;
                if (parity < 0) {
                    parity = par;
                } else if (parity != par) {
                    uniform = false;
                    break;
                }
            }
            if (uniform && parity >= 0) {
                XorEquation eq;
                for (uint32_t q : present) {
                    eq.support.push_back(m.label_id(q, digits[q]));
                }
                std::sort(eq.support.begin(), eq.support.end());
                eq.rhs = parity == 1;
                seen.insert(eq);
            }
        }
        // Mixed-radix increment over (settings + absent).
        uint32_t q = p;
        while (q-- > 0) {
            if (++digits[q] <= m.settings[q].size()) {
                break;
            }
            digits[q] = 0;
        }
        if (q == uint32_t(-1)) {
            break;
        }
    }
    theory.equations.assign(seen.begin(), seen.end());
    return theory;
}

bool is_strongly_contextual(const EmpiricalModel& m) {
    const uint32_t labels = m.num_labels();
    if (labels > kAssignmentCapBits) {
        throw SizeCapExceeded("assignment search cap is 2^" +
                              std::to_string(kAssignmentCapBits));
    }
    const size_t contexts = m.context_count();
    // Support bitmaps per context make the scan a pure bit crawl.
    std::vector<uint64_t> support(contexts, 0);
    std::vector<std::vector<uint32_t>> ids(contexts);
    for (size_t ci = 0; ci < contexts; ++ci) {
        for (size_t out = 0; out < m.table[ci].size(); ++out) {
            if (m.table[ci][out] != 0) {
                support[ci] |= uint64_t(1) << out;
            }
        }
        const auto choice = m.context_choice(ci);
        for (uint32_t q = 0; q < m.parties(); ++q) {
            ids[ci].push_back(m.label_id(q, choice[q]));
        }
    }
    const uint64_t total = uint64_t(1) << labels;
    for (uint64_t assign = 0; assign < total; ++assign) {
        bool ok = true;
        for (size_t ci = 0; ci < contexts && ok; ++ci) {
            uint64_t out = 0;
            for (uint32_t id : ids[ci]) {
                out = (out << 1) | ((assign >> id) & 1u);
            }
            ok = (support[ci] >> out) & 1u;
        }
        if (ok) {
            return false;
        }
    }
    return true;
}

// ---------------------------------------------------------------------------
// Galois maps

namespace {

struct CRat {
    Rational re, im;

    bool is_zero() const { return re == 0 && im == 0; }
    CRat operator+(const CRat& o) const { return {re + o.re, im + o.im}; }
    CRat operator-(const CRat& o) const { return {re - o.re, im - o.im}; }
    CRat operator*(const CRat& o) const {
        return {re * o.re - im * o.im, re * o.im + im * o.re};
    }
    CRat inverse() const {
        const Rational d = re * re + im * im;
        return {re / d, (-im) / d};
    }
    bool operator==(const CRat&) const = default;
};

using CMatrix = std::vector<std::vector<CRat>>;

// In-place reduced row echelon form; returns the pivot column of each
// surviving row, ascending.
std::vector<size_t> rref(CMatrix& m) {
    std::vector<size_t> pivot_cols;
    if (m.empty()) {
        return pivot_cols;
    }
    const size_t cols = m[0].size();
    size_t row = 0;
    for (size_t col = 0; col < cols && row < m.size(); ++col) {
        size_t sel = row;
        while (sel < m.size() && m[sel][col].is_zero()) {
            ++sel;
        }
        if (sel == m.size()) {
            continue;
        }
        std::swap(m[row], m[sel]);
        const CRat inv = m[row][col].inverse();
        for (size_t c = col; c < cols; ++c) {
            m[row][c] = m[row][c] * inv;
        }
        for (size_t r = 0; r < m.size(); ++r) {
            if (r != row && !m[r][col].is_zero()) {
                const CRat factor = m[r][col];
                for (size_t c = col; c < cols; ++c) {
                    m[r][c] = m[r][c] - factor * m[row][c];
                }
            }
        }
        pivot_cols.push_back(col);
        ++row;
    }
    m.resize(pivot_cols.size());
    return pivot_cols;
}

CRat scalar_to_crat(const ExactScalar& a) {
    const Rational den(BigInt(1) << a.exp2);
    return CRat{Rational(a.re) / den, Rational(a.im) / den};
}

ExactState crat_vector_to_state(uint32_t n, const std::vector<CRat>& v) {
    BigInt common = 1;
    for (const auto& c : v) {
        common = mp::lcm(common, mp::denominator(c.re));
        common = mp::lcm(common, mp::denominator(c.im));
    }
    ExactState out = ExactState::zero_state(n);
    for (size_t i = 0; i < v.size(); ++i) {
        const Rational re = v[i].re * common;
        const Rational im = v[i].im * common;
        out.amp[i] = ExactScalar{mp::numerator(re), mp::numerator(im), 0};
    }
    out.canonicalise();
    return out;
}

// i^t as an exact entry.
CRat unit_phase(uint8_t t) {
    switch (t & 3u) {
        case 0: return {1, 0};
        case 1: return {0, 1};
        case 2: return {-1, 0};
        default: return {0, -1};
    }
}

}  // namespace

std::vector<ExactState> stabilised_subspace(uint32_t n,
                                            const std::vector<PauliElement>& elems,
                                            uint32_t cap) {
    if (n == 0 || n > cap) {
        throw SizeCapExceeded("galois cap is " + std::to_string(cap) + " qubits");
    }
    const size_t dim = size_t(1) << n;
    CMatrix rows;
    for (const auto& p : elems) {
        if (p.n() != n) {
            throw std::invalid_argument("element length differs from qubit count");
        }
        const uint64_t flip = reverse_low_bits(p.x_bits(), n);
        const uint64_t phase_bits = reverse_low_bits(p.z_bits(), n);
        const unsigned y_count = unsigned(std::popcount(p.x_bits() & p.z_bits()));
        for (size_t r = 0; r < dim; ++r) {
            // Row r of (P - I): P maps |c> to i^t |c ^ flip|, so column
            // c = r ^ flip contributes the phase of that basis action.
            std::vector<CRat> row(dim, CRat{0, 0});
            const size_t c = r ^ flip;
            const uint8_t t = uint8_t(
                (p.phase_exp() + y_count + 2u * unsigned(std::popcount(phase_bits & c))) &
                3u);
            row[c] = row[c] + unit_phase(t);
            row[r] = row[r] - CRat{1, 0};
            bool nonzero = false;
            for (const auto& entry : row) {
                if (!entry.is_zero()) {
                    nonzero = true;
                    break;
                }
            }
            if (nonzero) {
                rows.push_back(std::move(row));
            }
        }
    }
    if (rows.empty()) {
        // No constraints: the whole space, standard basis.
        std::vector<ExactState> basis;
        for (size_t i = 0; i < dim; ++i) {
            basis.push_back(ExactState::basis(n, i));
        }
        return basis;
    }
    const std::vector<size_t> pivots = rref(rows);
    std::vector<bool> is_pivot(dim, false);
    for (size_t c : pivots) {
        is_pivot[c] = true;
    }
    std::vector<ExactState> basis;
    for (size_t free = 0; free < dim; ++free) {
        if (is_pivot[free]) {
            continue;
        }
        std::vector<CRat> v(dim, CRat{0, 0});
        v[free] = CRat{1, 0};
        for (size_t r = 0; r < pivots.size(); ++r) {
            v[pivots[r]] = CRat{0, 0} - rows[r][free];
        }
        basis.push_back(crat_vector_to_state(n, v));
    }
    return basis;
}

std::vector<PauliElement> isotropy_group(uint32_t n,
                                         const std::vector<ExactState>& basis,
                                         uint32_t cap) {
    if (n == 0 || n > cap) {
        throw SizeCapExceeded("galois cap is " + std::to_string(cap) + " qubits");
    }
    std::vector<PauliElement> out;
    const uint64_t words = uint64_t(1) << (2 * n);
    for (uint64_t code = 0; code < words; ++code) {
        std::vector<PauliLetter> letters(n);
        uint64_t c = code;
        for (uint32_t q = n; q-- > 0;) {
            letters[q] = PauliLetter(c & 3u);
            c >>= 2;
        }
        for (uint8_t t = 0; t < 4; ++t) {
            const PauliElement p = PauliElement::from_letters(letters, t);
            bool fixes = true;
            for (const auto& v : basis) {
                if (!(apply_pauli(p, v) == v)) {
                    fixes = false;
                    break;
                }
            }
            if (fixes) {
                out.push_back(p);
            }
        }
    }
    return out;
}

bool subspace_contains(const std::vector<ExactState>& basis, const ExactState& v) {
    if (v.is_zero()) {
        return true;
    }
    if (basis.empty()) {
        return false;
    }
    const size_t dim = v.amp.size();
    CMatrix rows;
    for (const auto& b : basis) {
        std::vector<CRat> row(dim);
        for (size_t i = 0; i < dim; ++i) {
            row[i] = scalar_to_crat(b.amp[i]);
        }
        rows.push_back(std::move(row));
    }
    const std::vector<size_t> pivots = rref(rows);
    std::vector<CRat> residue(dim);
    for (size_t i = 0; i < dim; ++i) {
        residue[i] = scalar_to_crat(v.amp[i]);
    }
    for (size_t r = 0; r < pivots.size(); ++r) {
        const CRat factor = residue[pivots[r]];
        if (factor.is_zero()) {
            continue;
        }
        for (size_t c = 0; c < dim; ++c) {
            residue[c] = residue[c] - factor * rows[r][c];
        }
    }
    for (const auto& entry : residue) {
        if (!entry.is_zero()) {
            return false;
        }
    }
    return true;
}

}  // namespace avn
