#include "avn/pauli.hpp"

#include <cctype>

namespace avn {

PauliElement PauliElement::from_letters(const std::vector<PauliLetter>& letters,
                                        uint8_t phase_exp) {
    if (letters.empty() || letters.size() > kMaxQubits) {
        throw std::invalid_argument("pauli word length must be in [1, 64]");
    }
    uint64_t x = 0;
    uint64_t z = 0;
    for (size_t i = 0; i < letters.size(); ++i) {
        auto [xb, zb] = bits_from_letter(letters[i]);
        x |= uint64_t(xb) << i;
        z |= uint64_t(zb) << i;
    }
    return PauliElement(uint32_t(letters.size()), uint8_t(phase_exp & 3u), x, z);
}

PauliElement PauliElement::single(uint32_t n, uint32_t qubit, PauliLetter p,
                                  uint8_t phase_exp) {
    if (qubit >= n) {
        throw std::invalid_argument("qubit index out of range");
    }
    auto [xb, zb] = bits_from_letter(p);
    return PauliElement(n, uint8_t(phase_exp & 3u), uint64_t(xb) << qubit,
                        uint64_t(zb) << qubit);
}

PauliElement PauliElement::parse(std::string_view text) {
    size_t pos = 0;
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) {
        ++pos;
    }
    size_t end = text.size();
    while (end > pos && std::isspace(static_cast<unsigned char>(text[end - 1]))) {
        --end;
    }
    text = text.substr(pos, end - pos);

    uint8_t phase = 0;
    size_t i = 0;
    if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
        if (text[i] == '-') {
            phase = 2;
        }
        ++i;
    }
    if (i < text.size() && (text[i] == 'i' && i + 1 < text.size())) {
        // 'i' is a phase only when letters follow; a bare trailing 'i' would
        // be ambiguous and is rejected below with the letters.
        phase = uint8_t((phase + 1) & 3u);
        ++i;
    }
    std::vector<PauliLetter> letters;
    for (; i < text.size(); ++i) {
        switch (std::toupper(static_cast<unsigned char>(text[i]))) {
            case 'I': letters.push_back(PauliLetter::I); break;
            case 'X': letters.push_back(PauliLetter::X); break;
            case 'Y': letters.push_back(PauliLetter::Y); break;
            case 'Z': letters.push_back(PauliLetter::Z); break;
            default:
                throw std::invalid_argument("bad pauli letter in \"" + std::string(text) +
                                            "\"");
        }
    }
    if (letters.empty()) {
        throw std::invalid_argument("empty pauli word in \"" + std::string(text) + "\"");
    }
    return from_letters(letters, phase);
}

std::string PauliElement::str() const {
    static constexpr const char* prefix[4] = {"+", "i", "-", "-i"};
    std::string out = prefix[phase_];
    out.reserve(out.size() + n_);
    for (uint32_t i = 0; i < n_; ++i) {
        out.push_back(letter_char(letter(i)));
    }
    return out;
}

std::vector<PauliElement> parse_pauli_list(std::string_view text) {
    std::vector<PauliElement> out;
    size_t start = 0;
    while (start <= text.size()) {
        size_t comma = text.find(',', start);
        if (comma == std::string_view::npos) {
            comma = text.size();
        }
        std::string_view piece = text.substr(start, comma - start);
        bool blank = true;
        for (char c : piece) {
            if (!std::isspace(static_cast<unsigned char>(c))) {
                blank = false;
                break;
            }
        }
        if (!blank) {
            out.push_back(PauliElement::parse(piece));
        }
        if (comma == text.size()) {
            break;
        }
        start = comma + 1;
    }
    return out;
}

}  // namespace avn
