#include "stemp/sequence.hpp"

#include <cctype>

#include "stemp/error.hpp"

namespace stemp {

InvalidCharacter::InvalidCharacter(std::size_t position, char ch, std::string context)
    : ParseError("invalid character '" + std::string(1, ch) + "' at position " + std::to_string(position) +
                 (context.empty() ? "" : " (" + context + ")")),
      position_(position),
      ch_(ch) {}

AsymmetricPair::AsymmetricPair(int i, int j)
    : ParseError("asymmetric pair: " + std::to_string(i) + " claims " + std::to_string(j) + " but " +
                 std::to_string(j) + " does not claim " + std::to_string(i)),
      i_(i),
      j_(j) {}

char to_char(Base b) {
    switch (b) {
        case Base::A:
            return 'A';
        case Base::C:
            return 'C';
        case Base::G:
            return 'G';
        case Base::U:
            return 'U';
    }
    return 'N';
}

bool is_base_pair(Base a, Base b, const PairingRule& rule) {
    if (a > b) std::swap(a, b);
    // Ordered A < C < G < U.
    if (a == Base::A && b == Base::U) return true;
    if (a == Base::C && b == Base::G) return true;
    if (a == Base::G && b == Base::U) return rule.wobble;
    if (a == Base::U && b == Base::U) return rule.uu;
    return false;
}

Sequence::Sequence(std::string id, std::vector<Base> residues) : id_(std::move(id)), residues_(std::move(residues)) {}

std::string Sequence::str() const {
    std::string out;
    out.reserve(residues_.size());
    for (Base b : residues_) out.push_back(to_char(b));
    return out;
}

Sequence parse_sequence(std::string_view text, std::string id) {
    std::vector<Base> residues;
    residues.reserve(text.size());
    for (char raw : text) {
        auto c = static_cast<unsigned char>(raw);
        if (std::isspace(c) || std::isdigit(c)) continue;
        switch (std::toupper(c)) {
            case 'A':
                residues.push_back(Base::A);
                break;
            case 'C':
                residues.push_back(Base::C);
                break;
            case 'G':
                residues.push_back(Base::G);
                break;
            case 'U':
            case 'T':
                residues.push_back(Base::U);
                break;
            default:
                throw InvalidCharacter(residues.size() + 1, raw, id);
        }
    }
    if (residues.empty()) throw ParseError("empty sequence" + (id.empty() ? std::string() : " '" + id + "'"));
    return Sequence(std::move(id), std::move(residues));
}

}  // namespace stemp
