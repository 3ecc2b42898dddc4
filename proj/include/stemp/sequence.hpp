#ifndef STEMP_SEQUENCE_HPP
#define STEMP_SEQUENCE_HPP

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace stemp {

enum class Base : unsigned char { A, C, G, U };

char to_char(Base b);

struct PairingRule {
    bool wobble = false;  // G-U
    bool uu = false;      // U-U

    static PairingRule canonical() { return {}; }
    static PairingRule with_wobble() { return {true, false}; }

    friend bool operator==(const PairingRule&, const PairingRule&) = default;
};

// A-U and G-C always pair; G-U and U-U only when enabled. Symmetric.
bool is_base_pair(Base a, Base b, const PairingRule& rule);

// Validated nucleotide sequence. Positions are 1-based everywhere in the
// public API: at(1) is the first residue.
class Sequence {
   public:
    Sequence() = default;
    Sequence(std::string id, std::vector<Base> residues);

    const std::string& id() const { return id_; }
    std::size_t length() const { return residues_.size(); }
    const std::vector<Base>& residues() const { return residues_; }

    Base at(int pos) const { return residues_[static_cast<std::size_t>(pos - 1)]; }
    bool pairs(int p, int q, const PairingRule& rule) const { return is_base_pair(at(p), at(q), rule); }

    std::string str() const;

    friend bool operator==(const Sequence&, const Sequence&) = default;

   private:
    std::string id_;
    std::vector<Base> residues_;
};

// Strips whitespace and digits, uppercases, maps T to U. Any other character
// (including alignment gaps) throws InvalidCharacter with its 1-based
// position among the non-stripped characters.
Sequence parse_sequence(std::string_view text, std::string id);

}  // namespace stemp

#endif  // STEMP_SEQUENCE_HPP
