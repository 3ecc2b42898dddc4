#ifndef STEMP_STEM_HPP
#define STEMP_STEM_HPP

#include <compare>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "stemp/graph.hpp"
#include "stemp/rational.hpp"
#include "stemp/sequence.hpp"

namespace stemp {

struct BasePair {
    int p = 0;  // 5' index, 1-based
    int q = 0;  // 3' index, p < q

    friend auto operator<=>(const BasePair&, const BasePair&) = default;
};

using PairList = std::vector<BasePair>;

// Segment/gap layout of a stem, written "l1[n1/n2]l2[n3/n4]l3": l_k
// consecutive pairs, then n_{2k-1} unpaired bases skipped on the 5' strand and
// n_{2k} on the 3' strand before the next segment.
struct GapPattern {
    struct Gap {
        int five_prime = 0;
        int three_prime = 0;
        friend bool operator==(const Gap&, const Gap&) = default;
    };

    std::vector<int> segments;  // at least one, each >= 1
    std::vector<Gap> gaps;      // segments.size() - 1 entries

    int total_length() const;
    bool contiguous() const;

    static GapPattern plain(int length) { return {{length}, {}}; }
    // Throws std::invalid_argument on malformed notation.
    static GapPattern parse(std::string_view text);
    // Recovers the layout of a nested pair list (outer to inner).
    static GapPattern from_pairs(const PairList& pairs);
    std::string str() const;

    friend bool operator==(const GapPattern&, const GapPattern&) = default;
};

enum class StemKind { Plain, Gapped, Partial, Domain };

std::string_view to_string(StemKind kind);

// One vertex of the stem graph: a set of mutually nested base pairs.
// pairs are stored outer to inner; i, j are the outermost pair, d = j - i and
// l = pairs.size(). For a contiguous stem pairs = {(i+t, j-t) : t < l}.
struct Stem {
    int i = 0;
    int j = 0;
    int l = 0;
    int d = 0;
    Rational sl;  // d / l; for domain composites this equals the GSL value
    PairList pairs;
    StemKind kind = StemKind::Plain;
    std::string tag;  // helix or domain label, empty for plain stems

    int innermost_p() const { return pairs.back().p; }
    int innermost_q() const { return pairs.back().q; }
    GapPattern pattern() const { return GapPattern::from_pairs(pairs); }

    friend bool operator==(const Stem&, const Stem&) = default;
};

// Builds a stem from explicit pairs (outer to inner). Fields i, j, l, d, sl
// are derived.
Stem make_stem(PairList pairs, StemKind kind = StemKind::Plain, std::string tag = {});
Stem make_contiguous_stem(int i, int j, int l);
// Lays `pattern` inward from the outer pair (i, j) without checking bases.
PairList lay_pattern(int i, int j, const GapPattern& pattern);

// Canonical vertex order: (i, j, l) ascending, then pair lists.
bool canonical_less(const Stem& a, const Stem& b);
// Sorts canonically and removes stems whose pair set repeats an earlier one.
void canonicalize(std::vector<Stem>& stems);

// Smallest allowed q - p for any pair after the first, i.e. at least one
// unpaired base stays between the strands. The first pair needs q - p >= 3.
inline constexpr int kMinInnerSpan = 2;
inline constexpr int kMinOuterSpan = 3;

Rational stem_loop_score(const Stem& s);

// For every pairing (i, j) with j >= i + 3, extends inward while the next pair
// matches and keeps its strands apart; emits the maximal run when l >= L and,
// if bounds are given, d / l lies inside them.
std::vector<Stem> enumerate_stems(const Sequence& seq, const PairingRule& rule, int min_length,
                                  const std::optional<Interval>& sl_bounds = std::nullopt);

// Every (i, j) where the full pattern can be laid down inward: segment pairs
// must all match and strands must never meet. Candidates whose skips run the
// strands into each other are dropped.
std::vector<Stem> enumerate_gapped_stems(const Sequence& seq, const PairingRule& rule, const GapPattern& pattern,
                                         const std::optional<Interval>& sl_bounds = std::nullopt);

// Closure of `stems` under end trimming (every contiguous window of at least
// `min_length` pairs) and single interior-pair omission for stems of length
// >= min_length + 1. Input stems are kept; duplicates by pair set removed.
std::vector<Stem> enumerate_partial_stems(const std::vector<Stem>& stems, int min_length);

// Edge predicate. With m the stem of smaller i: m before n, n before m, n in
// m's innermost loop, or n's 5' strand in m's loop and its 3' strand past m.
// "Strand end" positions are the innermost pair of each stem, which reduces
// to i + l - 1 and j - l + 1 for contiguous stems.
bool can_coexist(const Stem& a, const Stem& b);

struct StemGraph {
    std::vector<Stem> vertices;
    Adjacency adjacency;

    std::size_t size() const { return vertices.size(); }
    std::size_t edge_count() const { return adjacency.edge_count(); }

    friend bool operator==(const StemGraph&, const StemGraph&) = default;
};

// Canonicalizes the vertex list (sort + pair-set dedupe), then connects every
// co-existable pair.
StemGraph build_stem_graph(std::vector<Stem> vertices);

}  // namespace stemp

#endif  // STEMP_STEM_HPP
