#ifndef STEMP_TESTS_FIXTURES_HPP
#define STEMP_TESTS_FIXTURES_HPP

#include <algorithm>
#include <string>

#include "stemp/eval.hpp"
#include "stemp/sequence.hpp"
#include "stemp/stem.hpp"

namespace fixtures {

inline const char* const k2quxText = "GGCAC AGAAG AUAUG GCUUC GUGCC";

inline stemp::Sequence seq_2qux() { return stemp::parse_sequence(k2quxText, "2QUX"); }

// The folding picked for 2QUX: v1 = (1,25,5) and v4 = (7,20,4).
inline stemp::ReferenceStructure reference_2qux() {
    stemp::ReferenceStructure ref;
    ref.id = "2QUX";
    ref.length = 25;
    ref.format = "pairs";
    for (int t = 0; t < 5; ++t) ref.pairs.push_back({1 + t, 25 - t});
    for (int t = 0; t < 4; ++t) ref.pairs.push_back({7 + t, 20 - t});
    std::sort(ref.pairs.begin(), ref.pairs.end());
    ref.bases = seq_2qux().str();
    return ref;
}

inline const char* const k2quxDotBracket = "(((((.((((......)))))))))";

}  // namespace fixtures

#endif  // STEMP_TESTS_FIXTURES_HPP
