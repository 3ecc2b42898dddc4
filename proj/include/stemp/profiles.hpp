#ifndef STEMP_PROFILES_HPP
#define STEMP_PROFILES_HPP

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "stemp/rational.hpp"
#include "stemp/sequence.hpp"
#include "stemp/stem.hpp"

namespace stemp {

// Which vertex pipeline a profile drives. Custom uses the same plain-stem
// pipeline as Protein.
enum class Family { Protein, Trna, Rrna5s, Custom };

std::string_view to_string(Family f);
Family parse_family(std::string_view text);

struct HelixSpec {
    std::string name;
    std::vector<GapPattern> patterns;
    std::optional<Interval> sl_bounds;

    friend bool operator==(const HelixSpec&, const HelixSpec&) = default;
};

// Outer helix enclosing inner helix, filtered by d_outer / (l_outer + l_inner).
struct DomainSpec {
    std::string name;
    std::string outer;
    std::string inner;
    Interval gsl_bounds;

    friend bool operator==(const DomainSpec&, const DomainSpec&) = default;
};

struct AcceptorSpec {
    Rational asl_max;

    friend bool operator==(const AcceptorSpec&, const AcceptorSpec&) = default;
};

struct ProfileConfig {
    std::string name;
    Family family = Family::Custom;
    PairingRule pairing;
    int min_length = 2;
    std::optional<Interval> sl_bounds;
    std::optional<Interval> d_bounds;
    std::optional<AcceptorSpec> acceptor;
    bool partial_stems = false;
    bool use_gsl = true;
    std::vector<HelixSpec> helices;
    std::vector<DomainSpec> domains;
    std::vector<std::string> notes;

    const HelixSpec* helix(std::string_view name) const;
    // Throws std::invalid_argument describing the first problem found.
    void validate() const;

    friend bool operator==(const ProfileConfig&, const ProfileConfig&) = default;
};

// (len - d + 2l - 2) / l for a stem spanning more than half the sequence.
// Throws NotAcceptorCandidate when 2d <= len.
Rational acceptor_sl(const Stem& s, std::size_t sequence_length);

std::vector<Stem> trna_vertices(const Sequence& seq, const ProfileConfig& cfg);

// Candidates for one helix: every pattern laid down at every (i, j), kept when
// d / l is within the helix bounds, tagged with the helix name.
std::vector<Stem> rrna5s_helix_candidates(const Sequence& seq, const HelixSpec& spec, const PairingRule& rule);

struct DomainCandidate {
    Stem outer;
    Stem inner;
    Stem merged;  // i, j, d of outer; l = l_outer + l_inner; sl = GSL
    Rational gsl;
};

std::vector<DomainCandidate> assemble_domains(const std::vector<Stem>& outer, const std::vector<Stem>& inner,
                                              const DomainSpec& spec);

// Vertex list handed to build_stem_graph, in canonical order.
std::vector<Stem> build_profile_vertices(const Sequence& seq, const ProfileConfig& cfg);
StemGraph build_profile_graph(const Sequence& seq, const ProfileConfig& cfg);

}  // namespace stemp

#endif  // STEMP_PROFILES_HPP
