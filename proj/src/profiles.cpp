#include "stemp/profiles.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "stemp/error.hpp"

namespace stemp {

std::string_view to_string(Family f) {
    switch (f) {
        case Family::Protein:
            return "protein";
        case Family::Trna:
            return "trna";
        case Family::Rrna5s:
            return "rrna5s";
        case Family::Custom:
            return "custom";
    }
    return "custom";
}

Family parse_family(std::string_view text) {
    if (text == "protein") return Family::Protein;
    if (text == "trna") return Family::Trna;
    if (text == "rrna5s") return Family::Rrna5s;
    if (text == "custom") return Family::Custom;
    throw std::invalid_argument("unknown profile family '" + std::string(text) + "'");
}

const HelixSpec* ProfileConfig::helix(std::string_view helix_name) const {
    for (const auto& h : helices) {
        if (h.name == helix_name) return &h;
    }
    return nullptr;
}

void ProfileConfig::validate() const {
    auto bad = [&](const std::string& what) { throw std::invalid_argument("profile '" + name + "': " + what); };
    if (min_length < 1) bad("min_length must be >= 1");
    if (sl_bounds && !sl_bounds->well_ordered()) bad("sl bounds out of order");
    if (d_bounds && !d_bounds->well_ordered()) bad("d bounds out of order");
    if (family != Family::Rrna5s && (!helices.empty() || !domains.empty())) {
        bad("helix and domain specs are only meaningful for the rrna5s family");
    }
    if (family == Family::Rrna5s && helices.empty()) bad("rrna5s profile needs helix specs");
    std::set<std::string> names;
    for (const auto& h : helices) {
        if (!names.insert(h.name).second) bad("duplicate helix '" + h.name + "'");
        if (h.patterns.empty()) bad("helix '" + h.name + "' has no patterns");
        if (h.sl_bounds && !h.sl_bounds->well_ordered()) bad("helix '" + h.name + "' sl bounds out of order");
    }
    for (const auto& d : domains) {
        if (d.outer == d.inner) bad("domain '" + d.name + "' uses the same helix twice");
        if (!helix(d.outer) || !helix(d.inner)) bad("domain '" + d.name + "' names an unknown helix");
        if (!d.gsl_bounds.well_ordered()) bad("domain '" + d.name + "' gsl bounds out of order");
    }
}

Rational acceptor_sl(const Stem& s, std::size_t sequence_length) {
    const auto len = static_cast<std::int64_t>(sequence_length);
    if (2 * static_cast<std::int64_t>(s.d) <= len) {
        throw NotAcceptorCandidate("stem (" + std::to_string(s.i) + "," + std::to_string(s.j) +
                                   ") does not span more than half of the sequence");
    }
    return Rational(len - s.d + 2 * static_cast<std::int64_t>(s.l) - 2, s.l);
}

namespace {

// Drops innermost pairs while d / l <= lower bound. Returns false when the
// stem falls below the minimum length first.
bool trim_to_lower_bound(Stem& s, const Interval& bounds, int min_length) {
    if (!bounds.lo) return s.l >= min_length;
    while (s.sl <= *bounds.lo) {
        if (s.l - 1 < min_length) return false;
        s.pairs.pop_back();
        s.l = static_cast<int>(s.pairs.size());
        s.sl = Rational(s.d, s.l);
        s.kind = StemKind::Partial;
    }
    return s.l >= min_length;
}

}  // namespace

std::vector<Stem> trna_vertices(const Sequence& seq, const ProfileConfig& cfg) {
    std::vector<Stem> candidates = enumerate_stems(seq, cfg.pairing, cfg.min_length);
    if (cfg.partial_stems) candidates = enumerate_partial_stems(candidates, cfg.min_length);

    const std::size_t len = seq.length();
    std::vector<Stem> out;
    for (Stem s : candidates) {
        if (cfg.acceptor && 2 * static_cast<std::size_t>(s.d) > len) {
            if (acceptor_sl(s, len) <= cfg.acceptor->asl_max) {
                s.tag = "acceptor";
                out.push_back(std::move(s));
            }
            continue;
        }
        if (cfg.sl_bounds && !trim_to_lower_bound(s, *cfg.sl_bounds, cfg.min_length)) continue;
        if (s.l < cfg.min_length) continue;
        if (cfg.sl_bounds && !cfg.sl_bounds->contains(s.sl)) continue;
        if (cfg.d_bounds && !cfg.d_bounds->contains(Rational(s.d))) continue;
        out.push_back(std::move(s));
    }
    canonicalize(out);
    return out;
}

std::vector<Stem> rrna5s_helix_candidates(const Sequence& seq, const HelixSpec& spec, const PairingRule& rule) {
    std::vector<Stem> out;
    for (const auto& pattern : spec.patterns) {
        auto stems = enumerate_gapped_stems(seq, rule, pattern, spec.sl_bounds);
        for (auto& s : stems) {
            s.tag = spec.name;
            out.push_back(std::move(s));
        }
    }
    canonicalize(out);
    return out;
}

std::vector<DomainCandidate> assemble_domains(const std::vector<Stem>& outer, const std::vector<Stem>& inner,
                                              const DomainSpec& spec) {
    std::vector<DomainCandidate> out;
    for (const Stem& m : outer) {
        for (const Stem& n : inner) {
            if (!(m.i < n.i && n.j < m.j)) continue;
            if (!can_coexist(m, n)) continue;
            Rational gsl(m.d, m.l + n.l);
            if (!spec.gsl_bounds.contains(gsl)) continue;
            PairList merged = m.pairs;
            merged.insert(merged.end(), n.pairs.begin(), n.pairs.end());
            out.push_back({m, n, make_stem(std::move(merged), StemKind::Domain, spec.name), gsl});
        }
    }
    return out;
}

namespace {

std::vector<Stem> generic_vertices(const Sequence& seq, const ProfileConfig& cfg) {
    std::vector<Stem> stems = enumerate_stems(seq, cfg.pairing, cfg.min_length);
    if (cfg.partial_stems) stems = enumerate_partial_stems(stems, cfg.min_length);
    std::erase_if(stems, [&](const Stem& s) {
        if (cfg.sl_bounds && !cfg.sl_bounds->contains(s.sl)) return true;
        if (cfg.d_bounds && !cfg.d_bounds->contains(Rational(s.d))) return true;
        return false;
    });
    return stems;
}

std::vector<Stem> rrna5s_vertices(const Sequence& seq, const ProfileConfig& cfg) {
    std::vector<std::vector<Stem>> per_helix;
    per_helix.reserve(cfg.helices.size());
    for (const auto& h : cfg.helices) per_helix.push_back(rrna5s_helix_candidates(seq, h, cfg.pairing));

    auto index_of = [&](const std::string& helix_name) {
        for (std::size_t k = 0; k < cfg.helices.size(); ++k) {
            if (cfg.helices[k].name == helix_name) return k;
        }
        throw std::invalid_argument("unknown helix '" + helix_name + "'");
    };

    std::vector<Stem> out;
    if (!cfg.use_gsl || cfg.domains.empty()) {
        for (auto& stems : per_helix) out.insert(out.end(), stems.begin(), stems.end());
        canonicalize(out);
        return out;
    }
    std::vector<bool> in_domain(cfg.helices.size(), false);
    for (const auto& d : cfg.domains) {
        in_domain[index_of(d.outer)] = true;
        in_domain[index_of(d.inner)] = true;
    }
    for (std::size_t k = 0; k < cfg.helices.size(); ++k) {
        if (!in_domain[k]) out.insert(out.end(), per_helix[k].begin(), per_helix[k].end());
    }
    for (const auto& d : cfg.domains) {
        for (auto& c : assemble_domains(per_helix[index_of(d.outer)], per_helix[index_of(d.inner)], d)) {
            out.push_back(std::move(c.merged));
        }
    }
    canonicalize(out);
    return out;
}

}  // namespace

std::vector<Stem> build_profile_vertices(const Sequence& seq, const ProfileConfig& cfg) {
    cfg.validate();
    std::vector<Stem> out;
    switch (cfg.family) {
        case Family::Protein:
        case Family::Custom:
            out = generic_vertices(seq, cfg);
            break;
        case Family::Trna:
            out = trna_vertices(seq, cfg);
            break;
        case Family::Rrna5s:
            out = rrna5s_vertices(seq, cfg);
            break;
    }
    canonicalize(out);
    return out;
}

StemGraph build_profile_graph(const Sequence& seq, const ProfileConfig& cfg) {
    return build_stem_graph(build_profile_vertices(seq, cfg));
}

}  // namespace stemp
