#include "stemp/stem.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace stemp {

int GapPattern::total_length() const {
    int total = 0;
    for (int s : segments) total += s;
    return total;
}

bool GapPattern::contiguous() const {
    return std::all_of(gaps.begin(), gaps.end(), [](const Gap& g) { return g.five_prime == 0 && g.three_prime == 0; });
}

GapPattern GapPattern::parse(std::string_view text) {
    GapPattern out;
    std::size_t pos = 0;
    auto fail = [&]() { throw std::invalid_argument("bad stem pattern: '" + std::string(text) + "'"); };
    auto skip_spaces = [&]() {
        while (pos < text.size() && text[pos] == ' ') ++pos;
    };
    auto number = [&]() {
        skip_spaces();
        std::size_t start = pos;
        int v = 0;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
            v = v * 10 + (text[pos] - '0');
            ++pos;
        }
        if (pos == start) fail();
        skip_spaces();
        return v;
    };
    auto expect = [&](char c) {
        skip_spaces();
        if (pos >= text.size() || text[pos] != c) fail();
        ++pos;
    };
    out.segments.push_back(number());
    while (pos < text.size()) {
        expect('[');
        Gap g;
        g.five_prime = number();
        expect('/');
        g.three_prime = number();
        expect(']');
        out.gaps.push_back(g);
        out.segments.push_back(number());
    }
    for (int s : out.segments) {
        if (s < 1) fail();
    }
    return out;
}

GapPattern GapPattern::from_pairs(const PairList& pairs) {
    GapPattern out;
    if (pairs.empty()) return out;
    out.segments.push_back(1);
    for (std::size_t k = 1; k < pairs.size(); ++k) {
        int n5 = pairs[k].p - pairs[k - 1].p - 1;
        int n3 = pairs[k - 1].q - pairs[k].q - 1;
        if (n5 == 0 && n3 == 0) {
            ++out.segments.back();
        } else {
            out.gaps.push_back({n5, n3});
            out.segments.push_back(1);
        }
    }
    return out;
}

std::string GapPattern::str() const {
    std::string out;
    for (std::size_t k = 0; k < segments.size(); ++k) {
        if (k > 0) {
            out += "[" + std::to_string(gaps[k - 1].five_prime) + "/" + std::to_string(gaps[k - 1].three_prime) + "]";
        }
        out += std::to_string(segments[k]);
    }
    return out;
}

std::string_view to_string(StemKind kind) {
    switch (kind) {
        case StemKind::Plain:
            return "plain";
        case StemKind::Gapped:
            return "gapped";
        case StemKind::Partial:
            return "partial";
        case StemKind::Domain:
            return "domain";
    }
    return "plain";
}

Stem make_stem(PairList pairs, StemKind kind, std::string tag) {
    if (pairs.empty()) throw std::invalid_argument("stem needs at least one pair");
    Stem s;
    s.i = pairs.front().p;
    s.j = pairs.front().q;
    s.l = static_cast<int>(pairs.size());
    s.d = s.j - s.i;
    s.sl = Rational(s.d, s.l);
    s.pairs = std::move(pairs);
    s.kind = kind;
    s.tag = std::move(tag);
    return s;
}

Stem make_contiguous_stem(int i, int j, int l) {
    PairList pairs;
    pairs.reserve(static_cast<std::size_t>(l));
    for (int t = 0; t < l; ++t) pairs.push_back({i + t, j - t});
    return make_stem(std::move(pairs));
}

PairList lay_pattern(int i, int j, const GapPattern& pattern) {
    PairList pairs;
    pairs.reserve(static_cast<std::size_t>(pattern.total_length()));
    int p = i;
    int q = j;
    for (std::size_t seg = 0; seg < pattern.segments.size(); ++seg) {
        if (seg > 0) {
            p += 1 + pattern.gaps[seg - 1].five_prime;
            q -= 1 + pattern.gaps[seg - 1].three_prime;
        }
        for (int t = 0; t < pattern.segments[seg]; ++t) {
            if (t > 0) {
                ++p;
                --q;
            }
            pairs.push_back({p, q});
        }
    }
    return pairs;
}

bool canonical_less(const Stem& a, const Stem& b) {
    if (a.i != b.i) return a.i < b.i;
    if (a.j != b.j) return a.j < b.j;
    if (a.l != b.l) return a.l < b.l;
    return a.pairs < b.pairs;
}

void canonicalize(std::vector<Stem>& stems) {
    std::stable_sort(stems.begin(), stems.end(), canonical_less);
    stems.erase(std::unique(stems.begin(), stems.end(), [](const Stem& a, const Stem& b) { return a.pairs == b.pairs; }),
                stems.end());
}

Rational stem_loop_score(const Stem& s) { return Rational(s.d, s.l); }

std::vector<Stem> enumerate_stems(const Sequence& seq, const PairingRule& rule, int min_length,
                                  const std::optional<Interval>& sl_bounds) {
    if (min_length < 1) throw std::invalid_argument("minimum stem length must be positive");
    const int n = static_cast<int>(seq.length());
    std::vector<Stem> out;
    for (int i = 1; i <= n; ++i) {
        for (int j = i + kMinOuterSpan; j <= n; ++j) {
            if (!seq.pairs(i, j, rule)) continue;
            int l = 1;
            while ((j - l) - (i + l) >= kMinInnerSpan && seq.pairs(i + l, j - l, rule)) ++l;
            if (l < min_length) continue;
            if (sl_bounds && !sl_bounds->contains(Rational(j - i, l))) continue;
            out.push_back(make_contiguous_stem(i, j, l));
        }
    }
    return out;
}

std::vector<Stem> enumerate_gapped_stems(const Sequence& seq, const PairingRule& rule, const GapPattern& pattern,
                                         const std::optional<Interval>& sl_bounds) {
    if (pattern.segments.empty() || pattern.gaps.size() + 1 != pattern.segments.size()) {
        throw std::invalid_argument("malformed gap pattern");
    }
    const int n = static_cast<int>(seq.length());
    const int total = pattern.total_length();
    const StemKind kind = pattern.contiguous() ? StemKind::Plain : StemKind::Gapped;
    std::vector<Stem> out;
    PairList pairs;
    pairs.reserve(static_cast<std::size_t>(total));
    for (int i = 1; i <= n; ++i) {
        for (int j = i + kMinOuterSpan; j <= n; ++j) {
            if (sl_bounds && !sl_bounds->contains(Rational(j - i, total))) continue;
            pairs.clear();
            int p = i;
            int q = j;
            bool ok = true;
            for (std::size_t seg = 0; ok && seg < pattern.segments.size(); ++seg) {
                if (seg > 0) {
                    p += 1 + pattern.gaps[seg - 1].five_prime;
                    q -= 1 + pattern.gaps[seg - 1].three_prime;
                }
                for (int t = 0; t < pattern.segments[seg]; ++t) {
                    if (t > 0) {
                        ++p;
                        --q;
                    }
                    if (!pairs.empty() && q - p < kMinInnerSpan) {
                        ok = false;
                        break;
                    }
                    if (!seq.pairs(p, q, rule)) {
                        ok = false;
                        break;
                    }
                    pairs.push_back({p, q});
                }
            }
            if (ok) out.push_back(make_stem(pairs, kind));
        }
    }
    return out;
}

std::vector<Stem> enumerate_partial_stems(const std::vector<Stem>& stems, int min_length) {
    std::vector<Stem> out = stems;
    for (const Stem& s : stems) {
        const int l = s.l;
        for (int outer = 0; l - outer >= min_length; ++outer) {
            for (int inner = 0; l - outer - inner >= min_length; ++inner) {
                if (outer == 0 && inner == 0) continue;
                PairList window(s.pairs.begin() + outer, s.pairs.end() - inner);
                out.push_back(make_stem(std::move(window), StemKind::Partial, s.tag));
            }
        }
        if (l >= min_length + 1) {
            for (int skip = 1; skip + 1 < l; ++skip) {
                PairList gapped;
                gapped.reserve(static_cast<std::size_t>(l - 1));
                for (int t = 0; t < l; ++t) {
                    if (t != skip) gapped.push_back(s.pairs[static_cast<std::size_t>(t)]);
                }
                out.push_back(make_stem(std::move(gapped), StemKind::Partial, s.tag));
            }
        }
    }
    canonicalize(out);
    return out;
}

bool can_coexist(const Stem& a, const Stem& b) {
    if (a.i == b.i) return false;
    const Stem& m = a.i < b.i ? a : b;
    const Stem& n = a.i < b.i ? b : a;
    if (m.j < n.i || n.j < m.i) return true;
    const int m_in5 = m.innermost_p();
    const int m_in3 = m.innermost_q();
    if (m_in5 < n.i && n.j < m_in3) return true;
    return m_in5 < n.i && n.innermost_p() < m_in3 && m.j < n.innermost_q();
}

StemGraph build_stem_graph(std::vector<Stem> vertices) {
    canonicalize(vertices);
    StemGraph g;
    g.adjacency = Adjacency(vertices.size());
    for (std::size_t u = 0; u < vertices.size(); ++u) {
        for (std::size_t v = u + 1; v < vertices.size(); ++v) {
            if (can_coexist(vertices[u], vertices[v])) g.adjacency.connect(u, v);
        }
    }
    g.vertices = std::move(vertices);
    return g;
}

}  // namespace stemp
