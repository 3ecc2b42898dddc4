#include "stemp/io.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

#include "stemp/error.hpp"

#ifndef STEMP_DEFAULT_PROFILE_DIR
#define STEMP_DEFAULT_PROFILE_DIR "profiles"
#endif

namespace stemp {

namespace fs = std::filesystem;

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

std::vector<std::string> split_ws(std::string_view line) {
    std::vector<std::string> out;
    std::istringstream in{std::string(line)};
    std::string tok;
    while (in >> tok) out.push_back(tok);
    return out;
}

bool parse_int(std::string_view s, long long& out) {
    if (s.empty()) return false;
    std::size_t k = 0;
    if (s[0] == '-' || s[0] == '+') k = 1;
    if (k == s.size()) return false;
    for (std::size_t t = k; t < s.size(); ++t) {
        if (!std::isdigit(static_cast<unsigned char>(s[t]))) return false;
    }
    try {
        out = std::stoll(std::string(s));
    } catch (const std::out_of_range&) {
        return false;
    }
    return true;
}

bool sequence_char(char c) {
    switch (std::toupper(static_cast<unsigned char>(c))) {
        case 'A':
        case 'C':
        case 'G':
        case 'U':
        case 'T':
            return true;
        default:
            return std::isspace(static_cast<unsigned char>(c)) || std::isdigit(static_cast<unsigned char>(c));
    }
}

std::ifstream open_input(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path.string() + "'");
    return in;
}

}  // namespace

std::string read_text_file(const fs::path& path) {
    std::ifstream in = open_input(path);
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) throw IoError("error reading '" + path.string() + "'");
    return buf.str();
}

// ---- FASTA ---------------------------------------------------------------

std::vector<Sequence> parse_fasta(std::istream& in, std::string_view source) {
    std::vector<Sequence> out;
    std::string id;
    std::string residues;
    std::size_t position = 0;  // stripped characters seen so far in the record
    bool in_record = false;
    std::string line;
    std::size_t line_no = 0;

    auto flush = [&]() {
        if (!in_record) return;
        out.push_back(parse_sequence(residues, id));
    };

    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (!line.empty() && line[0] == '>') {
            flush();
            std::string_view header = trim(std::string_view(line).substr(1));
            id = std::string(header.substr(0, std::min(header.size(), header.find_first_of(" \t"))));
            if (id.empty()) id = "record" + std::to_string(out.size() + 1);
            residues.clear();
            position = 0;
            in_record = true;
            continue;
        }
        if (trim(line).empty() || line[0] == ';') continue;
        if (!in_record) {
            throw ParseError(std::string(source) + ":" + std::to_string(line_no) +
                             ": sequence data before the first '>' header");
        }
        for (std::size_t col = 0; col < line.size(); ++col) {
            const char c = line[col];
            if (!sequence_char(c)) {
                throw InvalidCharacter(position + 1, c,
                                       "record '" + id + "', " + std::string(source) + " line " +
                                           std::to_string(line_no) + " column " + std::to_string(col + 1));
            }
            if (!std::isspace(static_cast<unsigned char>(c)) && !std::isdigit(static_cast<unsigned char>(c))) {
                ++position;
            }
        }
        residues += line;
    }
    if (in.bad()) throw IoError("error reading " + std::string(source));
    flush();
    return out;
}

std::vector<Sequence> read_fasta(const fs::path& path) {
    std::ifstream in = open_input(path);
    return parse_fasta(in, path.string());
}

// ---- CT ------------------------------------------------------------------

ReferenceStructure parse_ct(std::istream& in, std::string_view source) {
    std::vector<std::string> lines;
    for (std::string line; std::getline(in, line);) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        lines.push_back(line);
    }
    if (in.bad()) throw IoError("error reading " + std::string(source));

    auto is_row = [](const std::vector<std::string>& tok) {
        long long v = 0;
        return tok.size() >= 6 && parse_int(tok[0], v) && parse_int(tok[2], v) && parse_int(tok[3], v) &&
               parse_int(tok[4], v) && parse_int(tok[5], v);
    };

    // Locate the first body row (index 1); a header may precede it.
    std::size_t body = lines.size();
    for (std::size_t k = 0; k < lines.size(); ++k) {
        auto tok = split_ws(lines[k]);
        if (is_row(tok) && tok[0] == "1") {
            body = k;
            break;
        }
    }
    if (body == lines.size()) throw ParseError(std::string(source) + ": no connectivity-table rows found");

    ReferenceStructure ref;
    ref.format = "ct";
    std::optional<long long> declared;
    for (std::size_t k = body; k-- > 0;) {
        auto tok = split_ws(lines[k]);
        if (tok.empty()) continue;
        long long n = 0;
        if (parse_int(tok[0], n)) {
            declared = n;
            std::string_view rest = trim(lines[k]);
            rest.remove_prefix(std::min(rest.size(), tok[0].size()));
            rest = trim(rest);
            // "ENERGY = -12.3  title" style headers: keep the last token as id.
            if (!rest.empty()) ref.id = tok.back();
        }
        break;
    }

    std::vector<int> partner;
    for (std::size_t k = body; k < lines.size(); ++k) {
        auto tok = split_ws(lines[k]);
        if (tok.empty()) continue;
        if (!is_row(tok)) {
            // A second record or trailing text ends the table.
            if (std::isdigit(static_cast<unsigned char>(tok[0][0])) && tok.size() < 6 && !partner.empty()) break;
            throw ParseError(std::string(source) + ":" + std::to_string(k + 1) + ": malformed connectivity row");
        }
        long long index = 0;
        long long pair = 0;
        parse_int(tok[0], index);
        parse_int(tok[4], pair);
        if (index != static_cast<long long>(partner.size()) + 1) {
            if (index == 1) break;  // next record in a multi-structure file
            throw ParseError(std::string(source) + ":" + std::to_string(k + 1) + ": expected row " +
                             std::to_string(partner.size() + 1) + ", found " + tok[0]);
        }
        if (tok[1].size() != 1) {
            throw ParseError(std::string(source) + ":" + std::to_string(k + 1) + ": base column must be one letter");
        }
        ref.bases += static_cast<char>(std::toupper(static_cast<unsigned char>(tok[1][0])));
        partner.push_back(static_cast<int>(pair));
    }

    const auto n = static_cast<int>(partner.size());
    if (declared && *declared != n) {
        throw ParseError(std::string(source) + ": header declares length " + std::to_string(*declared) + " but body has " +
                         std::to_string(n) + " rows");
    }
    ref.length = partner.size();
    for (int i = 1; i <= n; ++i) {
        const int j = partner[static_cast<std::size_t>(i - 1)];
        if (j == 0) continue;
        if (j < 0 || j > n || j == i) {
            throw IndexOutOfRange(std::string(source) + ": row " + std::to_string(i) + " pairs with " +
                                  std::to_string(j) + " outside 1.." + std::to_string(n));
        }
        if (partner[static_cast<std::size_t>(j - 1)] != i) throw AsymmetricPair(i, j);
        if (i < j) ref.pairs.push_back({i, j});
    }
    if (ref.id.empty()) ref.id = fs::path(std::string(source)).stem().string();
    return ref;
}

ReferenceStructure read_ct(const fs::path& path) {
    std::ifstream in = open_input(path);
    ReferenceStructure ref = parse_ct(in, path.string());
    return ref;
}

std::string write_ct(const ReferenceStructure& ref) {
    validate_structure(ref);
    std::vector<int> partner(ref.length, 0);
    for (const auto& bp : ref.pairs) {
        partner[static_cast<std::size_t>(bp.p - 1)] = bp.q;
        partner[static_cast<std::size_t>(bp.q - 1)] = bp.p;
    }
    std::ostringstream out;
    out << ref.length << ' ' << (ref.id.empty() ? "structure" : ref.id) << '\n';
    const auto n = ref.length;
    for (std::size_t k = 0; k < n; ++k) {
        const char base = k < ref.bases.size() ? ref.bases[k] : 'N';
        out << (k + 1) << ' ' << base << ' ' << k << ' ' << (k + 1 == n ? 0 : k + 2) << ' ' << partner[k] << ' '
            << (k + 1) << '\n';
    }
    return out.str();
}

// ---- dot-bracket ---------------------------------------------------------

namespace {

constexpr std::array<std::pair<char, char>, 4> kTiers{{{'(', ')'}, {'[', ']'}, {'{', '}'}, {'<', '>'}}};

bool crosses(const BasePair& a, const BasePair& b) {
    return (a.p < b.p && b.p < a.q && a.q < b.q) || (b.p < a.p && a.p < b.q && b.q < a.q);
}

}  // namespace

std::string write_dot_bracket(std::size_t length, const PairList& pairs) {
    PairList sorted = pairs;
    std::sort(sorted.begin(), sorted.end());
    std::string out(length, '.');
    std::vector<PairList> tiers;
    for (const auto& bp : sorted) {
        if (bp.p < 1 || bp.q > static_cast<int>(length) || bp.p >= bp.q) {
            throw IndexOutOfRange("pair (" + std::to_string(bp.p) + "," + std::to_string(bp.q) +
                                  ") outside sequence of length " + std::to_string(length));
        }
        std::size_t tier = 0;
        while (tier < tiers.size() &&
               std::any_of(tiers[tier].begin(), tiers[tier].end(), [&](const BasePair& o) { return crosses(o, bp); })) {
            ++tier;
        }
        if (tier >= kTiers.size()) {
            throw TooManyLayers("pair (" + std::to_string(bp.p) + "," + std::to_string(bp.q) +
                                ") needs more than four bracket tiers");
        }
        if (tier == tiers.size()) tiers.emplace_back();
        tiers[tier].push_back(bp);
        out[static_cast<std::size_t>(bp.p - 1)] = kTiers[tier].first;
        out[static_cast<std::size_t>(bp.q - 1)] = kTiers[tier].second;
    }
    return out;
}

std::string write_dot_bracket(const Sequence& seq, const PairList& pairs) {
    return write_dot_bracket(seq.length(), pairs);
}

ReferenceStructure parse_dot_bracket(std::string_view text, std::string id) {
    ReferenceStructure ref;
    ref.id = std::move(id);
    ref.format = "dotbracket";
    std::array<std::vector<int>, kTiers.size()> open;
    int pos = 0;
    for (char c : text) {
        if (std::isspace(static_cast<unsigned char>(c))) continue;
        ++pos;
        if (c == '.' || c == '-' || c == ',' || c == ':') continue;
        bool matched = false;
        for (std::size_t t = 0; t < kTiers.size(); ++t) {
            if (c == kTiers[t].first) {
                open[t].push_back(pos);
                matched = true;
            } else if (c == kTiers[t].second) {
                if (open[t].empty()) {
                    throw ParseError("unbalanced '" + std::string(1, c) + "' at position " + std::to_string(pos));
                }
                ref.pairs.push_back({open[t].back(), pos});
                open[t].pop_back();
                matched = true;
            }
        }
        if (!matched) throw InvalidCharacter(static_cast<std::size_t>(pos), c, "dot-bracket");
    }
    for (std::size_t t = 0; t < kTiers.size(); ++t) {
        if (!open[t].empty()) {
            throw ParseError("unclosed '" + std::string(1, kTiers[t].first) + "' at position " +
                             std::to_string(open[t].back()));
        }
    }
    ref.length = static_cast<std::size_t>(pos);
    std::sort(ref.pairs.begin(), ref.pairs.end());
    return ref;
}

// ---- profiles ------------------------------------------------------------

namespace {

Rational rational_from_json(const Json& v, const std::string& field) {
    if (v.is_string()) return Rational::parse(v.get<std::string>());
    if (v.is_number_integer()) return Rational(v.get<std::int64_t>());
    if (v.is_number()) return Rational::parse(v.dump());
    throw ParseError("field '" + field + "' must be a number or a numeric string");
}

std::optional<Interval> interval_from_json(const Json& doc, const char* field) {
    if (!doc.contains(field) || doc[field].is_null()) return std::nullopt;
    const Json& v = doc[field];
    if (!v.is_string()) throw ParseError(std::string("field '") + field + "' must be an interval string like \"[2, 20]\"");
    return Interval::parse(v.get<std::string>());
}

template <typename T>
T get_or(const Json& doc, const char* field, T fallback) {
    if (!doc.contains(field) || doc[field].is_null()) return fallback;
    return doc[field].get<T>();
}

}  // namespace

ProfileConfig profile_from_json(const Json& doc) {
    if (!doc.is_object()) throw ParseError("profile document must be an object");
    ProfileConfig cfg;
    try {
        cfg.name = doc.at("name").get<std::string>();
        cfg.family = parse_family(doc.at("family").get<std::string>());
        if (doc.contains("pairing")) {
            const Json& p = doc["pairing"];
            cfg.pairing.wobble = get_or(p, "wobble", false);
            cfg.pairing.uu = get_or(p, "uu", false);
        }
        cfg.min_length = get_or(doc, "min_length", cfg.min_length);
        cfg.sl_bounds = interval_from_json(doc, "sl_bounds");
        cfg.d_bounds = interval_from_json(doc, "d_bounds");
        if (doc.contains("acceptor") && !doc["acceptor"].is_null()) {
            cfg.acceptor = AcceptorSpec{rational_from_json(doc["acceptor"].at("asl_max"), "acceptor.asl_max")};
        }
        cfg.partial_stems = get_or(doc, "partial_stems", false);
        cfg.use_gsl = get_or(doc, "use_gsl", true);
        for (const Json& h : get_or(doc, "helices", Json::array())) {
            HelixSpec spec;
            spec.name = h.at("name").get<std::string>();
            for (const Json& pat : h.at("patterns")) spec.patterns.push_back(GapPattern::parse(pat.get<std::string>()));
            spec.sl_bounds = interval_from_json(h, "sl_bounds");
            cfg.helices.push_back(std::move(spec));
        }
        for (const Json& d : get_or(doc, "domains", Json::array())) {
            DomainSpec spec;
            spec.name = d.at("name").get<std::string>();
            spec.outer = d.at("outer").get<std::string>();
            spec.inner = d.at("inner").get<std::string>();
            auto gsl = interval_from_json(d, "gsl_bounds");
            if (!gsl) throw ParseError("domain '" + spec.name + "' needs gsl_bounds");
            spec.gsl_bounds = *gsl;
            cfg.domains.push_back(std::move(spec));
        }
        for (const Json& n : get_or(doc, "notes", Json::array())) cfg.notes.push_back(n.get<std::string>());
    } catch (const Json::exception& e) {
        throw ParseError(std::string("profile document: ") + e.what());
    } catch (const std::invalid_argument& e) {
        throw ParseError(std::string("profile document: ") + e.what());
    }
    try {
        cfg.validate();
    } catch (const std::invalid_argument& e) {
        throw ParseError(e.what());
    }
    return cfg;
}

Json profile_to_json(const ProfileConfig& cfg) {
    Json doc;
    doc["name"] = cfg.name;
    doc["family"] = std::string(to_string(cfg.family));
    doc["pairing"] = {{"wobble", cfg.pairing.wobble}, {"uu", cfg.pairing.uu}};
    doc["min_length"] = cfg.min_length;
    if (cfg.sl_bounds) doc["sl_bounds"] = cfg.sl_bounds->str();
    if (cfg.d_bounds) doc["d_bounds"] = cfg.d_bounds->str();
    if (cfg.acceptor) doc["acceptor"] = {{"asl_max", cfg.acceptor->asl_max.str()}};
    doc["partial_stems"] = cfg.partial_stems;
    doc["use_gsl"] = cfg.use_gsl;
    if (!cfg.helices.empty()) {
        Json helices = Json::array();
        for (const auto& h : cfg.helices) {
            Json entry;
            entry["name"] = h.name;
            Json pats = Json::array();
            for (const auto& p : h.patterns) pats.push_back(p.str());
            entry["patterns"] = std::move(pats);
            if (h.sl_bounds) entry["sl_bounds"] = h.sl_bounds->str();
            helices.push_back(std::move(entry));
        }
        doc["helices"] = std::move(helices);
    }
    if (!cfg.domains.empty()) {
        Json domains = Json::array();
        for (const auto& d : cfg.domains) {
            domains.push_back(
                {{"name", d.name}, {"outer", d.outer}, {"inner", d.inner}, {"gsl_bounds", d.gsl_bounds.str()}});
        }
        doc["domains"] = std::move(domains);
    }
    if (!cfg.notes.empty()) doc["notes"] = cfg.notes;
    return doc;
}

ProfileConfig read_profile(const fs::path& path) {
    const std::string text = read_text_file(path);
    Json doc;
    try {
        doc = Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
    return profile_from_json(doc);
}

fs::path profile_dir() {
    if (const char* env = std::getenv("STEMP_PROFILE_DIR"); env != nullptr && *env != '\0') return fs::path(env);
    return fs::path(STEMP_DEFAULT_PROFILE_DIR);
}

ProfileConfig load_profile(std::string_view selector) {
    const fs::path as_path{std::string(selector)};
    const bool looks_like_path = as_path.has_parent_path() || as_path.extension() == ".json";
    if (looks_like_path) return read_profile(as_path);
    const fs::path shipped = profile_dir() / (std::string(selector) + ".json");
    if (!fs::exists(shipped)) {
        throw IoError("unknown profile '" + std::string(selector) + "' (looked for " + shipped.string() + ")");
    }
    return read_profile(shipped);
}

// ---- reports -------------------------------------------------------------

Json report_to_json(const PredictionReport& report, bool include_timing) {
    Json doc;
    doc["format"] = "stemp-report";
    doc["version"] = 1;
    doc["sequence_id"] = report.sequence_id;
    doc["profile"] = report.profile;
    doc["sequence_length"] = report.sequence_length;
    doc["vertex_count"] = report.vertex_count;
    doc["edge_count"] = report.edge_count;
    doc["prediction_count"] = report.predictions.size();
    Json preds = Json::array();
    for (const auto& p : report.predictions) {
        Json entry;
        entry["rank_scr"] = p.scr;
        entry["rank_dr"] = p.dr;
        entry["multiplicity"] = p.multiplicity;
        entry["energy"] = p.energy;
        Json verts = Json::array();
        for (std::size_t v : p.vertices) verts.push_back(v + 1);
        entry["vertices"] = std::move(verts);
        Json pairs = Json::array();
        for (const auto& bp : p.pairs) pairs.push_back({bp.p, bp.q});
        entry["pairs"] = std::move(pairs);
        try {
            entry["dot_bracket"] = write_dot_bracket(report.sequence_length, p.pairs);
        } catch (const TooManyLayers&) {
            entry["dot_bracket"] = nullptr;
        }
        preds.push_back(std::move(entry));
    }
    doc["predictions"] = std::move(preds);
    if (include_timing) doc["timing"] = {{"seconds", report.seconds}};
    return doc;
}

PredictionReport report_from_json(const Json& doc) {
    PredictionReport report;
    try {
        if (doc.value("format", std::string()) != "stemp-report") throw ParseError("not a stemp report document");
        report.sequence_id = doc.at("sequence_id").get<std::string>();
        report.profile = doc.at("profile").get<std::string>();
        report.sequence_length = doc.at("sequence_length").get<std::size_t>();
        report.vertex_count = doc.at("vertex_count").get<std::size_t>();
        report.edge_count = doc.at("edge_count").get<std::size_t>();
        for (const Json& entry : doc.at("predictions")) {
            FoldPrediction p;
            p.scr = entry.at("rank_scr").get<int>();
            p.dr = entry.at("rank_dr").get<int>();
            p.multiplicity = entry.at("multiplicity").get<int>();
            p.energy = entry.at("energy").get<int>();
            for (const Json& v : entry.at("vertices")) {
                const auto k = v.get<std::size_t>();
                if (k == 0) throw ParseError("vertex ids in reports are 1-based");
                p.vertices.push_back(k - 1);
            }
            for (const Json& bp : entry.at("pairs")) p.pairs.push_back({bp.at(0).get<int>(), bp.at(1).get<int>()});
            report.predictions.push_back(std::move(p));
        }
        if (doc.contains("timing")) report.seconds = doc["timing"].value("seconds", 0.0);
    } catch (const Json::exception& e) {
        throw ParseError(std::string("report document: ") + e.what());
    }
    return report;
}

// ---- stem-graph dumps ----------------------------------------------------

namespace {

StemKind parse_kind(std::string_view text) {
    for (StemKind k : {StemKind::Plain, StemKind::Gapped, StemKind::Partial, StemKind::Domain}) {
        if (to_string(k) == text) return k;
    }
    throw ParseError("unknown stem kind '" + std::string(text) + "'");
}

Stem stem_from_fields(int i, int j, int l, int d, const Rational& sl, const GapPattern& pattern, StemKind kind,
                      std::string tag) {
    if (pattern.total_length() != l) throw ParseError("stem pattern length disagrees with l");
    if (j - i != d) throw ParseError("stem span disagrees with d");
    Stem s = make_stem(lay_pattern(i, j, pattern), kind, std::move(tag));
    s.sl = sl;
    return s;
}

}  // namespace

std::string graph_dump_text(const StemGraph& g) {
    std::ostringstream out;
    for (std::size_t k = 0; k < g.vertices.size(); ++k) {
        const Stem& s = g.vertices[k];
        out << 'v' << (k + 1) << ' ' << s.i << ' ' << s.j << ' ' << s.l << ' ' << s.d << ' ' << s.sl.str() << ' '
            << s.pattern().str() << ' ' << to_string(s.kind);
        if (!s.tag.empty()) out << ' ' << s.tag;
        out << '\n';
    }
    for (const auto& [u, v] : g.adjacency.edges()) out << "e " << (u + 1) << ' ' << (v + 1) << '\n';
    return out.str();
}

StemGraph parse_graph_dump_text(std::string_view text) {
    StemGraph g;
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        auto tok = split_ws(line);
        if (tok.empty() || tok[0][0] == '#') continue;
        auto fail = [&](const std::string& why) {
            throw ParseError("graph dump line " + std::to_string(line_no) + ": " + why);
        };
        long long a = 0;
        long long b = 0;
        if (tok[0] == "e") {
            if (tok.size() != 3 || !parse_int(tok[1], a) || !parse_int(tok[2], b)) fail("expected 'e <u> <v>'");
            edges.emplace_back(static_cast<std::size_t>(a), static_cast<std::size_t>(b));
            continue;
        }
        if (tok[0][0] != 'v' || tok.size() < 8 || tok.size() > 9) fail("expected 'v<k> i j l d sl pattern kind [tag]'");
        long long k = 0;
        std::array<long long, 4> f{};
        if (!parse_int(std::string_view(tok[0]).substr(1), k) || k != static_cast<long long>(g.vertices.size()) + 1) {
            fail("vertices must be numbered v1, v2, ... in order");
        }
        for (std::size_t t = 0; t < 4; ++t) {
            if (!parse_int(tok[t + 1], f[t])) fail("non-integer field '" + tok[t + 1] + "'");
        }
        try {
            g.vertices.push_back(stem_from_fields(static_cast<int>(f[0]), static_cast<int>(f[1]), static_cast<int>(f[2]),
                                                  static_cast<int>(f[3]), Rational::parse(tok[5]),
                                                  GapPattern::parse(tok[6]), parse_kind(tok[7]),
                                                  tok.size() == 9 ? tok[8] : std::string()));
        } catch (const std::invalid_argument& e) {
            fail(e.what());
        }
    }
    g.adjacency = Adjacency(g.vertices.size());
    for (const auto& [u, v] : edges) {
        if (u == 0 || v == 0 || u > g.vertices.size() || v > g.vertices.size() || u == v) {
            throw ParseError("graph dump edge e " + std::to_string(u) + " " + std::to_string(v) + " is out of range");
        }
        g.adjacency.connect(u - 1, v - 1);
    }
    return g;
}

Json graph_dump_json(const StemGraph& g) {
    Json doc;
    doc["format"] = "stemp-graph";
    doc["version"] = 1;
    Json verts = Json::array();
    for (std::size_t k = 0; k < g.vertices.size(); ++k) {
        const Stem& s = g.vertices[k];
        Json pairs = Json::array();
        for (const auto& bp : s.pairs) pairs.push_back({bp.p, bp.q});
        verts.push_back({{"id", k + 1},
                         {"i", s.i},
                         {"j", s.j},
                         {"l", s.l},
                         {"d", s.d},
                         {"sl", s.sl.str()},
                         {"pattern", s.pattern().str()},
                         {"kind", std::string(to_string(s.kind))},
                         {"tag", s.tag},
                         {"pairs", std::move(pairs)}});
    }
    doc["vertices"] = std::move(verts);
    Json edges = Json::array();
    for (const auto& [u, v] : g.adjacency.edges()) edges.push_back({u + 1, v + 1});
    doc["edges"] = std::move(edges);
    return doc;
}

StemGraph graph_from_json(const Json& doc) {
    StemGraph g;
    try {
        if (doc.value("format", std::string()) != "stemp-graph") throw ParseError("not a stemp graph document");
        for (const Json& v : doc.at("vertices")) {
            if (v.at("id").get<std::size_t>() != g.vertices.size() + 1) {
                throw ParseError("graph vertices must be numbered 1, 2, ... in order");
            }
            PairList pairs;
            for (const Json& bp : v.at("pairs")) pairs.push_back({bp.at(0).get<int>(), bp.at(1).get<int>()});
            Stem s = make_stem(std::move(pairs), parse_kind(v.at("kind").get<std::string>()), v.value("tag", ""));
            if (s.i != v.at("i").get<int>() || s.j != v.at("j").get<int>() || s.l != v.at("l").get<int>() ||
                s.d != v.at("d").get<int>()) {
                throw ParseError("graph vertex " + std::to_string(g.vertices.size() + 1) + " fields disagree with pairs");
            }
            s.sl = Rational::parse(v.at("sl").get<std::string>());
            g.vertices.push_back(std::move(s));
        }
        g.adjacency = Adjacency(g.vertices.size());
        for (const Json& e : doc.at("edges")) {
            const auto u = e.at(0).get<std::size_t>();
            const auto v = e.at(1).get<std::size_t>();
            if (u == 0 || v == 0 || u > g.vertices.size() || v > g.vertices.size() || u == v) {
                throw ParseError("graph edge out of range");
            }
            g.adjacency.connect(u - 1, v - 1);
        }
    } catch (const Json::exception& e) {
        throw ParseError(std::string("graph document: ") + e.what());
    } catch (const std::invalid_argument& e) {
        throw ParseError(std::string("graph document: ") + e.what());
    }
    return g;
}

}  // namespace stemp
