#ifndef STEMP_IO_HPP
#define STEMP_IO_HPP

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "stemp/clique.hpp"
#include "stemp/eval.hpp"
#include "stemp/profiles.hpp"
#include "stemp/sequence.hpp"
#include "stemp/stem.hpp"

namespace stemp {

using Json = nlohmann::ordered_json;

// ---- FASTA ---------------------------------------------------------------

// '>' starts a record; the id is the header up to the first whitespace.
std::vector<Sequence> parse_fasta(std::istream& in, std::string_view source = "<fasta>");
std::vector<Sequence> read_fasta(const std::filesystem::path& path);

// ---- CT (connectivity table) ---------------------------------------------

// Columns: index base prev next pair_index orig_index (pair 0 = unpaired).
// Leading comment lines before the "<length> <title>" header are skipped.
// Throws AsymmetricPair when the table disagrees with itself.
ReferenceStructure parse_ct(std::istream& in, std::string_view source = "<ct>");
ReferenceStructure read_ct(const std::filesystem::path& path);
std::string write_ct(const ReferenceStructure& ref);

// ---- dot-bracket ---------------------------------------------------------

// Pairs sorted by 5' index go to the lowest tier of (), [], {}, <> they do not
// cross. Throws TooManyLayers when a fifth tier would be needed.
std::string write_dot_bracket(std::size_t length, const PairList& pairs);
std::string write_dot_bracket(const Sequence& seq, const PairList& pairs);
// Accepts the same four bracket tiers; '.', '-', ',' and ':' are unpaired.
ReferenceStructure parse_dot_bracket(std::string_view text, std::string id = {});

// ---- profiles ------------------------------------------------------------

ProfileConfig profile_from_json(const Json& doc);
Json profile_to_json(const ProfileConfig& cfg);
ProfileConfig read_profile(const std::filesystem::path& path);

// Directory holding the shipped profiles: $STEMP_PROFILE_DIR if set, else the
// build-time default.
std::filesystem::path profile_dir();
// A shipped profile name ("trna", "rrna5s-archaeal", ...) or a path to a
// profile document.
ProfileConfig load_profile(std::string_view selector);

// ---- reports -------------------------------------------------------------

Json report_to_json(const PredictionReport& report, bool include_timing = true);
PredictionReport report_from_json(const Json& doc);

// ---- stem-graph dumps ----------------------------------------------------

// Lines "v<k> i j l d sl pattern kind [tag]" then "e <u> <v>" (1-based).
std::string graph_dump_text(const StemGraph& g);
StemGraph parse_graph_dump_text(std::string_view text);
Json graph_dump_json(const StemGraph& g);
StemGraph graph_from_json(const Json& doc);

std::string read_text_file(const std::filesystem::path& path);

}  // namespace stemp

#endif  // STEMP_IO_HPP
