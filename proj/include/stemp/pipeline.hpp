#ifndef STEMP_PIPELINE_HPP
#define STEMP_PIPELINE_HPP

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "stemp/clique.hpp"
#include "stemp/eval.hpp"
#include "stemp/io.hpp"
#include "stemp/profiles.hpp"

namespace stemp {

// Command-line adjustments layered over a loaded profile.
struct ProfileOverrides {
    std::optional<int> min_length;
    std::optional<Rational> sl_min;  // inclusive
    std::optional<Rational> sl_max;  // inclusive
    bool wobble = false;
    bool uu = false;
    bool no_gsl = false;
};

// Throws std::invalid_argument when the result does not validate.
ProfileConfig apply_overrides(ProfileConfig cfg, const ProfileOverrides& ov);

struct PipelineResult {
    StemGraph graph;
    std::vector<VertexSet> cliques;
    PredictionReport report;
};

// Vertices, edges, maximal cliques and ranking for one sequence. The report's
// seconds field holds the wall time of the whole run.
PipelineResult run_pipeline(const Sequence& seq, const ProfileConfig& cfg, const CliqueBudget& budget = {});
PredictionReport predict_structure(const Sequence& seq, const ProfileConfig& cfg, const CliqueBudget& budget = {});

// Throws ParseError when the reference does not describe `seq`.
void check_reference(const Sequence& seq, const ReferenceStructure& ref);

// CT by extension (.ct), otherwise a dot-bracket file: optional ">id" line,
// optional sequence line, then the structure line.
ReferenceStructure read_reference(const std::filesystem::path& path);

// Sequence carried by a reference file (CT base column, dot-bracket line).
Sequence reference_sequence(const ReferenceStructure& ref);

// ---- batch benchmark ------------------------------------------------------

struct BatchEntry {
    std::string id;
    std::filesystem::path reference;
    std::optional<std::filesystem::path> fasta;
};

// Every *.ct file in `dir`, sorted by name, with a same-stem .fasta/.fa/.fna
// partner when one exists.
std::vector<BatchEntry> discover_batch(const std::filesystem::path& dir);

struct BatchOptions {
    ProfileConfig profile;
    CliqueBudget budget;
    MetricKind metric = MetricKind::Mcc;
    bool ignore_noncanonical = false;
    std::size_t min_sequence_length = 50;
    unsigned jobs = 1;
};

enum class RowStatus { Ok, Skipped, Failed };

std::string_view to_string(RowStatus s);

struct BatchRow {
    std::string id;
    RowStatus status = RowStatus::Ok;
    std::string message;
    std::size_t length = 0;
    std::size_t vertex_count = 0;
    std::size_t edge_count = 0;
    std::size_t clique_count = 0;
    Metrics top;
    Metrics best;
    int scr_of_best = 0;
    int dr_of_best = 0;
    int multiplicity = 0;
    double seconds = 0.0;
};

struct Histogram {
    std::vector<std::string> labels;
    std::vector<int> counts;
};

struct BatchResult {
    MetricKind metric = MetricKind::Mcc;
    std::vector<BatchRow> rows;  // input order
    int evaluated = 0;
    int skipped = 0;
    int failed = 0;
    Histogram scr;          // SCR of the best prediction: 1, 2-5, 6-10, 11-15, >15
    Histogram top_metric;   // >= 0.95, [0.90, 0.95), [0.85, 0.90), [0.80, 0.85), < 0.80
    Histogram best_metric;
};

BatchRow run_batch_entry(const BatchEntry& entry, const BatchOptions& opt);
// Rows are computed on `opt.jobs` workers and merged in input order.
BatchResult run_batch(const std::vector<BatchEntry>& entries, const BatchOptions& opt);

Json batch_to_json(const BatchResult& result, bool include_timing = true);
std::string batch_table(const BatchResult& result, bool include_timing = true);

}  // namespace stemp

#endif  // STEMP_PIPELINE_HPP
