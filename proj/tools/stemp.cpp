// stemp: predict, evaluate and batch-benchmark stem-graph foldings.
//
// Exit codes: 0 success, 1 unexpected failure, 2 malformed input or options,
// 3 clique budget exceeded.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "stemp/error.hpp"
#include "stemp/io.hpp"
#include "stemp/pipeline.hpp"

namespace fs = std::filesystem;
using namespace stemp;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitParse = 2;
constexpr int kExitBudget = 3;

struct CommonOptions {
    std::string profile;
    std::optional<int> min_stem_length;
    std::string sl_min;
    std::string sl_max;
    bool wobble = false;
    bool uu = false;
    bool no_gsl = false;
    std::optional<std::size_t> max_cliques;
    std::optional<double> max_seconds;
    std::string output;
    bool no_timing = false;
};

struct PredictOptions {
    std::string input;
    std::optional<std::size_t> top_k;
    bool all_ties = false;
    bool json = false;
    std::string dump_graph;
};

struct EvaluateOptions {
    std::string reference;
    std::string input;
    std::string report;
    std::string structure;
    std::string metric = "mcc";
    bool ignore_noncanonical = false;
    bool json = false;
};

struct BatchCliOptions {
    std::string dir;
    std::string metric = "mcc";
    bool ignore_noncanonical = false;
    unsigned jobs = 1;
    std::size_t min_seq_length = 50;
    bool json = false;
};

void add_profile_options(CLI::App* cmd, CommonOptions& c, bool profile_required) {
    auto* p = cmd->add_option("-p,--profile", c.profile,
                              "profile name (protein, trna, rrna5s-archaeal, rrna5s-archaeal-general, "
                              "rrna5s-bacterial, rrna5s-eukaryotic) or path to a profile document");
    if (profile_required) p->required();
    cmd->add_option("-L,--min-stem-length", c.min_stem_length, "override the minimum stem length")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--sl-min", c.sl_min, "override the stem-loop lower bound (inclusive)");
    cmd->add_option("--sl-max", c.sl_max, "override the stem-loop upper bound (inclusive)");
    cmd->add_flag("--wobble", c.wobble, "allow G-U pairs");
    cmd->add_flag("--uu", c.uu, "allow U-U pairs");
    cmd->add_flag("--no-gsl", c.no_gsl, "skip domain assembly; every helix candidate becomes a vertex");
    cmd->add_option("--max-cliques", c.max_cliques, "abort (exit 3) past this many maximal cliques");
    cmd->add_option("--max-seconds", c.max_seconds, "abort (exit 3) when clique search runs longer")
        ->check(CLI::PositiveNumber);
    cmd->add_option("-o,--output", c.output, "write the structured document here");
    cmd->add_flag("--no-timing", c.no_timing, "omit timing fields so output is byte-stable");
}

ProfileConfig resolve_profile(const CommonOptions& c) {
    ProfileOverrides ov;
    ov.min_length = c.min_stem_length;
    if (!c.sl_min.empty()) ov.sl_min = Rational::parse(c.sl_min);
    if (!c.sl_max.empty()) ov.sl_max = Rational::parse(c.sl_max);
    ov.wobble = c.wobble;
    ov.uu = c.uu;
    ov.no_gsl = c.no_gsl;
    return apply_overrides(load_profile(c.profile), ov);
}

CliqueBudget resolve_budget(const CommonOptions& c) {
    CliqueBudget b;
    b.max_cliques = c.max_cliques;
    if (c.max_seconds) b.max_time = std::chrono::milliseconds(static_cast<long long>(*c.max_seconds * 1000.0));
    return b;
}

void write_output(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write '" + path + "'");
    out << text;
    if (!out) throw IoError("error writing '" + path + "'");
}

std::string describe(const FoldPrediction& p) {
    return "energy " + std::to_string(p.energy) + "  SCR " + std::to_string(p.scr) + "(" +
           std::to_string(p.multiplicity) + ")  DR " + std::to_string(p.dr);
}

std::string dot_bracket_or_note(std::size_t length, const PairList& pairs) {
    try {
        return write_dot_bracket(length, pairs);
    } catch (const TooManyLayers& e) {
        return std::string("(") + e.what() + ")";
    }
}

int cmd_predict(const CommonOptions& c, const PredictOptions& o) {
    const ProfileConfig cfg = resolve_profile(c);
    const CliqueBudget budget = resolve_budget(c);
    const auto sequences = read_fasta(o.input);

    Json docs = Json::array();
    Json graphs = Json::array();
    std::string graph_text;
    for (const auto& seq : sequences) {
        PipelineResult run = run_pipeline(seq, cfg, budget);
        PredictionReport& report = run.report;

        if (!o.dump_graph.empty()) {
            graphs.push_back({{"sequence_id", seq.id()}, {"graph", graph_dump_json(run.graph)}});
            graph_text += "# " + seq.id() + "\n" + graph_dump_text(run.graph);
        }
        if (!o.json) {
            std::cout << '>' << seq.id() << "  length " << seq.length() << "  vertices " << report.vertex_count
                      << "  edges " << report.edge_count << "  cliques " << report.predictions.size() << '\n';
            std::cout << seq.str() << '\n';
            if (report.predictions.empty()) std::cout << "(no stems)\n";
            for (const auto& p : report.predictions) {
                if (p.scr != 1) break;
                std::cout << dot_bracket_or_note(seq.length(), p.pairs) << "  " << describe(p) << '\n';
                if (!o.all_ties) break;
            }
        }
        if (o.top_k && report.predictions.size() > *o.top_k) report.predictions.resize(*o.top_k);
        docs.push_back(report_to_json(report, !c.no_timing));
    }

    const Json doc = docs.size() == 1 ? docs.front() : docs;
    if (!c.output.empty()) write_output(c.output, doc.dump(2) + "\n");
    if (o.json) std::cout << doc.dump(2) << '\n';
    if (!o.dump_graph.empty()) {
        if (fs::path(o.dump_graph).extension() == ".json") {
            write_output(o.dump_graph, (graphs.size() == 1 ? graphs.front()["graph"] : graphs).dump(2) + "\n");
        } else {
            write_output(o.dump_graph, graph_text);
        }
    }
    return kExitOk;
}

Json summary_entry(const Metrics& m, std::size_t index, const FoldPrediction* p) {
    Json out = {{"prediction_index", index},
                {"tp", m.tp},
                {"fn", m.fn},
                {"fp", m.fp},
                {"sens", m.sens.to_double()},
                {"ppv", m.ppv.to_double()},
                {"mcc", m.mcc()},
                {"f1", m.f1.to_double()}};
    if (p != nullptr) {
        out["rank_scr"] = p->scr;
        out["rank_dr"] = p->dr;
        out["multiplicity"] = p->multiplicity;
    }
    return out;
}

int cmd_evaluate(const CommonOptions& c, const EvaluateOptions& o) {
    const MetricKind metric = parse_metric(o.metric);
    ReferenceStructure ref = read_reference(o.reference);

    const int sources = (o.report.empty() ? 0 : 1) + (o.structure.empty() ? 0 : 1) + (c.profile.empty() ? 0 : 1);
    if (sources != 1) throw std::invalid_argument("give exactly one of --report, --structure or --profile");

    std::optional<ProfileConfig> cfg;
    if (!c.profile.empty()) cfg = resolve_profile(c);

    Sequence seq;
    if (!o.input.empty()) {
        auto records = read_fasta(o.input);
        if (records.empty()) throw ParseError(o.input + ": no sequence records");
        seq = records.front();
    } else {
        seq = reference_sequence(ref);
    }
    check_reference(seq, ref);
    if (o.ignore_noncanonical) {
        PairingRule rule = cfg ? cfg->pairing : PairingRule{c.wobble, c.uu};
        ref = without_noncanonical(ref, seq, rule);
    }

    PredictionReport report;
    if (!o.report.empty()) {
        Json doc = Json::parse(read_text_file(o.report));
        report = report_from_json(doc.is_array() ? doc.at(0) : doc);
    } else if (!o.structure.empty()) {
        ReferenceStructure s = read_reference(o.structure);
        FoldPrediction p;
        p.pairs = s.pairs;
        p.energy = static_cast<int>(s.pairs.size());
        p.scr = p.dr = p.multiplicity = 1;
        report.sequence_id = s.id;
        report.sequence_length = s.length;
        report.predictions.push_back(std::move(p));
    } else {
        report = predict_structure(seq, *cfg, resolve_budget(c));
    }
    if (report.sequence_length != 0 && report.sequence_length != ref.length) {
        throw ParseError("prediction length " + std::to_string(report.sequence_length) + " differs from reference length " +
                         std::to_string(ref.length));
    }

    Json doc;
    doc["format"] = "stemp-evaluation";
    doc["version"] = 1;
    doc["sequence_id"] = seq.id();
    doc["reference_pairs"] = ref.pairs.size();
    doc["metric"] = std::string(to_string(metric));
    doc["prediction_count"] = report.predictions.size();
    if (report.predictions.empty()) {
        const Metrics m = score_prediction({}, ref);
        doc["top"] = summary_entry(m, 0, nullptr);
        doc["best"] = summary_entry(m, 0, nullptr);
    } else {
        const ReportSummary s = summarize_report(report, ref, metric);
        doc["top"] = summary_entry(s.top, s.top_index, &report.predictions[s.top_index]);
        doc["best"] = summary_entry(s.best, s.best_index, &report.predictions[s.best_index]);
    }

    if (!c.output.empty()) write_output(c.output, doc.dump(2) + "\n");
    if (o.json) {
        std::cout << doc.dump(2) << '\n';
    } else {
        auto line = [&](const char* label, const Json& e) {
            std::cout << label << "  TP/FN/FP " << e["tp"] << '/' << e["fn"] << '/' << e["fp"] << "  sens "
                      << e["sens"].get<double>() << "  ppv " << e["ppv"].get<double>() << "  mcc "
                      << e["mcc"].get<double>() << "  f1 " << e["f1"].get<double>();
            if (e.contains("rank_scr")) std::cout << "  SCR " << e["rank_scr"] << '(' << e["multiplicity"] << ')';
            std::cout << '\n';
        };
        std::cout << seq.id() << "  predictions " << report.predictions.size() << "  reference pairs "
                  << ref.pairs.size() << '\n';
        line("top ", doc["top"]);
        line("best", doc["best"]);
    }
    return kExitOk;
}

int cmd_batch(const CommonOptions& c, const BatchCliOptions& o) {
    BatchOptions opt;
    opt.profile = resolve_profile(c);
    opt.budget = resolve_budget(c);
    opt.metric = parse_metric(o.metric);
    opt.ignore_noncanonical = o.ignore_noncanonical;
    opt.jobs = o.jobs;
    opt.min_sequence_length = o.min_seq_length;

    const auto entries = discover_batch(o.dir);
    const BatchResult result = run_batch(entries, opt);
    for (const auto& row : result.rows) {
        if (row.status == RowStatus::Failed) std::cerr << "stemp: " << row.id << ": " << row.message << '\n';
    }
    const Json doc = batch_to_json(result, !c.no_timing);
    if (!c.output.empty()) write_output(c.output, doc.dump(2) + "\n");
    if (o.json) {
        std::cout << doc.dump(2) << '\n';
    } else {
        std::cout << batch_table(result, !c.no_timing);
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Stem-graph secondary structure prediction"};
    app.require_subcommand(1);

    CommonOptions predict_common;
    PredictOptions predict;
    auto* p = app.add_subcommand("predict", "predict foldings for every record of a FASTA file");
    add_profile_options(p, predict_common, true);
    p->add_option("input", predict.input, "FASTA file")->required()->check(CLI::ExistingFile);
    p->add_option("--top-k", predict.top_k, "keep only the first K predictions in the report");
    p->add_flag("--all-ties", predict.all_ties, "print every SCR 1 structure, not just the first");
    p->add_flag("--json", predict.json, "print the report document instead of the summary");
    p->add_option("--dump-graph", predict.dump_graph, "write the stem graph (.json for the structured form)");

    CommonOptions eval_common;
    EvaluateOptions evaluate;
    auto* e = app.add_subcommand("evaluate", "score predictions against a reference structure");
    add_profile_options(e, eval_common, false);
    e->add_option("-r,--reference", evaluate.reference, "reference CT or dot-bracket file")
        ->required()
        ->check(CLI::ExistingFile);
    e->add_option("input", evaluate.input, "FASTA file (default: the reference's own sequence)")
        ->check(CLI::ExistingFile);
    e->add_option("--report", evaluate.report, "prediction report document to score")->check(CLI::ExistingFile);
    e->add_option("--structure", evaluate.structure, "score a single CT or dot-bracket structure")
        ->check(CLI::ExistingFile);
    e->add_option("--metric", evaluate.metric, "ranking metric for Top/Best")->check(CLI::IsMember({"mcc", "f1"}));
    e->add_flag("--ignore-noncanonical", evaluate.ignore_noncanonical,
                "drop reference pairs the pairing rule cannot form");
    e->add_flag("--json", evaluate.json, "print the evaluation document instead of the summary");

    CommonOptions batch_common;
    BatchCliOptions batch;
    auto* b = app.add_subcommand("batch", "benchmark a directory of CT files (with optional FASTA partners)");
    add_profile_options(b, batch_common, true);
    b->add_option("dir", batch.dir, "directory of <id>.ct and <id>.fasta files")->required();
    b->add_option("--metric", batch.metric, "metric for Top/Best and histograms")->check(CLI::IsMember({"mcc", "f1"}));
    b->add_flag("--ignore-noncanonical", batch.ignore_noncanonical,
                "drop reference pairs the pairing rule cannot form");
    b->add_option("-j,--jobs", batch.jobs, "worker threads")->check(CLI::PositiveNumber);
    b->add_option("--min-seq-length", batch.min_seq_length, "skip sequences shorter than this");
    b->add_flag("--json", batch.json, "print the batch document instead of the table");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& err) {
        const int code = app.exit(err);
        return code == 0 ? kExitOk : kExitParse;
    }

    try {
        if (p->parsed()) return cmd_predict(predict_common, predict);
        if (e->parsed()) return cmd_evaluate(eval_common, evaluate);
        if (b->parsed()) return cmd_batch(batch_common, batch);
    } catch (const BudgetExceeded& err) {
        std::cerr << "stemp: " << err.what() << '\n';
        return kExitBudget;
    } catch (const ParseError& err) {
        std::cerr << "stemp: " << err.what() << '\n';
        return kExitParse;
    } catch (const Json::exception& err) {
        std::cerr << "stemp: " << err.what() << '\n';
        return kExitParse;
    } catch (const std::invalid_argument& err) {
        std::cerr << "stemp: " << err.what() << '\n';
        return kExitParse;
    } catch (const std::exception& err) {
        std::cerr << "stemp: " << err.what() << '\n';
        return kExitFailure;
    }
    return kExitFailure;
}
