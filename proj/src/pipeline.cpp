#include "stemp/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <sstream>
#include <thread>

#include "stemp/error.hpp"

namespace stemp {

namespace fs = std::filesystem;

ProfileConfig apply_overrides(ProfileConfig cfg, const ProfileOverrides& ov) {
    if (ov.min_length) cfg.min_length = *ov.min_length;
    if (ov.sl_min || ov.sl_max) {
        Interval iv = cfg.sl_bounds.value_or(Interval{});
        if (ov.sl_min) {
            iv.lo = *ov.sl_min;
            iv.lo_inclusive = true;
        }
        if (ov.sl_max) {
            iv.hi = *ov.sl_max;
            iv.hi_inclusive = true;
        }
        cfg.sl_bounds = iv;
    }
    if (ov.wobble) cfg.pairing.wobble = true;
    if (ov.uu) cfg.pairing.uu = true;
    if (ov.no_gsl) cfg.use_gsl = false;
    cfg.validate();
    return cfg;
}

PipelineResult run_pipeline(const Sequence& seq, const ProfileConfig& cfg, const CliqueBudget& budget) {
    const auto start = std::chrono::steady_clock::now();
    PipelineResult out;
    out.graph = build_profile_graph(seq, cfg);
    out.cliques = maximal_cliques(out.graph.adjacency, budget);
    out.report = rank_predictions(out.graph, out.cliques);
    out.report.sequence_id = seq.id();
    out.report.profile = cfg.name;
    out.report.sequence_length = seq.length();
    out.report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return out;
}

PredictionReport predict_structure(const Sequence& seq, const ProfileConfig& cfg, const CliqueBudget& budget) {
    return run_pipeline(seq, cfg, budget).report;
}

void check_reference(const Sequence& seq, const ReferenceStructure& ref) {
    if (ref.length != seq.length()) {
        throw ParseError("reference '" + ref.id + "' has length " + std::to_string(ref.length) + " but sequence '" +
                         seq.id() + "' has length " + std::to_string(seq.length()));
    }
    validate_structure(ref);
}

ReferenceStructure read_reference(const fs::path& path) {
    std::string ext = path.extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
    if (ext == ".ct") return read_ct(path);

    std::istringstream in(read_text_file(path));
    std::string id = path.stem().string();
    std::vector<std::string> body;
    for (std::string line; std::getline(in, line);) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.find_first_not_of(" \t") == std::string::npos) continue;
        if (line[0] == '>') {
            std::string header = line.substr(1);
            header.erase(0, header.find_first_not_of(" \t"));
            id = header.substr(0, header.find_first_of(" \t"));
            continue;
        }
        body.push_back(line);
    }
    if (body.empty() || body.size() > 2) {
        throw ParseError(path.string() + ": expected an optional sequence line and one structure line");
    }
    ReferenceStructure ref = parse_dot_bracket(body.back(), id);
    if (body.size() == 2) {
        Sequence seq = parse_sequence(body.front(), id);
        if (seq.length() != ref.length) {
            throw ParseError(path.string() + ": sequence and structure lines differ in length");
        }
        ref.bases = seq.str();
    }
    return ref;
}

Sequence reference_sequence(const ReferenceStructure& ref) {
    if (ref.bases.empty()) throw ParseError("reference '" + ref.id + "' carries no sequence");
    return parse_sequence(ref.bases, ref.id);
}

// ---- batch ----------------------------------------------------------------

std::string_view to_string(RowStatus s) {
    switch (s) {
        case RowStatus::Ok:
            return "ok";
        case RowStatus::Skipped:
            return "skipped";
        case RowStatus::Failed:
            return "failed";
    }
    return "failed";
}

std::vector<BatchEntry> discover_batch(const fs::path& dir) {
    if (!fs::is_directory(dir)) throw IoError("'" + dir.string() + "' is not a directory");
    std::vector<BatchEntry> out;
    for (const auto& e : fs::directory_iterator(dir)) {
        if (!e.is_regular_file()) continue;
        std::string ext = e.path().extension().string();
        std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
        if (ext != ".ct") continue;
        BatchEntry entry;
        entry.id = e.path().stem().string();
        entry.reference = e.path();
        for (const char* fext : {".fasta", ".fa", ".fna"}) {
            fs::path candidate = e.path();
            candidate.replace_extension(fext);
            if (fs::exists(candidate)) {
                entry.fasta = candidate;
                break;
            }
        }
        out.push_back(std::move(entry));
    }
    std::sort(out.begin(), out.end(), [](const BatchEntry& a, const BatchEntry& b) { return a.reference < b.reference; });
    return out;
}

BatchRow run_batch_entry(const BatchEntry& entry, const BatchOptions& opt) {
    BatchRow row;
    row.id = entry.id;
    try {
        ReferenceStructure ref = read_ct(entry.reference);
        Sequence seq;
        if (entry.fasta) {
            auto records = read_fasta(*entry.fasta);
            if (records.empty()) throw ParseError(entry.fasta->string() + ": no sequence records");
            seq = records.front();
        } else {
            seq = parse_sequence(ref.bases, entry.id);
        }
        check_reference(seq, ref);
        if (opt.ignore_noncanonical) ref = without_noncanonical(ref, seq, opt.profile.pairing);
        row.length = seq.length();
        if (seq.length() < opt.min_sequence_length || ref.pairs.empty()) {
            row.status = RowStatus::Skipped;
            row.message = seq.length() < opt.min_sequence_length ? "shorter than minimum length" : "no reference pairs";
            return row;
        }
        PipelineResult run = run_pipeline(seq, opt.profile, opt.budget);
        row.vertex_count = run.report.vertex_count;
        row.edge_count = run.report.edge_count;
        row.clique_count = run.report.predictions.size();
        row.seconds = run.report.seconds;
        if (run.report.predictions.empty()) {
            // No stems at all: score the empty folding as the only prediction.
            row.top = row.best = score_prediction({}, ref);
            row.scr_of_best = row.dr_of_best = row.multiplicity = 1;
        } else {
            ReportSummary s = summarize_report(run.report, ref, opt.metric);
            row.top = s.top;
            row.best = s.best;
            row.scr_of_best = s.scr_of_best;
            row.dr_of_best = s.dr_of_best;
            row.multiplicity = s.multiplicity;
        }
    } catch (const std::exception& e) {
        row.status = RowStatus::Failed;
        row.message = e.what();
    }
    return row;
}

namespace {

bool metric_at_least(const Metrics& m, MetricKind kind, const Rational& threshold) {
    if (kind == MetricKind::Mcc) return m.mcc_squared >= threshold * threshold;
    return m.f1 >= threshold;
}

Histogram metric_histogram(const std::vector<BatchRow>& rows, MetricKind kind, bool use_best) {
    const std::vector<Rational> cuts{Rational(95, 100), Rational(90, 100), Rational(85, 100), Rational(80, 100)};
    Histogram h{{">=0.95", ">=0.90", ">=0.85", ">=0.80", "<0.80"}, std::vector<int>(5, 0)};
    for (const auto& row : rows) {
        if (row.status != RowStatus::Ok) continue;
        const Metrics& m = use_best ? row.best : row.top;
        std::size_t bucket = cuts.size();
        for (std::size_t k = 0; k < cuts.size(); ++k) {
            if (metric_at_least(m, kind, cuts[k])) {
                bucket = k;
                break;
            }
        }
        ++h.counts[bucket];
    }
    return h;
}

Histogram scr_histogram(const std::vector<BatchRow>& rows) {
    Histogram h{{"1", "2-5", "6-10", "11-15", ">15"}, std::vector<int>(5, 0)};
    for (const auto& row : rows) {
        if (row.status != RowStatus::Ok) continue;
        const int r = row.scr_of_best;
        std::size_t bucket = r <= 1 ? 0 : r <= 5 ? 1 : r <= 10 ? 2 : r <= 15 ? 3 : 4;
        ++h.counts[bucket];
    }
    return h;
}

Json metrics_json(const Metrics& m) {
    return {{"tp", m.tp},
            {"fn", m.fn},
            {"fp", m.fp},
            {"sens", m.sens.to_double()},
            {"ppv", m.ppv.to_double()},
            {"mcc", m.mcc()},
            {"f1", m.f1.to_double()}};
}

Json histogram_json(const Histogram& h) {
    Json out = Json::array();
    for (std::size_t k = 0; k < h.labels.size(); ++k) out.push_back({{"bucket", h.labels[k]}, {"count", h.counts[k]}});
    return out;
}

std::string fixed(double v, int digits) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    return buf;
}

}  // namespace

BatchResult run_batch(const std::vector<BatchEntry>& entries, const BatchOptions& opt) {
    BatchResult result;
    result.metric = opt.metric;
    result.rows.resize(entries.size());
    const unsigned workers = std::max(1u, std::min<unsigned>(opt.jobs, static_cast<unsigned>(entries.size())));
    std::atomic<std::size_t> next{0};
    auto work = [&]() {
        for (std::size_t k = next++; k < entries.size(); k = next++) result.rows[k] = run_batch_entry(entries[k], opt);
    };
    if (workers <= 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
    }
    for (const auto& row : result.rows) {
        switch (row.status) {
            case RowStatus::Ok:
                ++result.evaluated;
                break;
            case RowStatus::Skipped:
                ++result.skipped;
                break;
            case RowStatus::Failed:
                ++result.failed;
                break;
        }
    }
    result.scr = scr_histogram(result.rows);
    result.top_metric = metric_histogram(result.rows, opt.metric, false);
    result.best_metric = metric_histogram(result.rows, opt.metric, true);
    return result;
}

Json batch_to_json(const BatchResult& result, bool include_timing) {
    Json doc;
    doc["format"] = "stemp-batch";
    doc["version"] = 1;
    doc["metric"] = std::string(to_string(result.metric));
    doc["evaluated"] = result.evaluated;
    doc["skipped"] = result.skipped;
    doc["failed"] = result.failed;
    Json rows = Json::array();
    for (const auto& row : result.rows) {
        Json r;
        r["id"] = row.id;
        r["status"] = std::string(to_string(row.status));
        if (!row.message.empty()) r["message"] = row.message;
        r["length"] = row.length;
        if (row.status == RowStatus::Ok) {
            r["vertex_count"] = row.vertex_count;
            r["edge_count"] = row.edge_count;
            r["clique_count"] = row.clique_count;
            r["top"] = metrics_json(row.top);
            r["best"] = metrics_json(row.best);
            r["scr_of_best"] = row.scr_of_best;
            r["dr_of_best"] = row.dr_of_best;
            r["multiplicity"] = row.multiplicity;
            if (include_timing) r["timing"] = {{"seconds", row.seconds}};
        }
        rows.push_back(std::move(r));
    }
    doc["rows"] = std::move(rows);
    doc["histograms"] = {{"scr_of_best", histogram_json(result.scr)},
                         {"top_" + std::string(to_string(result.metric)), histogram_json(result.top_metric)},
                         {"best_" + std::string(to_string(result.metric)), histogram_json(result.best_metric)}};
    return doc;
}

std::string batch_table(const BatchResult& result, bool include_timing) {
    const std::string metric(to_string(result.metric));
    std::ostringstream out;
    char line[256];
    std::snprintf(line, sizeof line, "%-16s %6s %7s %8s %7s %7s %8s %4s %12s %s\n", "id", "length", "vertices", "cliques",
                  ("top_" + metric).c_str(), ("best_" + metric).c_str(), "SCR(m)", "DR", "TP/FN/FP", "status");
    out << line;
    for (const auto& row : result.rows) {
        if (row.status != RowStatus::Ok) {
            std::snprintf(line, sizeof line, "%-16s %6zu %7s %8s %7s %7s %8s %4s %12s %s: %s\n", row.id.c_str(), row.length,
                          "-", "-", "-", "-", "-", "-", "-", std::string(to_string(row.status)).c_str(),
                          row.message.c_str());
            out << line;
            continue;
        }
        const std::string scr = std::to_string(row.scr_of_best) + "(" + std::to_string(row.multiplicity) + ")";
        const std::string counts =
            std::to_string(row.best.tp) + "/" + std::to_string(row.best.fn) + "/" + std::to_string(row.best.fp);
        std::snprintf(line, sizeof line, "%-16s %6zu %8zu %8zu %7s %7s %8s %4d %12s ok", row.id.c_str(), row.length,
                      row.vertex_count, row.clique_count, fixed(row.top.value(result.metric), 3).c_str(),
                      fixed(row.best.value(result.metric), 3).c_str(), scr.c_str(), row.dr_of_best, counts.c_str());
        out << line;
        if (include_timing) out << ' ' << fixed(row.seconds, 3) << 's';
        out << '\n';
    }
    out << "\nevaluated " << result.evaluated << ", skipped " << result.skipped << ", failed " << result.failed << '\n';
    auto print_hist = [&](const std::string& title, const Histogram& h) {
        out << title << ':';
        for (std::size_t k = 0; k < h.labels.size(); ++k) out << "  " << h.labels[k] << ' ' << h.counts[k];
        out << '\n';
    };
    print_hist("SCR of best", result.scr);
    print_hist("top " + metric, result.top_metric);
    print_hist("best " + metric, result.best_metric);
    return out.str();
}

}  // namespace stemp
