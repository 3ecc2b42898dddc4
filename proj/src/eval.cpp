#include "stemp/eval.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include "stemp/error.hpp"

namespace stemp {

void validate_structure(const ReferenceStructure& ref) {
    std::set<int> used;
    const auto len = static_cast<int>(ref.length);
    for (const auto& bp : ref.pairs) {
        if (bp.p < 1 || bp.q > len || bp.p >= bp.q) {
            throw IndexOutOfRange("pair (" + std::to_string(bp.p) + "," + std::to_string(bp.q) +
                                  ") outside sequence of length " + std::to_string(len));
        }
        if (!used.insert(bp.p).second || !used.insert(bp.q).second) {
            throw ParseError("index reused in pair (" + std::to_string(bp.p) + "," + std::to_string(bp.q) + ")");
        }
    }
}

ReferenceStructure without_noncanonical(const ReferenceStructure& ref, const Sequence& seq, const PairingRule& rule) {
    ReferenceStructure out = ref;
    std::erase_if(out.pairs, [&](const BasePair& bp) { return !seq.pairs(bp.p, bp.q, rule); });
    return out;
}

std::string_view to_string(MetricKind m) { return m == MetricKind::Mcc ? "mcc" : "f1"; }

MetricKind parse_metric(std::string_view text) {
    if (text == "mcc") return MetricKind::Mcc;
    if (text == "f1") return MetricKind::F1;
    throw std::invalid_argument("unknown metric '" + std::string(text) + "' (expected mcc or f1)");
}

double Metrics::mcc() const { return std::sqrt(mcc_squared.to_double()); }

Metrics score_prediction(const PairList& predicted, const ReferenceStructure& reference) {
    const auto len = static_cast<int>(reference.length);
    for (const auto& bp : predicted) {
        if (bp.p < 1 || bp.q > len || bp.p >= bp.q) {
            throw IndexOutOfRange("predicted pair (" + std::to_string(bp.p) + "," + std::to_string(bp.q) +
                                  ") outside sequence of length " + std::to_string(len));
        }
    }
    std::set<BasePair> ref(reference.pairs.begin(), reference.pairs.end());
    std::set<BasePair> pred(predicted.begin(), predicted.end());

    Metrics m;
    for (const auto& bp : pred) {
        if (ref.count(bp)) {
            ++m.tp;
        } else {
            ++m.fp;
        }
    }
    m.fn = static_cast<int>(ref.size()) - m.tp;

    if (ref.empty() && pred.empty()) {
        m.sens = m.ppv = m.mcc_squared = m.f1 = Rational(1);
        return m;
    }
    m.sens = m.tp + m.fn == 0 ? Rational(0) : Rational(m.tp, m.tp + m.fn);
    m.ppv = m.tp + m.fp == 0 ? Rational(0) : Rational(m.tp, m.tp + m.fp);
    m.mcc_squared = m.sens * m.ppv;
    const Rational denom = m.sens + m.ppv;
    m.f1 = denom == Rational(0) ? Rational(0) : Rational(2) * m.ppv * m.sens / denom;
    return m;
}

ReportSummary summarize_report(const PredictionReport& report, const ReferenceStructure& reference,
                               MetricKind metric) {
    if (report.predictions.empty()) throw std::invalid_argument("cannot summarize an empty report");
    ReportSummary s;
    s.metric = metric;
    bool have_top = false;
    for (std::size_t k = 0; k < report.predictions.size(); ++k) {
        const auto& p = report.predictions[k];
        Metrics m = score_prediction(p.pairs, reference);
        if (k == 0 || m.key(metric) > s.best.key(metric)) {
            s.best = m;
            s.best_index = k;
        }
        if (p.scr == 1 && (!have_top || m.key(metric) > s.top.key(metric))) {
            s.top = m;
            s.top_index = k;
            have_top = true;
        }
    }
    const auto& best = report.predictions[s.best_index];
    s.scr_of_best = best.scr;
    s.dr_of_best = best.dr;
    s.multiplicity = best.multiplicity;
    s.top_multiplicity = report.predictions.front().multiplicity;
    return s;
}

}  // namespace stemp
