#ifndef STEMP_EVAL_HPP
#define STEMP_EVAL_HPP

#include <cstddef>
#include <string>
#include <string_view>

#include "stemp/clique.hpp"
#include "stemp/rational.hpp"
#include "stemp/sequence.hpp"
#include "stemp/stem.hpp"

namespace stemp {

struct ReferenceStructure {
    std::string id;
    std::size_t length = 0;
    PairList pairs;      // p < q, sorted by p, each index used at most once
    std::string format;  // "ct", "dotbracket", ...
    std::string bases;   // residues as read, when the source carries them

    friend bool operator==(const ReferenceStructure&, const ReferenceStructure&) = default;
};

// Throws IndexOutOfRange or ParseError when pairs break the invariants.
void validate_structure(const ReferenceStructure& ref);

// Drops reference pairs the rule cannot form (e.g. C-U, A-G).
ReferenceStructure without_noncanonical(const ReferenceStructure& ref, const Sequence& seq, const PairingRule& rule);

enum class MetricKind { Mcc, F1 };

std::string_view to_string(MetricKind m);
MetricKind parse_metric(std::string_view text);

struct Metrics {
    int tp = 0;
    int fp = 0;
    int fn = 0;
    Rational sens;
    Rational ppv;
    Rational mcc_squared;  // sens * ppv, exact
    Rational f1;

    double mcc() const;
    // Exact comparison key for the chosen metric (mcc compared via its square).
    Rational key(MetricKind m) const { return m == MetricKind::Mcc ? mcc_squared : f1; }
    double value(MetricKind m) const { return m == MetricKind::Mcc ? mcc() : f1.to_double(); }
};

// Exact (p, q) matches only. Empty prediction against empty reference scores
// 1 everywhere. Throws IndexOutOfRange for predicted indices past the
// reference length.
Metrics score_prediction(const PairList& predicted, const ReferenceStructure& reference);

struct ReportSummary {
    MetricKind metric = MetricKind::Mcc;
    Metrics top;  // best metric among SCR = 1 predictions
    Metrics best; // best metric among all predictions
    std::size_t top_index = 0;
    std::size_t best_index = 0;
    int scr_of_best = 0;
    int dr_of_best = 0;
    int multiplicity = 0;  // predictions sharing best's rank
    int top_multiplicity = 0;
};

// Report must be non-empty. Ties keep the earliest prediction in report order.
ReportSummary summarize_report(const PredictionReport& report, const ReferenceStructure& reference,
                               MetricKind metric = MetricKind::Mcc);

}  // namespace stemp

#endif  // STEMP_EVAL_HPP
