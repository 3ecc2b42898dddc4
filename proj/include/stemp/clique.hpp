#ifndef STEMP_CLIQUE_HPP
#define STEMP_CLIQUE_HPP

#include <chrono>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "stemp/graph.hpp"
#include "stemp/stem.hpp"

namespace stemp {

using VertexSet = std::vector<std::size_t>;  // ascending vertex indices

struct CliqueBudget {
    std::optional<std::size_t> max_cliques;
    std::optional<std::chrono::milliseconds> max_time;
};

// All maximal cliques, each once, in lexicographic order of their sorted
// vertex tuples. Isolated vertices come out as singletons. Pivot: the vertex
// of P u X with the most neighbours in P, lowest index on ties.
// Throws BudgetExceeded when a budget limit is passed.
std::vector<VertexSet> maximal_cliques(const Adjacency& g, const CliqueBudget& budget = {});

struct FoldPrediction {
    VertexSet vertices;
    PairList pairs;  // union of member stem pairs, sorted
    int energy = 0;  // total matched base pairs
    int scr = 0;     // standard competition rank, "1224"
    int dr = 0;      // dense rank, "1223"
    int multiplicity = 0;

    friend bool operator==(const FoldPrediction&, const FoldPrediction&) = default;
};

struct PredictionReport {
    std::string sequence_id;
    std::string profile;
    std::size_t sequence_length = 0;
    std::size_t vertex_count = 0;
    std::size_t edge_count = 0;
    std::vector<FoldPrediction> predictions;  // energy descending, then vertex tuple
    double seconds = 0.0;

    friend bool operator==(const PredictionReport&, const PredictionReport&) = default;
};

struct RankedEnergy {
    int scr = 0;
    int dr = 0;
    int multiplicity = 0;
};

// SCR/DR/multiplicity for each entry of an energy vector (any order).
std::vector<RankedEnergy> rank_energies(const std::vector<int>& energies);

PredictionReport rank_predictions(const StemGraph& g, const std::vector<VertexSet>& cliques);

// Union of the member stems' pairs, sorted by 5' index.
PairList prediction_pairs(const FoldPrediction& p, const StemGraph& g);

}  // namespace stemp

#endif  // STEMP_CLIQUE_HPP
