#include "stemp/clique.hpp"

#include <algorithm>
#include <bit>
#include <map>

#include "stemp/error.hpp"

namespace stemp {

namespace {

using Word = Adjacency::Word;
using Bits = std::vector<Word>;
constexpr std::size_t kBits = Adjacency::kBits;

class BronKerbosch {
   public:
    BronKerbosch(const Adjacency& g, const CliqueBudget& budget)
        : g_(g), words_(g.words()), budget_(budget), start_(std::chrono::steady_clock::now()) {}

    std::vector<VertexSet> run() {
        Bits p(words_, 0), x(words_, 0);
        for (std::size_t v = 0; v < g_.size(); ++v) p[v / kBits] |= Word{1} << (v % kBits);
        if (g_.size() > 0) expand(p, x);
        std::sort(out_.begin(), out_.end());
        return std::move(out_);
    }

   private:
    static bool empty(const Bits& b) {
        return std::all_of(b.begin(), b.end(), [](Word w) { return w == 0; });
    }

    std::size_t count_in(const Word* row, const Bits& set) const {
        std::size_t c = 0;
        for (std::size_t w = 0; w < words_; ++w) c += static_cast<std::size_t>(std::popcount(row[w] & set[w]));
        return c;
    }

    std::size_t choose_pivot(const Bits& p, const Bits& x) const {
        std::size_t best = 0;
        std::size_t best_count = 0;
        bool found = false;
        for (std::size_t w = 0; w < words_; ++w) {
            Word candidates = p[w] | x[w];
            while (candidates != 0) {
                std::size_t u = w * kBits + static_cast<std::size_t>(std::countr_zero(candidates));
                candidates &= candidates - 1;
                std::size_t c = count_in(g_.row(u), p);
                if (!found || c > best_count) {
                    best = u;
                    best_count = c;
                    found = true;
                }
            }
        }
        return best;
    }

    void check_time() {
        if (!budget_.max_time) return;
        if (++steps_ % 256 != 0) return;
        auto elapsed = std::chrono::steady_clock::now() - start_;
        if (elapsed > *budget_.max_time) {
            throw BudgetExceeded("clique enumeration exceeded the time budget of " +
                                 std::to_string(budget_.max_time->count()) + " ms");
        }
    }

    void emit() {
        if (budget_.max_cliques && out_.size() >= *budget_.max_cliques) {
            throw BudgetExceeded("clique enumeration exceeded the budget of " + std::to_string(*budget_.max_cliques) +
                                 " cliques");
        }
        VertexSet clique = r_;
        std::sort(clique.begin(), clique.end());
        out_.push_back(std::move(clique));
    }

    void expand(Bits& p, Bits& x) {
        check_time();
        if (empty(p)) {
            if (empty(x)) emit();
            return;
        }
        const std::size_t pivot = choose_pivot(p, x);
        const Word* pivot_row = g_.row(pivot);
        Bits todo(words_);
        for (std::size_t w = 0; w < words_; ++w) todo[w] = p[w] & ~pivot_row[w];
        Bits next_p(words_), next_x(words_);
        for (std::size_t w = 0; w < words_; ++w) {
            while (todo[w] != 0) {
                const int bit = std::countr_zero(todo[w]);
                todo[w] &= todo[w] - 1;
                const std::size_t v = w * kBits + static_cast<std::size_t>(bit);
                const Word* row = g_.row(v);
                for (std::size_t k = 0; k < words_; ++k) {
                    next_p[k] = p[k] & row[k];
                    next_x[k] = x[k] & row[k];
                }
                r_.push_back(v);
                expand(next_p, next_x);
                r_.pop_back();
                p[w] &= ~(Word{1} << bit);
                x[w] |= Word{1} << bit;
            }
        }
    }

    const Adjacency& g_;
    std::size_t words_;
    CliqueBudget budget_;
    std::chrono::steady_clock::time_point start_;
    std::size_t steps_ = 0;
    VertexSet r_;
    std::vector<VertexSet> out_;
};

}  // namespace

std::vector<VertexSet> maximal_cliques(const Adjacency& g, const CliqueBudget& budget) {
    return BronKerbosch(g, budget).run();
}

std::vector<RankedEnergy> rank_energies(const std::vector<int>& energies) {
    std::map<int, int, std::greater<>> counts;
    for (int e : energies) ++counts[e];
    std::map<int, RankedEnergy, std::greater<>> ranks;
    int better = 0;
    int dense = 0;
    for (const auto& [energy, count] : counts) {
        ranks[energy] = {better + 1, ++dense, count};
        better += count;
    }
    std::vector<RankedEnergy> out;
    out.reserve(energies.size());
    for (int e : energies) out.push_back(ranks[e]);
    return out;
}

PredictionReport rank_predictions(const StemGraph& g, const std::vector<VertexSet>& cliques) {
    PredictionReport report;
    report.vertex_count = g.size();
    report.edge_count = g.edge_count();
    report.predictions.reserve(cliques.size());
    for (const VertexSet& c : cliques) {
        FoldPrediction p;
        p.vertices = c;
        std::sort(p.vertices.begin(), p.vertices.end());
        for (std::size_t v : p.vertices) p.energy += g.vertices[v].l;
        p.pairs = prediction_pairs(p, g);
        report.predictions.push_back(std::move(p));
    }
    std::sort(report.predictions.begin(), report.predictions.end(), [](const FoldPrediction& a, const FoldPrediction& b) {
        if (a.energy != b.energy) return a.energy > b.energy;
        return a.vertices < b.vertices;
    });
    std::vector<int> energies;
    energies.reserve(report.predictions.size());
    for (const auto& p : report.predictions) energies.push_back(p.energy);
    const auto ranks = rank_energies(energies);
    for (std::size_t k = 0; k < ranks.size(); ++k) {
        report.predictions[k].scr = ranks[k].scr;
        report.predictions[k].dr = ranks[k].dr;
        report.predictions[k].multiplicity = ranks[k].multiplicity;
    }
    return report;
}

PairList prediction_pairs(const FoldPrediction& p, const StemGraph& g) {
    PairList out;
    for (std::size_t v : p.vertices) {
        const auto& pairs = g.vertices.at(v).pairs;
        out.insert(out.end(), pairs.begin(), pairs.end());
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace stemp
