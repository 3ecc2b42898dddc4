#ifndef STEMP_GRAPH_HPP
#define STEMP_GRAPH_HPP

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

namespace stemp {

// Dense bit-row adjacency matrix for an undirected simple graph.
class Adjacency {
   public:
    using Word = std::uint64_t;
    static constexpr std::size_t kBits = 64;

    Adjacency() = default;
    explicit Adjacency(std::size_t n);

    std::size_t size() const { return n_; }
    std::size_t words() const { return words_; }

    void connect(std::size_t u, std::size_t v);
    bool adjacent(std::size_t u, std::size_t v) const {
        return (rows_[u * words_ + v / kBits] >> (v % kBits)) & 1U;
    }
    const Word* row(std::size_t u) const { return rows_.data() + u * words_; }

    std::size_t degree(std::size_t u) const;
    std::size_t edge_count() const;
    // Edges as (u, v) with u < v, in lexicographic order.
    std::vector<std::pair<std::size_t, std::size_t>> edges() const;

    friend bool operator==(const Adjacency&, const Adjacency&) = default;

   private:
    std::size_t n_ = 0;
    std::size_t words_ = 0;
    std::vector<Word> rows_;
};

}  // namespace stemp

#endif  // STEMP_GRAPH_HPP
