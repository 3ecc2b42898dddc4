#include "stemp/graph.hpp"

#include <bit>

namespace stemp {

Adjacency::Adjacency(std::size_t n) : n_(n), words_((n + kBits - 1) / kBits), rows_(n * words_, 0) {}

void Adjacency::connect(std::size_t u, std::size_t v) {
    if (u == v) return;
    rows_[u * words_ + v / kBits] |= Word{1} << (v % kBits);
    rows_[v * words_ + u / kBits] |= Word{1} << (u % kBits);
}

std::size_t Adjacency::degree(std::size_t u) const {
    std::size_t count = 0;
    for (std::size_t w = 0; w < words_; ++w) count += static_cast<std::size_t>(std::popcount(row(u)[w]));
    return count;
}

std::size_t Adjacency::edge_count() const {
    std::size_t total = 0;
    for (std::size_t u = 0; u < n_; ++u) total += degree(u);
    return total / 2;
}

std::vector<std::pair<std::size_t, std::size_t>> Adjacency::edges() const {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t u = 0; u < n_; ++u) {
        for (std::size_t v = u + 1; v < n_; ++v) {
            if (adjacent(u, v)) out.emplace_back(u, v);
        }
    }
    return out;
}

}  // namespace stemp
