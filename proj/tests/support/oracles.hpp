#pragma once

// Independent reference computations used to cross-check the library.

#include <cstdint>
#include <vector>

#include "icat/ambient.hpp"

namespace oracle {

// |{(a, b) : f a = g b}| by direct counting.
inline std::size_t pullback_size(const icat::FiniteMap& f, const icat::FiniteMap& g) {
  std::size_t n = 0;
  for (auto x : f.table())
    for (auto y : g.table()) n += (x == y);
  return n;
}

// A binary relation on {0..n-1} given row-major; true when reflexive and transitive.
inline bool is_preorder(const std::vector<bool>& r, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i)
    if (!r[i * n + i]) return false;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        if (r[i * n + j] && r[j * n + k] && !r[i * n + k]) return false;
  return true;
}

// Number of walks of length exactly k in a multigraph via adjacency-matrix powers,
// summed over all start and end vertices.
inline std::uint64_t walk_count(std::size_t vertices,
                                const std::vector<std::pair<std::size_t, std::size_t>>& edges,
                                std::size_t k) {
  std::vector<std::uint64_t> adj(vertices * vertices, 0);
  for (auto [s, t] : edges) adj[s * vertices + t] += 1;
  std::vector<std::uint64_t> acc(vertices * vertices, 0);
  for (std::size_t i = 0; i < vertices; ++i) acc[i * vertices + i] = 1;
  for (std::size_t step = 0; step < k; ++step) {
    std::vector<std::uint64_t> next(vertices * vertices, 0);
    for (std::size_t i = 0; i < vertices; ++i)
      for (std::size_t m = 0; m < vertices; ++m)
        for (std::size_t j = 0; j < vertices; ++j)
          next[i * vertices + j] += acc[i * vertices + m] * adj[m * vertices + j];
    acc = std::move(next);
  }
  std::uint64_t total = 0;
  for (auto v : acc) total += v;
  return total;
}

}  // namespace oracle
