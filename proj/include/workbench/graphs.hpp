#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "workbench/rng.hpp"

namespace workbench::graphs {

// Simple undirected graph on vertices 0..n-1: no self-loops, no duplicate
// edges. Equality is exact equality of vertex count and edge set on the
// given labels; no isomorphism quotient.
class Graph {
 public:
  Graph() = default;
  explicit Graph(std::size_t vertex_count) : n_(vertex_count) {}
  Graph(std::size_t vertex_count, const std::vector<std::pair<std::size_t, std::size_t>>& edges);

  std::size_t vertex_count() const { return n_; }
  std::size_t edge_count() const { return edges_.size(); }
  const std::set<std::pair<std::size_t, std::size_t>>& edges() const { return edges_; }

  void add_edge(std::size_t i, std::size_t j);
  bool has_edge(std::size_t i, std::size_t j) const;

  // Text format: "n <count>" first, then one "e <i> <j>" line per edge.
  static Graph load(std::istream& in);
  void save(std::ostream& out) const;
  std::string to_text() const;

  friend bool operator==(const Graph&, const Graph&) = default;
  friend bool operator<(const Graph& a, const Graph& b) {
    return a.n_ != b.n_ ? a.n_ < b.n_ : a.edges_ < b.edges_;
  }

  static Graph complete(std::size_t n);
  static Graph path(std::size_t n);   // 0-1-2-...-(n-1)
  static Graph cycle(std::size_t n);  // path plus closing edge
  static Graph star(std::size_t n);   // vertex 0 joined to all others
  // Each edge present independently with probability 1/2.
  static Graph random(std::size_t n, Rng& rng);

 private:
  std::size_t n_ = 0;
  std::set<std::pair<std::size_t, std::size_t>> edges_;  // stored with i < j
};

// Bijection on [0, n): mapping[v] is the image of v.
class Permutation {
 public:
  Permutation() = default;
  explicit Permutation(std::vector<std::size_t> mapping);
  static Permutation identity(std::size_t n);

  std::size_t size() const { return map_.size(); }
  std::size_t operator()(std::size_t v) const { return map_[v]; }
  const std::vector<std::size_t>& mapping() const { return map_; }

  Permutation inverse() const;

  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend bool operator<(const Permutation& a, const Permutation& b) { return a.map_ < b.map_; }

 private:
  std::vector<std::size_t> map_;
};

// Image graph: {i, j} is an edge exactly when {pi(i), pi(j)} is.
Graph apply_permutation(const Permutation& pi, const Graph& g);

// (outer o inner)(v) = outer(inner(v)), so
// apply(outer, apply(inner, G)) == apply(compose(outer, inner), G).
Permutation compose(const Permutation& outer, const Permutation& inner);

// Uniform over all n! permutations (Fisher-Yates); deterministic per seed.
Permutation random_permutation(std::size_t n, Rng& rng);

// All n! permutations of [0, n) in lexicographic order; test/enumeration aid.
std::vector<Permutation> all_permutations(std::size_t n);

// Exhaustive isomorphism search; returns a witness with
// apply_permutation(pi, g1) == g2, or empty. Guarded to n <= 8 by default.
std::optional<Permutation> are_isomorphic_bruteforce(const Graph& g1, const Graph& g2,
                                                     std::size_t vertex_limit = 8);

enum class Color : std::uint8_t { red, green, blue };

char color_letter(Color c);
Color color_from_letter(char c);

// Vertex coloring with three colors; pairs with a graph of equal size.
struct Coloring3 {
  std::vector<Color> assignment;

  // Text format: one "c <vertex> <R|G|B>" line per vertex.
  static Coloring3 load(std::istream& in, std::size_t vertex_count);
  void save(std::ostream& out) const;

  friend bool operator==(const Coloring3&, const Coloring3&) = default;
};

// True iff every edge joins two distinct colors.
bool is_legal_3coloring(const Graph& g, const Coloring3& psi);

// All legal colorings in lexicographic order of the assignment vector
// (red < green < blue). Guarded to n <= 12.
std::vector<Coloring3> enumerate_3colorings(const Graph& g, std::size_t vertex_limit = 12);

}  // namespace workbench::graphs
