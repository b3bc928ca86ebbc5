#include "workbench/graphs.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "workbench/errors.hpp"

namespace workbench::graphs {

Graph::Graph(std::size_t vertex_count, const std::vector<std::pair<std::size_t, std::size_t>>& edges)
    : n_(vertex_count) {
  for (const auto& [i, j] : edges) add_edge(i, j);
}

void Graph::add_edge(std::size_t i, std::size_t j) {
  if (i == j) throw std::invalid_argument("Graph: self-loops are not allowed");
  if (i >= n_ || j >= n_) throw std::invalid_argument("Graph: vertex out of range");
  edges_.insert({std::min(i, j), std::max(i, j)});
}

bool Graph::has_edge(std::size_t i, std::size_t j) const {
  return edges_.count({std::min(i, j), std::max(i, j)}) > 0;
}

Graph Graph::load(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  std::optional<Graph> g;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string head;
    if (!(ls >> head) || head[0] == '#') continue;
    if (head == "n") {
      std::size_t count;
      if (!(ls >> count)) throw ParseError("expected vertex count after 'n'", lineno);
      g.emplace(count);
    } else if (head == "e") {
      if (!g) throw ParseError("edge before vertex count", lineno);
      std::size_t i, j;
      if (!(ls >> i >> j)) throw ParseError("expected 'e <i> <j>'", lineno);
      try {
        g->add_edge(i, j);
      } catch (const std::invalid_argument& ex) {
        throw ParseError(ex.what(), lineno);
      }
    } else {
      throw ParseError("unrecognized directive '" + head + "'", lineno);
    }
  }
  if (!g) throw ParseError("missing 'n' line", lineno);
  return *g;
}

void Graph::save(std::ostream& out) const {
  out << "n " << n_ << '\n';
  for (const auto& [i, j] : edges_) out << "e " << i << ' ' << j << '\n';
}

std::string Graph::to_text() const {
  std::ostringstream os;
  save(os);
  return os.str();
}

Graph Graph::complete(std::size_t n) {
  Graph g(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) g.add_edge(i, j);
  return g;
}

Graph Graph::path(std::size_t n) {
  Graph g(n);
  for (std::size_t i = 0; i + 1 < n; ++i) g.add_edge(i, i + 1);
  return g;
}

Graph Graph::cycle(std::size_t n) {
  Graph g = path(n);
  if (n >= 3) g.add_edge(n - 1, 0);
  return g;
}

Graph Graph::star(std::size_t n) {
  Graph g(n);
  for (std::size_t i = 1; i < n; ++i) g.add_edge(0, i);
  return g;
}

Graph Graph::random(std::size_t n, Rng& rng) {
  Graph g(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (rng.next_bit()) g.add_edge(i, j);
  return g;
}

Permutation::Permutation(std::vector<std::size_t> mapping) : map_(std::move(mapping)) {
  std::vector<bool> seen(map_.size(), false);
  for (std::size_t v : map_) {
    if (v >= map_.size() || seen[v]) throw std::invalid_argument("Permutation: not a bijection");
    seen[v] = true;
  }
}

Permutation Permutation::identity(std::size_t n) {
  std::vector<std::size_t> m(n);
  for (std::size_t i = 0; i < n; ++i) m[i] = i;
  return Permutation(std::move(m));
}

Permutation Permutation::inverse() const {
  std::vector<std::size_t> inv(map_.size());
  for (std::size_t i = 0; i < map_.size(); ++i) inv[map_[i]] = i;
  return Permutation(std::move(inv));
}

Graph apply_permutation(const Permutation& pi, const Graph& g) {
  if (pi.size() != g.vertex_count())
    throw std::invalid_argument("apply_permutation: size mismatch");
  Graph out(g.vertex_count());
  for (const auto& [i, j] : g.edges()) out.add_edge(pi(i), pi(j));
  return out;
}

Permutation compose(const Permutation& outer, const Permutation& inner) {
  if (outer.size() != inner.size()) throw std::invalid_argument("compose: size mismatch");
  std::vector<std::size_t> m(outer.size());
  for (std::size_t v = 0; v < outer.size(); ++v) m[v] = outer(inner(v));
  return Permutation(std::move(m));
}

Permutation random_permutation(std::size_t n, Rng& rng) {
  if (n == 0) throw std::invalid_argument("random_permutation: n must be >= 1");
  std::vector<std::size_t> m(n);
  for (std::size_t i = 0; i < n; ++i) m[i] = i;
  for (std::size_t i = n - 1; i > 0; --i)
    std::swap(m[i], m[rng.below_u64(i + 1)]);
  return Permutation(std::move(m));
}

std::vector<Permutation> all_permutations(std::size_t n) {
  std::vector<std::size_t> m(n);
  for (std::size_t i = 0; i < n; ++i) m[i] = i;
  std::vector<Permutation> out;
  do {
    out.push_back(Permutation(m));
  } while (std::next_permutation(m.begin(), m.end()));
  return out;
}

std::optional<Permutation> are_isomorphic_bruteforce(const Graph& g1, const Graph& g2,
                                                     std::size_t vertex_limit) {
  if (g1.vertex_count() != g2.vertex_count()) return std::nullopt;
  if (g1.vertex_count() > vertex_limit)
    throw ResourceLimitError("are_isomorphic_bruteforce: graph too large for exhaustive search");
  if (g1.edge_count() != g2.edge_count()) return std::nullopt;
  std::vector<std::size_t> m(g1.vertex_count());
  for (std::size_t i = 0; i < m.size(); ++i) m[i] = i;
  do {
    Permutation pi(m);
    if (apply_permutation(pi, g1) == g2) return pi;
  } while (std::next_permutation(m.begin(), m.end()));
  return std::nullopt;
}

char color_letter(Color c) {
  switch (c) {
    case Color::red: return 'R';
    case Color::green: return 'G';
    case Color::blue: return 'B';
  }
  throw std::invalid_argument("color_letter: bad color");
}

Color color_from_letter(char c) {
  switch (c) {
    case 'R': return Color::red;
    case 'G': return Color::green;
    case 'B': return Color::blue;
    default: throw std::invalid_argument("color_from_letter: expected R, G, or B");
  }
}

Coloring3 Coloring3::load(std::istream& in, std::size_t vertex_count) {
  Coloring3 psi;
  psi.assignment.assign(vertex_count, Color::red);
  std::vector<bool> seen(vertex_count, false);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string head;
    if (!(ls >> head) || head[0] == '#') continue;
    if (head != "c") throw ParseError("expected 'c <vertex> <R|G|B>'", lineno);
    std::size_t v;
    std::string color;
    if (!(ls >> v >> color) || color.size() != 1 || v >= vertex_count)
      throw ParseError("expected 'c <vertex> <R|G|B>'", lineno);
    psi.assignment[v] = color_from_letter(color[0]);
    seen[v] = true;
  }
  for (std::size_t v = 0; v < vertex_count; ++v)
    if (!seen[v]) throw ParseError("vertex " + std::to_string(v) + " has no color", lineno);
  return psi;
}

void Coloring3::save(std::ostream& out) const {
  for (std::size_t v = 0; v < assignment.size(); ++v)
    out << "c " << v << ' ' << color_letter(assignment[v]) << '\n';
}

bool is_legal_3coloring(const Graph& g, const Coloring3& psi) {
  if (psi.assignment.size() != g.vertex_count())
    throw std::invalid_argument("is_legal_3coloring: size mismatch");
  for (const auto& [i, j] : g.edges())
    if (psi.assignment[i] == psi.assignment[j]) return false;
  return true;
}

std::vector<Coloring3> enumerate_3colorings(const Graph& g, std::size_t vertex_limit) {
  const std::size_t n = g.vertex_count();
  if (n > vertex_limit)
    throw ResourceLimitError("enumerate_3colorings: graph too large for exhaustive enumeration");
  std::vector<Coloring3> out;
  Coloring3 psi;
  psi.assignment.assign(n, Color::red);
  for (;;) {
    if (is_legal_3coloring(g, psi)) out.push_back(psi);
    // Odometer step through the 3^n assignments, last vertex fastest.
    std::size_t v = n;
    while (v > 0) {
      --v;
      if (psi.assignment[v] != Color::blue) {
        psi.assignment[v] = static_cast<Color>(static_cast<std::uint8_t>(psi.assignment[v]) + 1);
        break;
      }
      psi.assignment[v] = Color::red;
      if (v == 0) return out;
    }
    if (n == 0) return out;
  }
}

}  // namespace workbench::graphs
