#pragma once

#include <algorithm>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "pxgt/perm.hpp"

namespace pxgt {

// Finite simple graph: indexed sorted adjacency lists plus a canonical
// (lexicographically sorted) edge list of pairs u < v.
class Graph {
public:
  Graph() = default;

  Graph(std::size_t n, std::vector<std::pair<Point, Point>> edges) : n_(n)
  {
    for (auto &[u, v] : edges) {
      if (u >= n_ || v >= n_)
        throw std::invalid_argument("Graph: vertex out of range");
      if (u == v)
        throw std::invalid_argument("Graph: loops not allowed");
      if (u > v)
        std::swap(u, v);
    }
    std::sort(edges.begin(), edges.end());
    if (std::adjacent_find(edges.begin(), edges.end()) != edges.end())
      throw std::invalid_argument("Graph: multi-edges not allowed");
    edges_ = std::move(edges);
    adj_.assign(n_, {});
    for (auto [u, v] : edges_) {
      adj_[u].push_back(v);
      adj_[v].push_back(u);
    }
    for (auto &l : adj_)
      std::sort(l.begin(), l.end());
  }

  std::size_t num_vertices() const { return n_; }
  std::size_t num_edges() const { return edges_.size(); }
  const std::vector<std::pair<Point, Point>> &edges() const { return edges_; }
  const std::vector<Point> &neighbours(Point v) const { return adj_[v]; }
  std::size_t degree(Point v) const { return adj_[v].size(); }

  bool adjacent(Point u, Point v) const
  {
    return std::binary_search(adj_[u].begin(), adj_[u].end(), v);
  }

  // uniform valency, if the graph is regular
  std::optional<std::size_t> valency() const
  {
    if (n_ == 0)
      return std::nullopt;
    std::size_t d = degree(0);
    for (Point v = 1; v < n_; ++v)
      if (degree(v) != d)
        return std::nullopt;
    return d;
  }

  bool connected() const
  {
    if (n_ == 0)
      return true;
    std::vector<bool> seen(n_, false);
    std::vector<Point> queue{0};
    seen[0] = true;
    std::size_t cnt = 1;
    while (!queue.empty()) {
      Point x = queue.back();
      queue.pop_back();
      for (Point y : adj_[x])
        if (!seen[y]) {
          seen[y] = true;
          ++cnt;
          queue.push_back(y);
        }
    }
    return cnt == n_;
  }

  std::string to_text() const
  {
    std::ostringstream os;
    os << "graph " << n_ << ' ' << edges_.size() << '\n';
    for (auto [u, v] : edges_)
      os << u << ' ' << v << '\n';
    return os.str();
  }

  static Graph from_text(std::istream &in);

private:
  std::size_t n_ = 0;
  std::vector<std::vector<Point>> adj_;
  std::vector<std::pair<Point, Point>> edges_;
};

// Finite digraph as out-adjacency lists with a sorted arc list.
class Digraph {
public:
  Digraph() = default;

  Digraph(std::size_t n, std::vector<std::pair<Point, Point>> arcs) : n_(n)
  {
    for (auto [u, v] : arcs) {
      if (u >= n_ || v >= n_)
        throw std::invalid_argument("Digraph: vertex out of range");
      if (u == v)
        throw std::invalid_argument("Digraph: loops not allowed");
    }
    std::sort(arcs.begin(), arcs.end());
    if (std::adjacent_find(arcs.begin(), arcs.end()) != arcs.end())
      throw std::invalid_argument("Digraph: repeated arcs not allowed");
    arcs_ = std::move(arcs);
    out_.assign(n_, {});
    in_.assign(n_, {});
    for (auto [u, v] : arcs_) {
      out_[u].push_back(v);
      in_[v].push_back(u);
    }
  }

  std::size_t num_vertices() const { return n_; }
  std::size_t num_arcs() const { return arcs_.size(); }
  const std::vector<std::pair<Point, Point>> &arcs() const { return arcs_; }
  const std::vector<Point> &out_neighbours(Point v) const { return out_[v]; }
  const std::vector<Point> &in_neighbours(Point v) const { return in_[v]; }

  bool has_arc(Point u, Point v) const
  {
    return std::binary_search(arcs_.begin(), arcs_.end(),
                              std::make_pair(u, v));
  }

  // no arc coexists with its reverse
  bool is_asymmetric() const
  {
    for (auto [u, v] : arcs_)
      if (has_arc(v, u))
        return false;
    return true;
  }

  std::optional<std::size_t> out_valency() const
  {
    if (n_ == 0)
      return std::nullopt;
    std::size_t d = out_[0].size();
    for (Point v = 1; v < n_; ++v)
      if (out_[v].size() != d)
        return std::nullopt;
    return d;
  }

  std::optional<std::size_t> in_valency() const
  {
    if (n_ == 0)
      return std::nullopt;
    std::size_t d = in_[0].size();
    for (Point v = 1; v < n_; ++v)
      if (in_[v].size() != d)
        return std::nullopt;
    return d;
  }

  Graph underlying_graph() const
  {
    std::vector<std::pair<Point, Point>> edges;
    for (auto [u, v] : arcs_) {
      Point a = std::min(u, v), b = std::max(u, v);
      edges.emplace_back(a, b);
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    return Graph(n_, std::move(edges));
  }

  std::string to_text() const
  {
    std::ostringstream os;
    os << "digraph " << n_ << ' ' << arcs_.size() << '\n';
    for (auto [u, v] : arcs_)
      os << u << ' ' << v << '\n';
    return os.str();
  }

  static Digraph from_text(std::istream &in);

private:
  std::size_t n_ = 0;
  std::vector<std::vector<Point>> out_, in_;
  std::vector<std::pair<Point, Point>> arcs_;
};

namespace detail {

inline std::vector<std::pair<Point, Point>>
parse_pair_lines(std::istream &in, std::size_t m, const char *what)
{
  std::vector<std::pair<Point, Point>> out;
  std::string line;
  std::size_t lineno = 1;
  while (out.size() < m) {
    if (!std::getline(in, line))
      throw std::invalid_argument(std::string(what) +
                                  ": unexpected end of input at line " +
                                  std::to_string(lineno + 1));
    ++lineno;
    std::istringstream ls(line);
    long long u, v;
    if (!(ls >> u >> v) || u < 0 || v < 0)
      throw std::invalid_argument(std::string(what) + ": bad pair at line " +
                                  std::to_string(lineno));
    out.emplace_back(static_cast<Point>(u), static_cast<Point>(v));
  }
  return out;
}

} // namespace detail

inline Graph Graph::from_text(std::istream &in)
{
  std::string head;
  std::size_t n, m;
  if (!(in >> head >> n >> m) || head != "graph")
    throw std::invalid_argument("Graph: expected header 'graph n m'");
  std::string rest;
  std::getline(in, rest);
  return Graph(n, detail::parse_pair_lines(in, m, "Graph"));
}

inline Digraph Digraph::from_text(std::istream &in)
{
  std::string head;
  std::size_t n, m;
  if (!(in >> head >> n >> m) || head != "digraph")
    throw std::invalid_argument("Digraph: expected header 'digraph n m'");
  std::string rest;
  std::getline(in, rest);
  return Digraph(n, detail::parse_pair_lines(in, m, "Digraph"));
}

inline bool is_automorphism(const Graph &G, const Perm &g)
{
  if (g.degree() != G.num_vertices())
    return false;
  for (auto [u, v] : G.edges())
    if (!G.adjacent(g[u], g[v]))
      return false;
  return true;
}

inline bool is_automorphism(const Digraph &D, const Perm &g)
{
  if (g.degree() != D.num_vertices())
    return false;
  for (auto [u, v] : D.arcs())
    if (!D.has_arc(g[u], g[v]))
      return false;
  return true;
}

} // namespace pxgt
