#include "synq/graph.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <sstream>
#include <stdexcept>

namespace synq {

Graph::Graph(int n) : n_(n), adj_(n) {
  if (n < 0 || n > kMaxVertices) throw std::invalid_argument("Graph: vertex count out of range");
}

void Graph::check_vertex(int v) const {
  if (v < 0 || v >= n_) throw std::invalid_argument("Graph: vertex index out of range");
}

int Graph::n_edges() const {
  int m = 0;
  for (int v = 0; v < n_; ++v) m += static_cast<int>(adj_[v].count());
  return m / 2;
}

void Graph::add_edge(int u, int v) {
  check_vertex(u);
  check_vertex(v);
  if (u == v) throw std::invalid_argument("Graph: loop edge rejected");
  adj_[u].set(v);
  adj_[v].set(u);
}

void Graph::remove_edge(int u, int v) {
  check_vertex(u);
  check_vertex(v);
  adj_[u].reset(v);
  adj_[v].reset(u);
}

bool Graph::has_edge(int u, int v) const {
  check_vertex(u);
  check_vertex(v);
  return u != v && adj_[u].test(v);
}

VertexSet Graph::closed_neighborhood(int v) const {
  check_vertex(v);
  VertexSet s = adj_[v];
  s.set(v);
  return s;
}

std::vector<std::pair<int, int>> Graph::edges() const {
  std::vector<std::pair<int, int>> out;
  for (int u = 0; u < n_; ++u)
    for (int v = u + 1; v < n_; ++v)
      if (adj_[u].test(v)) out.emplace_back(u, v);
  return out;
}

Graph Graph::complement() const {
  Graph g(n_);
  for (int u = 0; u < n_; ++u)
    for (int v = u + 1; v < n_; ++v)
      if (!adj_[u].test(v)) g.add_edge(u, v);
  return g;
}

Graph Graph::complete(int n) {
  Graph g(n);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) g.add_edge(u, v);
  return g;
}

Graph Graph::cycle(int n) {
  Graph g(n);
  if (n == 2) {
    g.add_edge(0, 1);
    return g;
  }
  for (int v = 0; v < n; ++v) g.add_edge(v, (v + 1) % n);
  return g;
}

Graph parse_dimacs(std::string_view text) {
  std::istringstream is{std::string(text)};
  std::string line;
  int n = -1, m_declared = 0, lineno = 0;
  Graph g;
  auto fail = [&](const std::string& what) {
    throw std::invalid_argument("dimacs parse error on line " + std::to_string(lineno) + ": " +
                                what);
  };
  while (std::getline(is, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string head;
    if (!(ls >> head)) continue;
    if (head == "c") continue;
    if (head == "p") {
      std::string fmt;
      if (n >= 0) fail("duplicate header");
      if (!(ls >> fmt >> n >> m_declared) || fmt != "edge" || n < 0) fail("malformed header");
      g = Graph(n);
    } else if (head == "e") {
      if (n < 0) fail("edge before header");
      int u, v;
      if (!(ls >> u >> v)) fail("malformed edge line");
      if (u < 1 || u > n || v < 1 || v > n) fail("vertex index out of range");
      if (u == v) fail("loop edge");
      g.add_edge(u - 1, v - 1);  // duplicates collapse in the bitset
    } else {
      fail("unrecognized line '" + head + "'");
    }
  }
  if (n < 0) {
    lineno = 0;
    fail("missing 'p edge' header");
  }
  return g;
}

std::string to_dimacs(const Graph& g) {
  std::ostringstream os;
  auto es = g.edges();
  os << "p edge " << g.n_vertices() << " " << es.size() << "\n";
  for (auto [u, v] : es) os << "e " << u + 1 << " " << v + 1 << "\n";
  return os.str();
}

std::string adjacency_text(const Graph& g) {
  std::ostringstream os;
  for (int v = 0; v < g.n_vertices(); ++v) {
    os << v << ":";
    for (int u = 0; u < g.n_vertices(); ++u)
      if (g.neighbors(v).test(u)) os << " " << u;
    os << "\n";
  }
  return os.str();
}

namespace {

void bron_kerbosch(const Graph& g, VertexSet r, VertexSet p, VertexSet x,
                   std::vector<VertexSet>& out) {
  if (p.none() && x.none()) {
    out.push_back(r);
    return;
  }
  // pivot: vertex of P ∪ X with the most neighbours inside P
  int pivot = -1;
  std::size_t best = 0;
  VertexSet px = p | x;
  for (int v = 0; v < g.n_vertices(); ++v) {
    if (!px.test(v)) continue;
    std::size_t c = (p & g.neighbors(v)).count();
    if (pivot < 0 || c > best) {
      pivot = v;
      best = c;
    }
  }
  VertexSet cand = pivot >= 0 ? p & ~g.neighbors(pivot) : p;
  for (int v = 0; v < g.n_vertices(); ++v) {
    if (!cand.test(v)) continue;
    VertexSet rv = r;
    rv.set(v);
    bron_kerbosch(g, rv, p & g.neighbors(v), x & g.neighbors(v), out);
    p.reset(v);
    x.set(v);
  }
}

void enumerate_k_cliques(const Graph& g, int k, int min_vertex, VertexSet current,
                         VertexSet cand, std::vector<VertexSet>& out) {
  if (k == 0) {
    out.push_back(current);
    return;
  }
  for (int v = min_vertex; v < g.n_vertices(); ++v) {
    if (!cand.test(v)) continue;
    VertexSet cur = current;
    cur.set(v);
    enumerate_k_cliques(g, k - 1, v + 1, cur, cand & g.neighbors(v), out);
  }
}

}  // namespace

std::vector<VertexSet> maximal_cliques(const Graph& g) {
  std::vector<VertexSet> out;
  VertexSet p;
  for (int v = 0; v < g.n_vertices(); ++v) p.set(v);
  bron_kerbosch(g, VertexSet{}, p, VertexSet{}, out);
  return out;
}

std::vector<VertexSet> cliques_of_size(const Graph& g, int k) {
  std::vector<VertexSet> out;
  if (k < 0) return out;
  VertexSet all;
  for (int v = 0; v < g.n_vertices(); ++v) all.set(v);
  enumerate_k_cliques(g, k, 0, VertexSet{}, all, out);
  return out;
}

int clique_number(const Graph& g) {
  std::size_t best = 0;
  for (const auto& c : maximal_cliques(g)) best = std::max(best, c.count());
  return static_cast<int>(best);
}

bool has_clique(const Graph& g, int k) {
  if (k <= 0) return true;
  if (k == 1) return g.n_vertices() > 0;
  return clique_number(g) >= k;
}

CliqueCore clique_core(const Graph& g, int n) {
  if (n < 2) throw std::invalid_argument("clique_core: n must be >= 2");
  CliqueCore cc;
  cc.masked = Graph(g.n_vertices());
  for (const auto& m : maximal_cliques(g)) {
    if (static_cast<int>(m.count()) < n) continue;
    cc.kept |= m;
    for (int u = 0; u < g.n_vertices(); ++u) {
      if (!m.test(u)) continue;
      for (int v = u + 1; v < g.n_vertices(); ++v)
        if (m.test(v)) cc.masked.add_edge(u, v);
    }
  }
  std::vector<int> to_core(g.n_vertices(), -1);
  for (int v = 0; v < g.n_vertices(); ++v) {
    if (cc.kept.test(v)) {
      to_core[v] = static_cast<int>(cc.vertex_map.size());
      cc.vertex_map.push_back(v);
    }
  }
  cc.core = Graph(static_cast<int>(cc.vertex_map.size()));
  for (auto [u, v] : cc.masked.edges()) cc.core.add_edge(to_core[u], to_core[v]);
  return cc;
}

std::vector<HSet> minimal_h_sets(const Graph& g, int n, int size_cap) {
  CliqueCore cc = clique_core(g, n);
  const int q = cc.core.n_vertices();
  if (q == 0) throw std::invalid_argument("minimal_h_sets: empty clique core");
  if (q > size_cap)
    throw std::invalid_argument("minimal_h_sets: core size " + std::to_string(q) +
                                " exceeds cap " + std::to_string(size_cap));
  std::vector<VertexSet> cliques = cliques_of_size(cc.core, n);

  // mask per clique for fast popcount against subsets of [q]
  std::vector<std::uint64_t> cmask;
  const int words = (q + 63) / 64;
  if (words > 1) throw std::invalid_argument("minimal_h_sets: core too large");
  for (const auto& c : cliques) {
    std::uint64_t m = 0;
    for (int v = 0; v < q; ++v)
      if (c.test(v)) m |= (1ull << v);
    cmask.push_back(m);
  }

  auto constant_intersection = [&](std::uint64_t h, int& m_out) {
    int m = -1;
    for (std::uint64_t c : cmask) {
      int k = std::popcount(c & h);
      if (m < 0)
        m = k;
      else if (k != m)
        return false;
    }
    m_out = m;
    return true;
  };

  // subsets in increasing popcount order; a set is inclusion-minimal iff no
  // smaller constant-intersection set sits inside it
  std::vector<std::uint64_t> subsets;
  for (std::uint64_t h = 1; h < (1ull << q); ++h) subsets.push_back(h);
  std::sort(subsets.begin(), subsets.end(), [](std::uint64_t a, std::uint64_t b) {
    int pa = std::popcount(a), pb = std::popcount(b);
    return pa != pb ? pa < pb : a < b;
  });

  struct Found {
    std::uint64_t mask;
    int m;
  };
  std::vector<Found> minimal;
  std::vector<std::uint64_t> all_constant;
  for (std::uint64_t h : subsets) {
    int m = 0;
    if (!constant_intersection(h, m)) continue;
    all_constant.push_back(h);
    bool has_smaller = false;
    for (const auto& f : minimal)
      if ((f.mask & h) == f.mask && f.mask != h) {
        has_smaller = true;
        break;
      }
    if (!has_smaller) minimal.push_back({h, m});
  }

  // decomposability check against the full constant-set list
  auto is_constant = [&](std::uint64_t s) {
    return std::find(all_constant.begin(), all_constant.end(), s) != all_constant.end();
  };
  std::vector<HSet> out;
  for (const auto& f : minimal) {
    HSet hs;
    for (int v = 0; v < q; ++v)
      if (f.mask & (1ull << v)) hs.vertices.set(cc.vertex_map[v]);
    hs.multiplicity = f.m;
    hs.inclusion_minimal = true;  // by construction; re-derive decomposability below
    bool decomposable = false;
    for (std::uint64_t s = (f.mask - 1) & f.mask; s; s = (s - 1) & f.mask) {
      if (s == f.mask) continue;
      if (is_constant(s) && is_constant(f.mask & ~s)) {
        decomposable = true;
        break;
      }
    }
    hs.indecomposable = !decomposable;
    out.push_back(hs);
  }
  return out;
}

namespace {

bool colorable(const Graph& g, int k, const std::vector<int>& order, std::vector<int>& color,
               std::size_t idx) {
  if (idx == order.size()) return true;
  int v = order[idx];
  int used_new = 0;  // symmetry break: first use of a fresh colour
  for (int c = 0; c < k; ++c) {
    bool ok = true;
    for (int u = 0; u < g.n_vertices(); ++u)
      if (g.neighbors(v).test(u) && color[u] == c) {
        ok = false;
        break;
      }
    if (!ok) continue;
    bool fresh = true;
    for (int u = 0; u < g.n_vertices(); ++u)
      if (color[u] == c) fresh = false;
    if (fresh) {
      if (used_new) break;  // only try one fresh colour
      used_new = 1;
    }
    color[v] = c;
    if (colorable(g, k, order, color, idx + 1)) return true;
    color[v] = -1;
  }
  return false;
}

}  // namespace

int chromatic_number(const Graph& g) {
  const int n = g.n_vertices();
  if (n == 0) return 0;
  std::vector<int> order(n);
  for (int v = 0; v < n; ++v) order[v] = v;
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return g.neighbors(a).count() > g.neighbors(b).count();
  });
  int lo = clique_number(g);
  for (int k = std::max(lo, 1); k <= n; ++k) {
    std::vector<int> color(n, -1);
    if (colorable(g, k, order, color, 0)) return k;
  }
  return n;
}

ExactInvariants exact_invariants(const Graph& g) {
  if (g.n_vertices() > 12)
    throw std::invalid_argument("exact_invariants: graph larger than 12 vertices");
  return ExactInvariants{clique_number(g), chromatic_number(g)};
}

}  // namespace synq
