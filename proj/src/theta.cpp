#include "synq/theta.hpp"

#include <algorithm>
#include <stdexcept>

#include "synq/games.hpp"

namespace synq {

DenseSDP theta_sdp(const Graph& g) {
  if (g.n_vertices() < 1 || g.n_vertices() > 200)
    throw std::invalid_argument("theta_sdp: vertex count outside [1, 200]");
  DenseSDP sdp;
  int blk = sdp.add_block(g.n_vertices());
  for (int u = 0; u < g.n_vertices(); ++u)
    for (int v = 0; v < g.n_vertices(); ++v) sdp.set_objective(blk, u, v, 1.0);
  int cons = 0;
  for (auto [u, v] : g.edges()) {
    sdp.rhs.push_back(0.0);
    sdp.add_entry(cons++, blk, u, v, 1.0);
  }
  sdp.rhs.push_back(1.0);
  for (int v = 0; v < g.n_vertices(); ++v) sdp.add_entry(cons, blk, v, v, 1.0);
  return sdp;
}

ThetaResult lovasz_theta(const Graph& g, double tol) {
  DenseSDP sdp = theta_sdp(g);
  ThetaResult tr;
  tr.solution = solve(sdp, tol, 200);
  if (tr.solution.status != SolveStatus::optimal)
    throw std::runtime_error("lovasz_theta: solver failed (" + tr.solution.message + ")");
  tr.value = tr.solution.objective;
  tr.witness = tr.solution.X[0];
  tr.tolerance = tr.solution.achieved_tol;
  return tr;
}

LcWitness lc_theta_witness(const Graph& g, int n, int size_cap) {
  if (n < 2) throw std::invalid_argument("lc_theta_witness: n must be >= 2");
  if (lc_dimension(g, n) == 0)
    throw std::invalid_argument("lc_theta_witness: lc algebra is trivial (no n-clique)");
  LcWitness w;
  w.n = n;
  CliqueCore cc = clique_core(g, n);
  w.core = cc.kept;
  std::vector<HSet> hsets = minimal_h_sets(g, n, size_cap);
  for (const auto& hs : hsets) {
    if (hs.multiplicity != 1) {
      w.reason = "a minimal H set has multiplicity " + std::to_string(hs.multiplicity) +
                 "; the m = 1 construction does not apply";
      return w;
    }
  }
  if (hsets.empty()) {
    w.reason = "no constant-intersection vertex sets found";
    return w;
  }

  // H_max: maximum cardinality, ties by lexicographically smallest vertex set
  auto as_list = [&](const VertexSet& s) {
    std::vector<int> v;
    for (int i = 0; i < g.n_vertices(); ++i)
      if (s.test(i)) v.push_back(i);
    return v;
  };
  std::size_t best = 0;
  for (std::size_t i = 1; i < hsets.size(); ++i) {
    auto a = as_list(hsets[i].vertices), b = as_list(hsets[best].vertices);
    if (a.size() > b.size() || (a.size() == b.size() && a < b)) best = i;
  }
  w.hmax = hsets[best].vertices;
  std::vector<int> hverts = as_list(w.hmax);
  w.h = static_cast<int>(hverts.size());
  std::vector<int> pos(g.n_vertices(), -1);
  for (int i = 0; i < w.h; ++i) pos[hverts[i]] = i;

  w.tau.assign(g.n_vertices(), std::vector<int>(w.h, 0));
  for (int v = 0; v < g.n_vertices(); ++v) {
    if (!w.core.test(v)) continue;  // zero row, flagged via `core`
    if (w.hmax.test(v)) {
      w.tau[v][pos[v]] = 1;
    } else {
      VertexSet idx = g.neighbors(v) & w.hmax;
      for (int u = 0; u < g.n_vertices(); ++u)
        if (idx.test(u)) w.tau[v][pos[u]] = 1;
    }
  }

  // the proof needs disjoint neighbour-index sets inside each H set
  for (const auto& hs : hsets) {
    std::vector<int> used(w.h, 0);
    for (int v = 0; v < g.n_vertices(); ++v) {
      if (!hs.vertices.test(v) || w.hmax.test(v)) continue;
      for (int i = 0; i < w.h; ++i) {
        if (!w.tau[v][i]) continue;
        if (used[i]++) {
          w.reason = "neighbour index sets overlap inside an H set";
          return w;
        }
      }
    }
  }

  const int nv = g.n_vertices();
  w.gram.assign(nv, RatVec(nv, Rat(0)));
  for (int u = 0; u < nv; ++u)
    for (int v = u; v < nv; ++v) {
      long dot = 0;
      for (int i = 0; i < w.h; ++i) dot += w.tau[u][i] * w.tau[v][i];
      w.gram[u][v] = Rat(dot);
      w.gram[v][u] = Rat(dot);
    }

  w.zero_pattern_ok = true;
  for (int u = 0; u < nv && w.zero_pattern_ok; ++u)
    for (int v = u + 1; v < nv; ++v) {
      if (!w.core.test(u) || !w.core.test(v)) continue;
      if (!cc.masked.has_edge(u, v) && w.gram[u][v] != 0) {
        w.zero_pattern_ok = false;
        break;
      }
    }
  w.psd_ok = psd_check(w.gram);

  Rat total(0), trace(0);
  for (int u = 0; u < nv; ++u) {
    trace += w.gram[u][u];
    for (int v = 0; v < nv; ++v) total += w.gram[u][v];
  }
  if (trace == 0) {
    w.reason = "witness collapsed to zero";
    return w;
  }
  w.ratio = total / trace;
  w.ratio_ok = (w.ratio == Rat(n));

  if (!w.zero_pattern_ok)
    w.reason = "Gram matrix does not vanish on a non-adjacent core pair";
  else if (!w.psd_ok)
    w.reason = "exact LDL^T rejected the Gram matrix";
  else if (!w.ratio_ok)
    w.reason = "ratio differs from n: " + to_string(w.ratio);
  w.supported = w.zero_pattern_ok && w.psd_ok && w.ratio_ok;
  return w;
}

SandwichReport sandwich(const Graph& g, double tol) {
  SandwichReport r;
  ExactInvariants inv = exact_invariants(g);
  r.omega = inv.clique_number;
  r.chi = inv.chromatic_number;
  r.theta_complement = lovasz_theta(g.complement()).value;
  r.ok = r.omega <= r.theta_complement + tol && r.theta_complement <= r.chi + tol;
  return r;
}

}  // namespace synq
