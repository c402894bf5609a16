// Temporary development smoke driver; replaced by the doctest suites.
#include <chrono>
#include <cmath>
#include <cstdio>

#include "synq/games.hpp"
#include "synq/graph.hpp"
#include "synq/groebner.hpp"
#include "synq/sdp.hpp"

using namespace synq;

static DenseSDP theta_sdp(const Graph& g) {
  DenseSDP sdp;
  int blk = sdp.add_block(std::max(1, g.n_vertices()));
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

static void theta_check(const char* name, const Graph& g, double expect) {
  auto t0 = std::chrono::steady_clock::now();
  DenseSDP sdp = theta_sdp(g);
  Solution sol = solve(sdp, 1e-8, 200);
  auto t1 = std::chrono::steady_clock::now();
  ResidualReport rr = verify_solution(sdp, sol, 1e-6);
  std::printf("theta(%s): status=%d value=%.9f expect=%.9f err=%.2e iters=%d verify=%d [%.3fs]\n",
              name, static_cast<int>(sol.status), sol.objective, expect,
              std::fabs(sol.objective - expect), sol.iterations, rr.ok ? 1 : 0,
              std::chrono::duration<double>(t1 - t0).count());
  std::fflush(stdout);
}

int main() {
  theta_check("K5bar", Graph(5), 5.0);                     // empty graph on 5
  theta_check("K5", Graph::complete(5), 1.0);
  theta_check("C5", Graph::cycle(5), std::sqrt(5.0));
  theta_check("Petersen-ish C7", Graph::cycle(7), 0.0);    // value printed only

  // infeasible: diagonal of psd block forced to -1
  {
    DenseSDP sdp;
    int blk = sdp.add_block(2);
    sdp.rhs.push_back(-1.0);
    sdp.add_entry(0, blk, 0, 0, 1.0);
    Solution sol = solve(sdp, 1e-8, 200);
    std::printf("infeasible test: status=%d kind=%d msg=%s\n", static_cast<int>(sol.status),
                static_cast<int>(sol.infeasible_kind), sol.message.c_str());
  }
  // max t s.t. [5 - t] >= 0  encoded as X11 with <A,X>=5... direct form:
  // maximize x11 subject to x11 + s = 5 with s >= 0 (two 1x1 blocks)
  {
    DenseSDP sdp;
    int b1 = sdp.add_block(1), b2 = sdp.add_block(1);
    sdp.set_objective(b1, 0, 0, 1.0);
    sdp.rhs.push_back(5.0);
    sdp.add_entry(0, b1, 0, 0, 1.0);
    sdp.add_entry(0, b2, 0, 0, 1.0);
    Solution sol = solve(sdp, 1e-8, 200);
    std::printf("slack test: status=%d t*=%.9f (expect 5)\n", static_cast<int>(sol.status),
                sol.objective);
  }
  return 0;
}
