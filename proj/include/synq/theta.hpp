#pragma once

#include <string>

#include "synq/exactlin.hpp"
#include "synq/graph.hpp"
#include "synq/sdp.hpp"

namespace synq {

/// Lovasz theta SDP over the graph passed in: maximize <S, J> subject to
/// S_uv = 0 on edges, Tr(S) = 1, S psd. Sandwich usage passes the
/// complement; the CLI handles that so conventions cannot be mixed.
DenseSDP theta_sdp(const Graph& g);

struct ThetaResult {
  double value = 0.0;
  Eigen::MatrixXd witness;  // optimal S
  double tolerance = 0.0;   // achieved by the solver
  Solution solution;        // full solver output for independent re-checks
};
ThetaResult lovasz_theta(const Graph& g, double tol = 1e-8);

/// Exact feasible Gram witness from the m = 1 linear-relation structure:
/// identity -> all-ones over H_max, H_max vertices -> standard basis
/// vectors, other core vertices -> sums over their neighbour indices in
/// H_max, non-core vertices -> zero rows.
struct LcWitness {
  bool supported = false;  // false when some H has multiplicity >= 2, or a check fails
  std::string reason;
  int n = 0;
  int h = 0;                          // |H_max|
  VertexSet hmax;                     // chosen H_max, original indexing
  VertexSet core;                     // V(Q)
  std::vector<std::vector<int>> tau;  // 0/1 image per vertex, length h
  RatMat gram;                        // exact |V| x |V| Gram matrix
  Rat ratio;                          // <S, J> / Tr(S)
  bool zero_pattern_ok = false;       // vanishes on non-adjacent core pairs
  bool psd_ok = false;                // exact LDL^T
  bool ratio_ok = false;              // ratio == n as rationals
};
LcWitness lc_theta_witness(const Graph& g, int n, int size_cap = 20);

struct SandwichReport {
  int omega = 0;
  int chi = 0;
  double theta_complement = 0.0;
  bool ok = false;  // omega <= theta(complement)+tol <= chi+tol
};
SandwichReport sandwich(const Graph& g, double tol = 1e-6);

}  // namespace synq
