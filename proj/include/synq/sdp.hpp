#pragma once

#include <Eigen/Dense>
#include <string>
#include <string_view>
#include <vector>

namespace synq {

/// Dense block-diagonal semidefinite program:
///   maximize   sum_b <C_b, X_b>
///   subject to sum_b <A_{i,b}, X_b> = rhs_i  for i < m,   X_b psd.
struct DenseSDP {
  std::vector<int> block_dims;
  std::vector<Eigen::MatrixXd> objective;  // one symmetric matrix per block

  struct Entry {
    int constraint;
    int block;
    int row, col;  // row <= col; off-diagonal entries count mirrored
    double value;
  };
  std::vector<Entry> entries;
  std::vector<double> rhs;

  int n_constraints() const { return static_cast<int>(rhs.size()); }
  int add_block(int dim);
  void add_entry(int constraint, int block, int row, int col, double value);
  void set_objective(int block, int row, int col, double value);
  Eigen::MatrixXd constraint_matrix(int constraint, int block) const;
  void validate() const;  // throws on asymmetric or inconsistent data
};

enum class SolveStatus { optimal, infeasible_certificate, numerical_failure };
enum class InfeasibleKind { none, primal, dual };

struct Solution {
  SolveStatus status = SolveStatus::numerical_failure;
  InfeasibleKind infeasible_kind = InfeasibleKind::none;
  std::vector<Eigen::MatrixXd> X;  // primal blocks
  std::vector<double> y;           // dual multipliers
  std::vector<Eigen::MatrixXd> Z;  // dual slack blocks
  double objective = 0.0;          // <C, X>
  double dual_objective = 0.0;
  double achieved_tol = 0.0;
  int iterations = 0;
  std::vector<double> gap_trace;  // homogeneous complementarity gap per iteration
  std::string message;
};

/// Homogeneous self-dual embedding, Nesterov-Todd scaling, Mehrotra
/// predictor-corrector. Deterministic for fixed inputs.
Solution solve(const DenseSDP& sdp, double tol = 1e-8, int max_iter = 200);

struct ResidualReport {
  double primal_inf = 0.0;  // max-norm constraint violation
  double dual_inf = 0.0;
  double rel_gap = 0.0;
  bool ok = false;
};
/// Recomputes feasibility of a returned solution from scratch, independent
/// of the solver's own bookkeeping.
ResidualReport verify_solution(const DenseSDP& sdp, const Solution& sol, double tol);

/// Sparse SDPA text (".dat-s"); entries printed with 17 significant digits
/// so doubles round-trip bit-exactly.
std::string export_sdpa(const DenseSDP& sdp);
DenseSDP import_sdpa(std::string_view text);

}  // namespace synq
