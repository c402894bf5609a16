#pragma once

#include <map>
#include <optional>
#include <vector>

#include "synq/rational.hpp"

namespace synq {

using RatVec = std::vector<Rat>;
using RatMat = std::vector<RatVec>;  // dense, row major

bool is_symmetric(const RatMat& a);

/// Exact PSD test by LDL^T with greedy largest-diagonal pivoting. A zero
/// pivot with a nonzero residual row disproves PSD-ness via a 2x2 minor.
bool psd_check(const RatMat& a);

/// Solves A x = b exactly by fraction-free-ish Gaussian elimination with
/// partial pivoting; returns nullopt when inconsistent. Underdetermined
/// systems get free variables set to zero.
std::optional<RatVec> solve_linear(RatMat a, RatVec b);

/// Sparse rational vector, sorted ascending by coordinate.
using SparseVec = std::vector<std::pair<int, Rat>>;

SparseVec sparse_normalize(std::map<int, Rat> m);

/// Incremental row-echelon basis over sparse rational vectors, pivoting on
/// each vector's largest coordinate. Optionally tracks how every pivot
/// vector decomposes over the inserted originals so that exact solves
/// against the original spanning set are possible later.
class SparseEchelon {
 public:
  explicit SparseEchelon(bool track_combos = false) : track_(track_combos) {}

  /// Returns true when v contributed a new pivot; false when it reduced to
  /// zero (i.e. it was already in the span).
  bool insert(const SparseVec& v, int original_id);

  /// Residual of v after elimination; supported on non-pivot coordinates.
  SparseVec reduce(const SparseVec& v) const;

  /// Writes b as a combination of the inserted original vectors, if b lies
  /// in their span. Requires combo tracking.
  std::optional<std::vector<std::pair<int, Rat>>> solve(const SparseVec& b) const;

  bool has_pivot(int coord) const { return pivots_.count(coord) != 0; }
  std::size_t n_pivots() const { return pivots_.size(); }

 private:
  struct Row {
    SparseVec vec;                           // pivot coordinate = largest, coeff 1
    std::vector<std::pair<int, Rat>> combo;  // over original ids
  };
  void reduce_full(std::map<int, Rat>& work, std::map<int, Rat>* combo,
                   std::map<int, Rat>& residual) const;
  bool track_;
  std::map<int, Row> pivots_;  // pivot coordinate -> row
};

}  // namespace synq
