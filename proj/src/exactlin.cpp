#include "synq/exactlin.hpp"

#include <algorithm>
#include <stdexcept>

namespace synq {

bool is_symmetric(const RatMat& a) {
  const std::size_t n = a.size();
  for (const auto& row : a)
    if (row.size() != n) return false;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (a[i][j] != a[j][i]) return false;
  return true;
}

bool psd_check(const RatMat& a0) {
  if (!is_symmetric(a0)) return false;
  RatMat a = a0;
  const int n = static_cast<int>(a.size());
  std::vector<int> rem(n);
  for (int i = 0; i < n; ++i) rem[i] = i;

  while (!rem.empty()) {
    // greedy pivot: largest remaining diagonal entry
    int pick = -1;
    for (int idx : rem) {
      if (a[idx][idx] < 0) return false;
      if (pick < 0 || a[idx][idx] > a[pick][pick]) pick = idx;
    }
    if (a[pick][pick] == 0) {
      // all remaining diagonals are zero; PSD forces the whole block to vanish
      for (int i : rem)
        for (int j : rem)
          if (a[i][j] != 0) return false;
      return true;
    }
    Rat piv = a[pick][pick];
    std::vector<int> rest;
    for (int idx : rem)
      if (idx != pick) rest.push_back(idx);
    for (int i : rest) {
      if (a[i][pick] == 0) continue;
      Rat f = a[i][pick] / piv;
      for (int j : rest) a[i][j] -= f * a[pick][j];
    }
    rem = std::move(rest);
  }
  return true;
}

std::optional<RatVec> solve_linear(RatMat a, RatVec b) {
  const int rows = static_cast<int>(a.size());
  const int cols = rows ? static_cast<int>(a[0].size()) : 0;
  if (static_cast<int>(b.size()) != rows) throw std::invalid_argument("solve_linear: size mismatch");
  std::vector<int> pivot_col_of_row;
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int sel = -1;
    for (int i = r; i < rows; ++i)
      if (a[i][c] != 0) {
        sel = i;
        break;
      }
    if (sel < 0) continue;
    std::swap(a[sel], a[r]);
    std::swap(b[sel], b[r]);
    Rat inv = 1 / a[r][c];
    for (int j = c; j < cols; ++j) a[r][j] *= inv;
    b[r] *= inv;
    for (int i = 0; i < rows; ++i) {
      if (i == r || a[i][c] == 0) continue;
      Rat f = a[i][c];
      for (int j = c; j < cols; ++j) a[i][j] -= f * a[r][j];
      b[i] -= f * b[r];
    }
    pivot_col_of_row.push_back(c);
    ++r;
  }
  for (int i = r; i < rows; ++i)
    if (b[i] != 0) return std::nullopt;
  RatVec x(cols, Rat(0));
  for (int i = 0; i < r; ++i) x[pivot_col_of_row[i]] = b[i];
  return x;
}

SparseVec sparse_normalize(std::map<int, Rat> m) {
  SparseVec v;
  v.reserve(m.size());
  for (auto& [k, c] : m)
    if (c != 0) v.emplace_back(k, std::move(c));
  return v;
}

void SparseEchelon::reduce_full(std::map<int, Rat>& work, std::map<int, Rat>* combo,
                                std::map<int, Rat>& residual) const {
  // Process coordinates from the largest down. Eliminating a pivot only
  // introduces strictly smaller coordinates, so a popped coordinate never
  // reappears and one descending sweep suffices.
  while (!work.empty()) {
    auto it = std::prev(work.end());
    int k = it->first;
    Rat f = std::move(it->second);
    work.erase(it);
    if (f == 0) continue;
    auto pit = pivots_.find(k);
    if (pit == pivots_.end()) {
      residual.emplace(k, std::move(f));
      continue;
    }
    for (const auto& [kk, c] : pit->second.vec) {
      if (kk == k) continue;
      auto& slot = work[kk];
      slot -= f * c;
      if (slot == 0) work.erase(kk);
    }
    if (combo)
      for (const auto& [id, c] : pit->second.combo) {
        auto& slot = (*combo)[id];
        slot += f * c;
        if (slot == 0) combo->erase(id);
      }
  }
}

bool SparseEchelon::insert(const SparseVec& v, int original_id) {
  std::map<int, Rat> work(v.begin(), v.end());
  std::map<int, Rat> accum;  // sum of multiples of pivot rows subtracted
  std::map<int, Rat> residual;
  reduce_full(work, track_ ? &accum : nullptr, residual);
  if (residual.empty()) return false;
  auto top = std::prev(residual.end());
  Rat lead = top->second;
  Row row;
  for (auto& [k, c] : residual) row.vec.emplace_back(k, c / lead);
  if (track_) {
    // residual = original - sum(accum_p * row_p) over originals
    std::map<int, Rat> combo;
    combo[original_id] = 1;
    for (auto& [id, c] : accum) {
      combo[id] -= c;
      if (combo[id] == 0) combo.erase(id);
    }
    for (auto& [id, c] : combo) row.combo.emplace_back(id, c / lead);
  }
  pivots_.emplace(top->first, std::move(row));
  return true;
}

SparseVec SparseEchelon::reduce(const SparseVec& v) const {
  std::map<int, Rat> work(v.begin(), v.end());
  std::map<int, Rat> residual;
  reduce_full(work, nullptr, residual);
  return sparse_normalize(std::move(residual));
}

std::optional<std::vector<std::pair<int, Rat>>> SparseEchelon::solve(const SparseVec& b) const {
  if (!track_) throw std::logic_error("SparseEchelon::solve requires combo tracking");
  std::map<int, Rat> work(b.begin(), b.end());
  std::map<int, Rat> combo;
  std::map<int, Rat> residual;
  reduce_full(work, &combo, residual);
  if (!residual.empty()) return std::nullopt;
  // b - sum combo_i * orig_i reduced to zero, so b = sum combo_i * orig_i
  std::vector<std::pair<int, Rat>> out;
  for (auto& [id, c] : combo) out.emplace_back(id, c);
  return out;
}

}  // namespace synq
