#include "synq/sdp.hpp"

#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>
#include <stdexcept>

namespace synq {

int DenseSDP::add_block(int dim) {
  if (dim <= 0) throw std::invalid_argument("DenseSDP: block dimension must be positive");
  block_dims.push_back(dim);
  objective.push_back(Eigen::MatrixXd::Zero(dim, dim));
  return static_cast<int>(block_dims.size()) - 1;
}

void DenseSDP::add_entry(int constraint, int block, int row, int col, double value) {
  if (row > col) std::swap(row, col);
  entries.push_back({constraint, block, row, col, value});
}

void DenseSDP::set_objective(int block, int row, int col, double value) {
  objective[block](row, col) = value;
  objective[block](col, row) = value;
}

Eigen::MatrixXd DenseSDP::constraint_matrix(int constraint, int block) const {
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(block_dims[block], block_dims[block]);
  for (const auto& e : entries) {
    if (e.constraint != constraint || e.block != block) continue;
    a(e.row, e.col) += e.value;
    if (e.row != e.col) a(e.col, e.row) += e.value;
  }
  return a;
}

void DenseSDP::validate() const {
  if (objective.size() != block_dims.size())
    throw std::invalid_argument("DenseSDP: objective/block mismatch");
  for (std::size_t b = 0; b < block_dims.size(); ++b) {
    if (objective[b].rows() != block_dims[b] || objective[b].cols() != block_dims[b])
      throw std::invalid_argument("DenseSDP: objective dimension mismatch");
    if (objective[b] != objective[b].transpose().eval())
      throw std::invalid_argument("DenseSDP: non-symmetric objective");
  }
  for (const auto& e : entries) {
    if (e.block < 0 || e.block >= static_cast<int>(block_dims.size()) || e.constraint < 0 ||
        e.constraint >= n_constraints() || e.row < 0 || e.col < 0 ||
        e.row >= block_dims[e.block] || e.col >= block_dims[e.block] || e.row > e.col)
      throw std::invalid_argument("DenseSDP: entry out of range");
    if (!std::isfinite(e.value)) throw std::invalid_argument("DenseSDP: non-finite entry");
  }
}

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;
using Blocks = std::vector<MatrixXd>;

struct Problem {
  int m = 0;
  std::vector<int> dims;
  Blocks cmin;            // internal minimization objective (= -C)
  std::vector<Blocks> a;  // a[i][block], symmetric dense
  VectorXd b;
};

double inner(const Blocks& p, const Blocks& q) {
  double s = 0;
  for (std::size_t i = 0; i < p.size(); ++i) s += p[i].cwiseProduct(q[i]).sum();
  return s;
}

Blocks zeros_like(const std::vector<int>& dims) {
  Blocks out;
  for (int d : dims) out.push_back(MatrixXd::Zero(d, d));
  return out;
}

Blocks identity_like(const std::vector<int>& dims) {
  Blocks out;
  for (int d : dims) out.push_back(MatrixXd::Identity(d, d));
  return out;
}

VectorXd apply_a(const Problem& pb, const Blocks& x) {
  VectorXd v(pb.m);
  for (int i = 0; i < pb.m; ++i) v(i) = inner(pb.a[i], x);
  return v;
}

Blocks apply_at(const Problem& pb, const VectorXd& y) {
  Blocks out = zeros_like(pb.dims);
  for (int i = 0; i < pb.m; ++i)
    for (std::size_t bk = 0; bk < out.size(); ++bk) out[bk] += y(i) * pb.a[i][bk];
  return out;
}

double max_abs(const Blocks& x) {
  double v = 0;
  for (const auto& m : x) v = std::max(v, m.cwiseAbs().maxCoeff());
  return v;
}

// Largest alpha in (0, cap] with X + alpha*dX psd.
double max_step(const Blocks& x, const Blocks& dx, double cap) {
  double alpha = cap;
  for (std::size_t b = 0; b < x.size(); ++b) {
    Eigen::SelfAdjointEigenSolver<MatrixXd> ex(x[b]);
    VectorXd lx = ex.eigenvalues().cwiseMax(1e-300);
    MatrixXd linv = lx.cwiseSqrt().cwiseInverse().asDiagonal() * ex.eigenvectors().transpose();
    MatrixXd s = linv * dx[b] * linv.transpose();
    Eigen::SelfAdjointEigenSolver<MatrixXd> es(0.5 * (s + s.transpose()));
    double lmin = es.eigenvalues().minCoeff();
    if (lmin < 0) alpha = std::min(alpha, -1.0 / lmin);
  }
  return alpha;
}

struct Scaling {
  Blocks w, g, ginv, zinv, v;
  std::vector<Blocks> wa;  // wa[i] = W A_i W
  Blocks wcw;              // W Cmin W
  Eigen::LDLT<MatrixXd> mfact;
  VectorXd a_vec;          // A(W Cmin W)
  double c2 = 0;           // <Cmin, W Cmin W>
};

Scaling nt_scaling(const Problem& pb, const Blocks& x, const Blocks& z) {
  Scaling sc;
  for (std::size_t b = 0; b < x.size(); ++b) {
    Eigen::SelfAdjointEigenSolver<MatrixXd> ex(x[b]);
    VectorXd lx = ex.eigenvalues().cwiseMax(1e-300);
    MatrixXd xsq =
        ex.eigenvectors() * lx.cwiseSqrt().asDiagonal() * ex.eigenvectors().transpose();
    MatrixXd mid = xsq * z[b] * xsq;
    Eigen::SelfAdjointEigenSolver<MatrixXd> em(0.5 * (mid + mid.transpose()));
    VectorXd lm = em.eigenvalues().cwiseMax(1e-300);
    MatrixXd mid_isqrt = em.eigenvectors() * lm.cwiseSqrt().cwiseInverse().asDiagonal() *
                         em.eigenvectors().transpose();
    MatrixXd w = xsq * mid_isqrt * xsq;
    w = 0.5 * (w + w.transpose());
    Eigen::SelfAdjointEigenSolver<MatrixXd> ew(w);
    VectorXd lw = ew.eigenvalues().cwiseMax(1e-300);
    MatrixXd g =
        ew.eigenvectors() * lw.cwiseSqrt().asDiagonal() * ew.eigenvectors().transpose();
    MatrixXd ginv = ew.eigenvectors() * lw.cwiseSqrt().cwiseInverse().asDiagonal() *
                    ew.eigenvectors().transpose();
    Eigen::SelfAdjointEigenSolver<MatrixXd> ez(z[b]);
    VectorXd lz = ez.eigenvalues().cwiseMax(1e-300);
    MatrixXd zinv =
        ez.eigenvectors() * lz.cwiseInverse().asDiagonal() * ez.eigenvectors().transpose();
    sc.w.push_back(w);
    sc.g.push_back(g);
    sc.ginv.push_back(ginv);
    sc.zinv.push_back(0.5 * (zinv + zinv.transpose()));
    MatrixXd v = g * z[b] * g;
    sc.v.push_back(0.5 * (v + v.transpose()));
  }
  // Schur complement M(i,j) = <A_i, W A_j W>
  sc.wa.resize(pb.m);
  for (int i = 0; i < pb.m; ++i) {
    sc.wa[i] = zeros_like(pb.dims);
    for (std::size_t b = 0; b < pb.dims.size(); ++b) {
      MatrixXd t = sc.w[b] * pb.a[i][b] * sc.w[b];
      sc.wa[i][b] = 0.5 * (t + t.transpose());
    }
  }
  MatrixXd msch(pb.m, pb.m);
  for (int i = 0; i < pb.m; ++i)
    for (int j = i; j < pb.m; ++j) {
      double v = inner(pb.a[i], sc.wa[j]);
      msch(i, j) = v;
      msch(j, i) = v;
    }
  double reg = 1e-13 * (1.0 + msch.diagonal().cwiseAbs().maxCoeff());
  msch.diagonal().array() += reg;
  sc.mfact.compute(msch);
  if (sc.mfact.info() != Eigen::Success) {
    msch.diagonal().array() += 1e-8 * (1.0 + msch.diagonal().cwiseAbs().maxCoeff());
    sc.mfact.compute(msch);
  }
  sc.wcw = zeros_like(pb.dims);
  for (std::size_t b = 0; b < pb.dims.size(); ++b) {
    MatrixXd t = sc.w[b] * pb.cmin[b] * sc.w[b];
    sc.wcw[b] = 0.5 * (t + t.transpose());
  }
  sc.a_vec = apply_a(pb, sc.wcw);
  sc.c2 = inner(pb.cmin, sc.wcw);
  return sc;
}

struct State {
  Blocks x, z;
  VectorXd y;
  double tau = 1.0, kappa = 1.0;
};

struct Direction {
  Blocks dx, dz;
  VectorXd dy;
  double dtau = 0, dkappa = 0;
};

// Newton step on the homogeneous model:
//   A(dX) - dtau b            = -eta*rp
//   -A^T(dy) + dtau C - dZ    = -eta*Rd
//   b^T dy - <C,dX> - dkappa  = -eta*rg
//   dX + W dZ W               = R1
//   tau dkappa + kappa dtau   = R2
Direction newton(const Problem& pb, const State& st, const Scaling& sc, double eta,
                 const Blocks& r1, double r2, const VectorXd& rp, const Blocks& rd, double rg) {
  Blocks wrdw = zeros_like(pb.dims);
  for (std::size_t b = 0; b < wrdw.size(); ++b) {
    MatrixXd t = sc.w[b] * rd[b] * sc.w[b];
    wrdw[b] = 0.5 * (t + t.transpose());
  }
  VectorXd rhs_q(pb.m);
  for (int i = 0; i < pb.m; ++i)
    rhs_q(i) = -eta * rp(i) - inner(pb.a[i], r1) + eta * inner(pb.a[i], wrdw);
  VectorXd p = sc.mfact.solve(pb.b + sc.a_vec);
  VectorXd q = sc.mfact.solve(rhs_q);

  double e1 = inner(pb.cmin, r1);
  double f1 = inner(pb.cmin, wrdw);
  VectorXd bma = pb.b - sc.a_vec;
  double den = st.tau * (bma.dot(p) + sc.c2) + st.kappa;
  double num = r2 - st.tau * (bma.dot(q) - e1 + eta * f1 + eta * rg);
  double dtau = std::abs(den) > 1e-300 ? num / den : 0.0;

  Direction d;
  d.dtau = dtau;
  d.dy = dtau * p + q;
  d.dz = zeros_like(pb.dims);
  Blocks aty = apply_at(pb, d.dy);
  for (std::size_t b = 0; b < d.dz.size(); ++b)
    d.dz[b] = -aty[b] + dtau * pb.cmin[b] + eta * rd[b];
  d.dx = zeros_like(pb.dims);
  for (std::size_t b = 0; b < d.dx.size(); ++b) {
    MatrixXd t = sc.w[b] * d.dz[b] * sc.w[b];
    d.dx[b] = r1[b] - 0.5 * (t + t.transpose());
  }
  d.dkappa = (r2 - st.kappa * dtau) / st.tau;
  return d;
}

double full_step(const State& st, const Direction& d, double cap) {
  double alpha = cap;
  alpha = std::min(alpha, max_step(st.x, d.dx, cap));
  alpha = std::min(alpha, max_step(st.z, d.dz, cap));
  if (d.dtau < 0) alpha = std::min(alpha, -st.tau / d.dtau);
  if (d.dkappa < 0) alpha = std::min(alpha, -st.kappa / d.dkappa);
  return alpha;
}

}  // namespace

Solution solve(const DenseSDP& sdp, double tol, int max_iter) {
  sdp.validate();
  if (tol <= 0 || max_iter <= 0) throw std::invalid_argument("solve: bad parameters");

  Problem pb;
  pb.dims = sdp.block_dims;
  pb.m = sdp.n_constraints();
  pb.b = Eigen::Map<const VectorXd>(sdp.rhs.data(), pb.m);
  for (std::size_t b = 0; b < pb.dims.size(); ++b) pb.cmin.push_back(-sdp.objective[b]);
  pb.a.assign(pb.m, zeros_like(pb.dims));
  for (const auto& e : sdp.entries) {
    pb.a[e.constraint][e.block](e.row, e.col) += e.value;
    if (e.row != e.col) pb.a[e.constraint][e.block](e.col, e.row) += e.value;
  }

  int total_dim = 0;
  for (int d : pb.dims) total_dim += d;
  const double nu = total_dim + 1;
  const double bnorm = pb.m ? pb.b.cwiseAbs().maxCoeff() : 0.0;
  const double cnorm = max_abs(pb.cmin);

  State st;
  st.x = identity_like(pb.dims);
  st.z = identity_like(pb.dims);
  st.y = VectorXd::Zero(pb.m);

  Solution sol;
  // User-facing dual convention for the max problem: sum_i y_i A_i - C = Z,
  // b^T y >= <C,X>; the internal minimization dual flips sign.
  auto finish_optimal = [&](double err) {
    sol.status = SolveStatus::optimal;
    sol.X.clear();
    sol.Z.clear();
    sol.y.assign(pb.m, 0.0);
    for (std::size_t b = 0; b < pb.dims.size(); ++b) {
      sol.X.push_back(st.x[b] / st.tau);
      sol.Z.push_back(st.z[b] / st.tau);
    }
    for (int i = 0; i < pb.m; ++i) sol.y[i] = -st.y(i) / st.tau;
    double pobj = 0, dobj = 0;
    for (std::size_t b = 0; b < pb.dims.size(); ++b)
      pobj += sdp.objective[b].cwiseProduct(sol.X[b]).sum();
    for (int i = 0; i < pb.m; ++i) dobj += sdp.rhs[i] * sol.y[i];
    sol.objective = pobj;
    sol.dual_objective = dobj;
    sol.achieved_tol = err;
  };

  for (int iter = 0; iter < max_iter; ++iter) {
    sol.iterations = iter;
    VectorXd rp = apply_a(pb, st.x) - st.tau * pb.b;
    Blocks aty = apply_at(pb, st.y);
    Blocks rd = zeros_like(pb.dims);
    for (std::size_t b = 0; b < rd.size(); ++b)
      rd[b] = -aty[b] + st.tau * pb.cmin[b] - st.z[b];
    double rg = pb.b.dot(st.y) - inner(pb.cmin, st.x) - st.kappa;
    double mu = (inner(st.x, st.z) + st.tau * st.kappa) / nu;

    // convergence test on the de-homogenized point
    double pinf = 0, dinf = 0;
    {
      VectorXd pr = apply_a(pb, st.x) / st.tau - pb.b;
      pinf = pb.m ? pr.cwiseAbs().maxCoeff() / (1.0 + bnorm) : 0.0;
      for (std::size_t b = 0; b < pb.dims.size(); ++b) {
        MatrixXd dr = aty[b] / st.tau + st.z[b] / st.tau - pb.cmin[b];
        dinf = std::max(dinf, dr.cwiseAbs().maxCoeff());
      }
      dinf /= (1.0 + cnorm);
    }
    double pobj = inner(pb.cmin, st.x) / st.tau;
    double dobj = pb.b.dot(st.y) / st.tau;
    double relgap = std::abs(pobj - dobj) / (1.0 + std::abs(pobj) + std::abs(dobj));
    double err = std::max({pinf, dinf, relgap});
    sol.gap_trace.push_back(mu);  // homogeneous complementarity gap, starts at 1

    if (err <= tol) {
      finish_optimal(err);
      return sol;
    }

    // ray regime: tau collapsing against kappa signals infeasibility
    if (st.tau < 1e-9 * std::max(1.0, st.kappa) ||
        (mu < 1e-14 && st.tau < 1e-5 * st.kappa)) {
      double by = pb.b.dot(st.y);
      double cx = inner(pb.cmin, st.x);
      if (by > std::abs(cx) && by > 1e-12) {
        // Farkas ray in user convention: sum y_i A_i = Z >= 0, b^T y = -1
        sol.status = SolveStatus::infeasible_certificate;
        sol.infeasible_kind = InfeasibleKind::primal;
        sol.y.assign(pb.m, 0.0);
        for (int i = 0; i < pb.m; ++i) sol.y[i] = -st.y(i) / by;
        for (std::size_t b = 0; b < pb.dims.size(); ++b) sol.Z.push_back(st.z[b] / by);
        sol.message = "primal infeasible: Farkas dual ray found";
      } else if (cx < -1e-12) {
        sol.status = SolveStatus::infeasible_certificate;
        sol.infeasible_kind = InfeasibleKind::dual;
        for (std::size_t b = 0; b < pb.dims.size(); ++b) sol.X.push_back(st.x[b] / (-cx));
        sol.message = "dual infeasible: primal improving ray found";
      } else {
        sol.status = SolveStatus::numerical_failure;
        sol.message = "homogeneous model collapsed without classification";
      }
      return sol;
    }

    Scaling sc = nt_scaling(pb, st.x, st.z);

    // predictor (affine scaling): sigma = 0
    Blocks r1 = zeros_like(pb.dims);
    for (std::size_t b = 0; b < r1.size(); ++b) r1[b] = -st.x[b];
    Direction da = newton(pb, st, sc, 1.0, r1, -st.tau * st.kappa, rp, rd, rg);
    double alpha_a = full_step(st, da, 1.0);

    double mua = (inner(st.x, st.z) + alpha_a * (inner(da.dx, st.z) + inner(st.x, da.dz)) +
                  alpha_a * alpha_a * inner(da.dx, da.dz) +
                  (st.tau + alpha_a * da.dtau) * (st.kappa + alpha_a * da.dkappa)) /
                 nu;
    double sigma = std::pow(std::clamp(mua / mu, 0.0, 1.0), 3);
    sigma = std::clamp(sigma, 1e-8, 1.0 - 1e-8);

    // corrector with the scaled second-order term
    for (std::size_t b = 0; b < r1.size(); ++b) {
      MatrixXd dxt = sc.ginv[b] * da.dx[b] * sc.ginv[b];
      MatrixXd dzt = sc.g[b] * da.dz[b] * sc.g[b];
      MatrixXd m2 = 0.5 * (dxt * dzt + dzt * dxt);
      Eigen::LDLT<MatrixXd> vf(sc.v[b]);
      MatrixXd vinv_m2 = vf.solve(m2);
      MatrixXd corr_scaled = 0.5 * (vinv_m2 + vinv_m2.transpose());
      MatrixXd corr = sc.g[b] * corr_scaled * sc.g[b];
      r1[b] = sigma * mu * sc.zinv[b] - st.x[b] - 0.5 * (corr + corr.transpose());
    }
    double r2 = sigma * mu - st.tau * st.kappa - da.dtau * da.dkappa;
    double eta = 1.0 - sigma;
    Direction dc = newton(pb, st, sc, eta, r1, r2, rp, rd, rg);

    double gamma = 0.98;
    double alpha = gamma * full_step(st, dc, 1.0 / gamma);
    alpha = std::min(alpha, 1.0);
    if (!(alpha > 1e-12)) {
      sol.status = SolveStatus::numerical_failure;
      sol.message = "step length collapsed";
      return sol;
    }
    for (std::size_t b = 0; b < pb.dims.size(); ++b) {
      st.x[b] += alpha * dc.dx[b];
      st.z[b] += alpha * dc.dz[b];
      st.x[b] = 0.5 * (st.x[b] + st.x[b].transpose()).eval();
      st.z[b] = 0.5 * (st.z[b] + st.z[b].transpose()).eval();
    }
    st.y += alpha * dc.dy;
    st.tau += alpha * dc.dtau;
    st.kappa += alpha * dc.dkappa;
  }

  sol.status = SolveStatus::numerical_failure;
  sol.message = "iteration limit reached without classification";
  return sol;
}

ResidualReport verify_solution(const DenseSDP& sdp, const Solution& sol, double tol) {
  ResidualReport r;
  if (sol.status != SolveStatus::optimal) return r;
  double bnorm = 0;
  for (double v : sdp.rhs) bnorm = std::max(bnorm, std::abs(v));
  for (int i = 0; i < sdp.n_constraints(); ++i) {
    double v = -sdp.rhs[i];
    for (std::size_t b = 0; b < sdp.block_dims.size(); ++b)
      v += sdp.constraint_matrix(i, b).cwiseProduct(sol.X[b]).sum();
    r.primal_inf = std::max(r.primal_inf, std::abs(v));
  }
  double cnorm = 0;
  for (const auto& c : sdp.objective) cnorm = std::max(cnorm, c.cwiseAbs().maxCoeff());
  for (std::size_t b = 0; b < sdp.block_dims.size(); ++b) {
    // dual feasibility: sum_i y_i A_i - C = Z
    Eigen::MatrixXd dr = -sdp.objective[b] - sol.Z[b];
    for (int i = 0; i < sdp.n_constraints(); ++i)
      dr += sol.y[i] * sdp.constraint_matrix(i, b);
    r.dual_inf = std::max(r.dual_inf, dr.cwiseAbs().maxCoeff());
  }
  r.rel_gap = std::abs(sol.objective - sol.dual_objective) /
              (1.0 + std::abs(sol.objective) + std::abs(sol.dual_objective));
  r.ok = r.primal_inf <= tol * (1.0 + bnorm) && r.dual_inf <= tol * (1.0 + cnorm) &&
         r.rel_gap <= tol;
  return r;
}

std::string export_sdpa(const DenseSDP& sdp) {
  sdp.validate();
  std::ostringstream os;
  char buf[64];
  os << sdp.n_constraints() << "\n";
  os << sdp.block_dims.size() << "\n";
  for (std::size_t b = 0; b < sdp.block_dims.size(); ++b)
    os << sdp.block_dims[b] << (b + 1 < sdp.block_dims.size() ? " " : "\n");
  for (int i = 0; i < sdp.n_constraints(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g", sdp.rhs[i]);
    os << buf << (i + 1 < sdp.n_constraints() ? " " : "");
  }
  os << "\n";
  auto emit = [&](int k, int blk, int r, int c, double v) {
    if (v == 0.0) return;
    std::snprintf(buf, sizeof buf, "%.17g", v);
    os << k << " " << blk + 1 << " " << r + 1 << " " << c + 1 << " " << buf << "\n";
  };
  for (std::size_t b = 0; b < sdp.block_dims.size(); ++b)
    for (int r = 0; r < sdp.block_dims[b]; ++r)
      for (int c = r; c < sdp.block_dims[b]; ++c) emit(0, static_cast<int>(b), r, c, sdp.objective[b](r, c));
  // aggregate duplicate entries per (constraint, block, row, col)
  std::map<std::tuple<int, int, int, int>, double> agg;
  for (const auto& e : sdp.entries) agg[{e.constraint, e.block, e.row, e.col}] += e.value;
  for (const auto& [key, v] : agg) {
    auto [k, blk, r, c] = key;
    emit(k + 1, blk, r, c, v);
  }
  return os.str();
}

DenseSDP import_sdpa(std::string_view text) {
  std::istringstream is{std::string(text)};
  std::string line;
  // tokens, skipping comment lines starting with '"' or '*'
  std::vector<std::string> tokens;
  while (std::getline(is, line)) {
    if (!line.empty() && (line[0] == '"' || line[0] == '*')) continue;
    for (char& ch : line)
      if (ch == ',' || ch == '(' || ch == ')' || ch == '{' || ch == '}') ch = ' ';
    std::istringstream ls(line);
    std::string t;
    while (ls >> t) tokens.push_back(t);
  }
  std::size_t pos = 0;
  auto next = [&]() -> std::string {
    if (pos >= tokens.size()) throw std::invalid_argument("sdpa import: truncated input");
    return tokens[pos++];
  };
  int m = std::stoi(next());
  int nblocks = std::stoi(next());
  DenseSDP sdp;
  for (int b = 0; b < nblocks; ++b) {
    int d = std::stoi(next());
    sdp.add_block(std::abs(d));  // diagonal blocks imported as dense
  }
  sdp.rhs.resize(m);
  for (int i = 0; i < m; ++i) sdp.rhs[i] = std::stod(next());
  while (pos + 4 < tokens.size() + 1 && pos < tokens.size()) {
    int k = std::stoi(next());
    int blk = std::stoi(next()) - 1;
    int r = std::stoi(next()) - 1;
    int c = std::stoi(next()) - 1;
    double v = std::stod(next());
    if (k == 0)
      sdp.set_objective(blk, r, c, v);
    else
      sdp.add_entry(k - 1, blk, r, c, v);
  }
  sdp.validate();
  return sdp;
}

}  // namespace synq
