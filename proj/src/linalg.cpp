#include "macproj/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "macproj/parallel.hpp"

namespace macproj {

double CsrMatrix::at(std::size_t r, std::size_t c) const {
  const auto first = col_idx.begin() + static_cast<std::ptrdiff_t>(row_ptr[r]);
  const auto last = col_idx.begin() + static_cast<std::ptrdiff_t>(row_ptr[r + 1]);
  const auto it = std::lower_bound(first, last, c);
  if (it == last || *it != c) return 0.0;
  return values[static_cast<std::size_t>(it - col_idx.begin())];
}

std::vector<double> CsrMatrix::diagonal() const {
  std::vector<double> d(rows, 0.0);
  for (std::size_t r = 0; r < rows; ++r) d[r] = at(r, r);
  return d;
}

void CsrMatrix::multiply(std::span<const double> x, std::span<double> y) const {
  const auto n = static_cast<std::ptrdiff_t>(rows);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t ri = 0; ri < n; ++ri) {
    const auto r = static_cast<std::size_t>(ri);
    double s = 0.0;
    for (std::size_t k = row_ptr[r]; k < row_ptr[r + 1]; ++k) s += values[k] * x[col_idx[k]];
    y[r] = s;
  }
}

std::vector<double> CsrMatrix::operator*(std::span<const double> x) const {
  std::vector<double> y(rows);
  multiply(x, y);
  return y;
}

namespace ref {
void multiply(const CsrMatrix& a, std::span<const double> x, std::span<double> y) {
  for (std::size_t r = 0; r < a.rows; ++r) {
    double s = 0.0;
    for (std::size_t k = a.row_ptr[r]; k < a.row_ptr[r + 1]; ++k) s += a.values[k] * x[a.col_idx[k]];
    y[r] = s;
  }
}
}  // namespace ref

CsrBuilder::CsrBuilder(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), entries_(rows) {}

void CsrBuilder::add(std::size_t r, std::size_t c, double v) { entries_[r].emplace_back(c, v); }

CsrMatrix CsrBuilder::finish() {
  CsrMatrix m;
  m.rows = rows_;
  m.cols = cols_;
  m.row_ptr.assign(rows_ + 1, 0);
  for (std::size_t r = 0; r < rows_; ++r) {
    auto& row = entries_[r];
    std::stable_sort(row.begin(), row.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    for (std::size_t k = 0; k < row.size(); ++k) {
      if (!m.col_idx.empty() && m.row_ptr[r] < m.col_idx.size() && m.col_idx.back() == row[k].first) {
        m.values.back() += row[k].second;
      } else {
        m.col_idx.push_back(row[k].first);
        m.values.push_back(row[k].second);
      }
    }
    m.row_ptr[r + 1] = m.col_idx.size();
  }
  entries_.clear();
  return m;
}

double residual_norm(const CsrMatrix& a, std::span<const double> x, std::span<const double> b) {
  std::vector<double> ax = a * x;
  return std::sqrt(par::blocked_sum(b.size(), [&](std::size_t k) {
    const double d = b[k] - ax[k];
    return d * d;
  }));
}

namespace {

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

double norm2(std::span<const double> x) { return std::sqrt(par::dot(x, x)); }

std::vector<double> inverse_diagonal(const CsrMatrix& a) {
  std::vector<double> d = a.diagonal();
  for (double& v : d) v = (v != 0.0) ? 1.0 / v : 1.0;
  return d;
}

void recenter(std::vector<double>& x, const Nullspace* ns) {
  double s = 0.0, w = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    const double wk = ns ? ns->weights[k] : 1.0;
    s += wk * x[k];
    w += wk;
  }
  const double shift = s / w;
  for (double& v : x) v -= shift;
}

std::vector<double> start_vector(const SparseSystem& sys) {
  if (sys.initial_guess.empty()) return std::vector<double>(sys.matrix.rows, 0.0);
  return sys.initial_guess;
}

}  // namespace

SolveResult solve_spd(const SparseSystem& sys, bool deflate_constants) {
  const CsrMatrix& a = sys.matrix;
  const std::size_t n = a.rows;
  std::vector<double> b = sys.rhs;
  const Nullspace* ns = sys.nullspace ? &*sys.nullspace : nullptr;

  if (deflate_constants) {
    double s = 0.0;
    for (double v : b) s += v;
    const double bn = std::max(norm2(b), sys.rhs_scale);
    if (bn > 0.0 && std::abs(s) / (std::sqrt(static_cast<double>(n)) * bn) > 1e-10) {
      throw IncompatibleRhsError("right-hand side is not orthogonal to the constant nullspace");
    }
    const double shift = s / static_cast<double>(n);
    for (double& v : b) v -= shift;
  }

  SolveResult res;
  res.x = start_vector(sys);
  if (norm2(b) == 0.0) {
    std::fill(res.x.begin(), res.x.end(), 0.0);
    res.stats.converged = true;
    return res;
  }
  const double bnorm = std::max(norm2(b), sys.residual_reference);
  const std::vector<double> dinv = inverse_diagonal(a);
  std::vector<double> r(n), z(n), p(n), ap(n);
  auto& x = res.x;

  auto restart = [&] {
    a.multiply(x, ap);
    for (std::size_t k = 0; k < n; ++k) r[k] = b[k] - ap[k];
  };
  auto precondition = [&] {
    for (std::size_t k = 0; k < n; ++k) z[k] = dinv[k] * r[k];
    if (deflate_constants) recenter(z, nullptr);
  };

  restart();
  precondition();
  p = z;
  double rz = par::dot(r, z);
  int it = 0;
  while (it < sys.max_iterations) {
    if (norm2(r) / bnorm <= sys.tolerance) {
      const double true_res = residual_norm(a, x, b) / bnorm;
      if (true_res <= sys.tolerance) break;
      restart();
      precondition();
      p = z;
      rz = par::dot(r, z);
    }
    a.multiply(p, ap);
    const double pap = par::dot(p, ap);
    if (!(pap > 0.0)) break;
    const double alpha = rz / pap;
    for (std::size_t k = 0; k < n; ++k) {
      x[k] += alpha * p[k];
      r[k] -= alpha * ap[k];
    }
    if (deflate_constants) recenter(x, ns);
    precondition();
    const double rz_new = par::dot(r, z);
    const double beta = rz_new / rz;
    rz = rz_new;
    for (std::size_t k = 0; k < n; ++k) p[k] = z[k] + beta * p[k];
    ++it;
  }
  if (deflate_constants) recenter(x, ns);
  res.stats.iterations = it;
  res.stats.residual = residual_norm(a, x, b) / bnorm;
  res.stats.converged = res.stats.residual <= sys.tolerance;
  if (!res.stats.converged) {
    throw SolverError("conjugate gradients did not converge (relative residual " + sci(res.stats.residual) + ")",
                      res.stats);
  }
  return res;
}

SolveResult solve_nonsymmetric(const SparseSystem& sys) {
  const CsrMatrix& a = sys.matrix;
  const std::size_t n = a.rows;
  const std::vector<double>& b = sys.rhs;
  SolveResult res;
  res.x = start_vector(sys);
  const double bnorm = norm2(b);
  if (bnorm == 0.0) {
    std::fill(res.x.begin(), res.x.end(), 0.0);
    res.stats.converged = true;
    return res;
  }
  const std::vector<double> dinv = inverse_diagonal(a);
  auto& x = res.x;
  std::vector<double> r(n), rhat(n), p(n, 0.0), v(n, 0.0), phat(n), s(n), shat(n), t(n);

  int it = 0;
  int restarts = 0;
  bool done = false;
  while (!done && it < sys.max_iterations) {
    a.multiply(x, r);
    for (std::size_t k = 0; k < n; ++k) r[k] = b[k] - r[k];
    if (norm2(r) / bnorm <= sys.tolerance) break;
    rhat = r;
    std::fill(p.begin(), p.end(), 0.0);
    std::fill(v.begin(), v.end(), 0.0);
    double rho = 1.0, alpha = 1.0, omega = 1.0;
    bool breakdown = false;
    while (it < sys.max_iterations) {
      const double rho_new = par::dot(rhat, r);
      if (std::abs(rho_new) < 1e-300) {
        breakdown = true;
        break;
      }
      const double beta = (rho_new / rho) * (alpha / omega);
      rho = rho_new;
      for (std::size_t k = 0; k < n; ++k) {
        p[k] = r[k] + beta * (p[k] - omega * v[k]);
        phat[k] = dinv[k] * p[k];
      }
      a.multiply(phat, v);
      const double rv = par::dot(rhat, v);
      if (rv == 0.0) {
        breakdown = true;
        break;
      }
      alpha = rho / rv;
      for (std::size_t k = 0; k < n; ++k) s[k] = r[k] - alpha * v[k];
      ++it;
      if (norm2(s) / bnorm <= sys.tolerance) {
        for (std::size_t k = 0; k < n; ++k) x[k] += alpha * phat[k];
        break;
      }
      for (std::size_t k = 0; k < n; ++k) shat[k] = dinv[k] * s[k];
      a.multiply(shat, t);
      const double tt = par::dot(t, t);
      omega = tt > 0.0 ? par::dot(t, s) / tt : 0.0;
      for (std::size_t k = 0; k < n; ++k) {
        x[k] += alpha * phat[k] + omega * shat[k];
        r[k] = s[k] - omega * t[k];
      }
      if (norm2(r) / bnorm <= sys.tolerance) break;
      if (omega == 0.0) {
        breakdown = true;
        break;
      }
    }
    const double true_res = residual_norm(a, x, b) / bnorm;
    if (true_res <= sys.tolerance) {
      done = true;
    } else if (breakdown && ++restarts > 3) {
      res.stats = {it, true_res, false};
      throw SolverError("BiCGStab breakdown", res.stats);
    }
  }
  res.stats.iterations = it;
  res.stats.residual = residual_norm(a, x, b) / bnorm;
  res.stats.converged = res.stats.residual <= sys.tolerance;
  if (!res.stats.converged) {
    throw SolverError("BiCGStab did not converge (relative residual " +
                          sci(res.stats.residual) + ")",
                      res.stats);
  }
  return res;
}

SolveResult solve_gmres(const SparseSystem& sys, int restart) {
  const CsrMatrix& a = sys.matrix;
  const std::size_t n = a.rows;
  const std::vector<double>& b = sys.rhs;
  SolveResult res;
  res.x = start_vector(sys);
  const double bnorm = norm2(b);
  if (bnorm == 0.0) {
    std::fill(res.x.begin(), res.x.end(), 0.0);
    res.stats.converged = true;
    return res;
  }
  const std::vector<double> dinv = inverse_diagonal(a);
  auto& x = res.x;
  const auto m = static_cast<std::size_t>(std::max(1, restart));
  std::vector<std::vector<double>> basis(m + 1, std::vector<double>(n));
  std::vector<std::vector<double>> hess(m + 1, std::vector<double>(m, 0.0));
  std::vector<double> cs(m), sn(m), g(m + 1), w(n), z(n);

  int it = 0;
  double rel = 0.0;
  while (it < sys.max_iterations) {
    a.multiply(x, w);
    for (std::size_t k = 0; k < n; ++k) w[k] = b[k] - w[k];
    const double beta = norm2(w);
    rel = beta / bnorm;
    if (rel <= sys.tolerance) break;
    for (std::size_t k = 0; k < n; ++k) basis[0][k] = w[k] / beta;
    std::fill(g.begin(), g.end(), 0.0);
    g[0] = beta;
    std::size_t j = 0;
    for (; j < m && it < sys.max_iterations; ++j, ++it) {
      for (std::size_t k = 0; k < n; ++k) z[k] = dinv[k] * basis[j][k];
      a.multiply(z, w);
      for (std::size_t i = 0; i <= j; ++i) {
        hess[i][j] = par::dot(w, basis[i]);
        for (std::size_t k = 0; k < n; ++k) w[k] -= hess[i][j] * basis[i][k];
      }
      hess[j + 1][j] = norm2(w);
      if (hess[j + 1][j] > 0.0) {
        for (std::size_t k = 0; k < n; ++k) basis[j + 1][k] = w[k] / hess[j + 1][j];
      }
      for (std::size_t i = 0; i < j; ++i) {
        const double tmp = cs[i] * hess[i][j] + sn[i] * hess[i + 1][j];
        hess[i + 1][j] = -sn[i] * hess[i][j] + cs[i] * hess[i + 1][j];
        hess[i][j] = tmp;
      }
      const double denom = std::hypot(hess[j][j], hess[j + 1][j]);
      cs[j] = hess[j][j] / denom;
      sn[j] = hess[j + 1][j] / denom;
      hess[j][j] = denom;
      hess[j + 1][j] = 0.0;
      g[j + 1] = -sn[j] * g[j];
      g[j] = cs[j] * g[j];
      if (std::abs(g[j + 1]) / bnorm <= sys.tolerance) {
        ++j;
        ++it;
        break;
      }
    }
    // Back substitution, then x += M^{-1} V y.
    std::vector<double> y(j, 0.0);
    for (std::size_t i = j; i-- > 0;) {
      double s = g[i];
      for (std::size_t l = i + 1; l < j; ++l) s -= hess[i][l] * y[l];
      y[i] = s / hess[i][i];
    }
    std::fill(z.begin(), z.end(), 0.0);
    for (std::size_t i = 0; i < j; ++i) {
      for (std::size_t k = 0; k < n; ++k) z[k] += y[i] * basis[i][k];
    }
    for (std::size_t k = 0; k < n; ++k) x[k] += dinv[k] * z[k];
  }
  res.stats.iterations = it;
  res.stats.residual = residual_norm(a, x, b) / bnorm;
  res.stats.converged = res.stats.residual <= sys.tolerance;
  if (!res.stats.converged) {
    throw SolverError("GMRES did not converge (relative residual " + sci(res.stats.residual) + ")",
                      res.stats);
  }
  return res;
}

}  // namespace macproj
