#include "qf/int_matrix.hpp"

#include <algorithm>

#include "qf/error.hpp"

namespace qf {

IntMatrix IntMatrix::identity(int n) {
  IntMatrix m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::operator*(const IntMatrix& other) const {
  if (cols_ != other.rows_) throw error("matrix product: shape mismatch");
  IntMatrix result(rows_, other.cols_);
  for (int i = 0; i < rows_; ++i)
    for (int k = 0; k < cols_; ++k) {
      const Int& v = at(i, k);
      if (v == 0) continue;
      for (int j = 0; j < other.cols_; ++j) {
        const Int& w = other.at(k, j);
        if (w != 0) result.at(i, j) += v * w;
      }
    }
  return result;
}

std::vector<Int> IntMatrix::apply(const std::vector<Int>& v) const {
  if (static_cast<int>(v.size()) != cols_) throw error("matrix apply: shape mismatch");
  std::vector<Int> result(static_cast<size_t>(rows_));
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j)
      if (at(i, j) != 0 && v[static_cast<size_t>(j)] != 0)
        result[static_cast<size_t>(i)] += at(i, j) * v[static_cast<size_t>(j)];
  return result;
}

std::vector<Int> SnfResult::diagonal() const {
  std::vector<Int> diag;
  int m = std::min(d.rows(), d.cols());
  for (int i = 0; i < m; ++i) diag.push_back(d.at(i, i));
  return diag;
}

std::vector<Int> SnfResult::torsion() const {
  std::vector<Int> result;
  for (const Int& v : diagonal())
    if (v > 1) result.push_back(v);
  return result;
}

namespace {

// Quotient minimizing |a - q*p|.
Int symmetric_div(const Int& a, const Int& p) {
  Int q = a / p;
  Int r = a - q * p;
  if (2 * abs(r) > abs(p)) q += ((r > 0) == (p > 0)) ? 1 : -1;
  return q;
}

struct Worker {
  IntMatrix d;
  std::optional<IntMatrix> u, uinv, v, vinv;

  void row_swap(int i, int j) {
    if (i == j) return;
    for (int c = 0; c < d.cols(); ++c) std::swap(d.at(i, c), d.at(j, c));
    if (u)
      for (int c = 0; c < u->cols(); ++c) std::swap(u->at(i, c), u->at(j, c));
    if (uinv)
      for (int r = 0; r < uinv->rows(); ++r) std::swap(uinv->at(r, i), uinv->at(r, j));
  }
  void col_swap(int i, int j) {
    if (i == j) return;
    for (int r = 0; r < d.rows(); ++r) std::swap(d.at(r, i), d.at(r, j));
    if (v)
      for (int r = 0; r < v->rows(); ++r) std::swap(v->at(r, i), v->at(r, j));
    if (vinv)
      for (int c = 0; c < vinv->cols(); ++c) std::swap(vinv->at(i, c), vinv->at(j, c));
  }
  // row_i -= q * row_t
  void row_axpy(int i, int t, const Int& q) {
    if (q == 0) return;
    for (int c = 0; c < d.cols(); ++c)
      if (d.at(t, c) != 0) d.at(i, c) -= q * d.at(t, c);
    if (u)
      for (int c = 0; c < u->cols(); ++c)
        if (u->at(t, c) != 0) u->at(i, c) -= q * u->at(t, c);
    if (uinv)
      for (int r = 0; r < uinv->rows(); ++r)
        if (uinv->at(r, i) != 0) uinv->at(r, t) += q * uinv->at(r, i);
  }
  // col_j -= q * col_t
  void col_axpy(int j, int t, const Int& q) {
    if (q == 0) return;
    for (int r = 0; r < d.rows(); ++r)
      if (d.at(r, t) != 0) d.at(r, j) -= q * d.at(r, t);
    if (v)
      for (int r = 0; r < v->rows(); ++r)
        if (v->at(r, t) != 0) v->at(r, j) -= q * v->at(r, t);
    if (vinv)
      for (int c = 0; c < vinv->cols(); ++c)
        if (vinv->at(j, c) != 0) vinv->at(t, c) += q * vinv->at(j, c);
  }
  void row_negate(int i) {
    for (int c = 0; c < d.cols(); ++c) d.at(i, c) = -d.at(i, c);
    if (u)
      for (int c = 0; c < u->cols(); ++c) u->at(i, c) = -u->at(i, c);
    if (uinv)
      for (int r = 0; r < uinv->rows(); ++r) uinv->at(r, i) = -uinv->at(r, i);
  }
};

}  // namespace

SnfResult smith_normal_form(const IntMatrix& a, SnfOptions opts) {
  Worker w{a, {}, {}, {}, {}};
  if (opts.want_u) w.u = IntMatrix::identity(a.rows());
  if (opts.want_uinv) w.uinv = IntMatrix::identity(a.rows());
  if (opts.want_v) w.v = IntMatrix::identity(a.cols());
  if (opts.want_vinv) w.vinv = IntMatrix::identity(a.cols());
  IntMatrix& d = w.d;
  int m = d.rows(), n = d.cols();
  int t = 0;
  while (t < m && t < n) {
    // Minimal |entry| pivot in the working submatrix; a +-1 hit at the
    // smallest position cannot be beaten.
    int pr = -1, pc = -1;
    Int pbest = 0;
    for (int i = t; i < m && pbest != 1; ++i)
      for (int j = t; j < n; ++j) {
        const Int& val = d.at(i, j);
        if (val == 0) continue;
        Int av = abs(val);
        if (pr < 0 || av < pbest) {
          pbest = av;
          pr = i;
          pc = j;
          if (pbest == 1) break;
        }
      }
    if (pr < 0) break;  // submatrix is zero
    w.row_swap(t, pr);
    w.col_swap(t, pc);
    for (;;) {
      // Reduce column t, then row t, re-pivoting on a smaller remainder.
      bool again = false;
      for (int i = t + 1; i < m; ++i) {
        if (d.at(i, t) == 0) continue;
        Int q = symmetric_div(d.at(i, t), d.at(t, t));
        w.row_axpy(i, t, q);
        if (d.at(i, t) != 0) {
          w.row_swap(t, i);  // strictly smaller pivot
          again = true;
          break;
        }
      }
      if (again) continue;
      for (int j = t + 1; j < n; ++j) {
        if (d.at(t, j) == 0) continue;
        Int q = symmetric_div(d.at(t, j), d.at(t, t));
        w.col_axpy(j, t, q);
        if (d.at(t, j) != 0) {
          w.col_swap(t, j);
          again = true;
          break;
        }
      }
      if (again) continue;
      // Pivot must divide the rest of the submatrix for the divisibility
      // chain; pull a bad row in and reduce again.
      bool divisible = true;
      for (int i = t + 1; i < m && divisible; ++i)
        for (int j = t + 1; j < n; ++j)
          if (d.at(i, j) % d.at(t, t) != 0) {
            w.row_axpy(t, i, Int(-1));  // row_t += row_i
            divisible = false;
            break;
          }
      if (divisible) break;
    }
    if (d.at(t, t) < 0) w.row_negate(t);
    ++t;
  }
  SnfResult result{std::move(w.d), std::move(w.u), std::move(w.uinv), std::move(w.v), std::move(w.vinv), t};
  return result;
}

Int determinant(const IntMatrix& a) {
  if (a.rows() != a.cols()) throw error("determinant: matrix not square");
  int n = a.rows();
  if (n == 0) return 1;
  IntMatrix m = a;
  Int prev = 1;
  int sign = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (m.at(k, k) == 0) {
      int swap_row = -1;
      for (int i = k + 1; i < n; ++i)
        if (m.at(i, k) != 0) {
          swap_row = i;
          break;
        }
      if (swap_row < 0) return 0;
      for (int c = 0; c < n; ++c) std::swap(m.at(k, c), m.at(swap_row, c));
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j)
        m.at(i, j) = (m.at(k, k) * m.at(i, j) - m.at(i, k) * m.at(k, j)) / prev;
    prev = m.at(k, k);
  }
  return sign > 0 ? m.at(n - 1, n - 1) : -m.at(n - 1, n - 1);
}

bool in_image(const IntMatrix& a, const std::vector<Int>& v) {
  if (static_cast<int>(v.size()) != a.rows()) throw error("in_image: shape mismatch");
  auto snf = smith_normal_form(a, {.want_u = true});
  std::vector<Int> uv = snf.u->apply(v);
  for (int i = 0; i < a.rows(); ++i) {
    if (i < snf.rank) {
      if (uv[static_cast<size_t>(i)] % snf.d.at(i, i) != 0) return false;
    } else if (uv[static_cast<size_t>(i)] != 0) {
      return false;
    }
  }
  return true;
}

}  // namespace qf
