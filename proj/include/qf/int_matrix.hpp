#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <optional>
#include <vector>

namespace qf {

using Int = boost::multiprecision::cpp_int;

/// Dense matrix over Z with arbitrary-precision entries.
class IntMatrix {
public:
  IntMatrix() : rows_(0), cols_(0) {}
  IntMatrix(int rows, int cols) : rows_(rows), cols_(cols), data_(static_cast<size_t>(rows) * cols) {}
  static IntMatrix identity(int n);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  Int& at(int r, int c) { return data_[static_cast<size_t>(r) * cols_ + c]; }
  const Int& at(int r, int c) const { return data_[static_cast<size_t>(r) * cols_ + c]; }

  IntMatrix operator*(const IntMatrix& other) const;
  std::vector<Int> apply(const std::vector<Int>& v) const;  // matrix * column vector

  bool operator==(const IntMatrix& other) const {
    return rows_ == other.rows_ && cols_ == other.cols_ && data_ == other.data_;
  }

private:
  int rows_, cols_;
  std::vector<Int> data_;
};

struct SnfOptions {
  bool want_u = false;
  bool want_uinv = false;
  bool want_v = false;
  bool want_vinv = false;
};

/// u * a * v = d with u, v unimodular and d diagonal, d_1 | d_2 | ..., all
/// d >= 0. uinv/vinv are the tracked inverses.
struct SnfResult {
  IntMatrix d;
  std::optional<IntMatrix> u, uinv, v, vinv;
  int rank = 0;
  std::vector<Int> diagonal() const;
  std::vector<Int> torsion() const;  // diagonal entries > 1
};

/// Pivot choice: nonzero entry of minimal absolute value, ties broken by
/// smallest (row, col).
SnfResult smith_normal_form(const IntMatrix& a, SnfOptions opts = {});

/// Exact determinant (fraction-free elimination); square matrices only.
Int determinant(const IntMatrix& a);

/// Whether a * w = v has an integer solution.
bool in_image(const IntMatrix& a, const std::vector<Int>& v);

}  // namespace qf
