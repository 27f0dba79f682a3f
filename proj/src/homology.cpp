#include "qf/homology.hpp"

#include <sstream>

#include "qf/error.hpp"

namespace qf {

std::string HomologyResult::to_string() const {
  std::ostringstream os;
  os << "[ " << betti << ", [";
  if (torsion.empty()) {
    os << " ]";
  } else {
    for (size_t i = 0; i < torsion.size(); ++i) os << (i ? ", " : " ") << torsion[i];
    os << " ]";
  }
  os << " ]";
  return os.str();
}

namespace {

// Tuple counts with the resource guard from the module contract.
long long basis_size(int n, int deg) {
  long long count = 1;
  for (int i = 0; i < deg; ++i) {
    count *= n;
    if (count > (1ll << 24)) throw error("homology: basis X^" + std::to_string(deg) + " exceeds 2^24 elements");
  }
  return count;
}

struct HomologyWork {
  int kernel_dim = 0;
  SnfResult snf_low;   // of the boundary out of C_n (V, Vinv tracked)
  SnfResult snf_quot;  // of the next boundary in kernel coordinates (Uinv tracked)
};

HomologyWork homology_work(const RackTable& x, int n) {
  IntMatrix low = boundary_matrix(x, n);
  IntMatrix high = boundary_matrix(x, n + 1);
  HomologyWork w;
  w.snf_low = smith_normal_form(low, {.want_v = true, .want_vinv = true});
  int cn = low.cols();
  int s = cn - w.snf_low.rank;
  w.kernel_dim = s;
  // Columns of the next boundary lie in ker(low); their coordinates in the
  // kernel basis are the last s rows of Vinv applied to each column.
  const IntMatrix& vinv = *w.snf_low.vinv;
  IntMatrix b(s, high.cols());
  for (int r = 0; r < high.rows(); ++r)
    for (int c = 0; c < high.cols(); ++c) {
      const Int& val = high.at(r, c);
      if (val == 0) continue;
      for (int k = 0; k < s; ++k) {
        const Int& coef = vinv.at(w.snf_low.rank + k, r);
        if (coef != 0) b.at(k, c) += coef * val;
      }
    }
  w.snf_quot = smith_normal_form(b, {.want_uinv = true});
  return w;
}

}  // namespace

IntMatrix boundary_matrix(const RackTable& x, int n) {
  if (n < 1) throw error("boundary_matrix: degree must be at least 1");
  int sz = x.size();
  long long cols = basis_size(sz, n);
  long long rows = basis_size(sz, n - 1);
  if (rows * cols > (1ll << 25)) throw error("homology: boundary matrix too large");
  IntMatrix result(static_cast<int>(rows), static_cast<int>(cols));
  if (n == 1) return result;  // the map onto C_0 is zero

  std::vector<int> tuple(static_cast<size_t>(n), 1);  // odometer over X^n
  for (long long c = 0; c < cols; ++c) {
    // Term i deletes x_i. The second summand first acts with x_i on every
    // later entry.
    for (int i = 1; i <= n - 1; ++i) {
      int sign = (i % 2 == 1) ? 1 : -1;
      long long r1 = 0, r2 = 0;
      for (int k = 1; k <= n; ++k) {
        if (k == i) continue;
        int e1 = tuple[static_cast<size_t>(k - 1)];
        int e2 = k < i ? e1 : x.at(tuple[static_cast<size_t>(i - 1)], e1);
        r1 = r1 * sz + (e1 - 1);
        r2 = r2 * sz + (e2 - 1);
      }
      result.at(static_cast<int>(r1), static_cast<int>(c)) += sign;
      result.at(static_cast<int>(r2), static_cast<int>(c)) -= sign;
    }
    for (int k = n - 1; k >= 0; --k) {
      if (++tuple[static_cast<size_t>(k)] <= sz) break;
      tuple[static_cast<size_t>(k)] = 1;
    }
  }
  return result;
}

HomologyResult rack_homology(const RackTable& x, int n) {
  if (n < 0) throw error("rack_homology: degree must be non-negative");
  if (n == 0) return HomologyResult{1, {}};
  HomologyWork w = homology_work(x, n);
  HomologyResult result;
  result.betti = w.kernel_dim - w.snf_quot.rank;
  result.torsion = w.snf_quot.torsion();
  return result;
}

std::vector<ChainVector> torsion_generators(const RackTable& x, int n) {
  if (n < 1) return {};
  HomologyWork w = homology_work(x, n);
  const IntMatrix& v = *w.snf_low.v;
  const IntMatrix& uinv = *w.snf_quot.uinv;
  int cn = v.rows();
  std::vector<ChainVector> result;
  for (int i = 0; i < w.snf_quot.rank; ++i) {
    if (w.snf_quot.d.at(i, i) <= 1) continue;
    // Generator of the Z_d factor: uinv column i in kernel coordinates,
    // mapped back through the kernel basis (columns rank.. of V).
    ChainVector cv;
    cv.degree = n;
    cv.coeffs.assign(static_cast<size_t>(cn), Int(0));
    for (int k = 0; k < w.kernel_dim; ++k) {
      const Int& coef = uinv.at(k, i);
      if (coef == 0) continue;
      for (int r = 0; r < cn; ++r) {
        const Int& base = v.at(r, w.snf_low.rank + k);
        if (base != 0) cv.coeffs[static_cast<size_t>(r)] += coef * base;
      }
    }
    result.push_back(std::move(cv));
  }
  return result;
}

}  // namespace qf
