#pragma once

#include <string>
#include <vector>

#include "qf/int_matrix.hpp"
#include "qf/rack.hpp"

namespace qf {

/// H_n as Z^betti x Z_{d1} x Z_{d2} x ... with d1 | d2 | ..., all d > 1.
struct HomologyResult {
  int betti = 0;
  std::vector<Int> torsion;

  bool operator==(const HomologyResult& other) const = default;
  bool operator<(const HomologyResult& other) const {
    if (betti != other.betti) return betti < other.betti;
    return torsion < other.torsion;
  }

  /// "[ 1, [ ] ]", "[ 1, [ 2, 2, 4 ] ]".
  std::string to_string() const;
};

/// Integer vector over the tuple basis X^degree, row-major lexicographic
/// with 1-based labels.
struct ChainVector {
  int degree = 0;
  std::vector<Int> coeffs;
};

/// Matrix of the boundary map C_n -> C_{n-1} in the row-major tuple bases;
/// n = 1 gives the zero map onto C_0 = Z.
IntMatrix boundary_matrix(const RackTable& x, int n);

HomologyResult rack_homology(const RackTable& x, int n);

/// One cycle per invariant factor d of H_n: v with boundary zero, v not in
/// the image of the next boundary map, and d*v in that image.
std::vector<ChainVector> torsion_generators(const RackTable& x, int n);

}  // namespace qf
