#pragma once

#include <string>
#include <vector>

namespace qf {

/// Permutation of the points {1..degree}.
///
/// Composition is left-to-right: (a * b)(p) == b(a(p)), i.e. a acts first.
/// This matches the usual computer-algebra convention for permutation
/// products and the way cycle products are read.
class Permutation {
public:
  /// Identity permutation.
  explicit Permutation(int degree);

  /// Builds from a 1-based image list; rejects non-bijections.
  static Permutation from_images(std::vector<int> images);

  /// Parses cycle notation: `perm := "()" | cycle+ ; cycle := "(" int ("," int)* ")"`.
  /// Whitespace is ignored; the empty string is the identity. Cycles need not
  /// be disjoint; the result is their left-to-right product. Parse errors
  /// report a 1-based character position.
  static Permutation parse_cycles(const std::string& text, int degree);

  int degree() const { return static_cast<int>(images_.size()); }

  /// Image of a point (1-based).
  int operator()(int point) const { return images_[point - 1]; }

  bool is_identity() const;

  Permutation operator*(const Permutation& other) const;
  Permutation inverse() const;

  /// x^-1 * (*this) * x.
  Permutation conjugated_by(const Permutation& x) const;

  /// Order = lcm of cycle lengths.
  long long order() const;

  bool is_even() const;

  /// Nontrivial cycles, each starting at its smallest point, ordered by
  /// smallest point.
  std::vector<std::vector<int>> cycles() const;

  /// All cycle lengths including fixed points, sorted descending.
  std::vector<int> cycle_type() const;

  /// "(1,2)(3,4,5)"; identity renders as "()".
  std::string cycle_string() const;

  const std::vector<int>& images() const { return images_; }

  bool operator==(const Permutation& other) const { return images_ == other.images_; }
  bool operator!=(const Permutation& other) const { return images_ != other.images_; }
  /// Lexicographic on (degree, image list); gives the deterministic order
  /// used everywhere permutations are sorted.
  bool operator<(const Permutation& other) const;

private:
  struct unchecked_t {};
  Permutation(std::vector<int> images, unchecked_t) : images_(std::move(images)) {}

  std::vector<int> images_;
};

std::ostream& operator<<(std::ostream& os, const Permutation& p);

}  // namespace qf
