#include "qf/perm.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <ostream>
#include <sstream>

#include "qf/error.hpp"

namespace qf {

Permutation::Permutation(int degree) {
  if (degree < 1) throw error("permutation degree must be positive");
  images_.resize(degree);
  std::iota(images_.begin(), images_.end(), 1);
}

Permutation Permutation::from_images(std::vector<int> images) {
  int n = static_cast<int>(images.size());
  if (n < 1) throw error("permutation degree must be positive");
  std::vector<char> seen(static_cast<size_t>(n) + 1, 0);
  for (int v : images) {
    if (v < 1 || v > n) throw error("image " + std::to_string(v) + " out of range 1.." + std::to_string(n));
    if (seen[v]) throw error("image list is not a bijection: " + std::to_string(v) + " repeated");
    seen[v] = 1;
  }
  return Permutation(std::move(images), unchecked_t{});
}

Permutation Permutation::parse_cycles(const std::string& text, int degree) {
  if (degree < 1) throw error("permutation degree must be positive");
  Permutation result(degree);
  size_t i = 0;
  auto skip_ws = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  auto fail = [&](const std::string& msg, size_t pos) -> void {
    throw error("cycle parse error at position " + std::to_string(pos + 1) + ": " + msg);
  };
  skip_ws();
  while (i < text.size()) {
    if (text[i] != '(') fail("expected '('", i);
    size_t open = i;
    ++i;
    skip_ws();
    std::vector<int> cycle;
    if (i < text.size() && text[i] == ')') {
      ++i;  // "()" = identity factor
      skip_ws();
      continue;
    }
    for (;;) {
      skip_ws();
      if (i >= text.size()) fail("unbalanced parenthesis", open);
      if (!std::isdigit(static_cast<unsigned char>(text[i]))) fail("expected integer", i);
      size_t start = i;
      long long v = 0;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
        v = v * 10 + (text[i] - '0');
        if (v > 1000000) fail("point too large", start);
        ++i;
      }
      if (v < 1 || v > degree)
        fail("point " + std::to_string(v) + " out of range 1.." + std::to_string(degree), start);
      if (std::find(cycle.begin(), cycle.end(), static_cast<int>(v)) != cycle.end())
        fail("point " + std::to_string(v) + " repeated in cycle", start);
      cycle.push_back(static_cast<int>(v));
      skip_ws();
      if (i >= text.size()) fail("unbalanced parenthesis", open);
      if (text[i] == ',') {
        ++i;
        continue;
      }
      if (text[i] == ')') {
        ++i;
        break;
      }
      fail("expected ',' or ')'", i);
    }
    if (cycle.size() >= 2) {
      std::vector<int> imgs(static_cast<size_t>(degree));
      std::iota(imgs.begin(), imgs.end(), 1);
      for (size_t k = 0; k < cycle.size(); ++k)
        imgs[static_cast<size_t>(cycle[k]) - 1] = cycle[(k + 1) % cycle.size()];
      result = result * Permutation(std::move(imgs), unchecked_t{});
    }
    skip_ws();
  }
  return result;
}

bool Permutation::is_identity() const {
  for (int p = 1; p <= degree(); ++p)
    if (images_[p - 1] != p) return false;
  return true;
}

Permutation Permutation::operator*(const Permutation& other) const {
  if (degree() != other.degree()) throw error("permutation degree mismatch in product");
  std::vector<int> imgs(images_.size());
  for (size_t k = 0; k < images_.size(); ++k)
    imgs[k] = other.images_[static_cast<size_t>(images_[k]) - 1];
  return Permutation(std::move(imgs), unchecked_t{});
}

Permutation Permutation::inverse() const {
  std::vector<int> imgs(images_.size());
  for (size_t k = 0; k < images_.size(); ++k)
    imgs[static_cast<size_t>(images_[k]) - 1] = static_cast<int>(k) + 1;
  return Permutation(std::move(imgs), unchecked_t{});
}

Permutation Permutation::conjugated_by(const Permutation& x) const {
  if (degree() != x.degree()) throw error("permutation degree mismatch in conjugation");
  // (x^-1 * this * x)(p) = x(this(x^-1(p)))
  std::vector<int> imgs(images_.size());
  for (int p = 1; p <= degree(); ++p)
    imgs[static_cast<size_t>(x.images_[p - 1]) - 1] = x.images_[static_cast<size_t>(images_[p - 1]) - 1];
  return Permutation(std::move(imgs), unchecked_t{});
}

long long Permutation::order() const {
  long long result = 1;
  for (int len : cycle_type()) result = std::lcm(result, static_cast<long long>(len));
  return result;
}

bool Permutation::is_even() const {
  int transpositions = 0;
  for (int len : cycle_type()) transpositions += len - 1;
  return transpositions % 2 == 0;
}

std::vector<std::vector<int>> Permutation::cycles() const {
  std::vector<std::vector<int>> result;
  std::vector<char> seen(images_.size() + 1, 0);
  for (int p = 1; p <= degree(); ++p) {
    if (seen[p] || images_[p - 1] == p) continue;
    std::vector<int> cyc;
    int q = p;
    do {
      cyc.push_back(q);
      seen[q] = 1;
      q = images_[q - 1];
    } while (q != p);
    result.push_back(std::move(cyc));
  }
  return result;
}

std::vector<int> Permutation::cycle_type() const {
  std::vector<int> lens;
  std::vector<char> seen(images_.size() + 1, 0);
  for (int p = 1; p <= degree(); ++p) {
    if (seen[p]) continue;
    int len = 0;
    int q = p;
    do {
      ++len;
      seen[q] = 1;
      q = images_[q - 1];
    } while (q != p);
    lens.push_back(len);
  }
  std::sort(lens.begin(), lens.end(), std::greater<int>());
  return lens;
}

std::string Permutation::cycle_string() const {
  auto cycs = cycles();
  if (cycs.empty()) return "()";
  std::ostringstream os;
  for (const auto& cyc : cycs) {
    os << '(';
    for (size_t k = 0; k < cyc.size(); ++k) {
      if (k) os << ',';
      os << cyc[k];
    }
    os << ')';
  }
  return os.str();
}

bool Permutation::operator<(const Permutation& other) const {
  if (degree() != other.degree()) return degree() < other.degree();
  return images_ < other.images_;
}

std::ostream& operator<<(std::ostream& os, const Permutation& p) {
  return os << p.cycle_string();
}

}  // namespace qf
