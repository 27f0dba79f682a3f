#include "qf/construct.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "qf/error.hpp"

namespace qf {

namespace {

bool is_prime(int p) {
  if (p < 2) return false;
  for (int d = 2; static_cast<long long>(d) * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

// Polynomials over Z_p encoded as base-p integers, c_0 least significant.
std::vector<int> poly_digits(long long enc, int p) {
  std::vector<int> c;
  while (enc > 0) {
    c.push_back(static_cast<int>(enc % p));
    enc /= p;
  }
  return c;
}

int poly_deg(const std::vector<int>& a) {
  for (int d = static_cast<int>(a.size()) - 1; d >= 0; --d)
    if (a[static_cast<size_t>(d)] != 0) return d;
  return -1;
}

// a mod b over Z_p, b monic-led (any nonzero lead).
std::vector<int> poly_mod(std::vector<int> a, const std::vector<int>& b, int p) {
  int db = poly_deg(b);
  int lead_inv = 0;
  for (int t = 1; t < p; ++t)
    if (t * b[static_cast<size_t>(db)] % p == 1) lead_inv = t;
  for (int da = poly_deg(a); da >= db; da = poly_deg(a)) {
    int coef = static_cast<int>(static_cast<long long>(a[static_cast<size_t>(da)]) * lead_inv % p);
    for (int k = 0; k <= db; ++k) {
      long long v = a[static_cast<size_t>(da - db + k)] -
                    static_cast<long long>(coef) * b[static_cast<size_t>(k)] % p;
      a[static_cast<size_t>(da - db + k)] = static_cast<int>(((v % p) + p) % p);
    }
  }
  return a;
}

bool poly_is_zero(const std::vector<int>& a) { return poly_deg(a) < 0; }

}  // namespace

FiniteField::FiniteField(int p, int k) : p_(p), k_(k) {
  if (!is_prime(p)) throw error("make_field: characteristic must be prime");
  if (k < 1) throw error("make_field: degree must be at least 1");
  long long q = 1;
  for (int i = 0; i < k; ++i) {
    q *= p;
    if (q > 65536) throw error("make_field: field order exceeds 2^16");
  }
  q_ = static_cast<int>(q);
  if (k == 1) {
    modulus_ = {0, 1};  // x
    return;
  }
  // Smallest monic irreducible of degree k, by integer encoding; trial
  // division by every lower-degree monic polynomial of degree >= 1.
  long long lo = q;  // x^k
  for (long long enc = lo; enc < 2 * lo; ++enc) {
    std::vector<int> cand = poly_digits(enc, p);
    bool irreducible = true;
    for (int dd = 1; dd <= k / 2 && irreducible; ++dd) {
      long long dlo = 1;
      for (int i = 0; i < dd; ++i) dlo *= p;
      for (long long denc = dlo; denc < 2 * dlo; ++denc) {
        std::vector<int> div = poly_digits(denc, p);
        if (poly_is_zero(poly_mod(cand, div, p))) {
          irreducible = false;
          break;
        }
      }
    }
    if (irreducible) {
      modulus_ = std::move(cand);
      return;
    }
  }
  throw error("make_field: no irreducible modulus found");  // unreachable
}

int FiniteField::add(int a, int b) const {
  int result = 0, mult = 1;
  for (int i = 0; i < k_; ++i) {
    result += (a % p_ + b % p_) % p_ * mult;
    a /= p_;
    b /= p_;
    mult *= p_;
  }
  return result;
}

int FiniteField::neg(int a) const {
  int result = 0, mult = 1;
  for (int i = 0; i < k_; ++i) {
    result += (p_ - a % p_) % p_ * mult;
    a /= p_;
    mult *= p_;
  }
  return result;
}

int FiniteField::mul(int a, int b) const {
  std::vector<int> da = poly_digits(a, p_), db = poly_digits(b, p_);
  std::vector<int> prod(da.size() + db.size(), 0);
  for (size_t i = 0; i < da.size(); ++i)
    for (size_t j = 0; j < db.size(); ++j)
      prod[i + j] = static_cast<int>((prod[i + j] + static_cast<long long>(da[i]) * db[j]) % p_);
  prod = poly_mod(std::move(prod), modulus_, p_);
  long long enc = 0, mult = 1;
  for (int d = 0; d < k_; ++d) {
    if (d < static_cast<int>(prod.size())) enc += prod[static_cast<size_t>(d)] * mult;
    mult *= p_;
  }
  return static_cast<int>(enc);
}

int FiniteField::pow(int a, long long e) const {
  e %= (q_ - 1);
  if (e < 0) e += q_ - 1;
  int result = 1, base = a;
  while (e > 0) {
    if (e & 1) result = mul(result, base);
    base = mul(base, base);
    e >>= 1;
  }
  return result;
}

int FiniteField::inv(int a) const {
  if (a == 0) throw error("field inverse of zero");
  return pow(a, q_ - 2);
}

int FiniteField::multiplicative_generator() const {
  for (int g = 1; g < q_; ++g) {
    int e = g, count = 1;
    while (e != 1) {
      e = mul(e, g);
      ++count;
    }
    if (count == q_ - 1) return g;
  }
  throw error("field has no multiplicative generator");  // unreachable
}

std::string FiniteField::element_string(int a) const {
  std::ostringstream os;
  os << '[';
  for (int i = 0; i < k_; ++i) {
    if (i) os << ',';
    os << a % p_;
    a /= p_;
  }
  os << ']';
  return os.str();
}

RackTable dihedral_quandle(int n) {
  if (n < 2) throw error("dihedral_quandle: n must be at least 2");
  std::vector<int> flat(static_cast<size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      flat[static_cast<size_t>(i) * n + j] = ((2 * i - j) % n + n) % n + 1;
  return RackTable::validate_flat(n, std::move(flat));
}

RackTable affine_quandle_zn(int n, int t) {
  if (n < 1) throw error("affine_quandle_zn: n must be positive");
  int tm = ((t % n) + n) % n;
  if (std::gcd(tm, n) != 1) throw error("affine_quandle_zn: t must be a unit mod n");
  std::vector<int> flat(static_cast<size_t>(n) * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      long long v = (static_cast<long long>(1 - tm) * a + static_cast<long long>(tm) * b) % n;
      flat[static_cast<size_t>(a) * n + b] = static_cast<int>((v + n) % n) + 1;
    }
  return RackTable::validate_flat(n, std::move(flat));
}

RackTable affine_quandle_fq(const FiniteField& f, int alpha) {
  if (alpha <= 0 || alpha >= f.order()) throw error("affine_quandle_fq: alpha must be a nonzero field element");
  int n = f.order();
  int one_minus = f.sub(1, alpha);
  std::vector<int> flat(static_cast<size_t>(n) * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      flat[static_cast<size_t>(a) * n + b] = f.add(f.mul(one_minus, a), f.mul(alpha, b)) + 1;
  return RackTable::validate_flat(n, std::move(flat));
}

RackTable conjugation_rack(const PermGroup& g, const std::vector<Permutation>& elements) {
  if (elements.empty()) throw error("conjugation_rack: need at least one element");
  std::vector<Permutation> points;
  for (const auto& e : elements) {
    auto cls = g.conjugacy_class(e);  // throws on membership failure
    points.insert(points.end(), cls.begin(), cls.end());
  }
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  int n = static_cast<int>(points.size());
  if (n > 256) throw error("conjugation_rack: class union too large");
  std::vector<int> flat(static_cast<size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Permutation v = points[static_cast<size_t>(i)] * points[static_cast<size_t>(j)] *
                      points[static_cast<size_t>(i)].inverse();
      auto it = std::lower_bound(points.begin(), points.end(), v);
      if (it == points.end() || !(*it == v))
        throw error("conjugation_rack: class union is not closed");
      flat[static_cast<size_t>(i) * n + j] = static_cast<int>(it - points.begin()) + 1;
    }
  return RackTable::validate_flat(n, std::move(flat));
}

RackTable homogeneous_quandle(const PermGroup& g, const PermGroup& h, const Permutation& z) {
  if (h.degree() != g.degree() || z.degree() != g.degree())
    throw error("homogeneous_quandle: degree mismatch");
  if (!g.contains_group(h)) throw error("homogeneous_quandle: h is not a subgroup of g");
  if (!g.contains(z)) throw error("homogeneous_quandle: z is not a member of g");
  for (const auto& s : h.generators())
    if (!(z * s == s * z)) throw error("homogeneous_quandle: z does not centralize h");

  auto reps = g.coset_representatives(h);
  int n = static_cast<int>(reps.size());
  if (n > 256) throw error("homogeneous_quandle: coset space too large");
  std::vector<Permutation> reps_inv;
  reps_inv.reserve(reps.size());
  for (const auto& r : reps) reps_inv.push_back(r.inverse());
  Permutation zi = z.inverse();

  auto coset_of = [&](const Permutation& w) {
    for (int k = 0; k < n; ++k)
      if (h.contains(reps_inv[static_cast<size_t>(k)] * w)) return k + 1;
    throw error("homogeneous_quandle: coset lookup failed");
  };

  // xH |> yH = x s(x^-1 y) H with s the conjugation u -> z u z^-1, products
  // applied left-to-right.
  std::vector<int> flat(static_cast<size_t>(n) * n);
  for (int i = 0; i < n; ++i) {
    Permutation xzix = reps[static_cast<size_t>(i)] * zi * reps_inv[static_cast<size_t>(i)];
    for (int j = 0; j < n; ++j)
      flat[static_cast<size_t>(i) * n + j] = coset_of(xzix * reps[static_cast<size_t>(j)] * z);
  }
  return RackTable::validate_flat(n, std::move(flat));
}

}  // namespace qf
