#include "witt/number_field.hpp"

#include <algorithm>
#include <cmath>

namespace witt {

namespace {

using QPoly = Poly<Rational>;

// Clears denominators of a monic rational polynomial by the substitution
// x -> y/L, giving a monic integer polynomial with the same factorization
// behaviour over Q.
std::vector<Int> monic_integer_model(const std::vector<Rational>& p) {
  Int L(1);
  for (const auto& c : p) L = lcm(L, c.get_den());
  int d = static_cast<int>(p.size()) - 1;
  std::vector<Int> out(p.size());
  Int pw(1);
  for (int i = d; i >= 0; --i) {
    Rational scaled = p[i] * Rational(pw);
    if (scaled.get_den() != 1) throw error("internal: denominator clearing failed");
    out[i] = scaled.get_num();
    pw *= L;
  }
  return out;
}

std::vector<Int> divisors_of(const Int& n) {
  Int a = abs(n);
  std::vector<Int> divs;
  for (Int i = 1; i * i <= a; ++i) {
    if (a % i == 0) {
      divs.push_back(i);
      Int j = divexact(a, i);
      if (j != i) divs.push_back(j);
    }
  }
  return divs;
}

bool has_integer_root(const std::vector<Int>& p) {
  if (p.front() == 0) return true;
  auto eval = [&](const Int& x) {
    Int acc(0);
    for (int i = static_cast<int>(p.size()) - 1; i >= 0; --i) acc = acc * x + p[i];
    return acc;
  };
  for (const Int& d : divisors_of(p.front())) {
    if (eval(d) == 0 || eval(-d) == 0) return true;
  }
  return false;
}

// Monic integer quartic: tests for a factorization into two monic integer
// quadratics (x^2+ux+v)(x^2+wx+z).
bool quartic_has_quadratic_factor(const std::vector<Int>& p) {
  const Int &a1 = p[1], &a2 = p[2], &a3 = p[3], &a0 = p[0];
  if (a0 == 0) return true;  // root 0, caught earlier anyway
  std::vector<Int> divs = divisors_of(a0);
  for (const Int& dv : divs) {
    for (int sv : {1, -1}) {
      Int v = sv * dv;
      Int z = divexact(a0, v);
      // u + w = a3, u*w = a2 - v - z, u*z + w*v = a1
      Int s = a3, prod = a2 - v - z;
      Int disc = s * s - 4 * prod;
      if (disc < 0) continue;
      Int root;
      mpz_sqrt(root.get_mpz_t(), disc.get_mpz_t());
      if (root * root != disc) continue;
      for (int sr : {1, -1}) {
        Int two_u = s + sr * root;
        if (two_u % 2 != 0) continue;
        Int u = divexact(two_u, Int(2));
        Int w = s - u;
        if (u * z + w * v == a1) return true;
      }
    }
  }
  return false;
}

}  // namespace

bool is_irreducible(const std::vector<Rational>& monic_poly) {
  int d = static_cast<int>(monic_poly.size()) - 1;
  if (d < 1) return false;
  if (monic_poly.back() != 1) throw error("min_poly must be monic");
  if (d == 1) return true;
  std::vector<Int> p = monic_integer_model(monic_poly);
  if (has_integer_root(p)) return false;
  if (d <= 3) return true;
  if (d == 4) return !quartic_has_quadratic_factor(p);
  throw error("irreducibility undecided for degree > 4");
}

std::shared_ptr<const NumberField> NumberField::make(std::vector<Rational> min_poly,
                                                    bool assume_irreducible) {
  if (min_poly.size() < 2) throw error("min_poly must have degree >= 1");
  if (min_poly.back() != 1) throw error("min_poly must be monic");
  int d = static_cast<int>(min_poly.size()) - 1;
  if (d <= 4) {
    if (!is_irreducible(min_poly)) throw error("min_poly is reducible over Q");
  } else if (!assume_irreducible) {
    throw error("degree > 4 min_poly requires assume-irreducible");
  }
  return std::shared_ptr<const NumberField>(new NumberField(std::move(min_poly)));
}

std::shared_ptr<const NumberField> NumberField::rationals() {
  static FieldPtr q = make({Rational(0), Rational(1)});
  return q;
}

Scalar::Scalar(FieldPtr field, std::vector<Rational> coeffs)
    : field_(std::move(field)), coeffs_(std::move(coeffs)) {
  if (!field_) throw error("Scalar needs a field");
  if (static_cast<int>(coeffs_.size()) != field_->degree())
    throw error("Scalar coordinate count does not match field degree");
}

Scalar Scalar::zero(const FieldPtr& f) {
  return Scalar(f, std::vector<Rational>(f->degree(), Rational(0)));
}

Scalar Scalar::one(const FieldPtr& f) { return of_rational(f, Rational(1)); }

Scalar Scalar::of_rational(const FieldPtr& f, const Rational& r) {
  std::vector<Rational> c(f->degree(), Rational(0));
  c[0] = r;
  return Scalar(f, std::move(c));
}

Scalar Scalar::generator(const FieldPtr& f) {
  if (f->degree() < 2) throw error("Q has no generator theta");
  std::vector<Rational> c(f->degree(), Rational(0));
  c[1] = 1;
  return Scalar(f, std::move(c));
}

bool Scalar::is_zero() const {
  if (!field_) return true;
  return std::all_of(coeffs_.begin(), coeffs_.end(),
                     [](const Rational& r) { return r == 0; });
}

bool Scalar::is_rational() const {
  if (!field_) return true;
  for (std::size_t i = 1; i < coeffs_.size(); ++i)
    if (coeffs_[i] != 0) return false;
  return true;
}

Rational Scalar::rational_value() const {
  if (!is_rational()) throw error("scalar is not rational");
  return field_ ? coeffs_[0] : Rational(0);
}

namespace {

// Promotes a possibly field-less zero to b's field for mixed arithmetic.
const Scalar& promote(const Scalar& a, const Scalar& b, Scalar& storage) {
  if (a.field() || !b.field()) return a;
  storage = Scalar::zero(b.field());
  return storage;
}

std::vector<Rational> reduce_mod_minpoly(std::vector<Rational> c, const NumberField& f) {
  int d = f.degree();
  const auto& mp = f.min_poly();
  for (int i = static_cast<int>(c.size()) - 1; i >= d; --i) {
    Rational lead = c[i];
    if (lead == 0) continue;
    c[i] = 0;
    for (int j = 0; j < d; ++j) c[i - d + j] -= lead * mp[j];
  }
  c.resize(d);
  return c;
}

}  // namespace

Scalar Scalar::operator-() const {
  if (!field_) return *this;
  std::vector<Rational> c = coeffs_;
  for (auto& x : c) x = -x;
  return Scalar(field_, std::move(c));
}

Scalar operator+(const Scalar& a0, const Scalar& b0) {
  Scalar sa, sb;
  const Scalar& a = promote(a0, b0, sa);
  const Scalar& b = promote(b0, a0, sb);
  if (!a.field_) return Scalar();
  if (!a.field_->same_as(*b.field_)) throw error("scalar field mismatch");
  std::vector<Rational> c(a.coeffs_);
  for (std::size_t i = 0; i < c.size(); ++i) c[i] += b.coeffs_[i];
  return Scalar(a.field_, std::move(c));
}

Scalar operator-(const Scalar& a, const Scalar& b) { return a + (-b); }

Scalar operator*(const Scalar& a0, const Scalar& b0) {
  Scalar sa, sb;
  const Scalar& a = promote(a0, b0, sa);
  const Scalar& b = promote(b0, a0, sb);
  if (!a.field_) return Scalar();
  if (!a.field_->same_as(*b.field_)) throw error("scalar field mismatch");
  int d = a.field_->degree();
  std::vector<Rational> prod(2 * d - 1, Rational(0));
  for (int i = 0; i < d; ++i) {
    if (a.coeffs_[i] == 0) continue;
    for (int j = 0; j < d; ++j) prod[i + j] += a.coeffs_[i] * b.coeffs_[j];
  }
  return Scalar(a.field_, reduce_mod_minpoly(std::move(prod), *a.field_));
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw error("division by zero scalar");
  std::vector<Rational> mp = field_->min_poly();
  QPoly m(mp), a(coeffs_);
  auto [g, u, v] = QPoly::xgcd(a, m);
  (void)v;
  if (g.degree() != 0) throw error("min_poly not irreducible: gcd obstruction");
  // g == 1 after normalization, so u*a == 1 mod m.
  std::vector<Rational> c = u.coeffs();
  c.resize(std::max<std::size_t>(c.size(), field_->degree()), Rational(0));
  return Scalar(field_, reduce_mod_minpoly(std::move(c), *field_));
}

Scalar operator/(const Scalar& a, const Scalar& b) { return a * b.inverse(); }

bool operator==(const Scalar& a, const Scalar& b) {
  if (!a.field_ || !b.field_) {
    if (!a.field_ && !b.field_) return true;
    return (a.field_ ? a : b).is_zero();
  }
  if (!a.field_->same_as(*b.field_)) return false;
  return a.coeffs_ == b.coeffs_;
}

bool operator<(const Scalar& a, const Scalar& b) {
  Scalar sa, sb;
  const Scalar& x = promote(a, b, sa);
  const Scalar& y = promote(b, a, sb);
  if (!x.field_) return false;
  return x.coeffs_ < y.coeffs_;
}

Scalar Scalar::pow(const Int& e) const {
  if (!field_) {
    if (e == 0) throw error("0^0 of field-less zero");
    return *this;
  }
  if (e < 0) return inverse().pow(-e);
  Scalar base = *this, acc = Scalar::one(field_);
  Int n = e;
  while (n > 0) {
    if (mpz_odd_p(n.get_mpz_t())) acc = acc * base;
    base = base * base;
    n >>= 1;
  }
  return acc;
}

std::string Scalar::str() const {
  if (!field_) return "0";
  if (field_->degree() == 1) return rational_str(coeffs_[0]);
  std::string s = "[";
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (i) s += ",";
    s += rational_str(coeffs_[i]);
  }
  return s + "]";
}

}  // namespace witt
