#ifndef WITT_POLYNOMIAL_HPP
#define WITT_POLYNOMIAL_HPP

#include <vector>

#include "witt/rational.hpp"

namespace witt {

/// Customization points so Poly can work over both Rational and Scalar
/// ("like" carries field context for number-field elements).
inline Rational field_one(const Rational&) { return Rational(1); }
inline Rational field_from_int(long n, const Rational&) { return Rational(n); }

/// Dense univariate polynomial over a field K.  K must provide +,-,*,
/// division for nonzero divisors, equality and a zero default constructor.
/// Coefficients are stored low degree first with no trailing zeros.
template <typename K>
class Poly {
public:
  Poly() = default;
  explicit Poly(std::vector<K> coeffs) : c_(std::move(coeffs)) { trim(); }

  static Poly constant(const K& k) { return Poly(std::vector<K>{k}); }

  const std::vector<K>& coeffs() const { return c_; }
  bool is_zero() const { return c_.empty(); }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  const K& lead() const { return c_.back(); }

  K at(std::size_t i) const { return i < c_.size() ? c_[i] : K{}; }

  friend Poly operator+(const Poly& a, const Poly& b) {
    std::vector<K> r(std::max(a.c_.size(), b.c_.size()), K{});
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = a.at(i) + b.at(i);
    return Poly(std::move(r));
  }
  friend Poly operator-(const Poly& a, const Poly& b) {
    std::vector<K> r(std::max(a.c_.size(), b.c_.size()), K{});
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = a.at(i) - b.at(i);
    return Poly(std::move(r));
  }
  friend Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly();
    std::vector<K> r(a.c_.size() + b.c_.size() - 1, K{});
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] = r[i + j] + a.c_[i] * b.c_[j];
    return Poly(std::move(r));
  }
  friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }

  Poly scaled(const K& k) const {
    std::vector<K> r = c_;
    for (auto& x : r) x = x * k;
    return Poly(std::move(r));
  }

  /// Euclidean division; returns {quotient, remainder}.
  std::pair<Poly, Poly> divmod(const Poly& d) const {
    if (d.is_zero()) throw error("polynomial division by zero");
    Poly q, r = *this;
    std::vector<K> qc(c_.size(), K{});
    while (!r.is_zero() && r.degree() >= d.degree()) {
      K f = r.lead() / d.lead();
      int shift = r.degree() - d.degree();
      qc[shift] = qc[shift] + f;
      std::vector<K> sub(shift + d.c_.size(), K{});
      for (std::size_t i = 0; i < d.c_.size(); ++i) sub[shift + i] = d.c_[i] * f;
      r = r - Poly(std::move(sub));
    }
    return {Poly(std::move(qc)), r};
  }

  Poly derivative() const {
    if (c_.size() <= 1) return Poly();
    std::vector<K> r(c_.size() - 1, K{});
    for (std::size_t i = 1; i < c_.size(); ++i) r[i - 1] = c_[i] * field_from_int(static_cast<long>(i), c_[i]);
    return Poly(std::move(r));
  }

  /// Monic gcd.
  static Poly gcd(Poly a, Poly b) {
    while (!b.is_zero()) {
      Poly r = a.divmod(b).second;
      a = b;
      b = r;
    }
    if (a.is_zero()) return a;
    return a.scaled(field_one(a.lead()) / a.lead());
  }

  /// Extended gcd: returns (g, u, v) with u*a + v*b = g, g monic.
  static std::tuple<Poly, Poly, Poly> xgcd(Poly a, Poly b) {
    Poly r0 = a, r1 = b;
    Poly s0 = Poly::constant(field_one(pick_unit(a, b))), s1;
    Poly t0, t1 = s0;
    while (!r1.is_zero()) {
      auto [q, r] = r0.divmod(r1);
      Poly s = s0 - q * s1, t = t0 - q * t1;
      r0 = r1; r1 = r;
      s0 = s1; s1 = s;
      t0 = t1; t1 = t;
    }
    if (r0.is_zero()) return {r0, s0, t0};
    K inv = field_one(r0.lead()) / r0.lead();
    return {r0.scaled(inv), s0.scaled(inv), t0.scaled(inv)};
  }

private:
  static K pick_unit(const Poly& a, const Poly& b) {
    if (!a.is_zero()) return a.lead();
    if (!b.is_zero()) return b.lead();
    return K{};
  }
  void trim() {
    while (!c_.empty() && c_.back() == K{}) c_.pop_back();
  }
  std::vector<K> c_;
};

}  // namespace witt

#endif
