#ifndef WITT_NUMBER_FIELD_HPP
#define WITT_NUMBER_FIELD_HPP

#include <memory>
#include <string>
#include <vector>

#include "witt/polynomial.hpp"
#include "witt/rational.hpp"

namespace witt {

/// F = Q(theta) for theta a root of a monic irreducible min_poly over Q.
/// degree() == 1 means F = Q.
class NumberField {
public:
  /// min_poly low degree first, monic, degree >= 1.  Irreducibility is
  /// verified exactly for degree <= 4; higher degrees need assume_irreducible.
  static std::shared_ptr<const NumberField> make(std::vector<Rational> min_poly,
                                                 bool assume_irreducible = false);

  static std::shared_ptr<const NumberField> rationals();

  int degree() const { return static_cast<int>(min_poly_.size()) - 1; }
  const std::vector<Rational>& min_poly() const { return min_poly_; }

  bool same_as(const NumberField& other) const { return min_poly_ == other.min_poly_; }

private:
  explicit NumberField(std::vector<Rational> mp) : min_poly_(std::move(mp)) {}
  std::vector<Rational> min_poly_;
};

using FieldPtr = std::shared_ptr<const NumberField>;

/// Returns true iff the monic rational polynomial (low degree first) is
/// irreducible over Q.  Exact for degree <= 4.
bool is_irreducible(const std::vector<Rational>& monic_poly);

/// Element of Q(theta): coordinates in the power basis 1, theta, ...,
/// theta^(d-1), always stored at full length d.  A default-constructed
/// Scalar is a field-less zero that promotes on contact.
class Scalar {
public:
  Scalar() = default;
  Scalar(FieldPtr field, std::vector<Rational> coeffs);

  static Scalar zero(const FieldPtr& f);
  static Scalar one(const FieldPtr& f);
  static Scalar of_rational(const FieldPtr& f, const Rational& r);
  static Scalar of_int(const FieldPtr& f, long n) { return of_rational(f, Rational(n)); }
  /// theta itself (requires degree >= 2).
  static Scalar generator(const FieldPtr& f);

  const FieldPtr& field() const { return field_; }
  const std::vector<Rational>& coeffs() const { return coeffs_; }
  bool is_zero() const;
  bool is_rational() const;
  /// Value as a rational; throws unless the theta-coordinates vanish.
  Rational rational_value() const;

  Scalar operator-() const;
  friend Scalar operator+(const Scalar& a, const Scalar& b);
  friend Scalar operator-(const Scalar& a, const Scalar& b);
  friend Scalar operator*(const Scalar& a, const Scalar& b);
  friend Scalar operator/(const Scalar& a, const Scalar& b);
  friend bool operator==(const Scalar& a, const Scalar& b);
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }
  /// Total order (field-consistent inputs only); used for canonical sorting.
  friend bool operator<(const Scalar& a, const Scalar& b);

  Scalar inverse() const;
  Scalar pow(const Int& e) const;

  std::string str() const;

private:
  FieldPtr field_;                  // null <=> unpromoted zero
  std::vector<Rational> coeffs_;    // size d when field_ set
};

inline Scalar field_one(const Scalar& like) { return Scalar::one(like.field()); }
inline Scalar field_from_int(long n, const Scalar& like) { return Scalar::of_int(like.field(), n); }

}  // namespace witt

#endif
