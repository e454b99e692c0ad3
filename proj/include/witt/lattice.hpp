#ifndef WITT_LATTICE_HPP
#define WITT_LATTICE_HPP

#include <optional>
#include <vector>

#include "witt/matrix.hpp"
#include "witt/number_field.hpp"

namespace witt {

/// Row vector in F^n; the group elements alpha, beta, gamma.
struct GroupVector {
  std::vector<Scalar> coords;

  GroupVector() = default;
  explicit GroupVector(std::vector<Scalar> c) : coords(std::move(c)) {}
  static GroupVector zero(const FieldPtr& f, std::size_t n) {
    return GroupVector(std::vector<Scalar>(n, Scalar::zero(f)));
  }

  std::size_t dim() const { return coords.size(); }
  bool is_zero() const;

  friend GroupVector operator+(const GroupVector& a, const GroupVector& b);
  friend GroupVector operator-(const GroupVector& a, const GroupVector& b);
  GroupVector operator-() const;
  GroupVector scaled(const Scalar& c) const;
  friend bool operator==(const GroupVector& a, const GroupVector& b) {
    return a.coords == b.coords;
  }
  friend bool operator!=(const GroupVector& a, const GroupVector& b) { return !(a == b); }
};

/// Finitely generated additive subgroup of F^n with a canonical basis:
/// the Hermite normal form of the denominator-cleared generator matrix in
/// Q-coordinates (dimension n*d), divided back by the canonical scale.
class Subgroup {
public:
  /// Canonicalizes; order and redundancy of generators do not matter.
  static Subgroup make(const FieldPtr& field, std::size_t ambient_dim,
                       std::vector<GroupVector> generators);
  /// The zero subgroup {0}.
  static Subgroup zero(const FieldPtr& field, std::size_t ambient_dim);

  const FieldPtr& field() const { return field_; }
  std::size_t ambient_dim() const { return n_; }
  const std::vector<GroupVector>& generators() const { return gens_; }
  const std::vector<GroupVector>& canonical_basis() const { return basis_; }
  const Int& denominator_scale() const { return scale_; }

  std::size_t zrank() const { return basis_.size(); }
  bool member(const GroupVector& v) const;
  /// Integer coordinates of v in the canonical basis; nullopt if not a member.
  std::optional<std::vector<Int>> coordinates(const GroupVector& v) const;
  GroupVector element_from_coordinates(const std::vector<Int>& c) const;

  /// True iff the generators contain an F-basis of F^n (n = 0: true).
  bool is_nondegenerate() const;

  /// Sublattice of elements vanishing on the given coordinate positions.
  Subgroup intersect_zero_on(const std::vector<std::size_t>& vanish_coords) const;
  /// Image under projection onto the given coordinate positions.
  Subgroup project_onto(const std::vector<std::size_t>& keep_coords) const;

  /// Same subgroup of the same ambient space (canonical bases equal).
  friend bool operator==(const Subgroup& a, const Subgroup& b);
  friend bool operator!=(const Subgroup& a, const Subgroup& b) { return !(a == b); }

  std::vector<Rational> flatten(const GroupVector& v) const;

private:
  Subgroup() = default;
  FieldPtr field_;
  std::size_t n_ = 0;
  std::vector<GroupVector> gens_;
  std::vector<GroupVector> basis_;
  Int scale_ = 1;
  Matrix<Int> hnf_;  // r x (n*d), basis_ rows times scale_ in flat coordinates
};

}  // namespace witt

#endif
