#ifndef WITT_BLOCK_GROUP_HPP
#define WITT_BLOCK_GROUP_HPP

#include <optional>
#include <string>

#include "witt/lattice.hpp"

namespace witt {

/// Element of the block group: the assembled (l2+l3) x (l2+l3) matrix
///
///     [ A  0 ]
///     [ B  C ]
///
/// with A, C invertible, acting on row vectors by alpha |-> alpha * g^{-1}.
class BlockGroupElement {
public:
  BlockGroupElement(FieldPtr field, std::size_t l2, std::size_t l3,
                    Matrix<Scalar> blockA, Matrix<Scalar> blockB, Matrix<Scalar> blockC);

  static BlockGroupElement identity(const FieldPtr& f, std::size_t l2, std::size_t l3);
  /// From an assembled matrix; throws unless it has the block pattern and
  /// invertible diagonal blocks.
  static BlockGroupElement from_assembled(const FieldPtr& f, std::size_t l2, std::size_t l3,
                                          const Matrix<Scalar>& m);

  const FieldPtr& field() const { return field_; }
  std::size_t l2() const { return l2_; }
  std::size_t l3() const { return l3_; }
  std::size_t dim() const { return l2_ + l3_; }
  const Matrix<Scalar>& blockA() const { return A_; }
  const Matrix<Scalar>& blockB() const { return B_; }
  const Matrix<Scalar>& blockC() const { return C_; }

  Matrix<Scalar> assembled() const;
  BlockGroupElement inverse() const;
  friend BlockGroupElement operator*(const BlockGroupElement& a, const BlockGroupElement& b);
  friend bool operator==(const BlockGroupElement& a, const BlockGroupElement& b);

  /// g(alpha) = alpha * g^{-1}.
  GroupVector act(const GroupVector& alpha) const;

private:
  FieldPtr field_;
  std::size_t l2_ = 0, l3_ = 0;
  Matrix<Scalar> A_, B_, C_;
};

/// g(Gamma) = {alpha g^{-1}}, canonicalized.
Subgroup block_act(const BlockGroupElement& g, const Subgroup& gamma);

/// The G-invariant separating vector: free-abelian ranks of Gamma, of its
/// intersection with F^{l2} x 0, and of its projection to the last l3
/// coordinates.
struct OrbitInvariants {
  std::size_t zrank, slice_zrank, projection_zrank;
  friend bool operator==(const OrbitInvariants&, const OrbitInvariants&) = default;
};
OrbitInvariants orbit_invariants(const Subgroup& gamma, std::size_t l2, std::size_t l3);

struct OrbitDecision {
  enum class Kind { Equivalent, Inequivalent, Unknown } kind;
  std::optional<BlockGroupElement> witness;  // Equivalent
  std::string invariant;                     // Inequivalent: which invariant separates
};

/// Bounded orbit search in G_{l2,l3}.  budget caps the number of candidate
/// change-of-basis matrices examined before answering Unknown.
OrbitDecision orbit_decide(const Subgroup& gamma, const Subgroup& gamma_prime,
                           std::size_t l2, std::size_t l3, long budget = 200000);

}  // namespace witt

#endif
