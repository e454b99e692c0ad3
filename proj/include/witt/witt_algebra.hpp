#ifndef WITT_WITT_ALGEBRA_HPP
#define WITT_WITT_ALGEBRA_HPP

#include "witt/algebra.hpp"
#include "witt/polynomial.hpp"

namespace witt {

/// Element of W = A*D: one algebra coefficient per standard derivation.
class WittElement {
public:
  explicit WittElement(ContextPtr ctx);
  WittElement(ContextPtr ctx, std::vector<AlgebraElement> coeffs);

  static WittElement zero(ContextPtr ctx) { return WittElement(std::move(ctx)); }
  /// u * partial_i (1-based standard index).
  static WittElement of(ContextPtr ctx, const AlgebraElement& u, std::size_t i);
  /// A constant-coefficient derivation as an element of W.
  static WittElement of_derivation(ContextPtr ctx, const Derivation& d);

  const ContextPtr& context() const { return ctx_; }
  const std::vector<AlgebraElement>& coeffs() const { return coeffs_; }
  bool is_zero() const;

  friend WittElement operator+(const WittElement& a, const WittElement& b);
  friend WittElement operator-(const WittElement& a, const WittElement& b);
  WittElement operator-() const;
  WittElement scaled(const Scalar& c) const;
  friend bool operator==(const WittElement& a, const WittElement& b);
  friend bool operator!=(const WittElement& a, const WittElement& b) { return !(a == b); }

  /// The derivation sum_i coeffs_i * partial_i applied to an algebra element.
  AlgebraElement apply_to(const AlgebraElement& v) const;

private:
  ContextPtr ctx_;
  std::vector<AlgebraElement> coeffs_;
};

/// [w1, w2] = sum_{i,j} u_i d_i(v_j) d_j - v_j d_j(u_i) d_i.
WittElement bracket(const WittElement& w1, const WittElement& w2);

/// Basis of the root space of beta: {x^beta d_i} when beta is in Gamma,
/// empty otherwise.
std::vector<WittElement> root_space(const ContextPtr& ctx, const GroupVector& beta);

/// Finite ad-stable window: t-degree bound plus a finite grade support
/// (grades given by canonical coordinates, deduplicated and sorted).
class Truncation {
public:
  Truncation(ContextPtr ctx, unsigned max_degree, std::vector<std::vector<Int>> support);

  const ContextPtr& context() const { return ctx_; }
  unsigned max_degree() const { return max_degree_; }
  const std::vector<std::vector<Int>>& support() const { return support_; }

  /// Ordered basis {t^m x^alpha d_i}.
  struct BasisVector {
    std::vector<unsigned> m;
    std::vector<Int> alpha_coords;
    std::size_t der_index;  // 0-based
  };
  const std::vector<BasisVector>& basis() const { return basis_; }
  std::size_t dim() const { return basis_.size(); }

  WittElement realize(std::size_t basis_index) const;
  /// Coordinates of w in the basis; throws when w has terms outside.
  std::vector<Scalar> coordinates(const WittElement& w) const;
  bool contains(const WittElement& w) const;

private:
  ContextPtr ctx_;
  unsigned max_degree_;
  std::vector<std::vector<Int>> support_;
  std::vector<BasisVector> basis_;
  std::map<std::pair<std::vector<unsigned>, std::vector<Int>>, std::size_t> mono_index_;
  std::size_t index_of(const BasisVector& b) const;
};

/// Matrix of ad_d on the truncated basis.
Matrix<Scalar> ad_matrix(const Derivation& d, const Truncation& t);

/// Minimal polynomial of a square Scalar matrix (monic).
Poly<Scalar> minimal_polynomial(const Matrix<Scalar>& m, const FieldPtr& field);

struct OperatorClass {
  enum class Kind { LocallyNilpotent, Semisimple, Mixed } kind;
  DerivRow semisimple_part;  // grading component
  DerivRow nilpotent_part;   // down-grading component
  Poly<Scalar> min_poly;     // of ad on the truncation
};

/// Spectral classification of a standard/combination derivation, verified
/// against the minimal polynomial of its ad matrix on the truncation.
OperatorClass classify_operator(const Derivation& d, const Truncation& t);

}  // namespace witt

#endif
