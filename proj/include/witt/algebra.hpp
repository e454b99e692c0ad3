#ifndef WITT_ALGEBRA_HPP
#define WITT_ALGEBRA_HPP

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <variant>
#include <vector>

#include "witt/block_group.hpp"
#include "witt/lattice.hpp"

namespace witt {

/// Symmetric 2-cocycle from the bilinear-exponential family:
/// f(alpha, beta) = prod_k lambda_k ^ (a S_k b^T), with a, b the integer
/// coordinates of alpha, beta in Gamma's canonical basis.  Empty: trivial.
struct Cocycle {
  struct BasePoint {
    Scalar lambda;    // nonzero
    Matrix<Int> S;    // symmetric, zrank x zrank
  };
  std::vector<BasePoint> base_points;

  bool trivial() const { return base_points.empty(); }
  Scalar eval(const FieldPtr& f, const std::vector<Int>& a, const std::vector<Int>& b) const;
  void validate(const FieldPtr& f, std::size_t zrank) const;
};

/// Checks the symmetry, normalization and cocycle identities of (a candidate)
/// f on coordinate vectors s*e_i with |s| <= sample_depth.  Returns the first
/// violating triple if any.
struct CocycleViolation {
  std::vector<Int> a, b, c;
  std::string identity;
};
std::optional<CocycleViolation> validate_cocycle(
    const std::function<Scalar(const std::vector<Int>&, const std::vector<Int>&)>& f,
    const FieldPtr& field, std::size_t zrank, long sample_depth);

class AlgebraContext;
using ContextPtr = std::shared_ptr<const AlgebraContext>;

/// A derivation expressed over the context: coefficients of the down-grading
/// operators d/dt_i and of the grading operators (star_j).
struct DerivRow {
  std::vector<Scalar> down;  // size = num t-variables
  std::vector<Scalar> star;  // size = grading dimension
};

/// Shared arithmetic context: the algebra A with nt polynomial variables,
/// group Gamma in dimension ng, an optional cocycle twist and the standard
/// derivation basis (rows defining the partial_i of the construction).
class AlgebraContext : public std::enable_shared_from_this<AlgebraContext> {
public:
  static ContextPtr make(FieldPtr field, std::size_t num_t_vars, Subgroup gamma,
                         Cocycle cocycle, std::vector<DerivRow> standards);

  const FieldPtr& field() const { return field_; }
  std::size_t num_t_vars() const { return nt_; }
  std::size_t grading_dim() const { return gamma_.ambient_dim(); }
  const Subgroup& gamma() const { return gamma_; }
  const Cocycle& cocycle() const { return cocycle_; }
  std::size_t num_standard() const { return standards_.size(); }
  const DerivRow& standard(std::size_t i) const { return standards_[i]; }

  Scalar twist(const std::vector<Int>& a, const std::vector<Int>& b) const {
    return cocycle_.eval(field_, a, b);
  }

  bool same_as(const AlgebraContext& o) const;

private:
  AlgebraContext() = default;
  FieldPtr field_;
  std::size_t nt_ = 0;
  Subgroup gamma_{Subgroup::zero(NumberField::rationals(), 0)};
  Cocycle cocycle_;
  std::vector<DerivRow> standards_;
};

/// Standard-form construction data (l1, l2, l3; Gamma).
struct StandardSpec {
  std::size_t l1 = 0, l2 = 0, l3 = 0;
  FieldPtr field;
  Subgroup gamma{Subgroup::zero(NumberField::rationals(), 0)};
  Cocycle cocycle;

  std::size_t ell() const { return l1 + l2 + l3; }
  void validate() const;
  ContextPtr context() const;
};

/// Raw construction data (k1, k2; Gamma, mixing) from the general family.
struct RawSpec {
  std::size_t k1 = 0, k2 = 0;
  FieldPtr field;
  Subgroup gamma{Subgroup::zero(NumberField::rationals(), 0)};
  Cocycle cocycle;
  Matrix<Scalar> mixing;  // k2 x k1: coefficients of the mixed down parts

  std::size_t k() const { return k1 + k2; }
  void validate() const;
  ContextPtr context() const;
};

/// Basis monomial t^m x^alpha; alpha is kept both as a group vector and as
/// integer coordinates in Gamma's canonical basis (the sort key).
struct Monomial {
  std::vector<unsigned> m;
  std::vector<Int> alpha_coords;
  GroupVector alpha;

  unsigned total_degree() const {
    unsigned s = 0;
    for (unsigned e : m) s += e;
    return s;
  }
};

/// Degree-lex on m, then lex on the Gamma-coordinates of alpha.
struct MonomialOrder {
  bool operator()(const Monomial& a, const Monomial& b) const;
};

inline bool operator==(const Monomial& a, const Monomial& b) {
  return a.m == b.m && a.alpha_coords == b.alpha_coords;
}

/// Finite sparse sum of monomials with nonzero scalar coefficients.
class AlgebraElement {
public:
  using TermMap = std::map<Monomial, Scalar, MonomialOrder>;

  static AlgebraElement zero(ContextPtr ctx);
  static AlgebraElement one(ContextPtr ctx);
  /// c * t^m * x^alpha (alpha must lie in Gamma).
  static AlgebraElement term(ContextPtr ctx, Scalar c, std::vector<unsigned> m,
                             const GroupVector& alpha);
  static AlgebraElement term_by_coords(ContextPtr ctx, Scalar c, std::vector<unsigned> m,
                                       const std::vector<Int>& alpha_coords);

  const ContextPtr& context() const { return ctx_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  friend AlgebraElement operator+(const AlgebraElement& a, const AlgebraElement& b);
  friend AlgebraElement operator-(const AlgebraElement& a, const AlgebraElement& b);
  AlgebraElement operator-() const;
  AlgebraElement scaled(const Scalar& c) const;
  friend bool operator==(const AlgebraElement& a, const AlgebraElement& b);
  friend bool operator!=(const AlgebraElement& a, const AlgebraElement& b) { return !(a == b); }

  void add_term(const Monomial& mono, const Scalar& c);

  /// Max total t-degree across terms (zero element: 0).
  unsigned max_degree() const;

private:
  explicit AlgebraElement(ContextPtr ctx) : ctx_(std::move(ctx)) {}
  ContextPtr ctx_;
  TermMap terms_;
};

AlgebraElement multiply(const AlgebraElement& u, const AlgebraElement& v);

struct Derivation {
  enum class Kind { DownGrading, Grading, Standard, Combination };
  Kind kind = Kind::Standard;
  std::size_t index = 0;             // 1-based, per spec ranges
  std::vector<Scalar> combination;   // over the standard basis

  static Derivation down_grading(std::size_t i) { return {Kind::DownGrading, i, {}}; }
  static Derivation grading(std::size_t j) { return {Kind::Grading, j, {}}; }
  static Derivation standard(std::size_t i) { return {Kind::Standard, i, {}}; }
  static Derivation combination_of(std::vector<Scalar> coeffs) {
    return {Kind::Combination, 0, std::move(coeffs)};
  }

  DerivRow resolve(const AlgebraContext& ctx) const;
};

AlgebraElement apply_derivation(const Derivation& d, const AlgebraElement& u);

/// Inverse of a root vector c*x^alpha; throws NotRootVector otherwise.
class NotRootVector : public error {
public:
  NotRootVector() : error("element is not a root vector") {}
};
AlgebraElement invert(const AlgebraElement& u);

/// Partition of the terms by Gamma-grade (key: canonical coordinates).
std::map<std::vector<Int>, AlgebraElement> grade_decompose(const AlgebraElement& u);

/// Smallest n with (d - alpha(d))^{n+1}(u) = 0 for all standard d; equals the
/// total t-degree of the (grade-homogeneous) input.
unsigned filtration_level(const AlgebraElement& u);

/// alpha(d): the scalar pairing of a group vector with a derivation.
Scalar pairing(const GroupVector& alpha, const Derivation& d, const AlgebraContext& ctx);

}  // namespace witt

#endif
