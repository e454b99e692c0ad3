#ifndef WITT_CLASSIFIER_HPP
#define WITT_CLASSIFIER_HPP

#include <optional>
#include <string>
#include <utility>

#include "witt/witt_algebra.hpp"

namespace witt {

/// Record of the raw -> standard normalization: renamed variables, regrouped
/// grading coordinates, transported cocycle coordinates.  Enough to carry any
/// raw element (and any raw derivation) into the standard picture.
struct StandardizationRecord {
  ContextPtr raw_ctx;
  ContextPtr std_ctx;
  std::vector<std::size_t> chosen;    // 0-based coordinate positions kept for grading
  Matrix<Scalar> grade_transform;     // k x (l2+l3): new grade = alpha * grade_transform
  Matrix<Scalar> t_new_in_old;        // (l1+l2) x k1: row b = new variable b in old t's
  Matrix<Scalar> t_old_in_new;        // k1 x (l1+l2): old t_i in the new variables
  Matrix<Scalar> der_images;          // k x l: raw standard i over the new standard basis
  Matrix<Int> coord_transform;        // zrank x zrank: new canonical coords = old * this

  AlgebraElement map_element(const AlgebraElement& raw) const;
  Derivation map_derivation(std::size_t raw_index) const;  // 1-based
};

/// Normalization of a raw pair into standard shape: dependent grading
/// functionals are eliminated, pure down-grading directions are split off and
/// the polynomial variables renamed accordingly.
std::pair<StandardSpec, StandardizationRecord> standard_form(const RawSpec& raw);

/// Coboundary g with f(a, b) = g(a) g(b) g(a+b)^{-1} on the whole group
/// (arguments are canonical coordinates).
struct Trivialization {
  Cocycle cocycle;
  FieldPtr field;

  Scalar value(const std::vector<Int>& coords) const;
  std::vector<Scalar> generator_values(const Subgroup& gamma) const;
};
Trivialization trivialize_cocycle(const Cocycle& f, const Subgroup& gamma);

/// Deterministic isomorphism invariants of a standard spec.  Equal keys are
/// necessary for isomorphism, never claimed sufficient: the canonical orbit
/// representative is only filled in when the orbit has a unique member
/// (Gamma = {0}); otherwise the key is marked invariants-only.
struct StructureKey {
  std::size_t l1 = 0, l2 = 0, l3 = 0;
  std::vector<Rational> min_poly;
  OrbitInvariants invariants{0, 0, 0};
  bool canonical_complete = false;

  std::string str() const;
  friend bool operator==(const StructureKey&, const StructureKey&) = default;
};
StructureKey structure_key(const StandardSpec& spec);

/// Explicit isomorphism between two standard-form algebras of equal shape,
/// induced by a block-group element carrying Gamma onto Gamma'.  Cocycles play
/// no role here (both sides are taken in trivialized form).
struct IsoWitness {
  StandardSpec src_spec, dst_spec;  // cocycle-free
  ContextPtr src, dst;
  BlockGroupElement g;
  Matrix<Scalar> var_transform;  // l2 x l2: new variable i = sum_b var_transform[b][i] * t'_{l1+b}
  Matrix<Scalar> der_transform;  // (l2+l3)^2: image of grading standard j over those of dst

  AlgebraElement map_element(const AlgebraElement& u) const;
  Derivation image_derivation(std::size_t src_index) const;  // 1-based standard index
  WittElement map(const WittElement& w) const;
};
IsoWitness build_sigma(const BlockGroupElement& g, const StandardSpec& s,
                       const StandardSpec& s_prime);

struct IsoDecision {
  enum class Kind { Equivalent, Inequivalent, Unknown } kind;
  std::optional<IsoWitness> witness;  // Equivalent
  std::string reason;                 // Inequivalent: which invariant separates
};
IsoDecision decide_isomorphic(const StandardSpec& s, const StandardSpec& s_prime,
                              long budget = 200000);

struct HomReport {
  bool passed = false;
  bool untested = false;
  std::size_t samples = 0;
  std::optional<std::pair<WittElement, WittElement>> counterexample;
};
/// Exact check of sigma([u,v]) = [sigma(u), sigma(v)] on seeded random pairs.
HomReport verify_homomorphism(const IsoWitness& w, std::size_t sample_count,
                              unsigned long long seed);

}  // namespace witt

#endif
