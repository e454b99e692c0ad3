#ifndef WITT_SAMPLING_HPP
#define WITT_SAMPLING_HPP

#include <random>

#include "witt/classifier.hpp"

namespace witt {

/// Deterministic generators for property suites.  All draws go through
/// pick(), so a fixed seed fixes the whole stream.
class Sampler {
public:
  explicit Sampler(unsigned long long seed) : eng_(seed) {}

  long pick(long lo, long hi);  // inclusive
  Scalar scalar(const FieldPtr& f, long height = 3, bool nonzero = false);
  GroupVector group_vector(const Subgroup& gamma, long height = 2);
  AlgebraElement element(const ContextPtr& ctx, std::size_t max_terms = 3,
                         unsigned max_degree = 2, long coord_height = 2,
                         bool nonzero = false);
  WittElement witt(const ContextPtr& ctx, std::size_t max_terms = 3, unsigned max_degree = 2,
                   long coord_height = 2);
  Matrix<Scalar> invertible_matrix(const FieldPtr& f, std::size_t n, long height = 3);
  BlockGroupElement block_element(const FieldPtr& f, std::size_t l2, std::size_t l3,
                                  long height = 3);
  Subgroup subgroup(const FieldPtr& f, std::size_t dim, std::size_t gens, long height = 2);
  /// Nondegenerate Gamma suitable for a standard spec of the given shape.
  StandardSpec standard_spec(const FieldPtr& f, std::size_t l1, std::size_t l2, std::size_t l3,
                             long height = 2);

private:
  std::mt19937_64 eng_;
};

}  // namespace witt

#endif
