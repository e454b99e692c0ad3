#include "witt/sampling.hpp"

namespace witt {

long Sampler::pick(long lo, long hi) {
  // modulo draw: identical streams on every platform, unlike the
  // distribution adapters
  unsigned long long span = static_cast<unsigned long long>(hi - lo + 1);
  return lo + static_cast<long>(eng_() % span);
}

Scalar Sampler::scalar(const FieldPtr& f, long height, bool nonzero) {
  int d = f->degree();
  for (;;) {
    std::vector<Rational> c(static_cast<std::size_t>(d));
    c[0] = Rational(pick(-height, height));
    if (d > 1 && pick(0, 1)) c[1] = Rational(pick(-height, height));
    Scalar s(f, std::move(c));
    if (!nonzero || !s.is_zero()) return s;
  }
}

GroupVector Sampler::group_vector(const Subgroup& gamma, long height) {
  std::vector<Int> coords(gamma.zrank());
  for (auto& c : coords) c = pick(-height, height);
  return gamma.element_from_coordinates(coords);
}

AlgebraElement Sampler::element(const ContextPtr& ctx, std::size_t max_terms,
                                unsigned max_degree, long coord_height, bool nonzero) {
  for (;;) {
    AlgebraElement u = AlgebraElement::zero(ctx);
    std::size_t terms = static_cast<std::size_t>(pick(1, static_cast<long>(max_terms)));
    for (std::size_t t = 0; t < terms; ++t) {
      std::vector<unsigned> m(ctx->num_t_vars());
      unsigned budget = max_degree;
      for (auto& e : m) {
        e = static_cast<unsigned>(pick(0, static_cast<long>(budget)));
        budget -= e;
      }
      std::vector<Int> coords(ctx->gamma().zrank());
      for (auto& c : coords) c = pick(-coord_height, coord_height);
      u = u + AlgebraElement::term_by_coords(ctx, scalar(ctx->field(), 3, true), m, coords);
    }
    if (!nonzero || !u.is_zero()) return u;
  }
}

WittElement Sampler::witt(const ContextPtr& ctx, std::size_t max_terms, unsigned max_degree,
                          long coord_height) {
  WittElement w = WittElement::zero(ctx);
  std::size_t terms = static_cast<std::size_t>(pick(1, static_cast<long>(max_terms)));
  for (std::size_t t = 0; t < terms; ++t) {
    std::size_t j = static_cast<std::size_t>(pick(1, static_cast<long>(ctx->num_standard())));
    w = w + WittElement::of(ctx, element(ctx, 1, max_degree, coord_height, true), j);
  }
  return w;
}

Matrix<Scalar> Sampler::invertible_matrix(const FieldPtr& f, std::size_t n, long height) {
  if (n == 0) return Matrix<Scalar>(0, 0);
  for (;;) {
    Matrix<Scalar> m(n, n, Scalar::zero(f));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) m[i][j] = scalar(f, height);
    if (field_inverse(m, Scalar::one(f))) return m;
  }
}

BlockGroupElement Sampler::block_element(const FieldPtr& f, std::size_t l2, std::size_t l3,
                                         long height) {
  Matrix<Scalar> A = invertible_matrix(f, l2, height);
  Matrix<Scalar> C = invertible_matrix(f, l3, height);
  Matrix<Scalar> B(l3, l2, Scalar::zero(f));
  for (std::size_t i = 0; i < l3; ++i)
    for (std::size_t j = 0; j < l2; ++j) B[i][j] = scalar(f, height);
  return BlockGroupElement(f, l2, l3, std::move(A), std::move(B), std::move(C));
}

Subgroup Sampler::subgroup(const FieldPtr& f, std::size_t dim, std::size_t gens, long height) {
  std::vector<GroupVector> g;
  for (std::size_t i = 0; i < gens; ++i) {
    std::vector<Scalar> coords(dim);
    for (auto& c : coords) c = scalar(f, height);
    g.push_back(GroupVector(std::move(coords)));
  }
  return Subgroup::make(f, dim, g);
}

StandardSpec Sampler::standard_spec(const FieldPtr& f, std::size_t l1, std::size_t l2,
                                    std::size_t l3, long height) {
  std::size_t n = l2 + l3;
  for (;;) {
    // identity-based generators guarantee nondegeneracy; extras add texture
    std::vector<GroupVector> gens;
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<Scalar> c(n, Scalar::zero(f));
      c[i] = scalar(f, height, true);
      gens.push_back(GroupVector(std::move(c)));
    }
    if (n > 0 && pick(0, 1)) {
      std::vector<Scalar> c(n);
      for (auto& x : c) x = scalar(f, height);
      gens.push_back(GroupVector(std::move(c)));
    }
    StandardSpec s{l1, l2, l3, f, Subgroup::make(f, n, gens), Cocycle{}};
    try {
      s.validate();
      return s;
    } catch (const error&) {
      continue;
    }
  }
}

}  // namespace witt
