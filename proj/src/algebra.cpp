#include "witt/algebra.hpp"

#include <algorithm>

namespace witt {

Scalar Cocycle::eval(const FieldPtr& f, const std::vector<Int>& a,
                     const std::vector<Int>& b) const {
  Scalar acc = Scalar::one(f);
  for (const auto& bp : base_points) {
    Int e(0);
    for (std::size_t i = 0; i < bp.S.rows; ++i)
      for (std::size_t j = 0; j < bp.S.cols; ++j) e += a[i] * bp.S[i][j] * b[j];
    acc = acc * bp.lambda.pow(e);
  }
  return acc;
}

void Cocycle::validate(const FieldPtr& f, std::size_t zrank) const {
  for (const auto& bp : base_points) {
    if (bp.lambda.is_zero()) throw error("cocycle base point lambda must be nonzero");
    if (bp.lambda.field() && !bp.lambda.field()->same_as(*f)) throw error("cocycle field mismatch");
    if (bp.S.rows != zrank || bp.S.cols != zrank)
      throw error("cocycle exponent matrix must be zrank x zrank");
    for (std::size_t i = 0; i < zrank; ++i)
      for (std::size_t j = 0; j < i; ++j)
        if (bp.S[i][j] != bp.S[j][i]) throw error("cocycle exponent matrix must be symmetric");
  }
}

std::optional<CocycleViolation> validate_cocycle(
    const std::function<Scalar(const std::vector<Int>&, const std::vector<Int>&)>& f,
    const FieldPtr& field, std::size_t zrank, long sample_depth) {
  Scalar one = Scalar::one(field);
  std::vector<std::vector<Int>> samples;
  samples.push_back(std::vector<Int>(zrank, 0));
  for (std::size_t i = 0; i < zrank; ++i)
    for (long s = -sample_depth; s <= sample_depth; ++s) {
      if (s == 0) continue;
      std::vector<Int> v(zrank, 0);
      v[i] = s;
      samples.push_back(std::move(v));
    }
  std::vector<Int> zero(zrank, 0);
  auto add = [](const std::vector<Int>& a, const std::vector<Int>& b) {
    std::vector<Int> r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
  };
  for (const auto& a : samples) {
    if (f(a, zero) != one) return CocycleViolation{a, zero, {}, "f(alpha,0)=1"};
    for (const auto& b : samples) {
      if (f(a, b) != f(b, a)) return CocycleViolation{a, b, {}, "symmetry"};
      for (const auto& c : samples) {
        if (f(a, b) * f(add(a, b), c) != f(a, add(b, c)) * f(b, c))
          return CocycleViolation{a, b, c, "cocycle law"};
      }
    }
  }
  return std::nullopt;
}

ContextPtr AlgebraContext::make(FieldPtr field, std::size_t num_t_vars, Subgroup gamma,
                                Cocycle cocycle, std::vector<DerivRow> standards) {
  cocycle.validate(field, gamma.zrank());
  auto ctx = std::shared_ptr<AlgebraContext>(new AlgebraContext());
  ctx->field_ = std::move(field);
  ctx->nt_ = num_t_vars;
  ctx->gamma_ = std::move(gamma);
  ctx->cocycle_ = std::move(cocycle);
  ctx->standards_ = std::move(standards);
  for (const auto& row : ctx->standards_) {
    if (row.down.size() != ctx->nt_ || row.star.size() != ctx->gamma_.ambient_dim())
      throw error("standard derivation row shape mismatch");
  }
  return ctx;
}

bool AlgebraContext::same_as(const AlgebraContext& o) const {
  if (this == &o) return true;
  if (!field_->same_as(*o.field_) || nt_ != o.nt_ || !(gamma_ == o.gamma_)) return false;
  if (standards_.size() != o.standards_.size()) return false;
  for (std::size_t i = 0; i < standards_.size(); ++i)
    if (standards_[i].down != o.standards_[i].down || standards_[i].star != o.standards_[i].star)
      return false;
  if (cocycle_.base_points.size() != o.cocycle_.base_points.size()) return false;
  for (std::size_t i = 0; i < cocycle_.base_points.size(); ++i)
    if (cocycle_.base_points[i].lambda != o.cocycle_.base_points[i].lambda ||
        !(cocycle_.base_points[i].S == o.cocycle_.base_points[i].S))
      return false;
  return true;
}

void StandardSpec::validate() const {
  if (ell() == 0) throw error("l1+l2+l3 must be positive");
  if (gamma.ambient_dim() != l2 + l3) throw error("Gamma must live in dimension l2+l3");
  if (!gamma.field()->same_as(*field)) throw error("Gamma field mismatch");
  if (!gamma.is_nondegenerate()) throw error("Gamma must be nondegenerate");
  if (l2 + l3 == 0 && gamma.zrank() != 0) throw error("Gamma must be {0} when l2+l3=0");
  if (l2 + l3 > 0 && gamma.zrank() == 0) throw error("Gamma must be nonzero when l2+l3>0");
  cocycle.validate(field, gamma.zrank());
}

ContextPtr StandardSpec::context() const {
  validate();
  std::size_t nt = l1 + l2, ng = l2 + l3;
  Scalar z = Scalar::zero(field), one = Scalar::one(field);
  std::vector<DerivRow> rows;
  for (std::size_t i = 0; i < ell(); ++i) {
    DerivRow r{std::vector<Scalar>(nt, z), std::vector<Scalar>(ng, z)};
    if (i < l1) {
      r.down[i] = one;
    } else if (i < l1 + l2) {
      r.down[i] = one;
      r.star[i - l1] = one;
    } else {
      r.star[i - l1] = one;
    }
    rows.push_back(std::move(r));
  }
  return AlgebraContext::make(field, nt, gamma, cocycle, std::move(rows));
}

void RawSpec::validate() const {
  if (k() == 0) throw error("k1+k2 must be positive");
  if (gamma.ambient_dim() != k()) throw error("Gamma must live in dimension k1+k2");
  if (!gamma.field()->same_as(*field)) throw error("Gamma field mismatch");
  if (mixing.rows != k2 || mixing.cols != k1) throw error("mixing matrix must be k2 x k1");
  cocycle.validate(field, gamma.zrank());
}

ContextPtr RawSpec::context() const {
  validate();
  std::size_t nt = k1, ng = k();
  Scalar z = Scalar::zero(field), one = Scalar::one(field);
  std::vector<DerivRow> rows;
  for (std::size_t i = 0; i < ng; ++i) {
    DerivRow r{std::vector<Scalar>(nt, z), std::vector<Scalar>(ng, z)};
    r.star[i] = one;
    if (i < k1) {
      r.down[i] = one;
    } else {
      for (std::size_t j = 0; j < k1; ++j) r.down[j] = mixing[i - k1][j];
    }
    rows.push_back(std::move(r));
  }
  return AlgebraContext::make(field, nt, gamma, cocycle, std::move(rows));
}

bool MonomialOrder::operator()(const Monomial& a, const Monomial& b) const {
  unsigned da = a.total_degree(), db = b.total_degree();
  if (da != db) return da < db;
  if (a.m != b.m) return a.m < b.m;
  return a.alpha_coords < b.alpha_coords;
}

AlgebraElement AlgebraElement::zero(ContextPtr ctx) { return AlgebraElement(std::move(ctx)); }

AlgebraElement AlgebraElement::one(ContextPtr ctx) {
  return term_by_coords(ctx, Scalar::one(ctx->field()), std::vector<unsigned>(ctx->num_t_vars(), 0),
                        std::vector<Int>(ctx->gamma().zrank(), 0));
}

AlgebraElement AlgebraElement::term(ContextPtr ctx, Scalar c, std::vector<unsigned> m,
                                    const GroupVector& alpha) {
  auto coords = ctx->gamma().coordinates(alpha);
  if (!coords) throw error("monomial exponent alpha is not in Gamma");
  AlgebraElement e(ctx);
  if (m.size() != ctx->num_t_vars()) throw error("monomial t-exponent length mismatch");
  if (!c.is_zero()) e.terms_[Monomial{std::move(m), *coords, alpha}] = c;
  return e;
}

AlgebraElement AlgebraElement::term_by_coords(ContextPtr ctx, Scalar c, std::vector<unsigned> m,
                                              const std::vector<Int>& alpha_coords) {
  GroupVector alpha = ctx->gamma().element_from_coordinates(alpha_coords);
  AlgebraElement e(ctx);
  if (m.size() != ctx->num_t_vars()) throw error("monomial t-exponent length mismatch");
  if (!c.is_zero()) e.terms_[Monomial{std::move(m), alpha_coords, alpha}] = c;
  return e;
}

void AlgebraElement::add_term(const Monomial& mono, const Scalar& c) {
  if (c.is_zero()) return;
  auto it = terms_.find(mono);
  if (it == terms_.end()) {
    terms_.emplace(mono, c);
  } else {
    it->second = it->second + c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

unsigned AlgebraElement::max_degree() const {
  unsigned d = 0;
  for (const auto& [mono, c] : terms_) d = std::max(d, mono.total_degree());
  return d;
}

namespace {

void check_same_context(const AlgebraElement& a, const AlgebraElement& b) {
  if (!a.context()->same_as(*b.context())) throw error("algebra context mismatch");
}

}  // namespace

AlgebraElement operator+(const AlgebraElement& a, const AlgebraElement& b) {
  check_same_context(a, b);
  AlgebraElement r = a;
  for (const auto& [mono, c] : b.terms()) r.add_term(mono, c);
  return r;
}

AlgebraElement operator-(const AlgebraElement& a, const AlgebraElement& b) { return a + (-b); }

AlgebraElement AlgebraElement::operator-() const {
  AlgebraElement r(ctx_);
  for (const auto& [mono, c] : terms_) r.terms_[mono] = -c;
  return r;
}

AlgebraElement AlgebraElement::scaled(const Scalar& c) const {
  AlgebraElement r(ctx_);
  if (c.is_zero()) return r;
  for (const auto& [mono, coef] : terms_) r.terms_[mono] = coef * c;
  return r;
}

bool operator==(const AlgebraElement& a, const AlgebraElement& b) {
  if (!a.context()->same_as(*b.context())) return false;
  if (a.terms_.size() != b.terms_.size()) return false;
  auto it = a.terms_.begin(), jt = b.terms_.begin();
  for (; it != a.terms_.end(); ++it, ++jt)
    if (!(it->first == jt->first) || it->second != jt->second) return false;
  return true;
}

AlgebraElement multiply(const AlgebraElement& u, const AlgebraElement& v) {
  check_same_context(u, v);
  const auto& ctx = u.context();
  AlgebraElement r = AlgebraElement::zero(ctx);
  for (const auto& [m1, c1] : u.terms()) {
    for (const auto& [m2, c2] : v.terms()) {
      Monomial mono;
      mono.m.resize(m1.m.size());
      for (std::size_t i = 0; i < m1.m.size(); ++i) mono.m[i] = m1.m[i] + m2.m[i];
      mono.alpha_coords.resize(m1.alpha_coords.size());
      for (std::size_t i = 0; i < m1.alpha_coords.size(); ++i)
        mono.alpha_coords[i] = m1.alpha_coords[i] + m2.alpha_coords[i];
      mono.alpha = m1.alpha + m2.alpha;
      Scalar c = c1 * c2;
      if (!ctx->cocycle().trivial())
        c = c * ctx->twist(m1.alpha_coords, m2.alpha_coords);
      r.add_term(mono, c);
    }
  }
  return r;
}

DerivRow Derivation::resolve(const AlgebraContext& ctx) const {
  const FieldPtr& f = ctx.field();
  Scalar z = Scalar::zero(f), one = Scalar::one(f);
  DerivRow r{std::vector<Scalar>(ctx.num_t_vars(), z),
             std::vector<Scalar>(ctx.grading_dim(), z)};
  switch (kind) {
    case Kind::DownGrading:
      if (index < 1 || index > ctx.num_t_vars()) throw error("down-grading index out of range");
      r.down[index - 1] = one;
      return r;
    case Kind::Grading:
      if (index < 1 || index > ctx.grading_dim()) throw error("grading index out of range");
      r.star[index - 1] = one;
      return r;
    case Kind::Standard:
      if (index < 1 || index > ctx.num_standard()) throw error("standard index out of range");
      return ctx.standard(index - 1);
    case Kind::Combination: {
      if (combination.size() != ctx.num_standard())
        throw error("combination length must equal the standard basis size");
      for (std::size_t i = 0; i < combination.size(); ++i) {
        const DerivRow& row = ctx.standard(i);
        for (std::size_t j = 0; j < r.down.size(); ++j)
          r.down[j] = r.down[j] + combination[i] * row.down[j];
        for (std::size_t j = 0; j < r.star.size(); ++j)
          r.star[j] = r.star[j] + combination[i] * row.star[j];
      }
      return r;
    }
  }
  throw error("unreachable");
}

AlgebraElement apply_derivation(const Derivation& d, const AlgebraElement& u) {
  const auto& ctx = u.context();
  DerivRow row = d.resolve(*ctx);
  AlgebraElement r = AlgebraElement::zero(ctx);
  for (const auto& [mono, c] : u.terms()) {
    // grading part: sum_j star_j * alpha_j acts as a scalar on the term
    Scalar factor = Scalar::zero(ctx->field());
    for (std::size_t j = 0; j < row.star.size(); ++j) {
      if (row.star[j].is_zero()) continue;
      factor = factor + row.star[j] * mono.alpha.coords[j];
    }
    if (!factor.is_zero()) r.add_term(mono, c * factor);
    // down-grading part: polynomial partial derivatives
    for (std::size_t i = 0; i < row.down.size(); ++i) {
      if (row.down[i].is_zero() || mono.m[i] == 0) continue;
      Monomial lower = mono;
      lower.m[i] -= 1;
      r.add_term(lower, c * row.down[i] * Scalar::of_int(ctx->field(), mono.m[i]));
    }
  }
  return r;
}

AlgebraElement invert(const AlgebraElement& u) {
  const auto& ctx = u.context();
  if (u.terms().size() != 1) throw NotRootVector();
  const auto& [mono, c] = *u.terms().begin();
  if (mono.total_degree() != 0) throw NotRootVector();
  std::vector<Int> neg(mono.alpha_coords.size());
  for (std::size_t i = 0; i < neg.size(); ++i) neg[i] = -mono.alpha_coords[i];
  Scalar coeff = c.inverse() * ctx->twist(mono.alpha_coords, neg).inverse();
  return AlgebraElement::term_by_coords(ctx, coeff, mono.m, neg);
}

std::map<std::vector<Int>, AlgebraElement> grade_decompose(const AlgebraElement& u) {
  std::map<std::vector<Int>, AlgebraElement> out;
  for (const auto& [mono, c] : u.terms()) {
    auto it = out.find(mono.alpha_coords);
    if (it == out.end())
      it = out.emplace(mono.alpha_coords, AlgebraElement::zero(u.context())).first;
    it->second.add_term(mono, c);
  }
  return out;
}

unsigned filtration_level(const AlgebraElement& u) {
  if (u.is_zero()) return 0;
  const std::vector<Int>* grade = nullptr;
  unsigned level = 0;
  for (const auto& [mono, c] : u.terms()) {
    if (!grade) grade = &mono.alpha_coords;
    else if (*grade != mono.alpha_coords) throw error("filtration_level needs a homogeneous input");
    level = std::max(level, mono.total_degree());
  }
  return level;
}

Scalar pairing(const GroupVector& alpha, const Derivation& d, const AlgebraContext& ctx) {
  DerivRow row = d.resolve(ctx);
  Scalar acc = Scalar::zero(ctx.field());
  if (alpha.dim() != row.star.size()) throw error("pairing dimension mismatch");
  for (std::size_t j = 0; j < row.star.size(); ++j)
    acc = acc + row.star[j] * alpha.coords[j];
  return acc;
}

}  // namespace witt
