#include "witt/witt_algebra.hpp"

#include <algorithm>

namespace witt {

WittElement::WittElement(ContextPtr ctx) : ctx_(std::move(ctx)) {
  coeffs_.assign(ctx_->num_standard(), AlgebraElement::zero(ctx_));
}

WittElement::WittElement(ContextPtr ctx, std::vector<AlgebraElement> coeffs)
    : ctx_(std::move(ctx)), coeffs_(std::move(coeffs)) {
  if (coeffs_.size() != ctx_->num_standard())
    throw error("WittElement coefficient count mismatch");
  for (const auto& c : coeffs_)
    if (!c.context()->same_as(*ctx_)) throw error("algebra context mismatch");
}

WittElement WittElement::of(ContextPtr ctx, const AlgebraElement& u, std::size_t i) {
  if (i < 1 || i > ctx->num_standard()) throw error("standard index out of range");
  WittElement w(ctx);
  w.coeffs_[i - 1] = u;
  return w;
}

WittElement WittElement::of_derivation(ContextPtr ctx, const Derivation& d) {
  WittElement w(ctx);
  if (d.kind == Derivation::Kind::Standard) {
    w.coeffs_[d.index - 1] = AlgebraElement::one(ctx);
    return w;
  }
  if (d.kind == Derivation::Kind::Combination) {
    for (std::size_t i = 0; i < d.combination.size(); ++i)
      w.coeffs_[i] = AlgebraElement::one(ctx).scaled(d.combination[i]);
    return w;
  }
  throw error("only standard/combination derivations embed into W");
}

bool WittElement::is_zero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(),
                     [](const AlgebraElement& c) { return c.is_zero(); });
}

WittElement operator+(const WittElement& a, const WittElement& b) {
  if (!a.ctx_->same_as(*b.ctx_)) throw error("context mismatch");
  WittElement r(a.ctx_);
  for (std::size_t i = 0; i < r.coeffs_.size(); ++i) r.coeffs_[i] = a.coeffs_[i] + b.coeffs_[i];
  return r;
}

WittElement operator-(const WittElement& a, const WittElement& b) { return a + (-b); }

WittElement WittElement::operator-() const {
  WittElement r(ctx_);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) r.coeffs_[i] = -coeffs_[i];
  return r;
}

WittElement WittElement::scaled(const Scalar& c) const {
  WittElement r(ctx_);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) r.coeffs_[i] = coeffs_[i].scaled(c);
  return r;
}

bool operator==(const WittElement& a, const WittElement& b) {
  return a.ctx_->same_as(*b.ctx_) && a.coeffs_ == b.coeffs_;
}

AlgebraElement WittElement::apply_to(const AlgebraElement& v) const {
  AlgebraElement acc = AlgebraElement::zero(ctx_);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i].is_zero()) continue;
    acc = acc + multiply(coeffs_[i], apply_derivation(Derivation::standard(i + 1), v));
  }
  return acc;
}

WittElement bracket(const WittElement& w1, const WittElement& w2) {
  if (!w1.context()->same_as(*w2.context())) throw error("context mismatch");
  const auto& ctx = w1.context();
  WittElement r(ctx);
  std::vector<AlgebraElement> acc = r.coeffs();
  std::size_t n = ctx->num_standard();
  for (std::size_t i = 0; i < n; ++i) {
    if (w1.coeffs()[i].is_zero() && w2.coeffs()[i].is_zero()) continue;
    for (std::size_t j = 0; j < n; ++j) {
      if (!w1.coeffs()[i].is_zero() && !w2.coeffs()[j].is_zero())
        acc[j] = acc[j] + multiply(w1.coeffs()[i],
                                   apply_derivation(Derivation::standard(i + 1), w2.coeffs()[j]));
      if (!w2.coeffs()[i].is_zero() && !w1.coeffs()[j].is_zero())
        acc[j] = acc[j] - multiply(w2.coeffs()[i],
                                   apply_derivation(Derivation::standard(i + 1), w1.coeffs()[j]));
    }
  }
  return WittElement(ctx, std::move(acc));
}

std::vector<WittElement> root_space(const ContextPtr& ctx, const GroupVector& beta) {
  auto coords = ctx->gamma().coordinates(beta);
  if (!coords) return {};
  std::vector<WittElement> out;
  AlgebraElement xb = AlgebraElement::term_by_coords(
      ctx, Scalar::one(ctx->field()), std::vector<unsigned>(ctx->num_t_vars(), 0), *coords);
  for (std::size_t i = 1; i <= ctx->num_standard(); ++i)
    out.push_back(WittElement::of(ctx, xb, i));
  return out;
}

Truncation::Truncation(ContextPtr ctx, unsigned max_degree,
                       std::vector<std::vector<Int>> support)
    : ctx_(std::move(ctx)), max_degree_(max_degree), support_(std::move(support)) {
  std::sort(support_.begin(), support_.end());
  support_.erase(std::unique(support_.begin(), support_.end()), support_.end());
  for (const auto& s : support_)
    if (s.size() != ctx_->gamma().zrank()) throw error("support coordinate length mismatch");
  // enumerate exponent vectors of total degree <= max_degree, deg-lex order
  std::vector<std::vector<unsigned>> exps;
  std::vector<unsigned> cur(ctx_->num_t_vars(), 0);
  std::function<void(std::size_t, unsigned)> rec = [&](std::size_t pos, unsigned left) {
    if (pos == cur.size()) {
      exps.push_back(cur);
      return;
    }
    for (unsigned e = 0; e <= left; ++e) {
      cur[pos] = e;
      rec(pos + 1, left - e);
    }
    cur[pos] = 0;
  };
  if (ctx_->num_t_vars() == 0) {
    exps.push_back({});
  } else {
    rec(0, max_degree_);
  }
  std::sort(exps.begin(), exps.end(), [](const auto& a, const auto& b) {
    unsigned da = 0, db = 0;
    for (unsigned x : a) da += x;
    for (unsigned x : b) db += x;
    if (da != db) return da < db;
    return a < b;
  });
  for (const auto& e : exps)
    for (const auto& s : support_) {
      mono_index_[{e, s}] = basis_.size() / std::max<std::size_t>(ctx_->num_standard(), 1);
      for (std::size_t i = 0; i < ctx_->num_standard(); ++i)
        basis_.push_back(BasisVector{e, s, i});
    }
}

WittElement Truncation::realize(std::size_t basis_index) const {
  const BasisVector& b = basis_.at(basis_index);
  AlgebraElement u = AlgebraElement::term_by_coords(ctx_, Scalar::one(ctx_->field()), b.m,
                                                    b.alpha_coords);
  return WittElement::of(ctx_, u, b.der_index + 1);
}

std::vector<Scalar> Truncation::coordinates(const WittElement& w) const {
  std::vector<Scalar> out(basis_.size(), Scalar::zero(ctx_->field()));
  std::size_t nd = ctx_->num_standard();
  for (std::size_t i = 0; i < nd; ++i) {
    for (const auto& [mono, c] : w.coeffs()[i].terms()) {
      auto it = mono_index_.find({mono.m, mono.alpha_coords});
      if (it == mono_index_.end()) throw error("element lies outside the truncation");
      out[it->second * nd + i] = c;
    }
  }
  return out;
}

bool Truncation::contains(const WittElement& w) const {
  for (std::size_t i = 0; i < ctx_->num_standard(); ++i)
    for (const auto& [mono, c] : w.coeffs()[i].terms())
      if (!mono_index_.count({mono.m, mono.alpha_coords})) return false;
  return true;
}

Matrix<Scalar> ad_matrix(const Derivation& d, const Truncation& t) {
  const auto& ctx = t.context();
  std::size_t n = t.dim();
  Matrix<Scalar> m(n, n, Scalar::zero(ctx->field()));
  for (std::size_t j = 0; j < n; ++j) {
    // ad of a constant-coefficient derivation acts coefficient-wise
    WittElement w = t.realize(j);
    std::vector<AlgebraElement> imgs;
    for (const auto& u : w.coeffs()) imgs.push_back(apply_derivation(d, u));
    WittElement img(ctx, std::move(imgs));
    std::vector<Scalar> col;
    try {
      col = t.coordinates(img);
    } catch (const error&) {
      throw error("truncation is not stable under the requested derivation");
    }
    for (std::size_t i = 0; i < n; ++i) m[i][j] = col[i];
  }
  return m;
}

Poly<Scalar> minimal_polynomial(const Matrix<Scalar>& m, const FieldPtr& field) {
  if (m.rows != m.cols) throw error("minimal polynomial of non-square matrix");
  std::size_t n = m.rows, nn = n * n;
  Scalar zero = Scalar::zero(field), one = Scalar::one(field);

  auto flatten = [&](const Matrix<Scalar>& x) {
    std::vector<Scalar> v(nn);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) v[i * n + j] = x[i][j];
    return v;
  };

  // Echelon rows of the flattened powers, with bookkeeping to express each
  // reduced row as a combination of the original powers.
  std::vector<std::vector<Scalar>> ech;       // reduced rows
  std::vector<std::size_t> pivot;             // pivot position of each row
  std::vector<std::vector<Scalar>> comb;      // combination over powers

  Matrix<Scalar> pw = Matrix<Scalar>::identity(n, one);
  for (std::size_t k = 0;; ++k) {
    std::vector<Scalar> v = flatten(pw);
    std::vector<Scalar> c(k + 1, zero);
    c[k] = one;
    // reduce v against echelon rows
    for (std::size_t r = 0; r < ech.size(); ++r) {
      if (v[pivot[r]].is_zero()) continue;
      Scalar f = v[pivot[r]];
      for (std::size_t j = 0; j < nn; ++j) v[j] = v[j] - f * ech[r][j];
      for (std::size_t j = 0; j < comb[r].size() && j < c.size(); ++j)
        c[j] = c[j] - f * comb[r][j];
    }
    std::size_t p = 0;
    while (p < nn && v[p].is_zero()) ++p;
    if (p == nn) {
      // pw is a combination of lower powers: x^k - sum c_j x^j
      std::vector<Scalar> poly(k + 1, zero);
      poly[k] = one;
      for (std::size_t j = 0; j < k; ++j) poly[j] = -c[j];
      return Poly<Scalar>(std::move(poly));
    }
    Scalar inv = v[p].inverse();
    for (auto& x : v) x = x * inv;
    for (auto& x : c) x = x * inv;
    ech.push_back(std::move(v));
    pivot.push_back(p);
    comb.push_back(std::move(c));
    pw = pw * m;
    if (k > nn) throw error("internal: minimal polynomial search overflow");
  }
}

OperatorClass classify_operator(const Derivation& d, const Truncation& t) {
  const auto& ctx = t.context();
  if (d.kind != Derivation::Kind::Standard && d.kind != Derivation::Kind::Combination)
    throw error("classify_operator expects a standard/combination derivation");
  DerivRow row = d.resolve(*ctx);
  const FieldPtr& f = ctx->field();
  Scalar zero = Scalar::zero(f);

  bool has_down = std::any_of(row.down.begin(), row.down.end(),
                              [](const Scalar& s) { return !s.is_zero(); });
  bool pairing_vanishes = true;
  for (const auto& g : ctx->gamma().canonical_basis()) {
    Scalar p = zero;
    for (std::size_t j = 0; j < row.star.size(); ++j) p = p + row.star[j] * g.coords[j];
    if (!p.is_zero()) {
      pairing_vanishes = false;
      break;
    }
  }

  OperatorClass out;
  out.semisimple_part = DerivRow{std::vector<Scalar>(row.down.size(), zero), row.star};
  out.nilpotent_part = DerivRow{row.down, std::vector<Scalar>(row.star.size(), zero)};
  out.min_poly = minimal_polynomial(ad_matrix(d, t), f);

  auto is_pure_power = [&](const Poly<Scalar>& p) {
    for (int i = 0; i < p.degree(); ++i)
      if (!p.at(i).is_zero()) return false;
    return true;
  };
  auto squarefree = [&](const Poly<Scalar>& p) {
    if (p.degree() <= 1) return true;
    return Poly<Scalar>::gcd(p, p.derivative()).degree() == 0;
  };

  if (!has_down) {
    out.kind = OperatorClass::Kind::Semisimple;
    if (!squarefree(out.min_poly))
      throw error("internal: semisimple classification contradicts the minimal polynomial");
  } else if (pairing_vanishes) {
    out.kind = OperatorClass::Kind::LocallyNilpotent;
    if (!is_pure_power(out.min_poly))
      throw error("internal: nilpotent classification contradicts the minimal polynomial");
  } else {
    out.kind = OperatorClass::Kind::Mixed;
  }
  return out;
}

}  // namespace witt
