#include "witt/classifier.hpp"

#include <algorithm>
#include <random>
#include <sstream>

namespace witt {

namespace {

// Incremental echelon over F with expressions of reduced vectors in terms of
// the inserted originals.
struct TrackedEchelon {
  FieldPtr field;
  std::vector<std::vector<Scalar>> rows;   // pivot-normalized
  std::vector<std::size_t> pivots;
  std::vector<std::vector<Scalar>> expr;   // row as combination of originals
  std::size_t inserted = 0;

  explicit TrackedEchelon(FieldPtr f) : field(std::move(f)) {}

  static bool all_zero(const std::vector<Scalar>& v) {
    return std::all_of(v.begin(), v.end(), [](const Scalar& s) { return s.is_zero(); });
  }

  // Returns the combination over originals when v is already in the span;
  // otherwise inserts v as a new original and returns nullopt.
  std::optional<std::vector<Scalar>> reduce_or_insert(std::vector<Scalar> v) {
    std::vector<Scalar> combo(inserted, Scalar::zero(field));
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (v[pivots[r]].is_zero()) continue;
      Scalar f = v[pivots[r]];
      for (std::size_t j = 0; j < v.size(); ++j) v[j] = v[j] - f * rows[r][j];
      for (std::size_t j = 0; j < expr[r].size(); ++j) combo[j] = combo[j] + f * expr[r][j];
    }
    if (all_zero(v)) return combo;
    std::size_t p = 0;
    while (v[p].is_zero()) ++p;
    Scalar inv = v[p].inverse();
    std::vector<Scalar> e(inserted + 1, Scalar::zero(field));
    e[inserted] = inv;
    for (std::size_t j = 0; j < inserted; ++j) e[j] = e[j] - inv * combo[j];
    for (auto& x : v) x = x * inv;
    rows.push_back(std::move(v));
    pivots.push_back(p);
    for (auto& row : expr) row.resize(inserted + 1, Scalar::zero(field));
    expr.push_back(std::move(e));
    ++inserted;
    return std::nullopt;
  }
};

Matrix<Scalar> transpose(const Matrix<Scalar>& m) {
  Matrix<Scalar> t(m.cols, m.rows);
  for (std::size_t i = 0; i < m.rows; ++i)
    for (std::size_t j = 0; j < m.cols; ++j) t[j][i] = m[i][j];
  return t;
}

Matrix<Int> integer_inverse(const Matrix<Int>& u) {
  std::size_t n = u.rows;
  Matrix<Rational> q(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) q[i][j] = Rational(u[i][j]);
  auto inv = field_inverse(q, Rational(1));
  if (!inv) throw error("coordinate transform is singular");
  Matrix<Int> z(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Rational e = (*inv)[i][j];
      if (e.get_den() != 1) throw error("coordinate transform is not unimodular");
      z[i][j] = e.get_num();
    }
  return z;
}

}  // namespace

std::pair<StandardSpec, StandardizationRecord> standard_form(const RawSpec& raw) {
  ContextPtr rctx = raw.context();
  const FieldPtr& F = raw.field;
  std::size_t k = raw.k(), k1 = raw.k1, r = raw.gamma.zrank();
  Scalar zero = Scalar::zero(F), one = Scalar::one(F);

  // maximal independent set of coordinate functionals on Gamma, leftmost first
  std::vector<std::size_t> J;
  std::vector<std::vector<Scalar>> dependent(k);  // i not in J: column i over columns J
  {
    TrackedEchelon cols(F);
    for (std::size_t i = 0; i < k; ++i) {
      std::vector<Scalar> col(r, zero);
      for (std::size_t b = 0; b < r; ++b) col[b] = raw.gamma.canonical_basis()[b].coords[i];
      if (r == 0 || TrackedEchelon::all_zero(col)) {
        dependent[i].assign(J.size(), zero);
        continue;
      }
      auto combo = cols.reduce_or_insert(std::move(col));
      if (combo) {
        combo->resize(J.size(), zero);
        dependent[i] = std::move(*combo);
      } else {
        J.push_back(i);
      }
    }
  }
  std::size_t q = J.size();

  // down vectors of the raw derivations
  std::vector<std::vector<Scalar>> down(k);
  for (std::size_t i = 0; i < k; ++i) down[i] = rctx->standard(i).down;

  // pure down-grading part of D: combinations whose star functional vanishes
  TrackedEchelon space(F);
  for (std::size_t i = 0; i < k; ++i) {
    if (std::find(J.begin(), J.end(), i) != J.end()) continue;
    std::vector<Scalar> v = down[i];
    for (std::size_t a = 0; a < dependent[i].size(); ++a)
      for (std::size_t b = 0; b < k1; ++b)
        v[b] = v[b] - dependent[i][a] * down[J[a]][b];
    if (k1 == 0 || TrackedEchelon::all_zero(v)) continue;
    space.reduce_or_insert(std::move(v));
  }
  std::vector<std::vector<Scalar>> v0 = space.rows;  // normalized basis of the pure part
  std::size_t l1 = v0.size();

  // re-seed the tracked echelon so expressions are over {v0 rows, mixed downs}
  TrackedEchelon tracked(F);
  for (const auto& vb : v0) tracked.reduce_or_insert(vb);

  std::vector<std::size_t> mixed;                    // indices into J
  std::vector<std::vector<Scalar>> pure_combo;       // per pure index: combo over originals
  std::vector<std::size_t> pure;                     // indices into J
  for (std::size_t a = 0; a < q; ++a) {
    std::vector<Scalar> d = down[J[a]];
    if (k1 == 0 || TrackedEchelon::all_zero(d)) {
      pure.push_back(a);
      pure_combo.push_back(std::vector<Scalar>(tracked.inserted, zero));
      continue;
    }
    auto combo = tracked.reduce_or_insert(std::move(d));
    if (combo) {
      pure.push_back(a);
      pure_combo.push_back(std::move(*combo));
    } else {
      mixed.push_back(a);
    }
  }
  std::size_t l2 = mixed.size(), l3 = pure.size();
  if (l1 + l2 != k1)
    throw error("raw derivations do not act on all polynomial variables");

  // grading regrouping: mixed coordinates first, then the purified functionals
  Matrix<Scalar> G(k, l2 + l3, zero);
  for (std::size_t a = 0; a < l2; ++a) G[J[mixed[a]]][a] = one;
  for (std::size_t p = 0; p < l3; ++p) {
    G[J[pure[p]]][l2 + p] = one;
    const auto& combo = pure_combo[p];
    for (std::size_t a = 0; a < l2; ++a) {
      std::size_t pos = l1 + a;  // original index of mixed down a in tracked
      if (pos < combo.size() && !combo[pos].is_zero())
        G[J[mixed[a]]][l2 + p] = -combo[pos];
    }
  }

  auto apply_G = [&](const GroupVector& alpha) {
    GroupVector out = GroupVector::zero(F, l2 + l3);
    for (std::size_t c = 0; c < l2 + l3; ++c)
      for (std::size_t i = 0; i < k; ++i)
        out.coords[c] = out.coords[c] + alpha.coords[i] * G[i][c];
    return out;
  };
  std::vector<GroupVector> new_gens;
  for (const auto& b : raw.gamma.canonical_basis()) new_gens.push_back(apply_G(b));
  Subgroup gamma_new = Subgroup::make(F, l2 + l3, new_gens);

  // canonical coordinates transform and cocycle transport
  Matrix<Int> U(r, r);
  for (std::size_t i = 0; i < r; ++i) {
    auto c = gamma_new.coordinates(apply_G(raw.gamma.canonical_basis()[i]));
    if (!c) throw error("internal: grading image left the regrouped lattice");
    U[i] = *c;
  }
  Cocycle moved;
  if (r > 0 && !raw.cocycle.trivial()) {
    Matrix<Int> Uinv = integer_inverse(U);
    Matrix<Int> UinvT(r, r);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < r; ++j) UinvT[i][j] = Uinv[j][i];
    for (const auto& bp : raw.cocycle.base_points)
      moved.base_points.push_back({bp.lambda, Uinv * bp.S * UinvT});
  } else {
    moved = raw.cocycle;
  }

  StandardSpec spec{l1, l2, l3, F, gamma_new, moved};
  ContextPtr sctx = spec.context();

  // variable rename: dual basis to {v0 rows, mixed down vectors}
  Matrix<Scalar> B(k1, k1, zero);
  for (std::size_t b = 0; b < l1; ++b) B[b] = v0[b];
  for (std::size_t a = 0; a < l2; ++a) B[l1 + a] = down[J[mixed[a]]];
  Matrix<Scalar> t_new_in_old(0, 0), t_old_in_new(0, 0);
  if (k1 > 0) {
    auto Binv = field_inverse(B, one);
    if (!Binv) throw error("internal: down vectors fail to form a basis");
    t_new_in_old = transpose(*Binv);
    t_old_in_new = transpose(B);
  } else {
    t_new_in_old = Matrix<Scalar>(0, 0);
    t_old_in_new = Matrix<Scalar>(0, 0);
  }

  // raw derivations over the standard basis, solved in the old representation
  std::size_t l = l1 + l2 + l3;
  auto old_rep = [&](const std::vector<Scalar>& starJ, const std::vector<Scalar>& dn) {
    std::vector<Scalar> row(q + k1, zero);
    for (std::size_t a = 0; a < q; ++a) row[a] = starJ[a];
    for (std::size_t b = 0; b < k1; ++b) row[q + b] = dn[b];
    return row;
  };
  Matrix<Scalar> basis_rows(l, q + k1, zero);
  for (std::size_t b = 0; b < l1; ++b)
    basis_rows[b] = old_rep(std::vector<Scalar>(q, zero), v0[b]);
  for (std::size_t a = 0; a < l2; ++a) {
    std::vector<Scalar> st(q, zero);
    st[mixed[a]] = one;
    basis_rows[l1 + a] = old_rep(st, down[J[mixed[a]]]);
  }
  for (std::size_t p = 0; p < l3; ++p) {
    std::vector<Scalar> st(q, zero);
    st[pure[p]] = one;
    const auto& combo = pure_combo[p];
    for (std::size_t a = 0; a < l2; ++a)
      if (l1 + a < combo.size()) st[mixed[a]] = st[mixed[a]] - combo[l1 + a];
    basis_rows[l1 + l2 + p] = old_rep(st, std::vector<Scalar>(k1, zero));
  }
  Matrix<Scalar> der_images(k, l, zero);
  for (std::size_t i = 0; i < k; ++i) {
    std::vector<Scalar> st(q, zero);
    auto at = std::find(J.begin(), J.end(), i);
    if (at != J.end())
      st[static_cast<std::size_t>(at - J.begin())] = one;
    else
      for (std::size_t a = 0; a < dependent[i].size(); ++a) st[a] = dependent[i][a];
    auto sol = solve_row_system(basis_rows, old_rep(st, down[i]));
    if (!sol) throw error("internal: raw derivation outside the standard span");
    der_images[i] = *sol;
  }

  StandardizationRecord rec{rctx, sctx, J, G, t_new_in_old, t_old_in_new, der_images, U};
  return {std::move(spec), std::move(rec)};
}

AlgebraElement StandardizationRecord::map_element(const AlgebraElement& raw) const {
  const FieldPtr& F = std_ctx->field();
  std::size_t nt_new = std_ctx->num_t_vars();
  AlgebraElement out = AlgebraElement::zero(std_ctx);
  for (const auto& [mono, c] : raw.terms()) {
    GroupVector img = GroupVector::zero(F, grade_transform.cols);
    for (std::size_t col = 0; col < grade_transform.cols; ++col)
      for (std::size_t i = 0; i < grade_transform.rows; ++i)
        img.coords[col] = img.coords[col] + mono.alpha.coords[i] * grade_transform[i][col];
    AlgebraElement acc = AlgebraElement::term(std_ctx, c, std::vector<unsigned>(nt_new, 0), img);
    for (std::size_t i = 0; i < mono.m.size(); ++i) {
      if (mono.m[i] == 0) continue;
      AlgebraElement form = AlgebraElement::zero(std_ctx);
      for (std::size_t b = 0; b < nt_new; ++b) {
        if (t_old_in_new[i][b].is_zero()) continue;
        std::vector<unsigned> e(nt_new, 0);
        e[b] = 1;
        form = form + AlgebraElement::term_by_coords(
                          std_ctx, t_old_in_new[i][b], e,
                          std::vector<Int>(std_ctx->gamma().zrank(), 0));
      }
      for (unsigned rep = 0; rep < mono.m[i]; ++rep) acc = multiply(acc, form);
    }
    out = out + acc;
  }
  return out;
}

Derivation StandardizationRecord::map_derivation(std::size_t raw_index) const {
  if (raw_index == 0 || raw_index > der_images.rows)
    throw error("derivation index out of range");
  return Derivation::combination_of(der_images[raw_index - 1]);
}

Scalar Trivialization::value(const std::vector<Int>& coords) const {
  Scalar g = Scalar::one(field);
  for (const auto& bp : cocycle.base_points) {
    Int quad = 0, lin = 0;
    for (std::size_t i = 0; i < coords.size(); ++i) {
      lin += bp.S[i][i] * coords[i];
      for (std::size_t j = 0; j < coords.size(); ++j) quad += coords[i] * bp.S[i][j] * coords[j];
    }
    // (quad - lin) is always even: quad = lin (mod 2) termwise on the diagonal
    Int e = -divexact(quad - lin, Int(2));
    g = g * bp.lambda.pow(e);
  }
  return g;
}

std::vector<Scalar> Trivialization::generator_values(const Subgroup& gamma) const {
  std::vector<Scalar> vals;
  for (std::size_t i = 0; i < gamma.zrank(); ++i) {
    std::vector<Int> e(gamma.zrank(), 0);
    e[i] = 1;
    vals.push_back(value(e));
  }
  return vals;
}

Trivialization trivialize_cocycle(const Cocycle& f, const Subgroup& gamma) {
  f.validate(gamma.field(), gamma.zrank());
  return Trivialization{f, gamma.field()};
}

std::string StructureKey::str() const {
  std::ostringstream os;
  os << "triple=(" << l1 << "," << l2 << "," << l3 << ") field=[";
  for (std::size_t i = 0; i < min_poly.size(); ++i)
    os << (i ? "," : "") << rational_str(min_poly[i]);
  os << "] zrank=" << invariants.zrank << " slice=" << invariants.slice_zrank
     << " proj=" << invariants.projection_zrank
     << " rep=" << (canonical_complete ? "{0}" : "invariants-only");
  return os.str();
}

StructureKey structure_key(const StandardSpec& spec) {
  spec.validate();
  return StructureKey{spec.l1, spec.l2, spec.l3, spec.field->min_poly(),
                      orbit_invariants(spec.gamma, spec.l2, spec.l3),
                      spec.gamma.zrank() == 0};
}

IsoWitness build_sigma(const BlockGroupElement& g, const StandardSpec& s,
                       const StandardSpec& s_prime) {
  if (s.l1 != s_prime.l1 || s.l2 != s_prime.l2 || s.l3 != s_prime.l3)
    throw error("shape triples differ");
  if (!s.field->same_as(*s_prime.field)) throw error("fields differ");
  if (g.l2() != s.l2 || g.l3() != s.l3) throw error("block sizes do not match the shape");
  if (!(block_act(g, s.gamma) == s_prime.gamma))
    throw error("g does not carry the grading group onto the target");

  StandardSpec src_spec = s, dst_spec = s_prime;
  src_spec.cocycle = Cocycle{};
  dst_spec.cocycle = Cocycle{};
  ContextPtr src = src_spec.context(), dst = dst_spec.context();

  Scalar one = Scalar::one(s.field);
  Matrix<Scalar> var(0, 0);
  if (s.l2 > 0) {
    auto Ainv = field_inverse(g.blockA(), one);
    if (!Ainv) throw error("internal: invalid block element");
    var = transpose(*Ainv);
  }
  Matrix<Scalar> der = transpose(g.assembled());
  return IsoWitness{std::move(src_spec), std::move(dst_spec), std::move(src), std::move(dst),
                    g, std::move(var), std::move(der)};
}

AlgebraElement IsoWitness::map_element(const AlgebraElement& u) const {
  std::size_t l1 = src_spec.l1, l2 = src_spec.l2;
  std::size_t nt = dst->num_t_vars();
  AlgebraElement out = AlgebraElement::zero(dst);
  for (const auto& [mono, c] : u.terms()) {
    GroupVector img = g.act(mono.alpha);
    std::vector<unsigned> e(nt, 0);
    for (std::size_t i = 0; i < l1; ++i) e[i] = mono.m[i];
    AlgebraElement acc = AlgebraElement::term(dst, c, e, img);
    for (std::size_t i = 0; i < l2; ++i) {
      if (mono.m[l1 + i] == 0) continue;
      AlgebraElement form = AlgebraElement::zero(dst);
      for (std::size_t b = 0; b < l2; ++b) {
        if (var_transform[b][i].is_zero()) continue;
        std::vector<unsigned> eb(nt, 0);
        eb[l1 + b] = 1;
        form = form + AlgebraElement::term_by_coords(
                          dst, var_transform[b][i], eb,
                          std::vector<Int>(dst->gamma().zrank(), 0));
      }
      for (unsigned rep = 0; rep < mono.m[l1 + i]; ++rep) acc = multiply(acc, form);
    }
    out = out + acc;
  }
  return out;
}

Derivation IsoWitness::image_derivation(std::size_t src_index) const {
  std::size_t l1 = src_spec.l1, l = src_spec.l1 + src_spec.l2 + src_spec.l3;
  if (src_index == 0 || src_index > l) throw error("derivation index out of range");
  std::vector<Scalar> c(l, Scalar::zero(dst->field()));
  if (src_index <= l1) {
    c[src_index - 1] = Scalar::one(dst->field());
  } else {
    std::size_t j = src_index - 1 - l1;
    for (std::size_t k = 0; k < src_spec.l2 + src_spec.l3; ++k) c[l1 + k] = der_transform[j][k];
  }
  return Derivation::combination_of(std::move(c));
}

WittElement IsoWitness::map(const WittElement& w) const {
  if (!w.context()->same_as(*src)) throw error("element is not over the source algebra");
  WittElement out = WittElement::zero(dst);
  for (std::size_t j = 0; j < w.coeffs().size(); ++j) {
    if (w.coeffs()[j].is_zero()) continue;
    AlgebraElement img = map_element(w.coeffs()[j]);
    Derivation d = image_derivation(j + 1);
    for (std::size_t k = 0; k < d.combination.size(); ++k) {
      if (d.combination[k].is_zero()) continue;
      out = out + WittElement::of(dst, img.scaled(d.combination[k]), k + 1);
    }
  }
  return out;
}

IsoDecision decide_isomorphic(const StandardSpec& s, const StandardSpec& s_prime, long budget) {
  s.validate();
  s_prime.validate();
  if (s.l1 != s_prime.l1 || s.l2 != s_prime.l2 || s.l3 != s_prime.l3)
    return {IsoDecision::Kind::Inequivalent, std::nullopt, "triple"};
  if (!s.field->same_as(*s_prime.field))
    return {IsoDecision::Kind::Inequivalent, std::nullopt, "field"};
  OrbitInvariants a = orbit_invariants(s.gamma, s.l2, s.l3);
  OrbitInvariants b = orbit_invariants(s_prime.gamma, s_prime.l2, s_prime.l3);
  if (a.zrank != b.zrank) return {IsoDecision::Kind::Inequivalent, std::nullopt, "zrank"};
  if (a.slice_zrank != b.slice_zrank)
    return {IsoDecision::Kind::Inequivalent, std::nullopt, "slice_zrank"};
  if (a.projection_zrank != b.projection_zrank)
    return {IsoDecision::Kind::Inequivalent, std::nullopt, "projection_zrank"};

  OrbitDecision od = orbit_decide(s.gamma, s_prime.gamma, s.l2, s.l3, budget);
  switch (od.kind) {
    case OrbitDecision::Kind::Inequivalent:
      return {IsoDecision::Kind::Inequivalent, std::nullopt, od.invariant};
    case OrbitDecision::Kind::Unknown:
      return {IsoDecision::Kind::Unknown, std::nullopt, ""};
    case OrbitDecision::Kind::Equivalent:
      break;
  }
  return {IsoDecision::Kind::Equivalent, build_sigma(*od.witness, s, s_prime), ""};
}

namespace {

WittElement random_witt_element(const ContextPtr& ctx, std::mt19937_64& rng) {
  std::size_t l = ctx->num_standard(), nt = ctx->num_t_vars(), r = ctx->gamma().zrank();
  int d = ctx->field()->degree();
  WittElement w = WittElement::zero(ctx);
  std::size_t terms = 1 + rng() % 3;
  for (std::size_t t = 0; t < terms; ++t) {
    std::vector<unsigned> m(nt);
    for (auto& e : m) e = static_cast<unsigned>(rng() % 3);
    std::vector<Int> coords(r);
    for (auto& c : coords) c = static_cast<long>(rng() % 5) - 2;
    std::vector<Rational> cf(static_cast<std::size_t>(d));
    cf[0] = Rational(static_cast<long>(rng() % 5) - 2);
    if (d > 1) cf[1] = Rational(static_cast<long>(rng() % 3) - 1);
    Scalar c(ctx->field(), cf);
    if (c.is_zero()) c = Scalar::one(ctx->field());
    std::size_t j = rng() % l;
    w = w + WittElement::of(ctx, AlgebraElement::term_by_coords(ctx, c, m, coords), j + 1);
  }
  return w;
}

}  // namespace

HomReport verify_homomorphism(const IsoWitness& w, std::size_t sample_count,
                              unsigned long long seed) {
  if (sample_count == 0) return {true, true, 0, std::nullopt};
  std::mt19937_64 rng(seed);
  for (std::size_t s = 0; s < sample_count; ++s) {
    WittElement u = random_witt_element(w.src, rng);
    WittElement v = random_witt_element(w.src, rng);
    WittElement lhs = w.map(bracket(u, v));
    WittElement rhs = bracket(w.map(u), w.map(v));
    if (lhs != rhs) return {false, false, s + 1, std::make_pair(u, v)};
  }
  return {true, false, sample_count, std::nullopt};
}

}  // namespace witt
