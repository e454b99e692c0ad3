#include "witt/lattice.hpp"

#include <algorithm>
#include <numeric>

namespace witt {

bool GroupVector::is_zero() const {
  return std::all_of(coords.begin(), coords.end(), [](const Scalar& s) { return s.is_zero(); });
}

GroupVector operator+(const GroupVector& a, const GroupVector& b) {
  if (a.dim() != b.dim()) throw error("group vector dimension mismatch");
  std::vector<Scalar> c(a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i) c[i] = a.coords[i] + b.coords[i];
  return GroupVector(std::move(c));
}

GroupVector operator-(const GroupVector& a, const GroupVector& b) { return a + (-b); }

GroupVector GroupVector::operator-() const {
  std::vector<Scalar> c(coords.size());
  for (std::size_t i = 0; i < coords.size(); ++i) c[i] = -coords[i];
  return GroupVector(std::move(c));
}

GroupVector GroupVector::scaled(const Scalar& c) const {
  std::vector<Scalar> r(coords.size());
  for (std::size_t i = 0; i < coords.size(); ++i) r[i] = coords[i] * c;
  return GroupVector(std::move(r));
}

Matrix<Int> hnf_rows(Matrix<Int> m) {
  std::size_t rows = m.rows, cols = m.cols;
  std::size_t r = 0;  // next pivot row
  for (std::size_t col = 0; col < cols && r < rows; ++col) {
    // Clear column below r using the euclidean algorithm on rows.
    while (true) {
      std::size_t best = rows;
      for (std::size_t i = r; i < rows; ++i) {
        if (m[i][col] == 0) continue;
        if (best == rows || abs(m[i][col]) < abs(m[best][col])) best = i;
      }
      if (best == rows) break;  // column already zero from r down
      std::swap(m.a[best], m.a[r]);
      bool clean = true;
      for (std::size_t i = r + 1; i < rows; ++i) {
        if (m[i][col] == 0) continue;
        Int q = m[i][col] / m[r][col];  // truncated division is fine here
        for (std::size_t j = 0; j < cols; ++j) m[i][j] -= q * m[r][j];
        if (m[i][col] != 0) clean = false;
      }
      if (clean) break;
    }
    if (m[r][col] == 0) continue;
    if (m[r][col] < 0)
      for (std::size_t j = 0; j < cols; ++j) m[r][j] = -m[r][j];
    // Reduce entries above the pivot into [0, pivot).
    for (std::size_t i = 0; i < r; ++i) {
      Int q;
      mpz_fdiv_q(q.get_mpz_t(), m[i][col].get_mpz_t(), m[r][col].get_mpz_t());
      if (q != 0)
        for (std::size_t j = 0; j < cols; ++j) m[i][j] -= q * m[r][j];
    }
    ++r;
  }
  Matrix<Int> out(r, cols);
  for (std::size_t i = 0; i < r; ++i) out.a[i] = m.a[i];
  return out;
}

std::optional<std::vector<Int>> hnf_coordinates(const Matrix<Int>& hnf, const std::vector<Int>& v) {
  if (v.size() != hnf.cols) throw error("vector length mismatch");
  std::vector<Int> rem = v, coeff(hnf.rows, 0);
  for (std::size_t i = 0; i < hnf.rows; ++i) {
    std::size_t piv = 0;
    while (piv < hnf.cols && hnf[i][piv] == 0) ++piv;
    if (piv == hnf.cols) continue;
    if (rem[piv] % hnf[i][piv] != 0) return std::nullopt;
    Int q = divexact(rem[piv], hnf[i][piv]);
    coeff[i] = q;
    if (q != 0)
      for (std::size_t j = 0; j < hnf.cols; ++j) rem[j] -= q * hnf[i][j];
  }
  for (const Int& x : rem)
    if (x != 0) return std::nullopt;
  return coeff;
}

std::vector<Rational> Subgroup::flatten(const GroupVector& v) const {
  if (v.dim() != n_) throw error("group vector dimension mismatch");
  int d = field_->degree();
  std::vector<Rational> out;
  out.reserve(n_ * d);
  for (const Scalar& s : v.coords) {
    if (s.field() && !s.field()->same_as(*field_)) throw error("scalar field mismatch");
    for (int j = 0; j < d; ++j) out.push_back(s.field() ? s.coeffs()[j] : Rational(0));
  }
  return out;
}

namespace {

GroupVector unflatten(const FieldPtr& f, std::size_t n, const std::vector<Rational>& flat) {
  int d = f->degree();
  std::vector<Scalar> coords;
  coords.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Rational> c(flat.begin() + i * d, flat.begin() + (i + 1) * d);
    coords.emplace_back(f, std::move(c));
  }
  return GroupVector(std::move(coords));
}

}  // namespace

Subgroup Subgroup::make(const FieldPtr& field, std::size_t ambient_dim,
                        std::vector<GroupVector> generators) {
  Subgroup g;
  g.field_ = field;
  g.n_ = ambient_dim;
  g.gens_ = generators;
  int d = field->degree();
  std::size_t cols = ambient_dim * d;

  std::vector<std::vector<Rational>> flat;
  for (const auto& v : generators) flat.push_back(g.flatten(v));

  Int scale(1);
  for (const auto& row : flat)
    for (const auto& q : row) scale = lcm(scale, q.get_den());

  Matrix<Int> m(flat.size(), cols);
  for (std::size_t i = 0; i < flat.size(); ++i)
    for (std::size_t j = 0; j < cols; ++j) {
      Rational scaled = flat[i][j] * Rational(scale);
      m[i][j] = scaled.get_num();
    }
  Matrix<Int> h = hnf_rows(std::move(m));

  // Canonical scale: smallest positive s with s * basis integral; re-derive
  // the integer HNF at that scale so equal subgroups store equal data.
  Int canon(1);
  for (std::size_t i = 0; i < h.rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) {
      Rational q(h[i][j], scale);
      q.canonicalize();
      canon = lcm(canon, q.get_den());
    }
  Matrix<Int> h2(h.rows, cols);
  for (std::size_t i = 0; i < h.rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) {
      Rational q = Rational(h[i][j], scale) * Rational(canon);
      q.canonicalize();
      h2[i][j] = q.get_num();
    }
  g.scale_ = canon;
  g.hnf_ = std::move(h2);
  for (std::size_t i = 0; i < g.hnf_.rows; ++i) {
    std::vector<Rational> row(cols);
    for (std::size_t j = 0; j < cols; ++j) row[j] = Rational(g.hnf_[i][j], canon);
    for (auto& q : row) q.canonicalize();
    g.basis_.push_back(unflatten(field, ambient_dim, row));
  }
  return g;
}

Subgroup Subgroup::zero(const FieldPtr& field, std::size_t ambient_dim) {
  return make(field, ambient_dim, {});
}

std::optional<std::vector<Int>> Subgroup::coordinates(const GroupVector& v) const {
  std::vector<Rational> flat = flatten(v);
  std::vector<Int> iv(flat.size());
  for (std::size_t j = 0; j < flat.size(); ++j) {
    Rational scaled = flat[j] * Rational(scale_);
    scaled.canonicalize();
    if (scaled.get_den() != 1) return std::nullopt;
    iv[j] = scaled.get_num();
  }
  return hnf_coordinates(hnf_, iv);
}

bool Subgroup::member(const GroupVector& v) const { return coordinates(v).has_value(); }

GroupVector Subgroup::element_from_coordinates(const std::vector<Int>& c) const {
  if (c.size() != basis_.size()) throw error("coordinate length mismatch");
  GroupVector acc = GroupVector::zero(field_, n_);
  for (std::size_t i = 0; i < c.size(); ++i)
    acc = acc + basis_[i].scaled(Scalar::of_rational(field_, Rational(c[i])));
  return acc;
}

bool Subgroup::is_nondegenerate() const {
  if (n_ == 0) return true;
  Matrix<Scalar> m(basis_.size(), n_);
  for (std::size_t i = 0; i < basis_.size(); ++i) m.a[i] = basis_[i].coords;
  return field_rank(std::move(m)) == n_;
}

Subgroup Subgroup::intersect_zero_on(const std::vector<std::size_t>& vanish_coords) const {
  int d = field_->degree();
  // Flat column positions that must vanish, moved to the front.
  std::vector<bool> vanish(n_ * d, false);
  for (std::size_t c : vanish_coords)
    for (int j = 0; j < d; ++j) vanish[c * d + j] = true;
  std::vector<std::size_t> perm;
  for (std::size_t j = 0; j < vanish.size(); ++j)
    if (vanish[j]) perm.push_back(j);
  std::size_t lead = perm.size();
  for (std::size_t j = 0; j < vanish.size(); ++j)
    if (!vanish[j]) perm.push_back(j);

  Matrix<Int> m(hnf_.rows, hnf_.cols);
  for (std::size_t i = 0; i < hnf_.rows; ++i)
    for (std::size_t j = 0; j < hnf_.cols; ++j) m[i][j] = hnf_[i][perm[j]];
  Matrix<Int> h = hnf_rows(std::move(m));

  // Rows whose pivot is beyond the leading block vanish on the target coords.
  std::vector<GroupVector> kept;
  for (std::size_t i = 0; i < h.rows; ++i) {
    std::size_t piv = 0;
    while (piv < h.cols && h[i][piv] == 0) ++piv;
    if (piv < lead) continue;
    std::vector<Rational> flat(n_ * d);
    for (std::size_t j = 0; j < h.cols; ++j) {
      flat[perm[j]] = Rational(h[i][j], scale_);
      flat[perm[j]].canonicalize();
    }
    kept.push_back(unflatten(field_, n_, flat));
  }
  return make(field_, n_, std::move(kept));
}

Subgroup Subgroup::project_onto(const std::vector<std::size_t>& keep_coords) const {
  std::vector<GroupVector> proj;
  for (const auto& b : basis_) {
    std::vector<Scalar> c;
    for (std::size_t k : keep_coords) c.push_back(b.coords[k]);
    proj.push_back(GroupVector(std::move(c)));
  }
  return make(field_, keep_coords.size(), std::move(proj));
}

bool operator==(const Subgroup& a, const Subgroup& b) {
  return a.field_->same_as(*b.field_) && a.n_ == b.n_ && a.scale_ == b.scale_ &&
         a.hnf_ == b.hnf_;
}

}  // namespace witt
