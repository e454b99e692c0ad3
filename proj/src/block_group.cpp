#include "witt/block_group.hpp"

#include <algorithm>

namespace witt {

BlockGroupElement::BlockGroupElement(FieldPtr field, std::size_t l2, std::size_t l3,
                                     Matrix<Scalar> blockA, Matrix<Scalar> blockB,
                                     Matrix<Scalar> blockC)
    : field_(std::move(field)), l2_(l2), l3_(l3),
      A_(std::move(blockA)), B_(std::move(blockB)), C_(std::move(blockC)) {
  if (A_.rows != l2_ || A_.cols != l2_ || B_.rows != l3_ || B_.cols != l2_ ||
      C_.rows != l3_ || C_.cols != l3_)
    throw error("block shape mismatch");
  Scalar one = Scalar::one(field_);
  if (l2_ && !field_inverse(A_, one)) throw error("block A is singular");
  if (l3_ && !field_inverse(C_, one)) throw error("block C is singular");
}

BlockGroupElement BlockGroupElement::identity(const FieldPtr& f, std::size_t l2, std::size_t l3) {
  Scalar one = Scalar::one(f), zero = Scalar::zero(f);
  return BlockGroupElement(f, l2, l3, Matrix<Scalar>::identity(l2, one),
                           Matrix<Scalar>(l3, l2, zero), Matrix<Scalar>::identity(l3, one));
}

BlockGroupElement BlockGroupElement::from_assembled(const FieldPtr& f, std::size_t l2,
                                                    std::size_t l3, const Matrix<Scalar>& m) {
  std::size_t n = l2 + l3;
  if (m.rows != n || m.cols != n) throw error("assembled matrix shape mismatch");
  Scalar zero = Scalar::zero(f);
  Matrix<Scalar> A(l2, l2, zero), B(l3, l2, zero), C(l3, l3, zero);
  for (std::size_t i = 0; i < l2; ++i)
    for (std::size_t j = l2; j < n; ++j)
      if (!m[i][j].is_zero()) throw error("upper-right block is not zero");
  for (std::size_t i = 0; i < l2; ++i)
    for (std::size_t j = 0; j < l2; ++j) A[i][j] = m[i][j];
  for (std::size_t i = 0; i < l3; ++i)
    for (std::size_t j = 0; j < l2; ++j) B[i][j] = m[l2 + i][j];
  for (std::size_t i = 0; i < l3; ++i)
    for (std::size_t j = 0; j < l3; ++j) C[i][j] = m[l2 + i][l2 + j];
  return BlockGroupElement(f, l2, l3, std::move(A), std::move(B), std::move(C));
}

Matrix<Scalar> BlockGroupElement::assembled() const {
  std::size_t n = dim();
  Matrix<Scalar> m(n, n, Scalar::zero(field_));
  for (std::size_t i = 0; i < l2_; ++i)
    for (std::size_t j = 0; j < l2_; ++j) m[i][j] = A_[i][j];
  for (std::size_t i = 0; i < l3_; ++i) {
    for (std::size_t j = 0; j < l2_; ++j) m[l2_ + i][j] = B_[i][j];
    for (std::size_t j = 0; j < l3_; ++j) m[l2_ + i][l2_ + j] = C_[i][j];
  }
  return m;
}

BlockGroupElement BlockGroupElement::inverse() const {
  auto inv = field_inverse(assembled(), Scalar::one(field_));
  if (!inv) throw error("block group element not invertible");
  return from_assembled(field_, l2_, l3_, *inv);
}

BlockGroupElement operator*(const BlockGroupElement& a, const BlockGroupElement& b) {
  if (a.l2_ != b.l2_ || a.l3_ != b.l3_) throw error("block group shape mismatch");
  return BlockGroupElement::from_assembled(a.field_, a.l2_, a.l3_, a.assembled() * b.assembled());
}

bool operator==(const BlockGroupElement& a, const BlockGroupElement& b) {
  return a.l2_ == b.l2_ && a.l3_ == b.l3_ && a.A_ == b.A_ && a.B_ == b.B_ && a.C_ == b.C_;
}

GroupVector BlockGroupElement::act(const GroupVector& alpha) const {
  if (alpha.dim() != dim()) throw error("group vector dimension mismatch");
  auto inv = field_inverse(assembled(), Scalar::one(field_));
  if (!inv) throw error("block group element not invertible");
  std::vector<Scalar> out(dim(), Scalar::zero(field_));
  for (std::size_t j = 0; j < dim(); ++j)
    for (std::size_t i = 0; i < dim(); ++i) out[j] = out[j] + alpha.coords[i] * (*inv)[i][j];
  return GroupVector(std::move(out));
}

Subgroup block_act(const BlockGroupElement& g, const Subgroup& gamma) {
  if (gamma.ambient_dim() != g.dim()) throw error("subgroup dimension mismatch");
  auto inv = field_inverse(g.assembled(), Scalar::one(g.field()));
  if (!inv) throw error("block group element not invertible");
  std::vector<GroupVector> images;
  for (const auto& b : gamma.canonical_basis()) {
    std::vector<Scalar> out(g.dim(), Scalar::zero(g.field()));
    for (std::size_t j = 0; j < g.dim(); ++j)
      for (std::size_t i = 0; i < g.dim(); ++i)
        out[j] = out[j] + b.coords[i] * (*inv)[i][j];
    images.push_back(GroupVector(std::move(out)));
  }
  return Subgroup::make(gamma.field(), gamma.ambient_dim(), std::move(images));
}

OrbitInvariants orbit_invariants(const Subgroup& gamma, std::size_t l2, std::size_t l3) {
  std::vector<std::size_t> last;
  for (std::size_t i = 0; i < l3; ++i) last.push_back(l2 + i);
  return OrbitInvariants{gamma.zrank(),
                         gamma.intersect_zero_on(last).zrank(),
                         gamma.project_onto(last).zrank()};
}

namespace {

// Rows of gamma's canonical basis forming an F-basis of F^n, leftmost-greedy.
std::vector<std::size_t> greedy_pivot_rows(const Subgroup& gamma) {
  std::size_t n = gamma.ambient_dim();
  std::vector<std::size_t> picked;
  Matrix<Scalar> acc(0, n);
  for (std::size_t i = 0; i < gamma.canonical_basis().size() && picked.size() < n; ++i) {
    Matrix<Scalar> trial(acc.rows + 1, n);
    trial.a = acc.a;
    trial.a.push_back(gamma.canonical_basis()[i].coords);
    if (field_rank(trial) == trial.rows) {
      acc = trial;
      picked.push_back(i);
    }
  }
  return picked;
}

// Candidate right-multiplication matrix M with rows of P mapped to rows of W:
// M = P^{-1} W.
std::optional<Matrix<Scalar>> solve_map(const Matrix<Scalar>& p_inv, const Matrix<Scalar>& w) {
  return p_inv * w;
}

bool has_block_pattern(const Matrix<Scalar>& m, std::size_t l2) {
  for (std::size_t i = 0; i < l2; ++i)
    for (std::size_t j = l2; j < m.cols; ++j)
      if (!m[i][j].is_zero()) return false;
  return true;
}

GroupVector apply_right(const GroupVector& v, const Matrix<Scalar>& m, const FieldPtr& f) {
  std::vector<Scalar> out(m.cols, Scalar::zero(f));
  for (std::size_t j = 0; j < m.cols; ++j)
    for (std::size_t i = 0; i < m.rows; ++i) out[j] = out[j] + v.coords[i] * m[i][j];
  return GroupVector(std::move(out));
}

// Exact two-sided check that Gamma * M = Gamma'.
bool maps_lattice_onto(const Subgroup& gamma, const Subgroup& gp, const Matrix<Scalar>& m,
                       const Matrix<Scalar>& m_inv, const FieldPtr& f) {
  if (gamma.zrank() != gp.zrank()) return false;
  for (const auto& b : gamma.canonical_basis())
    if (!gp.member(apply_right(b, m, f))) return false;
  for (const auto& b : gp.canonical_basis())
    if (!gamma.member(apply_right(b, m_inv, f))) return false;
  return true;
}

}  // namespace

OrbitDecision orbit_decide(const Subgroup& gamma, const Subgroup& gamma_prime,
                           std::size_t l2, std::size_t l3, long budget) {
  const FieldPtr& f = gamma.field();
  std::size_t n = l2 + l3;
  if (gamma.ambient_dim() != n || gamma_prime.ambient_dim() != n)
    throw error("subgroup dimension mismatch");
  if (!gamma.is_nondegenerate() || !gamma_prime.is_nondegenerate())
    throw error("orbit_decide needs nondegenerate subgroups");
  if (!f->same_as(*gamma_prime.field())) throw error("scalar field mismatch");

  OrbitInvariants ia = orbit_invariants(gamma, l2, l3);
  OrbitInvariants ib = orbit_invariants(gamma_prime, l2, l3);
  if (ia.zrank != ib.zrank)
    return {OrbitDecision::Kind::Inequivalent, std::nullopt, "zrank"};
  if (ia.slice_zrank != ib.slice_zrank)
    return {OrbitDecision::Kind::Inequivalent, std::nullopt, "slice_zrank"};
  if (ia.projection_zrank != ib.projection_zrank)
    return {OrbitDecision::Kind::Inequivalent, std::nullopt, "projection_zrank"};

  if (n == 0)
    return {OrbitDecision::Kind::Equivalent, BlockGroupElement::identity(f, l2, l3), ""};
  if (gamma == gamma_prime)
    return {OrbitDecision::Kind::Equivalent, BlockGroupElement::identity(f, l2, l3), ""};

  std::vector<std::size_t> piv = greedy_pivot_rows(gamma);
  if (piv.size() != n) throw error("internal: nondegenerate subgroup without pivot rows");
  Matrix<Scalar> P(n, n);
  for (std::size_t i = 0; i < n; ++i) P.a[i] = gamma.canonical_basis()[piv[i]].coords;
  auto p_inv_opt = field_inverse(P, Scalar::one(f));
  Matrix<Scalar> p_inv = *p_inv_opt;

  std::size_t r = gamma_prime.zrank();
  Scalar one = Scalar::one(f);

  long tried = 0;
  // Coefficient tuples (c_1..c_n), c_i in [-h,h]^r, by growing shell h.
  for (long h = 1;; ++h) {
    std::vector<long> c(n * r, -h);
    bool done = false;
    while (!done) {
      long mx = 0;
      for (long v : c) mx = std::max(mx, std::labs(v));
      if (mx == h) {  // skip interiors already tried at smaller shells
        if (++tried > budget) return {OrbitDecision::Kind::Unknown, std::nullopt, ""};
        Matrix<Scalar> W(n, n, Scalar::zero(f));
        bool nontrivial = true;
        for (std::size_t i = 0; i < n && nontrivial; ++i) {
          std::vector<Int> coeff(r);
          bool all_zero = true;
          for (std::size_t k = 0; k < r; ++k) {
            coeff[k] = c[i * r + k];
            if (coeff[k] != 0) all_zero = false;
          }
          if (all_zero) { nontrivial = false; break; }
          W.a[i] = gamma_prime.element_from_coordinates(coeff).coords;
        }
        if (nontrivial) {
          auto m = solve_map(p_inv, W);
          if (m && has_block_pattern(*m, l2)) {
            auto m_inv = field_inverse(*m, one);
            if (m_inv && maps_lattice_onto(gamma, gamma_prime, *m, *m_inv, f)) {
              BlockGroupElement g = BlockGroupElement::from_assembled(f, l2, l3, *m_inv);
              if (block_act(g, gamma) == gamma_prime)
                return {OrbitDecision::Kind::Equivalent, g, ""};
            }
          }
        }
      }
      // advance odometer
      std::size_t pos = 0;
      while (pos < c.size()) {
        if (c[pos] < h) { ++c[pos]; break; }
        c[pos] = -h;
        ++pos;
      }
      if (pos == c.size()) done = true;
    }
    if (tried >= budget) return {OrbitDecision::Kind::Unknown, std::nullopt, ""};
  }
}

}  // namespace witt
