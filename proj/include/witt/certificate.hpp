#ifndef WITT_CERTIFICATE_HPP
#define WITT_CERTIFICATE_HPP

#include <variant>
#include <vector>

#include "witt/algebra.hpp"

namespace witt {

class ZeroElement : public error {
public:
  ZeroElement() : error("element is zero") {}
};

/// One ideal-preserving move: multiply by a monomial, apply a shifted
/// derivation v -> (d - shift)(v), or scale by a nonzero constant.
struct MulMonomial {
  AlgebraElement factor;  // a single term
};
struct ApplyShiftedDer {
  Derivation der;  // standard-basis index form
  Scalar shift;
};
struct Scale {
  Scalar c;  // nonzero
};
using CertificateStep = std::variant<MulMonomial, ApplyShiftedDer, Scale>;

AlgebraElement apply_step(const CertificateStep& step, const AlgebraElement& v);

/// Replayable witness that the D-stable ideal generated by source is all
/// of A: the steps map source to exactly 1.
struct Certificate {
  AlgebraElement source;
  std::vector<CertificateStep> steps;

  AlgebraElement replay() const;
};

/// Constructive derivation-simplicity: a certificate for any nonzero u.
Certificate simplicity_certificate(const AlgebraElement& u);

/// A combination of grading standards whose pairing values are pairwise
/// distinct across the given support grades.
Derivation separating_derivation(const std::vector<GroupVector>& support,
                                 const AlgebraContext& ctx);

/// Window-truncated closure of {u} under the given derivations,
/// multiplication by window monomials, and linear span.
struct ProbeResult {
  enum class Kind { Reached1, StableCandidate, Exhausted } kind;
  std::vector<AlgebraElement> basis;  // closure basis (StableCandidate)
};
ProbeResult ideal_closure_probe(const AlgebraElement& u, const std::vector<Derivation>& ders,
                                unsigned degree_bound,
                                const std::vector<std::vector<Int>>& grade_window,
                                long max_ops = 1000000);

}  // namespace witt

#endif
