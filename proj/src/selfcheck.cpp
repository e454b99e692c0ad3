#include "witt/selfcheck.hpp"

#include <functional>
#include <sstream>

#include "witt/io.hpp"
#include "witt/sampling.hpp"

namespace witt {

namespace {

FieldPtr sqrt2_field() {
  return NumberField::make({Rational(-2), Rational(0), Rational(1)});
}

StandardSpec base_spec_q() {
  FieldPtr f = NumberField::rationals();
  Scalar one = Scalar::one(f), zero = Scalar::zero(f);
  Subgroup gamma = Subgroup::make(f, 2,
                                  {GroupVector({one, zero}), GroupVector({zero, one})});
  return StandardSpec{1, 1, 1, f, gamma, Cocycle{}};
}

StandardSpec base_spec_sqrt2() {
  FieldPtr f = sqrt2_field();
  Scalar one = Scalar::one(f), zero = Scalar::zero(f);
  Subgroup gamma = Subgroup::make(
      f, 2, {GroupVector({one, zero}), GroupVector({zero, one}),
             GroupVector({Scalar::generator(f), zero})});
  return StandardSpec{1, 1, 1, f, gamma, Cocycle{}};
}

StandardSpec twisted_spec() {
  FieldPtr f = NumberField::rationals();
  Scalar one = Scalar::one(f), zero = Scalar::zero(f);
  Subgroup gamma = Subgroup::make(f, 2,
                                  {GroupVector({one, zero}), GroupVector({zero, one})});
  Matrix<Int> S(2, 2);
  S[0][0] = 1;
  S[0][1] = S[1][0] = 1;
  S[1][1] = 0;
  Cocycle c{{{Scalar::of_int(f, 2), S}}};
  return StandardSpec{0, 1, 1, f, gamma, c};
}

struct Runner {
  std::ostringstream out;
  bool all_passed = true;

  void suite(const std::string& name, std::size_t cases,
             const std::function<bool(std::string&)>& body) {
    std::string detail;
    bool ok = false;
    try {
      ok = body(detail);
    } catch (const std::exception& e) {
      detail = e.what();
    }
    out << name << ": " << (ok ? "pass" : "FAIL") << " (" << cases << " cases)";
    if (!ok && !detail.empty()) out << " -- " << detail;
    out << "\n";
    all_passed = all_passed && ok;
  }
};

}  // namespace

SelfcheckResult run_selfcheck(unsigned long long seed) {
  Runner r;
  r.out << "selfcheck seed=" << seed << "\n";

  std::vector<ContextPtr> contexts = {base_spec_q().context(), base_spec_sqrt2().context(),
                                      twisted_spec().context()};

  r.suite("algebra_laws", 60, [&](std::string& detail) {
    Sampler s(seed ^ 0x1);
    for (std::size_t i = 0; i < 60; ++i) {
      const ContextPtr& ctx = contexts[i % contexts.size()];
      AlgebraElement u = s.element(ctx), v = s.element(ctx), w = s.element(ctx);
      if (multiply(u, v) != multiply(v, u)) return detail = "commutativity", false;
      if (multiply(multiply(u, v), w) != multiply(u, multiply(v, w)))
        return detail = "associativity", false;
      Derivation d = Derivation::standard(
          static_cast<std::size_t>(s.pick(1, static_cast<long>(ctx->num_standard()))));
      AlgebraElement lhs = apply_derivation(d, multiply(u, v));
      AlgebraElement rhs =
          multiply(apply_derivation(d, u), v) + multiply(u, apply_derivation(d, v));
      if (lhs != rhs) return detail = "Leibniz", false;
    }
    return true;
  });

  r.suite("lie_laws", 30, [&](std::string& detail) {
    Sampler s(seed ^ 0x2);
    for (std::size_t i = 0; i < 30; ++i) {
      const ContextPtr& ctx = contexts[i % contexts.size()];
      WittElement u = s.witt(ctx), v = s.witt(ctx), w = s.witt(ctx);
      if (!(bracket(u, v) + bracket(v, u)).is_zero()) return detail = "antisymmetry", false;
      WittElement jac = bracket(bracket(u, v), w) + bracket(bracket(v, w), u) +
                        bracket(bracket(w, u), v);
      if (!jac.is_zero()) return detail = "Jacobi", false;
    }
    return true;
  });

  r.suite("root_vectors", 40, [&](std::string& detail) {
    Sampler s(seed ^ 0x3);
    for (std::size_t i = 0; i < 40; ++i) {
      const ContextPtr& ctx = contexts[i % contexts.size()];
      GroupVector alpha = s.group_vector(ctx->gamma());
      Scalar c = s.scalar(ctx->field(), 3, true);
      AlgebraElement u =
          AlgebraElement::term(ctx, c, std::vector<unsigned>(ctx->num_t_vars(), 0), alpha);
      AlgebraElement inv = invert(u);
      if (multiply(u, inv) != AlgebraElement::one(ctx)) return detail = "inverse", false;
      Derivation d = Derivation::standard(
          static_cast<std::size_t>(s.pick(1, static_cast<long>(ctx->num_standard()))));
      if (apply_derivation(d, inv) != inv.scaled(-pairing(alpha, d, *ctx)))
        return detail = "eigenvalue law", false;
    }
    return true;
  });

  r.suite("certificates", 40, [&](std::string& detail) {
    Sampler s(seed ^ 0x4);
    for (std::size_t i = 0; i < 40; ++i) {
      const ContextPtr& ctx = contexts[i % contexts.size()];
      AlgebraElement u = s.element(ctx, 3, 3, 2, true);
      Certificate cert = simplicity_certificate(u);
      if (cert.replay() != AlgebraElement::one(ctx)) return detail = "replay", false;
    }
    return true;
  });

  r.suite("cocycle_transport", 60, [&](std::string& detail) {
    StandardSpec tw = twisted_spec();
    StandardSpec untw = tw;
    untw.cocycle = Cocycle{};
    ContextPtr tctx = tw.context(), uctx = untw.context();
    Trivialization triv = trivialize_cocycle(tw.cocycle, tw.gamma);
    auto phi = [&](const AlgebraElement& u) {
      AlgebraElement out = AlgebraElement::zero(uctx);
      for (const auto& [mono, c] : u.terms())
        out = out + AlgebraElement::term_by_coords(uctx, c * triv.value(mono.alpha_coords),
                                                   mono.m, mono.alpha_coords);
      return out;
    };
    Sampler s(seed ^ 0x5);
    for (std::size_t i = 0; i < 60; ++i) {
      AlgebraElement u = s.element(tctx, 1, 1, 3, true), v = s.element(tctx, 1, 1, 3, true);
      if (phi(multiply(u, v)) != multiply(phi(u), phi(v)))
        return detail = "transport mismatch", false;
    }
    return true;
  });

  r.suite("key_invariance", 20, [&](std::string& detail) {
    Sampler s(seed ^ 0x6);
    for (std::size_t i = 0; i < 20; ++i) {
      std::size_t l2 = static_cast<std::size_t>(s.pick(0, 1));
      std::size_t l3 = static_cast<std::size_t>(s.pick(l2 ? 0 : 1, 1));
      StandardSpec spec =
          s.standard_spec(NumberField::rationals(), static_cast<std::size_t>(s.pick(0, 1)), l2,
                          l3);
      BlockGroupElement g = s.block_element(spec.field, l2, l3, 2);
      StandardSpec moved = spec;
      moved.gamma = block_act(g, spec.gamma);
      if (!(structure_key(spec) == structure_key(moved))) return detail = "key moved", false;
    }
    return true;
  });

  r.suite("iso_roundtrip", 6, [&](std::string& detail) {
    Sampler s(seed ^ 0x7);
    for (std::size_t i = 0; i < 6; ++i) {
      std::size_t l2 = i % 2, l3 = 1 - l2;
      StandardSpec spec = s.standard_spec(NumberField::rationals(), 1, l2, l3);
      BlockGroupElement g = s.block_element(spec.field, l2, l3, 2);
      StandardSpec moved = spec;
      moved.gamma = block_act(g, spec.gamma);
      IsoDecision d = decide_isomorphic(spec, moved);
      if (d.kind != IsoDecision::Kind::Equivalent) return detail = "not equivalent", false;
      HomReport h = verify_homomorphism(*d.witness, 5, seed ^ (0x70 + i));
      if (!h.passed) return detail = "witness rejected", false;
    }
    return true;
  });

  r.suite("io_roundtrip", 20, [&](std::string& detail) {
    Sampler s(seed ^ 0x8);
    std::vector<StandardSpec> specs = {base_spec_q(), base_spec_sqrt2(), twisted_spec()};
    for (const auto& spec : specs) {
      std::string text = canonical_dump(spec_to_json(spec));
      ParsedSpec back = parse_spec_text(text);
      if (canonical_dump(spec_to_json(back)) != text) return detail = "spec", false;
    }
    for (std::size_t i = 0; i < 20; ++i) {
      const ContextPtr& ctx = contexts[i % contexts.size()];
      AlgebraElement u = s.element(ctx);
      if (element_from_json(element_to_json(u), ctx) != u) return detail = "element", false;
      WittElement w = s.witt(ctx);
      if (witt_from_json(witt_to_json(w), ctx) != w) return detail = "witt", false;
      AlgebraElement src = s.element(ctx, 3, 3, 2, true);
      Certificate cert = simplicity_certificate(src);
      Certificate back{src, certificate_steps_from_text(certificate_text(cert), ctx)};
      if (certificate_text(back) != certificate_text(cert)) return detail = "cert text", false;
      if (back.replay() != AlgebraElement::one(ctx)) return detail = "cert replay", false;
    }
    return true;
  });

  r.out << "result: " << (r.all_passed ? "PASS" : "FAIL") << "\n";
  return {r.out.str(), r.all_passed};
}

}  // namespace witt
