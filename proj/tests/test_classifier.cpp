#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "witt/sampling.hpp"

using namespace witt;

namespace {

FieldPtr Q() { return NumberField::rationals(); }
FieldPtr Qsqrt2() { return NumberField::make({Rational(-2), Rational(0), Rational(1)}); }

GroupVector qv(const FieldPtr& f, std::vector<long> entries) {
  std::vector<Scalar> c;
  for (long e : entries) c.push_back(Scalar::of_int(f, e));
  return GroupVector(std::move(c));
}

Matrix<Scalar> zmat(const FieldPtr& f, std::size_t r, std::size_t c) {
  return Matrix<Scalar>(r, c, Scalar::zero(f));
}

// A standard spec re-expressed in raw coordinates: the grading group padded
// with zero coordinates for the pure down-grading variables, no mixing.
RawSpec embed(const StandardSpec& s) {
  std::vector<GroupVector> gens;
  for (const auto& b : s.gamma.canonical_basis()) {
    std::vector<Scalar> c(s.l1, Scalar::zero(s.field));
    c.insert(c.end(), b.coords.begin(), b.coords.end());
    gens.push_back(GroupVector(std::move(c)));
  }
  Subgroup padded = Subgroup::make(s.field, s.ell(), gens);
  return RawSpec{s.l1 + s.l2, s.l3, s.field, padded, s.cocycle,
                 zmat(s.field, s.l3, s.l1 + s.l2)};
}

}  // namespace

TEST_CASE("standard form of shapes that are already standard") {
  FieldPtr f = Q();

  // one mixed plus one grading-only derivation over Z^2
  Subgroup z2 = Subgroup::make(f, 2, {qv(f, {1, 0}), qv(f, {0, 1})});
  auto [s1, r1] = standard_form(RawSpec{1, 1, f, z2, Cocycle{}, zmat(f, 1, 1)});
  CHECK(s1.l1 == 0);
  CHECK(s1.l2 == 1);
  CHECK(s1.l3 == 1);
  CHECK(s1.gamma == z2);
  AlgebraElement u = AlgebraElement::term_by_coords(r1.raw_ctx, Scalar::of_int(f, 5), {2},
                                                    {Int(1), Int(-1)});
  CHECK(r1.map_element(u) == AlgebraElement::term_by_coords(r1.std_ctx, Scalar::of_int(f, 5),
                                                            {2}, {Int(1), Int(-1)}));

  // a single mixed derivation over Z
  Subgroup z = Subgroup::make(f, 1, {qv(f, {1})});
  auto [s2, r2] = standard_form(RawSpec{1, 0, f, z, Cocycle{}, zmat(f, 0, 1)});
  CHECK(s2.l1 == 0);
  CHECK(s2.l2 == 1);
  CHECK(s2.l3 == 0);
  (void)r2;
}

TEST_CASE("dependent grading functionals are eliminated") {
  FieldPtr f = Q();
  // Gamma = {(a, 2a)}: the second coordinate is twice the first
  Subgroup line = Subgroup::make(f, 2, {qv(f, {1, 2})});
  auto [spec, rec] = standard_form(RawSpec{0, 2, f, line, Cocycle{}, zmat(f, 2, 0)});
  CHECK(spec.l1 == 0);
  CHECK(spec.l2 == 0);
  CHECK(spec.l3 == 1);
  CHECK(spec.gamma == Subgroup::make(f, 1, {qv(f, {1})}));
  // the second raw derivation acts as twice the surviving one
  Derivation d2 = rec.map_derivation(2);
  REQUIRE(d2.combination.size() == 1);
  CHECK(d2.combination[0] == Scalar::of_int(f, 2));
}

TEST_CASE("vanishing functionals become pure down-grading variables") {
  FieldPtr f = Q();
  // Gamma = Z x 0: the second coordinate functional is zero on Gamma
  Subgroup zx0 = Subgroup::make(f, 2, {qv(f, {1, 0})});
  auto [spec, rec] = standard_form(RawSpec{2, 0, f, zx0, Cocycle{}, zmat(f, 0, 2)});
  CHECK(spec.l1 == 1);
  CHECK(spec.l2 == 1);
  CHECK(spec.l3 == 0);
  CHECK(spec.gamma == Subgroup::make(f, 1, {qv(f, {1})}));
  // the variables swap: old t1 is the mixed one, so it becomes new t2
  AlgebraElement old_t1 =
      AlgebraElement::term_by_coords(rec.raw_ctx, Scalar::one(f), {1, 0}, {Int(0)});
  CHECK(rec.map_element(old_t1) ==
        AlgebraElement::term_by_coords(rec.std_ctx, Scalar::one(f), {0, 1}, {Int(0)}));
}

TEST_CASE("normalizing an embedded standard spec is the identity") {
  Sampler s(61);
  FieldPtr f = Q();
  struct Shape { std::size_t l1, l2, l3; };
  for (Shape sh : {Shape{1, 1, 1}, Shape{0, 1, 1}, Shape{1, 0, 1}, Shape{2, 1, 0}}) {
    for (int i = 0; i < 5; ++i) {
      StandardSpec spec = s.standard_spec(f, sh.l1, sh.l2, sh.l3);
      auto [back, rec] = standard_form(embed(spec));
      CHECK(back.l1 == spec.l1);
      CHECK(back.l2 == spec.l2);
      CHECK(back.l3 == spec.l3);
      CHECK(back.gamma == spec.gamma);
      (void)rec;
    }
  }
}

TEST_CASE("normalization is an algebra map compatible with the derivations") {
  Sampler s(62);
  FieldPtr f = Q();
  for (int trial = 0; trial < 30; ++trial) {
    std::size_t k1 = static_cast<std::size_t>(s.pick(0, 2));
    std::size_t k2 = static_cast<std::size_t>(s.pick(0, 1));
    if (k1 + k2 == 0) k1 = 1;
    Subgroup gamma = s.subgroup(f, k1 + k2, k1 + k2 + 1, 2);
    Matrix<Scalar> mixing(k2, k1, Scalar::zero(f));
    for (std::size_t i = 0; i < k2; ++i)
      for (std::size_t j = 0; j < k1; ++j) mixing[i][j] = s.scalar(f, 2);
    RawSpec raw{k1, k2, f, gamma, Cocycle{}, mixing};
    auto [spec, rec] = standard_form(raw);
    spec.validate();

    AlgebraElement u = s.element(rec.raw_ctx), v = s.element(rec.raw_ctx);
    CHECK(rec.map_element(AlgebraElement::one(rec.raw_ctx)) ==
          AlgebraElement::one(rec.std_ctx));
    CHECK(rec.map_element(multiply(u, v)) ==
          multiply(rec.map_element(u), rec.map_element(v)));
    for (std::size_t i = 1; i <= raw.k(); ++i)
      CHECK(rec.map_element(apply_derivation(Derivation::standard(i), u)) ==
            apply_derivation(rec.map_derivation(i), rec.map_element(u)));
  }
}

TEST_CASE("cocycles are transported through the normalization") {
  FieldPtr f = Q();
  Subgroup line = Subgroup::make(f, 2, {qv(f, {1, 2})});
  Matrix<Int> S(1, 1);
  S[0][0] = 1;
  Cocycle tw{{{Scalar::of_int(f, 2), S}}};
  auto [spec, rec] = standard_form(RawSpec{0, 2, f, line, tw, zmat(f, 2, 0)});
  CHECK_FALSE(spec.cocycle.trivial());
  Sampler s(63);
  for (int i = 0; i < 40; ++i) {
    AlgebraElement u = s.element(rec.raw_ctx), v = s.element(rec.raw_ctx);
    CHECK(rec.map_element(multiply(u, v)) ==
          multiply(rec.map_element(u), rec.map_element(v)));
  }
}

TEST_CASE("cocycle trivialization is an exact coboundary") {
  FieldPtr f = Q();
  Subgroup z = Subgroup::make(f, 1, {qv(f, {1})});
  Matrix<Int> S(1, 1);
  S[0][0] = 1;
  Cocycle tw{{{Scalar::of_int(f, 2), S}}};
  Trivialization g = trivialize_cocycle(tw, z);
  CHECK(g.value({Int(0)}) == Scalar::one(f));
  CHECK(g.value({Int(1)}) == Scalar::one(f));
  CHECK(g.value({Int(2)}) == Scalar::of_rational(f, Rational(1, 2)));
  CHECK(g.value({Int(3)}) == Scalar::of_rational(f, Rational(1, 8)));
  CHECK(g.value({Int(-1)}) == Scalar::of_rational(f, Rational(1, 2)));
  for (long a = -5; a <= 5; ++a)
    for (long b = -5; b <= 5; ++b) {
      Scalar lhs = tw.eval(f, {Int(a)}, {Int(b)});
      Scalar rhs = g.value({Int(a)}) * g.value({Int(b)}) * g.value({Int(a + b)}).inverse();
      CHECK(lhs == rhs);
    }
  CHECK(g.generator_values(z).size() == 1);

  // two base points in rank 2
  Matrix<Int> S1(2, 2), S2(2, 2);
  S1[0][0] = 1; S1[0][1] = S1[1][0] = -1; S1[1][1] = 0;
  S2[0][0] = 0; S2[0][1] = S2[1][0] = 2; S2[1][1] = 3;
  Cocycle two{{{Scalar::of_int(f, 2), S1}, {Scalar::of_int(f, 3), S2}}};
  Subgroup z2 = Subgroup::make(f, 2, {qv(f, {1, 0}), qv(f, {0, 1})});
  Trivialization g2 = trivialize_cocycle(two, z2);
  for (long a0 = -2; a0 <= 2; ++a0)
    for (long a1 = -2; a1 <= 2; ++a1)
      for (long b0 = -2; b0 <= 2; ++b0)
        for (long b1 = -2; b1 <= 2; ++b1) {
          std::vector<Int> a = {Int(a0), Int(a1)}, b = {Int(b0), Int(b1)};
          std::vector<Int> ab = {Int(a0 + b0), Int(a1 + b1)};
          CHECK(two.eval(f, a, b) ==
                g2.value(a) * g2.value(b) * g2.value(ab).inverse());
        }
}

TEST_CASE("structure keys are invariant under the block action") {
  Sampler s(64);
  FieldPtr f = Q();
  for (int i = 0; i < 50; ++i) {
    std::size_t l2 = static_cast<std::size_t>(s.pick(0, 1));
    std::size_t l3 = 2 - l2;
    StandardSpec spec = s.standard_spec(f, static_cast<std::size_t>(s.pick(0, 1)), l2, l3);
    BlockGroupElement g = s.block_element(f, l2, l3, 2);
    StandardSpec moved = spec;
    moved.gamma = block_act(g, spec.gamma);
    CHECK(structure_key(spec) == structure_key(moved));
    CHECK(structure_key(spec).str() == structure_key(moved).str());
  }
}

TEST_CASE("structure keys separate shapes, fields and grading ranks") {
  FieldPtr f = Q();
  Subgroup z = Subgroup::make(f, 1, {qv(f, {1})});
  StandardSpec a{0, 0, 1, f, z, Cocycle{}};
  StandardSpec b{1, 0, 1, f, z, Cocycle{}};
  CHECK_FALSE(structure_key(a) == structure_key(b));

  FieldPtr f2 = Qsqrt2();
  Subgroup z_f2 = Subgroup::make(f2, 1, {GroupVector({Scalar::one(f2)})});
  StandardSpec c{0, 0, 1, f2, z_f2, Cocycle{}};
  CHECK_FALSE(structure_key(a) == structure_key(c));

  Subgroup dense = Subgroup::make(
      f2, 1, {GroupVector({Scalar::one(f2)}), GroupVector({Scalar::generator(f2)})});
  StandardSpec d{0, 0, 1, f2, dense, Cocycle{}};
  CHECK_FALSE(structure_key(c) == structure_key(d));

  // only the trivial grading group yields a complete canonical representative
  StandardSpec e{1, 0, 0, f, Subgroup::zero(f, 0), Cocycle{}};
  CHECK(structure_key(e).canonical_complete);
  CHECK_FALSE(structure_key(a).canonical_complete);
}

TEST_CASE("isomorphism decisions on the documented pairs") {
  FieldPtr f = Q();
  Subgroup z = Subgroup::make(f, 1, {qv(f, {1})});
  Subgroup two_z = Subgroup::make(f, 1, {qv(f, {2})});
  StandardSpec sz{0, 0, 1, f, z, Cocycle{}};
  StandardSpec s2z{0, 0, 1, f, two_z, Cocycle{}};

  IsoDecision same = decide_isomorphic(sz, sz);
  REQUIRE(same.kind == IsoDecision::Kind::Equivalent);
  CHECK(verify_homomorphism(*same.witness, 30, 7).passed);

  IsoDecision scaled = decide_isomorphic(sz, s2z);
  REQUIRE(scaled.kind == IsoDecision::Kind::Equivalent);
  CHECK(block_act(scaled.witness->g, z) == two_z);
  CHECK(verify_homomorphism(*scaled.witness, 30, 7).passed);

  StandardSpec poly{1, 0, 0, f, Subgroup::zero(f, 0), Cocycle{}};
  IsoDecision shape = decide_isomorphic(poly, sz);
  REQUIRE(shape.kind == IsoDecision::Kind::Inequivalent);
  CHECK(shape.reason == "triple");

  FieldPtr f2 = Qsqrt2();
  Subgroup z_f2 = Subgroup::make(f2, 1, {GroupVector({Scalar::one(f2)})});
  StandardSpec over_f2{0, 0, 1, f2, z_f2, Cocycle{}};
  IsoDecision field = decide_isomorphic(sz, over_f2);
  REQUIRE(field.kind == IsoDecision::Kind::Inequivalent);
  CHECK(field.reason == "field");

  Subgroup dense = Subgroup::make(
      f2, 1, {GroupVector({Scalar::one(f2)}), GroupVector({Scalar::generator(f2)})});
  StandardSpec dense_spec{0, 0, 1, f2, dense, Cocycle{}};
  IsoDecision rank = decide_isomorphic(over_f2, dense_spec);
  REQUIRE(rank.kind == IsoDecision::Kind::Inequivalent);
  CHECK(rank.reason == "zrank");

  // verdicts are symmetric
  CHECK(decide_isomorphic(s2z, sz).kind == IsoDecision::Kind::Equivalent);
  CHECK(decide_isomorphic(sz, poly).kind == IsoDecision::Kind::Inequivalent);
  CHECK(decide_isomorphic(dense_spec, over_f2).kind == IsoDecision::Kind::Inequivalent);
}

TEST_CASE("explicit witnesses on rank one") {
  FieldPtr f = Q();
  Subgroup z = Subgroup::make(f, 1, {qv(f, {1})});
  Subgroup two_z = Subgroup::make(f, 1, {qv(f, {2})});
  StandardSpec sz{0, 0, 1, f, z, Cocycle{}};
  StandardSpec s2z{0, 0, 1, f, two_z, Cocycle{}};
  // g = (1/2) acts by alpha -> 2 alpha and carries Z onto 2Z
  BlockGroupElement g(f, 0, 1, Matrix<Scalar>(0, 0), Matrix<Scalar>(1, 0),
                      Matrix<Scalar>(1, 1, Scalar::of_rational(f, Rational(1, 2))));
  IsoWitness w = build_sigma(g, sz, s2z);

  // sigma(x^a d) = (1/2) x^{2a} d'
  AlgebraElement xa = AlgebraElement::term_by_coords(w.src, Scalar::one(f), {}, {Int(1)});
  WittElement img = w.map(WittElement::of(w.src, xa, 1));
  AlgebraElement expect = AlgebraElement::term_by_coords(
      w.dst, Scalar::of_rational(f, Rational(1, 2)), {}, {Int(1)});  // x^2 has coordinate 1 in 2Z
  CHECK(img == WittElement::of(w.dst, expect, 1));

  // the bracket relation survives: [x d, x^2 d] = x^3 d
  HomReport rep = verify_homomorphism(w, 50, 11);
  CHECK(rep.passed);
  CHECK(rep.samples == 50);

  CHECK_THROWS_AS(build_sigma(g, sz, sz), error);                 // g does not fix Z
  StandardSpec wrong{1, 0, 1, f, z, Cocycle{}};
  CHECK_THROWS_AS(build_sigma(g, wrong, s2z), error);             // shape mismatch
}

TEST_CASE("generic witnesses preserve the bracket") {
  Sampler s(65);
  FieldPtr f = Q();
  for (int i = 0; i < 12; ++i) {
    std::size_t l2 = static_cast<std::size_t>(s.pick(0, 1));
    std::size_t l3 = 2 - l2;
    StandardSpec spec = s.standard_spec(f, static_cast<std::size_t>(s.pick(0, 1)), l2, l3);
    BlockGroupElement g = s.block_element(f, l2, l3, 2);
    StandardSpec moved = spec;
    moved.gamma = block_act(g, spec.gamma);
    IsoWitness w = build_sigma(g, spec, moved);
    HomReport rep = verify_homomorphism(w, 25, 1000 + static_cast<unsigned long long>(i));
    CHECK(rep.passed);
    CHECK_FALSE(rep.untested);
  }
}

TEST_CASE("fault injection is caught with a counterexample") {
  FieldPtr f = Q();
  Sampler s(66);
  StandardSpec spec = s.standard_spec(f, 1, 1, 1);
  BlockGroupElement g = s.block_element(f, 1, 1, 2);
  StandardSpec moved = spec;
  moved.gamma = block_act(g, spec.gamma);
  IsoWitness w = build_sigma(g, spec, moved);
  REQUIRE(verify_homomorphism(w, 20, 3).passed);

  IsoWitness broken = w;
  broken.der_transform[0][0] = broken.der_transform[0][0] + Scalar::one(f);
  HomReport rep = verify_homomorphism(broken, 200, 3);
  CHECK_FALSE(rep.passed);
  REQUIRE(rep.counterexample.has_value());
  // the reported pair really is a counterexample
  const auto& [u, v] = *rep.counterexample;
  CHECK(broken.map(bracket(u, v)) != bracket(broken.map(u), broken.map(v)));

  HomReport untested = verify_homomorphism(w, 0, 3);
  CHECK(untested.passed);
  CHECK(untested.untested);
}

TEST_CASE("classification round-trips recover an equivalence witness") {
  Sampler s(67);
  FieldPtr f = Q();
  for (int i = 0; i < 30; ++i) {
    std::size_t l2 = static_cast<std::size_t>(s.pick(0, 1));
    std::size_t l3 = static_cast<std::size_t>(s.pick(l2 == 0 ? 1 : 0, 2 - l2));
    StandardSpec spec = s.standard_spec(f, static_cast<std::size_t>(s.pick(0, 1)), l2, l3);
    BlockGroupElement g = s.block_element(f, l2, l3, 2);
    StandardSpec moved = spec;
    moved.gamma = block_act(g, spec.gamma);
    IsoDecision d = decide_isomorphic(spec, moved);
    REQUIRE(d.kind == IsoDecision::Kind::Equivalent);
    CHECK(block_act(d.witness->g, spec.gamma) == moved.gamma);
    CHECK(verify_homomorphism(*d.witness, 20, 500 + static_cast<unsigned long long>(i)).passed);
  }
}
