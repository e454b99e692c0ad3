#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sys/wait.h>

#include "witt/io.hpp"
#include "witt/sampling.hpp"

using namespace witt;

namespace {

FieldPtr Q() { return NumberField::rationals(); }

GroupVector qv(const FieldPtr& f, std::vector<long> entries) {
  std::vector<Scalar> c;
  for (long e : entries) c.push_back(Scalar::of_int(f, e));
  return GroupVector(std::move(c));
}

std::filesystem::path work_dir() {
  static std::filesystem::path dir = [] {
    auto d = std::filesystem::temp_directory_path() /
             ("witt_cli_" + std::to_string(::getpid()));
    std::filesystem::create_directories(d);
    return d;
  }();
  return dir;
}

std::string save(const std::string& name, const std::string& content) {
  auto p = work_dir() / name;
  std::ofstream out(p);
  out << content;
  return p.string();
}

struct RunResult {
  int code;
  std::string out;
};

RunResult run_cli(const std::string& args) {
  const char* cli = std::getenv("WITT_CLI");
  REQUIRE_MESSAGE(cli != nullptr, "WITT_CLI must point at the CLI binary");
  std::string cmd = std::string(cli) + " " + args + " 2>/dev/null";
  FILE* p = ::popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  std::string out;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) out.append(buf, n);
  int st = ::pclose(p);
  return {WIFEXITED(st) ? WEXITSTATUS(st) : -1, out};
}

StandardSpec spec_z(long gen = 1) {
  FieldPtr f = Q();
  return {0, 0, 1, f, Subgroup::make(f, 1, {qv(f, {gen})}), Cocycle{}};
}

}  // namespace

TEST_CASE("spec files round-trip byte for byte") {
  Sampler s(71);
  FieldPtr f = Q();
  FieldPtr f2 = NumberField::make({Rational(-2), Rational(0), Rational(1)});
  std::vector<StandardSpec> specs;
  // polynomial-only shapes
  for (std::size_t l1 = 1; l1 <= 3; ++l1)
    specs.push_back({l1, 0, 0, f, Subgroup::zero(f, 0), Cocycle{}});
  // every grading shape with l1 + l2 + l3 <= 3, two samples each
  struct Shape { std::size_t l1, l2, l3; };
  for (Shape sh : {Shape{0, 1, 0}, Shape{0, 0, 1}, Shape{1, 1, 0}, Shape{1, 0, 1},
                   Shape{0, 1, 1}, Shape{1, 1, 1}, Shape{0, 2, 0}, Shape{0, 0, 2},
                   Shape{0, 1, 2}, Shape{0, 2, 1}}) {
    specs.push_back(s.standard_spec(f, sh.l1, sh.l2, sh.l3));
    specs.push_back(s.standard_spec(f2, sh.l1, sh.l2, sh.l3));
  }
  // a twisted one
  {
    Matrix<Int> S(1, 1);
    S[0][0] = 1;
    StandardSpec tw = spec_z();
    tw.cocycle = Cocycle{{{Scalar::of_int(f, 2), S}}};
    specs.push_back(tw);
  }
  REQUIRE(specs.size() >= 20);
  int idx = 0;
  for (const StandardSpec& spec : specs) {
    std::string text = canonical_dump(spec_to_json(spec));
    ParsedSpec back = parse_spec_text(text);
    REQUIRE(back.standard.has_value());
    CHECK(canonical_dump(spec_to_json(*back.standard)) == text);

    // the CLI echoes an already-standard spec canonically
    std::string path = save("spec" + std::to_string(idx++) + ".json", text);
    RunResult r = run_cli("standardize --spec " + path);
    CHECK(r.code == 0);
    CHECK(r.out == text);
  }
}

TEST_CASE("raw specs standardize to the library's normal form") {
  FieldPtr f = Q();
  Subgroup line = Subgroup::make(f, 2, {qv(f, {1, 2})});
  RawSpec raw{0, 2, f, line, Cocycle{}, Matrix<Scalar>(2, 0, Scalar::zero(f))};
  std::string path = save("raw.json", canonical_dump(spec_to_json(raw)));
  RunResult r = run_cli("standardize --spec " + path);
  CHECK(r.code == 0);
  CHECK(r.out == canonical_dump(spec_to_json(standard_form(raw).first)));
}

TEST_CASE("mul, derive and bracket agree with the library") {
  Sampler s(72);
  FieldPtr f = Q();
  StandardSpec spec = s.standard_spec(f, 1, 1, 1);
  ContextPtr ctx = spec.context();
  std::string spec_path = save("ops_spec.json", canonical_dump(spec_to_json(spec)));
  for (int i = 0; i < 5; ++i) {
    AlgebraElement u = s.element(ctx), v = s.element(ctx);
    std::string up = save("u.json", canonical_dump(element_to_json(u)));
    std::string vp = save("v.json", canonical_dump(element_to_json(v)));
    RunResult m = run_cli("mul --spec " + spec_path + " --lhs " + up + " --rhs " + vp);
    CHECK(m.code == 0);
    CHECK(m.out == canonical_dump(element_to_json(multiply(u, v))));

    RunResult d = run_cli("derive --spec " + spec_path + " --element " + up + " --index 2");
    CHECK(d.code == 0);
    CHECK(d.out ==
          canonical_dump(element_to_json(apply_derivation(Derivation::standard(2), u))));

    WittElement wu = s.witt(ctx), wv = s.witt(ctx);
    std::string wup = save("wu.json", canonical_dump(witt_to_json(wu)));
    std::string wvp = save("wv.json", canonical_dump(witt_to_json(wv)));
    RunResult b = run_cli("bracket --spec " + spec_path + " --lhs " + wup + " --rhs " + wvp);
    CHECK(b.code == 0);
    CHECK(b.out == canonical_dump(witt_to_json(bracket(wu, wv))));
  }
}

TEST_CASE("roots output matches the library basis") {
  StandardSpec spec = spec_z();
  ContextPtr ctx = spec.context();
  std::string spec_path = save("roots_spec.json", canonical_dump(spec_to_json(spec)));
  RunResult r = run_cli("roots --spec " + spec_path + " --beta '[\"3\"]'");
  CHECK(r.code == 0);
  std::vector<WittElement> basis = root_space(ctx, qv(spec.field, {3}));
  Json expect = Json::array();
  for (const auto& w : basis) expect.push_back(witt_to_json(w));
  CHECK(r.out == canonical_dump(Json{{"basis", expect}, {"dimension", basis.size()}}));

  RunResult empty = run_cli("roots --spec " + spec_path + " --beta '[\"1/2\"]'");
  CHECK(empty.code == 0);
  CHECK(empty.out.find("\"dimension\": 0") != std::string::npos);
}

TEST_CASE("certificates round-trip through the text format and replay") {
  Sampler s(73);
  StandardSpec spec = s.standard_spec(Q(), 1, 1, 1);
  ContextPtr ctx = spec.context();
  std::string spec_path = save("cert_spec.json", canonical_dump(spec_to_json(spec)));
  AlgebraElement u = s.element(ctx, 4, 3, 2, true);
  std::string up = save("cert_u.json", canonical_dump(element_to_json(u)));

  RunResult c = run_cli("cert --spec " + spec_path + " --element " + up);
  CHECK(c.code == 0);
  // text parses back to the steps the library produces
  Certificate lib = simplicity_certificate(u);
  CHECK(c.out == certificate_text(lib));
  Certificate parsed{u, certificate_steps_from_text(c.out, ctx)};
  CHECK(parsed.replay() == AlgebraElement::one(ctx));

  std::string cert_path = save("cert.txt", c.out);
  RunResult ok = run_cli("check-cert --spec " + spec_path + " --source " + up + " --cert " +
                         cert_path);
  CHECK(ok.code == 0);
  CHECK(ok.out == "OK\n");

  // a corrupted certificate replays to something else
  std::string bad_path = save("cert_bad.txt", c.out + "SCALE 2\n");
  RunResult bad = run_cli("check-cert --spec " + spec_path + " --source " + up + " --cert " +
                          bad_path);
  CHECK(bad.code == 1);
  CHECK(bad.out == "MISMATCH\n");
}

TEST_CASE("closure exit codes cover all three outcomes") {
  StandardSpec poly{2, 0, 0, Q(), Subgroup::zero(Q(), 0), Cocycle{}};
  ContextPtr ctx = poly.context();
  std::string spec_path = save("cl_spec.json", canonical_dump(spec_to_json(poly)));
  AlgebraElement t2 =
      AlgebraElement::term_by_coords(ctx, Scalar::one(ctx->field()), {0, 1}, {});
  std::string t2p = save("cl_t2.json", canonical_dump(element_to_json(t2)));

  RunResult full = run_cli("closure --spec " + spec_path + " --element " + t2p);
  CHECK(full.code == 0);
  CHECK(full.out == "REACHED1\n");

  RunResult stable = run_cli("closure --spec " + spec_path + " --element " + t2p + " --ders 1");
  CHECK(stable.code == 1);
  CHECK(stable.out.rfind("STABLE_CANDIDATE", 0) == 0);

  RunResult tired = run_cli("closure --spec " + spec_path + " --element " + t2p +
                            " --max-ops 1 --degree 4");
  CHECK(tired.code == 2);
  CHECK(tired.out == "EXHAUSTED\n");
}

TEST_CASE("key prints the structure key") {
  StandardSpec spec = spec_z();
  std::string spec_path = save("key_spec.json", canonical_dump(spec_to_json(spec)));
  RunResult r = run_cli("key --spec " + spec_path);
  CHECK(r.code == 0);
  CHECK(r.out == structure_key(spec).str() + "\n");
}

TEST_CASE("iso and sigma follow the exit-code contract") {
  StandardSpec a = spec_z(1), b = spec_z(2);
  std::string ap = save("iso_a.json", canonical_dump(spec_to_json(a)));
  std::string bp = save("iso_b.json", canonical_dump(spec_to_json(b)));

  RunResult eq = run_cli("iso --left " + ap + " --right " + bp);
  CHECK(eq.code == 0);
  REQUIRE(eq.out.rfind("EQUIVALENT\n", 0) == 0);
  // the reported block element really carries Gamma onto Gamma'
  Json gj = Json::parse(eq.out.substr(std::string("EQUIVALENT\n").size()));
  BlockGroupElement g = BlockGroupElement::from_assembled(
      a.field, gj.at("l2").get<std::size_t>(), gj.at("l3").get<std::size_t>(),
      matrix_from_json(gj.at("matrix"), a.field));
  CHECK(block_act(g, a.gamma) == b.gamma);

  StandardSpec poly{1, 0, 0, Q(), Subgroup::zero(Q(), 0), Cocycle{}};
  std::string pp = save("iso_poly.json", canonical_dump(spec_to_json(poly)));
  RunResult ne = run_cli("iso --left " + ap + " --right " + pp);
  CHECK(ne.code == 1);
  CHECK(ne.out == "INEQUIVALENT triple\n");

  // sigma with an explicit block element agrees with the library witness
  std::string gp = save("iso_g.json",
                        canonical_dump(Json{{"l2", 0},
                                            {"l3", 1},
                                            {"matrix", Json::array({Json::array({"1/2"})})}}));
  ContextPtr actx = StandardSpec{0, 0, 1, a.field, a.gamma, Cocycle{}}.context();
  WittElement w = WittElement::of(
      actx, AlgebraElement::term_by_coords(actx, Scalar::one(a.field), {}, {Int(1)}), 1);
  std::string wp = save("iso_w.json", canonical_dump(witt_to_json(w)));
  RunResult sg = run_cli("sigma --left " + ap + " --right " + bp + " --g " + gp +
                         " --element " + wp);
  CHECK(sg.code == 0);
  Matrix<Scalar> half(1, 1, Scalar::of_rational(a.field, Rational(1, 2)));
  IsoWitness lib = build_sigma(
      BlockGroupElement(a.field, 0, 1, Matrix<Scalar>(0, 0), Matrix<Scalar>(1, 0), half), a, b);
  CHECK(sg.out == canonical_dump(witt_to_json(lib.map(witt_from_json(
                      Json::parse(read_file(wp)), lib.src)))));
}

TEST_CASE("malformed inputs produce data errors, usage errors stay distinct") {
  // reducible minimal polynomial: x^2 - 4
  std::string bad_field = save("bad_field.json", R"({
  "field": ["-4", "0", "1"],
  "gamma": [["1"]],
  "triple": [0, 0, 1]
})");
  RunResult rf = run_cli("key --spec " + bad_field);
  CHECK(rf.code == 65);
  CHECK(rf.out.empty());

  // generator of the wrong length for the declared shape
  std::string bad_gen = save("bad_gen.json", R"({
  "field": ["0", "1"],
  "gamma": [["1", "0"]],
  "triple": [0, 0, 1]
})");
  RunResult rg = run_cli("key --spec " + bad_gen);
  CHECK(rg.code == 65);

  // missing file is a data error too
  RunResult rm = run_cli("key --spec " + (work_dir() / "does_not_exist.json").string());
  CHECK(rm.code == 65);

  // usage errors: unknown subcommand / missing required option
  CHECK(run_cli("frobnicate").code >= 64);
  CHECK(run_cli("key").code >= 64);
}

TEST_CASE("selfcheck is deterministic and passes") {
  RunResult a = run_cli("selfcheck --seed 42");
  RunResult b = run_cli("selfcheck --seed 42");
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out.rfind("selfcheck seed=42", 0) == 0);
  CHECK(a.out.find("result: PASS") != std::string::npos);
}
