#include <CLI11.hpp>
#include <iostream>

#include "witt/io.hpp"
#include "witt/selfcheck.hpp"

using namespace witt;

namespace {

constexpr int kExitData = 65;  // malformed input / precondition failure

AlgebraElement load_element(const std::string& path, const ContextPtr& ctx) {
  return element_from_json(Json::parse(read_file(path)), ctx);
}

WittElement load_witt(const std::string& path, const ContextPtr& ctx) {
  return witt_from_json(Json::parse(read_file(path)), ctx);
}

StandardSpec standard_of(const ParsedSpec& p) {
  if (p.standard) return *p.standard;
  return standard_form(*p.raw).first;
}

Json block_to_json(const BlockGroupElement& g) {
  return Json{{"l2", g.l2()}, {"l3", g.l3()}, {"matrix", matrix_to_json(g.assembled())}};
}

BlockGroupElement block_from_json(const Json& j, const FieldPtr& f) {
  return BlockGroupElement::from_assembled(
      f, j.at("l2").get<std::size_t>(), j.at("l3").get<std::size_t>(),
      matrix_from_json(j.at("matrix"), f));
}

std::vector<std::size_t> parse_indices(const std::string& s) {
  std::vector<std::size_t> out;
  std::istringstream in(s);
  std::string part;
  while (std::getline(in, part, ',')) out.push_back(std::stoul(part));
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact arithmetic for twisted polynomial-group algebras and their Witt-type "
               "Lie algebras"};
  app.require_subcommand(1);

  std::string spec_path, left_path, right_path, lhs_path, rhs_path, element_path, cert_path,
      g_path, out_kind = "standard", ders_csv, beta_json;
  std::size_t index = 1;
  unsigned degree = 3;
  long height = 2, budget = 200000, max_ops = 200000;
  unsigned long long seed = 0;

  auto* mul = app.add_subcommand("mul", "product of two algebra elements");
  mul->add_option("--spec", spec_path)->required();
  mul->add_option("--lhs", lhs_path)->required();
  mul->add_option("--rhs", rhs_path)->required();

  auto* derive = app.add_subcommand("derive", "apply a derivation to an algebra element");
  derive->add_option("--spec", spec_path)->required();
  derive->add_option("--element", element_path)->required();
  derive->add_option("--kind", out_kind)->check(CLI::IsMember({"standard", "down", "grading"}));
  derive->add_option("--index", index)->required();

  auto* brk = app.add_subcommand("bracket", "Lie bracket of two Witt elements");
  brk->add_option("--spec", spec_path)->required();
  brk->add_option("--lhs", lhs_path)->required();
  brk->add_option("--rhs", rhs_path)->required();

  auto* roots = app.add_subcommand("roots", "root-space basis for a grade vector");
  roots->add_option("--spec", spec_path)->required();
  roots->add_option("--beta", beta_json, "grade vector as a JSON coordinate array")->required();

  auto* cert = app.add_subcommand("cert", "emit a replayable simplicity certificate");
  cert->add_option("--spec", spec_path)->required();
  cert->add_option("--element", element_path)->required();

  auto* check = app.add_subcommand("check-cert", "replay a certificate against its source");
  check->add_option("--spec", spec_path)->required();
  check->add_option("--source", element_path)->required();
  check->add_option("--cert", cert_path)->required();

  auto* closure = app.add_subcommand("closure", "bounded ideal-closure probe");
  closure->add_option("--spec", spec_path)->required();
  closure->add_option("--element", element_path)->required();
  closure->add_option("--ders", ders_csv, "1-based standard indices, comma separated");
  closure->add_option("--degree", degree);
  closure->add_option("--height", height, "grade window: coordinates bounded by this");
  closure->add_option("--max-ops", max_ops);

  auto* stdz = app.add_subcommand("standardize", "normalize a raw spec to standard shape");
  stdz->add_option("--spec", spec_path)->required();

  auto* key = app.add_subcommand("key", "structure key of a spec");
  key->add_option("--spec", spec_path)->required();

  auto* iso = app.add_subcommand("iso", "decide isomorphism of two standard specs");
  iso->add_option("--left", left_path)->required();
  iso->add_option("--right", right_path)->required();
  iso->add_option("--budget", budget);

  auto* sigma = app.add_subcommand("sigma", "map a Witt element through an isomorphism");
  sigma->add_option("--left", left_path)->required();
  sigma->add_option("--right", right_path)->required();
  sigma->add_option("--element", element_path)->required();
  sigma->add_option("--g", g_path, "block element JSON; searched when omitted");
  sigma->add_option("--budget", budget);

  auto* self = app.add_subcommand("selfcheck", "run the deterministic property suites");
  self->add_option("--seed", seed)->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*mul) {
      ContextPtr ctx = parse_spec_file(spec_path).context();
      std::cout << canonical_dump(
          element_to_json(multiply(load_element(lhs_path, ctx), load_element(rhs_path, ctx))));
    } else if (*derive) {
      ContextPtr ctx = parse_spec_file(spec_path).context();
      Derivation d = out_kind == "down"      ? Derivation::down_grading(index)
                     : out_kind == "grading" ? Derivation::grading(index)
                                             : Derivation::standard(index);
      std::cout << canonical_dump(
          element_to_json(apply_derivation(d, load_element(element_path, ctx))));
    } else if (*brk) {
      ContextPtr ctx = parse_spec_file(spec_path).context();
      std::cout << canonical_dump(
          witt_to_json(bracket(load_witt(lhs_path, ctx), load_witt(rhs_path, ctx))));
    } else if (*roots) {
      ContextPtr ctx = parse_spec_file(spec_path).context();
      GroupVector beta = vector_from_json(Json::parse(beta_json), ctx->field());
      std::vector<WittElement> basis = root_space(ctx, beta);
      Json out = Json::array();
      for (const auto& w : basis) out.push_back(witt_to_json(w));
      std::cout << canonical_dump(Json{{"basis", out}, {"dimension", basis.size()}});
    } else if (*cert) {
      ContextPtr ctx = parse_spec_file(spec_path).context();
      std::cout << certificate_text(simplicity_certificate(load_element(element_path, ctx)));
    } else if (*check) {
      ContextPtr ctx = parse_spec_file(spec_path).context();
      Certificate c{load_element(element_path, ctx),
                    certificate_steps_from_text(read_file(cert_path), ctx)};
      if (c.replay() == AlgebraElement::one(ctx)) {
        std::cout << "OK\n";
      } else {
        std::cout << "MISMATCH\n";
        return 1;
      }
    } else if (*closure) {
      ContextPtr ctx = parse_spec_file(spec_path).context();
      std::vector<Derivation> ders;
      if (ders_csv.empty())
        for (std::size_t i = 1; i <= ctx->num_standard(); ++i)
          ders.push_back(Derivation::standard(i));
      else
        for (std::size_t i : parse_indices(ders_csv)) ders.push_back(Derivation::standard(i));
      std::vector<std::vector<Int>> window;
      std::size_t r = ctx->gamma().zrank();
      std::vector<Int> cur(r, -height);
      for (;;) {
        window.push_back(cur);
        std::size_t pos = 0;
        while (pos < r && cur[pos] == height) cur[pos++] = -height;
        if (pos == r) break;
        ++cur[pos];
      }
      ProbeResult res = ideal_closure_probe(load_element(element_path, ctx), ders, degree,
                                            window, max_ops);
      switch (res.kind) {
        case ProbeResult::Kind::Reached1:
          std::cout << "REACHED1\n";
          return 0;
        case ProbeResult::Kind::StableCandidate:
          std::cout << "STABLE_CANDIDATE dim=" << res.basis.size() << "\n";
          return 1;
        case ProbeResult::Kind::Exhausted:
          std::cout << "EXHAUSTED\n";
          return 2;
      }
    } else if (*stdz) {
      ParsedSpec p = parse_spec_file(spec_path);
      std::cout << canonical_dump(spec_to_json(standard_of(p)));
    } else if (*key) {
      std::cout << structure_key(standard_of(parse_spec_file(spec_path))).str() << "\n";
    } else if (*iso) {
      StandardSpec a = standard_of(parse_spec_file(left_path));
      StandardSpec b = standard_of(parse_spec_file(right_path));
      IsoDecision d = decide_isomorphic(a, b, budget);
      switch (d.kind) {
        case IsoDecision::Kind::Equivalent:
          std::cout << "EQUIVALENT\n" << canonical_dump(block_to_json(d.witness->g));
          return 0;
        case IsoDecision::Kind::Inequivalent:
          std::cout << "INEQUIVALENT " << d.reason << "\n";
          return 1;
        case IsoDecision::Kind::Unknown:
          std::cout << "UNKNOWN\n";
          return 2;
      }
    } else if (*sigma) {
      StandardSpec a = standard_of(parse_spec_file(left_path));
      StandardSpec b = standard_of(parse_spec_file(right_path));
      std::optional<IsoWitness> w;
      if (!g_path.empty()) {
        w = build_sigma(block_from_json(Json::parse(read_file(g_path)), a.field), a, b);
      } else {
        IsoDecision d = decide_isomorphic(a, b, budget);
        if (d.kind == IsoDecision::Kind::Inequivalent) {
          std::cout << "INEQUIVALENT " << d.reason << "\n";
          return 1;
        }
        if (d.kind == IsoDecision::Kind::Unknown) {
          std::cout << "UNKNOWN\n";
          return 2;
        }
        w = d.witness;
      }
      std::cout << canonical_dump(witt_to_json(w->map(load_witt(element_path, w->src))));
    } else if (*self) {
      SelfcheckResult res = run_selfcheck(seed);
      std::cout << res.report;
      return res.passed ? 0 : 1;
    }
  } catch (const error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  } catch (const Json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  }
  return 0;
}
