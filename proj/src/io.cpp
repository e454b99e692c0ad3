#include "witt/io.hpp"

#include <fstream>
#include <sstream>

namespace witt {

std::string canonical_dump(const Json& j) { return j.dump(2) + "\n"; }

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw error("cannot read '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

namespace {

Rational rational_from_json(const Json& j) {
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (j.is_string()) return parse_rational(j.get<std::string>());
  throw error("expected a rational: integer or \"p/q\" string");
}

[[noreturn]] void fail_at(const std::string& where, const std::string& msg) {
  throw error(where + ": " + msg);
}

const Json& require(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key))
    throw error(std::string("missing field '") + key + "'");
  return j.at(key);
}

}  // namespace

Json scalar_to_json(const Scalar& s) {
  const auto& c = s.coeffs();
  if (c.size() <= 1) return Json(rational_str(c.empty() ? Rational(0) : c[0]));
  Json arr = Json::array();
  for (const auto& r : c) arr.push_back(rational_str(r));
  return arr;
}

Scalar scalar_from_json(const Json& j, const FieldPtr& f) {
  std::size_t d = static_cast<std::size_t>(f->degree());
  std::vector<Rational> c(d, Rational(0));
  if (j.is_array()) {
    if (j.size() > d) throw error("scalar has more coordinates than the field degree");
    for (std::size_t i = 0; i < j.size(); ++i) c[i] = rational_from_json(j[i]);
  } else {
    c[0] = rational_from_json(j);
  }
  return Scalar(f, std::move(c));
}

std::string scalar_text(const Scalar& s) { return s.str(); }

Scalar scalar_from_text(const std::string& s, const FieldPtr& f) {
  std::size_t d = static_cast<std::size_t>(f->degree());
  std::vector<Rational> c(d, Rational(0));
  if (!s.empty() && s.front() == '[') {
    if (s.back() != ']') throw error("unterminated scalar '" + s + "'");
    std::istringstream in(s.substr(1, s.size() - 2));
    std::string part;
    std::size_t i = 0;
    while (std::getline(in, part, ',')) {
      if (i >= d) throw error("scalar has more coordinates than the field degree");
      c[i++] = parse_rational(part);
    }
  } else {
    c[0] = parse_rational(s);
  }
  return Scalar(f, std::move(c));
}

Json vector_to_json(const GroupVector& v) {
  Json arr = Json::array();
  for (const auto& s : v.coords) arr.push_back(scalar_to_json(s));
  return arr;
}

GroupVector vector_from_json(const Json& j, const FieldPtr& f) {
  if (!j.is_array()) throw error("expected a coordinate array");
  std::vector<Scalar> c;
  for (const auto& e : j) c.push_back(scalar_from_json(e, f));
  return GroupVector(std::move(c));
}

Json matrix_to_json(const Matrix<Scalar>& m) {
  Json arr = Json::array();
  for (std::size_t i = 0; i < m.rows; ++i) {
    Json row = Json::array();
    for (std::size_t jx = 0; jx < m.cols; ++jx) row.push_back(scalar_to_json(m[i][jx]));
    arr.push_back(std::move(row));
  }
  return arr;
}

Matrix<Scalar> matrix_from_json(const Json& j, const FieldPtr& f) {
  if (!j.is_array()) throw error("expected a matrix (array of rows)");
  std::size_t rows = j.size(), cols = rows ? j[0].size() : 0;
  Matrix<Scalar> m(rows, cols, Scalar::zero(f));
  for (std::size_t i = 0; i < rows; ++i) {
    if (j[i].size() != cols) throw error("ragged matrix rows");
    for (std::size_t c = 0; c < cols; ++c) m[i][c] = scalar_from_json(j[i][c], f);
  }
  return m;
}

ContextPtr ParsedSpec::context() const {
  if (standard) return standard->context();
  if (raw) return raw->context();
  throw error("empty spec");
}

namespace {

Json field_to_json(const FieldPtr& f) {
  Json arr = Json::array();
  for (const auto& r : f->min_poly()) arr.push_back(rational_str(r));
  return arr;
}

Json gamma_to_json(const Subgroup& g) {
  Json arr = Json::array();
  for (const auto& b : g.canonical_basis()) arr.push_back(vector_to_json(b));
  return arr;
}

Json cocycle_to_json(const Cocycle& c) {
  Json arr = Json::array();
  for (const auto& bp : c.base_points) {
    Json s = Json::array();
    for (std::size_t i = 0; i < bp.S.rows; ++i) {
      Json row = Json::array();
      for (std::size_t jx = 0; jx < bp.S.cols; ++jx)
        row.push_back(bp.S[i][jx].get_str());
      s.push_back(std::move(row));
    }
    arr.push_back(Json{{"S", std::move(s)}, {"lambda", scalar_to_json(bp.lambda)}});
  }
  return arr;
}

Cocycle cocycle_from_json(const Json& j, const FieldPtr& f) {
  Cocycle c;
  if (!j.is_array()) throw error("cocycle: expected an array of base points");
  for (const auto& bp : j) {
    Scalar lambda = scalar_from_json(require(bp, "lambda"), f);
    const Json& sj = require(bp, "S");
    std::size_t n = sj.size();
    Matrix<Int> S(n, n);
    for (std::size_t i = 0; i < n; ++i) {
      if (sj[i].size() != n) throw error("cocycle: S must be square");
      for (std::size_t jx = 0; jx < n; ++jx) {
        const Json& e = sj[i][jx];
        S[i][jx] = e.is_string() ? Int(e.get<std::string>()) : Int(e.get<long>());
      }
    }
    c.base_points.push_back({std::move(lambda), std::move(S)});
  }
  return c;
}

}  // namespace

Json spec_to_json(const StandardSpec& s) {
  Json j{{"field", field_to_json(s.field)},
         {"triple", Json::array({s.l1, s.l2, s.l3})},
         {"gamma", gamma_to_json(s.gamma)}};
  if (!s.cocycle.trivial()) j["cocycle"] = cocycle_to_json(s.cocycle);
  return j;
}

Json spec_to_json(const RawSpec& s) {
  Json j{{"field", field_to_json(s.field)},
         {"raw", Json{{"k1", s.k1}, {"k2", s.k2}, {"mixing", matrix_to_json(s.mixing)}}},
         {"gamma", gamma_to_json(s.gamma)}};
  if (!s.cocycle.trivial()) j["cocycle"] = cocycle_to_json(s.cocycle);
  return j;
}

Json spec_to_json(const ParsedSpec& s) {
  if (s.standard) return spec_to_json(*s.standard);
  if (s.raw) return spec_to_json(*s.raw);
  throw error("empty spec");
}

ParsedSpec spec_from_json(const Json& j) {
  std::vector<Rational> mp;
  for (const auto& e : require(j, "field")) mp.push_back(rational_from_json(e));
  FieldPtr field;
  try {
    field = NumberField::make(mp);
  } catch (const error& e) {
    fail_at("field", e.what());
  }

  Cocycle cocycle;
  if (j.contains("cocycle")) {
    try {
      cocycle = cocycle_from_json(j.at("cocycle"), field);
    } catch (const error& e) {
      fail_at("cocycle", e.what());
    }
  }

  auto read_gamma = [&](std::size_t dim) {
    const Json& gj = require(j, "gamma");
    if (!gj.is_array()) fail_at("gamma", "expected an array of generators");
    std::vector<GroupVector> gens;
    for (std::size_t i = 0; i < gj.size(); ++i) {
      GroupVector v = vector_from_json(gj[i], field);
      if (v.dim() != dim)
        fail_at("gamma[" + std::to_string(i) + "]",
                "generator has length " + std::to_string(v.dim()) + ", expected " +
                    std::to_string(dim));
      gens.push_back(std::move(v));
    }
    return Subgroup::make(field, dim, gens);
  };

  ParsedSpec out;
  if (j.contains("raw")) {
    const Json& rj = j.at("raw");
    RawSpec r;
    r.field = field;
    r.k1 = require(rj, "k1").get<std::size_t>();
    r.k2 = require(rj, "k2").get<std::size_t>();
    r.mixing = rj.contains("mixing") ? matrix_from_json(rj.at("mixing"), field)
                                     : Matrix<Scalar>(r.k2, r.k1, Scalar::zero(field));
    r.gamma = read_gamma(r.k());
    r.cocycle = cocycle;
    try {
      r.validate();
    } catch (const error& e) {
      fail_at("raw", e.what());
    }
    out.raw = std::move(r);
    return out;
  }

  const Json& tj = require(j, "triple");
  if (!tj.is_array() || tj.size() != 3) fail_at("triple", "expected [l1, l2, l3]");
  StandardSpec s;
  s.field = field;
  s.l1 = tj[0].get<std::size_t>();
  s.l2 = tj[1].get<std::size_t>();
  s.l3 = tj[2].get<std::size_t>();
  s.gamma = read_gamma(s.l2 + s.l3);
  s.cocycle = cocycle;
  try {
    s.validate();
  } catch (const error& e) {
    fail_at("spec", e.what());
  }
  out.standard = std::move(s);
  return out;
}

ParsedSpec parse_spec_text(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw error(std::string("spec syntax: ") + e.what());
  }
  return spec_from_json(j);
}

ParsedSpec parse_spec_file(const std::string& path) { return parse_spec_text(read_file(path)); }

Json element_to_json(const AlgebraElement& u) {
  Json terms = Json::array();
  for (const auto& [mono, c] : u.terms()) {
    Json t{{"alpha", vector_to_json(mono.alpha)},
           {"c", scalar_to_json(c)},
           {"m", Json(mono.m)}};
    terms.push_back(std::move(t));
  }
  return Json{{"terms", std::move(terms)}};
}

AlgebraElement element_from_json(const Json& j, const ContextPtr& ctx) {
  AlgebraElement u = AlgebraElement::zero(ctx);
  const Json& terms = require(j, "terms");
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const Json& t = terms[i];
    try {
      Scalar c = scalar_from_json(require(t, "c"), ctx->field());
      std::vector<unsigned> m = require(t, "m").get<std::vector<unsigned>>();
      if (m.size() != ctx->num_t_vars())
        throw error("exponent vector has length " + std::to_string(m.size()) + ", expected " +
                    std::to_string(ctx->num_t_vars()));
      GroupVector alpha = vector_from_json(require(t, "alpha"), ctx->field());
      u = u + AlgebraElement::term(ctx, c, std::move(m), alpha);
    } catch (const error& e) {
      fail_at("terms[" + std::to_string(i) + "]", e.what());
    }
  }
  return u;
}

Json witt_to_json(const WittElement& w) {
  Json coeffs = Json::array();
  for (const auto& u : w.coeffs()) coeffs.push_back(element_to_json(u));
  return Json{{"coeffs", std::move(coeffs)}};
}

WittElement witt_from_json(const Json& j, const ContextPtr& ctx) {
  const Json& coeffs = require(j, "coeffs");
  if (coeffs.size() != ctx->num_standard())
    throw error("coeffs: expected " + std::to_string(ctx->num_standard()) + " entries, got " +
                std::to_string(coeffs.size()));
  std::vector<AlgebraElement> c;
  for (const auto& e : coeffs) c.push_back(element_from_json(e, ctx));
  return WittElement(ctx, std::move(c));
}

namespace {

std::string int_list(const std::vector<unsigned>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s;
}

std::string int_list(const std::vector<Int>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i].get_str();
  return s;
}

template <typename T>
std::vector<T> parse_int_list(const std::string& s) {
  std::vector<T> out;
  if (s.empty()) return out;
  std::istringstream in(s);
  std::string part;
  while (std::getline(in, part, ',')) {
    if constexpr (std::is_same_v<T, Int>)
      out.push_back(Int(part));
    else
      out.push_back(static_cast<T>(std::stoul(part)));
  }
  return out;
}

}  // namespace

std::string certificate_text(const Certificate& c) {
  std::string out;
  for (const auto& step : c.steps) {
    if (const auto* mul = std::get_if<MulMonomial>(&step)) {
      if (mul->factor.terms().size() != 1) throw error("MUL step must be a single term");
      const auto& [mono, coef] = *mul->factor.terms().begin();
      out += "MUL " + scalar_text(coef) + ";" + int_list(mono.m) + ";" +
             int_list(mono.alpha_coords) + "\n";
    } else if (const auto* der = std::get_if<ApplyShiftedDer>(&step)) {
      if (der->der.kind != Derivation::Kind::Standard)
        throw error("DER step must use a standard index");
      out += "DER " + std::to_string(der->der.index) + " SHIFT " + scalar_text(der->shift) + "\n";
    } else {
      out += "SCALE " + scalar_text(std::get<Scale>(step).c) + "\n";
    }
  }
  return out;
}

std::vector<CertificateStep> certificate_steps_from_text(const std::string& text,
                                                         const ContextPtr& ctx) {
  std::vector<CertificateStep> steps;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string kw;
    ls >> kw;
    try {
      if (kw == "MUL") {
        std::string rest;
        std::getline(ls, rest);
        if (!rest.empty() && rest.front() == ' ') rest.erase(0, 1);
        std::size_t p1 = rest.find(';');
        std::size_t p2 = rest.find(';', p1 == std::string::npos ? p1 : p1 + 1);
        if (p1 == std::string::npos || p2 == std::string::npos)
          throw error("MUL needs <scalar>;<m>;<coords>");
        Scalar c = scalar_from_text(rest.substr(0, p1), ctx->field());
        auto m = parse_int_list<unsigned>(rest.substr(p1 + 1, p2 - p1 - 1));
        auto coords = parse_int_list<Int>(rest.substr(p2 + 1));
        m.resize(ctx->num_t_vars(), 0);
        coords.resize(ctx->gamma().zrank(), Int(0));
        steps.push_back(MulMonomial{AlgebraElement::term_by_coords(ctx, c, m, coords)});
      } else if (kw == "DER") {
        std::size_t index;
        std::string shift_kw, sc;
        ls >> index >> shift_kw >> sc;
        if (shift_kw != "SHIFT") throw error("DER needs 'DER <index> SHIFT <scalar>'");
        steps.push_back(
            ApplyShiftedDer{Derivation::standard(index), scalar_from_text(sc, ctx->field())});
      } else if (kw == "SCALE") {
        std::string sc;
        ls >> sc;
        steps.push_back(Scale{scalar_from_text(sc, ctx->field())});
      } else {
        throw error("unknown step '" + kw + "'");
      }
    } catch (const error& e) {
      fail_at("line " + std::to_string(lineno), e.what());
    }
  }
  return steps;
}

}  // namespace witt
