#ifndef WITT_IO_HPP
#define WITT_IO_HPP

#include <json.hpp>
#include <string>

#include "witt/certificate.hpp"
#include "witt/classifier.hpp"

namespace witt {

using Json = nlohmann::json;

/// Canonical text form: sorted keys, two-space indent, one trailing newline.
std::string canonical_dump(const Json& j);

// scalars: "p/q" for the rationals, ["p/q", ...] power-basis coordinates above
Json scalar_to_json(const Scalar& s);
Scalar scalar_from_json(const Json& j, const FieldPtr& f);
std::string scalar_text(const Scalar& s);
Scalar scalar_from_text(const std::string& s, const FieldPtr& f);

Json vector_to_json(const GroupVector& v);
GroupVector vector_from_json(const Json& j, const FieldPtr& f);
Json matrix_to_json(const Matrix<Scalar>& m);
Matrix<Scalar> matrix_from_json(const Json& j, const FieldPtr& f);

/// Either construction shape, as parsed from a spec document.
struct ParsedSpec {
  std::optional<StandardSpec> standard;
  std::optional<RawSpec> raw;

  bool is_raw() const { return raw.has_value(); }
  ContextPtr context() const;
};

Json spec_to_json(const StandardSpec& s);
Json spec_to_json(const RawSpec& s);
Json spec_to_json(const ParsedSpec& s);
ParsedSpec spec_from_json(const Json& j);
ParsedSpec parse_spec_text(const std::string& text);
ParsedSpec parse_spec_file(const std::string& path);

Json element_to_json(const AlgebraElement& u);
AlgebraElement element_from_json(const Json& j, const ContextPtr& ctx);
Json witt_to_json(const WittElement& w);
WittElement witt_from_json(const Json& j, const ContextPtr& ctx);

/// Line format, one step per line:
///   MUL <scalar>;<m1,...>;<c1,...>
///   DER <index> SHIFT <scalar>
///   SCALE <scalar>
std::string certificate_text(const Certificate& c);
std::vector<CertificateStep> certificate_steps_from_text(const std::string& text,
                                                         const ContextPtr& ctx);

std::string read_file(const std::string& path);

}  // namespace witt

#endif
