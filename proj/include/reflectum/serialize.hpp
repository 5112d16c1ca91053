#pragma once

// JSON encoding of verdicts and job records. Rationals are always "num/den"
// strings; integers are JSON numbers when they fit in 64 bits, else strings.

#include <cstdint>
#include <string>

#include <json.hpp>

#include "reflectum/reflect.hpp"

namespace reflectum::serialize {

using json = nlohmann::json;

inline constexpr const char* kToolVersion = "0.1.0";

inline json integer_to_json(const Integer& z) {
  if (z.fits_slong_p()) return json(static_cast<std::int64_t>(z.get_si()));
  return json(z.get_str());
}

inline Integer integer_from_json(const json& j) {
  if (j.is_number_integer()) return Integer(std::to_string(j.get<std::int64_t>()));
  if (j.is_string()) return parse_integer(j.get<std::string>());
  throw Error(ErrorCode::ParseError, "expected an integer, got " + j.dump());
}

inline json rational_to_json(const Rational& q) { return json(to_string(q)); }

inline Rational rational_from_json(const json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(integer_from_json(j));
  throw Error(ErrorCode::ParseError, "expected a rational string, got " + j.dump());
}

inline json type_to_json(const reflect::ReflectType& t) { return json::array({t.k, t.m}); }

inline reflect::ReflectType type_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number_integer() || !j[1].is_number_integer())
    throw Error(ErrorCode::ParseError, "type must be [k, m]");
  return reflect::ReflectType::make(j[0].get<long>(), j[1].get<long>());
}

inline json witness_to_json(const reflect::WitnessT& w) {
  return {{"n", integer_to_json(w.n)},
          {"type", type_to_json(w.type)},
          {"t", rational_to_json(w.t)},
          {"u", rational_to_json(w.u)},
          {"v", rational_to_json(w.v)}};
}

inline reflect::WitnessT witness_from_json(const json& j) {
  return {integer_from_json(j.at("n")), type_from_json(j.at("type")), rational_from_json(j.at("t")),
          rational_from_json(j.at("u")), rational_from_json(j.at("v"))};
}

namespace detail {

template <class Enum, std::size_t N>
Enum enum_from(const std::string& s, const Enum (&all)[N]) {
  for (auto e : all) {
    if (reflect::to_string(e) == s) return e;
  }
  throw Error(ErrorCode::ParseError, "unknown name " + s);
}

inline constexpr reflect::CertificateKind kCertificates[] = {
    reflect::CertificateKind::Witness,        reflect::CertificateKind::TheoremP5Mod8,
    reflect::CertificateKind::TheoremTian13,  reflect::CertificateKind::RankTwoWitness,
    reflect::CertificateKind::Satge,          reflect::CertificateKind::SpecialForm};

inline constexpr reflect::ObstructionKind kObstructions[] = {
    reflect::ObstructionKind::PrimeDivisor3Mod4, reflect::ObstructionKind::EvenN,
    reflect::ObstructionKind::NegativeEvenK,     reflect::ObstructionKind::KappaImageExcludes,
    reflect::ObstructionKind::GcdAtLeast3,       reflect::ObstructionKind::EulerCube,
    reflect::ObstructionKind::EulerQuartic,      reflect::ObstructionKind::DenesRule,
    reflect::ObstructionKind::NotSquarefreeNormalized};

inline constexpr reflect::Status kStatuses[] = {reflect::Status::Yes, reflect::Status::No, reflect::Status::Unknown};

inline json pair_to_json(const std::pair<Rational, Rational>& p) {
  return json::array({rational_to_json(p.first), rational_to_json(p.second)});
}

inline std::pair<Rational, Rational> pair_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2) throw Error(ErrorCode::ParseError, "expected a pair, got " + j.dump());
  return {rational_from_json(j[0]), rational_from_json(j[1])};
}

}  // namespace detail

inline json verdict_to_json(const reflect::Verdict& v) {
  json out = {{"status", std::string(reflect::to_string(v.status))}};
  if (v.certificate) {
    const auto& c = *v.certificate;
    json cj = {{"kind", std::string(reflect::to_string(c.kind))}, {"hypothesis", c.hypothesis}};
    if (c.witness) cj["witness"] = witness_to_json(*c.witness);
    if (c.special_i) cj["special_i"] = *c.special_i;
    if (c.special_t0) cj["special_t0"] = integer_to_json(*c.special_t0);
    out["certificate"] = cj;
  }
  if (v.obstruction) {
    const auto& o = *v.obstruction;
    json oj = {{"kind", std::string(reflect::to_string(o.kind))}, {"detail", o.detail}, {"conditional", o.conditional}};
    if (o.rule) oj["rule"] = std::string(reflect::to_string(*o.rule));
    if (o.prime) oj["prime"] = integer_to_json(*o.prime);
    if (o.core) oj["core"] = integer_to_json(*o.core);
    if (!o.generators.empty()) {
      json g = json::array();
      for (const auto& p : o.generators) g.push_back(detail::pair_to_json(p));
      oj["generators"] = g;
    }
    if (!o.kappa_image.empty()) {
      json k = json::array();
      for (const auto& e : o.kappa_image) k.push_back(json::array({integer_to_json(e.m1.repr()), integer_to_json(e.m2.repr())}));
      oj["kappa_image"] = k;
    }
    out["obstruction"] = oj;
  }
  if (v.evidence) {
    const auto& e = *v.evidence;
    json ej = {{"points_found", e.points_found}, {"note", e.note}};
    if (e.selmer_dim) ej["selmer_dim"] = *e.selmer_dim;
    if (e.rank_lower) ej["rank_lower"] = *e.rank_lower;
    if (e.rank_upper) ej["rank_upper"] = *e.rank_upper;
    if (e.s_budget) ej["s_budget"] = integer_to_json(*e.s_budget);
    if (e.point_budget) ej["point_budget"] = integer_to_json(*e.point_budget);
    if (e.search_bound) ej["search_bound"] = *e.search_bound;
    out["evidence"] = ej;
  }
  return out;
}

/// Inverse of verdict_to_json given the job's n and type.
inline reflect::Verdict verdict_from_json(const json& j, const Integer& n, const reflect::ReflectType& type) {
  reflect::Verdict v;
  v.n = n;
  v.type = type;
  v.status = detail::enum_from(j.at("status").get<std::string>(), detail::kStatuses);
  if (j.contains("certificate")) {
    const auto& cj = j["certificate"];
    reflect::Certificate c;
    c.kind = detail::enum_from(cj.at("kind").get<std::string>(), detail::kCertificates);
    c.hypothesis = cj.value("hypothesis", "");
    if (cj.contains("witness")) c.witness = witness_from_json(cj["witness"]);
    if (cj.contains("special_i")) c.special_i = cj["special_i"].get<long>();
    if (cj.contains("special_t0")) c.special_t0 = integer_from_json(cj["special_t0"]);
    v.certificate = c;
  }
  if (j.contains("obstruction")) {
    const auto& oj = j["obstruction"];
    reflect::Obstruction o;
    o.kind = detail::enum_from(oj.at("kind").get<std::string>(), detail::kObstructions);
    o.detail = oj.value("detail", "");
    o.conditional = oj.value("conditional", false);
    if (oj.contains("rule")) o.rule = detail::enum_from(oj["rule"].get<std::string>(), detail::kObstructions);
    if (oj.contains("prime")) o.prime = integer_from_json(oj["prime"]);
    if (oj.contains("core")) o.core = integer_from_json(oj["core"]);
    if (oj.contains("generators")) {
      for (const auto& g : oj["generators"]) o.generators.push_back(detail::pair_from_json(g));
    }
    if (oj.contains("kappa_image")) {
      for (const auto& e : oj["kappa_image"])
        o.kappa_image.push_back(descent::SelmerElement::make(integer_from_json(e.at(0)), integer_from_json(e.at(1))));
    }
    v.obstruction = o;
  }
  if (j.contains("evidence")) {
    const auto& ej = j["evidence"];
    reflect::Evidence e;
    e.points_found = ej.value("points_found", std::size_t{0});
    e.note = ej.value("note", "");
    if (ej.contains("selmer_dim")) e.selmer_dim = ej["selmer_dim"].get<int>();
    if (ej.contains("rank_lower")) e.rank_lower = ej["rank_lower"].get<int>();
    if (ej.contains("rank_upper")) e.rank_upper = ej["rank_upper"].get<int>();
    if (ej.contains("s_budget")) e.s_budget = integer_from_json(ej["s_budget"]);
    if (ej.contains("point_budget")) e.point_budget = integer_from_json(ej["point_budget"]);
    if (ej.contains("search_bound")) e.search_bound = ej["search_bound"].get<long>();
    v.evidence = e;
  }
  return v;
}

inline json options_to_json(const reflect::ClassifyOptions& o) {
  json out = {{"s_budget", integer_to_json(o.s_budget)},
              {"point_budget", integer_to_json(o.point_budget)},
              {"search_bound", o.search_bound}};
  json g = json::array();
  for (const auto& p : o.generators) g.push_back(detail::pair_to_json(p));
  out["generators"] = g;
  if (o.assert_rank) out["assert_rank"] = *o.assert_rank;
  return out;
}

/// Missing keys take the values in `defaults`.
inline reflect::ClassifyOptions options_from_json(const json& j, const reflect::ClassifyOptions& defaults) {
  if (!j.is_object()) throw Error(ErrorCode::ParseError, "options must be an object");
  reflect::ClassifyOptions o = defaults;
  for (const auto& [key, value] : j.items()) {
    if (key == "s_budget") o.s_budget = integer_from_json(value);
    else if (key == "point_budget") o.point_budget = integer_from_json(value);
    else if (key == "search_bound") o.search_bound = value.get<long>();
    else if (key == "assert_rank") o.assert_rank = value.get<int>();
    else if (key == "generators") {
      o.generators.clear();
      for (const auto& g : value) o.generators.push_back(detail::pair_from_json(g));
    } else {
      throw Error(ErrorCode::ParseError, "unknown option " + key);
    }
  }
  return o;
}

struct JobRecord {
  Integer n;
  reflect::ReflectType type;
  reflect::ClassifyOptions options;
  reflect::Verdict verdict;
  std::int64_t timing_ms = 0;
  std::string tool_version = kToolVersion;
};

inline json record_to_json(const JobRecord& r) {
  return {{"n", integer_to_json(r.n)},
          {"type", type_to_json(r.type)},
          {"options", options_to_json(r.options)},
          {"verdict", verdict_to_json(r.verdict)},
          {"timing_ms", r.timing_ms},
          {"tool_version", r.tool_version}};
}

inline JobRecord record_from_json(const json& j) {
  JobRecord r;
  r.n = integer_from_json(j.at("n"));
  r.type = type_from_json(j.at("type"));
  r.options = options_from_json(j.at("options"), {});
  r.verdict = verdict_from_json(j.at("verdict"), r.n, r.type);
  r.timing_ms = j.at("timing_ms").get<std::int64_t>();
  r.tool_version = j.at("tool_version").get<std::string>();
  return r;
}

}  // namespace reflectum::serialize
