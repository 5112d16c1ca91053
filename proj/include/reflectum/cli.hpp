#pragma once

// Command-line front end. Exit codes: 0 yes/ok, 1 no/fail, 2 unknown,
// 3 usage or parse error, 4 library error, 5 internal failure.

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "reflectum/batch.hpp"
#include "reflectum/paper_check.hpp"
#include "reflectum/serialize.hpp"

namespace reflectum::cli {

using serialize::json;

enum Exit : int { kYes = 0, kNo = 1, kUnknown = 2, kUsage = 3, kLibrary = 4, kInternal = 5 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace detail {

inline std::string trim(std::string s) {
  auto b = s.find_first_not_of(" \t");
  auto e = s.find_last_not_of(" \t");
  return b == std::string::npos ? "" : s.substr(b, e - b + 1);
}

inline reflect::ReflectType parse_type(const std::string& text) {
  auto comma = text.find(',');
  if (comma == std::string::npos) throw UsageError("--type expects k,m");
  try {
    return reflect::ReflectType::make(std::stol(text.substr(0, comma)), std::stol(text.substr(comma + 1)));
  } catch (const std::logic_error&) {
    throw UsageError("--type expects k,m with integers, got " + text);
  }
}

/// "(x1,y1);(x2,y2)" with optional parentheses.
inline std::vector<std::pair<Rational, Rational>> parse_generators(const std::string& text) {
  std::vector<std::pair<Rational, Rational>> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ';')) {
    item = trim(item);
    if (item.empty()) continue;
    if (item.front() == '(' && item.back() == ')') item = item.substr(1, item.size() - 2);
    auto comma = item.find(',');
    if (comma == std::string::npos || item.find(',', comma + 1) != std::string::npos)
      throw UsageError("malformed generator '" + item + "', expected (x,y)");
    try {
      out.emplace_back(parse_rational(trim(item.substr(0, comma))), parse_rational(trim(item.substr(comma + 1))));
    } catch (const Error& e) {
      throw UsageError("malformed generator '" + item + "': " + e.what());
    }
  }
  if (out.empty()) throw UsageError("--generators given but no points parsed");
  return out;
}

inline Integer parse_int_arg(const std::string& text, const char* what) {
  try {
    return parse_integer(text);
  } catch (const Error&) {
    throw UsageError(std::string(what) + " must be an integer, got " + text);
  }
}

inline Rational parse_rational_arg(const std::string& text, const char* what) {
  try {
    return parse_rational(text);
  } catch (const Error&) {
    throw UsageError(std::string(what) + " must be a rational num/den, got " + text);
  }
}

inline Integer default_s_budget() {
  const char* env = std::getenv("REFLECTUM_S_BUDGET");
  if (!env || !*env) return 1000;
  Integer s = parse_int_arg(env, "REFLECTUM_S_BUDGET");
  if (s < 1) throw UsageError("REFLECTUM_S_BUDGET must be positive");
  return s;
}

inline int exit_for(reflect::Status s) {
  switch (s) {
    case reflect::Status::Yes: return kYes;
    case reflect::Status::No: return kNo;
    case reflect::Status::Unknown: return kUnknown;
  }
  return kInternal;
}

inline std::string element_list(const std::vector<descent::SelmerElement>& es) {
  std::string s;
  for (const auto& e : es) s += (s.empty() ? "" : " ") + e.to_string();
  return s;
}

inline void print_verdict(std::ostream& out, const reflect::Verdict& v) {
  out << "n = " << v.n.get_str() << ", type (" << v.type.to_string() << "): " << reflect::to_string(v.status) << '\n';
  if (v.certificate) {
    const auto& c = *v.certificate;
    out << "certificate: " << reflect::to_string(c.kind);
    if (!c.hypothesis.empty()) out << " (" << c.hypothesis << ")";
    out << '\n';
    if (c.special_i) out << "special form: i = " << *c.special_i << ", T0 = " << c.special_t0->get_str() << '\n';
  }
  if (const auto* w = v.witness()) {
    out << "witness: t = " << to_string(w->t) << ", u = " << to_string(w->u) << ", v = " << to_string(w->v);
    if (w->n != v.n) out << " (for n = " << w->n.get_str() << ")";
    out << '\n';
  }
  if (v.obstruction) {
    const auto& o = *v.obstruction;
    out << "obstruction: " << reflect::to_string(o.kind);
    if (o.rule) out << " / " << reflect::to_string(*o.rule);
    if (o.prime) out << ", prime " << o.prime->get_str();
    if (o.conditional) out << " (conditional on the supplied generators)";
    out << '\n';
    if (!o.detail.empty()) out << "  " << o.detail << '\n';
    if (!o.kappa_image.empty()) out << "  kappa image: " << element_list(o.kappa_image) << '\n';
  }
  if (v.evidence) {
    const auto& e = *v.evidence;
    if (e.selmer_dim) out << "selmer dim: " << *e.selmer_dim << '\n';
    if (e.rank_lower) out << "rank bounds: " << *e.rank_lower << " <= r <= " << *e.rank_upper << '\n';
    out << "points found: " << e.points_found << '\n';
    if (!e.note.empty()) out << "note: " << e.note << '\n';
  }
}

}  // namespace detail

inline int cmd_classify(const std::string& n_text, const std::string& type_text, const reflect::ClassifyOptions& opts,
                        bool as_json, std::ostream& out) {
  Integer n = detail::parse_int_arg(n_text, "n");
  reflect::ReflectType type = detail::parse_type(type_text);
  auto start = std::chrono::steady_clock::now();
  reflect::Verdict v = reflect::classify(n, type, opts);
  if (as_json) {
    serialize::JobRecord rec{n, type, opts, v, 0};
    rec.timing_ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
    out << serialize::record_to_json(rec).dump() << '\n';
  } else {
    detail::print_verdict(out, v);
  }
  return detail::exit_for(v.status);
}

inline int cmd_selmer(const std::string& n_text, bool as_json, std::ostream& out) {
  Integer n = detail::parse_int_arg(n_text, "n");
  auto sel = descent::selmer_group(n);
  auto crit = descent::criterion_coset(n);
  bool present = sel.contains(crit.front());
  auto cosets = sel.cosets();
  if (as_json) {
    json cj = json::array();
    for (const auto& c : cosets) {
      json elems = json::array();
      for (const auto& e : c) elems.push_back(json::array({serialize::integer_to_json(e.m1.repr()), serialize::integer_to_json(e.m2.repr())}));
      cj.push_back(elems);
    }
    json places = json::array();
    for (const auto& p : sel.places) places.push_back(p.is_infinite() ? json("inf") : serialize::integer_to_json(p.p()));
    out << json{{"n", serialize::integer_to_json(n)}, {"dim", sel.dim}, {"places", places}, {"cosets", cj},
                {"criterion_coset_present", present}}
               .dump()
        << '\n';
    return kYes;
  }
  out << "S2(E_" << n.get_str() << "): dim " << sel.dim << ", " << sel.elements.size() << " elements\n";
  for (const auto& c : cosets) out << "  " << c.front().to_string() << "E[2]: " << detail::element_list(c) << '\n';
  out << "criterion coset " << crit.front().to_string() << "E[2]: " << (present ? "present" : "absent") << '\n';
  return kYes;
}

inline int cmd_verify(const std::string& n_text, const std::string& t_text, const std::string& type_text,
                      std::ostream& out) {
  Integer n = detail::parse_int_arg(n_text, "n");
  Rational t = detail::parse_rational_arg(t_text, "t");
  reflect::ReflectType type = detail::parse_type(type_text);
  const auto k = static_cast<unsigned>(type.k);
  Rational tm = arith::pow(t, static_cast<unsigned long>(type.m));
  auto u = arith::exact_root(Rational(n) - tm, k);
  auto v = arith::exact_root(Rational(n) + tm, k);
  if (u && v && reflect::verify_witness({n, type, t, *u, *v})) {
    out << "ok: t = " << to_string(t) << ", u = " << to_string(*u) << ", v = " << to_string(*v) << '\n';
    return kYes;
  }
  out << "not a witness: ";
  if (t <= 0) out << "t must be positive\n";
  else if (!u) out << "n - t^" << type.m << " is not a rational power of order " << k << "\n";
  else if (!v) out << "n + t^" << type.m << " is not a rational power of order " << k << "\n";
  else out << "v^k = +-u^k\n";
  return kNo;
}

inline int cmd_zmap(const std::string& n_text, const std::string& t_text, std::ostream& out, std::ostream& err) {
  Integer n = detail::parse_int_arg(n_text, "n");
  Rational t = detail::parse_rational_arg(t_text, "t");
  Rational z;
  try {
    z = ecurve::zmap(n, t);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::NotInTn) throw;
    err << "error: " << e.what() << '\n';
    return kNo;
  }
  out << "z = " << to_string(z) << '\n';
  out << "sqrt(n - t^2) = " << to_string(*arith::sqrt_exact(Rational(n) - t * t)) << '\n';
  out << "sqrt(n + t^2) = " << to_string(*arith::sqrt_exact(Rational(n) + t * t)) << '\n';
  out << "sqrt(z^2 - n) = " << to_string(*arith::sqrt_exact(z * z - n)) << '\n';
  out << "sqrt(z^2 + n) = " << to_string(*arith::sqrt_exact(z * z + n)) << '\n';
  return kYes;
}

inline int cmd_batch(const std::string& in_path, const std::string& out_path, const std::string& cache_path,
                     unsigned jobs, const reflect::ClassifyOptions& defaults, std::ostream& err) {
  std::ifstream in(in_path);
  if (!in) throw UsageError("cannot read " + in_path);
  std::ofstream out(out_path, std::ios::trunc);
  if (!out) throw UsageError("cannot write " + out_path);
  batch::Cache cache(cache_path);
  auto stats = batch::run(in, out, cache, jobs, defaults, &err);
  err << stats.total << " lines: " << stats.computed << " computed, " << stats.cached << " cached, " << stats.errors
      << " errors\n";
  return stats.errors ? kNo : kYes;
}

inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err);

/// Rows exercising the commands themselves.
inline std::vector<paper_check::Row> command_rows() {
  auto exits = [](std::vector<std::string> args, int code, std::string needle = "") {
    return [args, code, needle] {
      std::ostringstream out, err;
      return run(args, out, err) == code && (needle.empty() || out.str().find(needle) != std::string::npos);
    };
  };
  auto batch_line = [](std::string line, std::string status, std::string needle) {
    return [line, status, needle] {
      std::istringstream in(line + "\n");
      std::ostringstream out;
      batch::Cache cache;
      batch::run(in, out, cache, 1, {});
      json r = json::parse(out.str());
      return r["verdict"]["status"] == status && r.dump().find(needle) != std::string::npos;
    };
  };
  return {
      {"cli-classify", "classify 5 --type 2,2", exits({"classify", "5", "--type", "2,2"}, kYes, "t = 2/1,")},
      {"cli-classify", "classify 5735 --type 2,2", exits({"classify", "5735", "--type", "2,2"}, kNo, "prime 31")},
      {"cli-classify", "classify 7 --type 6,9", exits({"classify", "7", "--type", "6,9"}, kNo, "EulerCube")},
      {"cli-selmer", "selmer 13", exits({"selmer", "13"}, kYes, "dim 3")},
      {"cli-selmer", "selmer 41", exits({"selmer", "41"}, kYes, "(1,41)E[2]")},
      {"cli-selmer", "selmer 205", exits({"selmer", "205"}, kYes, "dim 5")},
      {"cli-verify", "verify 157 t", exits({"verify", "157", paper_check::detail::kT157}, kYes)},
      {"cli-verify", "verify 41 8/5", exits({"verify", "41", "8/5"}, kYes)},
      {"cli-zmap", "zmap 5 2", exits({"zmap", "5", "2"}, kYes, "z = 41/12\n")},
      {"cli-zmap", "zmap 41 8/5", exits({"zmap", "41", "8/5"}, kYes, "915329/81840")},
      {"cli-batch", "batch n = 5", batch_line(R"({"n":5,"type":[2,2]})", "yes", R"("t":"2/1")")},
      {"cli-batch", "batch n = 6", batch_line(R"({"n":6,"type":[2,2]})", "no", "EvenN")},
  };
}

inline int cmd_paper_check(const std::string& filter, std::ostream& out) {
  auto table = paper_check::rows();
  for (auto& r : command_rows()) table.push_back(std::move(r));
  return paper_check::run(std::move(table), out, filter) == 0 ? kYes : kNo;
}

/// `args` excludes the program name.
inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"reflectum: reflecting numbers via 2-descent"};
  app.require_subcommand(1);

  std::string n_text, t_text, type_text = "2,2", gen_text, in_path, out_path, cache_path, filter;
  std::string s_budget_text, point_budget_text;
  long search_bound = reflect::ClassifyOptions{}.search_bound;
  int assert_rank = -1;
  unsigned jobs = std::max(1u, std::thread::hardware_concurrency());
  bool as_json = false;

  auto* classify = app.add_subcommand("classify", "classify n as (k,m)-reflecting");
  classify->add_option("n", n_text)->required();
  classify->add_option("--type", type_text, "k,m (default 2,2)");
  classify->add_option("--s-budget", s_budget_text, "witness search budget");
  classify->add_option("--point-budget", point_budget_text, "point search height bound");
  classify->add_option("--search-bound", search_bound, "integer search bound for general types");
  classify->add_option("--generators", gen_text, "points on E_n, \"(x,y);(x,y)\"");
  classify->add_option("--assert-rank", assert_rank, "asserted Mordell-Weil rank");
  classify->add_flag("--json", as_json);

  auto* selmer = app.add_subcommand("selmer", "2-Selmer group of E_n");
  selmer->add_option("n", n_text)->required();
  selmer->add_flag("--json", as_json);

  auto* verify = app.add_subcommand("verify", "check t as a witness for n");
  verify->add_option("n", n_text)->required();
  verify->add_option("t", t_text)->required();
  verify->add_option("--type", type_text, "k,m (default 2,2)");

  auto* zmap = app.add_subcommand("zmap", "evaluate z(t)");
  zmap->add_option("n", n_text)->required();
  zmap->add_option("t", t_text)->required();

  auto* batch_cmd = app.add_subcommand("batch", "classify a JSONL file");
  batch_cmd->add_option("--in", in_path)->required();
  batch_cmd->add_option("--out", out_path)->required();
  batch_cmd->add_option("--cache", cache_path);
  batch_cmd->add_option("--jobs", jobs)->check(CLI::PositiveNumber);
  batch_cmd->add_option("--s-budget", s_budget_text, "default witness search budget");

  auto* paper = app.add_subcommand("paper-check", "run the worked-example table");
  paper->add_option("--filter", filter, "only rows whose group contains this");

  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kYes;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kYes;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n' << app.help();
    return kUsage;
  }

  try {
    reflect::ClassifyOptions opts;
    opts.s_budget = s_budget_text.empty() ? detail::default_s_budget() : detail::parse_int_arg(s_budget_text, "--s-budget");
    if (opts.s_budget < 1) throw UsageError("--s-budget must be positive");
    if (!point_budget_text.empty()) opts.point_budget = detail::parse_int_arg(point_budget_text, "--point-budget");
    opts.search_bound = search_bound;
    if (!gen_text.empty()) opts.generators = detail::parse_generators(gen_text);
    if (assert_rank >= 0) opts.assert_rank = assert_rank;

    if (*classify) return cmd_classify(n_text, type_text, opts, as_json, out);
    if (*selmer) return cmd_selmer(n_text, as_json, out);
    if (*verify) return cmd_verify(n_text, t_text, type_text, out);
    if (*zmap) return cmd_zmap(n_text, t_text, out, err);
    if (*batch_cmd) return cmd_batch(in_path, out_path, cache_path, jobs, opts, err);
    if (*paper) return cmd_paper_check(filter, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kLibrary;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kInternal;
  }
  return kUsage;
}

inline int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(std::move(args), std::cout, std::cerr);
}

}  // namespace reflectum::cli
