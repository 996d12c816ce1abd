#pragma once

// Command-line front end. Exact values are printed as decimal integers or
// p/q text, structured results as JSON, comb atoms as CSV.
//
// Exit codes: 0 success, 1 mathematical failure (pole, divergence, term
// cap; JSON error object on stdout), 2 usage or parse error (one line on
// stderr).

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "dobinski/acceptance.hpp"
#include "dobinski/dobinski_series.hpp"
#include "dobinski/error.hpp"
#include "dobinski/exact_core.hpp"
#include "dobinski/genfun.hpp"
#include "dobinski/moment_comb.hpp"
#include "dobinski/real.hpp"
#include "dobinski/text.hpp"

namespace dobinski::cli {

using nlohmann::ordered_json;

/// 256 bits unless DOBINSKI_BITS says otherwise.
inline long default_bits() {
  if (const char* env = std::getenv("DOBINSKI_BITS")) {
    try {
      const long bits = std::stol(env);
      if (bits >= 16) return bits;
    } catch (const std::exception&) {
    }
  }
  return kDefaultBits;
}

inline ordered_json to_json(const EvalResult& r) {
  return ordered_json{{"value", r.value.to_string()},
                      {"trunc_bound", r.trunc_bound.to_string()},
                      {"terms_used", r.terms_used},
                      {"precision_bits", r.precision_bits}};
}

inline ordered_json to_json(const NormalForm& nf) {
  ordered_json j = ordered_json::object();
  for (std::size_t k = 0; k < nf.coeffs.size(); ++k)
    if (nf.coeffs[k] != 0) j[std::to_string(k)] = format_rational(nf.coeffs[k]);
  return j;
}

inline ordered_json error_json(const Error& e) {
  ordered_json j{{"error", std::string(to_string(e.kind()))}, {"detail", e.what()}};
  if (e.index()) j["k"] = *e.index();
  return j;
}

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

namespace detail {

struct Options {
  long bits = default_bits();
  std::string out_file;
  std::size_t n = 0;
  std::optional<std::size_t> k;
  std::string poly;
  std::string x;
  std::string lambda;
  std::string scale;
  std::string ymin;
  std::string ymax;
  std::string grid = "small";
  double tol = 1e-12;
  double pole_tol = 1e-9;
  double mass_tol = 1e-12;
  bool restricted = false;
  bool classify = false;
};

inline int run_stirling(const Options& o, std::ostream& os) {
  if (o.k) {
    os << stirling2(o.n, *o.k).get_str() << '\n';
    return 0;
  }
  const auto& row = StirlingTriangle::shared().row(o.n);
  for (std::size_t k = 0; k < row.size(); ++k) os << (k ? " " : "") << row[k].get_str();
  os << '\n';
  return 0;
}

inline int run_bell(const Options& o, std::ostream& os) {
  if (o.x.empty()) {
    os << (o.restricted ? restricted_bell(o.n) : bell_number(o.n)).get_str() << '\n';
    return 0;
  }
  const mpq_class x = parse_rational(o.x);
  const PolynomialQ poly = o.restricted ? restricted_bell_polynomial(o.n) : bell_polynomial(o.n);
  os << format_rational(poly(x)) << '\n';
  return 0;
}

inline int run_stirling_type(const Options& o, std::ostream& os) {
  const HamiltonianSpec h(parse_poly(o.poly));
  os << to_json(stirling_type(h, o.n)).dump() << '\n';
  return 0;
}

inline SeriesSpec series_spec(const Options& o) {
  PolynomialQ p = parse_poly(o.poly);
  mpq_class x = parse_rational(o.x);
  if (o.scale.empty()) return SeriesSpec::automatic(std::move(p), std::move(x));
  return SeriesSpec::with_scale(std::move(p), std::move(x), Real::parse(o.scale, o.bits));
}

inline int run_dobinski(const Options& o, std::ostream& os) {
  os << to_json(eval_bell_type(series_spec(o), o.n, o.tol, EvalOptions{o.bits})).dump() << '\n';
  return 0;
}

inline int run_genfun(const Options& o, GenFunKind kind, std::ostream& os) {
  const SeriesSpec spec = series_spec(o);
  const mpq_class lambda = parse_rational(o.lambda);
  const EvalResult r = kind == GenFunKind::egf
                           ? egf_eval(spec, lambda, o.tol, EvalOptions{o.bits})
                           : ogf_eval(spec, lambda, o.tol, OgfOptions{EvalOptions{o.bits}, o.pole_tol});
  os << to_json(r).dump() << '\n';
  return 0;
}

inline int run_comb(const Options& o, std::ostream& os) {
  const SeriesSpec spec = series_spec(o);
  const bool ranged = !o.ymin.empty() || !o.ymax.empty();
  if (o.classify) os << to_string(classify(spec.p)) << '\n';
  if (o.classify && !ranged) return 0;
  const DiracComb comb = build_comb(spec, o.mass_tol, CombOptions{o.bits});
  if (!ranged) {
    write_comb_csv(os, export_comb(comb));
    return 0;
  }
  // An open end of the range extends past every retained atom.
  mpq_class lo = o.ymin.empty() ? mpq_class(0) : parse_rational(o.ymin);
  mpq_class hi = o.ymax.empty() ? mpq_class(0) : parse_rational(o.ymax);
  for (const auto& a : comb.atoms()) {
    if (o.ymin.empty() && a.location - 1 < lo) lo = a.location - 1;
    if (o.ymax.empty() && a.location + 1 > hi) hi = a.location + 1;
  }
  write_comb_csv(os, export_comb(comb, lo, hi));
  return 0;
}

inline int run_verify(const Options& o, std::ostream& os) {
  if (o.grid != "small" && o.grid != "full") throw std::invalid_argument("--grid must be small or full");
  const auto grid = o.grid == "full" ? acceptance::Grid::full : acceptance::Grid::small;
  const auto results = acceptance::run_all(grid, [](const std::vector<std::string>& a, std::ostream& out,
                                                    std::ostream& err) { return dispatch(a, out, err); });
  return acceptance::print_report(os, results) ? 0 : 1;
}

}  // namespace detail

/// Parses `args` (without the program name) and runs one subcommand.
inline int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  detail::Options o;
  CLI::App app{"Bell-type numbers, Dobinski series, Dirac combs and generating functions", "dobinski"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--bits", o.bits, "working precision in bits (env DOBINSKI_BITS)")->check(CLI::Range(16L, 1L << 20));
  app.add_option("--out", o.out_file, "write output to FILE instead of stdout");

  auto* stirling = app.add_subcommand("stirling", "Stirling numbers of the second kind S(n,k) or row n");
  stirling->add_option("--n", o.n)->required();
  stirling->add_option("--k", o.k);

  auto* bell = app.add_subcommand("bell", "Bell number B(n), or Bell polynomial B(n,x) with --x");
  bell->add_option("--n", o.n)->required();
  bell->add_option("--x", o.x, "exact rational p/q");
  bell->add_flag("--restricted", o.restricted, "partitions without singletons");

  auto* st = app.add_subcommand("stirling-type", "normal form of H(a^dagger a)^n as a JSON map k -> S_H(n,k)");
  st->add_option("--poly", o.poly, "polynomial as degree:coefficient pairs")->required();
  st->add_option("--n", o.n)->required();

  auto* dob = app.add_subcommand("dobinski", "Dobinski series sum_k P(k)^n x^k/(s k!)");
  dob->add_option("--poly", o.poly)->required();
  dob->add_option("--n", o.n)->required();
  dob->add_option("--x", o.x)->required();
  dob->add_option("--tol", o.tol, "relative tolerance");
  dob->add_option("--scale", o.scale, "explicit scale s (default e^x)");

  std::vector<CLI::App*> genfuns;
  for (const char* name : {"egf", "ogf"}) {
    auto* g = app.add_subcommand(name, std::string(name) + " of the Bell-type sequence at lambda");
    g->add_option("--poly", o.poly)->required();
    g->add_option("--x", o.x)->required();
    g->add_option("--lambda", o.lambda)->required();
    g->add_option("--tol", o.tol);
    g->add_option("--scale", o.scale);
    genfuns.push_back(g);
  }
  genfuns[1]->add_option("--pole-tol", o.pole_tol);

  auto* comb = app.add_subcommand("comb", "Dirac comb atoms as CSV and/or moment-problem class");
  comb->add_option("--poly", o.poly)->required();
  comb->add_option("--x", o.x)->required();
  comb->add_option("--ymin", o.ymin);
  comb->add_option("--ymax", o.ymax);
  comb->add_option("--mass-tol", o.mass_tol);
  comb->add_option("--scale", o.scale);
  comb->add_flag("--classify", o.classify);

  auto* verify = app.add_subcommand("verify", "run the acceptance suite");
  verify->add_option("--grid", o.grid, "small or full");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }

  std::ostringstream buffer;
  int code = 0;
  try {
    if (stirling->parsed()) code = detail::run_stirling(o, buffer);
    else if (bell->parsed()) code = detail::run_bell(o, buffer);
    else if (st->parsed()) code = detail::run_stirling_type(o, buffer);
    else if (dob->parsed()) code = detail::run_dobinski(o, buffer);
    else if (genfuns[0]->parsed()) code = detail::run_genfun(o, GenFunKind::egf, buffer);
    else if (genfuns[1]->parsed()) code = detail::run_genfun(o, GenFunKind::ogf, buffer);
    else if (comb->parsed()) code = detail::run_comb(o, buffer);
    else if (verify->parsed()) code = detail::run_verify(o, buffer);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::invalid_argument) {
      err << "error: " << e.what() << '\n';
      return 2;
    }
    out << error_json(e).dump() << '\n';
    return 1;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }

  if (o.out_file.empty()) {
    out << buffer.str();
  } else {
    std::ofstream file(o.out_file);
    if (!file) {
      err << "error: cannot open " << o.out_file << '\n';
      return 2;
    }
    file << buffer.str();
  }
  return code;
}

}  // namespace dobinski::cli
