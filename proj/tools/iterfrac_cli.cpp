// iterfrac command-line front end: discrete and fractional iterates of
// invertible power series, the iterative logarithm, q-analog utilities,
// and the cross-validation battery.

#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "iterfrac/iterfrac.hpp"

namespace {

using namespace iterfrac;

struct SeriesOptions {
  std::string path;
  std::string preset;
  std::string mode = "exact";
  int order = Series::kDefaultOrder;
};

Mode parse_mode(const std::string& m) {
  if (m == "exact") return Mode::exact;
  if (m == "numeric") return Mode::numeric;
  throw ParseError("mode must be 'exact' or 'numeric'");
}

Series load_series(const SeriesOptions& opt) {
  Mode m = parse_mode(opt.mode);
  if (!opt.path.empty()) {
    std::ifstream in(opt.path);
    if (!in) throw ParseError("cannot open series file '" + opt.path + "'");
    Json j = Json::parse(in);
    Series f = series_from_json(j);
    if (f.mode() != m && m == Mode::numeric) {
      Series g(m, f.order());
      for (int n = 0; n <= f.order(); ++n) g.set_coeff(n, f.coeff(n).to_numeric());
      return g.truncated(opt.order);
    }
    if (f.mode() != m) throw ModeMismatch("file series is numeric but mode is exact");
    return f.truncated(opt.order);
  }
  if (!opt.preset.empty()) return preset_series(opt.preset, m, opt.order);
  throw ParseError("need --series <path> or --preset <name>");
}

void add_series_flags(CLI::App* cmd, SeriesOptions& opt) {
  cmd->add_option("--series", opt.path, "series JSON file");
  cmd->add_option("--preset", opt.preset,
                  "named series: geometric, moebius(q), linear(q), quad");
  cmd->add_option("--mode", opt.mode, "scalar mode: exact | numeric");
  cmd->add_option("--order", opt.order, "truncation order N");
}

std::string render_table(const CoeffTriangle& t) {
  std::vector<std::vector<std::string>> cells;
  std::size_t width = 1;
  for (int n = 0; n <= t.size(); ++n) {
    std::vector<std::string> row;
    for (int k = 0; k <= n; ++k) {
      std::string s = t.at(n, k).str();
      width = std::max(width, s.size());
      row.push_back(s);
    }
    cells.push_back(row);
  }
  std::ostringstream os;
  for (const auto& row : cells) {
    for (const auto& cell : row) os << std::setw(static_cast<int>(width) + 2) << cell;
    os << "\n";
  }
  return os.str();
}

std::vector<Method> applicable_methods(const Series& f, const Exponent& s) {
  std::vector<Method> out;
  bool discrete = s.is_integer_kind() && s.as_int() >= 0;
  bool natural = discrete && s.as_int() <= Series::kMaxOrder;  // extracted-form pole set
  bool unitary = is_unitary_q(f.q());
  bool numeric_s = s.kind() == Exponent::Kind::numeric;
  bool qpath = f.mode() == Mode::numeric || (!numeric_s && exact_power_feasible(f.q(), s));
  if (discrete) {
    out.push_back(Method::matrix);
    out.push_back(Method::monkam);
    out.push_back(Method::bpp);
  }
  if (unitary && (f.mode() == Mode::numeric || !numeric_s)) {
    out.push_back(Method::schroder);
    out.push_back(Method::jabotinsky);
    out.push_back(Method::jabotinsky_alt);
    if (!natural) out.push_back(Method::extracted);
  }
  if (qpath) {
    out.push_back(Method::qschroder);
    out.push_back(Method::tambs);
    out.push_back(Method::lavoie);
    if (!natural) out.push_back(Method::qextracted);
  }
  return out;
}

int cmd_iterate(const SeriesOptions& sopt, const std::string& s_text,
                const std::string& method_name_text, bool all_methods,
                const std::string& tol_text, bool table, bool full_triangle) {
  Series f = load_series(sopt);
  Exponent s = parse_exponent(s_text);
  int order = sopt.order;
  if (all_methods) {
    std::vector<Method> methods = applicable_methods(f, s);
    if (methods.empty()) throw BadRange("no method applies to this (q, s)");
    Json report;
    report["s"] = s.str();
    report["order"] = order;
    Json per = Json::array();
    CoeffTriangle ref = iterate(f, s, order, methods.front());
    Real worst(0);
    for (Method m : methods) {
      CoeffTriangle t = iterate(f, s, order, m);
      Real dev = triangle_deviation(t, ref);
      if (dev > worst) worst = dev;
      Json e;
      e["method"] = method_name(m);
      e["max_deviation_vs_first"] = real_to_string(dev);
      per.push_back(e);
    }
    report["methods"] = per;
    report["max_discrepancy"] = real_to_string(worst);
    Real tol = tol_text.empty() ? default_tolerance() : Real(tol_text);
    bool agree = f.mode() == Mode::exact ? worst.is_zero() : worst <= tol;
    report["agree"] = agree;
    std::cout << report.dump(2) << "\n";
    return agree ? 0 : 1;
  }
  Method m = method_from_name(method_name_text);
  CoeffTriangle t = iterate(f, s, order, m);
  if (table) {
    std::cout << render_table(t);
    return 0;
  }
  Json j;
  j["method"] = method_name(m);
  j["s"] = s.str();
  j["order"] = order;
  j["mode"] = mode_name(f.mode());
  Json ords = Json::array(), exps = Json::array();
  for (int n = 1; n <= order; ++n) {
    Scalar a = t.at(n, 1);
    exps.push_back(scalar_to_json(a));
    ords.push_back(scalar_to_json(a / Scalar::integer(factorial(n), t.mode())));
  }
  j["ordinary"] = ords;       // ordinary coefficients of f^s
  j["exponential"] = exps;    // [n 1] column
  if (full_triangle) j["triangle"] = triangle_to_json(t)["rows"];
  std::cout << j.dump(2) << "\n";
  return 0;
}

int cmd_itlog(const SeriesOptions& sopt, const std::string& form_text) {
  Series f = load_series(sopt);
  ItlogResult r = itlog(f, sopt.order, itlog_form_from_name(form_text));
  std::cout << itlog_to_json(r).dump(2) << "\n";
  return 0;
}

int cmd_bell(int n, int k, const std::string& kind, const std::string& values) {
  std::vector<Scalar> args;
  std::stringstream ss(values);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) args.push_back(Scalar::exact(parse_rational(item)));
  if (args.empty()) args.assign(static_cast<std::size_t>(std::max(1, n)), Scalar::one(Mode::exact));
  Scalar v = kind == "ord" ? partial_bell_ord(n, k, args) : partial_bell_exp(n, k, args);
  Json j;
  j["kind"] = kind == "ord" ? "ordinary" : "exponential";
  j["n"] = n;
  j["k"] = k;
  j["value"] = v.str();
  std::cout << j.dump(2) << "\n";
  return 0;
}

int cmd_qbinom(const std::string& s_text, int p, const std::string& q_text,
               const std::string& mode_text) {
  Mode m = parse_mode(mode_text);
  QContext ctx(parse_scalar(q_text, m));
  Scalar v = q_binomial(parse_exponent(s_text), p, ctx);
  Json j;
  j["s"] = s_text;
  j["p"] = p;
  j["q"] = q_text;
  j["value"] = scalar_to_json(v);
  std::cout << j.dump(2) << "\n";
  return 0;
}

int cmd_qfact(int n, const std::string& q_text, const std::string& mode_text) {
  Mode m = parse_mode(mode_text);
  QContext ctx(parse_scalar(q_text, m));
  Json j;
  j["n"] = n;
  j["q"] = q_text;
  j["value"] = scalar_to_json(q_factorial(n, ctx));
  std::cout << j.dump(2) << "\n";
  return 0;
}

int cmd_validate(int order, const std::string& tol_text) {
  Real tol = tol_text.empty() ? default_tolerance() : Real(tol_text);
  std::vector<CheckResult> results = run_validation(order, tol);
  std::size_t width = 0;
  for (const CheckResult& r : results) width = std::max(width, r.name.size());
  bool all = true;
  for (const CheckResult& r : results) {
    all = all && r.pass;
    std::cout << std::left << std::setw(static_cast<int>(width) + 2) << r.name
              << (r.pass ? "PASS" : "FAIL");
    if (!r.detail.empty()) std::cout << "  (" << r.detail << ")";
    std::cout << "\n";
  }
  std::cout << (all ? "all checks passed" : "some checks FAILED") << "\n";
  return all ? 0 : 1;
}

int cmd_bench(int order, long long s_int, const std::string& tol_text) {
  // grid: N in {4, 6, ...} up to --order, at the given integer exponent
  Real tol = tol_text.empty() ? default_tolerance() : Real(tol_text);
  Json grid = Json::array();
  bool consistent = true;
  for (int n = 4; n <= order; n += 2) {
    std::mt19937_64 rng(97);
    Series f = random_invertible_series(rng, Scalar::exact(Rational(2)), n);
    Exponent s = Exponent::of_int(s_int);
    std::vector<Method> methods{Method::matrix, Method::monkam, Method::bpp,
                                Method::qschroder, Method::tambs, Method::lavoie};
    CoeffTriangle ref = iterate(f, s, n, methods.front());
    for (Method m : methods) {
      auto t0 = std::chrono::steady_clock::now();
      CoeffTriangle t = iterate(f, s, n, m);
      auto t1 = std::chrono::steady_clock::now();
      Real dev = triangle_deviation(t, ref);
      if (!(f.mode() == Mode::exact ? dev.is_zero() : dev <= tol)) consistent = false;
      Json e;
      e["order"] = n;
      e["s"] = s_int;
      e["method"] = method_name(m);
      e["ms"] = std::chrono::duration<double, std::milli>(t1 - t0).count();
      grid.push_back(e);
    }
  }
  if (!consistent) {
    std::cerr << "method disagreement; timings withheld\n";
    return 1;
  }
  Json j;
  j["consistent"] = true;
  j["grid"] = grid;
  std::cout << j.dump(2) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  using namespace iterfrac;
  if (const char* bits = std::getenv("ITERFRAC_BITS")) {
    try {
      Precision::set_bits(static_cast<unsigned>(std::stoul(bits)));
    } catch (const std::exception&) {
      std::cerr << "ParseError: bad ITERFRAC_BITS value\n";
      return 2;
    }
  }

  CLI::App app{
      "iterfrac: exact and arbitrary-precision iterates f^s of invertible "
      "power series, with cross-validated coefficient formulas.\n"
      "Exponent grammar: 3, -2, 1/2, 0.25, 0.3+0.1i"};
  app.require_subcommand(1);

  SeriesOptions sopt;
  std::string s_text = "1", method_text = "auto", tol_text, form_text = "classical";
  bool all_methods = false, table = false, full_triangle = false;
  int bell_n = 1, bell_k = 1, qp = 0, qn = 0;
  std::string bell_kind = "exp", bell_values, q_text = "1", qmode = "exact";
  int val_order = 8;
  long long bench_s = 3;
  unsigned bits = 0;

  CLI::App* it = app.add_subcommand("iterate", "coefficients of f^s");
  add_series_flags(it, sopt);
  it->add_option("--s", s_text, "iteration exponent");
  it->add_option("--method", method_text,
                 "matrix | monkam | bpp | schroder | jabotinsky | jabotinsky-alt | "
                 "extracted | qschroder | tambs | lavoie | qextracted | auto");
  it->add_flag("--all-methods", all_methods, "run every applicable method and cross-check");
  it->add_option("--tol", tol_text, "tolerance for numeric cross-checks");
  it->add_flag("--table", table, "aligned human-readable triangle");
  it->add_flag("--triangle", full_triangle, "include the full triangle in the JSON");
  it->add_option("--bits", bits, "numeric precision in mantissa bits");

  CLI::App* il = app.add_subcommand("itlog", "iterative logarithm of f");
  add_series_flags(il, sopt);
  il->add_option("--form", form_text, "pochhammer | discrete | classical");
  il->add_option("--bits", bits, "numeric precision in mantissa bits");

  CLI::App* bl = app.add_subcommand("bell", "partial Bell polynomial values");
  bl->add_option("--n", bell_n, "upper index")->required();
  bl->add_option("--k", bell_k, "lower index")->required();
  bl->add_option("--kind", bell_kind, "exp | ord");
  bl->add_option("--values", bell_values, "comma-separated rational arguments");

  CLI::App* qb = app.add_subcommand("qbinom", "Gaussian binomial coefficient");
  qb->add_option("--s", s_text, "upper argument (exponent grammar)")->required();
  qb->add_option("--p", qp, "lower argument")->required();
  qb->add_option("--q", q_text, "the q value");
  qb->add_option("--mode", qmode, "exact | numeric");

  CLI::App* qf = app.add_subcommand("qfact", "q-factorial [n]_q!");
  qf->add_option("--n", qn, "argument")->required();
  qf->add_option("--q", q_text, "the q value");
  qf->add_option("--mode", qmode, "exact | numeric");

  CLI::App* va = app.add_subcommand("validate", "run the cross-check battery");
  va->add_option("--order", val_order, "triangle order for the checks");
  va->add_option("--tol", tol_text, "numeric tolerance");

  CLI::App* be = app.add_subcommand("bench", "time the methods on an (N, s) grid");
  be->add_option("--order", val_order, "largest triangle order");
  be->add_option("--s", bench_s, "integer exponent");
  be->add_option("--tol", tol_text, "numeric tolerance for the agreement gate");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (bits) Precision::set_bits(bits);
    if (*it)
      return cmd_iterate(sopt, s_text, method_text, all_methods, tol_text, table,
                         full_triangle);
    if (*il) return cmd_itlog(sopt, form_text);
    if (*bl) return cmd_bell(bell_n, bell_k, bell_kind, bell_values);
    if (*qb) return cmd_qbinom(s_text, qp, q_text, qmode);
    if (*qf) return cmd_qfact(qn, q_text, qmode);
    if (*va) return cmd_validate(val_order, tol_text);
    if (*be) return cmd_bench(val_order, bench_s, tol_text);
  } catch (const DomainError& e) {
    std::cerr << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
