// dforge: coefficient tables, lattice checks and identity verification.
//
// Exit codes: 0 success, 1 verification failure, 2 usage error.

#include <dforge/coefficient_table.hpp>
#include <dforge/denominator.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>

namespace {

using namespace dforge;

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

int parse_example(const std::string& s, std::initializer_list<int> allowed)
{
  std::string digits = s.rfind("example", 0) == 0 ? s.substr(7) : s;
  for (int id : allowed)
    if (digits == std::to_string(id)) return id;
  throw UsageError("unknown example '" + s + "'");
}

Rational parse_bound(const std::string& s)
{
  try {
    const Rational r = parse_rational(s);
    if (r <= 0) throw UsageError("bound must be positive");
    return r;
  } catch (const std::invalid_argument&) {
    throw UsageError("bound must be a rational a/b, got '" + s + "'");
  }
}

void emit(const std::string& text, const std::string& out)
{
  if (out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out, std::ios::trunc);
  if (!f) throw UsageError("cannot write " + out);
  f << text;
}

std::string format_table(const CoefficientTable& t, const std::string& format)
{
  if (format == "text") return to_text(t);
  if (format == "csv") {
    std::string s = "N,value\n";
    for (const auto& [n, v] : t.values) s += std::to_string(n) + "," + to_string(v) + "\n";
    return s;
  }
  nlohmann::json j{{"function", t.function}, {"params", t.params}, {"version", t.version},
                   {"min", t.min},           {"max", t.max}};
  nlohmann::json values = nlohmann::json::array();
  for (const auto& [n, v] : t.values) values.push_back({{"N", n}, {"value", to_string(v)}});
  j["values"] = values;
  return j.dump(2) + "\n";
}

std::filesystem::path cache_dir()
{
  const char* env = std::getenv("DFORGE_CACHE_DIR");
  return env && *env ? std::filesystem::path(env) : std::filesystem::path("./.dforge-cache");
}

struct TableArgs {
  std::string function;
  int d = 9;
  int k = 3;
  std::optional<std::int64_t> n;
  std::optional<std::int64_t> min;
  std::int64_t max = 20;
};

CoefficientTable table_for(const TableArgs& a, bool use_cache)
{
  std::string function = a.function == "cohen" ? "cohenH" : a.function;
  std::map<std::string, std::string> params;
  if (function == "tau") params["d"] = std::to_string(a.d);
  else if (function == "cohenH") params["k"] = std::to_string(a.k);
  else if (function != "c1" && function != "c2") throw UsageError("unknown function '" + a.function + "'");
  std::int64_t lo = a.min.value_or(table_default_min(function));
  std::int64_t hi = a.max;
  if (a.n) lo = hi = *a.n;
  if (hi < lo) throw UsageError("--max below the table start");
  try {
    if (!use_cache) return compute_table(function, params, lo, hi);
    return TableCache(cache_dir()).get(function, params, lo, hi);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

ScaledSeries series_for(const std::string& what, const Rational& bound)
{
  const TruncationBox box3(bound, bound);
  if (what == "phi01") return phi01(bound).series;
  if (what == "phi02") return phi02(bound).series;
  if (what == "theta11") return theta11(bound, ThetaForm::product).series;
  if (what == "psi5") return psi_5_half(bound).series;
  if (what == "psi2") return psi_2_half(bound).series;
  if (what == "c1cohen") return c1_via_cohen(bound);
  if (what == "f1") return siegel::f1(box3);
  if (what == "product1" || what == "sum1" || what == "product2" || what == "sum2") {
    const auto inst = denominator::make_instance(what.back() - '0', box3);
    return what[0] == 'p' ? denominator::product_side(inst) : denominator::sum_side_explicit(inst);
  }
  throw UsageError("unknown export '" + what + "'");
}

int run_lattice(const std::string& example, const std::string& format)
{
  using namespace dforge::lattice;
  const ExampleData ex = example_data(parse_example(example, {1, 2, 3}));
  const ExampleReport r = example_report(ex);
  const std::string chamber = r.chamber == ChamberCase::elliptic ? "elliptic" : "parabolic";
  auto gram_rows = [](const IntMatrix& g) {
    std::vector<std::vector<std::string>> rows;
    for (std::size_t i = 0; i < g.rows(); ++i) {
      rows.emplace_back();
      for (std::size_t j = 0; j < g.cols(); ++j) rows.back().push_back(g(i, j).get_str());
    }
    return rows;
  };
  std::vector<std::string> rho;
  for (const auto& x : ex.rho) rho.push_back(to_string(x));
  if (format == "json") {
    nlohmann::json j{{"example", ex.id},         {"gram", gram_rows(ex.S.gram())}, {"basis", ex.basis_names},
                     {"rho", rho},               {"rho_squared", to_string(r.rho_squared)},
                     {"case", chamber},          {"weyl_vector_check", r.weyl_ok},
                     {"roots_checked", r.roots_checked}, {"passed", r.passed()}};
    if (ex.id != 3) j["h_squared"] = to_string(r.h_squared);
    if (ex.has_frame()) j["frame_gram"] = gram_rows(ex.frame_gram);
    for (const auto& [name, ok] : r.checks) j["checks"].push_back({{"check", name}, {"ok", ok}});
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "example " << ex.id << "\n";
    std::cout << "Gram (";
    for (std::size_t i = 0; i < ex.basis_names.size(); ++i) std::cout << (i ? ", " : "") << ex.basis_names[i];
    std::cout << "):\n";
    for (const auto& row : gram_rows(ex.S.gram())) {
      std::cout << " ";
      for (const auto& v : row) std::cout << " " << v;
      std::cout << "\n";
    }
    if (ex.has_frame()) {
      std::cout << "frame Gram (f2, f3, f-2):\n";
      for (const auto& row : gram_rows(ex.frame_gram)) {
        std::cout << " ";
        for (const auto& v : row) std::cout << " " << v;
        std::cout << "\n";
      }
    }
    std::cout << "rho = (";
    for (std::size_t i = 0; i < rho.size(); ++i) std::cout << (i ? ", " : "") << rho[i];
    std::cout << ")\n";
    for (const auto& [name, ok] : r.checks) std::cout << "  [" << (ok ? "ok" : "FAIL") << "] " << name << "\n";
    std::cout << chamber << ", rho^2=" << to_string(r.rho_squared);
    if (ex.id != 3) std::cout << ", h^2=" << to_string(r.h_squared);
    std::cout << ", " << (r.passed() ? "PASS" : "FAIL") << "\n";
  }
  return r.passed() ? kOk : kFailed;
}

}  // namespace

int main(int argc, char** argv)
{
  CLI::App app{"dforge: exact expansions of modular, Jacobi and Siegel forms and denominator identities"};
  app.require_subcommand(1);

  TableArgs targs;
  std::string format = "text", out;
  bool no_cache = false;
  auto* coeffs = app.add_subcommand("coeffs", "print a coefficient table (tau, c1, c2, cohen)");
  coeffs->add_option("function", targs.function, "tau | c1 | c2 | cohen")->required();
  coeffs->add_option("--d", targs.d, "eta power for tau");
  coeffs->add_option("--k", targs.k, "k for Cohen's H(k, N)");
  coeffs->add_option("--n", targs.n, "single index");
  coeffs->add_option("--min", targs.min, "first index");
  coeffs->add_option("--max", targs.max, "last index");
  coeffs->add_option("--format", format, "text | json | csv")->check(CLI::IsMember({"text", "json", "csv"}));
  coeffs->add_option("--out", out, "write to file instead of stdout");
  coeffs->add_flag("--no-cache", no_cache, "always recompute");

  std::string example, bound_text, parts_text;
  auto* verify = app.add_subcommand("verify", "verify a denominator identity");
  verify->add_option("example", example, "example1 | example2")->required();
  verify->add_option("--bound", bound_text, "q and p bound, a/b");
  verify->add_option("--parts", parts_text, "comma list of product, sum, theta, weyl");
  verify->add_option("--format", format, "text | json")->check(CLI::IsMember({"text", "json"}));
  verify->add_option("--out", out, "also write the report to this file");

  auto* lat = app.add_subcommand("lattice", "lattice checks for an example");
  lat->add_option("example", example, "example1 | example2 | example3")->required();
  lat->add_option("--format", format, "text | json")->check(CLI::IsMember({"text", "json"}));

  std::string what;
  auto* exp = app.add_subcommand("export", "write a table or a series in its text format");
  exp->add_option("what", what,
                  "tau | c1 | c2 | cohen | phi01 | phi02 | theta11 | psi5 | psi2 | c1cohen | f1 | "
                  "product1 | sum1 | product2 | sum2")
      ->required();
  exp->add_option("--out", out, "output path")->required();
  exp->add_option("--bound", bound_text, "series bound, a/b");
  exp->add_option("--d", targs.d, "eta power for tau");
  exp->add_option("--k", targs.k, "k for Cohen's H(k, N)");
  exp->add_option("--max", targs.max, "last index of a table");
  exp->add_option("--format", format, "text | json | csv")->check(CLI::IsMember({"text", "json", "csv"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*coeffs) {
      emit(format_table(table_for(targs, !no_cache), format), out);
      return kOk;
    }
    if (*verify) {
      const int id = parse_example(example, {1, 2});
      const Rational bound = parse_bound(bound_text.empty() ? (id == 1 ? "5/2" : "9/4") : bound_text);
      unsigned parts = 0;
      try {
        if (!parts_text.empty()) parts = denominator::parse_parts(parts_text);
      } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
      }
      if ((parts & denominator::kTheta) && id != 1) throw UsageError("the theta part exists for example1 only");
      const auto rep = denominator::verify_identity(id, TruncationBox(bound, bound), parts);
      const std::string text = format == "json" ? rep.to_json() + "\n" : rep.to_text();
      std::cout << text;
      if (!out.empty()) emit(text, out);
      return rep.passed() ? kOk : kFailed;
    }
    if (*lat) return run_lattice(example, format);
    if (*exp) {
      if (what == "tau" || what == "c1" || what == "c2" || what == "cohen") {
        targs.function = what;
        emit(format_table(table_for(targs, false), format), out);
      } else {
        if (format != "text") throw UsageError("series export supports --format text only");
        emit(to_text(series_for(what, parse_bound(bound_text.empty() ? "2" : bound_text))), out);
      }
      return kOk;
    }
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFailed;
  }
  return kUsage;
}
