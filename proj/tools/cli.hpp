#pragma once

// command-line front end: every subcommand fills one or more tables, written as CSV or JSON

#include <fei/fei.hpp>
#include <fei/verify.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <random>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

namespace fei::cli {

/// failure of a named computation check; exit status 1
class CheckFailed : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

using Cell = std::variant<std::string, double, std::int64_t, bool>;

struct Table {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  Table& add(std::vector<Cell> row)
  {
    if (row.size() != columns.size())
      throw std::logic_error("table " + name + ": row width mismatch");
    rows.push_back(std::move(row));
    return *this;
  }
};

inline Cell rat(const Rational& r) { return to_string(r); }

inline std::string format_double(double x)
{
  if (std::isnan(x))
    return "nan";
  if (std::isinf(x))
    return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.15g", x);
  return buf;
}

inline std::string csv_field(const Cell& c)
{
  std::string s = std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, std::string>)
          return v;
        else if constexpr (std::is_same_v<T, double>)
          return format_double(v);
        else if constexpr (std::is_same_v<T, bool>)
          return v ? "true" : "false";
        else
          return std::to_string(v);
      },
      c);
  if (s.find_first_of(",\"\n") == std::string::npos)
    return s;
  std::string q = "\"";
  for (char ch : s)
    q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
  return q + "\"";
}

inline void write_csv(std::ostream& os, const std::vector<Table>& tables)
{
  for (std::size_t t = 0; t < tables.size(); ++t) {
    if (t)
      os << "\n";
    const auto& tab = tables[t];
    for (std::size_t j = 0; j < tab.columns.size(); ++j)
      os << (j ? "," : "") << csv_field(tab.columns[j]);
    os << "\n";
    for (const auto& row : tab.rows) {
      for (std::size_t j = 0; j < row.size(); ++j)
        os << (j ? "," : "") << csv_field(row[j]);
      os << "\n";
    }
  }
}

inline nlohmann::ordered_json to_json(const Cell& c)
{
  return std::visit(
      [](const auto& v) -> nlohmann::ordered_json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, double>) {
          if (!std::isfinite(v))
            return format_double(v);
          return nlohmann::ordered_json::parse(format_double(v));
        } else {
          return v;
        }
      },
      c);
}

inline void write_json(std::ostream& os, const std::vector<Table>& tables)
{
  nlohmann::ordered_json doc = nlohmann::ordered_json::object();
  for (const auto& tab : tables) {
    auto rows = nlohmann::ordered_json::array();
    for (const auto& row : tab.rows) {
      nlohmann::ordered_json obj = nlohmann::ordered_json::object();
      for (std::size_t j = 0; j < row.size(); ++j)
        obj[tab.columns[j]] = to_json(row[j]);
      rows.push_back(std::move(obj));
    }
    doc[tab.name] = std::move(rows);
  }
  os << doc.dump(2) << "\n";
}

inline std::vector<int> parse_int_list(const std::string& text)
{
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoi(item, &used));
      if (used != item.size())
        throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw CLI::ValidationError("list", "bad integer '" + item + "'");
    }
  }
  return out;
}

inline std::vector<double> parse_double_list(const std::string& text)
{
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size())
        throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw CLI::ValidationError("list", "bad number '" + item + "'");
    }
  }
  return out;
}

inline BooleanFunction read_table_file(const std::string& path)
{
  std::ifstream in(path);
  if (!in)
    throw std::runtime_error("cannot open '" + path + "'");
  return read_table(in);
}

inline std::string read_text_file(const std::string& path)
{
  std::ifstream in(path);
  if (!in)
    throw std::runtime_error("cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// one function from --formula, --formula-file, --table or --builtin
struct FunctionSource {
  std::string formula;
  std::string formula_file;
  std::string table;
  std::string builtin_name;
  int param = 0;
  int n = 0;

  void attach(CLI::App* app)
  {
    auto* a = app->add_option("--formula", formula, "formula over x1..xn with & | !");
    auto* b = app->add_option("--formula-file", formula_file, "file holding one formula");
    auto* c = app->add_option("--table", table, "truth-table file (n=<k> then hex)");
    auto* d = app->add_option("--builtin", builtin_name, "AND, OR, g, G, g3clauses, gprime3, g4clauses, gprime4, tau, iota");
    a->excludes(b)->excludes(c)->excludes(d);
    b->excludes(c)->excludes(d);
    c->excludes(d);
    app->add_option("--param", param, "parameter of a builtin (AND/OR arity, m of g/G)");
    app->add_option("--n", n, "variable count (defaults to the largest index used)")->check(CLI::Range(1, BooleanFunction::max_vars));
  }

  bool given() const { return !formula.empty() || !formula_file.empty() || !table.empty() || !builtin_name.empty(); }

  std::optional<Formula> ast() const
  {
    if (!formula.empty())
      return parse_formula(formula);
    if (!formula_file.empty())
      return parse_formula(read_text_file(formula_file));
    if (!builtin_name.empty())
      return builtin(builtin_name, param);
    return std::nullopt;
  }

  BooleanFunction load() const
  {
    if (!given())
      throw CLI::RequiredError("one of --formula, --formula-file, --table, --builtin");
    if (!table.empty()) {
      auto f = read_table_file(table);
      return n > f.num_vars() ? f.extend_with_dummy(n - f.num_vars()) : f;
    }
    auto f = *ast();
    int vars = std::max(n, f.max_var());
    return evaluate(f, std::max(vars, 1));
  }
};

/// profile expressions: atoms iota, true, false, lex:<mu>, table:<file>, builtin:<name>[:k];
/// operators & (meet), | (join), ! (dual), kappa(...)
class ProfileParser {
public:
  explicit ProfileParser(std::string text) : s_(std::move(text)) {}

  ExactProfile parse()
  {
    auto r = expr();
    skip();
    if (pos_ != s_.size())
      fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return r;
  }

private:
  [[noreturn]] void fail(const std::string& msg) const
  {
    throw ParseError("profile expression: " + msg, pos_);
  }

  void skip()
  {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_])))
      ++pos_;
  }

  bool eat(char c)
  {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  ExactProfile expr()
  {
    auto a = term();
    while (eat('|'))
      a = join(a, term());
    return a;
  }

  ExactProfile term()
  {
    auto a = unary();
    while (eat('&'))
      a = meet(a, unary());
    return a;
  }

  ExactProfile unary()
  {
    if (eat('!'))
      return dual(unary());
    if (eat('(')) {
      auto a = expr();
      if (!eat(')'))
        fail("expected ')'");
      return a;
    }
    return atom();
  }

  ExactProfile atom()
  {
    skip();
    std::size_t start = pos_;
    while (pos_ < s_.size() && !std::isspace(static_cast<unsigned char>(s_[pos_])) && s_[pos_] != '&' && s_[pos_] != '|' &&
           s_[pos_] != ')' && s_[pos_] != '(')
      ++pos_;
    std::string word = s_.substr(start, pos_ - start);
    if (word.empty())
      fail("expected a profile");
    if (word == "kappa") {
      if (!eat('('))
        fail("expected '(' after kappa");
      auto a = expr();
      if (!eat(')'))
        fail("expected ')'");
      return solve_kappa(a);
    }
    if (word == "iota")
      return iota_profile<Rational>();
    if (word == "true" || word == "false")
      return constant_profile<Rational>(word == "true");
    if (word.rfind("lex:", 0) == 0) {
      auto lp = lex_profile_exact(parse_rational(word.substr(4)));
      return *lp.exact;
    }
    if (word.rfind("table:", 0) == 0)
      return profile(read_table_file(word.substr(6)));
    if (word.rfind("builtin:", 0) == 0) {
      std::string rest = word.substr(8);
      int k = 0;
      if (auto colon = rest.find(':'); colon != std::string::npos) {
        k = std::stoi(rest.substr(colon + 1));
        rest = rest.substr(0, colon);
      }
      auto f = builtin(rest, k);
      return profile(evaluate(f, std::max(1, f.max_var())));
    }
    pos_ = start;
    fail("unknown profile '" + word + "'");
  }

  std::string s_;
  std::size_t pos_ = 0;
};

inline ExactProfile parse_profile_expr(const std::string& text) { return ProfileParser(text).parse(); }

inline std::vector<Cell> profile_cells(const ExactProfile& a)
{
  std::vector<Cell> row{rat(a.p), rat(a.influence), a.entropy};
  if (auto ip = a.influence_plus())
    row.push_back(rat(*ip));
  else
    row.push_back(std::string("undefined"));
  if (auto hp = a.entropy_plus())
    row.push_back(*hp);
  else
    row.push_back(std::string("undefined"));
  return row;
}

inline Table report_table(const std::vector<BoundReport>& reps)
{
  Table t{"bound", {"name", "formula", "value", "certified_lower", "target", "margin", "error"}, {}};
  for (const auto& r : reps)
    t.add({r.name, r.formula, r.value, r.lower, r.target, r.margin, r.error});
  return t;
}

struct Options {
  bool json = false;
  std::string out;
  std::uint64_t seed = 0;
  double tol = 1e-12;
  int bits = 60;
  int max_m = 10;
};

/// run with argv[1..]; usage errors exit 2, failed computations 1
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
  CLI::App app{"exact Fourier entropy and influence of Boolean functions"};
  app.require_subcommand(1);
  app.fallthrough();
  Options opt;
  app.add_flag("--json", opt.json, "print JSON instead of CSV");
  app.add_option("--out", opt.out, "write output to this path");

  std::vector<Table> tables;
  std::string verify_text;
  int status = 0;

  // analyze
  FunctionSource an_src;
  bool an_spectrum = false, an_coords = false;
  auto* analyze = app.add_subcommand("analyze", "p, I, H and derived quantities of one function");
  an_src.attach(analyze);
  analyze->add_flag("--spectrum", an_spectrum, "also emit A(S) for every S");
  analyze->add_flag("--coordinates", an_coords, "also emit the coordinate influences");
  analyze->callback([&] {
    auto f = an_src.load();
    auto pr = profile(f);
    auto sp = wht_spectrum(f);
    Table t{"profile", {"n", "p", "I", "H", "I_plus", "H_plus", "ratio_H_over_I_minus_1", "sensitivity_edges_over_N"}, {}};
    auto cells = profile_cells(pr);
    std::vector<Cell> row{std::int64_t(f.num_vars())};
    row.insert(row.end(), cells.begin(), cells.end());
    row.push_back(pr.influence > 1 ? Cell(pr.entropy / to_double(pr.influence - 1)) : Cell(std::string("undefined")));
    row.push_back(rat(f.average_sensitivity()));
    t.add(std::move(row));
    tables.push_back(std::move(t));
    if (an_coords) {
      Table c{"coordinates", {"j", "influence"}, {}};
      for (int j = 1; j <= f.num_vars(); ++j)
        c.add({std::int64_t(j), rat(f.coordinate_influence(j))});
      tables.push_back(std::move(c));
    }
    if (an_spectrum) {
      Table s{"spectrum", {"S", "weight", "A"}, {}};
      for (std::uint64_t S = 0; S < sp.size(); ++S)
        s.add({std::int64_t(S), std::int64_t(std::popcount(S)), std::int64_t(sp[S])});
      tables.push_back(std::move(s));
    }
  });

  // parse
  FunctionSource pa_src;
  std::string pa_write;
  auto* parse = app.add_subcommand("parse", "canonical print, variable count and truth table of a formula");
  pa_src.attach(parse);
  parse->add_option("--write-table", pa_write, "save the truth table to this path");
  parse->callback([&] {
    auto ast = pa_src.ast();
    auto f = pa_src.load();
    Table t{"parse", {"canonical", "n", "monotone", "count_true", "hex"}, {}};
    t.add({ast ? to_string(*ast) : std::string(""), std::int64_t(f.num_vars()), f.is_monotone(), std::int64_t(f.count_true()), f.to_hex()});
    tables.push_back(std::move(t));
    if (!pa_write.empty()) {
      std::ofstream o(pa_write);
      if (!o)
        throw std::runtime_error("cannot write '" + pa_write + "'");
      write_table(o, f);
    }
  });

  // lex
  std::string lx_mu;
  int lx_bits = 60;
  bool lx_exact = false;
  int lx_n = 0;
  auto* lex = app.add_subcommand("lex", "profile of the limit lexicographic function l<mu>");
  lex->add_option("--mu", lx_mu, "rational a/b or decimal in [0,1]")->required();
  lex->add_option("--bits", lx_bits, "truncation depth for the certified path")->check(CLI::Range(8, 60));
  lex->add_flag("--exact", lx_exact, "solve the periodic expansion exactly (rational mu)");
  lex->add_option("--n", lx_n, "also report the n-variable truth table l_n<floor(mu N)>")->check(CLI::Range(1, BooleanFunction::max_vars));
  lex->callback([&] {
    auto mu = parse_rational(lx_mu);
    Table t{"lex", {"mu", "method", "I", "H", "error_I", "error_H"}, {}};
    if (lx_exact) {
      auto lp = lex_profile_exact(mu);
      auto e = BinaryExpansion::from_rational(mu);
      std::string m = "exact preperiod=" + std::to_string(e.preperiod.size()) + " period=" + std::to_string(e.period.size());
      t.add({rat(mu), m, rat(lp.exact->influence), lp.entropy, 0.0, 0.0});
    } else {
      auto lp = lex_profile_truncated(mu, lx_bits);
      t.add({rat(mu), "truncated " + std::to_string(lx_bits) + " bits", lp.influence, lp.entropy, lp.error_influence, lp.error_entropy});
    }
    tables.push_back(std::move(t));
    if (lx_n > 0) {
      std::uint64_t N = std::uint64_t{1} << lx_n;
      Rational sN = mu * Rational(Integer(N));
      std::uint64_t s = boost::multiprecision::numerator(sN).convert_to<std::uint64_t>() / boost::multiprecision::denominator(sN).convert_to<std::uint64_t>();
      auto f = lex_truth_table(lx_n, s);
      auto pr = profile(f);
      Table u{"lex_table", {"n", "s", "I_hart", "I", "H", "average_reads"}, {}};
      Cell reads = s % 2 == 1 ? rat(average_reads(lx_n, s)) : Cell(std::string("undefined"));
      u.add({std::int64_t(lx_n), std::int64_t(s), rat(hart_influence(lx_n, s)), rat(pr.influence), pr.entropy, reads});
      tables.push_back(std::move(u));
    }
  });

  // compose
  std::string co_expr;
  auto* compose = app.add_subcommand("compose", "evaluate a profile expression");
  compose->add_option("--expr", co_expr, "e.g. \"!(iota & lex:2/3) | table:f.tt\", kappa(x)")->required();
  compose->callback([&] {
    auto a = parse_profile_expr(co_expr);
    Table t{"compose", {"expr", "p", "I", "H", "I_plus", "H_plus"}, {}};
    std::vector<Cell> row{co_expr};
    auto cells = profile_cells(a);
    row.insert(row.end(), cells.begin(), cells.end());
    t.add(std::move(row));
    tables.push_back(std::move(t));
  });

  // biased
  FunctionSource bi_src;
  std::string bi_eta;
  bool bi_fixed = false;
  auto* biased = app.add_subcommand("biased", "biased Fourier influence and entropy");
  bi_src.attach(biased);
  biased->add_option("--eta", bi_eta, "bias E[x_i]: one value or a comma list")->required();
  biased->add_flag("--fixed-points", bi_fixed, "also list the bias fixed points E_g(rho) = rho");
  biased->callback([&] {
    auto f = bi_src.load();
    auto eta = parse_double_list(bi_eta);
    if (eta.size() == 1)
      eta.assign(f.num_vars(), eta[0]);
    auto sp = biased_spectrum(f, eta);
    auto bp = biased_profile(sp);
    Table t{"biased", {"n", "I_tilde", "H_tilde", "p_true"}, {}};
    t.add({std::int64_t(f.num_vars()), bp.influence, bp.entropy, bp.probability_true});
    tables.push_back(std::move(t));
    Table c{"biased_coordinates", {"j", "I_tilde_j"}, {}};
    for (std::size_t j = 0; j < bp.coordinate_influences.size(); ++j)
      c.add({std::int64_t(j + 1), bp.coordinate_influences[j]});
    tables.push_back(std::move(c));
    std::vector<double> mass(f.num_vars() + 1, 0.0);
    for (std::uint64_t S = 0; S < sp.coeffs.size(); ++S)
      mass[std::popcount(S)] += sp.coeffs[S] * sp.coeffs[S];
    Table h{"biased_levels", {"level", "mass"}, {}};
    for (std::size_t k = 0; k < mass.size(); ++k)
      h.add({std::int64_t(k), mass[k]});
    tables.push_back(std::move(h));
    if (bi_fixed) {
      auto fp = bias_fixed_points(f);
      Table x{"fixed_points", {"rho", "p", "derivative", "attractive"}, {}};
      for (const auto& p : fp.points)
        x.add({p.rho, (1.0 - p.rho) / 2.0, p.derivative, p.attractive});
      if (fp.identity)
        x.add({std::string("all"), std::string("all"), 1.0, false});
      tables.push_back(std::move(x));
    }
  });

  // bound
  std::string bd_which, bd_profile;
  double bd_target = std::nan("");
  auto* bound = app.add_subcommand("bound", "lower bounds on the entropy/influence constant");
  bound->add_option("which", bd_which, "lb1, lb2, lb3 or gamma")->required()->check(CLI::IsMember({"lb1", "lb2", "lb3", "gamma"}));
  bound->add_option("--profile", bd_profile, "starting profile expression for lb3/gamma (default iota)");
  bound->add_option("--bits", opt.bits, "truncation depth for lb2")->check(CLI::Range(8, 60));
  bound->add_option("--tol", opt.tol, "series tolerance")->check(CLI::PositiveNumber);
  bound->add_option("--target", bd_target, "decimal to compare against");
  bound->callback([&] {
    BoundReport r;
    if (bd_which == "lb1") {
      r = lb1();
    } else if (bd_which == "lb2") {
      r = lb2(opt.bits);
    } else {
      std::string expr = bd_profile.empty() ? "iota" : bd_profile;
      auto f0 = to_float(parse_profile_expr(expr));
      if (bd_which == "lb3") {
        r = lb3(f0, opt.tol);
      } else {
        double target = expr == "iota" ? reference::gamma_iota : expr == "lex:2/3" ? reference::gamma_lex23 : 0.0;
        r = lb_gamma(f0, target, opt.tol);
      }
      r.formula += " at " + expr;
    }
    if (!std::isnan(bd_target))
      r = make_report(r.name, r.formula, r.value, r.lower, bd_target);
    tables.push_back(report_table({r}));
  });

  // table1: the g_m sequence
  auto* t1 = app.add_subcommand("table1", "the g_m sequence: exact I, H and H/(I-1)");
  t1->add_option("--max-m", opt.max_m, "largest m (<= 12)")->check(CLI::Range(2, 12));
  t1->callback([&] {
    Table t{"gm_table", {"m", "n", "p", "I", "H", "C"}, {}};
    for (const auto& r : gm_table(opt.max_m))
      t.add({std::int64_t(r.m), std::int64_t(r.n), rat(r.probability), rat(r.influence), r.entropy, r.ratio});
    tables.push_back(std::move(t));
  });

  // beta
  std::string be_levels = "1,2,3,5,10,100";
  int be_grid = 512;
  std::vector<double> be_z;
  auto* beta_cmd = app.add_subcommand("beta", "beta_m(z) curves, or beta(z) with its tail bound");
  beta_cmd->add_option("--levels", be_levels, "comma list of m");
  beta_cmd->add_option("--grid", be_grid, "z = j/grid")->check(CLI::Range(1, 1 << 20));
  beta_cmd->add_option("--z", be_z, "evaluate the limit at these points instead")->delimiter(',');
  beta_cmd->add_option("--tol", opt.tol, "series tolerance")->check(CLI::PositiveNumber);
  beta_cmd->callback([&] {
    if (!be_z.empty()) {
      Table t{"beta", {"z", "beta", "tail_bound", "terms"}, {}};
      for (double z : be_z) {
        auto s = beta_series(z, opt.tol);
        t.add({z, s.value, s.tail_bound, std::int64_t(s.terms)});
      }
      tables.push_back(std::move(t));
      return;
    }
    Table t{"beta_curves", {"z", "m", "beta_m"}, {}};
    for (const auto& p : beta_curves(parse_int_list(be_levels), be_grid))
      t.add({p.z, std::int64_t(p.m), p.value});
    tables.push_back(std::move(t));
  });

  // maximize-beta
  auto* maxb = app.add_subcommand("maximize-beta", "maximizer of beta on [0.4, 0.6]");
  maxb->callback([&] {
    auto m = maximize_beta();
    Table t{"maximize_beta", {"z_star", "beta_star", "beta_half", "grid_argmax", "unimodal"}, {}};
    t.add({m.z_star, m.beta_star, m.beta_half, m.grid_argmax, m.unimodal});
    tables.push_back(std::move(t));
  });

  // lipschitz
  int li_n = 8, li_trials = 100;
  auto* lip = app.add_subcommand("lipschitz", "single-point flips against the influence and entropy gap bounds");
  lip->add_option("--n", li_n, "variables")->check(CLI::Range(1, 16));
  lip->add_option("--trials", li_trials, "random flips")->check(CLI::Range(1, 1000000));
  lip->add_option("--seed", opt.seed, "generator seed");
  lip->callback([&] {
    std::mt19937_64 rng(opt.seed);
    Table t{"lipschitz", {"trial", "index", "I_gap", "I_bound", "H_gap", "H_bound", "holds"}, {}};
    int bad = 0;
    for (int k = 0; k < li_trials; ++k) {
      auto f = detail::random_table(li_n, rng);
      std::uint64_t idx = rng() % f.size();
      auto ig = influence_gap(f, idx);
      auto eg = entropy_gap(f, idx);
      bool ok = ig.holds() && eg.holds();
      bad += !ok;
      t.add({std::int64_t(k), std::int64_t(idx), rat(ig.gap), rat(ig.bound), eg.gap, eg.bound, ok});
    }
    tables.push_back(std::move(t));
    if (bad)
      throw CheckFailed("lipschitz: " + std::to_string(bad) + " flips violate a gap bound");
  });

  // niho
  int ni_n = 8;
  bool ni_spectrum = false;
  auto* niho_cmd = app.add_subcommand("niho", "the trace function Tr(a^{2 sqrt N - 1})");
  niho_cmd->add_option("--n", ni_n, "4, 8 or 12")->check(CLI::IsMember({4, 8, 12}));
  niho_cmd->add_flag("--emit-spectrum", ni_spectrum, "also emit A(S) for every S");
  niho_cmd->callback([&] {
    GaloisField F(ni_n);
    auto gap = niho_gap(ni_n);
    Table g{"niho", {"n", "modulus", "H_gap", "threshold", "lipschitz_bound", "above_threshold"}, {}};
    g.add({std::int64_t(ni_n), std::int64_t(F.modulus()), gap.gap, gap.threshold, gap.lipschitz, gap.gap > gap.threshold});
    tables.push_back(std::move(g));
    Table m{"niho_spectrum", {"A_over_sqrtN", "count"}, {}};
    for (const auto& [k, c] : niho_spectrum_multiset(ni_n))
      m.add({std::int64_t(k), std::int64_t(c)});
    tables.push_back(std::move(m));
    if (ni_spectrum) {
      auto sp = wht_spectrum(niho(ni_n));
      Table s{"spectrum", {"S", "A"}, {}};
      for (std::uint64_t S = 0; S < sp.size(); ++S)
        s.add({std::int64_t(S), std::int64_t(sp[S])});
      tables.push_back(std::move(s));
    }
  });

  // search
  auto* search = app.add_subcommand("search", "exhaustive searches");
  search->require_subcommand(1);
  int se_max_vars = 4, se_top = 20;
  bool se_no_prune = false;
  auto* bases = search->add_subcommand("bases", "biased base functions on <= 4 variables, ranked by their bound");
  bases->add_option("--max-vars", se_max_vars, "1..4")->check(CLI::Range(1, 4));
  bases->add_option("--top", se_top, "rows to keep")->check(CLI::Range(1, 100000));
  bases->add_flag("--no-prune", se_no_prune, "score every truth table, not one per symmetry class");
  bases->callback([&] {
    auto s = search_biased_bases(se_max_vars, !se_no_prune, std::size_t(se_top));
    Table t{"bases", {"rank", "k", "hex", "rho", "p", "derivative", "attractive", "I_tilde", "H_tilde", "bound", "minus_tau"}, {}};
    for (std::size_t i = 0; i < s.ranked.size(); ++i) {
      const auto& c = s.ranked[i];
      t.add({std::int64_t(i + 1), std::int64_t(c.k), small_to_function(c.k, c.table).to_hex(), c.rho, c.p, c.derivative, c.attractive,
             c.biased_influence, c.biased_entropy, c.bound, c.bound - s.tau_bound});
    }
    tables.push_back(std::move(t));
    Table u{"bases_summary", {"functions", "scored", "skipped", "tau_bound"}, {}};
    u.add({std::int64_t(s.functions), std::int64_t(s.evaluated), std::int64_t(s.skipped), s.tau_bound});
    tables.push_back(std::move(u));
  });
  int se_n = 4;
  std::string se_scope;
  auto* balanced = search->add_subcommand("balanced", "max H/(I-1) over balanced functions");
  balanced->add_option("--n", se_n, "variables")->check(CLI::Range(1, 6));
  balanced->add_option("--scope", se_scope, "all (n <= 4), monotone or read_once")->check(CLI::IsMember({"all", "monotone", "read_once"}));
  balanced->callback([&] {
    auto r = se_scope.empty()         ? search_balanced_ratio(se_n)
             : se_scope == "all"      ? search_balanced_ratio(se_n, BalancedScope::all)
             : se_scope == "monotone" ? search_balanced_ratio(se_n, BalancedScope::monotone)
                                      : search_balanced_ratio(se_n, BalancedScope::read_once);
    Table t{"balanced", {"n", "candidates", "found", "hex", "I", "H", "C"}, {}};
    if (r.found)
      t.add({std::int64_t(se_n), std::int64_t(r.candidates), true, r.function.to_hex(), rat(r.influence), r.entropy, r.ratio});
    else
      t.add({std::int64_t(se_n), std::int64_t(r.candidates), false, std::string(""), std::string(""), 0.0, 0.0});
    tables.push_back(std::move(t));
  });
  auto* named = search->add_subcommand("named", "the four named functions against their reference values");
  named->callback([&] {
    Table t{"named", {"name", "p", "I", "H", "C", "reference_I", "reference_H", "reference_C", "passed"}, {}};
    for (const auto& c : verify_named())
      t.add({c.name, rat(c.probability), rat(c.influence), c.entropy, c.ratio, rat(c.reference_influence), c.reference_entropy, c.reference_ratio, c.passed()});
    tables.push_back(std::move(t));
  });

  // verify-all
  std::vector<int> va_only;
  bool va_timings = false;
  auto* verify = app.add_subcommand("verify-all", "acceptance suite, one PASS/FAIL line per criterion");
  verify->add_option("--seed", opt.seed, "seed of the randomized checks");
  verify->add_option("--only", va_only, "criterion ids")->delimiter(',')->check(CLI::Range(1, 12));
  verify->add_flag("--timings", va_timings, "print seconds per criterion");
  verify->callback([&] {
    auto results = run_acceptance(opt.seed, va_only);
    if (opt.json) {
      Table t{"acceptance", {"id", "title", "passed", "checks_failed"}, {}};
      for (const auto& r : results) {
        std::string bad;
        for (const auto& c : r.checks)
          if (!c.passed)
            bad += (bad.empty() ? "" : "; ") + c.name;
        t.add({std::int64_t(r.id), r.title, r.passed(), bad});
      }
      tables.push_back(std::move(t));
    } else {
      std::ostringstream os;
      print_acceptance(os, results, va_timings);
      verify_text = os.str();
    }
    for (const auto& r : results)
      if (!r.passed())
        status = 1;
  });

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 2;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const CheckFailed& e) {
    // tables are still written below
    err << "check failed: " << e.what() << "\n";
    status = 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }

  std::ofstream file;
  std::ostream* sink = &out;
  if (!opt.out.empty()) {
    file.open(opt.out);
    if (!file) {
      err << "error: cannot write '" << opt.out << "'\n";
      return 1;
    }
    sink = &file;
  }
  if (!verify_text.empty())
    *sink << verify_text;
  if (opt.json)
    write_json(*sink, tables);
  else
    write_csv(*sink, tables);
  return status;
}

} // namespace fei::cli
