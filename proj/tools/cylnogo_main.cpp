// Command-line front end: classical/operator calculator, scheme quantizer,
// parameter determinations, subalgebra closures, and the named check registry.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "cylnogo/checks.hpp"
#include "cylnogo/parser.hpp"
#include "cylnogo/report.hpp"

namespace {

using namespace cylnogo;

// ---------------------------------------------------------------------------
// Shared option plumbing.
// ---------------------------------------------------------------------------

// Formal-or-rational parameter values, as accepted by every scheme-aware
// subcommand. "formal" leaves the parameter symbolic.
struct ParamOpts {
  std::string nu = "formal", eta = "formal", mu = "formal", alpha = "formal";
  std::string b = "formal", c = "formal", bp = "formal", cp = "formal";
  std::string rules;  // comma-separated rule names

  void attach(CLI::App* cmd) {
    cmd->add_option("--nu", nu, "value for nu (p/q or 'formal')");
    cmd->add_option("--eta", eta, "value for eta (p/q or 'formal')");
    cmd->add_option("--mu", mu, "value for mu (p/q or 'formal')");
    cmd->add_option("--alpha", alpha, "value for alpha (p/q or 'formal')");
    cmd->add_option("--b", b, "value for b (p/q or 'formal')");
    cmd->add_option("--c", c, "value for c (p/q or 'formal')");
    cmd->add_option("--bp", bp, "value for bp (p/q or 'formal')");
    cmd->add_option("--cp", cp, "value for cp (p/q or 'formal')");
    cmd->add_option("--rules", rules,
                    "comma-separated rule table entries to install "
                    "(l2,ls,lc,l2s,l2c,cubic,l2sp,l2cp,l4s,l4c)");
  }

  ParamEnv env() const {
    ParamEnv e;
    auto bind = [&e](ParamId id, const std::string& text) {
      if (text != "formal") e.bind(id, Scalar(GRat(parse_rat(text))));
    };
    bind(kNu, nu);
    bind(kEta, eta);
    bind(kMu, mu);
    bind(kAlpha, alpha);
    bind(kB, b);
    bind(kC, c);
    bind(kBp, bp);
    bind(kCp, cp);
    return e;
  }

  std::vector<VnRule> rule_list() const {
    std::vector<VnRule> out;
    std::stringstream ss(rules);
    std::string item;
    while (std::getline(ss, item, ',')) {
      if (item.empty()) continue;
      auto r = vn_rule_from_name(item);
      if (!r) throw std::invalid_argument("unknown rule name: " + item);
      out.push_back(*r);
    }
    return out;
  }

  QuantScheme scheme(const std::string& name) const {
    const ParamEnv e = env();
    QuantScheme s = [&] {
      if (name == "type-i") return QuantScheme::type_i(e);
      if (name == "type-ii") return QuantScheme::type_ii(e);
      if (name == "pos-rep") return QuantScheme::pos_rep(e);
      throw std::invalid_argument("unknown scheme: " + name);
    }();
    for (VnRule r : rule_list()) s = s.with_rule(r);
    return s;
  }

  // Registry used to resolve Q{name}(...) inside operator expressions. Rule
  // tables are installed on the two abstract schemes; the position
  // representation accepts no extra rules.
  SchemeRegistry registry() const {
    const ParamEnv e = env();
    QuantScheme ti = QuantScheme::type_i(e), tii = QuantScheme::type_ii(e);
    for (VnRule r : rule_list()) {
      ti = ti.with_rule(r);
      tii = tii.with_rule(r);
    }
    SchemeRegistry reg;
    reg.emplace("type-i", std::move(ti));
    reg.emplace("type-ii", std::move(tii));
    reg.emplace("pos-rep", QuantScheme::pos_rep(e));
    return reg;
  }
};

// Cutoff/generator options shared by `closure` and `member`.
struct ClosureOpts {
  std::string gens;
  std::string alpha;
  int maxdeg = 3, maxharm = 5;
  std::string ops = "bracket";

  void attach(CLI::App* cmd) {
    cmd->add_option("--gens", gens,
                    "generator set: preset:B, preset:Walpha, or a file with "
                    "one classical expression per line")
        ->required();
    cmd->add_option("--alpha", alpha, "shift parameter p/q (preset:Walpha)");
    cmd->add_option("--maxdeg", maxdeg, "degree cutoff in l")->required();
    cmd->add_option("--maxharm", maxharm, "harmonic cutoff |m|")->required();
    cmd->add_option("--ops", ops, "closure operations: bracket | both")
        ->check(CLI::IsMember({"bracket", "both"}));
  }

  std::vector<ClassicalElement> generators() const {
    if (gens == "preset:B") return preset_B();
    if (gens == "preset:Walpha") {
      if (alpha.empty())
        throw std::invalid_argument("preset:Walpha requires --alpha");
      return preset_walpha(GRat(parse_rat(alpha)), maxharm);
    }
    std::ifstream in(gens);
    if (!in) throw std::runtime_error("cannot open generator file: " + gens);
    std::vector<ClassicalElement> out;
    std::string line;
    while (std::getline(in, line)) {
      const auto first = line.find_first_not_of(" \t\r");
      if (first == std::string::npos || line[first] == '#') continue;
      out.push_back(parse_classical(line));
    }
    if (out.empty())
      throw std::runtime_error("generator file is empty: " + gens);
    return out;
  }

  FilteredBasis build() const {
    const ClosureMode mode = ops == "both" ? ClosureMode::bracket_and_product
                                           : ClosureMode::bracket_only;
    return closure(generators(), Cutoff{maxdeg, maxharm}, mode);
  }
};

void print_basis(const FilteredBasis& basis) {
  std::cout << "dimension " << basis.dim() << "\n";
  const auto pivots = basis.pivots();
  for (std::size_t i = 0; i < pivots.size(); ++i)
    std::cout << "  [" << i << "] pivot "
              << ClassicalElement::monomial(pivots[i].r, pivots[i].m).str()
              << "\n";
}

// ---------------------------------------------------------------------------
// Subcommand actions. Each returns the process exit code.
// ---------------------------------------------------------------------------

int do_solve(const std::string& which) {
  Determination det;
  if (which == "b-zero")
    det = determine_b_zero();
  else if (which == "bprime-cprime")
    det = determine_bprime_cprime();
  else if (which == "vn-l2-underdetermined")
    det = determine_l2_freedom();
  else
    throw std::invalid_argument("unknown determination: " + which);
  std::cout << "residual = " << det.residual.str() << "\n"
            << det.result.str() << "\n";
  return 0;
}

int do_verify(const Manifest& mf, const std::string& only_csv,
              const std::string& format, int jobs) {
  std::vector<std::string> only;
  std::stringstream ss(only_csv);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) only.push_back(item);

  const auto results = run_checks(mf, only, jobs);
  if (format == "json")
    std::cout << results_json(results).dump(2) << "\n";
  else
    std::cout << results_text(results);

  int bad = 0;
  for (const auto& r : results)
    if (!r.as_expected()) ++bad;
  return bad;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Exact symbolic calculator and verifier for the obstruction to "
      "quantizing the cylinder"};
  app.require_subcommand(1);

  // bracket / mul --------------------------------------------------------
  std::string cf, cg;
  auto* cmd_bracket =
      app.add_subcommand("bracket", "Poisson bracket of two classical expressions");
  cmd_bracket->add_option("f", cf, "classical expression")->required();
  cmd_bracket->add_option("g", cg, "classical expression")->required();

  auto* cmd_mul =
      app.add_subcommand("mul", "product of two classical expressions");
  cmd_mul->add_option("f", cf, "classical expression")->required();
  cmd_mul->add_option("g", cg, "classical expression")->required();

  // quantize -------------------------------------------------------------
  std::string qexpr, qscheme = "type-i";
  ParamOpts qparams;
  auto* cmd_quantize =
      app.add_subcommand("quantize", "apply a quantization map to a classical expression");
  cmd_quantize->add_option("f", qexpr, "classical expression")->required();
  cmd_quantize
      ->add_option("--scheme", qscheme, "scheme: type-i | type-ii | pos-rep")
      ->check(CLI::IsMember({"type-i", "type-ii", "pos-rep"}));
  qparams.attach(cmd_quantize);

  // comm / apply / melem -------------------------------------------------
  std::string oa, ob;
  long long ket_n = 0, bra_m = 0;
  ParamOpts oparams;

  auto* cmd_comm =
      app.add_subcommand("comm", "commutator of two operator expressions");
  cmd_comm->add_option("A", oa, "operator expression")->required();
  cmd_comm->add_option("B", ob, "operator expression")->required();
  oparams.attach(cmd_comm);

  auto* cmd_apply =
      app.add_subcommand("apply", "apply an operator expression to a Fourier ket");
  cmd_apply->add_option("A", oa, "operator expression")->required();
  cmd_apply->add_option("--ket", ket_n, "ket index n")->required();
  oparams.attach(cmd_apply);

  auto* cmd_melem = app.add_subcommand("melem", "matrix element <bra|A|ket>");
  cmd_melem->add_option("A", oa, "operator expression")->required();
  cmd_melem->add_option("--bra", bra_m, "bra index")->required();
  cmd_melem->add_option("--ket", ket_n, "ket index")->required();
  oparams.attach(cmd_melem);

  // solve ----------------------------------------------------------------
  std::string solve_which;
  auto* cmd_solve = app.add_subcommand(
      "solve", "replay a parameter determination and print the result");
  cmd_solve
      ->add_option("name", solve_which,
                   "b-zero | bprime-cprime | vn-l2-underdetermined")
      ->required();

  // closure / member -----------------------------------------------------
  ClosureOpts clop;
  auto* cmd_closure = app.add_subcommand(
      "closure", "bracket/product closure of a generator set inside a cutoff box");
  clop.attach(cmd_closure);

  ClosureOpts memop;
  std::string member_expr;
  auto* cmd_member = app.add_subcommand(
      "member", "membership of a classical expression in a closure");
  cmd_member->add_option("--expr", member_expr, "classical expression")->required();
  memop.attach(cmd_member);

  // verify ---------------------------------------------------------------
  std::string only_csv, format = "text";
  int jobs = static_cast<int>(
      std::max(1u, std::thread::hardware_concurrency()));
  auto* cmd_verify =
      app.add_subcommand("verify", "run the named verification checks");
  cmd_verify->add_option("--only", only_csv, "comma-separated check names");
  cmd_verify->add_option("--format", format, "report format: text | json")
      ->check(CLI::IsMember({"text", "json"}));
  cmd_verify->add_option("--jobs", jobs, "worker threads (1 = serial)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*cmd_bracket) {
      std::cout << poisson_bracket(parse_classical(cf), parse_classical(cg)).str()
                << "\n";
    } else if (*cmd_mul) {
      std::cout << (parse_classical(cf) * parse_classical(cg)).str() << "\n";
    } else if (*cmd_quantize) {
      std::cout << qparams.scheme(qscheme).quantize(parse_classical(qexpr)).str()
                << "\n";
    } else if (*cmd_comm) {
      const auto reg = oparams.registry();
      std::cout << commutator(parse_operator(oa, reg), parse_operator(ob, reg)).str()
                << "\n";
    } else if (*cmd_apply) {
      std::cout << apply_ket(parse_operator(oa, oparams.registry()), ket_n).str()
                << "\n";
    } else if (*cmd_melem) {
      std::cout << matrix_element(parse_operator(oa, oparams.registry()), bra_m,
                                  ket_n)
                       .str()
                << "\n";
    } else if (*cmd_solve) {
      return do_solve(solve_which);
    } else if (*cmd_closure) {
      print_basis(clop.build());
    } else if (*cmd_member) {
      const ClassicalElement f = parse_classical(member_expr);
      const FilteredBasis basis = memop.build();
      const auto res = basis.member(f);
      if (res.certified()) {
        std::cout << "certified_in\n";
        for (const auto& [idx, coef] : res.combination)
          std::cout << "  + (" << coef.str() << ") * ["
                    << basis.vectors()[idx].str() << "]\n";
      } else {
        std::cout << "not_found_at_cutoff (semi-decision: combinations leaving "
                     "the cutoff box were discarded)\n";
      }
    } else if (*cmd_verify) {
      return do_verify(Manifest::load(argv[0]), only_csv, format, jobs);
    }
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
