#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <ecdim/continuity_bounds.hpp>
#include <ecdim/dimension_bounds.hpp>
#include <ecdim/max_entropy.hpp>
#include <ecdim/quantum/checks.hpp>
#include <ecdim/spectrum.hpp>
#include <ecdim/tables.hpp>

namespace {

// exit codes: 0 ok, 1 internal, 2 usage, 3 tolerance/verification failure,
// 4 infeasible within search cap, 5 bad input / domain error
constexpr int kOk = 0;
constexpr int kInternal = 1;
constexpr int kUsage = 2;
constexpr int kToleranceFail = 3;
constexpr int kInfeasible = 4;
constexpr int kBadInput = 5;

using nlohmann::json;

struct CommonOpts {
  std::string base = "nat";
  std::string format = "json";
  std::string f_source = "exact";
  std::uint64_t cap = 0;
  std::uint64_t seed = 12345;
  double tol = 0.05;
  double solver_tol = 1e-12;

  ecdim::SearchOptions search() const {
    ecdim::SearchOptions o;
    o.base = base == "two" ? ecdim::LogBase::Two : ecdim::LogBase::Natural;
    o.f_source = f_source == "fhat" ? ecdim::FSource::Fhat : ecdim::FSource::Exact;
    o.m_cap = cap;
    o.solver_tol = solver_tol;
    return o;
  }
};

void add_common(CLI::App* sub, CommonOpts& c, bool with_tol = false) {
  sub->add_option("--base", c.base, "log base for reported values")
      ->check(CLI::IsMember({"nat", "two"}));
  sub->add_option("--format", c.format, "output format")
      ->check(CLI::IsMember({"csv", "json"}));
  sub->add_option("--f-source", c.f_source,
                  "max-entropy bound: exact Gibbs or oscillator closed form")
      ->check(CLI::IsMember({"exact", "fhat"}));
  sub->add_option("--cap", c.cap, "search cap for m (0 = automatic)");
  sub->add_option("--solver-tol", c.solver_tol, "relative tolerance of inner minimizations")
      ->check(CLI::PositiveNumber);
  if (with_tol)
    sub->add_option("--tol", c.tol, "allowed relative table deviation")
        ->check(CLI::PositiveNumber);
}

ecdim::SpectrumModel load_spectrum(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open spectrum file '" + path + "'");
  json j;
  in >> j;
  return ecdim::SpectrumModel::from_json(j);
}

ecdim::Epsilon parse_epsilon(const std::string& text) {
  if (text.rfind("frac:", 0) == 0)
    return ecdim::Epsilon::fraction_of_fmax(std::stod(text.substr(5)));
  return ecdim::Epsilon::absolute(std::stod(text));
}

const char* base_name(ecdim::LogBase b) {
  return b == ecdim::LogBase::Two ? "two" : "nat";
}

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

int run_table(int id, const CommonOpts& c) {
  const ecdim::TableResult t = ecdim::generate_table(id, c.search());
  if (c.format == "csv")
    std::cout << ecdim::table_csv(t);
  else
    emit(ecdim::table_json(t));
  if (!t.within(c.tol)) {
    std::cerr << "table " << id << ": max relative deviation " << t.max_rel_error
              << " exceeds tolerance " << c.tol << "\n";
    return kToleranceFail;
  }
  return kOk;
}

int run_mdim(const std::string& kind_s, const std::string& file, double E,
             const std::string& eps_s, std::optional<double> alpha,
             std::optional<double> ec, const CommonOpts& c) {
  const ecdim::CapacityKind kind = ecdim::capacity_from_string(kind_s);
  const ecdim::SpectrumModel spec = load_spectrum(file);
  const ecdim::Epsilon eps = parse_epsilon(eps_s);
  const ecdim::SearchOptions opts = c.search();

  ecdim::BoundEvaluation r;
  json j{{"kind", kind_s}, {"E", E}, {"eps", eps_s},
         {"log_base", base_name(opts.base)},
         {"f_source", opts.f_source == ecdim::FSource::Fhat ? "fhat" : "exact"}};
  if (alpha || ec) {
    ecdim::EnergyLimitParams params{alpha.value_or(1.0), ec.value_or(0.0)};
    const ecdim::EntropyFn fb = ecdim::output_entropy_bound(spec, opts.f_source);
    r = ecdim::energy_limited_sufficient_dimension(kind, spec, fb, params, E, eps, opts);
    j["alpha"] = params.alpha;
    j["ec"] = params.ec;
  } else {
    r = ecdim::sufficient_input_dimension(kind, spec, E, eps, opts);
    const ecdim::EnergyBudget budget = ecdim::energy_budget(spec, E);
    const double ebar_m = spec.eigenvalue(*r.m) - budget.ground;
    j["floor_constraint"] = {{"ebar_m", ebar_m},
                             {"sixteen_ebar", 16.0 * budget.grounded()},
                             {"satisfied", ebar_m >= 16.0 * budget.grounded()}};
  }
  j["m"] = *r.m;
  j["f_at_m"] = r.value;
  if (r.t) j["t"] = *r.t;
  if (r.p) j["p"] = *r.p;
  if (c.format == "csv") {
    std::cout << "kind,E,eps,m,f_at_m\n"
              << kind_s << "," << E << "," << eps_s << ","
              << ecdim::format_sci3(static_cast<double>(*r.m)) << "," << r.value << "\n";
  } else {
    emit(j);
  }
  return kOk;
}

int run_fmax(const std::string& file, double E, const CommonOpts& c) {
  const ecdim::SpectrumModel spec = load_spectrum(file);
  const ecdim::GibbsSolution sol = ecdim::gibbs_entropy(spec, E);
  const ecdim::ConditionReport cond = ecdim::condition_diagnostics(spec);
  const ecdim::SearchOptions opts = c.search();
  json j{{"E", E},
         {"entropy", ecdim::from_nats(sol.entropy, opts.base)},
         {"lambda", std::isinf(sol.lambda) ? json("inf") : json(sol.lambda)},
         {"cutoff", sol.cutoff},
         {"residual", sol.residual},
         {"log_base", base_name(opts.base)},
         {"diagnostics", {{"trace_class", cond.trace_class},
                          {"sqrt_sublinear", cond.sqrt_sublinear},
                          {"note", cond.note}}}};
  if (c.format == "csv")
    std::cout << "E,entropy,lambda,cutoff\n"
              << E << "," << ecdim::from_nats(sol.entropy, opts.base) << ","
              << sol.lambda << "," << sol.cutoff << "\n";
  else
    emit(j);
  return kOk;
}

int run_vbound(const std::string& kind_s, const std::string& file, double E, double eps,
               const CommonOpts& c) {
  const ecdim::CapacityKind kind = ecdim::capacity_from_string(kind_s);
  const ecdim::SpectrumModel spec = load_spectrum(file);
  const ecdim::SearchOptions opts = c.search();
  const ecdim::BoundEvaluation r = ecdim::capacity_continuity_bound(kind, spec, E, eps, opts);
  emit(json{{"kind", kind_s},
            {"E", E},
            {"eps", eps},
            {"value", r.value},
            {"witness_m", *r.m},
            {"log_base", base_name(opts.base)},
            {"f_source", opts.f_source == ecdim::FSource::Fhat ? "fhat" : "exact"},
            {"m_cap", opts.m_cap}});
  return kOk;
}

int run_bound_qcmi(const std::string& file, double eps, double E,
                   const std::string& variant_s, const CommonOpts& c) {
  const ecdim::SpectrumModel spec = load_spectrum(file);
  const ecdim::SearchOptions opts = c.search();
  ecdim::QcmiBoundVariant variant = ecdim::QcmiBoundVariant::General;
  if (variant_s == "equal-bc") variant = ecdim::QcmiBoundVariant::EqualMarginalBC;
  if (variant_s == "pure") variant = ecdim::QcmiBoundVariant::Pure;
  if (variant_s == "pure-equal-bc") variant = ecdim::QcmiBoundVariant::PureEqualMarginalBC;
  const ecdim::EntropyFn fstar = ecdim::grounded_entropy_bound(spec, opts.f_source);
  const double v = ecdim::qcmi_continuity_bound(eps, E, fstar, variant, opts.base);
  emit(json{{"bound", "qcmi"}, {"eps", eps}, {"E", E}, {"variant", variant_s},
            {"value", v}, {"log_base", base_name(opts.base)}});
  return kOk;
}

int run_bound_trunc_mi(const std::string& file, double E, std::uint64_t m,
                       const std::string& variant_s, const CommonOpts& c) {
  const ecdim::SpectrumModel spec = load_spectrum(file);
  ecdim::TruncationBoundVariant variant = ecdim::TruncationBoundVariant::General;
  if (variant_s == "per-copy") variant = ecdim::TruncationBoundVariant::PerCopyEnergy;
  if (variant_s == "single-copy") variant = ecdim::TruncationBoundVariant::SingleCopy;
  const double v = ecdim::truncation_mi_bound(spec, E, m, variant, c.search());
  emit(json{{"bound", "trunc-mi"}, {"E", E}, {"m", m}, {"variant", variant_s},
            {"value", v}, {"log_base", c.base}});
  return kOk;
}

int run_bound_el_qcmi(const std::string& file, double eps, double E, double p, double t,
                      double alpha, double ec, bool per_copy, const CommonOpts& c) {
  const ecdim::SpectrumModel spec = load_spectrum(file);
  const ecdim::SearchOptions opts = c.search();
  const ecdim::EntropyFn fb = ecdim::output_entropy_bound(spec, opts.f_source);
  const double v = ecdim::energy_limited_qcmi_bound(eps, E, {alpha, ec}, fb, p, t,
                                                    per_copy, opts.base);
  emit(json{{"bound", "el-qcmi"}, {"eps", eps}, {"E", E}, {"p", per_copy ? 1.0 : p},
            {"t", t}, {"alpha", alpha}, {"ec", ec}, {"per_copy", per_copy},
            {"value", v}, {"log_base", c.base}});
  return kOk;
}

int run_verify(const std::string& check, std::uint64_t trials, const CommonOpts& c) {
  using namespace ecdim::quantum;
  std::vector<CheckReport> reports;
  auto want = [&](const char* name) { return check == "all" || check == name; };
  if (want("gentle")) reports.push_back(check_gentle(trials, c.seed));
  if (want("pinching")) reports.push_back(check_pinching(trials, c.seed));
  if (want("tail")) reports.push_back(check_tail_bound(trials, c.seed));
  if (want("misc")) reports.push_back(check_misc_inequalities(trials, c.seed));
  if (want("qcmi")) reports.push_back(check_qcmi_continuity(trials, c.seed));
  if (want("chi-trunc")) reports.push_back(check_chi_truncation(trials, c.seed));
  if (reports.empty()) throw std::invalid_argument("unknown check '" + check + "'");

  bool ok = true;
  json out = json::array();
  for (const CheckReport& r : reports) {
    out.push_back(r.to_json());
    ok = ok && r.pass();
  }
  emit(out.size() == 1 ? out.front() : out);
  return ok ? kOk : kToleranceFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"explicit dimension and continuity bounds for energy-constrained channels"};
  app.require_subcommand(1);

  CommonOpts c;

  int table_id = 1;
  CLI::App* table = app.add_subcommand("table", "recompute a bundled reference table");
  table->add_option("id", table_id, "table number")->required()->check(CLI::Range(1, 6));
  add_common(table, c, true);

  std::string kind_s, spec_file, eps_s;
  double E = 0.0;
  std::optional<double> alpha, ec;
  CLI::App* mdim = app.add_subcommand("mdim", "epsilon-sufficient input dimension");
  mdim->add_option("kind", kind_s, "capacity: chi|c|ea|q|cp")->required();
  mdim->add_option("spectrum", spec_file, "spectrum JSON file")->required();
  mdim->add_option("E", E, "input energy bound")->required();
  mdim->add_option("eps", eps_s, "threshold: absolute or frac:<x>")->required();
  mdim->add_option("--alpha", alpha, "energy amplification factor (energy-limited search)");
  mdim->add_option("--ec", ec, "constant energy offset (energy-limited search)");
  add_common(mdim, c);

  std::string fmax_file;
  double fmax_E = 0.0;
  CLI::App* fmax = app.add_subcommand("fmax", "maximal entropy at bounded energy");
  fmax->add_option("spectrum", fmax_file)->required();
  fmax->add_option("E", fmax_E)->required();
  add_common(fmax, c);

  std::string vb_kind, vb_file;
  double vb_E = 0.0, vb_eps = 0.0;
  CLI::App* vbound = app.add_subcommand("vbound", "capacity continuity bound");
  vbound->add_option("kind", vb_kind, "capacity: chi|c|q|cp")->required();
  vbound->add_option("spectrum", vb_file)->required();
  vbound->add_option("E", vb_E)->required();
  vbound->add_option("eps", vb_eps)->required();
  add_common(vbound, c);

  CLI::App* bound = app.add_subcommand("bound", "evaluate a single continuity bound");
  bound->require_subcommand(1);
  std::string b_file, b_variant = "general";
  double b_eps = 0.0, b_E = 0.0, b_p = 2.0, b_t = 0.25, b_alpha = 1.0, b_ec = 0.0;
  std::uint64_t b_m = 1;
  bool b_per_copy = false;
  CLI::App* bq = bound->add_subcommand("qcmi", "QCMI continuity bound");
  bq->add_option("spectrum", b_file)->required();
  bq->add_option("eps", b_eps)->required();
  bq->add_option("E", b_E)->required();
  bq->add_option("--variant", b_variant)
      ->check(CLI::IsMember({"general", "equal-bc", "pure", "pure-equal-bc"}));
  add_common(bq, c);
  CLI::App* bt = bound->add_subcommand("trunc-mi", "mutual-information truncation bound");
  bt->add_option("spectrum", b_file)->required();
  bt->add_option("E", b_E)->required();
  bt->add_option("m", b_m)->required();
  bt->add_option("--variant", b_variant)
      ->check(CLI::IsMember({"general", "per-copy", "single-copy"}));
  add_common(bt, c);
  CLI::App* be = bound->add_subcommand("el-qcmi", "energy-limited QCMI bound");
  be->add_option("spectrum", b_file)->required();
  be->add_option("eps", b_eps)->required();
  be->add_option("E", b_E)->required();
  be->add_option("--p", b_p);
  be->add_option("--t", b_t);
  be->add_option("--alpha", b_alpha);
  be->add_option("--ec", b_ec);
  be->add_flag("--per-copy", b_per_copy);
  add_common(be, c);

  std::string check_name;
  std::uint64_t trials = 1000;
  CLI::App* verify = app.add_subcommand("verify", "randomized inequality verification");
  verify->add_option("check", check_name,
                     "gentle|pinching|tail|misc|qcmi|chi-trunc|all")->required();
  verify->add_option("trials", trials)->required();
  verify->add_option("--seed", c.seed);
  add_common(verify, c);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (table->parsed()) return run_table(table_id, c);
    if (mdim->parsed()) return run_mdim(kind_s, spec_file, E, eps_s, alpha, ec, c);
    if (fmax->parsed()) return run_fmax(fmax_file, fmax_E, c);
    if (vbound->parsed()) return run_vbound(vb_kind, vb_file, vb_E, vb_eps, c);
    if (bound->parsed()) {
      if (bound->get_subcommand("qcmi")->parsed())
        return run_bound_qcmi(b_file, b_eps, b_E, b_variant, c);
      if (bound->get_subcommand("trunc-mi")->parsed())
        return run_bound_trunc_mi(b_file, b_E, b_m, b_variant, c);
      if (bound->get_subcommand("el-qcmi")->parsed())
        return run_bound_el_qcmi(b_file, b_eps, b_E, b_p, b_t, b_alpha, b_ec, b_per_copy, c);
    }
    if (verify->parsed()) return run_verify(check_name, trials, c);
    std::cerr << "no subcommand\n";
    return kUsage;
  } catch (const ecdim::search_cap_error& e) {
    nlohmann::json inc{{"feasible", e.incumbent.feasible}, {"value", e.incumbent.value}};
    if (e.incumbent.m) inc["m"] = *e.incumbent.m;
    std::cerr << nlohmann::json{{"error", e.what()}, {"incumbent", inc}}.dump(2) << "\n";
    return kInfeasible;
  } catch (const std::domain_error& e) {
    std::cerr << "domain error: " << e.what() << "\n";
    return kBadInput;
  } catch (const std::invalid_argument& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kBadInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInternal;
  }
}
