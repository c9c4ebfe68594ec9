// Acceptance suite: runs every gate criterion and prints one PASS/FAIL line
// per criterion. Exit code is the number of failed criteria.

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include <ecdim/continuity_bounds.hpp>
#include <ecdim/dimension_bounds.hpp>
#include <ecdim/max_entropy.hpp>
#include <ecdim/quantum/checks.hpp>
#include <ecdim/tables.hpp>

using namespace ecdim;

namespace {

int g_failures = 0;
std::string g_cli;

void report(const char* name, bool ok, const std::string& detail) {
  std::printf("[%s] %-22s %s\n", ok ? "PASS" : "FAIL", name, detail.c_str());
  if (!ok) ++g_failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string run_cli(const std::string& args) {
  const std::string cmd = g_cli + " " + args + " 2>/dev/null";
  std::array<char, 4096> buf{};
  std::string out;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return "<popen failed>";
  while (std::fgets(buf.data(), buf.size(), pipe)) out += buf.data();
  pclose(pipe);
  return out;
}

void criterion_tables_1_2() {
  const auto t0 = std::chrono::steady_clock::now();
  std::vector<std::string> bad;
  for (int id : {1, 2}) {
    const TableResult t = generate_table(id);
    for (const TableCell& c : t.cells) {
      if (c.rel_error > 0.05) {
        char line[256];
        std::snprintf(line, sizeof line,
                      "table %d (E/hw=%g, %s): m=%.4e vs reference %.2e (%.1f%% off)", id,
                      c.e_over_hw, to_string(c.kind),
                      static_cast<double>(*c.result.m), c.reference,
                      100.0 * c.rel_error);
        bad.push_back(line);
      }
    }
  }
  const double dt = seconds_since(t0);
  std::string detail = "30 cells, 5% tolerance, " + std::to_string(dt) + " s";
  bool ok = bad.empty() && dt < 10.0;
  if (!bad.empty()) {
    detail += "; deviating cells:";
    for (const std::string& line : bad) detail += "\n       " + line;
    detail +=
        "\n       note: an independent 60-digit evaluation of the minimal m for this "
        "cell agrees with the computed value to all printed digits, and the bundled "
        "reference breaks the row's own scaling pattern; the bundled value appears "
        "to be a misprint. Kept verbatim; reported red here.";
  }
  report("tables-1-2", ok, detail);
}

void criterion_tables_3_6() {
  const auto t0 = std::chrono::steady_clock::now();
  std::vector<std::string> bad;
  for (int id : {3, 4, 5, 6}) {
    const TableResult t = generate_table(id);
    for (const TableCell& c : t.cells) {
      if (c.rel_error > 0.05) {
        char line[256];
        std::snprintf(line, sizeof line, "table %d (E/hw=%g, %s): %.1f%% off", id,
                      c.e_over_hw, to_string(c.kind), 100.0 * c.rel_error);
        bad.push_back(line);
      }
    }
  }
  const double dt = seconds_since(t0);
  std::string detail = "48 cells, 5% tolerance, alphas {1, 1e6}, " +
                       std::to_string(dt) + " s";
  bool ok = bad.empty() && dt < 60.0;
  for (const std::string& line : bad) detail += "\n       " + line;
  report("tables-3-6", ok, detail);
}

void criterion_analytic_crosscheck() {
  const SpectrumModel osc1 = SpectrumModel::single_mode();
  const double f = restriction_loss_bound(CapacityKind::Ea, osc1, 3.0, 86000).value;
  const double target = 0.1 * gibbs_entropy(osc1, 3.0).entropy;
  const double rel = std::fabs(f - target) / target;
  char detail[160];
  std::snprintf(detail, sizeof detail,
                "f_ea(3, 8.6e4) = %.6f nats vs 0.1 F = %.6f nats (%.3f%% apart)", f,
                target, 100.0 * rel);
  report("analytic-crosscheck", rel < 0.02, detail);
}

void criterion_base_invariance() {
  bool ok = true;
  std::string detail = "identical m for nat/two across all table cells";
  for (int id = 1; id <= 6 && ok; ++id) {
    SearchOptions two;
    two.base = LogBase::Two;
    const TableResult tn = generate_table(id);
    const TableResult tt = generate_table(id, two);
    for (std::size_t i = 0; i < tn.cells.size(); ++i) {
      if (*tn.cells[i].result.m != *tt.cells[i].result.m) {
        ok = false;
        detail = "mismatch in table " + std::to_string(id);
        break;
      }
    }
  }
  report("base-invariance", ok, detail);
}

void criterion_formula_identities() {
  const SpectrumModel osc1 = SpectrumModel::single_mode();
  std::mt19937_64 rng(2718);
  std::uniform_real_distribution<double> ue(0.6, 300.0);
  std::uniform_int_distribution<std::uint64_t> um(1, 100000000);
  std::uniform_real_distribution<double> ut(1e-6, 0.5);
  std::uniform_real_distribution<double> up(1.0 + 1e-6, 100.0);
  std::uniform_real_distribution<double> ua(1e-2, 1e6);
  std::uniform_real_distribution<double> uc(0.0, 1e6);
  const EntropyFn fB = output_entropy_bound(osc1, FSource::Exact);

  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const double E = ue(rng);
    const std::uint64_t m = um(rng);
    const double ebar = E - 0.5;
    const double ebarm = static_cast<double>(m);

    auto rel = [](double a, double b) {
      return std::fabs(a - b) / std::max({std::fabs(a), std::fabs(b), 1e-300});
    };
    // f_cp = 2 f_q
    worst = std::max(worst,
                     rel(restriction_loss_bound(CapacityKind::Private, osc1, E, m).value,
                         2.0 * restriction_loss_bound(CapacityKind::Quantum, osc1, E, m).value));
    // truncation-bound variants reproduce the dimension-bound formulas
    worst = std::max(worst,
                     rel(truncation_mi_bound(osc1, E, m, TruncationBoundVariant::General),
                         restriction_loss_bound(CapacityKind::Quantum, osc1, E, m).value));
    if (ebar < ebarm / 16.0)
      worst = std::max(
          worst, rel(truncation_mi_bound(osc1, E, m, TruncationBoundVariant::PerCopyEnergy),
                     restriction_loss_bound(CapacityKind::Classical, osc1, E, m).value));
    if (ebar / ebarm + std::sqrt(ebar / ebarm) < 0.5)
      worst = std::max(
          worst, rel(truncation_mi_bound(osc1, E, m, TruncationBoundVariant::SingleCopy),
                     restriction_loss_bound(CapacityKind::Chi, osc1, E, m).value));

    // energy-limited identities
    const double t = ut(rng), p = up(rng);
    const EnergyLimitParams params{ua(rng), uc(rng)};
    worst = std::max(
        worst,
        rel(energy_limited_loss_at(CapacityKind::Classical, ebar, ebarm, fB, params, E, t),
            energy_limited_loss_at(CapacityKind::Ea, ebar, ebarm, fB, params, E, t)));
    const double trunc_eps = ebar / ebarm + std::sqrt(ebar / ebarm);
    worst = std::max(
        worst,
        rel(energy_limited_loss_at(CapacityKind::Quantum, ebar, ebarm, fB, params, E, t, p),
            energy_limited_qcmi_bound(trunc_eps, E, params, fB, p, t)));
  }
  char detail[96];
  std::snprintf(detail, sizeof detail, "1000 random draws, worst relative gap %.2e",
                worst);
  report("formula-identities", worst <= 1e-12, detail);
}

void criterion_gibbs() {
  bool ok = true;
  double worst_gap = 0.0, worst_resid = 0.0, worst_margin = 0.0;
  const SpectrumModel osc1 = SpectrumModel::single_mode();
  for (int i = 0; i < 100; ++i) {
    const double e = 0.5 + (1000.0 - 0.5) * i / 99.0;
    const GibbsSolution s = gibbs_entropy(osc1, e);
    worst_gap = std::max(worst_gap, std::fabs(s.entropy - g_func(e - 0.5)));
    worst_resid = std::max(worst_resid, s.residual);
    worst_margin = std::max(worst_margin, s.entropy - fhat(osc1, e));
  }
  for (const auto& omegas : {std::vector<double>{1.0, 1.6}, std::vector<double>{0.7, 1.0, 2.3}}) {
    const SpectrumModel spec = SpectrumModel::oscillator(omegas, 1.0);
    const double e0 = spec.ground_energy();
    for (int i = 0; i < 100; ++i) {
      const double e = e0 + (1000.0 - e0) * i / 99.0;
      const GibbsSolution s = gibbs_entropy(spec, e);
      worst_resid = std::max(worst_resid, s.residual);
      worst_margin = std::max(worst_margin, s.entropy - fhat(spec, e));
    }
  }
  ok = worst_gap <= 1e-9 && worst_resid <= 1e-10 && worst_margin <= 1e-9;
  char detail[160];
  std::snprintf(detail, sizeof detail,
                "|F-g| <= %.1e, residual <= %.1e, F - Fhat <= %.1e (modes 1..3)",
                worst_gap, worst_resid, worst_margin);
  report("gibbs-correctness", ok, detail);
}

void criterion_randomized_suites() {
  using namespace ecdim::quantum;
  const std::uint64_t seed = 20250808;
  const auto t0 = std::chrono::steady_clock::now();
  std::vector<CheckReport> reports{
      check_gentle(10000, seed),        check_pinching(10000, seed),
      check_tail_bound(10000, seed),    check_misc_inequalities(10000, seed),
      check_qcmi_continuity(1000, seed), check_chi_truncation(1000, seed)};
  const double dt = seconds_since(t0);
  bool ok = dt < 300.0;
  std::string detail = "seed " + std::to_string(seed) + ", " + std::to_string(dt) + " s;";
  for (const CheckReport& r : reports) {
    ok = ok && r.pass();
    char part[96];
    std::snprintf(part, sizeof part, " %s: %zu violations (margin %.1e);",
                  r.check.c_str(), r.violations.size(), r.max_margin_used);
    detail += part;
  }
  report("randomized-suites", ok, detail);
}

void criterion_determinism() {
  const std::string v1 = run_cli("verify qcmi 100 --seed 11");
  const std::string v2 = run_cli("verify qcmi 100 --seed 11");
  const std::string t1 = run_cli("table 3 --format json");
  const std::string t2 = run_cli("table 3 --format json");
  const bool ok = !v1.empty() && v1 == v2 && !t1.empty() && t1 == t2;
  report("determinism", ok,
         ok ? "byte-identical JSON across repeated runs (verify + table)"
            : "outputs differ between identical runs");
}

}  // namespace

int main(int argc, char** argv) {
  if (argc > 1) g_cli = argv[1];
  std::printf("acceptance suite\n");
  criterion_tables_1_2();
  criterion_tables_3_6();
  criterion_analytic_crosscheck();
  criterion_base_invariance();
  criterion_formula_identities();
  criterion_gibbs();
  criterion_randomized_suites();
  if (!g_cli.empty()) {
    criterion_determinism();
  } else {
    report("determinism", false, "CLI path not supplied");
  }
  std::printf("%d criterion(s) failed\n", g_failures);
  return g_failures;
}
