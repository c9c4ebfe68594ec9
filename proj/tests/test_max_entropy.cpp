#include <doctest.h>

#include <cmath>
#include <vector>

#include <ecdim/max_entropy.hpp>

using namespace ecdim;

TEST_CASE("two-level Gibbs solutions") {
  const SpectrumModel qubit = SpectrumModel::explicit_levels({0.0, 1.0});

  // maximally mixed at the uniform mean energy
  const GibbsSolution mid = gibbs_entropy(qubit, 0.5);
  CHECK(mid.entropy == doctest::Approx(std::log(2.0)).epsilon(1e-12));
  CHECK(mid.lambda == 0.0);

  // closed form: lambda = ln 3, entropy = h2(1/4)
  const GibbsSolution low = gibbs_entropy(qubit, 0.25);
  CHECK(low.lambda == doctest::Approx(std::log(3.0)).epsilon(1e-10));
  CHECK(low.entropy == doctest::Approx(binary_entropy(0.25)).epsilon(1e-10));
  CHECK(low.residual <= 1e-10);
  CHECK(low.cutoff == 2);

  CHECK_THROWS_AS(gibbs_entropy(qubit, -0.1), std::domain_error);
}

TEST_CASE("one-mode oscillator matches the closed form g(E/hw - 1/2)") {
  const SpectrumModel osc = SpectrumModel::single_mode();
  const GibbsSolution sol = gibbs_entropy(osc, 3.0);
  CHECK(sol.entropy == doctest::Approx(2.0939435600484003).epsilon(1e-10));
  CHECK(sol.residual <= 1e-10);
  CHECK(sol.cutoff == 0);

  // scan a grid with non-unit frequency and hbar
  const SpectrumModel osc2 = SpectrumModel::single_mode(1.3, 0.7);
  const double hw = 1.3 * 0.7;
  for (int i = 0; i <= 60; ++i) {
    const double e = 0.5 * hw + hw * std::pow(10.0, -3.0 + 6.0 * i / 60.0);
    const GibbsSolution s = gibbs_entropy(osc2, e);
    CHECK(std::fabs(s.entropy - g_func(e / hw - 0.5)) <= 1e-9);
    CHECK(s.residual <= 1e-10);
  }
}

TEST_CASE("degenerate energies") {
  const SpectrumModel osc = SpectrumModel::single_mode();
  const GibbsSolution ground = gibbs_entropy(osc, 0.5);
  CHECK(ground.entropy == 0.0);
  CHECK(std::isinf(ground.lambda));

  const SpectrumModel deg = SpectrumModel::explicit_levels({0.0, 0.0, 1.0});
  CHECK(gibbs_entropy(deg, 0.0).entropy == doctest::Approx(std::log(2.0)));

  // beyond the uniform mean the constraint is inactive
  const SpectrumModel tri = SpectrumModel::explicit_levels({0.0, 1.0, 2.0});
  CHECK(gibbs_entropy(tri, 1.5).entropy == doctest::Approx(std::log(3.0)));
  CHECK(gibbs_entropy(tri, 10.0).entropy == doctest::Approx(std::log(3.0)));
}

TEST_CASE("multi-mode Gibbs validated against truncated level sums") {
  const SpectrumModel spec = SpectrumModel::oscillator({1.0, 1.7}, 1.0);
  const double e0 = spec.ground_energy();
  for (double ebar : {0.4, 1.0, 3.0, 8.0}) {
    const GibbsSolution sol = gibbs_entropy(spec, e0 + ebar);
    CHECK(sol.residual <= 1e-10);
    // independent route: direct sums over enumerated levels far past the tail
    const std::vector<double> levels = lowest_levels(spec, 20000);
    double z = 0.0, num = 0.0;
    for (double e : levels) {
      const double w = std::exp(-sol.lambda * (e - e0));
      z += w;
      num += (e - e0) * w;
    }
    const double mean_bar = num / z;
    const double entropy = sol.lambda * mean_bar + std::log(z);
    CHECK(mean_bar == doctest::Approx(ebar).epsilon(1e-9));
    CHECK(entropy == doctest::Approx(sol.entropy).epsilon(1e-9));
  }
}

TEST_CASE("gibbs entropy is nondecreasing and concave in E") {
  for (const SpectrumModel& spec :
       {SpectrumModel::single_mode(), SpectrumModel::oscillator({1.0, 2.0}, 1.0),
        SpectrumModel::explicit_levels({0.0, 0.3, 1.1, 2.0, 5.0})}) {
    const double e0 = spec.ground_energy();
    std::vector<double> es, fs;
    for (int i = 0; i <= 40; ++i) es.push_back(e0 + 0.05 + 0.1 * i);
    for (double e : es) fs.push_back(gibbs_entropy(spec, e).entropy);
    for (std::size_t i = 1; i < fs.size(); ++i) CHECK(fs[i] >= fs[i - 1] - 1e-12);
    for (std::size_t i = 1; i + 1 < fs.size(); ++i)
      CHECK(fs[i] >= 0.5 * (fs[i - 1] + fs[i + 1]) - 1e-9);
  }
}

TEST_CASE("fbar values") {
  const SpectrumModel osc = SpectrumModel::single_mode();
  CHECK(fbar(osc, 0.0) == 0.0);
  CHECK(fbar(osc, 2.5) == doctest::Approx(2.0939435600484003).epsilon(1e-10));
  const SpectrumModel qubit = SpectrumModel::explicit_levels({0.0, 1.0});
  CHECK(fbar(qubit, 0.25) == doctest::Approx(binary_entropy(0.25)).epsilon(1e-10));
  CHECK_THROWS_AS(fbar(osc, -0.5), std::domain_error);
}

TEST_CASE("fhat closed form") {
  CHECK(fhat(1, {1.0}, 1.0, 0.5) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(fhat(1, {1.0}, 1.0, 3.0) == doctest::Approx(2.252762968495368).epsilon(1e-13));
  CHECK(fhat(2, {1.0, 1.0}, 1.0, 2.0) ==
        doctest::Approx(2.8109302162163288).epsilon(1e-13));
  CHECK_THROWS_AS(fhat(1, {1.0}, 1.0, -0.6), std::domain_error);
  CHECK_THROWS_AS(fhat(2, {1.0}, 1.0, 1.0), std::invalid_argument);
}

TEST_CASE("fhat dominates the exact max entropy") {
  const std::vector<std::vector<double>> cases = {{1.0}, {1.0, 1.6}, {0.7, 1.0, 2.3}};
  for (const auto& omegas : cases) {
    const SpectrumModel spec = SpectrumModel::oscillator(omegas, 1.0);
    const double e0 = spec.ground_energy();
    for (int i = 0; i <= 50; ++i) {
      const double e = e0 * (1.0 + std::pow(10.0, -2.0 + 8.0 * i / 50.0));
      CHECK(fhat(spec, e) - gibbs_entropy(spec, e).entropy >= -1e-9);
    }
  }
}

TEST_CASE("condition diagnostics") {
  CHECK(condition_diagnostics(SpectrumModel::single_mode()).trace_class);
  CHECK(condition_diagnostics(SpectrumModel::single_mode()).sqrt_sublinear);

  const auto fin = condition_diagnostics(SpectrumModel::explicit_levels({0.0, 1.0, 2.0}));
  CHECK(fin.trace_class);
  CHECK(fin.sqrt_sublinear);

  std::vector<double> log_levels, lin_levels;
  for (int k = 0; k < 4096; ++k) {
    log_levels.push_back(std::log(k + 2.0));
    lin_levels.push_back(static_cast<double>(k));
  }
  const auto log_rep = condition_diagnostics(SpectrumModel::explicit_levels(log_levels));
  CHECK_FALSE(log_rep.trace_class);
  const auto lin_rep = condition_diagnostics(SpectrumModel::explicit_levels(lin_levels));
  CHECK(lin_rep.trace_class);
  CHECK(lin_rep.sqrt_sublinear);
}

TEST_CASE("entropy bound handles") {
  const SpectrumModel osc = SpectrumModel::single_mode();
  const EntropyFn exact = grounded_entropy_bound(osc, FSource::Exact);
  const EntropyFn hat = grounded_entropy_bound(osc, FSource::Fhat);
  for (double x : {0.1, 1.0, 25.0, 4000.0}) {
    CHECK(exact(x) == doctest::Approx(fbar(osc, x)).epsilon(1e-10));
    CHECK(hat(x) >= exact(x) - 1e-12);
  }
  const EntropyFn out_hat = output_entropy_bound(osc, FSource::Fhat);
  CHECK(out_hat(3.0) == doctest::Approx(fhat(osc, 3.0)));
  const SpectrumModel ex = SpectrumModel::explicit_levels({0.0, 1.0});
  CHECK_THROWS_AS(grounded_entropy_bound(ex, FSource::Fhat), std::invalid_argument);
  CHECK(output_entropy_bound(ex, FSource::Exact)(0.25) ==
        doctest::Approx(binary_entropy(0.25)).epsilon(1e-10));
}
