#include <doctest.h>

#include <algorithm>
#include <vector>

#include <json.hpp>

#include <ecdim/spectrum.hpp>

using namespace ecdim;

TEST_CASE("explicit list validation") {
  CHECK_THROWS_AS(SpectrumModel::explicit_levels({0.0}), std::invalid_argument);
  CHECK_THROWS_AS(SpectrumModel::explicit_levels({1.0, 0.5}), std::invalid_argument);
  CHECK_THROWS_AS(SpectrumModel::explicit_levels({0.0, std::nan("")}), std::invalid_argument);
  CHECK_THROWS_AS(SpectrumModel::oscillator({}), std::invalid_argument);
  CHECK_THROWS_AS(SpectrumModel::oscillator({1.0, -2.0}), std::invalid_argument);
  CHECK_THROWS_AS(SpectrumModel::oscillator({1.0}, 0.0), std::invalid_argument);
}

TEST_CASE("eigenvalue access") {
  const SpectrumModel osc1 = SpectrumModel::single_mode();
  CHECK(osc1.eigenvalue(2) == doctest::Approx(2.5).epsilon(1e-15));
  CHECK(osc1.ground_energy() == doctest::Approx(0.5));
  CHECK(osc1.eigenvalue(1000000000000ull) == doctest::Approx(1.0000000000005e12));

  const SpectrumModel osc2 = SpectrumModel::oscillator({1.0, 1.0});
  const std::vector<double> expect{1.0, 2.0, 2.0, 3.0, 3.0, 3.0};
  for (std::size_t k = 0; k < expect.size(); ++k)
    CHECK(osc2.eigenvalue(k) == doctest::Approx(expect[k]).epsilon(1e-15));
  CHECK(osc2.ground_energy() == doctest::Approx(1.0));

  const SpectrumModel ex = SpectrumModel::explicit_levels({0.0, 1.0, 4.0});
  CHECK(ex.eigenvalue(0) == 0.0);
  CHECK_THROWS_AS(ex.eigenvalue(3), std::out_of_range);
}

namespace {

// brute force: all lattice sums below an energy cutoff, sorted
std::vector<double> brute_levels(const std::vector<double>& omegas, double hbar,
                                 std::size_t count) {
  double cutoff = hbar * 2.0;
  for (double w : omegas) cutoff += hbar * w;
  std::vector<double> out;
  while (out.size() < count) {
    cutoff *= 2.0;
    out.clear();
    std::vector<std::uint32_t> tuple(omegas.size(), 0);
    // odometer over the box [0, n_max]^l with per-coordinate bounds from cutoff
    std::vector<std::uint32_t> maxn(omegas.size());
    for (std::size_t i = 0; i < omegas.size(); ++i)
      maxn[i] = static_cast<std::uint32_t>(cutoff / (hbar * omegas[i])) + 1;
    while (true) {
      double e = 0.0;
      for (std::size_t i = 0; i < omegas.size(); ++i)
        e += hbar * omegas[i] * (static_cast<double>(tuple[i]) + 0.5);
      if (e <= cutoff) out.push_back(e);
      std::size_t i = 0;
      for (; i < tuple.size(); ++i) {
        if (tuple[i] < maxn[i]) {
          ++tuple[i];
          break;
        }
        tuple[i] = 0;
      }
      if (i == tuple.size()) break;
    }
    std::sort(out.begin(), out.end());
  }
  out.resize(count);
  return out;
}

}  // namespace

TEST_CASE("multi-mode enumeration matches brute force exactly") {
  const std::vector<std::vector<double>> cases = {
      {1.0, 1.0}, {1.0, 1.7}, {0.5, 1.0, 1.3}};
  for (const auto& omegas : cases) {
    const SpectrumModel spec = SpectrumModel::oscillator(omegas, 1.0);
    const std::vector<double> expected = brute_levels(omegas, 1.0, 10000);
    const std::vector<double> got = lowest_levels(spec, 10000);
    REQUIRE(got.size() == expected.size());
    for (std::size_t k = 0; k < got.size(); ++k) {
      REQUIRE(got[k] == expected[k]);  // exact double equality
    }
  }
}

TEST_CASE("multi-mode indices beyond the enumeration cap are rejected") {
  const SpectrumModel osc2 = SpectrumModel::oscillator({1.0, 1.0});
  CHECK(osc2.max_index() == SpectrumModel::kEnumerationCap - 1);
  CHECK_THROWS_AS(osc2.eigenvalue(SpectrumModel::kEnumerationCap), std::runtime_error);
  // single-mode has no cap: the analytic ladder covers any index
  CHECK(SpectrumModel::single_mode().max_index() > SpectrumModel::kEnumerationCap);
}

TEST_CASE("ground degeneracy") {
  CHECK(SpectrumModel::explicit_levels({0.0, 0.0, 1.0}).ground_degeneracy() == 2);
  CHECK(SpectrumModel::explicit_levels({0.0, 1.0}).ground_degeneracy() == 1);
  CHECK(SpectrumModel::oscillator({1.0, 2.0}).ground_degeneracy() == 1);
}

TEST_CASE("JSON round trip and schema errors") {
  const SpectrumModel osc = SpectrumModel::oscillator({1.0, 2.5}, 0.7);
  const SpectrumModel osc_rt = SpectrumModel::from_json(osc.to_json());
  CHECK(osc_rt.omegas() == osc.omegas());
  CHECK(osc_rt.hbar() == osc.hbar());

  const SpectrumModel ex = SpectrumModel::explicit_levels({0.0, 0.5, 2.0});
  CHECK(SpectrumModel::from_json(ex.to_json()).levels() == ex.levels());

  const auto j = nlohmann::json::parse(
      R"({"kind":"oscillator","ell":1,"omegas":[1.0],"hbar":1.0})");
  CHECK(SpectrumModel::from_json(j).is_single_mode());
  const auto bad_ell = nlohmann::json::parse(
      R"({"kind":"oscillator","ell":3,"omegas":[1.0],"hbar":1.0})");
  CHECK_THROWS_AS(SpectrumModel::from_json(bad_ell), std::invalid_argument);
  const auto bad_kind = nlohmann::json::parse(R"({"kind":"continuous"})");
  CHECK_THROWS_AS(SpectrumModel::from_json(bad_kind), std::invalid_argument);
}

TEST_CASE("single-mode energy convenience") {
  const SpectrumModel spec = SpectrumModel::single_mode(2.0, 0.5);
  CHECK(spec.energy_at(3.0) == doctest::Approx(3.0));  // 3 * hbar*omega = 3*1
  CHECK_THROWS_AS(SpectrumModel::oscillator({1.0, 1.0}).energy_at(3.0),
                  std::invalid_argument);
}
