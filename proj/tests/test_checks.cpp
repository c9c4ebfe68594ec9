#include <doctest.h>

#include <ecdim/quantum/checks.hpp>

using namespace ecdim;
using namespace ecdim::quantum;

TEST_CASE("randomized suites pass at smoke scale") {
  CHECK(check_gentle(200, 7).pass());
  CHECK(check_pinching(200, 7).pass());
  CHECK(check_tail_bound(200, 7).pass());
  CHECK(check_misc_inequalities(200, 7).pass());
  CHECK(check_qcmi_continuity(60, 7).pass());
  const CheckReport chi = check_chi_truncation(200, 7);
  CHECK(chi.pass());
  CHECK(chi.skipped < chi.trials);  // the energy steering keeps most trials live
}

TEST_CASE("reports are reproducible for a fixed seed") {
  const auto a = check_gentle(100, 42).to_json().dump();
  const auto b = check_gentle(100, 42).to_json().dump();
  CHECK(a == b);
  const auto c = check_qcmi_continuity(20, 9).to_json();
  CHECK(c.at("seed").get<std::uint64_t>() == 9);
  CHECK(c.at("trials").get<std::uint64_t>() == 20);
  CHECK(c.at("check").get<std::string>() == "qcmi");
  CHECK(c.contains("max_margin_used"));
  CHECK(c.at("violations").is_array());
}

TEST_CASE("gentle-measurement edge cases") {
  RngStream rng(1, 0);
  const int d = 4;
  const Matrix rho = random_state(d, rng);
  const Matrix id = Matrix::Identity(d, d);
  // P = I: both sides vanish
  CHECK(trace_norm((id - id) * rho * id) == doctest::Approx(0.0));
  // P = 0: left side vanishes, right side is 1
  const Matrix zero = Matrix::Zero(d, d);
  CHECK(trace_norm((id - zero) * rho * zero) == doctest::Approx(0.0));
  CHECK(std::sqrt(((id - zero) * rho).trace().real()) == doctest::Approx(1.0));
}

TEST_CASE("pinching edge cases") {
  RngStream rng(2, 0);
  const int da = 3, db = 2;
  const Matrix tau = random_state(da, rng);
  // omega supported inside P (x) anything is left unchanged
  Matrix sub = Matrix::Zero(da, da);
  sub.topLeftCorner(2, 2) = random_state(2, rng);
  const Matrix omega = kron(sub, random_state(db, rng));
  Matrix p = Matrix::Zero(da, da);
  p(0, 0) = p(1, 1) = 1.0;
  const Matrix p_lift = kron(p, Matrix::Identity(db, db));
  const Matrix q_lift = kron(Matrix::Identity(da, da) - p, Matrix::Identity(db, db));
  const Matrix dumped = partial_trace(q_lift * omega, {da, db}, {1});
  const Matrix pinched = p_lift * omega * p_lift + kron(tau, dumped);
  CHECK(trace_norm_hermitian(omega - pinched) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("tail-bound tightness at a pure excited level") {
  // rho = |m><m|: both sides equal 1
  const std::vector<double> levels{0.0, 1.0, 2.0, 3.0};
  const int m = 2;
  Matrix rho = Matrix::Zero(4, 4);
  rho(3, 3) = 1.0;
  double tail = 0.0;
  for (int k = m; k < 4; ++k) tail += rho(k, k).real();
  const double e_mean = 3.0;
  const double rhs = (e_mean - levels[0]) / (levels[m] - levels[0]);
  CHECK(tail == doctest::Approx(1.0));
  CHECK(rhs >= tail - 1e-12);

  Matrix ground = Matrix::Zero(4, 4);
  ground(0, 0) = 1.0;
  double gtail = 0.0;
  for (int k = m; k < 4; ++k) gtail += ground(k, k).real();
  CHECK(gtail == 0.0);
}

TEST_CASE("chi truncation is exact for low-energy ensembles") {
  RngStream rng(3, 0);
  const int d_a = 8, m = 6;
  const ChannelRep ch = random_channel(d_a, 4, 2, rng);
  Ensemble ens;
  for (int k = 0; k < 3; ++k) {
    Matrix s = Matrix::Zero(d_a, d_a);
    s.topLeftCorner(m, m) = random_state(m, rng);
    ens.states.push_back(s);
    ens.probs.push_back(1.0 / 3.0);
  }
  Ensemble full = ens, trunc = ens;
  for (int k = 0; k < 3; ++k) {
    full.states[static_cast<std::size_t>(k)] = ch.apply(ens.states[static_cast<std::size_t>(k)]);
    trunc.states[static_cast<std::size_t>(k)] =
        ch.apply(truncate_to_lowest(ens.states[static_cast<std::size_t>(k)], m));
  }
  CHECK(std::fabs(holevo_quantity(full) - holevo_quantity(trunc)) <= 1e-12);

  // m equal to the full dimension also leaves the ensemble untouched
  const Matrix any = random_state(d_a, rng);
  CHECK((truncate_to_lowest(any, d_a) - any).cwiseAbs().maxCoeff() == 0.0);
}
