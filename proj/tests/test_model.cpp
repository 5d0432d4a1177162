#include <cmath>
#include <limits>
#include <random>

#include "doctest.h"
#include "ecoepi/equilibria.hpp"
#include "ecoepi/model.hpp"
#include "test_helpers.hpp"

using namespace ecoepi;

namespace {

const ParameterSet kToxicUnit{1, 1, 1, 1, 1, 1, 1, Variant::Toxic};

}  // namespace

TEST_CASE("toxic field at unit parameters and unit state") {
  const State d = vector_field(kToxicUnit, State{1, 1, 1});
  CHECK(d.P == doctest::Approx(-1.0).epsilon(1e-15));
  CHECK(d.S == doctest::Approx(-2.0).epsilon(1e-15));
  CHECK(d.U == doctest::Approx(-0.5).epsilon(1e-15));
}

TEST_CASE("harmless coexistence annihilates the field") {
  // stable-coexistence parameter set with the boundary predation raised to 1
  const ParameterSet p{1.35, 0.29, 1.0, 3.2, 5000, 0.8, 2.2, Variant::Harmless};
  const Equilibrium eq = equilibrium_coexistence(p);
  const State d = vector_field(p, eq.point);
  CHECK(std::fabs(d.P) <= 1e-10);
  CHECK(std::fabs(d.S) <= 1e-10);
  CHECK(std::fabs(d.U) <= 1e-10);
}

TEST_CASE("classical field vanishes at the hand-solved coexistence") {
  // dP = 0 forces Q* = m/a = 1; dQ = 0 then gives P* = (r/a)(1 - Q*/K) = 0.5
  const ParameterSet p{1, 1, 0, 1, 2, 0, 0, Variant::Classical};
  const State d = vector_field(p, State{0.5, 1.0, 0.0});
  CHECK(d.P == 0.0);
  CHECK(d.S == 0.0);

  const Equilibrium eq = equilibrium_coexistence(p);
  CHECK(eq.point.P == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(eq.point.S == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("jacobian at the origin is eigenvalue-revealing") {
  const ParameterSet p{1.35, 0.29, 0.25, 3.2, 5000, 0.8, 1.2, Variant::Harmless};
  const Matrix3 J = jacobian(p, State{0, 0, 0});
  CHECK(J(0, 0) == -p.m);
  CHECK(J(1, 1) == p.r);
  CHECK(J(2, 2) == -0.5 * p.mu);
  // the (1,3) and (2,3) couplings vanish at the origin, so the upper block is
  // diagonal and the spectrum reads off as (-m, r, -mu/2)
  CHECK(J(0, 1) == 0.0);
  CHECK(J(0, 2) == 0.0);
  CHECK(J(1, 0) == 0.0);
  CHECK(J(1, 2) == 0.0);
}

TEST_CASE("toxic jacobian row 1 at unit state") {
  const Matrix3 J = jacobian(kToxicUnit, State{1, 1, 1});
  CHECK(J(0, 0) == doctest::Approx(-1.0).epsilon(1e-15));
  CHECK(J(0, 1) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(J(0, 2) == doctest::Approx(-1.0).epsilon(1e-15));
}

TEST_CASE("jacobian matches central finite differences") {
  std::mt19937_64 rng(7001);
  for (Variant v : {Variant::Classical, Variant::Harmless, Variant::Avoided, Variant::Toxic}) {
    for (int i = 0; i < 100; ++i) {
      const ParameterSet p = testutil::random_params(rng, v);
      const State x = testutil::random_state(rng, v);
      const Matrix3 J = jacobian(p, x);
      const Matrix3 F = testutil::fd_jacobian(p, x);
      CHECK(testutil::matrix_rel_err(F, J) <= 1e-6);
    }
  }
}

TEST_CASE("avoided variant equals harmless with b = 0") {
  std::mt19937_64 rng(7002);
  for (int i = 0; i < 100; ++i) {
    ParameterSet pa = testutil::random_params(rng, Variant::Avoided);
    pa.b = 1.7;  // must be ignored entirely
    ParameterSet ph = pa;
    ph.variant = Variant::Harmless;
    ph.b = 0.0;
    const State x = testutil::random_state(rng, Variant::Avoided);
    const State da = vector_field(pa, x);
    const State dh = vector_field(ph, x);
    CHECK(da.P == dh.P);
    CHECK(da.S == dh.S);
    CHECK(da.U == dh.U);
  }
}

TEST_CASE("beta = 0 with U = 0 reduces to the classical subsystem") {
  std::mt19937_64 rng(7003);
  for (Variant v : {Variant::Harmless, Variant::Avoided, Variant::Toxic}) {
    for (int i = 0; i < 50; ++i) {
      ParameterSet p = testutil::random_params(rng, v);
      p.beta = 0.0;
      State x = testutil::random_state(rng, v);
      x.U = 0.0;
      ParameterSet pc = p;
      pc.variant = Variant::Classical;
      const State d3 = vector_field(p, x);
      const State d2 = vector_field(pc, State{x.P, x.S, 0.0});
      CHECK(d3.P == d2.P);
      CHECK(d3.S == d2.S);
    }
  }
}

TEST_CASE("population axes are flow-invariant") {
  std::mt19937_64 rng(7004);
  for (Variant v : {Variant::Classical, Variant::Harmless, Variant::Avoided, Variant::Toxic}) {
    for (int i = 0; i < 50; ++i) {
      const ParameterSet p = testutil::random_params(rng, v);
      State x = testutil::random_state(rng, v);
      x.P = 0.0;
      CHECK(vector_field(p, x).P == 0.0);
      x = testutil::random_state(rng, v);
      x.S = 0.0;
      CHECK(vector_field(p, x).S == 0.0);
    }
  }
}

TEST_CASE("infected-space map") {
  SUBCASE("squaring") {
    const InfectedState y = to_infected_space(State{1, 2, 3});
    CHECK(y.P == 1.0);
    CHECK(y.S == 2.0);
    CHECK(y.I == 9.0);
  }
  SUBCASE("zero state") {
    const InfectedState y = to_infected_space(State{0, 0, 0});
    CHECK(y.I == 0.0);
  }
  SUBCASE("fractional") {
    const InfectedState y = to_infected_space(State{2, 5, 0.5});
    CHECK(y.I == 0.25);
  }
  SUBCASE("round trip is exact") {
    std::mt19937_64 rng(7005);
    for (int i = 0; i < 1000; ++i) {
      const double u = testutil::log_uniform(rng, 1e-8, 1e8);
      const State back = from_infected_space(to_infected_space(State{1, 1, u}));
      CHECK(back.U == u);
    }
  }
  SUBCASE("rejects negative components") {
    CHECK_THROWS_AS(to_infected_space(State{1, 1, -0.5}), std::invalid_argument);
    CHECK_THROWS_AS(from_infected_space(InfectedState{1, 1, -0.5}), std::invalid_argument);
  }
}

TEST_CASE("input validation") {
  const ParameterSet p{1, 1, 1, 1, 1, 1, 1, Variant::Harmless};
  CHECK_THROWS_AS(vector_field(p, State{std::nan(""), 0, 0}), std::invalid_argument);
  CHECK_THROWS_AS(jacobian(p, State{0, std::numeric_limits<double>::infinity(), 0}),
                  std::invalid_argument);
  const ParameterSet pc{1, 1, 0, 1, 2, 0, 0, Variant::Classical};
  CHECK_THROWS_AS(vector_field(pc, State{1, 1, 0.5}), std::invalid_argument);
  ParameterSet bad = p;
  bad.m = -1.0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = p;
  bad.b = -0.1;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}
