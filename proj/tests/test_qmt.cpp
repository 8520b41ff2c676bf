#include "qpd/error.hpp"
#include "qpd/qmt.hpp"
#include "support.hpp"
#include "systems.hpp"

#include <doctest.h>

using namespace qpd;
using namespace qpd::test;

TEST_CASE("QMTMatrix rejects singular matrices") {
  CHECK_THROWS_AS(QMTMatrix(mat2(1, 2, 2, 4)), Error);
  CHECK_THROWS_AS(QMTMatrix(mat2(1, 1, 1, 1 + 1e-13)), Error);
  const QMTMatrix c(mat2(2, 1, 1, 1));
  CHECK((c.C() * c.C_inv() - Matrix::Identity(2, 2)).cwiseAbs().maxCoeff() <= 1e-12);
  CHECK_THROWS_AS(QMTMatrix::with_inverse(mat2(2, 1, 1, 1), mat2(1, 0, 0, 1)), Error);
}

TEST_CASE("apply_qmt with the identity leaves the system unchanged") {
  Rng rng(1);
  const QPSystem sys = random_system(rng, 3);
  const QPSystem same = apply_qmt(sys, QMTMatrix::identity(3));
  CHECK(same.A() == sys.A());
  CHECK(same.B() == sys.B());
  CHECK(same.lambda() == sys.lambda());
}

TEST_CASE("apply_qmt checks dimensions") {
  Rng rng(1);
  CHECK_THROWS_AS(apply_qmt(random_system(rng, 3), QMTMatrix::identity(2)), Error);
}

TEST_CASE("the first example family reduces to the competitive LV system") {
  for (double rho : {0.5, 1.0, 3.2}) {
    const QPSystem sys = example1_qp(0.2, 0.2, rho);
    const QPSystem lv = apply_qmt(sys, QMTMatrix(sys.B().inverse()));
    CHECK(max_rel_diff(lv.A(), mat2(-1, -0.5, -0.5, -1)) <= 1e-14);
    CHECK(max_rel_diff(lv.lambda(), vec2(rho, rho)) <= 1e-14);
    CHECK(max_rel_diff(lv.B(), Matrix(Matrix::Identity(2, 2))) <= 1e-15);

    const auto inv = class_invariants(sys);
    CHECK(max_rel_diff(inv.Gamma, mat2(-1, -0.5, -0.5, -1)) <= 1e-14);
    CHECK(max_rel_diff(inv.Lambda, vec2(rho, rho)) <= 1e-14);
  }
}

TEST_CASE("class invariants of the predator-prey family") {
  const QPSystem sys = example2_qp(0.5, 0.3, 0.5, 1.5, 1.5, 0.75);
  const auto inv = class_invariants(sys);
  CHECK(max_rel_diff(inv.Gamma, mat2(-0.5, -0.25, 0.45, -0.3)) <= 1e-15);
  CHECK(max_rel_diff(inv.Lambda, vec2(0.5, -0.3)) <= 1e-15);
  const auto lv = class_invariants(example1_lv());
  CHECK(lv.Gamma == example1_lv().A());
  CHECK(lv.Lambda == example1_lv().lambda());
}

TEST_CASE("canonical_lv") {
  const auto lv = canonical_lv(example1_lv());
  CHECK(lv.transform.C() == Matrix::Identity(2, 2));
  CHECK(lv.lv.A() == example1_lv().A());
  CHECK(lv.condition == 1.0);

  const auto qp = canonical_lv(example1_qp(0.2, 0.2, 0.5));
  CHECK(max_rel_diff(qp.lv.A(), mat2(-1, -0.5, -0.5, -1)) <= 1e-14);
  CHECK(max_rel_diff(qp.transform.C(), Matrix(mat2(1, 0.2, 0.2, 1).inverse())) <= 1e-15);
  CHECK(qp.condition == doctest::Approx(1.2 * 1.2 / 0.96));

  const QPSystem singular = QPSystem::make(mat2(-1, 0, 0, -1), mat2(1, 2, 2, 4), vec2(1, 1));
  try {
    canonical_lv(singular);
    FAIL("expected SingularB");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::SingularB);
  }
}

TEST_CASE("map_state") {
  const StateVector y({3.0, 4.0});
  CHECK(map_state(QMTMatrix::identity(2), y).values() == y.values());
  const auto x = map_state(QMTMatrix(mat2(2, 0, 0, 0.5)), y);
  CHECK(x[0] == doctest::Approx(9.0).epsilon(1e-15));
  CHECK(x[1] == doctest::Approx(2.0).epsilon(1e-15));
  Rng rng(4);
  const auto ones = map_state(QMTMatrix(random_invertible(rng, 3)), StateVector({1.0, 1.0, 1.0}));
  for (std::size_t i = 0; i < 3; ++i) CHECK(ones[i] == 1.0);
  CHECK_THROWS_AS(map_state(QMTMatrix(mat2(800, 0, 0, 1)), StateVector({std::exp(1.0), 1.0})), Error);
}

TEST_CASE("map_state composes like the matrix product") {
  Rng rng(8);
  for (int trial = 0; trial < 100; ++trial) {
    const auto n = static_cast<Eigen::Index>(rng.integer(2, 4));
    const QMTMatrix c1(random_invertible(rng, n)), c2(random_invertible(rng, n));
    Vector y(n);
    for (Eigen::Index i = 0; i < n; ++i) y(i) = rng.log_uniform(0.1, 10);
    const auto direct = map_state(QMTMatrix(c1.C() * c2.C()), StateVector(y));
    const auto nested = map_state(c1, map_state(c2, StateVector(y)));
    CHECK(max_rel_diff(direct.values(), nested.values()) <= 1e-9);
  }
}

TEST_CASE("invariants, group law and round trip on random systems") {
  Rng rng(2024);
  for (int trial = 0; trial < 100; ++trial) {
    const auto n = static_cast<Eigen::Index>(rng.integer(2, 4));
    const QPSystem sys = random_system(rng, n);
    const QMTMatrix c1(random_invertible(rng, n)), c2(random_invertible(rng, n));
    const auto base = class_invariants(sys);
    // Oracle: B' A' against B A with plain Eigen products.
    const QPSystem t = apply_qmt(sys, c1);
    CHECK(max_rel_diff(Matrix(t.B() * t.A()), Matrix(sys.B() * sys.A())) <= 1e-9);
    CHECK(max_rel_diff(class_invariants(t).Lambda, base.Lambda) <= 1e-9);

    const QPSystem nested = apply_qmt(t, c2);
    const QPSystem composed = apply_qmt(sys, c1 * c2);
    CHECK(max_rel_diff(nested.A(), composed.A()) <= 1e-9);
    CHECK(max_rel_diff(nested.B(), composed.B()) <= 1e-9);
    CHECK(max_rel_diff(nested.lambda(), composed.lambda()) <= 1e-9);

    const QPSystem back = apply_qmt(t, c1.inverse());
    CHECK(max_rel_diff(back.A(), sys.A()) <= 1e-9);
    CHECK(max_rel_diff(back.B(), sys.B()) <= 1e-9);
    CHECK(max_rel_diff(back.lambda(), sys.lambda()) <= 1e-9);
  }
}
