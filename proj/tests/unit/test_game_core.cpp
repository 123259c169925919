#include <doctest.h>

#include <cmath>
#include <numbers>

#include "frozen_values.hpp"
#include "gaplab/equilibrium.hpp"
#include "gaplab/errors.hpp"
#include "gaplab/linalg.hpp"
#include "instances.hpp"

using namespace gaplab;
using gaplab::testing::cycle3;
using gaplab::testing::InstanceGenerator;

TEST_CASE("block structure offsets and validation") {
  const BlockStructure s({2, 1, 3});
  CHECK(s.players() == 3);
  CHECK(s.dim() == 6);
  CHECK(s.offset(0) == 0);
  CHECK(s.offset(1) == 2);
  CHECK(s.offset(2) == 3);
  CHECK_THROWS_AS(BlockStructure({}), InputError);
  CHECK_THROWS_AS(BlockStructure({1, 0}), InputError);
  CHECK_THROWS_AS(s.check_player(3), InputError);
  CHECK_THROWS_AS(s.check_player(-1), InputError);
}

TEST_CASE("interaction matrix rejects nonzero diagonal blocks and bad shapes") {
  const BlockStructure s({2, 1});
  Eigen::MatrixXd p = Eigen::MatrixXd::Zero(3, 3);
  p(0, 1) = 0.1;  // inside player 0's own block
  CHECK_THROWS_AS(InteractionMatrix(s, p), InputError);
  CHECK_THROWS_AS(InteractionMatrix(s, Eigen::MatrixXd::Zero(2, 2)), InputError);

  const auto cleared = InteractionMatrix::with_zeroed_diagonal(s, p);
  CHECK(cleared.matrix().isZero());

  p.setZero();
  p(0, 2) = 0.3;
  p(2, 1) = -0.2;
  const InteractionMatrix ok(s, p);
  CHECK(ok.block(0, 1).rows() == 2);
  CHECK(ok.block(0, 1).cols() == 1);
  CHECK(ok.block(0, 1)(0, 0) == 0.3);
  CHECK(ok.row_block(1).cols() == 3);
}

TEST_CASE("joint action views alias their block") {
  JointAction u(BlockStructure({1, 2}), Eigen::Vector3d(1, 2, 3));
  CHECK(u.view(1).size() == 2);
  u.view(1)(0) = 9.0;
  CHECK(u.values()(1) == 9.0);
  CHECK_THROWS_AS(JointAction(BlockStructure({1, 2}), Eigen::Vector2d(1, 2)),
                  InputError);
}

TEST_CASE("validate_game") {
  SUBCASE("zero network passes") {
    const NetworkGame g(InteractionMatrix::zero(BlockStructure({2, 3})),
                        Eigen::VectorXd::Ones(5));
    const auto r = validate_game(g);
    CHECK(r.passed());
    CHECK(r.max_sym_eigenvalue == doctest::Approx(0.0));
    CHECK(r.min_singular_value == doctest::Approx(1.0));
  }
  SUBCASE("half-weight cycle passes") {
    const NetworkGame g(cycle3(0.5), Eigen::VectorXd::Ones(3));
    const auto r = validate_game(g);
    CHECK(r.passed());
    CHECK(r.min_singular_value ==
          doctest::Approx(frozen::kCycleHalfSigmaMin).epsilon(1e-14));
    CHECK(r.max_sym_eigenvalue ==
          doctest::Approx(frozen::kCycleHalfLambdaMax).epsilon(1e-14));
    CHECK(std::isfinite(r.condition_estimate));
  }
  SUBCASE("unit cycle fails monotonicity") {
    const NetworkGame g(cycle3(1.0), Eigen::VectorXd::Ones(3));
    const auto r = validate_game(g);
    CHECK_FALSE(r.monotone);
    CHECK_FALSE(r.passed());
    CHECK(r.max_sym_eigenvalue ==
          doctest::Approx(frozen::kCycleOneLambdaMax).epsilon(1e-14));
  }
}

TEST_CASE("cost") {
  const BlockStructure s({2, 1});
  const Eigen::Vector3d eps(0.5, -1.0, 2.0);
  const NetworkGame zero_game(InteractionMatrix::zero(s), eps);
  for (int i = 0; i < 2; ++i) {
    CHECK(cost(zero_game, i, JointAction(s, Eigen::Vector3d::Zero())) == 0.0);
  }
  const JointAction u(s, eps);
  CHECK(cost(zero_game, 0, u) == doctest::Approx(-0.5 * (0.25 + 1.0)));
  CHECK(cost(zero_game, 1, u) == doctest::Approx(-0.5 * 4.0));

  // Player 0's conjectured equilibrium in the shock-cycle game.
  const NetworkGame g(cycle3(0.5), Eigen::Vector3d(0.9, 1.0, 1.0));
  const JointAction u1(BlockStructure::scalar(3),
                       Eigen::Vector3d(frozen::kShockCycleU1_0, frozen::kShockCycleU1_1,
                                       frozen::kShockCycleU1_2));
  CHECK(cost(g, 0, u1) ==
        doctest::Approx(frozen::kShockCycleCostPlayer0AtU1).epsilon(1e-14));

  CHECK_THROWS_AS(cost(g, 0, JointAction(BlockStructure({1, 2}),
                                         Eigen::Vector3d::Zero())),
                  InputError);
}

TEST_CASE("nash_equilibrium") {
  SUBCASE("zero network returns the shock") {
    const Eigen::VectorXd eps = Eigen::Vector4d(1, -2, 3, 0.5);
    const auto eq = nash_equilibrium(InteractionMatrix::zero(BlockStructure({2, 2})), eps);
    CHECK(eq.action.values() == eps);
    CHECK(eq.warnings.empty());
  }
  SUBCASE("half-weight cycle with unit shocks") {
    const auto eq = nash_equilibrium(cycle3(0.5), Eigen::Vector3d::Ones());
    for (int i = 0; i < 3; ++i) {
      CHECK(eq.action.values()(i) == doctest::Approx(2.0).epsilon(1e-15));
    }
  }
  SUBCASE("shock-cycle conjecture of player 0") {
    const auto eq = nash_equilibrium(cycle3(0.5), Eigen::Vector3d(0.9, 1, 1));
    CHECK(eq.action.values()(0) == doctest::Approx(frozen::kShockCycleU1_0).epsilon(1e-15));
    CHECK(eq.action.values()(1) == doctest::Approx(frozen::kShockCycleU1_1).epsilon(1e-15));
    CHECK(eq.action.values()(2) == doctest::Approx(frozen::kShockCycleU1_2).epsilon(1e-15));
  }
  SUBCASE("residual bound on random games") {
    InstanceGenerator gen(11);
    for (int t = 0; t < 50; ++t) {
      const auto s = gen.structure(1, 6, 3);
      const auto p = gen.network(s, 0.9);
      const auto eps = gen.vector(s.dim());
      const auto eq = nash_equilibrium(p, eps);
      const Eigen::VectorXd residual =
          linalg::identity_minus(p.matrix()) * eq.action.values() - eps;
      CHECK(residual.norm() <= 1e-10 * eps.norm());
    }
  }
  SUBCASE("singular and ill-conditioned systems") {
    Eigen::MatrixXd p = Eigen::MatrixXd::Zero(2, 2);
    p(0, 1) = 1.0;
    p(1, 0) = 1.0;
    CHECK_THROWS_AS(
        nash_equilibrium(InteractionMatrix(BlockStructure::scalar(2), p),
                         Eigen::Vector2d::Ones()),
        NumericalError);
    const auto eq = nash_equilibrium(cycle3(1.0 - 1e-14), Eigen::Vector3d::Ones());
    CHECK(eq.ill_conditioned());
    CHECK(eq.warnings.size() == 1);
  }
  CHECK_THROWS_AS(nash_equilibrium(cycle3(0.5), Eigen::Vector2d::Ones()),
                  InputError);
}

TEST_CASE("leontief") {
  CHECK(leontief(InteractionMatrix::zero(BlockStructure({2, 1})))
            .isApprox(Eigen::MatrixXd::Identity(3, 3)));

  const double g = 0.5;
  Eigen::Matrix3d closed;
  closed << 1, g * g, g, g, 1, g * g, g * g, g, 1;
  closed /= 1.0 - g * g * g;
  CHECK((leontief(cycle3(g)) - closed).cwiseAbs().maxCoeff() < 1e-15);

  // Weakened unit cycle, δ = 0.5.
  const double weak = 1.0 - 0.5 / std::numbers::sqrt2;
  Eigen::MatrixXd p0 = Eigen::MatrixXd::Zero(3, 3);
  p0(0, 2) = weak;
  p0(1, 0) = 1.0;
  p0(2, 1) = 1.0;
  const Eigen::MatrixXd l0 = leontief(p0);
  const double expected[3][3] = {
      {frozen::kGraphCycleL0_00, frozen::kGraphCycleL0_01, frozen::kGraphCycleL0_02},
      {frozen::kGraphCycleL0_10, frozen::kGraphCycleL0_11, frozen::kGraphCycleL0_12},
      {frozen::kGraphCycleL0_20, frozen::kGraphCycleL0_21, frozen::kGraphCycleL0_22}};
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) {
      CHECK(l0(r, c) == doctest::Approx(expected[r][c]).epsilon(1e-13));
    }
  }

  InstanceGenerator gen(12);
  for (int t = 0; t < 30; ++t) {
    const auto s = gen.structure(1, 6, 3);
    const auto p = gen.network(s, 0.9);
    const Eigen::MatrixXd l = leontief(p);
    const double err =
        (linalg::identity_minus(p.matrix()) * l -
         Eigen::MatrixXd::Identity(s.dim(), s.dim()))
            .norm();
    CHECK(err <= 1e-9 * s.dim());
  }
}

TEST_CASE("realized_action") {
  SUBCASE("homogeneous profile reproduces the common equilibrium exactly") {
    InstanceGenerator gen(13);
    const auto s = gen.structure(2, 5, 3);
    const NetworkGame game(gen.network(s, 0.8), gen.vector(s.dim()));
    const auto u = realized_action(ConjectureProfile::homogeneous(game));
    CHECK(u.values() ==
          nash_equilibrium(game.interaction(), game.epsilon()).action.values());
  }
  SUBCASE("shock cycle") {
    const auto profile = ConjectureProfile::shared_network(
        cycle3(0.5), gaplab::testing::shock_cycle_shocks(0.9));
    const auto u = realized_action(profile);
    CHECK(u.values()(0) == doctest::Approx(frozen::kShockCycleRealized_0).epsilon(1e-15));
    CHECK(u.values()(1) == doctest::Approx(frozen::kShockCycleRealized_1).epsilon(1e-15));
    CHECK(u.values()(2) == doctest::Approx(frozen::kShockCycleRealized_2).epsilon(1e-15));
  }
  SUBCASE("graph cycle takes each entry from its owner's solve") {
    const double delta = 0.5;
    const double weak = 1.0 - delta / std::numbers::sqrt2;
    std::vector<Conjecture> cs;
    const int edges[3][2] = {{0, 2}, {1, 0}, {2, 1}};
    for (int j = 0; j < 3; ++j) {
      Eigen::MatrixXd p = Eigen::MatrixXd::Zero(3, 3);
      for (auto& e : edges) p(e[0], e[1]) = 1.0;
      p(edges[j][0], edges[j][1]) = weak;
      cs.push_back({InteractionMatrix(BlockStructure::scalar(3), p),
                    Eigen::Vector3d(1, -1, -1)});
    }
    const auto profile = ConjectureProfile::general(cs);
    const auto u = realized_action(profile);
    for (int j = 0; j < 3; ++j) {
      const auto own = nash_equilibrium(cs[j].network, cs[j].shock);
      CHECK(u.values()(j) == own.action.values()(j));
    }
    // First entry is (√2·δ - 1)·√2/δ, not (√(2δ) - 1)·√2/δ.
    const double scale = std::numbers::sqrt2 / delta;
    CHECK(u.values()(0) ==
          doctest::Approx((std::numbers::sqrt2 * delta - 1.0) * scale).epsilon(1e-13));
    CHECK(std::abs(u.values()(0) - (std::sqrt(2.0 * delta) - 1.0) * scale) > 0.1);
  }
  SUBCASE("non-monotone conjecture is rejected with its player index") {
    std::vector<Conjecture> cs(3, Conjecture{cycle3(0.5), Eigen::Vector3d::Ones()});
    cs[2].network = cycle3(1.0);
    try {
      (void)ConjectureProfile::general(cs);
      FAIL("expected PlayerError");
    } catch (const PlayerError& e) {
      CHECK(e.player() == 2);
    }
  }
}

TEST_CASE("equilibrium properties on random games") {
  InstanceGenerator gen(2024);
  for (int t = 0; t < 40; ++t) {
    const auto s = gen.structure(1, 6, 3);
    const auto p = gen.network(s, gen.uniform(0.1, 0.95));
    const Eigen::VectorXd e1 = gen.vector(s.dim());
    const Eigen::VectorXd e2 = gen.vector(s.dim());
    const auto u = nash_equilibrium(p, e1).action;

    // Fixed point: u_i = P_{i,-} u + ε_i.
    const double fp_tol = 1e-9 * (1.0 + u.values().norm());
    for (int i = 0; i < s.players(); ++i) {
      const Eigen::VectorXd rhs =
          p.row_block(i) * u.values() + e1.segment(s.offset(i), s.size(i));
      CHECK((u.view(i) - rhs).norm() <= fp_tol);
    }

    // Unilateral deviations never help.
    const NetworkGame game(p, e1);
    for (int k = 0; k < 100; ++k) {
      const int i = gen.integer(0, s.players() - 1);
      JointAction dev = u;
      dev.view(i) += gen.vector(s.size(i)) * gen.uniform(1e-3, 1.0);
      CHECK(cost(game, i, dev) > cost(game, i, u));
    }

    // Linearity in the shock.
    const double a = gen.uniform(-2, 2);
    const double b = gen.uniform(-2, 2);
    const Eigen::VectorXd combined =
        nash_equilibrium(p, a * e1 + b * e2).action.values();
    const Eigen::VectorXd separate =
        a * u.values() + b * nash_equilibrium(p, e2).action.values();
    CHECK((combined - separate).norm() <= 1e-10 * (1.0 + separate.norm()));

    // Resolvent identity against explicit inverses.
    const auto q = gen.network(s, gen.uniform(0.1, 0.95));
    const Eigen::MatrixXd lhs = leontief(p) - leontief(q);
    const Eigen::MatrixXd rhs =
        linalg::resolvent_difference(p.matrix(), q.matrix());
    CHECK((lhs - rhs).cwiseAbs().maxCoeff() <= 1e-9);
  }
}
