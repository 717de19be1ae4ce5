#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "lieq/errors.hpp"
#include "lieq/group.hpp"

#include <cmath>
#include <random>

using namespace lieq;
using Eigen::MatrixXd;
using Eigen::Vector3d;
using Eigen::VectorXd;

namespace {

MatrixXd random_matrix(std::mt19937_64& rng, int n, double scale = 1.0) {
  std::uniform_real_distribution<double> d(-scale, scale);
  MatrixXd m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = d(rng);
  return m;
}

VectorXd random_coords(std::mt19937_64& rng, int n, double scale = 1.0) {
  std::uniform_real_distribution<double> d(-scale, scale);
  VectorXd v(n);
  for (int i = 0; i < n; ++i) v[i] = d(rng);
  return v;
}

}  // namespace

TEST_CASE("matrix exponential oracles") {
  CHECK((expm(MatrixXd::Zero(3, 3)) - MatrixXd::Identity(3, 3)).norm() == 0.0);

  // nilpotent: exact truncated series
  MatrixXd e23 = MatrixXd::Zero(3, 3);
  e23(1, 2) = 1;
  const double t = 2.75;
  CHECK((expm(t * e23) - (MatrixXd::Identity(3, 3) + t * e23)).norm() == 0.0);

  // rotation generator against the closed-form rotation matrix
  MatrixXd k = MatrixXd::Zero(3, 3);
  k(0, 1) = 1;
  k(1, 0) = -1;
  const double th = 0.8342;
  MatrixXd rot = MatrixXd::Identity(3, 3);
  rot(0, 0) = std::cos(th);
  rot(0, 1) = std::sin(th);
  rot(1, 0) = -std::sin(th);
  rot(1, 1) = std::cos(th);
  CHECK((expm(th * k) - rot).cwiseAbs().maxCoeff() <= 1e-14);

  CHECK_THROWS_AS(expm(MatrixXd::Zero(2, 3)), DomainError);
}

TEST_CASE("expm inverse and orthogonality properties") {
  std::mt19937_64 rng(11);
  for (int it = 0; it < 20; ++it) {
    const MatrixXd a = random_matrix(rng, 5, 2.0);
    CHECK((expm(a) * expm(-a) - MatrixXd::Identity(5, 5)).cwiseAbs().maxCoeff() <= 1e-12);
    MatrixXd skew = random_matrix(rng, 4, 2.0);
    skew = (skew - skew.transpose()).eval();
    const MatrixXd q = expm(skew);
    CHECK((q.transpose() * q - MatrixXd::Identity(4, 4)).cwiseAbs().maxCoeff() <= 1e-11);
  }
}

TEST_CASE("catalog models") {
  const auto names = GroupModel::catalog_names();
  CHECK(std::find(names.begin(), names.end(), "heisenberg3") != names.end());
  CHECK_THROWS_AS(GroupModel::by_name("nosuch"), DomainError);
  CHECK_THROWS_AS(GroupModel::special_orthogonal(6), DomainError);

  for (const auto& name : names) {
    const GroupModel g = GroupModel::by_name(name);
    CHECK(g.membership_residual(g.identity()) == 0.0);
    // algebra closed under the right-invariant bracket
    for (const auto& a : g.algebra_basis())
      for (const auto& b : g.algebra_basis())
        CHECK(g.algebra_fit_residual(b * a - a * b) <= 1e-12);
  }

  const GroupModel h = GroupModel::heisenberg3();
  CHECK(h.dim() == 3);
  CHECK(h.algebra_basis()[0](1, 2) == 1);  // X
  CHECK(h.algebra_basis()[1](0, 1) == 1);  // Y
  CHECK(h.algebra_basis()[2](0, 2) == 1);  // Z
  const auto sc = h.structure_constants();
  CHECK(sc[2](0, 1) == doctest::Approx(1.0));  // [X, Y] = Z
  CHECK(sc[0].cwiseAbs().maxCoeff() == doctest::Approx(0.0));
  CHECK(sc[1].cwiseAbs().maxCoeff() == doctest::Approx(0.0));
}

TEST_CASE("membership and projection") {
  const GroupModel so3 = GroupModel::special_orthogonal(3);
  std::mt19937_64 rng(5);
  const MatrixXd q = expm(so3.algebra_element(random_coords(rng, 3)));
  CHECK(so3.membership_residual(q) <= 1e-12);
  const MatrixXd noisy = q + 1e-6 * random_matrix(rng, 3);
  const MatrixXd back = so3.project(noisy);
  CHECK(so3.membership_residual(back) <= 1e-12);
  CHECK((back - q).cwiseAbs().maxCoeff() <= 1e-5);

  const GroupModel h = GroupModel::heisenberg3();
  MatrixXd m = heisenberg_matrix({1.5, -2.0, 0.25});
  CHECK(h.membership_residual(m) == 0.0);
  m(2, 0) = 1e-7;
  CHECK(h.membership_residual(m) == doctest::Approx(1e-7));
  CHECK(h.membership_residual(h.project(m)) == 0.0);
  CHECK_THROWS_AS(GroupElement(2.0 * h.identity(), h), DomainError);
}

TEST_CASE("heisenberg coordinates") {
  const Vector3d c(0.3, -1.2, 2.5);
  CHECK((heisenberg_coords(heisenberg_matrix(c)) - c).norm() == 0.0);
}

TEST_CASE("linear fields vanish at the identity") {
  const GroupModel h = GroupModel::heisenberg3();
  const GroupModel so3 = GroupModel::special_orthogonal(3);
  std::mt19937_64 rng(2);
  const LinearField coord = LinearField::heisenberg_coordinate(h);
  CHECK(coord.value_at(h.identity()).cwiseAbs().maxCoeff() <= 1e-12);
  const LinearField inner = LinearField::inner(so3, so3.algebra_element(random_coords(rng, 3)));
  CHECK(inner.value_at(so3.identity()).cwiseAbs().maxCoeff() <= 1e-12);
  CHECK_THROWS_AS(LinearField::heisenberg_coordinate(so3), DomainError);
  CHECK_THROWS_AS(LinearField::inner(h, MatrixXd::Identity(3, 3)), DomainError);
}

TEST_CASE("flows: closed forms and fixed points") {
  const GroupModel h = GroupModel::heisenberg3();
  const LinearField f = LinearField::heisenberg_coordinate(h);
  const GroupElement m(heisenberg_matrix({1, 0, 0}), h);

  CHECK((linear_flow(f, 0, m).matrix() - m.matrix()).norm() == 0.0);
  const Vector3d moved = heisenberg_coords(linear_flow(f, 2, m).matrix());
  CHECK(moved.isApprox(Vector3d(1, 2, 1)));

  const GroupModel so3 = GroupModel::special_orthogonal(3);
  std::mt19937_64 rng(3);
  const LinearField inner = LinearField::inner(so3, so3.algebra_element(random_coords(rng, 3)));
  const GroupElement e(so3.identity(), so3);
  for (double t : {-1.7, 0.0, 0.4, 2.3})
    CHECK((linear_flow(inner, t, e).matrix() - so3.identity()).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("flow group law") {
  std::mt19937_64 rng(17);
  const GroupModel h = GroupModel::heisenberg3();
  const GroupModel so3 = GroupModel::special_orthogonal(3);
  const LinearField coord = LinearField::heisenberg_coordinate(h);
  const LinearField inner = LinearField::inner(so3, so3.algebra_element(random_coords(rng, 3)));
  std::uniform_real_distribution<double> d(-2, 2);
  for (int it = 0; it < 25; ++it) {
    const double s = d(rng), t = d(rng);
    const GroupElement m(heisenberg_matrix({d(rng), d(rng), d(rng)}), h);
    const MatrixXd lhs = linear_flow(coord, s, linear_flow(coord, t, m)).matrix();
    CHECK((lhs - linear_flow(coord, s + t, m).matrix()).cwiseAbs().maxCoeff() <= 1e-9);
    const GroupElement q(expm(so3.algebra_element(random_coords(rng, 3))), so3);
    const MatrixXd lhs2 = linear_flow(inner, s, linear_flow(inner, t, q)).matrix();
    CHECK((lhs2 - linear_flow(inner, s + t, q).matrix()).cwiseAbs().maxCoeff() <= 1e-9);
  }
}

TEST_CASE("flows are automorphisms") {
  std::mt19937_64 rng(23);
  const GroupModel h = GroupModel::heisenberg3();
  const LinearField coord = LinearField::heisenberg_coordinate(h);
  std::uniform_real_distribution<double> d(-1, 1);
  const GroupModel so3 = GroupModel::special_orthogonal(3);
  const LinearField inner = LinearField::inner(so3, so3.algebra_element(random_coords(rng, 3)));
  for (int it = 0; it < 25; ++it) {
    const GroupElement m(heisenberg_matrix({d(rng), d(rng), d(rng)}), h);
    const GroupElement n(heisenberg_matrix({d(rng), d(rng), d(rng)}), h);
    CHECK(automorphism_residual(coord, m, n, 0.0) == 0.0);
    CHECK(automorphism_residual(coord, m, n, 0.7) <= 1e-9);
    const GroupElement p(expm(so3.algebra_element(random_coords(rng, 3))), so3);
    const GroupElement q(expm(so3.algebra_element(random_coords(rng, 3))), so3);
    CHECK(automorphism_residual(inner, p, q, d(rng)) <= 1e-9);
  }
}

TEST_CASE("flow of an exponential follows the derivation") {
  const GroupModel h = GroupModel::heisenberg3();
  const LinearField coord = LinearField::heisenberg_coordinate(h);
  // D X = Y: both sides computable by nilpotent exponentials
  CHECK(derivation_exp_residual(coord, Vector3d(1, 0, 0), 1.0) <= 1e-9);
  CHECK(derivation_exp_residual(coord, Vector3d(0.4, -0.3, 0.9), 0.0) == 0.0);

  std::mt19937_64 rng(29);
  const GroupModel so3 = GroupModel::special_orthogonal(3);
  const LinearField inner = LinearField::inner(so3, so3.algebra_element(random_coords(rng, 3)));
  std::uniform_real_distribution<double> d(-2, 2);
  for (int it = 0; it < 25; ++it)
    CHECK(derivation_exp_residual(inner, random_coords(rng, 3), d(rng)) <= 1e-8);
}

TEST_CASE("finite-difference consistency of the derivation at the identity") {
  // the pushforward of phi_{-h} on algebra directions matches I - h D up to
  // O(h^2): the gap shrinks ~100x when h does 10x
  const GroupModel so3 = GroupModel::special_orthogonal(3);
  std::mt19937_64 rng(31);
  const LinearField f = LinearField::inner(so3, so3.algebra_element(random_coords(rng, 3)));
  const MatrixXd d = f.derivation();
  auto gap = [&](double h) {
    double worst = 0;
    for (int i = 0; i < so3.dim(); ++i) {
      VectorXd e = VectorXd::Zero(so3.dim());
      e[i] = 1;
      const double s = 1e-6;
      const MatrixXd plus =
          linear_flow(f, -h, GroupElement(expm(s * so3.algebra_element(e)), so3)).matrix();
      const MatrixXd minus =
          linear_flow(f, -h, GroupElement(expm(-s * so3.algebra_element(e)), so3)).matrix();
      const VectorXd v = so3.algebra_coordinates((plus - minus) / (2 * s));
      worst = std::max(worst, (v - (e - h * d * e)).norm());
    }
    return worst;
  };
  const double g3 = gap(1e-3);
  const double g4 = gap(1e-4);
  CHECK(g3 <= 1e-4);
  const double ratio = g3 / g4;
  CHECK(ratio >= 20.0);
  CHECK(ratio <= 500.0);
}

TEST_CASE("projectability criterion on so(4) / so(3)") {
  // h = rotations fixing the first coordinate
  std::vector<MatrixXd> h_basis;
  for (int i = 1; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) {
      MatrixXd m = MatrixXd::Zero(4, 4);
      m(i, j) = 1;
      m(j, i) = -1;
      h_basis.push_back(m);
    }
  std::mt19937_64 rng(37);
  std::uniform_real_distribution<double> d(-2, 2);
  for (int it = 0; it < 20; ++it) {
    MatrixXd x = d(rng) * h_basis[0] + d(rng) * h_basis[1] + d(rng) * h_basis[2];
    CHECK(projection_check(x, h_basis));
    MatrixXd mix = MatrixXd::Zero(4, 4);
    mix(0, 1 + it % 3) = 1 + std::abs(d(rng));
    mix(1 + it % 3, 0) = -mix(0, 1 + it % 3);
    CHECK(!projection_check(x + mix, h_basis));
  }
  // abelian: brackets inside the algebra vanish
  const GroupModel ab = GroupModel::abelian(3);
  CHECK(projection_check(ab.algebra_element(random_coords(rng, 3)), ab.algebra_basis()));
}

TEST_CASE("sphere criterion: flows of X in h project to invariant trajectories") {
  // S^3 = SO(4)/SO(3) with coset representative M -> first column
  const GroupModel so4 = GroupModel::special_orthogonal(4);
  std::mt19937_64 rng(41);
  VectorXd c = VectorXd::Zero(6);
  std::uniform_real_distribution<double> d(-1, 1);
  // a generator inside h (zero first row/column)
  MatrixXd x = MatrixXd::Zero(4, 4);
  x(1, 2) = d(rng); x(2, 1) = -x(1, 2);
  x(1, 3) = d(rng); x(3, 1) = -x(1, 3);
  x(2, 3) = d(rng); x(3, 2) = -x(2, 3);
  const LinearField f = LinearField::inner(so4, x);
  for (int it = 0; it < 10; ++it) {
    const GroupElement m(expm(so4.algebra_element(random_coords(rng, 6))), so4);
    const double t = 2 * d(rng);
    const Eigen::VectorXd projected = linear_flow(f, t, m).matrix().col(0);
    const Eigen::VectorXd invariant = expm(t * x) * m.matrix().col(0);
    CHECK((projected - invariant).cwiseAbs().maxCoeff() <= 1e-8);
  }
}

TEST_CASE("affine decomposition") {
  const GroupModel h = GroupModel::heisenberg3();
  const LinearField coord = LinearField::heisenberg_coordinate(h);
  std::mt19937_64 rng(43);

  // already linear: invariant part is zero
  auto lin = affine_decompose([&](const MatrixXd& m) { return coord.value_at(m); }, h);
  CHECK(lin.invariant.cwiseAbs().maxCoeff() <= 1e-12);

  // left invariant: recovered exactly, linear part vanishes
  const MatrixXd c0 = h.algebra_element(Vector3d(0.5, -1.0, 0.25));
  auto inv = affine_decompose([&](const MatrixXd& m) { return (m * c0).eval(); }, h);
  CHECK((inv.invariant - c0).cwiseAbs().maxCoeff() <= 1e-12);
  for (int it = 0; it < 5; ++it) {
    std::uniform_real_distribution<double> d(-1, 1);
    const MatrixXd m = heisenberg_matrix({d(rng), d(rng), d(rng)});
    CHECK(inv.linear_part(m).cwiseAbs().maxCoeff() <= 1e-12);
  }

  // mixed field: both parts recovered
  auto mixed = affine_decompose(
      [&](const MatrixXd& m) { return (coord.value_at(m) + m * c0).eval(); }, h);
  CHECK((mixed.invariant - c0).cwiseAbs().maxCoeff() <= 1e-12);
  std::uniform_real_distribution<double> d(-1, 1);
  const MatrixXd m = heisenberg_matrix({d(rng), d(rng), d(rng)});
  CHECK((mixed.linear_part(m) - coord.value_at(m)).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("trajectory simulation on the group") {
  const GroupModel h = GroupModel::heisenberg3();
  const LinearField coord = LinearField::heisenberg_coordinate(h);
  const std::vector<MatrixXd> controls{h.algebra_basis()[0]};  // X direction

  // u = 0, zero field: constant trajectory
  const GroupTrajectory still = simulate_linear_system(
      h, LinearField::zero(h), controls, PiecewiseControl::constant({0.0}, 1.0), 1.0, 1e-2);
  for (const auto& m : still.matrices)
    CHECK((m - h.identity()).cwiseAbs().maxCoeff() == 0.0);

  // u = 1, T = 1: (1, 1/2, 1/6) exactly in the closed form
  const PiecewiseControl u = PiecewiseControl::constant({1.0}, 1.0);
  const Vector3d expected = heisenberg_closed_form(u, Vector3d::Zero(), 1.0);
  CHECK(expected.isApprox(Vector3d(1.0, 0.5, 1.0 / 6.0)));
  const GroupTrajectory tr = simulate_linear_system(h, coord, controls, u, 1.0, 1e-3);
  double worst = 0;
  for (std::size_t k = 0; k < tr.times.size(); ++k) {
    const Vector3d oracle = heisenberg_closed_form(u, Vector3d::Zero(), tr.times[k]);
    worst = std::max(worst,
                     (heisenberg_coords(tr.matrices[k]) - oracle).cwiseAbs().maxCoeff());
  }
  CHECK(worst <= 1e-9);

  // switching control against the same closed form
  const PiecewiseControl sw = PiecewiseControl::parse("1@0.5;-2@0.5", 1, 1.0);
  const GroupTrajectory tr2 = simulate_linear_system(h, coord, controls, sw, 1.0, 1e-3);
  const Vector3d end = heisenberg_coords(tr2.matrices.back());
  CHECK((end - heisenberg_closed_form(sw, Vector3d::Zero(), 1.0)).cwiseAbs().maxCoeff() <=
        1e-9);

  // membership is maintained along an orthogonal trajectory
  const GroupModel so3 = GroupModel::special_orthogonal(3);
  std::mt19937_64 rng(47);
  const LinearField inner = LinearField::inner(so3, so3.algebra_element(random_coords(rng, 3)));
  const GroupTrajectory tro = simulate_linear_system(
      so3, inner, {so3.algebra_basis()[1]}, PiecewiseControl::constant({0.8}, 2.0), 2.0, 1e-2);
  for (const auto& m : tro.matrices) CHECK(so3.membership_residual(m) <= 1e-9);
}

TEST_CASE("trajectory export") {
  const GroupModel h = GroupModel::heisenberg3();
  const GroupTrajectory tr = simulate_linear_system(
      h, LinearField::heisenberg_coordinate(h), {h.algebra_basis()[0]},
      PiecewiseControl::constant({1.0}, 0.1), 0.1, 0.05);
  const std::string text = trajectory_text(tr);
  CHECK(text.rfind("t\tm00", 0) == 0);
  CHECK(std::count(text.begin(), text.end(), '\n') == 4);  // header + 3 rows
}
