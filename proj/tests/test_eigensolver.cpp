#include <cmath>
#include <random>

#include <doctest.h>
#include <Eigen/Dense>

#include "freeplate/eigensolver.hpp"

using namespace freeplate;

namespace {

SymMatrix random_symmetric(int n, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  SymMatrix a(n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      const double v = dist(rng);
      a(i, j) = v;
      a(j, i) = v;
    }
  return a;
}

Eigen::MatrixXd to_eigen(const SymMatrix& a) {
  const int n = a.size();
  Eigen::MatrixXd m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = a(i, j);
  return m;
}

}  // namespace

TEST_CASE("SymMatrix basics and symmetrize") {
  SymMatrix a(3);
  CHECK(a.size() == 3);
  CHECK(a(1, 2) == 0.0);
  a(0, 1) = 1.0;
  a(1, 0) = 3.0;
  a.symmetrize();
  CHECK(a(0, 1) == 2.0);
  CHECK(a(1, 0) == 2.0);
  CHECK_THROWS_AS(SymMatrix(0), std::invalid_argument);
}

TEST_CASE("jacobi solves small matrices exactly") {
  SymMatrix a(2);
  a(0, 0) = 2.0;
  a(1, 1) = 2.0;
  a(0, 1) = 1.0;
  a(1, 0) = 1.0;
  const auto r = jacobi_eigensymm(a);
  CHECK(std::abs(r.values[0] - 1.0) <= 1e-14);
  CHECK(std::abs(r.values[1] - 3.0) <= 1e-14);
  // Eigenvector for value 1 is (1, -1)/sqrt(2) up to sign.
  CHECK(std::abs(std::abs(r.vectors[0][0]) - std::sqrt(0.5)) <= 1e-14);
  CHECK(r.vectors[0][0] * r.vectors[0][1] < 0.0);

  SymMatrix d(1);
  d(0, 0) = 5.0;
  const auto r1 = jacobi_eigensymm(d);
  CHECK(r1.values[0] == 5.0);
  CHECK(r1.vectors[0][0] == 1.0);
}

TEST_CASE("jacobi matches a reference dense solver") {
  const int n = 40;
  const SymMatrix a = random_symmetric(n, 123);
  const auto r = jacobi_eigensymm(a);
  REQUIRE(static_cast<int>(r.values.size()) == n);
  for (int i = 0; i + 1 < n; ++i) CHECK(r.values[i] <= r.values[i + 1]);

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(to_eigen(a));
  for (int i = 0; i < n; ++i) CHECK(std::abs(r.values[i] - es.eigenvalues()[i]) <= 1e-11);

  // Residual and orthogonality.
  const Eigen::MatrixXd m = to_eigen(a);
  for (int k = 0; k < n; ++k) {
    Eigen::VectorXd v(n);
    for (int i = 0; i < n; ++i) v[i] = r.vectors[k][i];
    CHECK(std::abs(v.norm() - 1.0) <= 1e-12);
    CHECK((m * v - r.values[k] * v).norm() <= 1e-11 * m.norm());
    for (int l = k + 1; l < n; ++l) {
      double dot = 0.0;
      for (int i = 0; i < n; ++i) dot += r.vectors[k][i] * r.vectors[l][i];
      CHECK(std::abs(dot) <= 1e-12);
    }
  }
}

TEST_CASE("jacobi handles already-diagonal and zero matrices") {
  SymMatrix a(4);
  a(0, 0) = 3.0;
  a(1, 1) = -1.0;
  a(2, 2) = 0.5;
  const auto r = jacobi_eigensymm(a);
  CHECK(r.values[0] == -1.0);
  CHECK(r.values[3] == 3.0);
  CHECK(r.sweeps == 0);

  const auto z = jacobi_eigensymm(SymMatrix(3));
  CHECK(z.values[0] == 0.0);
  CHECK(z.values[2] == 0.0);
}

TEST_CASE("solve_generalized with identity mass reduces to jacobi") {
  const SymMatrix k = random_symmetric(12, 77);
  SymMatrix m(12);
  for (int i = 0; i < 12; ++i) m(i, i) = 1.0;
  const auto gen = solve_generalized(k, m);
  const auto plain = jacobi_eigensymm(k);
  REQUIRE(gen.values.size() == plain.values.size());
  for (size_t i = 0; i < gen.values.size(); ++i)
    CHECK(std::abs(gen.values[i] - plain.values[i]) <= 1e-11);
  CHECK(gen.filtered_count == 0);
  CHECK(std::abs(gen.smallest_mass_eigenvalue - 1.0) <= 1e-12);
}

TEST_CASE("solve_generalized matches a reference generalized solver") {
  const int n = 25;
  const SymMatrix k = random_symmetric(n, 5);
  // Well-conditioned SPD mass: M = B^T B + I.
  std::mt19937 rng(6);
  std::uniform_real_distribution<double> dist(-0.3, 0.3);
  Eigen::MatrixXd b(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) b(i, j) = dist(rng);
  const Eigen::MatrixXd me = b.transpose() * b + Eigen::MatrixXd::Identity(n, n);
  SymMatrix m(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = me(i, j);
  m.symmetrize();

  const auto gen = solve_generalized(k, m);
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(to_eigen(k), me);
  REQUIRE(static_cast<int>(gen.values.size()) == n);
  for (int i = 0; i < n; ++i)
    CHECK(std::abs(gen.values[i] - es.eigenvalues()[i]) <=
          1e-9 * std::max(1.0, std::abs(es.eigenvalues()[i])));

  // Vectors are M-orthonormal.
  for (int a = 0; a < n; ++a)
    for (int c = a; c < n; ++c) {
      double acc = 0.0;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) acc += gen.vectors[a][i] * me(i, j) * gen.vectors[c][j];
      CHECK(std::abs(acc - (a == c ? 1.0 : 0.0)) <= 1e-9);
    }
}

TEST_CASE("solve_generalized filters null mass directions") {
  // Block mass: identity on the first 3 coordinates, zero on the last 2.
  const int n = 5;
  SymMatrix m(n);
  for (int i = 0; i < 3; ++i) m(i, i) = 1.0;
  SymMatrix k(n);
  for (int i = 0; i < n; ++i) k(i, i) = i + 1.0;
  const auto gen = solve_generalized(k, m);
  CHECK(gen.filtered_count == 2);
  REQUIRE(gen.values.size() == 3);
  CHECK(std::abs(gen.values[0] - 1.0) <= 1e-12);
  CHECK(std::abs(gen.values[1] - 2.0) <= 1e-12);
  CHECK(std::abs(gen.values[2] - 3.0) <= 1e-12);
}

TEST_CASE("solve_generalized rejects bad inputs") {
  SymMatrix k(3), m(4);
  CHECK_THROWS_AS(solve_generalized(k, m), std::invalid_argument);
  SymMatrix neg(3);
  for (int i = 0; i < 3; ++i) neg(i, i) = -1.0;
  CHECK_THROWS_AS(solve_generalized(k, neg), std::invalid_argument);
  SymMatrix id(3);
  for (int i = 0; i < 3; ++i) id(i, i) = 1.0;
  CHECK_THROWS_AS(solve_generalized(k, id, 0.0), std::invalid_argument);
}
