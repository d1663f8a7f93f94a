// Copyright 2026 The oactrl Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <gtest/gtest.h>

#include <Eigen/Eigenvalues>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "oactrl/linalg.hpp"

namespace {

using namespace oactrl;
using namespace oactrl::linalg;
using C = std::complex<double>;

DenseMatrix random_hermitian(Eigen::Index n, std::mt19937_64& rng, double scale = 1.0) {
  std::normal_distribution<double> g;
  DenseMatrix a(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) a(i, j) = C(g(rng), g(rng));
  return scale * 0.5 * (a + a.adjoint());
}

DenseMatrix pauli_x() {
  DenseMatrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

DenseMatrix pauli_z() {
  DenseMatrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

// exp(-i h t) through Eigen's own Hermitian solver.
DenseMatrix oracle_expm(const DenseMatrix& h, double t) {
  Eigen::SelfAdjointEigenSolver<DenseMatrix> es(h);
  Eigen::VectorXcd ph(h.rows());
  for (Eigen::Index i = 0; i < h.rows(); ++i) ph(i) = std::polar(1.0, -es.eigenvalues()(i) * t);
  return es.eigenvectors() * ph.asDiagonal() * es.eigenvectors().adjoint();
}

DenseMatrix projector(const StateVector& v) { return v * v.adjoint(); }

TEST(Expm, ClosedForms) {
  const double t = 0.7;
  const DenseMatrix u = expm_i_hermitian(pauli_z(), t);
  EXPECT_NEAR(std::abs(u(0, 0) - std::polar(1.0, -t)), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(u(1, 1) - std::polar(1.0, t)), 0.0, 1e-14);
  EXPECT_LT(max_abs(expm_i_hermitian(pauli_z(), 0.0) - DenseMatrix::Identity(2, 2)), 1e-16);
  const DenseMatrix ux = expm_i_hermitian(pauli_x(), std::numbers::pi / 2);
  EXPECT_LT(max_abs(ux - C(0, -1) * pauli_x()), 1e-12);
  for (double s : {0.1, 1.0, 3.0, 25.0}) {
    const DenseMatrix v = expm_i_hermitian(pauli_x(), s);
    const DenseMatrix ref = std::cos(s) * DenseMatrix::Identity(2, 2) - C(0, std::sin(s)) * pauli_x();
    EXPECT_LT(max_abs(v - ref), 1e-12) << s;
  }
}

TEST(Expm, AgreesWithOracleAndIsUnitary) {
  std::mt19937_64 rng(1);
  for (Eigen::Index n : {3, 16, 64, 512}) {
    const DenseMatrix h = random_hermitian(n, rng, 1.0 / std::sqrt(static_cast<double>(n)));
    const DenseMatrix u = expm_i_hermitian(h, 1.3);
    EXPECT_LT(max_abs(u.adjoint() * u - DenseMatrix::Identity(n, n)), 1e-10) << n;
    if (n <= 64) EXPECT_LT(max_abs(u - oracle_expm(h, 1.3)), 1e-11) << n;
  }
}

TEST(Expm, Semigroup) {
  std::mt19937_64 rng(2);
  const DenseMatrix h = random_hermitian(16, rng);
  EXPECT_LT(max_abs(expm_i_hermitian(h, 0.4) * expm_i_hermitian(h, 1.1) - expm_i_hermitian(h, 1.5)), 1e-9);
}

TEST(Expm, Errors) {
  DenseMatrix nh(2, 2);
  nh << 0, 1, 0, 0;
  EXPECT_THROW(expm_i_hermitian(nh, 1.0), InvalidArgument);
  EXPECT_THROW(expm_i_hermitian(DenseMatrix::Zero(1025, 1025), 1.0), GuardError);
}

TEST(Eigh, Examples) {
  const auto z = eigh(pauli_z());
  EXPECT_NEAR(z.values(0), -1.0, 1e-15);
  EXPECT_NEAR(z.values(1), 1.0, 1e-15);
  const DenseMatrix xx_zz = kron(pauli_x(), pauli_x()) + kron(pauli_z(), pauli_z());
  const auto e = eigh(xx_zz);
  const std::vector<double> want{-2, 0, 0, 2};
  for (int i = 0; i < 4; ++i) EXPECT_NEAR(e.values(i), want[static_cast<std::size_t>(i)], 1e-12);
}

TEST(Eigh, DiagonalInput) {
  DenseMatrix d = DenseMatrix::Zero(4, 4);
  d.diagonal() << 3.0, -1.0, 2.0, 0.5;
  const auto e = eigh(d);
  EXPECT_EQ(e.values(0), -1.0);
  EXPECT_EQ(e.values(1), 0.5);
  EXPECT_EQ(e.values(2), 2.0);
  EXPECT_EQ(e.values(3), 3.0);
}

TEST(Eigh, AgreesWithOracle) {
  std::mt19937_64 rng(3);
  for (Eigen::Index n : {2, 5, 17, 64, 128}) {
    const DenseMatrix h = random_hermitian(n, rng);
    const auto e = eigh(h);
    Eigen::SelfAdjointEigenSolver<DenseMatrix> es(h);
    EXPECT_LT((e.values - es.eigenvalues()).cwiseAbs().maxCoeff(), 1e-9 * h.norm()) << n;
    const DenseMatrix rec = e.vectors * e.values.cast<C>().asDiagonal() * e.vectors.adjoint();
    EXPECT_LE((rec - h).norm(), 1e-9 * h.norm()) << n;
    EXPECT_LT(max_abs(e.vectors.adjoint() * e.vectors - DenseMatrix::Identity(n, n)), 1e-10);
    EXPECT_NEAR(e.values.sum(), h.trace().real(), 1e-9 * h.norm());
  }
}

TEST(Eigh, Degenerate) {
  std::mt19937_64 rng(4);
  const DenseMatrix q = expm_i_hermitian(random_hermitian(6, rng), 1.0);
  DenseMatrix d = DenseMatrix::Zero(6, 6);
  d.diagonal() << 1, 1, 1, -2, -2, 5;
  const DenseMatrix h = q * d * q.adjoint();
  const auto e = eigh(h);
  const std::vector<double> want{-2, -2, 1, 1, 1, 5};
  for (int i = 0; i < 6; ++i) EXPECT_NEAR(e.values(i), want[static_cast<std::size_t>(i)], 1e-10);
}

TEST(SpectralNorm, MatchesSingularValues) {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> g;
  DenseMatrix m(12, 12);
  for (Eigen::Index i = 0; i < 12; ++i)
    for (Eigen::Index j = 0; j < 12; ++j) m(i, j) = C(g(rng), g(rng));
  Eigen::JacobiSVD<DenseMatrix> svd(m);
  EXPECT_NEAR(spectral_norm(m), svd.singularValues()(0), 1e-9 * svd.singularValues()(0));
  EXPECT_EQ(spectral_norm(DenseMatrix::Zero(3, 3)), 0.0);
}

TEST(TraceDistance, Examples) {
  StateVector e0 = StateVector::Zero(2), e1 = StateVector::Zero(2);
  e0(0) = 1.0;
  e1(1) = 1.0;
  EXPECT_NEAR(trace_distance(projector(e0), projector(e0)), 0.0, 1e-15);
  EXPECT_NEAR(trace_distance(projector(e0), projector(e1)), 1.0, 1e-15);
  EXPECT_NEAR(trace_distance(projector(e0), 0.5 * DenseMatrix::Identity(2, 2)), 0.5, 1e-15);
  DenseMatrix bad = DenseMatrix::Identity(2, 2);
  EXPECT_THROW(trace_distance(bad, projector(e0)), InvalidArgument);
}

TEST(TraceDistance, MetricProperties) {
  std::mt19937_64 rng(6);
  auto mixed = [&](Eigen::Index n) {
    DenseMatrix rho = DenseMatrix::Zero(n, n);
    for (int k = 0; k < 3; ++k) rho += projector(haar_state(n, rng)) / 3.0;
    return rho;
  };
  for (int i = 0; i < 20; ++i) {
    const DenseMatrix a = mixed(8), b = mixed(8), c = mixed(8);
    const double ab = trace_distance(a, b);
    EXPECT_NEAR(ab, trace_distance(b, a), 1e-12);
    EXPECT_LE(ab, trace_distance(a, c) + trace_distance(c, b) + 1e-12);
    const DenseMatrix u = expm_i_hermitian(random_hermitian(8, rng), 1.0);
    EXPECT_NEAR(trace_distance(u * a * u.adjoint(), u * b * u.adjoint()), ab, 1e-10);
  }
}

TEST(TraceDistance, MixtureMatchesDense) {
  std::mt19937_64 rng(7);
  for (auto [dim, r] : {std::pair<Eigen::Index, int>{4, 1}, {4, 7}, {16, 5}, {32, 40}}) {
    const StateVector phi = haar_state(dim, rng);
    std::vector<StateVector> ens;
    DenseMatrix mix = DenseMatrix::Zero(dim, dim);
    for (int i = 0; i < r; ++i) {
      ens.push_back(haar_state(dim, rng));
      mix += projector(ens.back()) / static_cast<double>(r);
    }
    EXPECT_NEAR(trace_distance_to_mixture(phi, ens), trace_distance(projector(phi), mix), 1e-10);
  }
  const StateVector phi = haar_state(8, std::uint64_t{9});
  std::vector<StateVector> same(3, phi);
  EXPECT_NEAR(trace_distance_to_mixture(phi, same), 0.0, 1e-12);
}

TEST(Haar, NormAndDeterminism) {
  const StateVector a = haar_state(64, std::uint64_t{42}), b = haar_state(64, std::uint64_t{42});
  EXPECT_NEAR(a.norm(), 1.0, 1e-12);
  EXPECT_EQ(a, b);
  EXPECT_NE(a, haar_state(64, std::uint64_t{43}));
}

TEST(Haar, MeanOverlap) {
  std::mt19937_64 rng(10);
  const int pairs = 1000;
  std::vector<double> ov;
  for (int i = 0; i < pairs; ++i) ov.push_back(std::norm(haar_state(16, rng).dot(haar_state(16, rng))));
  double mean = 0, var = 0;
  for (double o : ov) mean += o / pairs;
  for (double o : ov) var += (o - mean) * (o - mean) / (pairs - 1);
  EXPECT_NEAR(mean, 1.0 / 16.0, 3.0 * std::sqrt(var / pairs));
}

TEST(Control, Conventions) {
  const DenseMatrix c = ctrl(pauli_x());
  DenseMatrix cnot = DenseMatrix::Zero(4, 4);
  cnot(0, 0) = cnot(1, 1) = cnot(2, 3) = cnot(3, 2) = 1.0;
  EXPECT_EQ(c, cnot);
  EXPECT_EQ(ctrl(DenseMatrix::Identity(2, 2)), DenseMatrix::Identity(4, 4));
  const DenseMatrix cz = ctrl(expm_i_hermitian(pauli_z(), 1.0));
  EXPECT_NEAR(std::abs(cz(2, 2) - std::polar(1.0, -1.0)), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(cz(3, 3) - std::polar(1.0, 1.0)), 0.0, 1e-14);
  EXPECT_EQ(cz(0, 0), C(1.0));

  const DenseMatrix l = lambda_op(pauli_x());
  EXPECT_EQ(DenseMatrix(l.topLeftCorner(2, 2)), pauli_x());
  EXPECT_EQ(DenseMatrix(l.bottomRightCorner(2, 2)), DenseMatrix::Identity(2, 2));
  EXPECT_EQ(lambda_op(DenseMatrix::Identity(2, 2)), DenseMatrix::Identity(4, 4));
  std::mt19937_64 rng(11);
  const StateVector psi = haar_state(2, rng);
  StateVector in = StateVector::Zero(4);
  in.tail(2) = psi;
  EXPECT_LT((lambda_op(pauli_x()) * in - in).norm(), 1e-15);

  DenseMatrix nu = DenseMatrix::Identity(2, 2) * 2.0;
  EXPECT_THROW(ctrl(nu), InvalidArgument);
  EXPECT_THROW(lambda_op(nu), InvalidArgument);
}

TEST(Kron, Ordering) {
  const DenseMatrix k = kron(pauli_z(), DenseMatrix::Identity(2, 2));
  EXPECT_EQ(k(2, 2), C(-1.0));
  EXPECT_EQ(k(1, 1), C(1.0));
}

}  // namespace
