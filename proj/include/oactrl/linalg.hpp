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

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numeric>
#include <random>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "oactrl/errors.hpp"

namespace oactrl::linalg {

using Complex = std::complex<double>;
using DenseMatrix = Eigen::MatrixXcd;
using StateVector = Eigen::VectorXcd;

/** Every numerical threshold used by the dense routines, in one place. */
struct Tolerances {
  double hermiticity = 1e-10;
  double unitarity = 1e-10;
  double unitarity_input = 1e-8;  // accepted deviation for matrices handed to ctrl / lambda_op
  double eig_offdiag = 1e-12;
  double unit_trace = 1e-8;
  int max_sweeps = 100;
  Eigen::Index max_dim = 1024;
};

inline const Tolerances& default_tolerances() {
  static const Tolerances tol{};
  return tol;
}

inline double max_abs(const DenseMatrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

inline bool is_hermitian(const DenseMatrix& h, double tol = default_tolerances().hermiticity) {
  if (h.rows() != h.cols()) return false;
  return max_abs(h - h.adjoint()) <= tol * std::max(1.0, max_abs(h));
}

inline bool is_unitary(const DenseMatrix& u, double tol = default_tolerances().unitarity) {
  if (u.rows() != u.cols()) return false;
  return max_abs(u.adjoint() * u - DenseMatrix::Identity(u.rows(), u.cols())) <= tol;
}

inline void check_dim(const DenseMatrix& m, const Tolerances& tol) {
  if (m.rows() != m.cols()) throw InvalidArgument("matrix is not square");
  if (m.rows() > tol.max_dim)
    throw GuardError("dense dimension " + std::to_string(m.rows()) + " exceeds limit " + std::to_string(tol.max_dim));
}

inline DenseMatrix kron(const DenseMatrix& a, const DenseMatrix& b) {
  DenseMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

/**
 * exp(-i h t) for Hermitian h by scaling and squaring a degree-18 Taylor
 * polynomial, with the scaled exponent kept at 1-norm <= 0.5.
 */
inline DenseMatrix expm_i_hermitian(const DenseMatrix& h, double t, const Tolerances& tol = default_tolerances()) {
  check_dim(h, tol);
  if (!is_hermitian(h, tol.hermiticity)) throw InvalidArgument("expm_i_hermitian: input is not Hermitian");
  const Eigen::Index n = h.rows();
  DenseMatrix a = Complex(0.0, -t) * h;
  const double norm1 = n == 0 ? 0.0 : a.cwiseAbs().colwise().sum().maxCoeff();
  int squarings = 0;
  double scaled = norm1;
  while (scaled > 0.5) {
    scaled /= 2.0;
    ++squarings;
  }
  a /= std::ldexp(1.0, squarings);

  DenseMatrix sum = DenseMatrix::Identity(n, n);
  DenseMatrix term = DenseMatrix::Identity(n, n);
  DenseMatrix tmp(n, n);
  for (int k = 1; k <= 18; ++k) {
    tmp.noalias() = term * a;
    term = tmp / static_cast<double>(k);
    sum += term;
  }
  for (int i = 0; i < squarings; ++i) {
    tmp.noalias() = sum * sum;
    sum.swap(tmp);
  }
  return sum;
}

struct EigenDecomposition {
  Eigen::VectorXd values;  // ascending
  DenseMatrix vectors;     // columns are eigenvectors
};

/**
 * Hermitian eigensolver by cyclic complex Jacobi rotations. Stops once the
 * off-diagonal Frobenius mass is <= eig_offdiag * ||h||_F.
 */
inline EigenDecomposition eigh(const DenseMatrix& h, const Tolerances& tol = default_tolerances()) {
  check_dim(h, tol);
  if (!is_hermitian(h, tol.hermiticity)) throw InvalidArgument("eigh: input is not Hermitian");
  const Eigen::Index n = h.rows();
  DenseMatrix a = 0.5 * (h + h.adjoint());
  DenseMatrix v = DenseMatrix::Identity(n, n);
  const double target = tol.eig_offdiag * h.norm();

  auto offdiag = [&] {
    double acc = 0.0;
    for (Eigen::Index j = 0; j < n; ++j)
      for (Eigen::Index i = 0; i < n; ++i)
        if (i != j) acc += std::norm(a(i, j));
    return std::sqrt(acc);
  };

  int sweep = 0;
  while (offdiag() > target) {
    if (sweep++ >= tol.max_sweeps) throw NumericalError("eigh: Jacobi iteration did not converge");
    for (Eigen::Index p = 0; p < n - 1; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const Complex b = a(p, q);
        const double mag = std::abs(b);
        if (mag == 0.0) continue;
        const Complex ph = b / mag;
        const Complex phc = std::conj(ph);
        const double theta = (a(q, q).real() - a(p, p).real()) / (2.0 * mag);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        for (Eigen::Index k = 0; k < n; ++k) {
          const Complex akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - s * phc * akq;
          a(k, q) = s * akp + c * phc * akq;
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          const Complex apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - s * ph * aqk;
          a(q, k) = s * apk + c * ph * aqk;
        }
        a(p, q) = a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
        for (Eigen::Index k = 0; k < n; ++k) {
          const Complex vkp = v(k, p), vkq = v(k, q);
          v(k, p) = c * vkp - s * phc * vkq;
          v(k, q) = s * vkp + c * phc * vkq;
        }
      }
    }
  }

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(), [&](auto x, auto y) { return a(x, x).real() < a(y, y).real(); });
  EigenDecomposition out{Eigen::VectorXd(n), DenseMatrix(n, n)};
  for (Eigen::Index i = 0; i < n; ++i) {
    out.values(i) = a(order[static_cast<std::size_t>(i)], order[static_cast<std::size_t>(i)]).real();
    out.vectors.col(i) = v.col(order[static_cast<std::size_t>(i)]);
  }
  return out;
}

/** Largest singular value, from the top eigenvalue of m^dagger m. */
inline double spectral_norm(const DenseMatrix& m, const Tolerances& tol = default_tolerances()) {
  if (m.size() == 0) return 0.0;
  const DenseMatrix gram = m.adjoint() * m;
  const auto ev = eigh(gram, tol).values;
  return std::sqrt(std::max(0.0, ev(ev.size() - 1)));
}

inline double trace_norm_hermitian(const DenseMatrix& m, const Tolerances& tol = default_tolerances()) {
  return eigh(m, tol).values.cwiseAbs().sum();
}

/** Half the trace norm of rho - sigma; both must be unit-trace Hermitian. */
inline double trace_distance(const DenseMatrix& rho, const DenseMatrix& sigma,
                             const Tolerances& tol = default_tolerances()) {
  if (rho.rows() != sigma.rows() || rho.cols() != sigma.cols())
    throw InvalidArgument("trace_distance: dimension mismatch");
  for (const DenseMatrix* m : {&rho, &sigma}) {
    if (!is_hermitian(*m, tol.hermiticity)) throw InvalidArgument("trace_distance: input is not Hermitian");
    if (std::abs(m->trace() - Complex(1.0)) > tol.unit_trace)
      throw InvalidArgument("trace_distance: input does not have unit trace");
  }
  return std::clamp(0.5 * trace_norm_hermitian(rho - sigma, tol), 0.0, 1.0);
}

/**
 * Trace distance between |phi><phi| and the uniform mixture of the given pure
 * states, computed in their span: with A = [phi, psi_1..psi_r] = QR the
 * nonzero spectrum of A W A^dagger equals that of R W R^dagger.
 */
inline double trace_distance_to_mixture(const StateVector& phi, std::span<const StateVector> states,
                                        const Tolerances& tol = default_tolerances()) {
  if (states.empty()) throw InvalidArgument("trace_distance_to_mixture: empty ensemble");
  const Eigen::Index dim = phi.size();
  const Eigen::Index m = static_cast<Eigen::Index>(states.size()) + 1;
  Eigen::VectorXd w(m);
  w(0) = 1.0;
  w.tail(m - 1).setConstant(-1.0 / static_cast<double>(states.size()));
  DenseMatrix a(dim, m);
  a.col(0) = phi;
  for (Eigen::Index i = 1; i < m; ++i) {
    if (states[static_cast<std::size_t>(i - 1)].size() != dim)
      throw InvalidArgument("trace_distance_to_mixture: dimension mismatch");
    a.col(i) = states[static_cast<std::size_t>(i - 1)];
  }
  DenseMatrix core;
  if (m <= dim) {
    Eigen::HouseholderQR<DenseMatrix> qr(a);
    const DenseMatrix r = qr.matrixQR().topRows(m).triangularView<Eigen::Upper>();
    core = r * w.asDiagonal() * r.adjoint();
  } else {
    core = a * w.asDiagonal() * a.adjoint();
  }
  core = 0.5 * (core + core.adjoint());
  return std::clamp(0.5 * trace_norm_hermitian(core, tol), 0.0, 1.0);
}

template <class Rng>
StateVector haar_state(Eigen::Index dim, Rng& rng) {
  if (dim < 1) throw InvalidArgument("haar_state: dimension must be >= 1");
  std::normal_distribution<double> normal(0.0, 1.0);
  StateVector psi(dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    const double re = normal(rng);
    const double im = normal(rng);
    psi(i) = Complex(re, im);
  }
  return psi / psi.norm();
}

/** Haar-random pure state; i.i.d. complex Gaussian amplitudes, normalized. */
inline StateVector haar_state(Eigen::Index dim, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return haar_state(dim, rng);
}

namespace detail {
inline void check_control_target(const DenseMatrix& u, const Tolerances& tol) {
  if (u.rows() != u.cols()) throw InvalidArgument("controlled operation needs a square matrix");
  if (!is_unitary(u, tol.unitarity_input)) throw InvalidArgument("controlled operation needs a unitary matrix");
}
}  // namespace detail

/** |0><0| (x) I + |1><1| (x) u, control as the most significant factor. */
inline DenseMatrix ctrl(const DenseMatrix& u, const Tolerances& tol = default_tolerances()) {
  detail::check_control_target(u, tol);
  const Eigen::Index n = u.rows();
  DenseMatrix out = DenseMatrix::Zero(2 * n, 2 * n);
  out.topLeftCorner(n, n).setIdentity();
  out.bottomRightCorner(n, n) = u;
  return out;
}

/** |0><0| (x) u + |1><1| (x) I; active on |0>, the opposite of ctrl. */
inline DenseMatrix lambda_op(const DenseMatrix& u, const Tolerances& tol = default_tolerances()) {
  detail::check_control_target(u, tol);
  const Eigen::Index n = u.rows();
  DenseMatrix out = DenseMatrix::Zero(2 * n, 2 * n);
  out.topLeftCorner(n, n) = u;
  out.bottomRightCorner(n, n).setIdentity();
  return out;
}

/** |b><b| (x) m without unitarity checks; used to lift Hamiltonians. */
inline DenseMatrix projector_kron(int b, const DenseMatrix& m) {
  const Eigen::Index n = m.rows();
  DenseMatrix out = DenseMatrix::Zero(2 * n, 2 * n);
  out.block(b * n, b * n, n, n) = m;
  return out;
}

}  // namespace oactrl::linalg
