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
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <map>
#include <numeric>
#include <optional>
#include <ostream>
#include <random>
#include <string>
#include <vector>

#include "oactrl/errors.hpp"
#include "oactrl/hamiltonian.hpp"
#include "oactrl/known_arrays.hpp"
#include "oactrl/linalg.hpp"
#include "oactrl/oa.hpp"
#include "oactrl/pauli.hpp"
#include "oactrl/schemes.hpp"

namespace oactrl::protocols {

using hamiltonian::KLocalHamiltonian;
using linalg::Complex;
using linalg::DenseMatrix;
using linalg::StateVector;
using pauli::PauliString;
using schemes::Scheme;

enum class Order { first, second };
enum class QdriftMode { off, full_pauli_group, oa_subset };

inline std::string to_string(Order o) { return o == Order::first ? "first" : "second"; }

inline std::string to_string(QdriftMode m) {
  switch (m) {
    case QdriftMode::off: return "off";
    case QdriftMode::full_pauli_group: return "full_pauli_group";
    case QdriftMode::oa_subset: return "oa_subset";
  }
  return "?";
}

inline Order order_from_string(const std::string& s) {
  if (s == "first") return Order::first;
  if (s == "second") return Order::second;
  throw InvalidArgument("order must be 'first' or 'second', got '" + s + "'");
}

inline QdriftMode qdrift_from_string(const std::string& s) {
  if (s == "off") return QdriftMode::off;
  if (s == "full_pauli_group" || s == "full") return QdriftMode::full_pauli_group;
  if (s == "oa_subset" || s == "oa") return QdriftMode::oa_subset;
  throw InvalidArgument("unknown qdrift mode '" + s + "'");
}

/** Child seed for a task identified by fixed indices; independent of scheduling. */
inline std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> path) {
  std::vector<std::uint32_t> words{static_cast<std::uint32_t>(master), static_cast<std::uint32_t>(master >> 32)};
  for (auto p : path) {
    words.push_back(static_cast<std::uint32_t>(p));
    words.push_back(static_cast<std::uint32_t>(p >> 32));
  }
  std::seed_seq seq(words.begin(), words.end());
  std::uint32_t out[2];
  seq.generate(out, out + 2);
  return (std::uint64_t{out[1]} << 32) | out[0];
}

// ---------------------------------------------------------------------------
// Dense block builders. h must match the step matrices: d^n for plain steps,
// 2 d^n (h = I_2 (x) H) for Lambda-lifted ones.

namespace detail {

// exp(-i h dt) cached by duration; schemes usually have one distinct tau.
class EvolutionCache {
 public:
  explicit EvolutionCache(const DenseMatrix& h) : h_(h) {}
  const DenseMatrix& get(double dt) {
    auto it = cache_.find(dt);
    if (it == cache_.end()) it = cache_.emplace(dt, linalg::expm_i_hermitian(h_, dt)).first;
    return it->second;
  }

 private:
  const DenseMatrix& h_;
  std::map<double, DenseMatrix> cache_;
};

inline DenseMatrix conjugated(const schemes::Step& st, const DenseMatrix& u) {
  const DenseMatrix m = schemes::step_matrix(st);
  return m * u * m.adjoint();
}

}  // namespace detail

/**
 * One first-order pass: in time order j = 1..N, apply M_j exp(-i h dt tau_j) M_j^dagger.
 * Returns the product (later factors on the left).
 */
inline DenseMatrix first_order_block(const Scheme& s, const DenseMatrix& h, double dt) {
  if (!(dt >= 0.0)) throw InvalidArgument("block duration must be >= 0");
  detail::EvolutionCache cache(h);
  DenseMatrix acc = DenseMatrix::Identity(h.rows(), h.cols());
  for (const auto& st : s.steps()) {
    const DenseMatrix m = schemes::step_matrix(st);
    if (m.rows() != h.rows()) throw InvalidArgument("first_order_block: dimension mismatch");
    acc = m * cache.get(dt * st.tau) * m.adjoint() * acc;
  }
  return acc;
}

/**
 * Symmetric second-order step: half durations for j = 1..N, then again for
 * j = N..1. The two middle factors are kept separate (2N invocations).
 */
inline DenseMatrix second_order_block(const Scheme& s, const DenseMatrix& h, double dt) {
  if (!(dt >= 0.0)) throw InvalidArgument("block duration must be >= 0");
  detail::EvolutionCache cache(h);
  std::vector<DenseMatrix> factors;
  factors.reserve(s.size());
  for (const auto& st : s.steps()) {
    const DenseMatrix m = schemes::step_matrix(st);
    if (m.rows() != h.rows()) throw InvalidArgument("second_order_block: dimension mismatch");
    factors.push_back(m * cache.get(dt * st.tau / 2.0) * m.adjoint());
  }
  DenseMatrix acc = DenseMatrix::Identity(h.rows(), h.cols());
  for (const auto& f : factors) acc = f * acc;
  for (auto it = factors.rbegin(); it != factors.rend(); ++it) acc = *it * acc;
  return acc;
}

/** Uniformly random n-qudit Pauli (identity included). */
template <class Rng>
PauliString random_pauli(std::size_t n, unsigned d, Rng& rng) {
  std::uniform_int_distribution<unsigned> sym(1, d * d);
  auto p = PauliString::identity(n, d);
  for (std::size_t q = 0; q < n; ++q) p.set(q, pauli::QuditPauli::from_index(sym(rng), d));
  return p;
}

/**
 * qDRIFT-style decoupling block: samples factors P_i exp(-i h dt/samples) P_i^dagger,
 * P_i uniform over all d^(2n) Paulis or over the rows of the given scheme.
 */
template <class Rng>
DenseMatrix qdrift_block(const DenseMatrix& h, std::size_t n, unsigned d, double dt, QdriftMode mode, Rng& rng,
                         const Scheme* oa_scheme = nullptr, std::size_t samples = 64) {
  if (mode == QdriftMode::off) throw InvalidArgument("qdrift_block needs a sampling mode");
  if (mode == QdriftMode::oa_subset && (oa_scheme == nullptr || oa_scheme->size() == 0))
    throw InvalidArgument("oa_subset sampling needs a scheme");
  const DenseMatrix u = linalg::expm_i_hermitian(h, dt / static_cast<double>(samples));
  DenseMatrix acc = DenseMatrix::Identity(h.rows(), h.cols());
  std::uniform_int_distribution<std::size_t> row(0, oa_scheme ? oa_scheme->size() - 1 : 0);
  for (std::size_t i = 0; i < samples; ++i) {
    const PauliString p = mode == QdriftMode::full_pauli_group ? random_pauli(n, d, rng) : (*oa_scheme)[row(rng)].u;
    const DenseMatrix m = p.to_matrix();
    acc = m * u * m.adjoint() * acc;
  }
  return acc;
}

/** X on the control qubit (most significant) conjugating m: maps Lambda-type gates to ctrl-type. */
inline DenseMatrix flip_control(const DenseMatrix& m) {
  const Eigen::Index half = m.rows() / 2;
  DenseMatrix out(m.rows(), m.cols());
  out.topLeftCorner(half, half) = m.bottomRightCorner(half, half);
  out.bottomRightCorner(half, half) = m.topLeftCorner(half, half);
  out.topRightCorner(half, half) = m.bottomLeftCorner(half, half);
  out.bottomLeftCorner(half, half) = m.topRightCorner(half, half);
  return out;
}

// ---------------------------------------------------------------------------
// Configuration and results

struct HamiltonianSpec {
  std::string generator = "random_sparse";  // random_sparse | random_dense | random_local | example3 | chain | zero | file
  std::size_t qudits = 8;
  std::size_t terms = 40;
  unsigned locality = 2;
  unsigned dim = 2;
  std::uint64_t seed = 1;
  double scale = 1.0;  // multiplies every coefficient
  std::string file;
};

struct SchemeSource {
  std::string array = "oa32";  // oa16 | oa32 | rao_hamming | file
  unsigned levels = 4;
  unsigned strength = 2;
  unsigned ell = 2;
  std::string file;
  bool transpose = false;
  std::vector<std::size_t> columns;  // 0-based; empty keeps the first n
  unsigned dim = 2;
};

struct Variant {
  std::string label;
  Order order = Order::first;
  bool randomized = false;
  QdriftMode qdrift = QdriftMode::off;
  std::size_t reps = 1;
};

struct ExperimentConfig {
  HamiltonianSpec hamiltonian;
  SchemeSource scheme;
  std::vector<Variant> variants;
  std::vector<std::size_t> blocks{1, 2, 4, 8, 16, 32, 64};  // decoupling: block counts
  std::vector<std::size_t> trotter_steps{4, 8, 16, 32, 64};  // controlization: r values
  double total_time = 1.0;
  std::size_t states = 10;
  std::uint64_t master_seed = 2024;
  bool record_timing = false;
};

struct ResultRow {
  std::string scheme;
  std::string order;
  bool randomized = false;
  std::string qdrift_mode = "off";
  std::size_t blocks = 0;
  std::optional<std::size_t> state_id;
  std::size_t instance_reps = 1;
  std::string metric;
  double value = 0.0;
  double seconds = 0.0;
};

inline constexpr const char* kCsvHeader =
    "scheme,order,randomized,qdrift_mode,blocks,state_id,instance_reps,metric,value,seconds";

inline void write_csv(std::ostream& os, const std::vector<ResultRow>& rows) {
  os << kCsvHeader << "\n";
  char val[64], sec[64];
  for (const auto& r : rows) {
    std::snprintf(val, sizeof val, "%.17g", r.value);
    std::snprintf(sec, sizeof sec, "%.6f", r.seconds);
    os << r.scheme << ',' << r.order << ',' << (r.randomized ? "true" : "false") << ',' << r.qdrift_mode << ','
       << r.blocks << ',' << (r.state_id ? std::to_string(*r.state_id) : std::string()) << ',' << r.instance_reps
       << ',' << r.metric << ',' << val << ',' << sec << "\n";
  }
}

inline KLocalHamiltonian build_hamiltonian(const HamiltonianSpec& spec, const std::string& file_text = {}) {
  KLocalHamiltonian h = [&] {
    const auto& g = spec.generator;
    if (g == "random_sparse") return hamiltonian::random_sparse(spec.qudits, spec.terms, spec.seed);
    if (g == "random_dense") return hamiltonian::random_dense_all_terms(spec.qudits, spec.seed);
    if (g == "random_local")
      return hamiltonian::random_local(spec.qudits, spec.locality, spec.dim, spec.terms, spec.seed);
    if (g == "example3") return hamiltonian::example_3local();
    if (g == "chain")
      return hamiltonian::random_on_graph(spec.qudits, hamiltonian::chain_edges(spec.qudits), spec.seed);
    if (g == "zero") return KLocalHamiltonian(spec.qudits, spec.dim, spec.locality);
    if (g == "file") return hamiltonian::from_text(file_text);
    throw InvalidArgument("unknown Hamiltonian generator '" + g + "'");
  }();
  if (spec.scale == 1.0) return h;
  KLocalHamiltonian scaled(h.qudits(), h.dim(), h.locality());
  for (const auto& t : h.terms()) scaled.add(t.coeff * spec.scale, t.op);
  return scaled;
}

/** Array named by the source, restricted to `columns` or to its first n columns. */
inline oa::OrthogonalArray build_array(const SchemeSource& src, std::size_t n, const std::string& file_text = {}) {
  oa::OrthogonalArray arr = [&] {
    if (src.array == "oa16") return oa::known::oa_16_5_4_2();
    if (src.array == "oa32") return oa::known::oa_32_9_4_2();
    if (src.array == "rao_hamming") return oa::construct_rao_hamming(gf::Field::of_order(src.levels), src.ell);
    if (src.array == "file") return oa::load(file_text, src.levels, src.strength, {.transpose = src.transpose});
    throw InvalidArgument("unknown array source '" + src.array + "'");
  }();
  std::vector<std::size_t> cols = src.columns;
  if (cols.empty()) {
    if (n > arr.factors())
      throw InvalidArgument("array has " + std::to_string(arr.factors()) + " columns, need " + std::to_string(n));
    cols.resize(n);
    std::iota(cols.begin(), cols.end(), std::size_t{0});
  }
  if (cols.size() != n) throw InvalidArgument("column selection does not match the qudit count");
  return oa::restrict_columns(arr, cols);
}

// ---------------------------------------------------------------------------
// State-batch engine for the decoupling benchmark. Every column is one
// (initial state, scheme instance) pair; all invocations inside a run share one
// exp(-i H dt), so each invocation is one GEMM plus two Pauli applications per
// column.

namespace detail {

struct Operator {
  PauliString op;
  PauliString adj;
};

class ColumnBatch {
 public:
  ColumnBatch(DenseMatrix initial) : a_(std::move(initial)), b_(a_.rows(), a_.cols()) {}

  /** a <- P_c U P_c^dagger a, column by column. */
  void invoke(const DenseMatrix& u, const std::vector<const Operator*>& ops) {
    const auto dim = static_cast<std::size_t>(a_.rows());
    for (Eigen::Index c = 0; c < a_.cols(); ++c) ops[static_cast<std::size_t>(c)]->adj.apply_raw(a_.col(c).data(), b_.col(c).data(), dim);
    a_.noalias() = u * b_;
    for (Eigen::Index c = 0; c < a_.cols(); ++c) ops[static_cast<std::size_t>(c)]->op.apply_raw(a_.col(c).data(), b_.col(c).data(), dim);
    a_.swap(b_);
  }

  const DenseMatrix& states() const { return a_; }

 private:
  DenseMatrix a_, b_;
};

}  // namespace detail

struct DecouplingInputs {
  DenseMatrix h;                    // dense Hamiltonian
  Scheme scheme;                    // OA decoupling scheme (uniform durations)
  std::vector<StateVector> states;  // initial states
};

/**
 * Final states for one variant at B blocks: columns ordered (state, instance).
 * Each block is 2N invocations of exp(-i H dt) with dt = t / (2 N B), so the
 * total black-box time is exactly t for every B.
 */
inline DenseMatrix run_variant(const DecouplingInputs& in, const Variant& v, std::size_t blocks, double total_time,
                               const DenseMatrix& u, std::uint64_t seed, double* evolved_time = nullptr) {
  const std::size_t nstates = in.states.size();
  const std::size_t reps = std::max<std::size_t>(1, v.reps);
  const std::size_t cols = nstates * reps;
  const std::size_t big_n = in.scheme.size();
  const auto dim = static_cast<Eigen::Index>(in.states.front().size());
  const std::size_t n = in.scheme.qudits();
  const unsigned d = in.scheme.dim();

  DenseMatrix init(dim, static_cast<Eigen::Index>(cols));
  for (std::size_t s = 0; s < nstates; ++s)
    for (std::size_t i = 0; i < reps; ++i) init.col(static_cast<Eigen::Index>(s * reps + i)) = in.states[s];
  detail::ColumnBatch batch(std::move(init));

  std::vector<detail::Operator> pool;
  pool.reserve(big_n);
  for (const auto& st : in.scheme.steps()) pool.push_back({st.u, st.u.adjoint()});

  std::vector<std::mt19937_64> rng;
  rng.reserve(cols);
  for (std::size_t c = 0; c < cols; ++c) rng.emplace_back(derive_seed(seed, {blocks, c}));

  std::vector<std::vector<std::size_t>> perm(cols, std::vector<std::size_t>(big_n));
  for (auto& p : perm) std::iota(p.begin(), p.end(), std::size_t{0});
  auto reshuffle = [&] {
    if (!v.randomized) return;
    for (std::size_t c = 0; c < cols; ++c) std::shuffle(perm[c].begin(), perm[c].end(), rng[c]);
  };

  const std::size_t per_block = 2 * big_n;
  const double dt = total_time / static_cast<double>(per_block * blocks);
  double clock = 0.0;
  std::vector<const detail::Operator*> ops(cols);
  std::vector<detail::Operator> drawn(cols);
  std::uniform_int_distribution<std::size_t> pick_row(0, big_n - 1);

  for (std::size_t b = 0; b < blocks; ++b) {
    if (v.qdrift != QdriftMode::off) {
      for (std::size_t m = 0; m < per_block; ++m) {
        for (std::size_t c = 0; c < cols; ++c) {
          if (v.qdrift == QdriftMode::full_pauli_group) {
            auto p = random_pauli(n, d, rng[c]);
            drawn[c] = {p, p.adjoint()};
            ops[c] = &drawn[c];
          } else {
            ops[c] = &pool[pick_row(rng[c])];
          }
        }
        batch.invoke(u, ops);
        clock += dt;
      }
      continue;
    }
    const std::size_t passes = v.order == Order::first ? 2 : 1;
    for (std::size_t pass = 0; pass < passes; ++pass) {
      reshuffle();
      for (std::size_t j = 0; j < big_n; ++j) {
        for (std::size_t c = 0; c < cols; ++c) ops[c] = &pool[perm[c][j]];
        batch.invoke(u, ops);
        clock += dt;
      }
      if (v.order == Order::second) {
        for (std::size_t j = big_n; j-- > 0;) {
          for (std::size_t c = 0; c < cols; ++c) ops[c] = &pool[perm[c][j]];
          batch.invoke(u, ops);
          clock += dt;
        }
      }
    }
  }
  if (std::abs(clock - total_time) > 1e-12 * std::max(1.0, total_time))
    throw Error("internal error: evolved time " + std::to_string(clock) + " differs from " + std::to_string(total_time));
  if (evolved_time) *evolved_time = clock;
  return batch.states();
}

inline constexpr std::size_t kMaxDecouplingQudits = 10;

/**
 * Decoupling benchmark. For each block count B and variant, every initial
 * state is evolved through `reps` scheme instances and the trace distance of
 * the resulting mixture to the initial state is recorded.
 */
inline std::vector<ResultRow> run_decoupling_experiment(const ExperimentConfig& cfg, const KLocalHamiltonian& h,
                                                        const Scheme& scheme) {
  if (h.qudits() > kMaxDecouplingQudits)
    throw GuardError("decoupling benchmark is dense; at most " + std::to_string(kMaxDecouplingQudits) + " qudits");
  if (scheme.qudits() != h.qudits() || scheme.dim() != h.dim())
    throw InvalidArgument("scheme and Hamiltonian do not match");
  if (cfg.blocks.empty()) throw InvalidArgument("empty block list");
  if (cfg.variants.empty()) throw InvalidArgument("no scheme variants configured");
  if (cfg.states == 0) throw InvalidArgument("need at least one initial state");
  for (std::size_t i = 1; i < scheme.size(); ++i)
    if (scheme[i].tau != scheme[0].tau) throw InvalidArgument("benchmark needs uniform step durations");
  for (auto b : cfg.blocks)
    if (b == 0) throw InvalidArgument("block counts must be positive");

  DecouplingInputs in{h.to_dense(), scheme, {}};
  const auto dim = static_cast<Eigen::Index>(h.hilbert_dim());
  for (std::size_t s = 0; s < cfg.states; ++s)
    in.states.push_back(linalg::haar_state(dim, derive_seed(cfg.master_seed, {0x57a7e, s})));

  std::vector<ResultRow> rows;
  for (auto blocks : cfg.blocks) {
    const double dt = cfg.total_time / static_cast<double>(2 * scheme.size() * blocks);
    const DenseMatrix u = linalg::expm_i_hermitian(in.h, dt);
    for (std::size_t vi = 0; vi < cfg.variants.size(); ++vi) {
      const auto& v = cfg.variants[vi];
      const auto t0 = std::chrono::steady_clock::now();
      const std::size_t reps = std::max<std::size_t>(1, v.reps);
      const DenseMatrix finals = run_variant(in, v, blocks, cfg.total_time, u, derive_seed(cfg.master_seed, {vi + 1}));
      std::vector<double> td(cfg.states);
      for (std::size_t s = 0; s < cfg.states; ++s) {
        std::vector<StateVector> ens;
        ens.reserve(reps);
        for (std::size_t i = 0; i < reps; ++i) ens.emplace_back(finals.col(static_cast<Eigen::Index>(s * reps + i)));
        td[s] = linalg::trace_distance_to_mixture(in.states[s], ens);
      }
      const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      for (std::size_t s = 0; s < cfg.states; ++s) {
        rows.push_back({v.label, to_string(v.order), v.randomized, to_string(v.qdrift), blocks, s, reps,
                        "trace_distance", td[s], cfg.record_timing ? secs / static_cast<double>(cfg.states) : 0.0});
      }
    }
  }
  return rows;
}

inline constexpr std::size_t kMaxControlizationQudits = 6;

/** ||U - ctrl(exp(-iHt))|| for the Lambda-lifted scheme with r Trotter steps. */
inline double controlization_error(const Scheme& controlized, const DenseMatrix& h, double t, std::size_t r,
                                   Order order) {
  if (r == 0) throw InvalidArgument("need at least one Trotter step");
  const DenseMatrix joint = linalg::kron(DenseMatrix::Identity(2, 2), h);
  const DenseMatrix target = linalg::ctrl(linalg::expm_i_hermitian(h, t));
  const double dt = t / static_cast<double>(r);
  const DenseMatrix block =
      order == Order::first ? first_order_block(controlized, joint, dt) : second_order_block(controlized, joint, dt);
  DenseMatrix u = DenseMatrix::Identity(joint.rows(), joint.cols());
  for (std::size_t i = 0; i < r; ++i) u = block * u;
  return linalg::spectral_norm(u - target);
}

/** Operator error of Lambda(D)-based controlization for each configured r and variant. */
inline std::vector<ResultRow> run_controlization_experiment(const ExperimentConfig& cfg, const KLocalHamiltonian& h,
                                                            const Scheme& scheme) {
  if (h.qudits() > kMaxControlizationQudits)
    throw GuardError("controlization benchmark is dense; at most " + std::to_string(kMaxControlizationQudits) +
                     " qudits");
  if (cfg.trotter_steps.empty()) throw InvalidArgument("empty Trotter step list");
  if (cfg.variants.empty()) throw InvalidArgument("no scheme variants configured");
  const Scheme c = scheme.kind() == schemes::SchemeKind::controlization ? scheme : schemes::controlize(scheme);
  const DenseMatrix hd = h.to_dense();
  std::vector<ResultRow> rows;
  for (const auto& v : cfg.variants) {
    for (auto r : cfg.trotter_steps) {
      const auto t0 = std::chrono::steady_clock::now();
      const double err = controlization_error(c, hd, cfg.total_time, r, v.order);
      const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      rows.push_back({v.label, to_string(v.order), false, "off", r, std::nullopt, 1, "operator_error", err,
                      cfg.record_timing ? secs : 0.0});
    }
  }
  return rows;
}

/** ||R^r exp(-iHT) - I||: exact forward evolution undone by r first-order passes of a reversal scheme. */
inline double time_reversal_error(const Scheme& reversal, const DenseMatrix& h, double t, std::size_t r) {
  if (r == 0) throw InvalidArgument("need at least one Trotter step");
  const DenseMatrix block = first_order_block(reversal, h, t / static_cast<double>(r));
  DenseMatrix u = linalg::expm_i_hermitian(h, t);
  for (std::size_t i = 0; i < r; ++i) u = block * u;
  return linalg::spectral_norm(u - DenseMatrix::Identity(h.rows(), h.cols()));
}

struct ResourceEstimate {
  std::size_t trotter_steps = 0;
  std::size_t controlled_paulis = 0;
};

/**
 * First order: r = ceil(c1 t^2 ||H||^2 / eps), r N controlled Paulis.
 * Second order: r = ceil(c2 (t ||H||)^{3/2} / sqrt(eps)), 2 r N.
 */
inline ResourceEstimate estimate_resources(std::size_t runs, double t, double norm_h, double eps, Order order,
                                           double c1 = 1.0, double c2 = 1.0) {
  if (!(eps > 0.0)) throw InvalidArgument("eps must be positive");
  if (runs == 0 || !(t > 0.0) || !(norm_h > 0.0)) throw InvalidArgument("N, t and ||H|| must be positive");
  const double raw = order == Order::first ? c1 * t * t * norm_h * norm_h / eps
                                           : c2 * std::pow(t * norm_h, 1.5) / std::sqrt(eps);
  // absorb rounding just above an integer (1/0.01 is not exactly 100)
  const double r = std::max(1.0, std::ceil(raw * (1.0 - 1e-12)));
  const auto steps = static_cast<std::size_t>(r);
  return {steps, (order == Order::first ? 1 : 2) * steps * runs};
}

/** Least-squares slope of log(y) against log(x), skipping the first drop points. */
inline double loglog_slope(const std::vector<double>& x, const std::vector<double>& y, std::size_t drop = 0) {
  if (x.size() != y.size() || x.size() < drop + 2) throw InvalidArgument("loglog_slope needs at least two points");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double m = static_cast<double>(x.size() - drop);
  for (std::size_t i = drop; i < x.size(); ++i) {
    const double lx = std::log(x[i]), ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

}  // namespace oactrl::protocols
