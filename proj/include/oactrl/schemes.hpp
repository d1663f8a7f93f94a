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
#include <cstdio>
#include <map>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "oactrl/errors.hpp"
#include "oactrl/hamiltonian.hpp"
#include "oactrl/linalg.hpp"
#include "oactrl/oa.hpp"
#include "oactrl/pauli.hpp"

namespace oactrl::schemes {

using hamiltonian::KLocalHamiltonian;
using linalg::Complex;
using linalg::DenseMatrix;
using pauli::PauliString;

enum class SchemeKind { decoupling, time_reversal, controlization, simulation };

inline std::string to_string(SchemeKind k) {
  switch (k) {
    case SchemeKind::decoupling: return "decoupling";
    case SchemeKind::time_reversal: return "time_reversal";
    case SchemeKind::controlization: return "controlization";
    case SchemeKind::simulation: return "simulation";
  }
  return "?";
}

inline SchemeKind kind_from_string(const std::string& s) {
  if (s == "decoupling") return SchemeKind::decoupling;
  if (s == "time_reversal") return SchemeKind::time_reversal;
  if (s == "controlization") return SchemeKind::controlization;
  if (s == "simulation") return SchemeKind::simulation;
  throw ParseError("unknown scheme kind '" + s + "'");
}

/** One control interval: evolve for tau under u H u^dagger (Lambda(u) when controlled). */
struct Step {
  double tau = 0.0;
  PauliString u;
  bool controlled = false;
};

inline constexpr double kDurationTolerance = 1e-12;

/**
 * Ordered list of (tau_j, U_j). Decoupling schemes have total duration 1;
 * controlization schemes mark every step as Lambda-lifted.
 */
class Scheme {
 public:
  Scheme(SchemeKind kind, std::size_t n, unsigned d, std::vector<Step> steps)
      : kind_(kind), n_(n), d_(d), steps_(std::move(steps)) {
    for (const auto& s : steps_) {
      if (s.u.size() != n_ || s.u.dim() != d_) throw InvalidArgument("scheme step does not match the register");
      if (!(s.tau >= 0.0)) throw InvalidArgument("scheme durations must be nonnegative");
      if (kind_ == SchemeKind::controlization && !s.controlled)
        throw InvalidArgument("controlization scheme with an uncontrolled step");
    }
    if (kind_ == SchemeKind::decoupling && std::abs(total_duration() - 1.0) > kDurationTolerance)
      throw InvalidArgument("decoupling scheme durations must sum to 1");
  }

  SchemeKind kind() const { return kind_; }
  std::size_t qudits() const { return n_; }
  unsigned dim() const { return d_; }
  std::size_t size() const { return steps_.size(); }
  const std::vector<Step>& steps() const { return steps_; }
  const Step& operator[](std::size_t j) const { return steps_[j]; }

  double total_duration() const {
    double t = 0.0;
    for (const auto& s : steps_) t += s.tau;
    return t;
  }

 private:
  SchemeKind kind_;
  std::size_t n_;
  unsigned d_;
  std::vector<Step> steps_;
};

/** N steps of length 1/N, U_j = the Pauli string of row j. Needs s = d^2. */
inline Scheme scheme_from_oa(const oa::OrthogonalArray& arr, unsigned d) {
  if (arr.levels() != d * d)
    throw InvalidArgument("array has " + std::to_string(arr.levels()) + " levels, need d^2 = " + std::to_string(d * d));
  oa::require_verified(arr);
  std::vector<Step> steps;
  steps.reserve(arr.runs());
  const double tau = 1.0 / static_cast<double>(arr.runs());
  for (std::size_t r = 0; r < arr.runs(); ++r) steps.push_back({tau, PauliString::from_oa_row(arr.row(r), d), false});
  return {SchemeKind::decoupling, arr.factors(), d, std::move(steps)};
}

/**
 * Scheme on n = color.size() qudits from an array with one column per color:
 * qudit i gets column color[i]. Same-colored qudits never share a term when
 * the coloring is proper, so a strength-2 array over the colors suffices.
 */
inline Scheme scheme_from_oa_colored(const oa::OrthogonalArray& arr, unsigned d, const hamiltonian::Coloring& coloring) {
  if (arr.levels() != d * d) throw InvalidArgument("array levels must equal d^2");
  if (coloring.count > arr.factors())
    throw InvalidArgument("coloring uses " + std::to_string(coloring.count) + " colors but the array has only " +
                          std::to_string(arr.factors()) + " columns");
  oa::require_verified(arr);
  const std::size_t n = coloring.color.size();
  const double tau = 1.0 / static_cast<double>(arr.runs());
  std::vector<Step> steps;
  for (std::size_t r = 0; r < arr.runs(); ++r) {
    auto u = PauliString::identity(n, d);
    for (std::size_t q = 0; q < n; ++q) u.set(q, pauli::QuditPauli::from_index(arr.at(r, coloring.color[q]), d));
    steps.push_back({tau, std::move(u), false});
  }
  return {SchemeKind::decoupling, n, d, std::move(steps)};
}

inline constexpr double kDropThreshold = 1e-14;

/**
 * sum_j tau_j U_j H U_j^dagger computed symbolically. Each term picks up the
 * exact scalar w^k from the symplectic form; weights are accumulated per power
 * k, so a term whose weights are all equal cancels to exactly zero.
 */
inline KLocalHamiltonian average_hamiltonian(const Scheme& s, const KLocalHamiltonian& h) {
  if (s.qudits() != h.qudits() || s.dim() != h.dim()) throw InvalidArgument("scheme and Hamiltonian do not match");
  for (const auto& st : s.steps())
    if (st.controlled) throw InvalidArgument("symbolic average needs an uncontrolled scheme; use dense_average");
  const unsigned d = h.dim();
  std::vector<std::pair<PauliString, Complex>> acc;
  std::map<PauliString, std::size_t> where;
  std::vector<double> weight(d);
  for (const auto& t : h.terms()) {
    std::fill(weight.begin(), weight.end(), 0.0);
    for (const auto& st : s.steps()) weight[pauli::commutation_power(st.u, t.op)] += st.tau;
    Complex factor = 0.0;
    if (!std::all_of(weight.begin(), weight.end(), [&](double w) { return w == weight[0]; })) {
      for (unsigned k = 0; k < d; ++k) factor += weight[k] * pauli::root_of_unity(d, k);
    }
    const Complex c = t.coeff * factor;
    auto [it, inserted] = where.try_emplace(t.op, acc.size());
    if (inserted)
      acc.emplace_back(t.op, c);
    else
      acc[it->second].second += c;
  }
  KLocalHamiltonian out(h.qudits(), d, h.locality());
  for (auto& [op, c] : acc) {
    Complex v = c;
    if (std::abs(v.real()) < kDropThreshold) v.real(0.0);
    if (std::abs(v.imag()) < kDropThreshold) v.imag(0.0);
    if (v != Complex(0.0)) out.add(v, op);
  }
  return out;
}

/** Dense operator of a step: U, or Lambda(U) on C^2 (x) H when controlled. */
inline DenseMatrix step_matrix(const Step& st) {
  const DenseMatrix u = st.u.to_matrix();
  return st.controlled ? linalg::lambda_op(u) : u;
}

/**
 * Dense sum_j tau_j M_j H M_j^dagger; for controlled steps h must live on the
 * joint space C^2 (x) H.
 */
inline DenseMatrix dense_average(const Scheme& s, const DenseMatrix& h) {
  DenseMatrix out = DenseMatrix::Zero(h.rows(), h.cols());
  for (const auto& st : s.steps()) {
    const DenseMatrix m = step_matrix(st);
    if (m.rows() != h.rows()) throw InvalidArgument("dense_average: dimension mismatch");
    out += st.tau * (m * h * m.adjoint());
  }
  return out;
}

/**
 * Given D with an identity step (rotated to the front if needed), returns
 * R = (tau_j / tau_1, U_j) for j >= 2, whose average is -H wherever D's is 0.
 */
inline Scheme derive_time_reversal(const Scheme& dec) {
  if (dec.kind() != SchemeKind::decoupling) throw InvalidArgument("time reversal needs a decoupling scheme");
  const auto& st = dec.steps();
  auto it = std::find_if(st.begin(), st.end(), [](const Step& s) { return s.u.is_identity(); });
  if (it == st.end()) throw InvalidArgument("decoupling scheme has no identity step");
  const std::size_t first = static_cast<std::size_t>(it - st.begin());
  const double tau1 = it->tau;
  if (!(tau1 > 0.0)) throw InvalidArgument("identity step has zero duration");
  std::vector<Step> out;
  for (std::size_t k = 1; k < st.size(); ++k) {
    const auto& s = st[(first + k) % st.size()];
    out.push_back({s.tau / tau1, s.u, false});
  }
  return {SchemeKind::time_reversal, dec.qudits(), dec.dim(), std::move(out)};
}

/** C = Lambda(D): same durations, every U_j lifted to |0><0| (x) U_j + |1><1| (x) I. */
inline Scheme controlize(const Scheme& dec) {
  if (dec.kind() != SchemeKind::decoupling) throw InvalidArgument("controlize needs a decoupling scheme");
  std::vector<Step> out;
  for (const auto& s : dec.steps()) out.push_back({s.tau, s.u, true});
  return {SchemeKind::controlization, dec.qudits(), dec.dim(), std::move(out)};
}

/**
 * Control operations actually applied between evolution intervals: with
 * U_0 = I, V_j = U_j U_{j-1}^dagger for j = 1..N and V_{N+1} = U_N^dagger.
 * Phases are exact, so V_j ... V_1 = U_j and the full product is I.
 */
inline std::vector<PauliString> us_to_vs(const Scheme& s) {
  std::vector<PauliString> vs;
  PauliString prev = PauliString::identity(s.qudits(), s.dim());
  for (const auto& st : s.steps()) {
    vs.push_back(st.u * prev.adjoint());
    prev = st.u;
  }
  vs.push_back(prev.adjoint());
  return vs;
}

/** U_j = V_j ... V_1 for j = 1..N (the closing V_{N+1} is dropped). */
inline std::vector<PauliString> vs_to_us(const std::vector<PauliString>& vs) {
  if (vs.empty()) return {};
  std::vector<PauliString> us;
  PauliString acc = PauliString::identity(vs.front().size(), vs.front().dim());
  for (std::size_t j = 0; j + 1 < vs.size(); ++j) {
    acc = vs[j] * acc;
    us.push_back(acc);
  }
  return us;
}

struct WeightReport {
  std::vector<std::size_t> weights;  // V_1 .. V_{N+1}
  std::size_t max = 0;
  double mean = 0.0;
};

inline WeightReport weight_report(const Scheme& s) {
  WeightReport r;
  for (const auto& v : us_to_vs(s)) r.weights.push_back(v.weight());
  r.max = *std::max_element(r.weights.begin(), r.weights.end());
  r.mean = static_cast<double>(std::accumulate(r.weights.begin(), r.weights.end(), std::size_t{0})) /
           static_cast<double>(r.weights.size());
  return r;
}

/** Phi(h) = d^{-2k} sum over all k-qudit Paulis P of P h P^dagger. */
inline DenseMatrix depolarize(unsigned d, std::size_t k, const DenseMatrix& h) {
  std::size_t dim = 1, count = 1;
  for (std::size_t i = 0; i < k; ++i) {
    dim *= d;
    count *= std::size_t{d} * d;
  }
  if (dim > 64) throw GuardError("depolarize: d^k must be <= 64");
  if (static_cast<std::size_t>(h.rows()) != dim || h.rows() != h.cols())
    throw InvalidArgument("depolarize: operator dimension must be d^k");
  DenseMatrix out = DenseMatrix::Zero(h.rows(), h.cols());
  std::vector<unsigned> row(k);
  for (std::size_t code = 0; code < count; ++code) {
    std::size_t c = code;
    for (std::size_t i = 0; i < k; ++i) {
      row[i] = static_cast<unsigned>(c % (std::size_t{d} * d)) + 1;
      c /= std::size_t{d} * d;
    }
    const DenseMatrix p = PauliString::from_oa_row(row, d).to_matrix();
    out += p * h * p.adjoint();
  }
  return out / static_cast<double>(count);
}

/** Frobenius norm of Phi(h). */
inline double depolarize_check(unsigned d, std::size_t k, const DenseMatrix& h) { return depolarize(d, k, h).norm(); }

/**
 * Weight-one Q on the lowest qudit where p acts, chosen so Q p Q^dagger = w^k p
 * with k != 0 (for qubits: anticommuting). Z if that factor has an X part,
 * else X.
 */
inline PauliString find_anticommuting_pauli(const PauliString& p) {
  const auto sup = p.support();
  if (sup.empty()) throw InvalidArgument("identity has no anticommuting Pauli");
  const auto q = sup.front();
  const auto f = p.factor(q);
  return f.a != 0 ? PauliString::single(p.size(), p.dim(), q, 0, 1) : PauliString::single(p.size(), p.dim(), q, 1, 0);
}

enum class GateKind { evolution, controlled_pauli };

/**
 * Evolution gates apply exp(-i P time) to the system; controlled Pauli gates
 * apply op on the system when the control qubit is |0> (on_zero) or |1>.
 */
struct Gate {
  GateKind kind;
  PauliString op;
  double time = 0.0;
  bool on_zero = true;
};

inline bool is_pm_hermitian_qubit(const PauliString& p) {
  unsigned ys = 0;
  for (std::size_t i = 0; i < p.size(); ++i) ys += p.x(i) & p.z(i);
  return (p.phase_exp() + 4 - ys % 4) % 2 == 0;
}

/**
 * ctrl(exp(-i P t)) for a known Pauli term from two half evolutions and a
 * Lambda-controlled weight-one Q that anticommutes with P:
 * [exp(-iPt/2), Lambda(Q), exp(-iPt/2), Lambda(Q^dagger)] in time order.
 * On control |0> the halves cancel, on |1> they add up to exp(-iPt).
 */
inline std::vector<Gate> controlize_known_term(const PauliString& p, double t) {
  if (p.dim() != 2) throw InvalidArgument("controlize_known_term supports qubits only");
  if (p.is_identity()) throw InvalidArgument("controlize_known_term: identity term");
  if (!is_pm_hermitian_qubit(p)) throw InvalidArgument("controlize_known_term: term is not Hermitian");
  const auto q = find_anticommuting_pauli(p);
  return {{GateKind::evolution, p, t / 2.0, true},
          {GateKind::controlled_pauli, q, 0.0, true},
          {GateKind::evolution, p, t / 2.0, true},
          {GateKind::controlled_pauli, q.adjoint(), 0.0, true}};
}

/** Dense unitary of a gate list on C^2 (x) H, control qubit most significant. */
inline DenseMatrix gate_sequence_matrix(const std::vector<Gate>& gates) {
  if (gates.empty()) throw InvalidArgument("empty gate sequence");
  std::size_t dim = gates.front().op.to_matrix().rows();
  DenseMatrix acc = DenseMatrix::Identity(static_cast<Eigen::Index>(2 * dim), static_cast<Eigen::Index>(2 * dim));
  for (const auto& g : gates) {
    const DenseMatrix m = g.op.to_matrix();
    DenseMatrix full;
    if (g.kind == GateKind::evolution) {
      const DenseMatrix e = linalg::expm_i_hermitian(m, g.time);
      full = linalg::kron(DenseMatrix::Identity(2, 2), e);
    } else {
      full = g.on_zero ? linalg::lambda_op(m) : linalg::ctrl(m);
    }
    acc = full * acc;
  }
  return acc;
}

// ---------------------------------------------------------------------------
// Export format: header "scheme <kind> N=<N> n=<n> d=<d>", then one step per
// line "<tau>  <pauli string>[  ctrl]".

inline std::string to_text(const Scheme& s) {
  std::ostringstream os;
  os << "scheme " << to_string(s.kind()) << " N=" << s.size() << " n=" << s.qudits() << " d=" << s.dim() << "\n";
  for (const auto& st : s.steps()) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", st.tau);
    os << buf << "  " << st.u.to_string() << (st.controlled ? "  ctrl" : "") << "\n";
  }
  return os.str();
}

inline Scheme from_text(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  bool header = false;
  SchemeKind kind{};
  std::size_t count = 0, n = 0;
  unsigned d = 0;
  std::vector<Step> steps;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream ls(line);
    if (!header) {
      std::string word, kname;
      ls >> word >> kname;
      if (word != "scheme") throw ParseError("line " + std::to_string(lineno) + ": expected 'scheme' header");
      kind = kind_from_string(kname);
      std::string tok;
      while (ls >> tok) {
        auto eq = tok.find('=');
        if (eq == std::string::npos) throw ParseError("bad header field '" + tok + "'");
        const auto key = tok.substr(0, eq);
        const auto val = std::stoul(tok.substr(eq + 1));
        if (key == "N") count = val;
        else if (key == "n") n = val;
        else if (key == "d") d = static_cast<unsigned>(val);
      }
      if (n == 0 || d < 2) throw ParseError("scheme header needs n and d");
      header = true;
      continue;
    }
    std::string rest = line.substr(first);
    auto sp = rest.find_first_of(" \t");
    if (sp == std::string::npos) throw ParseError("line " + std::to_string(lineno) + ": missing Pauli string");
    Step st;
    st.tau = hamiltonian::detail::parse_double(rest.substr(0, sp));
    rest = rest.substr(sp);
    rest.erase(rest.find_last_not_of(" \t\r") + 1);
    if (rest.size() >= 4 && rest.compare(rest.size() - 4, 4, "ctrl") == 0) {
      st.controlled = true;
      rest.erase(rest.size() - 4);
    }
    try {
      st.u = pauli::parse_pauli(rest, n, d);
    } catch (const ParseError& e) {
      throw ParseError("line " + std::to_string(lineno) + ": " + e.what());
    }
    steps.push_back(std::move(st));
  }
  if (!header) throw ParseError("missing scheme header");
  if (steps.size() != count)
    throw ParseError("header declares " + std::to_string(count) + " steps, found " + std::to_string(steps.size()));
  try {
    return {kind, n, d, std::move(steps)};
  } catch (const InvalidArgument& e) {
    throw ParseError(e.what());
  }
}

}  // namespace oactrl::schemes
