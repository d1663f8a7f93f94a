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
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <map>
#include <numbers>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "oactrl/errors.hpp"
#include "oactrl/linalg.hpp"
#include "oactrl/pauli.hpp"

namespace oactrl::hamiltonian {

using linalg::Complex;
using linalg::DenseMatrix;
using linalg::StateVector;
using pauli::PauliString;

struct Term {
  Complex coeff;
  PauliString op;
};

/**
 * Weighted sum of Pauli strings, each of weight <= k and none the identity.
 *
 * Qubit generators store real coefficients with Y = i XZ folded into the
 * string phase (see pauli::hermitian_qubit), so each term is Hermitian as a
 * matrix. Qudit (d > 2) Hamiltonians carry complex coefficients and pair each
 * string with its adjoint.
 */
class KLocalHamiltonian {
 public:
  KLocalHamiltonian(std::size_t n, unsigned d, unsigned k, std::vector<Term> terms = {})
      : n_(n), d_(d), k_(k) {
    if (d < 2) throw InvalidArgument("qudit dimension must be >= 2");
    for (auto& t : terms) add(std::move(t));
  }

  void add(Term t) {
    if (t.op.size() != n_ || t.op.dim() != d_) throw InvalidArgument("term does not match the register");
    if (t.op.is_identity()) throw InvalidArgument("identity term: Hamiltonians are kept traceless");
    if (t.op.weight() > k_)
      throw InvalidArgument("term " + t.op.to_string() + " has weight above locality " + std::to_string(k_));
    terms_.push_back(std::move(t));
  }

  void add(Complex coeff, PauliString op) { add(Term{coeff, std::move(op)}); }

  std::size_t qudits() const { return n_; }
  unsigned dim() const { return d_; }
  unsigned locality() const { return k_; }
  const std::vector<Term>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }

  std::size_t hilbert_dim() const {
    std::size_t v = 1;
    for (std::size_t i = 0; i < n_; ++i) v *= d_;
    return v;
  }

  DenseMatrix to_dense() const {
    if (hilbert_dim() > 4096) throw GuardError("Hamiltonian too large for a dense matrix");
    const auto dim = static_cast<Eigen::Index>(hilbert_dim());
    DenseMatrix h = DenseMatrix::Zero(dim, dim);
    for (const auto& t : terms_) h += t.coeff * t.op.to_matrix();
    return h;
  }

  /** Matrix-free H psi. */
  StateVector apply(const StateVector& psi) const {
    StateVector out = StateVector::Zero(psi.size());
    StateVector work, scratch;
    for (const auto& t : terms_) {
      work = psi;
      t.op.apply_inplace(work, scratch);
      out += t.coeff * work;
    }
    return out;
  }

  /** Sum of |coefficients|, an upper bound on the spectral norm. */
  double one_norm() const {
    double s = 0.0;
    for (const auto& t : terms_) s += std::abs(t.coeff);
    return s;
  }

 private:
  std::size_t n_;
  unsigned d_;
  unsigned k_;
  std::vector<Term> terms_;
};

// ---------------------------------------------------------------------------
// Generators

namespace detail {

inline double uniform_angle(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> dist(0.0, 2.0 * std::numbers::pi);
  return dist(rng);
}

// The i-th qubit string of weight 1 or 2 in canonical order: 3n singles (qubit
// ascending, factor X, Z, Y), then 9 per pair (i<j ascending).
inline PauliString two_local_qubit_string(std::size_t n, std::size_t index) {
  static constexpr unsigned kA[3] = {1, 0, 1};
  static constexpr unsigned kB[3] = {0, 1, 1};
  auto s = PauliString::identity(n, 2);
  if (index < 3 * n) {
    s.set(index / 3, {2, kA[index % 3], kB[index % 3]});
    return pauli::hermitian_qubit(s);
  }
  index -= 3 * n;
  const std::size_t pair = index / 9, which = index % 9;
  std::size_t i = 0, rem = pair;
  while (rem >= n - 1 - i) {
    rem -= n - 1 - i;
    ++i;
  }
  const std::size_t j = i + 1 + rem;
  s.set(i, {2, kA[which / 3], kB[which / 3]});
  s.set(j, {2, kA[which % 3], kB[which % 3]});
  return pauli::hermitian_qubit(s);
}

}  // namespace detail

inline std::size_t count_two_local_qubit_strings(std::size_t n) { return 3 * n + 9 * n * (n - 1) / 2; }

/**
 * m distinct uniformly random qubit strings of weight 1 or 2, coefficients
 * i.i.d. uniform on [0, 2 pi). Duplicate draws are redrawn.
 */
inline KLocalHamiltonian random_sparse(std::size_t n, std::size_t m, std::uint64_t seed) {
  if (n < 2) throw InvalidArgument("random_sparse needs n >= 2");
  const std::size_t total = count_two_local_qubit_strings(n);
  if (m > total)
    throw InvalidArgument("requested " + std::to_string(m) + " terms but only " + std::to_string(total) +
                          " distinct two-local strings exist");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, total - 1);
  std::set<std::size_t> chosen;
  std::vector<std::size_t> order;
  while (order.size() < m) {
    const auto idx = pick(rng);
    if (chosen.insert(idx).second) order.push_back(idx);
  }
  KLocalHamiltonian h(n, 2, 2);
  for (auto idx : order) h.add(detail::uniform_angle(rng), detail::two_local_qubit_string(n, idx));
  return h;
}

/** Every weight-1 and weight-2 qubit string, coefficients i.i.d. uniform on [0, 2 pi). */
inline KLocalHamiltonian random_dense_all_terms(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  KLocalHamiltonian h(n, 2, 2);
  const std::size_t total = n == 0 ? 0 : count_two_local_qubit_strings(n);
  for (std::size_t i = 0; i < total; ++i) h.add(detail::uniform_angle(rng), detail::two_local_qubit_string(n, i));
  return h;
}

/**
 * m random terms of weight exactly min(k, n) on uniformly random supports.
 * Qubits: real coefficients in [-1, 1]. Qudits: c P + conj(c) P^dagger with
 * c uniform in the unit square, so the sum stays Hermitian.
 */
inline KLocalHamiltonian random_local(std::size_t n, unsigned k, unsigned d, std::size_t m, std::uint64_t seed) {
  if (k < 1 || n < 1) throw InvalidArgument("random_local needs n >= 1 and k >= 1");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  std::uniform_int_distribution<unsigned> sym(1, d * d - 1);
  KLocalHamiltonian h(n, d, k);
  const std::size_t w = std::min<std::size_t>(k, n);
  std::vector<std::size_t> qudits(n);
  for (std::size_t t = 0; t < m; ++t) {
    for (std::size_t i = 0; i < n; ++i) qudits[i] = i;
    std::shuffle(qudits.begin(), qudits.end(), rng);
    auto s = PauliString::identity(n, d);
    for (std::size_t i = 0; i < w; ++i) s.set(qudits[i], pauli::QuditPauli::from_index(1 + sym(rng), d));
    if (d == 2) {
      h.add(coef(rng), pauli::hermitian_qubit(s));
    } else {
      const Complex c(coef(rng), coef(rng));
      h.add(c, s);
      h.add(std::conj(c), s.adjoint());
    }
  }
  return h;
}

/** XXIX + YIIY + (ZIZZ + XIXX)/2 on four qubits, k = 3. */
inline KLocalHamiltonian example_3local() {
  KLocalHamiltonian h(4, 2, 3);
  h.add(1.0, pauli::parse_pauli("X1 X2 X4", 4, 2));
  h.add(1.0, pauli::parse_pauli("Y1 Y4", 4, 2));
  h.add(0.5, pauli::parse_pauli("Z1 Z3 Z4", 4, 2));
  h.add(0.5, pauli::parse_pauli("X1 X3 X4", 4, 2));
  return h;
}

using Edge = std::pair<std::size_t, std::size_t>;

inline std::vector<Edge> chain_edges(std::size_t n) {
  std::vector<Edge> e;
  for (std::size_t i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
  return e;
}

/** Nearest-neighbour edges of an lx x ly square lattice, site index x*ly + y. */
inline std::vector<Edge> grid_edges(std::size_t lx, std::size_t ly) {
  std::vector<Edge> e;
  for (std::size_t x = 0; x < lx; ++x)
    for (std::size_t y = 0; y < ly; ++y) {
      const std::size_t v = x * ly + y;
      if (x + 1 < lx) e.emplace_back(v, v + ly);
      if (y + 1 < ly) e.emplace_back(v, v + 1);
    }
  return e;
}

inline std::vector<Edge> complete_edges(std::size_t n) {
  std::vector<Edge> e;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) e.emplace_back(i, j);
  return e;
}

/** Z_i Z_j on every edge, unit coefficients. */
inline KLocalHamiltonian zz_on_graph(std::size_t n, const std::vector<Edge>& edges) {
  KLocalHamiltonian h(n, 2, 2);
  for (auto [i, j] : edges) {
    auto s = PauliString::identity(n, 2);
    s.set(i, {2, 0, 1});
    s.set(j, {2, 0, 1});
    h.add(1.0, s);
  }
  return h;
}

/**
 * All nine two-qubit Pauli products on every edge plus the three single-qubit
 * Paulis on every site, coefficients uniform on [-1, 1].
 */
inline KLocalHamiltonian random_on_graph(std::size_t n, const std::vector<Edge>& edges, std::uint64_t seed) {
  static constexpr unsigned kA[3] = {1, 0, 1};
  static constexpr unsigned kB[3] = {0, 1, 1};
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  KLocalHamiltonian h(n, 2, 2);
  for (std::size_t i = 0; i < n; ++i)
    for (unsigned p = 0; p < 3; ++p) h.add(coef(rng), pauli::hermitian_qubit(PauliString::single(n, 2, i, kA[p], kB[p])));
  for (auto [i, j] : edges)
    for (unsigned p = 0; p < 3; ++p)
      for (unsigned q = 0; q < 3; ++q) {
        auto s = PauliString::identity(n, 2);
        s.set(i, {2, kA[p], kB[p]});
        s.set(j, {2, kA[q], kB[q]});
        h.add(coef(rng), pauli::hermitian_qubit(s));
      }
  return h;
}

// ---------------------------------------------------------------------------
// Norms

inline constexpr std::size_t kExactNormMaxDim = 1024;

/**
 * Largest |eigenvalue|. Dense Jacobi diagonalization up to dimension 1024,
 * otherwise power iteration on H^2 with the matrix-free action (100
 * iterations, relative tolerance 1e-8).
 */
inline double spectral_norm(const KLocalHamiltonian& h) {
  if (h.empty()) return 0.0;
  if (h.hilbert_dim() <= kExactNormMaxDim) {
    const auto ev = linalg::eigh(h.to_dense()).values;
    return std::max(std::abs(ev(0)), std::abs(ev(ev.size() - 1)));
  }
  StateVector v = linalg::haar_state(static_cast<Eigen::Index>(h.hilbert_dim()), std::uint64_t{0x5eed});
  double prev = 0.0, est = 0.0;
  for (int it = 0; it < 100; ++it) {
    StateVector w = h.apply(h.apply(v));
    est = std::sqrt(std::abs(v.dot(w)));
    const double nw = w.norm();
    if (nw == 0.0) return 0.0;
    v = w / nw;
    if (it > 0 && std::abs(est - prev) <= 1e-8 * est) break;
    prev = est;
  }
  return est;
}

// ---------------------------------------------------------------------------
// Interaction graph and coloring

struct InteractionGraph {
  std::size_t n = 0;
  std::vector<Edge> edges;  // i < j, sorted, unique
  std::vector<std::vector<std::size_t>> adjacency;

  static InteractionGraph from_edges(std::size_t n, std::vector<Edge> e) {
    InteractionGraph g;
    g.n = n;
    for (auto& [i, j] : e) {
      if (i >= n || j >= n) throw InvalidArgument("edge endpoint out of range");
      if (i == j) throw InvalidArgument("self loop in interaction graph");
      if (i > j) std::swap(i, j);
    }
    std::sort(e.begin(), e.end());
    e.erase(std::unique(e.begin(), e.end()), e.end());
    g.edges = std::move(e);
    g.adjacency.assign(n, {});
    for (auto [i, j] : g.edges) {
      g.adjacency[i].push_back(j);
      g.adjacency[j].push_back(i);
    }
    return g;
  }

  bool has_edge(std::size_t i, std::size_t j) const {
    if (i > j) std::swap(i, j);
    return std::binary_search(edges.begin(), edges.end(), Edge{i, j});
  }
};

/** Edge (i, j) iff some term acts nontrivially on both i and j. */
inline InteractionGraph interaction_graph(const KLocalHamiltonian& h) {
  std::vector<Edge> e;
  for (const auto& t : h.terms()) {
    const auto sup = t.op.support();
    for (std::size_t a = 0; a < sup.size(); ++a)
      for (std::size_t b = a + 1; b < sup.size(); ++b) e.emplace_back(sup[a], sup[b]);
  }
  return InteractionGraph::from_edges(h.qudits(), std::move(e));
}

struct Coloring {
  std::vector<unsigned> color;  // per vertex, 0-based
  unsigned count = 0;
};

/** Greedy coloring in descending-degree order (ties by index), smallest free color first. */
inline Coloring greedy_coloring(const InteractionGraph& g) {
  std::vector<std::size_t> order(g.n);
  for (std::size_t i = 0; i < g.n; ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return g.adjacency[a].size() > g.adjacency[b].size(); });
  constexpr unsigned kNone = ~0u;
  Coloring c{std::vector<unsigned>(g.n, kNone), 0};
  std::vector<bool> used;
  for (auto v : order) {
    used.assign(g.n + 1, false);
    for (auto u : g.adjacency[v])
      if (c.color[u] != kNone) used[c.color[u]] = true;
    unsigned col = 0;
    while (used[col]) ++col;
    c.color[v] = col;
    c.count = std::max(c.count, col + 1);
  }
  return c;
}

inline bool is_proper(const InteractionGraph& g, const Coloring& c) {
  if (c.color.size() != g.n) return false;
  for (auto [i, j] : g.edges)
    if (c.color[i] == c.color[j]) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Text format: header "# hamiltonian n=<n> d=<d> k=<k>", then one term per line
// "<coeff>  <pauli string>". Real coefficients print as one number, complex ones
// as "(re,im)"; %.17g makes the round trip exact.

namespace detail {

inline std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline double parse_double(const std::string& s) {
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != s.size() || s.empty()) throw ParseError("not a number: '" + s + "'");
  return v;
}

}  // namespace detail

inline std::string to_text(const KLocalHamiltonian& h) {
  std::ostringstream os;
  os << "# hamiltonian n=" << h.qudits() << " d=" << h.dim() << " k=" << h.locality() << "\n";
  for (const auto& t : h.terms()) {
    if (t.coeff.imag() == 0.0)
      os << detail::format_double(t.coeff.real());
    else
      os << "(" << detail::format_double(t.coeff.real()) << "," << detail::format_double(t.coeff.imag()) << ")";
    os << "  " << t.op.to_string(h.dim() == 2) << "\n";
  }
  return os.str();
}

inline KLocalHamiltonian from_text(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::size_t n = 0;
  unsigned d = 0, k = 0;
  bool have_header = false;
  std::vector<Term> terms;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    if (line[first] == '#') {
      if (line.find("hamiltonian") == std::string::npos) continue;
      std::istringstream hs(line.substr(first + 1));
      std::string tok;
      while (hs >> tok) {
        auto eq = tok.find('=');
        if (eq == std::string::npos) continue;
        const auto key = tok.substr(0, eq);
        const auto val = static_cast<unsigned long>(detail::parse_double(tok.substr(eq + 1)));
        if (key == "n") n = val;
        if (key == "d") d = static_cast<unsigned>(val);
        if (key == "k") k = static_cast<unsigned>(val);
      }
      have_header = n > 0 && d >= 2 && k >= 1;
      continue;
    }
    if (!have_header) throw ParseError("line " + std::to_string(lineno) + ": term before '# hamiltonian n= d= k=' header");
    line = line.substr(first);
    Complex c;
    std::string rest;
    if (line[0] == '(') {
      auto close = line.find(')');
      auto comma = line.find(',');
      if (close == std::string::npos || comma == std::string::npos || comma > close)
        throw ParseError("line " + std::to_string(lineno) + ": bad complex coefficient");
      c = Complex(detail::parse_double(line.substr(1, comma - 1)),
                  detail::parse_double(line.substr(comma + 1, close - comma - 1)));
      rest = line.substr(close + 1);
    } else {
      auto sp = line.find_first_of(" \t");
      if (sp == std::string::npos) throw ParseError("line " + std::to_string(lineno) + ": missing Pauli string");
      c = detail::parse_double(line.substr(0, sp));
      rest = line.substr(sp);
    }
    try {
      terms.push_back({c, pauli::parse_pauli(rest, n, d)});
    } catch (const ParseError& e) {
      throw ParseError("line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  if (!have_header) throw ParseError("missing '# hamiltonian n= d= k=' header");
  KLocalHamiltonian h(n, d, k);
  for (auto& t : terms) {
    try {
      h.add(std::move(t));
    } catch (const InvalidArgument& e) {
      throw ParseError(e.what());
    }
  }
  return h;
}

}  // namespace oactrl::hamiltonian
