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

#include <bit>
#include <cctype>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "oactrl/errors.hpp"
#include "oactrl/linalg.hpp"

namespace oactrl::pauli {

using linalg::Complex;
using linalg::DenseMatrix;
using linalg::StateVector;

/** Order of the root of unity used for string phases: 2d for even d, d for odd d. */
constexpr unsigned phase_modulus(unsigned d) { return d % 2 == 0 ? 2 * d : d; }

inline Complex root_of_unity(unsigned order, long long power) {
  const long long m = static_cast<long long>(order);
  const long long p = ((power % m) + m) % m;
  // exact values on the axes keep phase bookkeeping free of rounding noise
  if (4 * p % m == 0) {
    switch (4 * p / m) {
      case 0: return {1.0, 0.0};
      case 1: return {0.0, 1.0};
      case 2: return {-1.0, 0.0};
      default: return {0.0, -1.0};
    }
  }
  const double ang = 2.0 * std::numbers::pi * static_cast<double>(p) / static_cast<double>(m);
  return {std::cos(ang), std::sin(ang)};
}

/** Single-qudit generalized Pauli X^a Z^b. */
struct QuditPauli {
  unsigned d = 2;
  unsigned a = 0;
  unsigned b = 0;

  /** Symbol in {1..d^2}: 1 + a*d + b (for d=2: 1=I, 2=Z, 3=X, 4=XZ). */
  unsigned index() const { return 1 + a * d + b; }

  static QuditPauli from_index(unsigned m, unsigned d) {
    if (m < 1 || m > d * d) throw InvalidArgument("Pauli symbol " + std::to_string(m) + " outside {1..d^2}");
    return {d, (m - 1) / d, (m - 1) % d};
  }

  bool is_identity() const { return a == 0 && b == 0; }

  friend bool operator==(const QuditPauli&, const QuditPauli&) = default;
};

inline constexpr unsigned kMaxMatrixQuditDim = 16;

/** Dense X^a Z^b with X|x> = |x+1 mod d>, Z = diag(w^0, ..., w^(d-1)), w = exp(2 pi i/d). */
inline DenseMatrix matrix_of(const QuditPauli& p) {
  if (p.d < 2) throw InvalidArgument("qudit dimension must be >= 2");
  if (p.d > kMaxMatrixQuditDim) throw GuardError("qudit dimension " + std::to_string(p.d) + " exceeds 16");
  if (p.a >= p.d || p.b >= p.d) throw InvalidArgument("Pauli exponent out of range");
  const Eigen::Index d = p.d;
  DenseMatrix m = DenseMatrix::Zero(d, d);
  for (unsigned x = 0; x < p.d; ++x) m((x + p.a) % p.d, x) = root_of_unity(p.d, static_cast<long long>(p.b) * x);
  return m;
}

/**
 * n-fold tensor product of generalized Paulis times an exact global phase
 * root^phase_exp, root = exp(2 pi i / phase_modulus(d)). Qudit 0 is the most
 * significant tensor factor.
 */
class PauliString {
 public:
  PauliString() = default;

  static PauliString identity(std::size_t n, unsigned d) {
    check_d(d);
    PauliString s;
    s.d_ = d;
    s.x_.assign(n, 0);
    s.z_.assign(n, 0);
    return s;
  }

  static PauliString from_factors(std::span<const QuditPauli> factors, unsigned d, unsigned phase_exp = 0) {
    auto s = identity(factors.size(), d);
    for (std::size_t i = 0; i < factors.size(); ++i) s.set(i, factors[i]);
    s.phase_ = phase_exp % phase_modulus(d);
    return s;
  }

  /** Weight-1 string with X^a Z^b on one qudit. */
  static PauliString single(std::size_t n, unsigned d, std::size_t qudit, unsigned a, unsigned b) {
    auto s = identity(n, d);
    s.set(qudit, QuditPauli{d, a, b});
    return s;
  }

  /** Row of an OA over {1..d^2} mapped factor by factor through QuditPauli::from_index. */
  static PauliString from_oa_row(std::span<const unsigned> row, unsigned d) {
    auto s = identity(row.size(), d);
    for (std::size_t i = 0; i < row.size(); ++i) s.set(i, QuditPauli::from_index(row[i], d));
    return s;
  }

  std::size_t size() const { return x_.size(); }
  unsigned dim() const { return d_; }
  unsigned phase_exp() const { return phase_; }
  unsigned modulus() const { return phase_modulus(d_); }
  Complex phase() const { return root_of_unity(modulus(), phase_); }

  QuditPauli factor(std::size_t i) const { return {d_, x_[i], z_[i]}; }
  unsigned x(std::size_t i) const { return x_[i]; }
  unsigned z(std::size_t i) const { return z_[i]; }

  void set(std::size_t i, QuditPauli p) {
    if (p.d != d_) throw InvalidArgument("qudit dimension mismatch");
    if (p.a >= d_ || p.b >= d_) throw InvalidArgument("Pauli exponent out of range");
    x_.at(i) = static_cast<std::uint8_t>(p.a);
    z_.at(i) = static_cast<std::uint8_t>(p.b);
  }

  PauliString with_phase(unsigned phase_exp) const {
    PauliString s = *this;
    s.phase_ = phase_exp % modulus();
    return s;
  }

  /** Number of qudits with a non-identity factor. */
  std::size_t weight() const {
    std::size_t w = 0;
    for (std::size_t i = 0; i < size(); ++i) w += (x_[i] | z_[i]) != 0;
    return w;
  }

  std::vector<std::size_t> support() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < size(); ++i)
      if ((x_[i] | z_[i]) != 0) out.push_back(i);
    return out;
  }

  /** True when every factor is trivial (the phase may be anything). */
  bool is_identity() const { return weight() == 0; }

  /** Same tensor factors, phase ignored. */
  bool same_operator(const PauliString& o) const { return d_ == o.d_ && x_ == o.x_ && z_ == o.z_; }

  friend bool operator==(const PauliString&, const PauliString&) = default;
  friend auto operator<=>(const PauliString&, const PauliString&) = default;

  /**
   * Group law: (X^a Z^b)(X^c Z^e) = w^{bc} X^{a+c} Z^{b+e}, from Z X = w X Z.
   */
  friend PauliString operator*(const PauliString& l, const PauliString& r) {
    check_compatible(l, r);
    PauliString out = identity(l.size(), l.d_);
    const unsigned m = l.modulus();
    const unsigned step = m / l.d_;
    unsigned long long acc = l.phase_ + r.phase_;
    for (std::size_t i = 0; i < l.size(); ++i) {
      acc += static_cast<unsigned long long>(step) * l.z_[i] * r.x_[i];
      out.x_[i] = static_cast<std::uint8_t>((l.x_[i] + r.x_[i]) % l.d_);
      out.z_[i] = static_cast<std::uint8_t>((l.z_[i] + r.z_[i]) % l.d_);
    }
    out.phase_ = static_cast<unsigned>(acc % m);
    return out;
  }

  /** (root^p X^a Z^b)^dagger = root^{-p} w^{ab} X^{-a} Z^{-b}. */
  PauliString adjoint() const {
    PauliString out = identity(size(), d_);
    const unsigned m = modulus();
    const unsigned step = m / d_;
    unsigned long long acc = m - phase_;
    for (std::size_t i = 0; i < size(); ++i) {
      acc += static_cast<unsigned long long>(step) * x_[i] * z_[i];
      out.x_[i] = static_cast<std::uint8_t>((d_ - x_[i]) % d_);
      out.z_[i] = static_cast<std::uint8_t>((d_ - z_[i]) % d_);
    }
    out.phase_ = static_cast<unsigned>(acc % m);
    return out;
  }

  DenseMatrix to_matrix() const;
  StateVector apply(const StateVector& psi) const;
  void apply_inplace(StateVector& psi, StateVector& scratch) const;
  /** out = P in for a d^n amplitude buffer; in and out must not alias. */
  void apply_raw(const Complex* in, Complex* out, std::size_t dim) const;

  std::string to_string(bool qubit_y = false) const;

  friend std::ostream& operator<<(std::ostream& os, const PauliString& p) { return os << p.to_string(); }

  static void check_compatible(const PauliString& l, const PauliString& r) {
    if (l.d_ != r.d_) throw InvalidArgument("Pauli strings have different qudit dimensions");
    if (l.size() != r.size()) throw InvalidArgument("Pauli strings have different lengths");
  }

 private:
  static void check_d(unsigned d) {
    if (d < 2 || d > 255) throw InvalidArgument("qudit dimension must be in [2, 255]");
  }

  unsigned d_ = 2;
  unsigned phase_ = 0;
  std::vector<std::uint8_t> x_;
  std::vector<std::uint8_t> z_;
};

/** k in Z_d with x y = w^k y x, from the symplectic form sum_i (b_i c_i - e_i a_i). */
inline unsigned commutation_power(const PauliString& x, const PauliString& y) {
  PauliString::check_compatible(x, y);
  const long long d = x.dim();
  long long k = 0;
  for (std::size_t i = 0; i < x.size(); ++i)
    k += static_cast<long long>(x.z(i)) * y.x(i) - static_cast<long long>(y.z(i)) * x.x(i);
  return static_cast<unsigned>(((k % d) + d) % d);
}

inline bool commutes(const PauliString& x, const PauliString& y) { return commutation_power(x, y) == 0; }

/** u h u^dagger = w^omega_power h; the string itself is unchanged. */
struct ConjugatedTerm {
  PauliString term;
  unsigned omega_power = 0;

  Complex scalar() const { return root_of_unity(term.dim(), omega_power); }
  /** +1 or -1 for qubits. */
  int sign() const {
    if (term.dim() != 2) throw InvalidArgument("ConjugatedTerm::sign is only defined for qubits");
    return omega_power == 0 ? 1 : -1;
  }
};

inline ConjugatedTerm conjugate_term(const PauliString& u, const PauliString& h) {
  return {h, commutation_power(u, h)};
}

inline DenseMatrix PauliString::to_matrix() const {
  std::size_t dim = 1;
  for (std::size_t i = 0; i < size(); ++i) {
    dim *= d_;
    if (dim > 4096) throw GuardError("Pauli string too large for a dense matrix");
  }
  DenseMatrix out = DenseMatrix::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  for (std::size_t col = 0; col < dim; ++col) {
    std::size_t rem = col, row = 0, place = 1;
    long long wexp = 0;
    for (std::size_t q = size(); q-- > 0;) {
      const unsigned digit = static_cast<unsigned>(rem % d_);
      rem /= d_;
      wexp += static_cast<long long>(z_[q]) * digit;
      row += ((digit + x_[q]) % d_) * place;
      place *= d_;
    }
    out(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)) =
        phase() * root_of_unity(d_, wexp);
  }
  return out;
}

inline void PauliString::apply_raw(const Complex* in, Complex* out, std::size_t dim) const {
  const Complex ph = phase();
  if (d_ == 2) {
    std::size_t xmask = 0, zmask = 0;
    const std::size_t n = size();
    for (std::size_t q = 0; q < n; ++q) {
      const std::size_t bit = std::size_t{1} << (n - 1 - q);
      if (x_[q]) xmask |= bit;
      if (z_[q]) zmask |= bit;
    }
    for (std::size_t i = 0; i < dim; ++i) {
      const bool neg = (std::popcount(i & zmask) & 1) != 0;
      out[i ^ xmask] = neg ? -ph * in[i] : ph * in[i];
    }
    return;
  }
  for (std::size_t i = 0; i < dim; ++i) {
    std::size_t rem = i, row = 0, place = 1;
    long long wexp = 0;
    for (std::size_t q = size(); q-- > 0;) {
      const unsigned digit = static_cast<unsigned>(rem % d_);
      rem /= d_;
      wexp += static_cast<long long>(z_[q]) * digit;
      row += ((digit + x_[q]) % d_) * place;
      place *= d_;
    }
    out[row] = ph * root_of_unity(d_, wexp) * in[i];
  }
}

inline void PauliString::apply_inplace(StateVector& psi, StateVector& scratch) const {
  scratch.resize(psi.size());
  apply_raw(psi.data(), scratch.data(), static_cast<std::size_t>(psi.size()));
  psi.swap(scratch);
}

inline StateVector PauliString::apply(const StateVector& psi) const {
  StateVector out = psi, scratch;
  apply_inplace(out, scratch);
  return out;
}

namespace detail {

inline std::string exponent_part(char sym, unsigned e) {
  if (e == 0) return "";
  if (e == 1) return std::string(1, sym);
  return std::string(1, sym) + "^" + std::to_string(e);
}

inline std::string phase_prefix(unsigned m, unsigned p) {
  if (p == 0) return "";
  if (m % 2 == 0 && p == m / 2) return "-1";
  if (m == 4) return p == 1 ? "i" : "-i";
  return "exp(2pi*i*" + std::to_string(p) + "/" + std::to_string(m) + ")";
}

}  // namespace detail

/**
 * Text form: optional phase and " * ", then factor tokens with 1-based qudit
 * numbers, e.g. "-1 * X1 Z3 (XZ)4". X and Z are written bare, every other
 * factor in parentheses ("(X^2Z)2"). With qubit_y, a d=2 factor XZ is written
 * as Y = i XZ and the phase is adjusted to match.
 */
inline std::string PauliString::to_string(bool qubit_y) const {
  std::string body;
  unsigned ycount = 0;
  for (std::size_t i = 0; i < size(); ++i) {
    if (x_[i] == 0 && z_[i] == 0) continue;
    std::string tok;
    if (qubit_y && d_ == 2 && x_[i] == 1 && z_[i] == 1) {
      tok = "Y";
      ++ycount;
    } else if ((x_[i] == 1 && z_[i] == 0) || (x_[i] == 0 && z_[i] == 1)) {
      tok = x_[i] ? "X" : "Z";
    } else {
      tok = "(" + detail::exponent_part('X', x_[i]) + detail::exponent_part('Z', z_[i]) + ")";
    }
    if (!body.empty()) body += ' ';
    body += tok + std::to_string(i + 1);
  }
  if (body.empty()) body = "I";
  const unsigned m = modulus();
  const unsigned p = (phase_ + m - ycount % m) % m;
  const auto pre = detail::phase_prefix(m, p);
  return pre.empty() ? body : pre + " * " + body;
}

/** Inverse of to_string for an n-qudit, dimension-d string. Also accepts "Y<q>" for qubits. */
inline PauliString parse_pauli(std::string_view text, std::size_t n, unsigned d) {
  auto out = PauliString::identity(n, d);
  const unsigned m = phase_modulus(d);
  std::string s(text);
  unsigned phase = 0;
  auto star = s.rfind(" * ");
  if (star == std::string::npos && s.find('*') != std::string::npos) star = s.rfind('*');
  if (star != std::string::npos) {
    std::string pre = s.substr(0, star);
    pre.erase(0, pre.find_first_not_of(" \t"));
    pre.erase(pre.find_last_not_of(" \t") + 1);
    s = s.substr(s.find('*', star) + 1);
    bool matched = false;
    for (unsigned p = 0; p < m && !matched; ++p) {
      if (detail::phase_prefix(m, p) == pre || (p == 0 && pre == "1")) {
        phase = p;
        matched = true;
      }
    }
    if (!matched) throw ParseError("unrecognized phase '" + pre + "'");
  }
  std::istringstream in(s);
  std::string tok;
  std::vector<bool> seen(n, false);
  bool any = false;
  while (in >> tok) {
    if (tok == "I") {
      any = true;
      continue;
    }
    unsigned a = 0, b = 0;
    std::size_t pos = 0;
    auto read_exp = [&](std::string_view body, std::size_t& i) {
      unsigned e = 1;
      if (i < body.size() && body[i] == '^') {
        ++i;
        std::size_t start = i;
        while (i < body.size() && std::isdigit(static_cast<unsigned char>(body[i]))) ++i;
        if (start == i) throw ParseError("missing exponent in '" + tok + "'");
        e = static_cast<unsigned>(std::stoul(std::string(body.substr(start, i - start))));
      }
      return e;
    };
    if (tok[0] == '(') {
      auto close = tok.find(')');
      if (close == std::string::npos) throw ParseError("unbalanced parenthesis in '" + tok + "'");
      std::string_view body(tok.data() + 1, close - 1);
      std::size_t i = 0;
      if (i < body.size() && body[i] == 'X') {
        ++i;
        a = read_exp(body, i);
      }
      if (i < body.size() && body[i] == 'Z') {
        ++i;
        b = read_exp(body, i);
      }
      if (i != body.size()) throw ParseError("bad factor '" + tok + "'");
      pos = close + 1;
    } else if (tok[0] == 'X') {
      a = 1;
      pos = 1;
    } else if (tok[0] == 'Z') {
      b = 1;
      pos = 1;
    } else if (tok[0] == 'Y' && d == 2) {
      a = b = 1;
      phase += 1;
      pos = 1;
    } else {
      throw ParseError("bad factor '" + tok + "'");
    }
    std::string num = tok.substr(pos);
    if (num.empty() || num.find_first_not_of("0123456789") != std::string::npos)
      throw ParseError("missing qudit index in '" + tok + "'");
    const std::size_t q = std::stoul(num);
    if (q < 1 || q > n) throw ParseError("qudit index " + num + " out of range");
    if (seen[q - 1]) throw ParseError("qudit " + num + " appears twice");
    if (a >= d || b >= d) throw ParseError("exponent out of range in '" + tok + "'");
    seen[q - 1] = true;
    out.set(q - 1, QuditPauli{d, a, b});
    any = true;
  }
  if (!any) throw ParseError("empty Pauli string");
  return out.with_phase(phase % m);
}

/** Y-phase-corrected qubit string: phase = number of XZ factors, so the matrix is Hermitian. */
inline PauliString hermitian_qubit(PauliString s) {
  if (s.dim() != 2) throw InvalidArgument("hermitian_qubit needs d = 2");
  unsigned ys = 0;
  for (std::size_t i = 0; i < s.size(); ++i) ys += s.x(i) & s.z(i);
  return s.with_phase(ys % 4);
}

}  // namespace oactrl::pauli
