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

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "oactrl/errors.hpp"

namespace oactrl::gf {

/** Element of GF(p^m), stored as its coefficient vector read as a base-p integer. */
struct FieldElement {
  unsigned rep = 0;

  friend constexpr auto operator<=>(FieldElement, FieldElement) = default;
};

inline bool is_prime(unsigned v) {
  if (v < 2) return false;
  for (unsigned q = 2; q * q <= v; ++q)
    if (v % q == 0) return false;
  return true;
}

namespace detail {

// Polynomials over GF(p) as coefficient vectors, lowest degree first.
using Poly = std::vector<unsigned>;

inline void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

// Remainder of a modulo the monic polynomial m.
inline Poly poly_mod(Poly a, const Poly& m, unsigned p) {
  trim(a);
  const std::size_t dm = m.size() - 1;
  while (a.size() > dm) {
    const unsigned lead = a.back();
    const std::size_t shift = a.size() - 1 - dm;
    for (std::size_t i = 0; i <= dm; ++i)
      a[shift + i] = (a[shift + i] + p * p - (lead * m[i]) % p) % p;
    trim(a);
  }
  return a;
}

// Monic polynomial of degree deg whose lower coefficients are the base-p digits of code.
inline Poly monic_from_code(unsigned deg, unsigned code, unsigned p) {
  Poly out(deg + 1, 0);
  for (unsigned i = 0; i < deg; ++i) {
    out[i] = code % p;
    code /= p;
  }
  out[deg] = 1;
  return out;
}

inline unsigned ipow(unsigned base, unsigned e) {
  unsigned r = 1;
  while (e-- > 0) r *= base;
  return r;
}

// Trial division by every monic polynomial of degree 1..deg/2.
inline bool is_irreducible(const Poly& f, unsigned p) {
  const unsigned deg = static_cast<unsigned>(f.size() - 1);
  for (unsigned dd = 1; dd <= deg / 2; ++dd) {
    const unsigned count = ipow(p, dd);
    for (unsigned code = 0; code < count; ++code) {
      if (poly_mod(f, monic_from_code(dd, code, p), p).empty()) return false;
    }
  }
  return true;
}

}  // namespace detail

/**
 * Finite field GF(p^m) for p^m <= 256.
 *
 * The modulus is the lexicographically smallest monic irreducible polynomial,
 * ordering candidates by their lower coefficients read as a base-p integer
 * (constant term least significant). Addition, multiplication and inversion are
 * tabulated at construction; the object is immutable afterwards.
 */
class Field {
 public:
  static constexpr unsigned kMaxOrder = 256;

  Field(unsigned p, unsigned m) : p_(p), m_(m) {
    if (!is_prime(p)) throw InvalidArgument("field characteristic " + std::to_string(p) + " is not prime");
    if (m < 1) throw InvalidArgument("field extension degree must be >= 1");
    unsigned s = 1;
    for (unsigned i = 0; i < m; ++i) {
      s *= p;
      if (s > kMaxOrder) throw InvalidArgument("field order p^m exceeds 256");
    }
    s_ = s;

    bool found = false;
    for (unsigned code = 0; code < s_ && !found; ++code) {
      auto cand = detail::monic_from_code(m_, code, p_);
      if (detail::is_irreducible(cand, p_)) {
        modulus_ = std::move(cand);
        found = true;
      }
    }
    if (!found) throw Error("internal error: no irreducible polynomial of degree " + std::to_string(m_));
    build_tables();
  }

  /** Field of prime-power order q; throws if q is not a prime power. */
  static Field of_order(unsigned q) {
    for (unsigned p = 2; p <= q; ++p) {
      if (!is_prime(p) || q % p != 0) continue;
      unsigned m = 0, r = q;
      while (r % p == 0) {
        r /= p;
        ++m;
      }
      if (r != 1) break;
      return Field(p, m);
    }
    throw InvalidArgument(std::to_string(q) + " is not a prime power");
  }

  unsigned characteristic() const { return p_; }
  unsigned degree() const { return m_; }
  unsigned order() const { return s_; }
  /** Monic modulus, lowest-degree coefficient first (length m+1). */
  const std::vector<unsigned>& modulus() const { return modulus_; }

  FieldElement zero() const { return {0}; }
  FieldElement one() const { return {1}; }

  FieldElement element(unsigned rep) const {
    if (rep >= s_) throw InvalidArgument("element representation out of range");
    return {rep};
  }

  bool contains(FieldElement a) const { return a.rep < s_; }

  FieldElement add(FieldElement a, FieldElement b) const { return {add_[idx(a, b)]}; }
  FieldElement sub(FieldElement a, FieldElement b) const { return add(a, neg(b)); }
  FieldElement neg(FieldElement a) const { return {neg_[a.rep]}; }
  FieldElement mul(FieldElement a, FieldElement b) const { return {mul_[idx(a, b)]}; }

  FieldElement inv(FieldElement a) const {
    if (a.rep == 0) throw InvalidArgument("zero has no multiplicative inverse");
    return {inv_[a.rep]};
  }

  FieldElement div(FieldElement a, FieldElement b) const { return mul(a, inv(b)); }

  std::string to_string() const {
    std::string out = "GF(" + std::to_string(p_);
    if (m_ > 1) out += "^" + std::to_string(m_);
    return out + ")";
  }

 private:
  std::size_t idx(FieldElement a, FieldElement b) const { return std::size_t{a.rep} * s_ + b.rep; }

  detail::Poly decode(unsigned rep) const {
    detail::Poly out(m_, 0);
    for (unsigned i = 0; i < m_; ++i) {
      out[i] = rep % p_;
      rep /= p_;
    }
    return out;
  }

  unsigned encode(const detail::Poly& a) const {
    unsigned rep = 0;
    for (std::size_t i = a.size(); i-- > 0;) rep = rep * p_ + a[i];
    return rep;
  }

  void build_tables() {
    add_.assign(std::size_t{s_} * s_, 0);
    mul_.assign(std::size_t{s_} * s_, 0);
    neg_.assign(s_, 0);
    inv_.assign(s_, 0);
    for (unsigned a = 0; a < s_; ++a) {
      const auto pa = decode(a);
      detail::Poly pn(m_);
      for (unsigned i = 0; i < m_; ++i) pn[i] = (p_ - pa[i]) % p_;
      neg_[a] = static_cast<std::uint16_t>(encode(pn));
      for (unsigned b = 0; b < s_; ++b) {
        const auto pb = decode(b);
        detail::Poly sum(m_);
        for (unsigned i = 0; i < m_; ++i) sum[i] = (pa[i] + pb[i]) % p_;
        add_[std::size_t{a} * s_ + b] = static_cast<std::uint16_t>(encode(sum));

        detail::Poly prod(2 * m_ - 1, 0);
        for (unsigned i = 0; i < m_; ++i)
          for (unsigned j = 0; j < m_; ++j) prod[i + j] = (prod[i + j] + pa[i] * pb[j]) % p_;
        auto red = detail::poly_mod(prod, modulus_, p_);
        red.resize(m_, 0);
        mul_[std::size_t{a} * s_ + b] = static_cast<std::uint16_t>(encode(red));
      }
    }
    for (unsigned a = 1; a < s_; ++a)
      for (unsigned b = 1; b < s_; ++b)
        if (mul_[std::size_t{a} * s_ + b] == 1) inv_[a] = static_cast<std::uint16_t>(b);
  }

  unsigned p_ = 2;
  unsigned m_ = 1;
  unsigned s_ = 2;
  std::vector<unsigned> modulus_;
  std::vector<std::uint16_t> add_, mul_, neg_, inv_;
};

}  // namespace oactrl::gf
