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
#include <cstddef>
#include <numeric>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "oactrl/errors.hpp"
#include "oactrl/gf.hpp"

namespace oactrl::oa {

/**
 * An N x n array over the alphabet {1..s} with a declared strength t.
 *
 * Construction only checks shape and alphabet. The balance property is a
 * separate question answered by verify(); every constructor and loader in this
 * header runs it before returning.
 */
class OrthogonalArray {
 public:
  OrthogonalArray(std::size_t runs, std::size_t factors, unsigned levels, unsigned strength,
                  std::vector<unsigned> entries)
      : runs_(runs), factors_(factors), levels_(levels), strength_(strength), entries_(std::move(entries)) {
    if (levels < 2) throw InvalidArgument("orthogonal array needs at least 2 levels");
    if (strength < 1) throw InvalidArgument("orthogonal array strength must be >= 1");
    if (entries_.size() != runs * factors) throw InvalidArgument("entry count does not match N*n");
    for (std::size_t i = 0; i < entries_.size(); ++i) {
      if (entries_[i] < 1 || entries_[i] > levels) {
        throw ParseError("entry " + std::to_string(entries_[i]) + " at row " + std::to_string(i / factors + 1) +
                         ", column " + std::to_string(i % factors + 1) + " outside alphabet {1.." +
                         std::to_string(levels) + "}");
      }
    }
  }

  std::size_t runs() const { return runs_; }
  std::size_t factors() const { return factors_; }
  unsigned levels() const { return levels_; }
  unsigned strength() const { return strength_; }

  /** N / s^t; zero if s^t does not divide N. */
  std::size_t lambda() const {
    const std::size_t block = tuple_space();
    return runs_ % block == 0 ? runs_ / block : 0;
  }

  /** Entry in {1..s}; row and col are 0-based. */
  unsigned at(std::size_t row, std::size_t col) const { return entries_[row * factors_ + col]; }

  std::vector<unsigned> row(std::size_t r) const {
    return {entries_.begin() + static_cast<std::ptrdiff_t>(r * factors_),
            entries_.begin() + static_cast<std::ptrdiff_t>((r + 1) * factors_)};
  }

  const std::vector<unsigned>& entries() const { return entries_; }

  OrthogonalArray with_strength(unsigned t) const { return {runs_, factors_, levels_, t, entries_}; }

  std::size_t tuple_space() const {
    std::size_t v = 1;
    for (unsigned i = 0; i < strength_; ++i) v *= levels_;
    return v;
  }

  friend bool operator==(const OrthogonalArray&, const OrthogonalArray&) = default;

 private:
  std::size_t runs_;
  std::size_t factors_;
  unsigned levels_;
  unsigned strength_;
  std::vector<unsigned> entries_;
};

struct VerificationReport {
  bool ok = true;
  std::size_t lambda = 0;
  // First offending t-subset (0-based columns), the tuple over {1..s} and its count.
  std::vector<std::size_t> columns;
  std::vector<unsigned> tuple;
  std::size_t count = 0;
  std::size_t expected = 0;
  std::string message;

  std::string describe() const {
    if (ok) return "OK lambda " + std::to_string(lambda);
    std::ostringstream os;
    os << "VIOLATION " << message;
    if (!columns.empty()) {
      os << ": columns (";
      for (std::size_t i = 0; i < columns.size(); ++i) os << (i ? "," : "") << columns[i] + 1;
      os << ") tuple (";
      for (std::size_t i = 0; i < tuple.size(); ++i) os << (i ? "," : "") << tuple[i];
      os << ") occurs " << count << " times, expected " << expected;
    }
    return os.str();
  }
};

/** Exhaustive strength check over all C(n, t) column subsets. */
inline VerificationReport verify(const OrthogonalArray& arr) {
  VerificationReport rep;
  const unsigned t = arr.strength();
  const std::size_t n = arr.factors();
  const std::size_t space = arr.tuple_space();
  if (t > n) {
    rep.ok = false;
    rep.message = "strength " + std::to_string(t) + " exceeds factor count " + std::to_string(n);
    return rep;
  }
  if (arr.runs() % space != 0) {
    rep.ok = false;
    rep.message = "run count " + std::to_string(arr.runs()) + " is not a multiple of s^t = " + std::to_string(space);
    return rep;
  }
  const std::size_t lambda = arr.runs() / space;
  rep.lambda = lambda;

  std::vector<std::size_t> cols(t);
  std::iota(cols.begin(), cols.end(), std::size_t{0});
  std::vector<std::size_t> hist(space);
  while (true) {
    std::fill(hist.begin(), hist.end(), 0);
    for (std::size_t r = 0; r < arr.runs(); ++r) {
      std::size_t key = 0;
      for (auto c : cols) key = key * arr.levels() + (arr.at(r, c) - 1);
      ++hist[key];
    }
    for (std::size_t key = 0; key < space; ++key) {
      if (hist[key] == lambda) continue;
      rep.ok = false;
      rep.message = "unbalanced column subset";
      rep.columns = cols;
      rep.tuple.assign(t, 0);
      std::size_t k = key;
      for (std::size_t i = t; i-- > 0;) {
        rep.tuple[i] = static_cast<unsigned>(k % arr.levels()) + 1;
        k /= arr.levels();
      }
      rep.count = hist[key];
      rep.expected = lambda;
      return rep;
    }
    // next combination in lexicographic order
    std::size_t i = t;
    while (i > 0 && cols[i - 1] == n - t + (i - 1)) --i;
    if (i == 0) break;
    ++cols[i - 1];
    for (std::size_t j = i; j < t; ++j) cols[j] = cols[j - 1] + 1;
  }
  return rep;
}

inline OrthogonalArray require_verified(OrthogonalArray arr) {
  auto rep = verify(arr);
  if (!rep.ok) throw VerificationError("not an OA of strength " + std::to_string(arr.strength()) + ": " + rep.describe());
  return arr;
}

namespace detail {

// Vectors of GF(s)^len enumerated by integer code, first coordinate most significant.
inline std::vector<gf::FieldElement> vector_from_code(std::size_t code, std::size_t len, unsigned s) {
  std::vector<gf::FieldElement> v(len);
  for (std::size_t i = len; i-- > 0;) {
    v[i] = gf::FieldElement{static_cast<unsigned>(code % s)};
    code /= s;
  }
  return v;
}

inline gf::FieldElement dot(const gf::Field& f, const std::vector<gf::FieldElement>& a,
                            const std::vector<gf::FieldElement>& b) {
  gf::FieldElement acc = f.zero();
  for (std::size_t i = 0; i < a.size(); ++i) acc = f.add(acc, f.mul(a[i], b[i]));
  return acc;
}

}  // namespace detail

/**
 * Rao-Hamming construction OA(s^l, (s^l - 1)/(s - 1), s, 2).
 *
 * Rows are the vectors v of GF(s)^l, columns the canonical representatives c of
 * the 1-dimensional subspaces (first nonzero coordinate 1), both in increasing
 * code order; the entry is 1 + <v, c>.
 */
inline OrthogonalArray construct_rao_hamming(const gf::Field& f, unsigned ell) {
  if (ell < 2) throw InvalidArgument("Rao-Hamming construction needs ell >= 2");
  const unsigned s = f.order();
  std::size_t total = 1;
  for (unsigned i = 0; i < ell; ++i) total *= s;

  std::vector<std::vector<gf::FieldElement>> reps;
  for (std::size_t code = 1; code < total; ++code) {
    auto v = detail::vector_from_code(code, ell, s);
    auto first = std::find_if(v.begin(), v.end(), [](gf::FieldElement e) { return e.rep != 0; });
    if (first->rep == 1) reps.push_back(std::move(v));
  }

  std::vector<unsigned> entries;
  entries.reserve(total * reps.size());
  for (std::size_t code = 0; code < total; ++code) {
    const auto v = detail::vector_from_code(code, ell, s);
    for (const auto& c : reps) entries.push_back(detail::dot(f, v, c).rep + 1);
  }
  return require_verified(OrthogonalArray(total, reps.size(), s, 2, std::move(entries)));
}

using GeneratorMatrix = std::vector<std::vector<gf::FieldElement>>;

/** Row rank over the field by Gaussian elimination. */
inline std::size_t rank(const gf::Field& f, GeneratorMatrix g) {
  if (g.empty()) return 0;
  const std::size_t cols = g.front().size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < g.size(); ++c) {
    std::size_t piv = r;
    while (piv < g.size() && g[piv][c].rep == 0) ++piv;
    if (piv == g.size()) continue;
    std::swap(g[r], g[piv]);
    const auto inv = f.inv(g[r][c]);
    for (auto& e : g[r]) e = f.mul(e, inv);
    for (std::size_t i = 0; i < g.size(); ++i) {
      if (i == r || g[i][c].rep == 0) continue;
      const auto factor = g[i][c];
      for (std::size_t j = 0; j < cols; ++j) g[i][j] = f.sub(g[i][j], f.mul(factor, g[r][j]));
    }
    ++r;
  }
  return r;
}

/**
 * Array whose rows are all s^k codewords m * G of the linear code generated by G.
 * The claimed strength is checked by verify(), not trusted.
 */
inline OrthogonalArray construct_from_linear_code(const gf::Field& f, const GeneratorMatrix& generator,
                                                  unsigned claimed_strength) {
  if (generator.empty() || generator.front().empty()) throw InvalidArgument("empty generator matrix");
  const std::size_t k = generator.size();
  const std::size_t n = generator.front().size();
  for (const auto& row : generator) {
    if (row.size() != n) throw InvalidArgument("generator matrix rows differ in length");
    for (auto e : row)
      if (!f.contains(e)) throw InvalidArgument("generator entry outside the field");
  }
  if (rank(f, generator) != k) throw InvalidArgument("generator matrix is rank deficient");

  const unsigned s = f.order();
  std::size_t total = 1;
  for (std::size_t i = 0; i < k; ++i) total *= s;
  std::vector<unsigned> entries;
  entries.reserve(total * n);
  for (std::size_t code = 0; code < total; ++code) {
    const auto msg = detail::vector_from_code(code, k, s);
    for (std::size_t c = 0; c < n; ++c) {
      gf::FieldElement acc = f.zero();
      for (std::size_t i = 0; i < k; ++i) acc = f.add(acc, f.mul(msg[i], generator[i][c]));
      entries.push_back(acc.rep + 1);
    }
  }
  return require_verified(OrthogonalArray(total, n, s, claimed_strength, std::move(entries)));
}

struct LoadOptions {
  bool transpose = false;
};

/**
 * Parse whitespace-separated integer rows. Blank lines and lines starting with
 * '#' are skipped. A file containing any 0 is read as 0-based and shifted to
 * {1..s}. The balance property is not checked; see load().
 */
inline OrthogonalArray parse(std::string_view text, unsigned s, unsigned t, LoadOptions opts = {}) {
  std::vector<std::vector<long>> rows;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream ls(line);
    std::vector<long> row;
    std::string tok;
    while (ls >> tok) {
      std::size_t used = 0;
      long v = 0;
      try {
        v = std::stol(tok, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != tok.size()) throw ParseError("line " + std::to_string(lineno) + ": not an integer: '" + tok + "'");
      row.push_back(v);
    }
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw ParseError("line " + std::to_string(lineno) + ": ragged row with " + std::to_string(row.size()) +
                       " entries, expected " + std::to_string(rows.front().size()));
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw ParseError("no array rows found");

  bool zero_based = false;
  for (const auto& r : rows)
    for (long v : r) zero_based = zero_based || v == 0;
  const long lo = zero_based ? 0 : 1;
  const long hi = zero_based ? static_cast<long>(s) - 1 : static_cast<long>(s);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (long v : rows[i])
      if (v < lo || v > hi)
        throw ParseError("row " + std::to_string(i + 1) + ": entry " + std::to_string(v) + " outside alphabet {" +
                         std::to_string(lo) + ".." + std::to_string(hi) + "}");

  std::size_t nr = rows.size(), nc = rows.front().size();
  std::vector<unsigned> entries;
  entries.reserve(nr * nc);
  const auto shift = zero_based ? 1u : 0u;
  if (opts.transpose) {
    for (std::size_t c = 0; c < nc; ++c)
      for (std::size_t r = 0; r < nr; ++r) entries.push_back(static_cast<unsigned>(rows[r][c]) + shift);
    std::swap(nr, nc);
  } else {
    for (const auto& r : rows)
      for (long v : r) entries.push_back(static_cast<unsigned>(v) + shift);
  }
  return OrthogonalArray(nr, nc, s, t, std::move(entries));
}

/** parse() followed by exhaustive verification at strength t. */
inline OrthogonalArray load(std::string_view text, unsigned s, unsigned t, LoadOptions opts = {}) {
  return require_verified(parse(text, s, t, opts));
}

/** Keep the given 0-based columns, in the given order. */
inline OrthogonalArray restrict_columns(const OrthogonalArray& arr, const std::vector<std::size_t>& cols) {
  if (cols.size() < arr.strength())
    throw InvalidArgument("restriction keeps " + std::to_string(cols.size()) + " columns, fewer than strength " +
                          std::to_string(arr.strength()));
  std::vector<bool> seen(arr.factors(), false);
  for (auto c : cols) {
    if (c >= arr.factors()) throw InvalidArgument("column index " + std::to_string(c + 1) + " out of range");
    if (seen[c]) throw InvalidArgument("column index " + std::to_string(c + 1) + " repeated");
    seen[c] = true;
  }
  std::vector<unsigned> entries;
  entries.reserve(arr.runs() * cols.size());
  for (std::size_t r = 0; r < arr.runs(); ++r)
    for (auto c : cols) entries.push_back(arr.at(r, c));
  return {arr.runs(), cols.size(), arr.levels(), arr.strength(), std::move(entries)};
}

/** One row per line, 1-based symbols unless zero_based is set. */
inline std::string to_text(const OrthogonalArray& arr, bool zero_based = false) {
  std::ostringstream os;
  for (std::size_t r = 0; r < arr.runs(); ++r) {
    for (std::size_t c = 0; c < arr.factors(); ++c) {
      if (c) os << ' ';
      os << arr.at(r, c) - (zero_based ? 1 : 0);
    }
    os << '\n';
  }
  return os.str();
}

}  // namespace oactrl::oa
