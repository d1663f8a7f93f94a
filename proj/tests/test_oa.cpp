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

#include <algorithm>
#include <fstream>
#include <map>
#include <numeric>
#include <random>
#include <sstream>
#include <tuple>

#include "oactrl/known_arrays.hpp"
#include "oactrl/oa.hpp"

namespace {

using namespace oactrl;
using oa::OrthogonalArray;

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

// Independent balance check: count every t-tuple of every t-subset in a map.
bool oracle_is_oa(const OrthogonalArray& a, unsigned t) {
  const std::size_t n = a.factors();
  std::vector<bool> mask(n, false);
  std::fill(mask.begin(), mask.begin() + t, true);
  std::size_t space = 1;
  for (unsigned i = 0; i < t; ++i) space *= a.levels();
  if (a.runs() % space) return false;
  do {
    std::map<std::vector<unsigned>, std::size_t> counts;
    for (std::size_t r = 0; r < a.runs(); ++r) {
      std::vector<unsigned> key;
      for (std::size_t c = 0; c < n; ++c)
        if (mask[c]) key.push_back(a.at(r, c));
      ++counts[key];
    }
    if (counts.size() != space) return false;
    for (auto& [k, v] : counts)
      if (v != a.runs() / space) return false;
  } while (std::prev_permutation(mask.begin(), mask.end()));
  return true;
}

OrthogonalArray mutate(const OrthogonalArray& a, std::size_t r, std::size_t c, unsigned v) {
  auto e = a.entries();
  e[r * a.factors() + c] = v;
  return {a.runs(), a.factors(), a.levels(), a.strength(), e};
}

std::vector<std::vector<unsigned>> sorted_rows(const OrthogonalArray& a) {
  std::vector<std::vector<unsigned>> rows;
  for (std::size_t r = 0; r < a.runs(); ++r) rows.push_back(a.row(r));
  std::sort(rows.begin(), rows.end());
  return rows;
}

TEST(Verify, Oa16) {
  const auto a = oa::known::oa_16_5_4_2();
  EXPECT_EQ(a.runs(), 16u);
  EXPECT_EQ(a.factors(), 5u);
  const auto rep = oa::verify(a);
  EXPECT_TRUE(rep.ok);
  EXPECT_EQ(rep.lambda, 1u);
  EXPECT_EQ(a.row(1), (std::vector<unsigned>{1, 2, 2, 2, 2}));
}

TEST(Verify, Oa16FileMatchesBuiltin) {
  const auto a = oa::load(slurp(OACTRL_DATA_DIR "/oa.16.5.4.2.transposed.txt"), 4, 2, {.transpose = true});
  EXPECT_EQ(a, oa::known::oa_16_5_4_2());
}

TEST(Verify, MutationReportsUnbalancedPair) {
  const auto m = mutate(oa::known::oa_16_5_4_2(), 0, 0, 2);
  const auto rep = oa::verify(m);
  EXPECT_FALSE(rep.ok);
  ASSERT_EQ(rep.columns.size(), 2u);
  EXPECT_TRUE(rep.columns[0] == 0 || rep.columns[1] == 0);
  EXPECT_NE(rep.count, rep.expected);
  EXPECT_NE(rep.describe().find("VIOLATION"), std::string::npos);
  EXPECT_FALSE(oracle_is_oa(m, 2));
}

TEST(Verify, MutationFuzzIndexOne) {
  const auto a = oa::known::oa_16_5_4_2();
  std::mt19937_64 rng(11);
  for (int i = 0; i < 200; ++i) {
    const std::size_t r = rng() % a.runs(), c = rng() % a.factors();
    unsigned v = 1 + static_cast<unsigned>(rng() % 3);
    if (v >= a.at(r, c)) ++v;
    const auto m = mutate(a, r, c, v);
    EXPECT_FALSE(oa::verify(m).ok);
    EXPECT_FALSE(oracle_is_oa(m, 2));
  }
}

TEST(Verify, StrengthOneColumn) {
  const OrthogonalArray a(6, 1, 3, 1, {1, 2, 3, 3, 2, 1});
  EXPECT_TRUE(oa::verify(a).ok);
  EXPECT_EQ(oa::verify(a).lambda, 2u);
}

TEST(Verify, StructuralFailures) {
  const OrthogonalArray a(4, 1, 2, 2, {1, 2, 1, 2});
  EXPECT_FALSE(oa::verify(a).ok);  // t > n
  const OrthogonalArray b(3, 2, 2, 1, {1, 1, 2, 2, 1, 2});
  EXPECT_FALSE(oa::verify(b).ok);  // 3 runs not a multiple of 2
  EXPECT_THROW(OrthogonalArray(1, 1, 2, 1, {3}), ParseError);
  EXPECT_THROW(OrthogonalArray(1, 2, 2, 1, {1}), InvalidArgument);
}

TEST(Verify, AgreesWithOracleOnRandomArrays) {
  std::mt19937_64 rng(5);
  int agree_ok = 0;
  for (int i = 0; i < 300; ++i) {
    const std::size_t n = 2 + rng() % 3;
    std::vector<unsigned> e(4 * n);
    for (auto& x : e) x = 1 + static_cast<unsigned>(rng() % 2);
    const OrthogonalArray a(4, n, 2, 2, e);
    const bool ok = oa::verify(a).ok;
    EXPECT_EQ(ok, oracle_is_oa(a, 2));
    agree_ok += ok;
  }
  EXPECT_GT(agree_ok, 0);
}

TEST(Verify, PermutationInvariance) {
  const auto a = oa::known::oa_32_9_4_2();
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<std::size_t> rp(a.runs()), cp(a.factors());
    std::iota(rp.begin(), rp.end(), 0);
    std::iota(cp.begin(), cp.end(), 0);
    std::shuffle(rp.begin(), rp.end(), rng);
    std::shuffle(cp.begin(), cp.end(), rng);
    std::vector<unsigned> e;
    for (auto r : rp)
      for (auto c : cp) e.push_back(a.at(r, c));
    EXPECT_TRUE(oa::verify(OrthogonalArray(a.runs(), a.factors(), 4, 2, e)).ok);
  }
}

TEST(RaoHamming, TableParameters) {
  const gf::Field f4(2, 2);
  for (auto [ell, runs, factors] : {std::tuple{2u, 16u, 5u}, {3u, 64u, 21u}, {4u, 256u, 85u}}) {
    const auto a = oa::construct_rao_hamming(f4, ell);
    EXPECT_EQ(a.runs(), runs);
    EXPECT_EQ(a.factors(), factors);
    EXPECT_EQ(a.levels(), 4u);
    EXPECT_EQ(a.strength(), 2u);
    EXPECT_EQ(a.lambda(), runs / 16u);
  }
}

TEST(RaoHamming, BinaryPlane) {
  const auto a = oa::construct_rao_hamming(gf::Field(2, 1), 2);
  EXPECT_EQ(a.runs(), 4u);
  EXPECT_EQ(a.factors(), 3u);
  EXPECT_TRUE(oracle_is_oa(a, 2));
}

TEST(RaoHamming, VerifiesAcrossFields) {
  for (unsigned s : {2u, 3u, 4u, 5u, 7u, 8u, 9u}) {
    for (unsigned ell : {2u, 3u}) {
      const auto a = oa::construct_rao_hamming(gf::Field::of_order(s), ell);
      std::size_t runs = 1;
      for (unsigned i = 0; i < ell; ++i) runs *= s;
      EXPECT_EQ(a.runs(), runs);
      EXPECT_EQ(a.factors(), (runs - 1) / (s - 1));
      EXPECT_TRUE(oa::verify(a).ok) << s << " " << ell;
      if (a.runs() * a.factors() < 5000) EXPECT_TRUE(oracle_is_oa(a, 2));
    }
  }
}

TEST(RaoHamming, NotStrengthThree) {
  // Three collinear representatives give dependent columns.
  const auto a = oa::construct_rao_hamming(gf::Field(2, 2), 2).with_strength(3);
  EXPECT_FALSE(oa::verify(a).ok);
}

TEST(RaoHamming, RejectsSmallExponent) {
  EXPECT_THROW(oa::construct_rao_hamming(gf::Field(2, 2), 1), InvalidArgument);
}

TEST(LinearCode, Trivial) {
  const gf::Field f(2, 1);
  const auto a = oa::construct_from_linear_code(f, {{f.one()}}, 1);
  EXPECT_EQ(a.runs(), 2u);
  EXPECT_EQ(a.factors(), 1u);
  EXPECT_TRUE(oa::verify(a).ok);
}

TEST(LinearCode, ReproducesRaoHammingColumnSpace) {
  const gf::Field f(2, 2);
  // columns are the subspace representatives (0,1), (1,0), (1,1), (1,x), (1,x+1)
  const oa::GeneratorMatrix g{{f.element(0), f.element(1), f.element(1), f.element(1), f.element(1)},
                              {f.element(1), f.element(0), f.element(1), f.element(2), f.element(3)}};
  const auto a = oa::construct_from_linear_code(f, g, 2);
  EXPECT_EQ(sorted_rows(a), sorted_rows(oa::construct_rao_hamming(f, 2)));
}

TEST(LinearCode, Errors) {
  const gf::Field f(2, 1);
  EXPECT_THROW(oa::construct_from_linear_code(f, {{f.one(), f.one()}}, 2), VerificationError);
  EXPECT_THROW(oa::construct_from_linear_code(f, {{f.one(), f.zero()}, {f.one(), f.zero()}}, 1), InvalidArgument);
  EXPECT_EQ(oa::rank(f, {{f.one(), f.zero()}, {f.zero(), f.one()}}), 2u);
}

TEST(Load, OA32FileAndBuiltin) {
  const auto a = oa::load(slurp(OACTRL_DATA_DIR "/oa.32.9.4.2.txt"), 4, 2);
  EXPECT_EQ(a.runs(), 32u);
  EXPECT_EQ(a.factors(), 9u);
  EXPECT_EQ(oa::verify(a).lambda, 2u);
  EXPECT_EQ(a, oa::known::oa_32_9_4_2());
  EXPECT_TRUE(oracle_is_oa(a, 2));
}

TEST(Load, OneBasedAndComments) {
  const auto a = oa::load("# header\n1 1\n1 2\n\n2 1\n2 2\n", 2, 2);
  EXPECT_EQ(a.runs(), 4u);
  EXPECT_EQ(a.at(3, 1), 2u);
  const auto z = oa::load("0 0\n0 1\n1 0\n1 1\n", 2, 2);
  EXPECT_EQ(z, a);
}

TEST(Load, Errors) {
  EXPECT_THROW(oa::load("1 1\n1 2 1\n", 2, 1), ParseError);
  EXPECT_THROW(oa::load("1 1\n1 x\n", 2, 1), ParseError);
  EXPECT_THROW(oa::load("1 5\n", 4, 1), ParseError);
  EXPECT_THROW(oa::load("", 2, 1), ParseError);
  EXPECT_THROW(oa::load("1 1\n1 2\n2 1\n1 1\n", 2, 2), VerificationError);
  EXPECT_NO_THROW(oa::parse("1 1\n1 2\n2 1\n1 1\n", 2, 2));
}

TEST(Load, RoundTrip) {
  const auto a = oa::construct_rao_hamming(gf::Field(3, 1), 3);
  EXPECT_EQ(oa::load(oa::to_text(a), 3, 2), a);
  EXPECT_EQ(oa::load(oa::to_text(a, true), 3, 2), a);
}

TEST(Restrict, Examples) {
  const auto big = oa::known::oa_32_9_4_2();
  const auto r8 = oa::restrict_columns(big, {0, 1, 2, 3, 4, 5, 6, 7});
  EXPECT_EQ(r8.factors(), 8u);
  EXPECT_TRUE(oa::verify(r8).ok);
  const auto f1 = oa::known::oa_16_5_4_2();
  EXPECT_EQ(oa::restrict_columns(f1, {0, 1, 2, 3, 4}), f1);
  const auto two = oa::restrict_columns(f1, {0, 1});
  EXPECT_TRUE(oa::verify(two).ok);
  EXPECT_EQ(oa::verify(two).lambda, 1u);
  EXPECT_THROW(oa::restrict_columns(f1, {0}), InvalidArgument);
  EXPECT_THROW(oa::restrict_columns(f1, {0, 0}), InvalidArgument);
  EXPECT_THROW(oa::restrict_columns(f1, {0, 5}), InvalidArgument);
}

TEST(Restrict, CommutesWithVerify) {
  std::mt19937_64 rng(9);
  const auto good = oa::known::oa_16_5_4_2();
  for (int i = 0; i < 50; ++i) {
    const auto a = (i % 2) ? good : mutate(good, rng() % 16, rng() % 5, 1 + static_cast<unsigned>(rng() % 4));
    std::vector<std::size_t> cols{0, 1, 2, 3, 4};
    std::shuffle(cols.begin(), cols.end(), rng);
    cols.resize(2 + rng() % 4);
    const auto r = oa::restrict_columns(a, cols);
    EXPECT_EQ(oa::verify(r).ok, oracle_is_oa(r, 2));
    if (oa::verify(a).ok) EXPECT_TRUE(oa::verify(r).ok);
  }
}

}  // namespace
