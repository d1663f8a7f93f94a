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
#include <set>

#include "oactrl/hamiltonian.hpp"

namespace {

using namespace oactrl;
using namespace oactrl::hamiltonian;

// Dense diagonalization of the 3-local example, frozen (equals 2 + 1/sqrt(2)).
constexpr double kExampleNorm = 2.7071067811865475;

double oracle_norm(const KLocalHamiltonian& h) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h.to_dense());
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

TEST(RandomSparse, SparseEightQubitInstance) {
  const auto h = random_sparse(8, 40, 1);
  EXPECT_EQ(h.terms().size(), 40u);
  std::set<std::string> seen;
  for (const auto& t : h.terms()) {
    EXPECT_GE(t.op.weight(), 1u);
    EXPECT_LE(t.op.weight(), 2u);
    EXPECT_EQ(t.coeff.imag(), 0.0);
    EXPECT_GE(t.coeff.real(), 0.0);
    EXPECT_LT(t.coeff.real(), 2.0 * std::numbers::pi);
    EXPECT_TRUE(seen.insert(t.op.to_string(true)).second);
  }
}

TEST(RandomSparse, SmallAndDeterministic) {
  const auto h = random_sparse(2, 1, 5);
  ASSERT_EQ(h.terms().size(), 1u);
  EXPECT_GE(h.terms()[0].op.weight(), 1u);
  EXPECT_EQ(to_text(random_sparse(6, 20, 9)), to_text(random_sparse(6, 20, 9)));
  EXPECT_NE(to_text(random_sparse(6, 20, 9)), to_text(random_sparse(6, 20, 10)));
  EXPECT_THROW(random_sparse(2, 16, 1), InvalidArgument);  // only 15 strings
  EXPECT_NO_THROW(random_sparse(2, 15, 1));
}

TEST(RandomDense, TermCounts) {
  EXPECT_EQ(random_dense_all_terms(8, 1).terms().size(), 276u);
  EXPECT_EQ(random_dense_all_terms(1, 1).terms().size(), 3u);
  const auto dense4 = random_dense_all_terms(4, 2);
  for (const auto& t : dense4.terms()) {
    EXPECT_GE(t.coeff.real(), 0.0);
    EXPECT_LT(t.coeff.real(), 2.0 * std::numbers::pi);
  }
  std::set<std::string> all;
  const auto dense5 = random_dense_all_terms(5, 3);
  for (const auto& t : dense5.terms()) all.insert(t.op.to_string(true));
  EXPECT_EQ(all.size(), 15u + 90u);
}

TEST(Example, ThreeLocal) {
  const auto h = example_3local();
  ASSERT_EQ(h.terms().size(), 4u);
  EXPECT_EQ(h.locality(), 3u);
  EXPECT_EQ(h.qudits(), 4u);
  const std::vector<double> coeffs{1, 1, 0.5, 0.5};
  for (std::size_t i = 0; i < 4; ++i) EXPECT_EQ(h.terms()[i].coeff.real(), coeffs[i]);
  EXPECT_EQ(h.terms()[1].op.to_string(true), "Y1 Y4");
}

TEST(Hermiticity, AllGenerators) {
  std::vector<KLocalHamiltonian> hs{random_sparse(4, 20, 1), random_dense_all_terms(3, 2), example_3local(),
                                     random_local(3, 3, 2, 10, 3), random_local(2, 2, 3, 6, 4),
                                     random_local(2, 2, 4, 6, 5), random_on_graph(4, chain_edges(4), 6)};
  for (const auto& h : hs) {
    const auto m = h.to_dense();
    EXPECT_LT((m - m.adjoint()).cwiseAbs().maxCoeff(), 1e-14);
    EXPECT_LT(std::abs(m.trace()), 1e-12);
  }
}

TEST(Hamiltonian, Guards) {
  KLocalHamiltonian h(3, 2, 1);
  EXPECT_THROW(h.add(1.0, pauli::PauliString::identity(3, 2)), InvalidArgument);
  EXPECT_THROW(h.add(1.0, pauli::parse_pauli("X1 X2", 3, 2)), InvalidArgument);
  EXPECT_THROW(h.add(1.0, pauli::parse_pauli("X1", 2, 2)), InvalidArgument);
  EXPECT_THROW(KLocalHamiltonian(13, 2, 2, {{1.0, pauli::parse_pauli("X1", 13, 2)}}).to_dense(), GuardError);
}

TEST(Hamiltonian, MatrixFreeApply) {
  const auto h = random_local(4, 2, 2, 12, 7);
  const Eigen::VectorXcd v = linalg::haar_state(16, std::uint64_t{1});
  EXPECT_LT((h.apply(v) - h.to_dense() * v).norm(), 1e-13);
}

TEST(SpectralNorm, Examples) {
  KLocalHamiltonian z(1, 2, 1);
  z.add(-2.5, pauli::parse_pauli("Z1", 1, 2));
  EXPECT_NEAR(spectral_norm(z), 2.5, 1e-12);
  KLocalHamiltonian xxzz(2, 2, 2);
  xxzz.add(1.0, pauli::parse_pauli("X1 X2", 2, 2));
  xxzz.add(1.0, pauli::parse_pauli("Z1 Z2", 2, 2));
  EXPECT_NEAR(spectral_norm(xxzz), 2.0, 1e-10);
  const auto ex = example_3local();
  EXPECT_NEAR(spectral_norm(ex), oracle_norm(ex), 1e-10 * oracle_norm(ex));
  EXPECT_NEAR(spectral_norm(ex), kExampleNorm, 1e-10 * kExampleNorm);
}

TEST(SpectralNorm, PowerIterationBeyondDenseLimit) {
  // 11 decoupled qubits: norm is the sum of per-site norms.
  KLocalHamiltonian h(11, 2, 1);
  double want = 0.0;
  for (std::size_t q = 0; q < 11; ++q) {
    const double c = 0.1 * static_cast<double>(q + 1);
    h.add(c, pauli::PauliString::single(11, 2, q, 0, 1));
    want += c;
  }
  EXPECT_NEAR(spectral_norm(h), want, 1e-6 * want);
  const auto r = random_sparse(8, 40, 3);
  EXPECT_NEAR(spectral_norm(r), oracle_norm(r), 1e-10 * oracle_norm(r));
}

TEST(Graph, Example) {
  const auto g = interaction_graph(example_3local());
  const std::vector<Edge> want{{0, 1}, {0, 2}, {0, 3}, {1, 3}, {2, 3}};
  EXPECT_EQ(g.edges, want);
}

TEST(Graph, SingleTermAndChain) {
  KLocalHamiltonian h(3, 2, 2);
  h.add(1.0, pauli::parse_pauli("X2", 3, 2));
  EXPECT_TRUE(interaction_graph(h).edges.empty());
  const auto chain = interaction_graph(zz_on_graph(5, chain_edges(5)));
  EXPECT_EQ(chain.edges, chain_edges(5));
}

TEST(Graph, TermSupportsAreCliques) {
  const auto h = random_local(7, 3, 2, 15, 8);
  const auto g = interaction_graph(h);
  for (const auto& t : h.terms()) {
    const auto s = t.op.support();
    for (std::size_t a = 0; a < s.size(); ++a)
      for (std::size_t b = a + 1; b < s.size(); ++b) EXPECT_TRUE(g.has_edge(s[a], s[b]));
  }
}

TEST(Coloring, Examples) {
  const auto grid = InteractionGraph::from_edges(100, grid_edges(10, 10));
  const auto cg = greedy_coloring(grid);
  EXPECT_EQ(cg.count, 2u);
  EXPECT_TRUE(is_proper(grid, cg));
  const auto k5 = InteractionGraph::from_edges(5, complete_edges(5));
  EXPECT_EQ(greedy_coloring(k5).count, 5u);
  const auto empty = InteractionGraph::from_edges(4, {});
  EXPECT_EQ(greedy_coloring(empty).count, 1u);
}

TEST(Coloring, AlwaysProper) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const auto g = interaction_graph(random_sparse(8, 40, seed));
    const auto c = greedy_coloring(g);
    EXPECT_TRUE(is_proper(g, c));
    EXPECT_LE(c.count, 8u);
  }
}

TEST(Text, RoundTrip) {
  for (const auto& h : {random_sparse(5, 12, 1), example_3local(), random_local(3, 2, 3, 4, 2)}) {
    const auto back = from_text(to_text(h));
    ASSERT_EQ(back.terms().size(), h.terms().size());
    for (std::size_t i = 0; i < h.terms().size(); ++i) {
      EXPECT_EQ(back.terms()[i].coeff, h.terms()[i].coeff);
      EXPECT_EQ(back.terms()[i].op, h.terms()[i].op);
    }
    EXPECT_EQ(to_text(back), to_text(h));
  }
}

TEST(Text, Errors) {
  EXPECT_THROW(from_text("1  X1\n"), ParseError);
  EXPECT_THROW(from_text("# hamiltonian n=2 d=2 k=1\n1  X1 X2\n"), ParseError);
  EXPECT_THROW(from_text("# hamiltonian n=2 d=2 k=2\nabc  X1\n"), ParseError);
  EXPECT_THROW(from_text("# hamiltonian n=2 d=2 k=2\n1  Q1\n"), ParseError);
}

}  // namespace
