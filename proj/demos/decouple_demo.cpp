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


// Decouples a small random Hamiltonian with the OA(16,5,4,2) and prints the
// average Hamiltonian plus the trace distance for a few block counts.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>

#include "oactrl/known_arrays.hpp"
#include "oactrl/protocols.hpp"

int main() {
  using namespace oactrl;
  const std::size_t n = 5;
  const auto h = hamiltonian::random_local(n, 2, 2, 20, 7);
  const auto s = schemes::scheme_from_oa(oa::known::oa_16_5_4_2(), 2);

  std::printf("H has %zu terms, |H| = %.4f\n", h.terms().size(), hamiltonian::spectral_norm(h));
  std::printf("average Hamiltonian under %zu steps: %zu terms\n", s.size(),
              schemes::average_hamiltonian(s, h).terms().size());

  const linalg::DenseMatrix hd = h.to_dense();
  const auto phi = linalg::haar_state(hd.rows(), std::uint64_t{1});
  protocols::DecouplingInputs in{hd, s, {phi}};
  for (std::size_t blocks : {1u, 4u, 16u, 64u}) {
    const double dt = 1.0 / static_cast<double>(2 * s.size() * blocks);
    const auto u = linalg::expm_i_hermitian(hd, dt);
    const auto first = protocols::run_variant(in, {"first", protocols::Order::first, false, {}, 1}, blocks, 1.0, u, 1);
    const auto second =
        protocols::run_variant(in, {"second", protocols::Order::second, false, {}, 1}, blocks, 1.0, u, 1);
    const double f = std::sqrt(std::max(0.0, 1.0 - std::norm(phi.dot(first.col(0)))));
    const double g = std::sqrt(std::max(0.0, 1.0 - std::norm(phi.dot(second.col(0)))));
    std::printf("blocks %3zu  first %.3e  second %.3e\n", blocks, f, g);
  }
}
