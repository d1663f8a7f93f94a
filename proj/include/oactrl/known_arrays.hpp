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

#include "oactrl/oa.hpp"

// Published arrays bundled with the library. Both go through load(), so they
// are re-verified every time they are requested.
namespace oactrl::oa::known {

/** OA(16,5,4,2) with index 1, given as its transpose (one line per factor). */
inline constexpr std::string_view kOa16Transposed = R"(1 1 1 1 2 2 2 2 3 3 3 3 4 4 4 4
1 2 3 4 1 2 3 4 1 2 3 4 1 2 3 4
1 2 3 4 4 3 2 1 2 1 4 3 3 4 1 2
1 2 3 4 2 1 4 3 3 4 1 2 4 3 2 1
1 2 3 4 3 4 1 2 4 3 2 1 2 1 4 3
)";

/** OA(32,9,4,2) with index 2 (Bose-Bush over GF(8)), symbols 0..3. */
inline constexpr std::string_view kOA32_9_4_2 = R"(
0 0 0 0 0 0 0 0 0
1 1 1 1 1 1 1 1 0
2 2 2 2 2 2 2 2 0
3 3 3 3 3 3 3 3 0
0 1 2 3 0 1 2 3 1
1 0 3 2 1 0 3 2 1
2 3 0 1 2 3 0 1 1
3 2 1 0 3 2 1 0 1
0 2 0 2 3 1 3 1 2
1 3 1 3 2 0 2 0 2
2 0 2 0 1 3 1 3 2
3 1 3 1 0 2 0 2 2
0 3 2 1 3 0 1 2 3
1 2 3 0 2 1 0 3 3
2 1 0 3 1 2 3 0 3
3 0 1 2 0 3 2 1 3
0 0 3 3 2 2 1 1 0
1 1 2 2 3 3 0 0 0
2 2 1 1 0 0 3 3 0
3 3 0 0 1 1 2 2 0
0 1 1 0 2 3 3 2 1
1 0 0 1 3 2 2 3 1
2 3 3 2 0 1 1 0 1
3 2 2 3 1 0 0 1 1
0 2 3 1 1 3 2 0 2
1 3 2 0 0 2 3 1 2
2 0 1 3 3 1 0 2 2
3 1 0 2 2 0 1 3 2
0 3 1 2 1 2 0 3 3
1 2 0 3 0 3 1 2 3
2 1 3 0 3 0 2 1 3
3 0 2 1 2 1 3 0 3
)";

inline OrthogonalArray oa_16_5_4_2() { return load(kOa16Transposed, 4, 2, {.transpose = true}); }

inline OrthogonalArray oa_32_9_4_2() { return load(kOA32_9_4_2, 4, 2); }

}  // namespace oactrl::oa::known
