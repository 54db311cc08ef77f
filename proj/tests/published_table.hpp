// Copyright 2026 The rleval Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#pragma once

// Published aggregate intervals and rank pairs for eleven algorithms, used
// to check the rank-interval rule. Ranks are printed as (worst, best).

#include <array>

namespace rleval::testing {

struct PublishedRow {
  const char* algorithm;
  double score;
  double lo;
  double hi;
  int rank;
  int worst;
  int best;
};

inline constexpr std::array<PublishedRow, 11> kPublishedAggregate{{
    {"Sarsa-Parl2", 0.4623, 0.3904, 0.5537, 1, 2, 1},
    {"Q-Parl2", 0.4366, 0.3782, 0.5632, 2, 2, 1},
    {"AC-Parl2", 0.1578, 0.0765, 0.3129, 3, 11, 3},
    {"Sarsa(lambda)-s", 0.0930, 0.0337, 0.2276, 4, 11, 3},
    {"AC-s", 0.0851, 0.0305, 0.2146, 5, 11, 3},
    {"Sarsa(lambda)", 0.0831, 0.0290, 0.2019, 6, 11, 3},
    {"AC", 0.0785, 0.0275, 0.2033, 7, 11, 3},
    {"Q(lambda)-s", 0.0689, 0.0237, 0.1973, 8, 11, 3},
    {"Q(lambda)", 0.0640, 0.0214, 0.1780, 9, 11, 3},
    {"NAC-TD", 0.0516, 0.0180, 0.1636, 10, 11, 3},
    {"PPO", 0.0508, 0.0169, 0.1749, 11, 11, 3},
}};

}  // namespace rleval::testing
