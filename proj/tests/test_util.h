// Copyright 2026 The rbsolve Authors.
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

#ifndef RBSOLVE_TESTS_TEST_UTIL_H_
#define RBSOLVE_TESTS_TEST_UTIL_H_

#include <string>

#include "rbsolve/game_model.h"

#ifndef RBSOLVE_DATA_DIR
#define RBSOLVE_DATA_DIR "data"
#endif

inline std::string DataPath(const std::string& name) {
  return std::string(RBSOLVE_DATA_DIR) + "/" + name;
}

inline const rbsolve::GameSpec& Jamming() {
  static const rbsolve::GameSpec game = rbsolve::LoadGameFile(DataPath("jamming.json"));
  return game;
}

// One type per player, one action each, payoff c.
inline rbsolve::GameSpec ConstantGame(double c, int nk = 1, int nl = 1, int na = 1,
                                      int nb = 1) {
  std::vector<double> payoff(static_cast<std::size_t>(nk) * nl * na * nb, c);
  std::vector<double> p0(nk, 1.0 / nk);
  std::vector<double> q0(nl, 1.0 / nl);
  return rbsolve::MakeGame(nk, nl, na, nb, payoff, p0, q0);
}

#endif  // RBSOLVE_TESTS_TEST_UTIL_H_
