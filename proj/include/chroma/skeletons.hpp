/*
 * Copyright 2026 The chroma authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <set>
#include <string>
#include <vector>

#include "memory.hpp"

namespace chroma {

/// State of the running-sum skeleton holding `sum` (|sum| <= n).
inline StateId sum_state(int n, int sum) { return sum + n; }
inline StateId invalid_sum_state(int n) { return 2 * n + 1; }

/**
 * Skeleton over {-1,+1} that stores the running sum while its absolute
 * value stays at most n, and falls into an absorbing invalid state
 * otherwise.  2n+2 states; the initial state holds 0.
 */
inline MemorySkeleton synth_Mn(int n)
{
    if (n < 1) throw std::invalid_argument("synth_Mn: n must be >= 1");
    const StateId bot = invalid_sum_state(n);
    std::vector<std::vector<StateId>> delta(2 * n + 2, std::vector<StateId>(2));
    std::vector<std::string> labels(2 * n + 2);
    for (int s = -n; s <= n; ++s) {
        const StateId m = sum_state(n, s);
        delta[m][0] = s - 1 >= -n ? sum_state(n, s - 1) : bot;
        delta[m][1] = s + 1 <= n ? sum_state(n, s + 1) : bot;
        labels[m] = "sum=" + std::to_string(s);
    }
    delta[bot] = {bot, bot};
    labels[bot] = "bot";
    return MemorySkeleton({-1, 1}, sum_state(n, 0), std::move(delta), std::move(labels));
}

namespace mk {
inline constexpr StateId kInit = 0;
inline constexpr StateId kFinal = 1;
inline StateId run_state(int i) { return 2 + i; } // q_i, 0 <= i <= k
inline StateId long_run_state(int k) { return k + 3; } // q_{>k}
} // namespace mk

/**
 * Skeleton over {0,1} with states I, F, q_0..q_k, q_{>k}.  It counts the
 * ones after the last zero up to k, and moves to the absorbing state F
 * when a zero closes a run whose length lies in T.
 */
inline MemorySkeleton synth_Mk(int k, const std::set<long long>& T)
{
    if (k < 1) throw std::invalid_argument("synth_Mk: k must be >= 1");
    const int n = k + 4;
    std::vector<std::vector<StateId>> delta(n, std::vector<StateId>(2));
    std::vector<std::string> labels(n);
    // alphabet order: index 0 is color 0, index 1 is color 1
    delta[mk::kInit] = {mk::run_state(0), mk::kInit};
    labels[mk::kInit] = "I";
    delta[mk::kFinal] = {mk::kFinal, mk::kFinal};
    labels[mk::kFinal] = "F";
    for (int i = 0; i <= k; ++i) {
        const StateId q = mk::run_state(i);
        const bool closes = i >= 1 && T.count(i) > 0;
        delta[q][0] = closes ? mk::kFinal : mk::run_state(0);
        delta[q][1] = i < k ? mk::run_state(i + 1) : mk::long_run_state(k);
        labels[q] = "q" + std::to_string(i);
    }
    delta[mk::long_run_state(k)] = {mk::run_state(0), mk::long_run_state(k)};
    labels[mk::long_run_state(k)] = "q>" + std::to_string(k);
    return MemorySkeleton({0, 1}, mk::kInit, std::move(delta), std::move(labels));
}

} // namespace chroma
