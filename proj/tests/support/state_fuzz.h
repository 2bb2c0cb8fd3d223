/*
 * Copyright (C) 2026 The BenchForge Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef TESTS_SUPPORT_STATE_FUZZ_H_
#define TESTS_SUPPORT_STATE_FUZZ_H_

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace benchforge::testing {

struct FuzzStats {
  size_t sequences = 0;
  size_t events_applied = 0;
  size_t events_rejected = 0;
  size_t accepts = 0;
  size_t reopens = 0;
  size_t merges = 0;  // candidates generated on a nested parent
  size_t illegal_transitions = 0;
  size_t double_accepts = 0;
  size_t lease_violations = 0;
  size_t invariant_violations = 0;
  size_t dirty_rejections = 0;  // a rejected event that still changed state
  size_t replay_mismatches = 0;
  std::vector<std::string> samples;  // first few violation descriptions
};

// Runs |sequences| random event sequences of |events_per_sequence| events
// each through the workflow reducer. Events are drawn state-aware, so most
// are valid but a steady share is not. Every applied event is checked against
// the state-machine, single-accept and lease rules; every sequence is
// replayed from its log and compared with the live state.
FuzzStats RunStateFuzz(uint64_t seed, size_t sequences, size_t events_per_sequence);

}  // namespace benchforge::testing

#endif  // TESTS_SUPPORT_STATE_FUZZ_H_
