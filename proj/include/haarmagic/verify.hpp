// Copyright 2026 The haarmagic Authors
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

#include <cstdint>
#include <string>
#include <vector>

namespace haarmagic {

struct VerifyOptions {
    int trials = 100;
    uint64_t seed = 20240101;
    int workers = 1;
    // Deliberate defect: sample Haar unitaries without the QR phase fix.
    bool skip_qr_phase = false;
};

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail;
};

/// Runs the invariant suite: Haar sampling moments, gate correctness, magic
/// properties, entanglement oracles, statistics merging and scheduling
/// independence. One result per invariant.
std::vector<CheckResult> run_verification(const VerifyOptions &options);

}  // namespace haarmagic
