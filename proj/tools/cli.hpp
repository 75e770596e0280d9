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

#include <iosfwd>
#include <string>
#include <vector>

namespace haarmagic::cli {

enum ExitCode : int {
    kOk = 0,
    kInternalError = 1,
    kConfigError = 2,
    kCapabilityError = 3,
    kIoError = 4,
};

/// Entry point shared by the binary and the tests. `args` excludes argv[0].
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

/// "4..10" -> {4,...,10}; "2,5,7" -> {2,5,7}; "3" -> {3}. Mixed forms like
/// "2,4..6" are accepted.
std::vector<int> parse_int_list(const std::string &text);

}  // namespace haarmagic::cli
