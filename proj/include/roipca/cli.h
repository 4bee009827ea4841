// Copyright 2026 The roipca Authors. All Rights Reserved.
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

#ifndef ROIPCA_CLI_H_
#define ROIPCA_CLI_H_

#include <iosfwd>

namespace roipca {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

// Runs the roipca command line. Returns kExitUsage for bad flags, missing
// files and invalid configurations, kExitFailure for numerical failures.
int Dispatch(int argc, const char* const* argv, std::ostream& out,
             std::ostream& err);

}  // namespace roipca

#endif  // ROIPCA_CLI_H_
