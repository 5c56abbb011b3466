// Copyright 2026 The distreg Authors. All Rights Reserved.
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

#include <cstddef>
#include <vector>

namespace distreg::cli {

// Uniform grid of count points from lo to hi inclusive.
struct GridSpec {
  double lo = -1.1;
  double hi = 1.1;
  std::size_t count = 221;

  // Throws InputError unless lo < hi and count >= 2.
  std::vector<double> points() const;
};

// Entry point for the distreg command line. Returns the process exit code:
// 0 on success, nonzero on any error. Diagnostics go to stderr, data goes
// only to the files named by the flags.
int run(int argc, const char* const* argv);

}  // namespace distreg::cli
