// Copyright 2026 The entpower Authors.
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

#include <iosfwd>
#include <string>
#include <vector>

#include "entpower/opschmidt.hpp"

namespace entpower::cli {

inline constexpr const char* kVersion = "0.1.0";

// Exit codes of run().
enum Exit : int { kOk = 0, kUsage = 1, kBadMatrix = 2, kPrecondition = 3 };

// {"dA": .., "dB": .., "entries": [[re, im], ...]} with entries row-major over (a dB + b).
BipartiteUnitary parse_matrix(const std::string& text, double tol = 1e-8);
BipartiteUnitary read_matrix_file(const std::string& path, double tol = 1e-8);
// Doubles are written in shortest round-trip form, so reading back is bit exact.
std::string write_matrix(const BipartiteUnitary& U);

// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace entpower::cli
