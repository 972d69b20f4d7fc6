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

#include <stdexcept>
#include <string>

namespace entpower {

// Base for every error the library raises on purpose.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InvalidState : Error {
  using Error::Error;
};
struct ShapeError : Error {
  using Error::Error;
};
struct InvalidUnitary : Error {
  using Error::Error;
};
struct ConstructionError : Error {
  using Error::Error;
};
// Input is valid but the requested analyzer does not apply to it.
struct PreconditionError : Error {
  using Error::Error;
};
struct SamplingExhausted : Error {
  using Error::Error;
};
struct SearchFailed : Error {
  using Error::Error;
};
// A result contradicts a proven ordering; indicates a bug, not bad input.
struct InternalError : Error {
  using Error::Error;
};

}  // namespace entpower
