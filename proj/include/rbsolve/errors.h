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

#ifndef RBSOLVE_ERRORS_H_
#define RBSOLVE_ERRORS_H_

#include <stdexcept>
#include <string>

namespace rbsolve {

// Every failure raised by the library derives from Error. The CLI maps the
// concrete kind onto its exit code.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed documents, out-of-range indices, dimension mismatches.
class InputError : public Error {
 public:
  using Error::Error;
};

// A request whose LP or history tree would exceed the configured cap.
class CapacityError : public Error {
 public:
  using Error::Error;
};

// The LP solver could not produce an optimum where one must exist.
class SolverError : public Error {
 public:
  using Error::Error;
};

// A strategy agent was driven out of order.
class ProtocolError : public Error {
 public:
  using Error::Error;
};

}  // namespace rbsolve

#endif  // RBSOLVE_ERRORS_H_
