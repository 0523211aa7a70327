//
// Copyright 2026 The eopert Authors
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
//

#ifndef EOPERT_ERRORS_H_
#define EOPERT_ERRORS_H_

#include <stdexcept>
#include <string>

namespace eopert {

// Root of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Some P[Y=y, A=a] (or an empirical cell count) is zero.
class ZeroCellError : public Error {
 public:
  using Error::Error;
};

// Joint probabilities do not sum to one.
class NormalizationError : public Error {
 public:
  using Error::Error;
};

// A probability or parameter lies outside its admissible range.
class RangeError : public Error {
 public:
  using Error::Error;
};

// A cell of the corrupted (or conditioning) distribution has no mass.
class EmptyCellError : public Error {
 public:
  using Error::Error;
};

// Argument outside the domain [0,1) x [0,1) x (0,1) of the bound function.
class DomainError : public Error {
 public:
  using Error::Error;
};

// The balanced closed form was called outside its regime.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// Internal assertion of the LP solver: no feasible candidate vertex.
class DegenerateProgramError : public Error {
 public:
  using Error::Error;
};

// A record set lacks a column the requested operation needs.
class MissingColumnError : public Error {
 public:
  using Error::Error;
};

// Malformed record file or inconsistent record contents.
class DataError : public Error {
 public:
  using Error::Error;
};

// Malformed configuration (unknown key, bad value, missing field).
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace eopert

#endif  // EOPERT_ERRORS_H_
