//
// Copyright 2026 the kinex authors
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <stdexcept>
#include <string>

namespace kinex {

// Invalid model input: duplicate atom ids, empty graphs, mismatched DOF
// vectors and the like.
class ModelError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input file. Messages carry the offending line number.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Numerical degeneracy: zero-length constraint axes, SVD failure.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace kinex
