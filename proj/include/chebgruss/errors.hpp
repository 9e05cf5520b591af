// Copyright 2026 The chebgruss Authors
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
#include <stdexcept>
#include <string>

namespace chebgruss {

/// Base class for all library errors.
struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Operands have incompatible lengths or coordinate dimensions.
struct dimension_error : error {
  using error::error;
};

/// A sequence operation needs at least two elements.
struct sequence_too_short : error {
  using error::error;
};

/// A finite Holder exponent must satisfy p > 1.
struct exponent_error : error {
  using error::error;
};

/// A partial sum P_i (or tail sum) is too close to zero to divide by.
/// `index` is the 1-based subscript of the offending sum; `tail` marks
/// whether the tail sum rather than the prefix sum failed.
struct degenerate_partial_sum : error {
  degenerate_partial_sum(std::size_t index_1based, bool is_tail, double value)
      : error((is_tail ? "tail sum Pbar_" : "partial sum P_") +
              std::to_string(index_1based) + " = " + std::to_string(value) +
              " is within the degeneracy guard of zero"),
        index(index_1based),
        tail(is_tail) {}
  std::size_t index;
  bool tail;
};

struct index_error : error {
  using error::error;
};

/// Weights were required to be a probability sequence and are not.
struct not_probability : error {
  using error::error;
};

/// A sequence element lies outside the ball described by an enclosure.
struct enclosure_violated : error {
  enclosure_violated(std::string which, std::size_t idx, double excess)
      : error("enclosure for " + which + " violated at element " +
              std::to_string(idx) + " (excess " + std::to_string(excess) +
              ")"),
        index(idx) {}
  std::size_t index;  // 0-based position of the worst violation
};

struct complex_field_unsupported : error {
  using error::error;
};

/// A user-supplied function failed the convexity spot check.
struct non_convex_model : error {
  using error::error;
};

/// No constructive equality instance is known for the requested bound.
struct no_known_witness : error {
  using error::error;
};

}  // namespace chebgruss
