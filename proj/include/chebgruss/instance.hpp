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

#include <optional>

#include "chebgruss/bounds.hpp"
#include "chebgruss/vector.hpp"
#include "chebgruss/weights.hpp"

namespace chebgruss {

/// One problem instance: weights, the two sequences, and optional ball
/// enclosures. `y` may be empty for consumers that only need one
/// sequence (the reverse-Jensen command reads its points from `x`).
template <scalar S>
struct instance {
  weights w{std::vector<double>{}};
  sequence<S> x;
  sequence<S> y;
  std::optional<ball_enclosure<S>> ex;
  std::optional<ball_enclosure<S>> ey;

  std::size_t n() const { return x.size(); }
};

using real_instance = instance<double>;
using complex_instance = instance<cplx>;

}  // namespace chebgruss
