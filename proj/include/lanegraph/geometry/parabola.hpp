// Copyright 2026 The lanegraph Authors
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

#ifndef LANEGRAPH_GEOMETRY_PARABOLA_HPP_
#define LANEGRAPH_GEOMETRY_PARABOLA_HPP_

namespace lanegraph::geometry {

// u = c2 * v^2 + c1 * v + c0.
struct Parabola {
  double c2 = 0.0;
  double c1 = 0.0;
  double c0 = 0.0;

  double operator()(double v) const noexcept { return (c2 * v + c1) * v + c0; }
  double slope(double v) const noexcept { return 2.0 * c2 * v + c1; }

  friend bool operator==(const Parabola&, const Parabola&) = default;
};

}  // namespace lanegraph::geometry

#endif  // LANEGRAPH_GEOMETRY_PARABOLA_HPP_
