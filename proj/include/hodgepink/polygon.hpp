// Copyright 2026 The hodgepink Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef HODGEPINK_POLYGON_HPP
#define HODGEPINK_POLYGON_HPP

#include <string>
#include <vector>

#include "hodgepink/rat.hpp"

namespace hpk {

// Newton polygon of a multiset of rational slopes. Vertices are the partial
// sums of the sorted slopes starting at (0,0).
class NewtonPolygon {
 public:
  NewtonPolygon() = default;
  static NewtonPolygon from_slopes(std::vector<Rat> slopes);

  const std::vector<Rat>& slopes() const { return slopes_; }
  std::size_t rank() const { return slopes_.size(); }
  // (n, h): total multiplicity and sum of slopes
  std::pair<std::int64_t, Rat> endpoint() const;

  friend NewtonPolygon sum(const NewtonPolygon& a, const NewtonPolygon& b);
  // true iff endpoints agree and every vertex of *this is on or above o.
  // Throws EndpointMismatch when the endpoints differ.
  bool lies_above(const NewtonPolygon& o) const;
  bool operator==(const NewtonPolygon& o) const { return slopes_ == o.slopes_; }

  // "d1/n1^m1 + d2/n2^m2 + ..." with sorted slopes
  std::string str() const;
  static NewtonPolygon parse(const std::string& text);

 private:
  std::vector<Rat> slopes_;  // sorted ascending
};

}  // namespace hpk

#endif  // HODGEPINK_POLYGON_HPP
