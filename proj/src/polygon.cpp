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

#include "hodgepink/polygon.hpp"

#include <algorithm>
#include <sstream>

#include "hodgepink/error.hpp"

namespace hpk {

NewtonPolygon NewtonPolygon::from_slopes(std::vector<Rat> slopes) {
  NewtonPolygon p;
  std::sort(slopes.begin(), slopes.end());
  p.slopes_ = std::move(slopes);
  return p;
}

std::pair<std::int64_t, Rat> NewtonPolygon::endpoint() const {
  Rat h(0);
  for (const Rat& s : slopes_) h += s;
  return {static_cast<std::int64_t>(slopes_.size()), h};
}

NewtonPolygon sum(const NewtonPolygon& a, const NewtonPolygon& b) {
  std::vector<Rat> s = a.slopes_;
  s.insert(s.end(), b.slopes_.begin(), b.slopes_.end());
  return NewtonPolygon::from_slopes(std::move(s));
}

bool NewtonPolygon::lies_above(const NewtonPolygon& o) const {
  auto [n1, h1] = endpoint();
  auto [n2, h2] = o.endpoint();
  if (n1 != n2 || h1 != h2)
    throw EndpointMismatch("endpoints (" + std::to_string(n1) + "," + h1.str() + ") vs (" +
                           std::to_string(n2) + "," + h2.str() + ")");
  // vertex i of *this must be >= the o-polygon value at x = i
  Rat mine(0);
  for (std::size_t i = 1; i < slopes_.size(); ++i) {
    mine += slopes_[i - 1];
    Rat theirs(0);
    for (std::size_t j = 0; j < i; ++j) theirs += o.slopes_[j];
    if (mine < theirs) return false;
  }
  return true;
}

std::string NewtonPolygon::str() const {
  if (slopes_.empty()) return "0";
  std::ostringstream os;
  std::size_t i = 0;
  bool first = true;
  while (i < slopes_.size()) {
    std::size_t j = i;
    while (j < slopes_.size() && slopes_[j] == slopes_[i]) ++j;
    if (!first) os << " + ";
    os << slopes_[i].str() << "^" << (j - i);
    first = false;
    i = j;
  }
  return os.str();
}

NewtonPolygon NewtonPolygon::parse(const std::string& text) {
  std::vector<Rat> slopes;
  std::string t = text;
  for (char& c : t)
    if (c == '+') c = ' ';
  std::istringstream is(t);
  std::string tok;
  while (is >> tok) {
    if (tok == "0" && slopes.empty() && is.eof()) break;
    std::int64_t num = 0, den = 1, mult = 1;
    std::size_t caret = tok.find('^');
    std::string frac = caret == std::string::npos ? tok : tok.substr(0, caret);
    if (caret != std::string::npos) mult = std::stoll(tok.substr(caret + 1));
    std::size_t slash = frac.find('/');
    if (slash == std::string::npos) {
      num = std::stoll(frac);
    } else {
      num = std::stoll(frac.substr(0, slash));
      den = std::stoll(frac.substr(slash + 1));
    }
    for (std::int64_t i = 0; i < mult; ++i) slopes.emplace_back(num, den);
  }
  return from_slopes(std::move(slopes));
}

}  // namespace hpk
