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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hodgepink/field.hpp"
#include "hodgepink/rng.hpp"

using namespace hpk;

TEST_CASE("arithmetic in small levels") {
  FieldTower T(2, 1);
  for (int m : {1, 2, 3, 4}) {
    std::uint64_t n = T.level_size(m);
    // field axioms on all elements (tiny fields)
    for (std::uint64_t i = 0; i < n; ++i) {
      Fq x = T.element_from_index(m, i);
      CHECK(x + T.zero(m) == x);
      CHECK(x * T.one(m) == x);
      if (!x.is_zero()) CHECK(x * x.inv() == T.one(m));
      CHECK(x.pow(n) == x);  // x^{q^m} = x
    }
  }
}

TEST_CASE("frobenius is a field automorphism with the right fixed field") {
  for (int p : {2, 3}) {
    FieldTower T(p, 1);
    int m = 4;
    Rng rng(7);
    for (int trial = 0; trial < 40; ++trial) {
      Fq x = T.element_from_index(m, rng.below(T.level_size(m)));
      Fq y = T.element_from_index(m, rng.below(T.level_size(m)));
      CHECK((x + y).frobenius() == x.frobenius() + y.frobenius());
      CHECK((x * y).frobenius() == x.frobenius() * y.frobenius());
      CHECK(x.frobenius(m) == x);
      CHECK(x.frobenius(1).frobenius(-1) == x);
    }
    // fixed field of x -> x^q on level 1 is all of F_q
    for (std::uint64_t i = 0; i < T.level_size(1); ++i) {
      Fq x = T.element_from_index(1, i);
      CHECK(x.frobenius() == x);
    }
    // fixed points at level m are exactly the embedded F_q
    int fixed = 0;
    for (std::uint64_t i = 0; i < T.level_size(m); ++i) {
      Fq x = T.element_from_index(m, i);
      if (x.frobenius() == x) ++fixed;
    }
    CHECK(fixed == p);
  }
}

TEST_CASE("embedding compatibility along divisor chains") {
  FieldTower T(2, 1);
  // create in an adversarial order
  T.level(12);
  T.level(2);
  T.level(6);
  T.level(3);
  T.level(4);
  for (auto [a, b, c] : {std::array<int, 3>{1, 2, 4}, {1, 2, 12}, {2, 4, 12}, {1, 3, 6},
                         {3, 6, 12}, {2, 6, 12}, {1, 2, 6}, {1, 4, 12}, {1, 6, 12}}) {
    for (std::uint64_t i = 0; i < std::min<std::uint64_t>(T.level_size(a), 64); ++i) {
      Fq x = T.element_from_index(a, i);
      CHECK(T.embed(T.embed(x, b), c) == T.embed(x, c));
    }
  }
  // embeddings are ring homomorphisms
  Rng rng(11);
  for (int t = 0; t < 20; ++t) {
    Fq x = T.element_from_index(3, rng.below(T.level_size(3)));
    Fq y = T.element_from_index(3, rng.below(T.level_size(3)));
    CHECK(T.embed(x * y, 12) == T.embed(x, 12) * T.embed(y, 12));
    CHECK(T.embed(x + y, 12) == T.embed(x, 12) + T.embed(y, 12));
  }
}

TEST_CASE("embedding commutes with frobenius") {
  FieldTower T(3, 1);
  Rng rng(3);
  for (int t = 0; t < 20; ++t) {
    Fq x = T.element_from_index(2, rng.below(T.level_size(2)));
    CHECK(T.embed(x.frobenius(), 6) == T.embed(x, 6).frobenius());
  }
}

TEST_CASE("artin-schreier: kernel and the forced extension") {
  // c = 0 -> y in F_q, same level
  FieldTower T(2, 1);
  auto [y0, m0] = T.artin_schreier_solve(T.zero(1));
  CHECK(m0 == 1);
  CHECK(y0.frobenius() == y0);

  // q = 2, c = 1 over F_2: solution generates F_4, and w^2 + w = 1
  auto [w, m1] = T.artin_schreier_solve(T.one(1));
  CHECK(m1 == 2);
  CHECK(w * w + w == T.one(2));
  // brute-force oracle over F_4
  int count = 0;
  for (std::uint64_t i = 0; i < 4; ++i) {
    Fq x = T.element_from_index(2, i);
    if (x * x + x == T.one(2)) ++count;
  }
  CHECK(count == 2);  // the two solutions differ by F_2
}

TEST_CASE("artin-schreier: random instances re-substitute, level checked by exhaustion") {
  for (int p : {2, 3}) {
    FieldTower T(p, 1);
    Rng rng(99);
    for (int t = 0; t < 30; ++t) {
      int m = 1 + static_cast<int>(rng.below(3));
      Fq c = T.element_from_index(m, rng.below(T.level_size(m)));
      auto [y, mp] = T.artin_schreier_solve(c);
      CHECK(y.frobenius() - y == T.embed(c, mp));
      // exhaustive oracle: solvable at level m*j iff j*Tr(c) = 0
      bool solvable_at_m = false;
      for (std::uint64_t i = 0; i < T.level_size(m); ++i) {
        Fq x = T.element_from_index(m, i);
        if (x.frobenius() - x == c) {
          solvable_at_m = true;
          break;
        }
      }
      CHECK(mp == (solvable_at_m ? m : m * p));
    }
  }
}

TEST_CASE("qth roots invert frobenius") {
  FieldTower T(3, 1);
  CHECK(T.qth_root(T.one(2)) == T.one(2));
  Fq g = T.gen(4);
  CHECK(T.qth_root(g.pow(3)) == g);
  Rng rng(5);
  for (int t = 0; t < 30; ++t) {
    Fq x = T.element_from_index(4, rng.below(T.level_size(4)));
    Fq y = T.qth_root(x);
    CHECK(y.pow(3) == x);
  }
}

TEST_CASE("polynomial root finding against exhaustive search") {
  FieldTower T(2, 1);
  int m = 4;
  Rng rng(17);
  for (int t = 0; t < 10; ++t) {
    // random polynomial of degree 4
    std::vector<Fq> f;
    for (int i = 0; i < 5; ++i) f.push_back(T.element_from_index(m, rng.below(T.level_size(m))));
    if (f.back().is_zero()) f.back() = T.one(m);
    auto roots = T.poly_roots(f);
    // oracle
    std::vector<Fq> expect;
    for (std::uint64_t i = 0; i < T.level_size(m); ++i) {
      Fq x = T.element_from_index(m, i);
      Fq acc = T.zero(m);
      for (size_t j = f.size(); j-- > 0;) acc = acc * x + f[j];
      if (acc.is_zero()) expect.push_back(x);
    }
    CHECK(roots.size() == expect.size());
    for (const Fq& r : roots) {
      bool found = false;
      for (const Fq& e : expect)
        if (r == e) found = true;
      CHECK(found);
    }
  }
}

TEST_CASE("prime power base field q = 4") {
  FieldTower T(2, 2);  // q = 4
  CHECK(T.q() == 4);
  // frobenius x -> x^4 fixes exactly F_4 inside F_16 (level 2)
  int fixed = 0;
  for (std::uint64_t i = 0; i < T.level_size(2); ++i) {
    Fq x = T.element_from_index(2, i);
    if (x.frobenius() == x) ++fixed;
  }
  CHECK(fixed == 4);
}
