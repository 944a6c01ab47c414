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

#ifndef HODGEPINK_FIELD_HPP
#define HODGEPINK_FIELD_HPP

#include <array>
#include <atomic>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

namespace hpk {

// Dense polynomial over F_p, c[i] = coefficient of x^i, no trailing zeros.
using Poly = std::vector<std::uint8_t>;

class FieldTower;

// Field level F_{q^m} realized as F_p[x]/(modulus), deg(modulus) = k*m.
struct FieldLevel {
  const FieldTower* tower = nullptr;
  int m = 1;
  int deg = 1;
  Poly modulus;
  // p-power Frobenius as a deg x deg matrix over F_p (column j = x^{jp} mod f)
  // and its inverse; both row-major.
  std::vector<std::uint8_t> frob_mat;
  std::vector<std::uint8_t> frob_inv_mat;
};

// Element of F_{q^m}. Arithmetic is lock-free: the level object is immutable
// once created.
class Fq {
 public:
  Fq() = default;
  Fq(const FieldLevel* L, Poly c) : L_(L), c_(std::move(c)) { trim(); }

  const FieldLevel* level_ptr() const { return L_; }
  int level() const { return L_->m; }
  const FieldTower& tower() const;
  const Poly& coeffs() const { return c_; }
  bool is_zero() const { return c_.empty(); }

  Fq operator+(const Fq& o) const;
  Fq operator-(const Fq& o) const;
  Fq operator-() const;
  Fq operator*(const Fq& o) const;
  Fq inv() const;
  Fq pow(std::uint64_t e) const;
  // x -> x^{q^t}; negative t applies the inverse Frobenius.
  Fq frobenius(int t = 1) const;
  bool operator==(const Fq& o) const;
  bool operator!=(const Fq& o) const { return !(*this == o); }
  // total order on coefficient tuples within one level (determinism)
  bool lex_less(const Fq& o) const;

  std::string str() const;  // e.g. "g^3+g+1" (generator named g), "0", "1"

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }
  const FieldLevel* L_ = nullptr;
  Poly c_;
};

// Lazily built compatible family of fields F_{q^m}, q = p^k. Levels are
// created on demand; whenever two levels with dividing indices both exist the
// embedding between them is fixed, and all embedding triangles commute. The
// tower is the only shared mutable structure; creation is serialized behind a
// mutex, reads of existing levels are lock-free through stable pointers.
class FieldTower {
 public:
  FieldTower(int p, int k, int max_degree = 64);
  FieldTower(const FieldTower&) = delete;

  int p() const { return p_; }
  int k() const { return k_; }
  std::int64_t q() const { return q_; }
  int max_degree() const { return max_degree_; }

  const FieldLevel* level(int m) const;

  Fq zero(int m) const { return Fq(level(m), {}); }
  Fq one(int m) const { return Fq(level(m), {1}); }
  Fq from_int(int m, std::int64_t v) const;
  Fq gen(int m) const { return Fq(level(m), {0, 1}); }
  Fq from_coeffs(int m, Poly c) const { return Fq(level(m), std::move(c)); }

  // Embeds x into level M (x.level() | M required).
  Fq embed(const Fq& x, int M) const;
  // Coordinates of x in the level-a subfield, if x lies in it.
  std::optional<Fq> project(const Fq& x, int a) const;
  // Lifts both to the lcm of their levels.
  std::pair<Fq, Fq> common(const Fq& x, const Fq& y) const;

  // Trace from the level of x down to F_q, returned at level 1.
  Fq trace_to_base(const Fq& x) const;

  // Solves y^q - y = c. Returns (y, m') with m' the minimal level containing
  // a solution (m' = m if the trace of c vanishes, else m*p).
  std::pair<Fq, int> artin_schreier_solve(const Fq& c) const;

  // Unique y with y^q = x (same level).
  Fq qth_root(const Fq& x) const { return x.frobenius(-1); }

  // All roots in the coefficients' level of a monic polynomial given by its
  // Fq coefficients (poly[i] = coefficient of X^i). Deterministic order.
  std::vector<Fq> poly_roots(std::vector<Fq> poly) const;

  // Deterministic enumeration of level-m elements; idx < p^deg.
  Fq element_from_index(int m, std::uint64_t idx) const;
  // p^(k*m) clamped to uint64 max.
  std::uint64_t level_size(int m) const;

  // Image of the level-a generator in level b (a | b); creates both levels.
  Fq generator_image(int a, int b) const;

 private:
  struct EmbedKey {
    int a, b;
    bool operator<(const EmbedKey& o) const { return a != o.a ? a < o.a : b < o.b; }
  };
  static constexpr int kMaxLevels = 96;

  const FieldLevel* level_locked(int m) const;
  void make_embedding_locked(int a, int b) const;
  Poly find_irreducible(int deg) const;

  int p_, k_;
  std::int64_t q_;
  int max_degree_;
  mutable std::recursive_mutex mu_;
  mutable std::map<int, std::unique_ptr<FieldLevel>> levels_;
  mutable std::map<EmbedKey, std::unique_ptr<Poly>> embeddings_;  // image of gen(a) in level b
  // lock-free fast paths; populated under mu_, read with acquire loads
  mutable std::array<std::atomic<const FieldLevel*>, kMaxLevels + 1> level_cache_{};
  mutable std::array<std::atomic<const Poly*>, (kMaxLevels + 1) * (kMaxLevels + 1)> embed_cache_{};
};

// --- dense F_p linear algebra (small systems) ---

// Row-major matrix over F_p with elimination helpers. Used for Frobenius
// matrices, Artin-Schreier solves and the witness-search systems.
struct FpMat {
  int p = 2;
  int rows = 0, cols = 0;
  std::vector<std::uint8_t> a;

  FpMat() = default;
  FpMat(int p_, int r, int c) : p(p_), rows(r), cols(c), a(static_cast<size_t>(r) * c, 0) {}
  std::uint8_t& at(int r, int c) { return a[static_cast<size_t>(r) * cols + c]; }
  std::uint8_t at(int r, int c) const { return a[static_cast<size_t>(r) * cols + c]; }

  // Reduced row echelon form in place; returns pivot column list.
  std::vector<int> rref();
  int rank() const;
  // One solution of this * x = rhs, if any.
  std::optional<std::vector<std::uint8_t>> solve(const std::vector<std::uint8_t>& rhs) const;
  // Basis of the right kernel.
  std::vector<std::vector<std::uint8_t>> kernel() const;
  std::optional<FpMat> inverse() const;
  static FpMat identity(int p, int n);
  FpMat mul(const FpMat& o) const;
};

}  // namespace hpk

#endif  // HODGEPINK_FIELD_HPP
