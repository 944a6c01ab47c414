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

#ifndef HODGEPINK_RAM_HPP
#define HODGEPINK_RAM_HPP

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>

#include "hodgepink/error.hpp"
#include "hodgepink/field.hpp"
#include "hodgepink/rat.hpp"

namespace hpk {

class Context;

// Sentinel precision for exactly known elements.
inline constexpr std::int64_t kExactPrec = std::int64_t(1) << 48;

// The coefficient field F_{q^m}((zeta^{1/D})), truncated. `qdiv_tower` marks
// bases that model a truncation of a field with q-divisible value group; the
// admissibility classifier treats such bases specially.
struct RamBase {
  const Context* ctx = nullptr;
  int m = 1;
  std::int64_t D = 1;
  bool qdiv_tower = false;
};

// Session-wide registry: the field tower, ramified-base interning, budgets.
class Context {
 public:
  Context(int p, int k, int max_degree = 64, std::int64_t ram_budget = 1 << 16);
  Context(const Context&) = delete;

  const FieldTower& tower() const { return tower_; }
  int p() const { return tower_.p(); }
  std::int64_t q() const { return tower_.q(); }
  std::int64_t ram_budget() const { return ram_budget_; }

  const RamBase* base(int m, std::int64_t D, bool qdiv_tower = false) const;
  const RamBase* common(const RamBase* a, const RamBase* b) const;

 private:
  FieldTower tower_;
  std::int64_t ram_budget_;
  mutable std::mutex mu_;
  mutable std::map<std::tuple<int, std::int64_t, bool>, std::unique_ptr<RamBase>> bases_;
};

// Element of F_{q^m}((zeta^{1/D})) known modulo zeta^{prec/D}. Terms are
// c[a] * zeta^{a/D} with coefficients at field level m; terms at or above the
// precision are dropped.
class RamElem {
 public:
  RamElem() = default;
  RamElem(const RamBase* B, std::int64_t prec) : B_(B), prec_(prec) {}

  static RamElem zero(const RamBase* B, std::int64_t prec = kExactPrec) { return RamElem(B, prec); }
  static RamElem from_fq(const RamBase* B, const Fq& c, std::int64_t prec = kExactPrec);
  // c * zeta^{a/D}
  static RamElem monomial(const RamBase* B, const Fq& c, std::int64_t a, std::int64_t prec = kExactPrec);

  const RamBase* base() const { return B_; }
  std::int64_t prec() const { return prec_; }
  bool is_zero() const { return c_.empty(); }  // zero at the stated precision
  const std::map<std::int64_t, Fq>& terms() const { return c_; }

  // exact valuation as a rational if the leading term is visible, else nullopt
  // (meaning val >= prec/D)
  std::optional<Rat> val() const;
  Rat val_lower() const;  // min(leading val, prec/D)
  Fq leading_coeff() const;

  RamElem operator+(const RamElem& o) const;
  RamElem operator-(const RamElem& o) const;
  RamElem operator-() const;
  RamElem operator*(const RamElem& o) const;
  RamElem inv() const;  // throws NotInvertible / PrecisionLoss
  bool operator==(const RamElem& o) const { return (*this - o).is_zero(); }

  RamElem sigma(int t = 1) const;     // coefficients^{q^t}, zeta^{a/D} -> zeta^{a q^t / D}
  RamElem qth_root() const;           // exact q-th root; may extend ramification
  RamElem scale_zeta(std::int64_t a) const;  // multiply by zeta^{a/D}
  RamElem truncate(std::int64_t new_prec) const;
  RamElem rebase(const RamBase* B2) const;  // to a finer base (m | m2, D | D2)

  // coefficient of zeta^0 (requires no visible negative terms)
  Fq residue() const;
  // true if all visible exponents are >= 0
  bool is_integral() const;

  std::string str() const;

  void add_term(std::int64_t a, const Fq& coeff);
  void normalize();

 private:
  const RamBase* B_ = nullptr;
  std::map<std::int64_t, Fq> c_;
  std::int64_t prec_ = kExactPrec;
};

// Lifts both to a common base.
std::pair<RamElem, RamElem> common(const RamElem& a, const RamElem& b);

}  // namespace hpk

#endif  // HODGEPINK_RAM_HPP
