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

#ifndef HODGEPINK_SERIES_HPP
#define HODGEPINK_SERIES_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hodgepink/ram.hpp"

namespace hpk {

// binomial coefficient mod p; n may be negative (Lucas on digits).
int binom_mod_p(std::int64_t n, std::int64_t r, int p);

// Truncated jet ring K[[z-zeta]]/(z-zeta)^E over a ramified base. y[rho] is
// the coefficient of (z-zeta)^rho. Negative orders are carried as an explicit
// shift at the matrix level, never here.
struct ZetaJet {
  const RamBase* B = nullptr;
  std::vector<RamElem> y;

  ZetaJet() = default;
  ZetaJet(const RamBase* base, int order) : B(base), y(order, RamElem::zero(base)) {}
  int order() const { return static_cast<int>(y.size()); }

  static ZetaJet constant(const RamBase* B, const RamElem& c, int order);
  static ZetaJet one(const RamBase* B, int order);
  // the jet of (z - zeta) itself: zeta + (z-zeta) minus zeta... i.e. t
  static ZetaJet t_power(const RamBase* B, int e, int order);

  ZetaJet operator+(const ZetaJet& o) const;
  ZetaJet operator-(const ZetaJet& o) const;
  ZetaJet operator-() const;
  ZetaJet operator*(const ZetaJet& o) const;
  ZetaJet scale(const RamElem& c) const;
  ZetaJet truncate(int order) const;
  ZetaJet shift_up(int s) const;  // multiply by (z-zeta)^s, s >= 0, keep order
  // minimal rho with y[rho] nonzero at precision; order() if none visible
  int ord() const;
  bool is_zero() const { return ord() >= order(); }
  ZetaJet inv() const;  // y[0] must be invertible
  bool operator==(const ZetaJet& o) const;
  std::string str() const;
};

// Precision-tracked Laurent series in z over F_{q^m}((zeta^{1/D})): known
// modulo (z^zprec, zeta^{zq/D}). Coefficients below the stored support are
// exactly zero unless `truncated_low` is set (series that were cut off by the
// zeta-precision on their descending z-tail, e.g. graded inverses).
class PrecSeries {
 public:
  PrecSeries() = default;
  PrecSeries(const RamBase* B, std::int64_t zprec, std::int64_t zq)
      : B_(B), zprec_(zprec), zq_(zq) {}

  static PrecSeries zero(const RamBase* B, std::int64_t zprec, std::int64_t zq = kExactPrec);
  static PrecSeries one(const RamBase* B, std::int64_t zprec, std::int64_t zq = kExactPrec);
  static PrecSeries z_power(const RamBase* B, std::int64_t e, std::int64_t zprec,
                            std::int64_t zq = kExactPrec);
  static PrecSeries from_ram(const RamBase* B, const RamElem& c, std::int64_t zprec);
  // c * zeta^{a/D} * z^i
  static PrecSeries monomial(const RamBase* B, const Fq& c, std::int64_t a, std::int64_t i,
                             std::int64_t zprec, std::int64_t zq = kExactPrec);

  const RamBase* base() const { return B_; }
  std::int64_t zprec() const { return zprec_; }
  std::int64_t zq() const { return zq_; }
  bool truncated_low() const { return truncated_low_; }
  const std::map<std::int64_t, RamElem>& terms() const { return c_; }
  RamElem coeff(std::int64_t i) const;  // zero-at-precision if absent
  Rat tail_val() const { return tail_val_; }

  void set_coeff(std::int64_t i, const RamElem& v);
  void add_term(std::int64_t i, const RamElem& v);
  void normalize();

  bool is_zero() const { return c_.empty(); }
  // z-order if the leading stored coefficient is exactly nonzero
  std::optional<std::int64_t> ord_z() const;

  PrecSeries operator+(const PrecSeries& o) const;
  PrecSeries operator-(const PrecSeries& o) const;
  PrecSeries operator-() const;
  PrecSeries operator*(const PrecSeries& o) const;
  PrecSeries scale(const RamElem& c) const;
  PrecSeries shift_z(std::int64_t e) const;  // multiply by z^e
  PrecSeries sigma(int t = 1) const;
  PrecSeries rebase(const RamBase* B2) const;
  PrecSeries truncate_z(std::int64_t zprec) const;
  PrecSeries truncate_zeta(std::int64_t zq) const;
  bool operator==(const PrecSeries& o) const { return (*this - o).is_zero(); }

  // Inverse of a unit power series (ord_z 0, invertible constant coefficient).
  PrecSeries inv_power_series() const;
  // Laurent inverse by the lowest z-term (requires that term to dominate:
  // all other terms have strictly larger z-exponent).
  PrecSeries inv_z_leading() const;
  // Inverse on the annulus graded by e(i) = val + r*i: the strictly dominant
  // monomial is inverted and the rest summed geometrically. Output may have
  // an unbounded descending z-tail cut by the zeta precision (truncated_low).
  PrecSeries inv_graded(const Rat& r) const;

  // sup-norm exponent: min over monomials of (val + r*i), as an exponent of
  // |zeta|. exact=false when coefficient truncation, the z-tail, or a cut
  // descending tail could beat the stored minimum.
  struct NormValue {
    Rat exponent;
    bool exact;
    bool infinite;  // zero at precision: norm is certainly below precision
  };
  NormValue norm(const Rat& r) const;

  // Re-expansion around z = zeta^{ac/D}: image under z -> center + (z-center)
  // truncated mod (z-center)^E, with precision-sound jet coefficients.
  ZetaJet reexpand_at_power(std::int64_t ac, int E) const;
  ZetaJet reexpand_at_zeta(int E) const;

  std::string str() const;

 private:
  const RamBase* B_ = nullptr;
  std::map<std::int64_t, RamElem> c_;
  std::int64_t zprec_ = 0;
  std::int64_t zq_ = kExactPrec;  // zeta precision in 1/D units (uniform)
  Rat tail_val_{0};               // val lower bound for coefficients at z >= zprec
  bool truncated_low_ = false;

  friend PrecSeries raw_like(const PrecSeries& f);
};

// The function t = prod_{i>=0} (1 - zeta^{q^i}/z), truncated: factors with
// q^i beyond the zeta precision are 1. Simple zero at z = zeta.
PrecSeries t_function(const RamBase* B, std::int64_t zprec, std::int64_t zq);

// prod_{0<=v<=hi} (1 - alpha^{q^v}/z) * prod_{lo<=v<0} (1 - z/alpha^{q^v});
// vanishes to first order at each alpha^{q^v} in the window.
PrecSeries f_alpha(const RamElem& alpha, int lo, int hi, std::int64_t zprec, std::int64_t zq);

// Solves x^q + zeta x = c by the q-th-root iteration (extends ramification).
RamElem solve_qplus_zeta(const RamElem& c);
// h_i with h_i^q + zeta h_i = h_{i-1}; returns [h_0, ..., h_steps].
std::vector<RamElem> frobenius_chain(const RamElem& h0, int steps);

// The invariant series sum_v z^{-dv} sum_j z^j u_j^{q^{sv}} over a
// window of v chosen from the zeta precision; satisfies z^{-d} f^{sigma^s} = f
// at precision. Components returned per j are already summed.
PrecSeries o_d_invariant(int d, const std::vector<RamElem>& u, int step_s, std::int64_t zprec,
                         std::int64_t zq);

}  // namespace hpk

#endif  // HODGEPINK_SERIES_HPP
