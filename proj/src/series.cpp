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

#include "hodgepink/series.hpp"

#include <algorithm>

namespace hpk {

int binom_mod_p(std::int64_t n, std::int64_t r, int p) {
  if (r < 0) return 0;
  if (n < 0) {
    // binom(n, r) = (-1)^r binom(r - n - 1, r)
    int b = binom_mod_p(r - n - 1, r, p);
    return (r % 2 == 0) ? b : (p - b) % p;
  }
  if (r > n) return 0;
  // Lucas
  std::int64_t res = 1;
  std::int64_t nn = n, rr = r;
  while (rr > 0 || nn > 0) {
    std::int64_t nd = nn % p, rd = rr % p;
    if (rd > nd) return 0;
    // binom(nd, rd) mod p, digits < p small
    std::int64_t c = 1;
    for (std::int64_t i = 0; i < rd; ++i) c = c * (nd - i) / (i + 1);
    res = res * (c % p) % p;
    nn /= p;
    rr /= p;
  }
  return static_cast<int>(res);
}

// --- ZetaJet ---

ZetaJet ZetaJet::constant(const RamBase* B, const RamElem& c, int order) {
  ZetaJet j(B, order);
  if (order > 0) j.y[0] = c.rebase(B);
  return j;
}

ZetaJet ZetaJet::one(const RamBase* B, int order) {
  return constant(B, RamElem::from_fq(B, B->ctx->tower().one(B->m)), order);
}

ZetaJet ZetaJet::t_power(const RamBase* B, int e, int order) {
  ZetaJet j = one(B, order);
  for (int i = 0; i < e; ++i) j = j.shift_up(1);
  return j;
}

ZetaJet ZetaJet::operator+(const ZetaJet& o) const {
  int E = std::min(order(), o.order());
  const RamBase* BB = B->ctx->common(B, o.B);
  ZetaJet r(BB, E);
  for (int i = 0; i < E; ++i) r.y[i] = y[i] + o.y[i];
  return r;
}

ZetaJet ZetaJet::operator-() const {
  ZetaJet r(B, order());
  for (int i = 0; i < order(); ++i) r.y[i] = -y[i];
  return r;
}

ZetaJet ZetaJet::operator-(const ZetaJet& o) const { return *this + (-o); }

ZetaJet ZetaJet::operator*(const ZetaJet& o) const {
  int E = std::min(order(), o.order());
  const RamBase* BB = B->ctx->common(B, o.B);
  ZetaJet r(BB, E);
  for (int i = 0; i < E; ++i)
    for (int j = 0; i + j < E && j < o.order(); ++j) {
      if (i >= order()) break;
      r.y[i + j] = r.y[i + j] + y[i] * o.y[j];
    }
  return r;
}

ZetaJet ZetaJet::scale(const RamElem& c) const {
  ZetaJet r(B, order());
  for (int i = 0; i < order(); ++i) r.y[i] = y[i] * c;
  return r;
}

ZetaJet ZetaJet::truncate(int E) const {
  ZetaJet r = *this;
  r.y.resize(std::min<size_t>(r.y.size(), E), RamElem::zero(B));
  return r;
}

ZetaJet ZetaJet::shift_up(int s) const {
  ZetaJet r(B, order());
  for (int i = 0; i + s < order(); ++i) r.y[i + s] = y[i];
  return r;
}

int ZetaJet::ord() const {
  for (int i = 0; i < order(); ++i)
    if (!y[i].is_zero()) return i;
  return order();
}

ZetaJet ZetaJet::inv() const {
  if (order() == 0 || y[0].is_zero()) throw NotInvertible("jet with vanishing constant term");
  RamElem i0 = y[0].inv();
  ZetaJet r(B, order());
  r.y[0] = i0;
  for (int n = 1; n < order(); ++n) {
    RamElem acc = RamElem::zero(B);
    for (int j = 1; j <= n; ++j) acc = acc + y[j] * r.y[n - j];
    r.y[n] = -(i0 * acc);
  }
  return r;
}

bool ZetaJet::operator==(const ZetaJet& o) const { return (*this - o).is_zero(); }

std::string ZetaJet::str() const {
  std::string s;
  for (int i = 0; i < order(); ++i) {
    if (y[i].is_zero()) continue;
    if (!s.empty()) s += " + ";
    std::string cs = y[i].str();
    if (cs.find(' ') != std::string::npos || cs.find('+') != std::string::npos) cs = "(" + cs + ")";
    if (i == 0)
      s += cs;
    else {
      s += cs + "*T";
      if (i > 1) s += "^" + std::to_string(i);
    }
  }
  return s.empty() ? "0" : s;
}

// --- PrecSeries ---

PrecSeries PrecSeries::zero(const RamBase* B, std::int64_t zprec, std::int64_t zq) {
  return PrecSeries(B, zprec, zq);
}

PrecSeries PrecSeries::one(const RamBase* B, std::int64_t zprec, std::int64_t zq) {
  return z_power(B, 0, zprec, zq);
}

PrecSeries PrecSeries::z_power(const RamBase* B, std::int64_t e, std::int64_t zprec, std::int64_t zq) {
  PrecSeries f(B, zprec, zq);
  if (e < zprec) f.c_.emplace(e, RamElem::from_fq(B, B->ctx->tower().one(B->m), zq));
  return f;
}

PrecSeries PrecSeries::from_ram(const RamBase* B, const RamElem& c, std::int64_t zprec) {
  PrecSeries f(B, zprec, c.prec());
  RamElem cc = c.rebase(B);
  if (!cc.is_zero() && zprec > 0) f.c_.emplace(0, cc);
  f.normalize();
  return f;
}

PrecSeries PrecSeries::monomial(const RamBase* B, const Fq& c, std::int64_t a, std::int64_t i,
                                std::int64_t zprec, std::int64_t zq) {
  PrecSeries f(B, zprec, zq);
  f.set_coeff(i, RamElem::monomial(B, c, a, zq));
  return f;
}

RamElem PrecSeries::coeff(std::int64_t i) const {
  auto it = c_.find(i);
  if (it != c_.end()) return it->second;
  return RamElem::zero(B_, zq_);
}

void PrecSeries::set_coeff(std::int64_t i, const RamElem& v) {
  if (i >= zprec_) return;
  RamElem vv = v.rebase(B_);
  zq_ = std::min(zq_, vv.prec());
  if (vv.is_zero())
    c_.erase(i);
  else
    c_.emplace(i, vv).first->second = vv;
}

void PrecSeries::add_term(std::int64_t i, const RamElem& v) {
  if (i >= zprec_) return;
  RamElem vv = v.rebase(B_);
  zq_ = std::min(zq_, vv.prec());
  auto it = c_.find(i);
  if (it == c_.end()) {
    if (!vv.is_zero()) c_.emplace(i, vv);
  } else {
    it->second = it->second + vv;
    if (it->second.is_zero()) c_.erase(it);
  }
}

void PrecSeries::normalize() {
  for (auto& [i, v] : c_) zq_ = std::min(zq_, v.prec());
  for (auto it = c_.begin(); it != c_.end();) {
    if (it->first >= zprec_) {
      it = c_.erase(it);
      continue;
    }
    it->second = it->second.truncate(zq_);
    if (it->second.is_zero())
      it = c_.erase(it);
    else
      ++it;
  }
}

std::optional<std::int64_t> PrecSeries::ord_z() const {
  if (c_.empty()) return std::nullopt;
  return c_.begin()->first;
}

PrecSeries PrecSeries::rebase(const RamBase* B2) const {
  if (B2 == B_) return *this;
  std::int64_t s = B2->D / B_->D;
  PrecSeries r(B2, zprec_, zq_ >= kExactPrec ? kExactPrec : zq_ * s);
  for (auto& [i, v] : c_) r.c_.emplace(i, v.rebase(B2).truncate(r.zq_));
  r.tail_val_ = tail_val_;
  r.truncated_low_ = truncated_low_;
  return r;
}

static const RamBase* series_common(const PrecSeries& a, const PrecSeries& b) {
  return a.base()->ctx->common(a.base(), b.base());
}

PrecSeries PrecSeries::operator+(const PrecSeries& o) const {
  const RamBase* BB = series_common(*this, o);
  PrecSeries x = rebase(BB), y = o.rebase(BB);
  PrecSeries r(BB, std::min(x.zprec_, y.zprec_), std::min(x.zq_, y.zq_));
  r.tail_val_ = std::min(x.tail_val_, y.tail_val_);
  r.truncated_low_ = x.truncated_low_ || y.truncated_low_;
  for (auto& [i, v] : x.c_) r.add_term(i, v);
  for (auto& [i, v] : y.c_) r.add_term(i, v);
  r.normalize();
  return r;
}

PrecSeries PrecSeries::operator-() const {
  PrecSeries r = *this;
  for (auto& [i, v] : r.c_) v = -v;
  return r;
}

PrecSeries PrecSeries::operator-(const PrecSeries& o) const { return *this + (-o); }

// min zeta-valuation over visible monomials (and the truncation floor)
static Rat series_val_lower(const PrecSeries& f) {
  Rat v(f.zq() >= kExactPrec ? kExactPrec : f.zq(), f.base()->D);
  for (auto& [i, c] : f.terms()) v = std::min(v, c.val_lower());
  return std::min(v, f.tail_val());
}

PrecSeries PrecSeries::operator*(const PrecSeries& o) const {
  const RamBase* BB = series_common(*this, o);
  PrecSeries x = rebase(BB), y = o.rebase(BB);
  std::int64_t lox = x.c_.empty() ? x.zprec_ : x.c_.begin()->first;
  std::int64_t loy = y.c_.empty() ? y.zprec_ : y.c_.begin()->first;
  std::int64_t zp = std::min(x.zprec_ + loy, y.zprec_ + lox);
  PrecSeries r(BB, zp, std::min(x.zq_, y.zq_));
  Rat vx = series_val_lower(x), vy = series_val_lower(y);
  r.tail_val_ = std::min(std::min(vx + y.tail_val_, vy + x.tail_val_), vx + vy);
  r.truncated_low_ = x.truncated_low_ || y.truncated_low_;
  for (auto& [i, a] : x.c_)
    for (auto& [j, b] : y.c_) {
      if (i + j >= zp) continue;
      r.add_term(i + j, a * b);
    }
  r.normalize();
  return r;
}

PrecSeries PrecSeries::scale(const RamElem& c) const {
  PrecSeries r(B_, zprec_, zq_);
  r.tail_val_ = tail_val_ + c.val_lower();
  r.truncated_low_ = truncated_low_;
  for (auto& [i, v] : c_) r.add_term(i, v * c);
  r.normalize();
  return r;
}

PrecSeries PrecSeries::shift_z(std::int64_t e) const {
  PrecSeries r(B_, zprec_ + e, zq_);
  r.tail_val_ = tail_val_;
  r.truncated_low_ = truncated_low_;
  for (auto& [i, v] : c_) r.c_.emplace(i + e, v);
  return r;
}

PrecSeries PrecSeries::sigma(int t) const {
  PrecSeries r(B_, zprec_, zq_);
  r.truncated_low_ = truncated_low_;
  std::int64_t qt = 1;
  for (int i = 0; i < std::abs(t); ++i) qt *= B_->ctx->q();
  r.tail_val_ = t >= 0 ? tail_val_ * Rat(qt) : tail_val_ / Rat(qt);
  const RamBase* BB = B_;
  for (auto& [i, v] : c_) {
    RamElem w = v.sigma(t);
    BB = B_->ctx->common(BB, w.base());
  }
  r = PrecSeries(BB, zprec_, zq_ >= kExactPrec ? kExactPrec : (t >= 0 ? zq_ * qt : zq_ / qt));
  r.truncated_low_ = truncated_low_;
  r.tail_val_ = t >= 0 ? tail_val_ * Rat(qt) : tail_val_ / Rat(qt);
  for (auto& [i, v] : c_) r.add_term(i, v.sigma(t));
  r.normalize();
  return r;
}

PrecSeries PrecSeries::truncate_z(std::int64_t zprec) const {
  PrecSeries r = *this;
  r.zprec_ = std::min(r.zprec_, zprec);
  r.normalize();
  return r;
}

PrecSeries PrecSeries::truncate_zeta(std::int64_t zq) const {
  PrecSeries r = *this;
  r.zq_ = std::min(r.zq_, zq);
  r.normalize();
  return r;
}

PrecSeries PrecSeries::inv_power_series() const {
  auto o = ord_z();
  if (!o || *o != 0) throw NotInvertible("not a unit power series");
  RamElem c0 = coeff(0);
  RamElem i0 = c0.inv();
  PrecSeries r(B_, zprec_, std::min(zq_, i0.prec()));
  r.set_coeff(0, i0);
  for (std::int64_t n = 1; n < zprec_; ++n) {
    RamElem acc = RamElem::zero(B_, zq_);
    for (auto& [j, v] : c_) {
      if (j < 1 || j > n) continue;
      acc = acc + v * r.coeff(n - j);
    }
    if (!acc.is_zero()) r.set_coeff(n, -(i0 * acc));
  }
  r.normalize();
  return r;
}

PrecSeries PrecSeries::inv_z_leading() const {
  auto o = ord_z();
  if (!o) throw NotInvertible("zero series");
  return shift_z(-*o).inv_power_series().shift_z(-*o);
}

PrecSeries PrecSeries::inv_graded(const Rat& r) const {
  if (c_.empty()) throw NotInvertible("zero series");
  // find the strictly dominant monomial
  Rat best(kExactPrec);
  std::int64_t bi = 0, ba = 0;
  Fq bc = B_->ctx->tower().zero(B_->m);
  bool have = false;
  for (auto& [i, v] : c_)
    for (auto& [a, cf] : v.terms()) {
      Rat e = Rat(a, B_->D) + r * Rat(i);
      if (!have || e < best) {
        best = e;
        bi = i;
        ba = a;
        bc = cf;
        have = true;
      }
    }
  // verify strict dominance and compute the gain
  Rat gain(kExactPrec);
  for (auto& [i, v] : c_)
    for (auto& [a, cf] : v.terms()) {
      if (i == bi && a == ba) continue;
      Rat e = Rat(a, B_->D) + r * Rat(i) - best;
      if (e.num == 0) throw NotInvertible("no strictly dominant monomial for graded inversion");
      gain = std::min(gain, e);
    }
  // u = lead^{-1}; rest = 1 - u*f, every monomial of rest has positive grade
  std::int64_t out_zprec = std::max<std::int64_t>(zprec_ - 2 * bi, -bi + 1);
  std::int64_t zq_eff = zq_ >= kExactPrec ? zprec_ * std::max<std::int64_t>(1, (r * Rat(B_->D)).ceil()) +
                                                64 * B_->D
                                          : zq_;
  PrecSeries u = monomial(B_, bc.inv(), -ba, -bi, out_zprec, zq_eff);
  PrecSeries rest = PrecSeries::one(B_, out_zprec, zq_eff) - (u * *this);
  PrecSeries acc = PrecSeries::one(B_, out_zprec, zq_eff);
  PrecSeries pw = acc;
  // every surviving monomial has grade < zq/D + r*zprec; each factor of rest
  // raises the grade by at least `gain`, so the sum is finite
  Rat emax = Rat(zq_eff, B_->D) + r * Rat(out_zprec);
  std::int64_t iters = ((emax - Rat(0)) / gain).floor() + 2;
  iters = std::min<std::int64_t>(iters, 8192);
  for (std::int64_t j = 0; j < iters; ++j) {
    pw = pw * rest;
    if (pw.is_zero()) break;
    acc = acc + pw;
  }
  PrecSeries out = u * acc;
  out.truncated_low_ = true;
  out.normalize();
  return out;
}

PrecSeries::NormValue PrecSeries::norm(const Rat& r) const {
  NormValue nv{Rat(0), false, false};
  if (c_.empty()) {
    nv.infinite = true;
    nv.exponent = Rat(zq_ >= kExactPrec ? kExactPrec : zq_, B_->D);
    return nv;
  }
  bool have = false;
  Rat best(0);
  bool best_exact = true;
  for (auto& [i, v] : c_) {
    auto va = v.val();
    Rat e = v.val_lower() + r * Rat(i);
    if (!have || e < best) {
      best = e;
      best_exact = va.has_value();
      have = true;
    }
  }
  // truncation bounds that could beat the stored minimum
  std::int64_t lo = c_.begin()->first;
  Rat b1 = Rat(zq_ >= kExactPrec ? kExactPrec : zq_, B_->D) + r * Rat(lo);
  Rat b2 = tail_val_ + r * Rat(zprec_);
  nv.exponent = best;
  nv.exact = best_exact && best < b1 && best < b2 && !truncated_low_;
  if (zq_ >= kExactPrec && !truncated_low_) nv.exact = best_exact && best < b2;
  return nv;
}

ZetaJet PrecSeries::reexpand_at_power(std::int64_t ac, int E) const {
  if (truncated_low_)
    throw InsufficientPrecision("re-expansion of a series with a cut descending tail");
  if (ac < 1) throw InternalError("re-expansion center must have positive valuation");
  ZetaJet jet(B_, E);
  int p = B_->ctx->p();
  std::vector<RamElem> acc(E, RamElem::zero(B_));
  for (auto& [i, b] : c_) {
    for (int rho = 0; rho < E; ++rho) {
      int bc = binom_mod_p(i, rho, p);
      if (!bc) continue;
      RamElem term = b.scale_zeta((i - rho) * ac);
      if (bc != 1) term = term * RamElem::from_fq(B_, B_->ctx->tower().from_int(B_->m, bc));
      acc[rho] = acc[rho] + term;
    }
  }
  // precision: coefficient truncation at the lowest z index, plus the z tail
  std::int64_t lo = c_.empty() ? 0 : c_.begin()->first;
  for (int rho = 0; rho < E; ++rho) {
    std::int64_t p1 = zq_ >= kExactPrec ? kExactPrec : zq_ + (lo - rho) * ac;
    Rat t2 = tail_val_ + Rat((zprec_ - rho) * ac, B_->D);
    std::int64_t p2 = (t2 * Rat(B_->D)).floor();
    std::int64_t pr = std::min(p1, p2);
    if (pr <= -(kExactPrec >> 1))
      throw InsufficientPrecision("jet coefficient " + std::to_string(rho) + " undetermined");
    jet.y[rho] = acc[rho].truncate(pr);
  }
  return jet;
}

ZetaJet PrecSeries::reexpand_at_zeta(int E) const { return reexpand_at_power(B_->D, E); }

std::string PrecSeries::str() const {
  if (c_.empty()) return "0";
  std::string s;
  for (auto& [i, v] : c_) {
    if (!s.empty()) s += " + ";
    std::string cs = v.str();
    if (cs.find(' ') != std::string::npos || cs.find('+') != std::string::npos) cs = "(" + cs + ")";
    if (i == 0) {
      s += cs;
    } else {
      if (cs != "1") s += cs + "*";
      s += "z^" + std::to_string(i);
    }
  }
  return s;
}

// --- special elements ---

PrecSeries t_function(const RamBase* B, std::int64_t zprec, std::int64_t zq) {
  PrecSeries t = PrecSeries::one(B, zprec, zq);
  std::int64_t q = B->ctx->q();
  // factor i contributes zeta^{q^i}; beyond the precision it is 1
  for (std::int64_t e = B->D; e < zq; e *= q) {
    PrecSeries f = PrecSeries::one(B, zprec, zq) -
                   PrecSeries::monomial(B, B->ctx->tower().one(B->m), e, -1, zprec, zq);
    t = t * f;
  }
  return t;
}

PrecSeries f_alpha(const RamElem& alpha, int lo, int hi, std::int64_t zprec, std::int64_t zq) {
  RamElem a = alpha;
  const RamBase* B = a.base();
  PrecSeries f = PrecSeries::one(B, zprec, zq);
  RamElem pw = a;
  for (int v = 0; v <= hi; ++v) {
    PrecSeries factor =
        PrecSeries::one(pw.base(), zprec, zq) - PrecSeries::from_ram(pw.base(), pw, zprec).shift_z(-1);
    f = f * factor;
    pw = pw.sigma();
    if (pw.val_lower() >= Rat(zq, B->D)) break;  // further factors are 1 at precision
  }
  pw = a;
  for (int v = -1; v >= lo; --v) {
    pw = pw.qth_root();
    PrecSeries factor = PrecSeries::one(pw.base(), zprec, zq) -
                        PrecSeries::from_ram(pw.base(), pw.inv(), zprec).shift_z(1);
    f = f * factor;
  }
  return f;
}

namespace {

// eta with a*eta^q + b*eta = c over the residue field, extending the level if
// needed (the map is F_p-linear).
Fq solve_additive_fq(const FieldTower& T, const Fq& a0, const Fq& b0, const Fq& c0, int max_mult = 8) {
  int m = c0.level();
  for (int j = 1; j <= max_mult; ++j) {
    int M = m * j;
    if (M * T.k() > T.max_degree()) break;
    Fq a = T.embed(a0, M), b = T.embed(b0, M), c = T.embed(c0, M);
    const FieldLevel* L = T.level(M);
    int d = L->deg;
    // matrix of x -> a x^q + b x over F_p
    FpMat frob(T.p(), d, d);
    frob.a = L->frob_mat;
    FpMat Q = frob;
    for (int i = 1; i < T.k(); ++i) Q = Q.mul(frob);
    FpMat sys(T.p(), d, d);
    for (int col = 0; col < d; ++col) {
      // basis vector e_col -> a*(e_col)^q + b*e_col
      Poly e(col + 1, 0);
      e[col] = 1;
      Fq x = T.from_coeffs(M, e);
      Fq img = a * x.frobenius() + b * x;
      const Poly& ic = img.coeffs();
      for (int i = 0; i < d; ++i) sys.at(i, col) = i < static_cast<int>(ic.size()) ? ic[i] : 0;
    }
    std::vector<std::uint8_t> rhs(d, 0);
    const Poly& cc = c.coeffs();
    for (size_t i = 0; i < cc.size(); ++i) rhs[i] = cc[i];
    auto sol = sys.solve(rhs);
    if (sol) return T.from_coeffs(M, Poly(sol->begin(), sol->end()));
  }
  throw ExtensionBudgetExceeded("additive equation unsolvable within the level cap");
}

}  // namespace

RamElem solve_qplus_zeta(const RamElem& c) {
  // x^q + zeta x = c, solved greedily by valuation.
  const Context* ctx = c.base()->ctx;
  std::int64_t q = ctx->q();
  RamElem x = RamElem::zero(c.base(), c.prec());
  RamElem res = c;
  Rat crossover(q, q - 1);
  int guard = 0;
  while (!res.is_zero()) {
    if (++guard > 4096) throw NoConvergence("valuation-greedy solve stalled");
    const RamBase* B = res.base();
    auto it = res.terms().begin();
    std::int64_t a = it->first;
    Fq gamma = it->second;
    Rat v(a, B->D);
    RamElem delta;
    if (v < crossover) {
      // x^q-dominant: delta = gamma^{1/q} zeta^{v/q}
      delta = RamElem::monomial(B, gamma, a, res.prec()).qth_root();
    } else if (v > crossover) {
      // zeta x-dominant: delta = gamma zeta^{v-1}
      delta = RamElem::monomial(B, gamma, a - B->D, res.prec());
    } else {
      // both terms bite: eta^q + eta = gamma at the residue level
      if (a % q != 0) {
        const RamBase* Bq = ctx->base(B->m, B->D * q, B->qdiv_tower);
        res = res.rebase(Bq);
        x = x.rebase(Bq);
        continue;
      }
      Fq eta = solve_additive_fq(ctx->tower(), ctx->tower().one(gamma.level()),
                                 ctx->tower().one(gamma.level()), gamma);
      const RamBase* Be = ctx->base(std::lcm(B->m, eta.level()), B->D, B->qdiv_tower);
      delta = RamElem::monomial(Be, eta, a / q, res.prec());
    }
    RamElem dq = delta;
    for (std::int64_t i = 1; i < q; ++i) dq = dq * delta;
    RamElem zeta_delta = delta.scale_zeta(delta.base()->D);
    auto [r2, sub] = common(res, dq + zeta_delta);
    res = r2 - sub;
    auto [x2, d2] = common(x, delta);
    x = x2 + d2;
  }
  return x;
}

std::vector<RamElem> frobenius_chain(const RamElem& h0, int steps) {
  std::vector<RamElem> out{h0};
  for (int i = 0; i < steps; ++i) out.push_back(solve_qplus_zeta(out.back()));
  return out;
}

PrecSeries o_d_invariant(int d, const std::vector<RamElem>& u, int step_s, std::int64_t zprec,
                         std::int64_t zq) {
  if (d <= 0 || u.size() != static_cast<size_t>(d)) throw InternalError("o_d_invariant: bad shape");
  const RamBase* B = u[0].base();
  for (auto& uj : u) B = B->ctx->common(B, uj.base());
  PrecSeries f = PrecSeries::zero(B, zprec, zq);
  std::int64_t q = B->ctx->q();
  std::int64_t qs = 1;
  for (int i = 0; i < step_s; ++i) qs *= q;
  // v >= 0: stop when the valuation passes the zeta precision
  for (int j = 0; j < d; ++j) {
    RamElem uj = u[j].rebase(B);
    if (uj.is_zero()) continue;
    RamElem pw = uj;
    for (int v = 0;; ++v) {
      std::int64_t zi = -static_cast<std::int64_t>(d) * v + j;
      if (zi >= zprec) break;
      f.add_term(zi, pw);
      if (pw.val_lower() * Rat(qs) >= Rat(zq, pw.base()->D)) break;
      pw = pw.sigma(step_s);
      if (pw.is_zero()) break;
    }
    // v < 0: ascending z powers. Each step may multiply the ramification by
    // q^s, so the window is cut by the z precision, by the point where the
    // re-expansion jets of the hidden terms fall below the zeta precision,
    // and by the ramification budget.
    pw = uj;
    std::int64_t zi_cap = std::min<std::int64_t>(zprec, zq / B->D + 12);
    for (int v = -1;; --v) {
      std::int64_t zi = -static_cast<std::int64_t>(d) * v + j;
      if (zi >= zi_cap) break;
      std::int64_t worst = pw.base()->D;
      for (int i = 0; i < step_s; ++i) worst *= q;
      if (worst > B->ctx->ram_budget()) break;
      pw = pw.sigma(-step_s);
      f.add_term(zi, pw);
    }
  }
  f.normalize();
  return f;
}

}  // namespace hpk
