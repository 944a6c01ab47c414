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

#include "hodgepink/ram.hpp"

#include <algorithm>
#include <numeric>

namespace hpk {

Context::Context(int p, int k, int max_degree, std::int64_t ram_budget)
    : tower_(p, k, max_degree), ram_budget_(ram_budget) {}

const RamBase* Context::base(int m, std::int64_t D, bool qdiv_tower) const {
  if (D < 1 || D > ram_budget_)
    throw RamificationBudgetExceeded("requested ramification index " + std::to_string(D) +
                                     " exceeds budget " + std::to_string(ram_budget_));
  tower_.level(m);
  std::lock_guard<std::mutex> lk(mu_);
  auto key = std::make_tuple(m, D, qdiv_tower);
  auto it = bases_.find(key);
  if (it != bases_.end()) return it->second.get();
  auto b = std::make_unique<RamBase>();
  b->ctx = this;
  b->m = m;
  b->D = D;
  b->qdiv_tower = qdiv_tower;
  const RamBase* ptr = b.get();
  bases_[key] = std::move(b);
  return ptr;
}

const RamBase* Context::common(const RamBase* a, const RamBase* b) const {
  if (a == b) return a;
  return base(std::lcm(a->m, b->m), std::lcm(a->D, b->D), a->qdiv_tower || b->qdiv_tower);
}

void RamElem::normalize() {
  for (auto it = c_.begin(); it != c_.end();) {
    if (it->first >= prec_ || it->second.is_zero())
      it = c_.erase(it);
    else
      ++it;
  }
}

void RamElem::add_term(std::int64_t a, const Fq& coeff) {
  if (a >= prec_) return;
  auto it = c_.find(a);
  if (it == c_.end()) {
    if (!coeff.is_zero()) c_.emplace(a, coeff);
  } else {
    it->second = it->second + coeff;
    if (it->second.is_zero()) c_.erase(it);
  }
}

RamElem RamElem::from_fq(const RamBase* B, const Fq& c, std::int64_t prec) {
  return monomial(B, c, 0, prec);
}

RamElem RamElem::monomial(const RamBase* B, const Fq& c, std::int64_t a, std::int64_t prec) {
  RamElem r(B, prec);
  Fq cc = B->ctx->tower().embed(c, B->m);
  r.add_term(a, cc);
  return r;
}

std::optional<Rat> RamElem::val() const {
  if (c_.empty()) return std::nullopt;
  return Rat(c_.begin()->first, B_->D);
}

Rat RamElem::val_lower() const {
  if (c_.empty()) return Rat(prec_, B_->D);
  return Rat(std::min(c_.begin()->first, prec_), B_->D);
}

Fq RamElem::leading_coeff() const {
  if (c_.empty()) throw PrecisionLoss("leading coefficient of zero-at-precision element");
  return c_.begin()->second;
}

RamElem RamElem::rebase(const RamBase* B2) const {
  if (B_ == B2) return *this;
  if (B2->m % B_->m != 0 || B2->D % B_->D != 0)
    throw InternalError("rebase target is not a refinement");
  std::int64_t s = B2->D / B_->D;
  RamElem r(B2, prec_ >= kExactPrec ? kExactPrec : prec_ * s);
  const FieldTower& T = B_->ctx->tower();
  for (auto& [a, coeff] : c_) r.add_term(a * s, T.embed(coeff, B2->m));
  return r;
}

std::pair<RamElem, RamElem> common(const RamElem& a, const RamElem& b) {
  const RamBase* B = a.base()->ctx->common(a.base(), b.base());
  return {a.rebase(B), b.rebase(B)};
}

RamElem RamElem::operator+(const RamElem& o) const {
  auto [x, y] = common(*this, o);
  RamElem r(x.base(), std::min(x.prec(), y.prec()));
  for (auto& [a, cf] : x.terms()) r.add_term(a, cf);
  for (auto& [a, cf] : y.terms()) r.add_term(a, cf);
  return r;
}

RamElem RamElem::operator-() const {
  RamElem r(B_, prec_);
  for (auto& [a, cf] : c_) r.add_term(a, -cf);
  return r;
}

RamElem RamElem::operator-(const RamElem& o) const { return *this + (-o); }

RamElem RamElem::operator*(const RamElem& o) const {
  auto [x, y] = common(*this, o);
  // precision of the product: min(px + vy, py + vx) in 1/D units
  std::int64_t vx = x.terms().empty() ? x.prec() : x.terms().begin()->first;
  std::int64_t vy = y.terms().empty() ? y.prec() : y.terms().begin()->first;
  std::int64_t prec = std::min(x.prec() >= kExactPrec ? kExactPrec : x.prec() + vy,
                               y.prec() >= kExactPrec ? kExactPrec : y.prec() + vx);
  prec = std::min(prec, kExactPrec);
  RamElem r(x.base(), prec);
  for (auto& [a, ca] : x.terms())
    for (auto& [b, cb] : y.terms()) r.add_term(a + b, ca * cb);
  return r;
}

RamElem RamElem::inv() const {
  if (c_.empty()) throw NotInvertible("inverse of zero-at-precision element");
  std::int64_t va = c_.begin()->first;
  Fq lead = c_.begin()->second;
  Fq il = lead.inv();
  // x = lead zeta^va (1 + rest), val rest > 0
  RamElem u = monomial(B_, il, -va);
  std::int64_t rest_prec = prec_ >= kExactPrec ? kExactPrec : prec_ - va;
  RamElem rest(B_, rest_prec);
  for (auto it = std::next(c_.begin()); it != c_.end(); ++it)
    rest.add_term(it->first - va, il * it->second);
  std::int64_t out_prec = prec_ >= kExactPrec ? kExactPrec : prec_ - 2 * va;
  if (rest.is_zero()) return u.truncate(out_prec);
  std::int64_t delta = rest.terms().begin()->first;
  std::int64_t span = rest_prec >= kExactPrec ? (rest.terms().rbegin()->first + 1) * 64 : rest_prec;
  RamElem acc = from_fq(B_, B_->ctx->tower().one(B_->m), rest_prec);
  RamElem pw = acc;
  for (std::int64_t j = 1; j * delta < span; ++j) {
    pw = pw * (-rest);
    if (pw.is_zero()) break;
    acc = acc + pw;
  }
  return (u * acc).truncate(out_prec);
}

RamElem RamElem::sigma(int t) const {
  if (t == 0) return *this;
  if (t < 0) {
    RamElem r = *this;
    for (int i = 0; i < -t; ++i) r = r.qth_root();
    return r;
  }
  std::int64_t qt = 1;
  for (int i = 0; i < t; ++i) qt *= B_->ctx->q();
  RamElem r(B_, prec_ >= kExactPrec ? kExactPrec : prec_ * qt);
  for (auto& [a, cf] : c_) r.add_term(a * qt, cf.frobenius(t));
  return r;
}

RamElem RamElem::qth_root() const {
  std::int64_t q = B_->ctx->q();
  bool needs_ram = false;
  for (auto& [a, cf] : c_)
    if (a % q != 0) needs_ram = true;
  const RamElem* src = this;
  RamElem lifted;
  if (needs_ram) {
    lifted = rebase(B_->ctx->base(B_->m, B_->D * q, B_->qdiv_tower));
    src = &lifted;
  }
  std::int64_t pr = src->prec_ >= kExactPrec
                        ? kExactPrec
                        : (src->prec_ >= 0 ? (src->prec_ + q - 1) / q : src->prec_ / q);
  RamElem r(src->B_, pr);
  for (auto& [a, cf] : src->c_) r.add_term(a / q, cf.frobenius(-1));
  return r;
}

RamElem RamElem::scale_zeta(std::int64_t a) const {
  std::int64_t pr = prec_ >= kExactPrec ? kExactPrec : prec_ + a;
  RamElem r(B_, std::min(pr, kExactPrec));
  for (auto& [e, cf] : c_) r.add_term(e + a, cf);
  return r;
}

RamElem RamElem::truncate(std::int64_t new_prec) const {
  RamElem r(B_, std::min(prec_, new_prec));
  for (auto& [a, cf] : c_) r.add_term(a, cf);
  return r;
}

Fq RamElem::residue() const {
  for (auto& [a, cf] : c_)
    if (a < 0) throw ShapeViolation("residue of non-integral element");
  auto it = c_.find(0);
  if (it == c_.end()) return B_->ctx->tower().zero(B_->m);
  return it->second;
}

bool RamElem::is_integral() const { return c_.empty() || c_.begin()->first >= 0; }

std::string RamElem::str() const {
  if (c_.empty()) return "0";
  std::string s;
  for (auto& [a, cf] : c_) {
    if (!s.empty()) s += " + ";
    std::string cs = cf.str();
    if (cs.find('+') != std::string::npos) cs = "(" + cs + ")";
    if (a == 0) {
      s += cs;
    } else {
      if (cs != "1") s += cs + "*";
      s += "zt^";
      if (B_->D == 1)
        s += std::to_string(a);
      else
        s += "(" + std::to_string(a) + "/" + std::to_string(B_->D) + ")";
    }
  }
  return s;
}

}  // namespace hpk
