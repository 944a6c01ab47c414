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

#include "hodgepink/field.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>

#include "hodgepink/error.hpp"
#include "hodgepink/rng.hpp"

namespace hpk {

namespace {

// --- F_p scalar helpers ---
inline std::uint8_t mod_add(int p, std::uint8_t a, std::uint8_t b) { return static_cast<std::uint8_t>((a + b) % p); }
inline std::uint8_t mod_sub(int p, std::uint8_t a, std::uint8_t b) { return static_cast<std::uint8_t>((a + p - b) % p); }
inline std::uint8_t mod_mul(int p, std::uint8_t a, std::uint8_t b) { return static_cast<std::uint8_t>((a * b) % p); }
std::uint8_t mod_inv(int p, std::uint8_t a) {
  // p is tiny; brute force
  for (int x = 1; x < p; ++x)
    if ((a * x) % p == 1) return static_cast<std::uint8_t>(x);
  throw NotInvertible("zero in F_p");
}

// --- F_p[x] helpers ---
void ptrim(Poly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

Poly padd(int p, const Poly& f, const Poly& g) {
  Poly r(std::max(f.size(), g.size()), 0);
  for (size_t i = 0; i < r.size(); ++i) {
    std::uint8_t a = i < f.size() ? f[i] : 0, b = i < g.size() ? g[i] : 0;
    r[i] = mod_add(p, a, b);
  }
  ptrim(r);
  return r;
}

Poly psub(int p, const Poly& f, const Poly& g) {
  Poly r(std::max(f.size(), g.size()), 0);
  for (size_t i = 0; i < r.size(); ++i) {
    std::uint8_t a = i < f.size() ? f[i] : 0, b = i < g.size() ? g[i] : 0;
    r[i] = mod_sub(p, a, b);
  }
  ptrim(r);
  return r;
}

Poly pmul(int p, const Poly& f, const Poly& g) {
  if (f.empty() || g.empty()) return {};
  std::vector<int> acc(f.size() + g.size() - 1, 0);
  for (size_t i = 0; i < f.size(); ++i) {
    if (!f[i]) continue;
    for (size_t j = 0; j < g.size(); ++j) acc[i + j] += f[i] * g[j];
  }
  Poly r(acc.size());
  for (size_t i = 0; i < acc.size(); ++i) r[i] = static_cast<std::uint8_t>(acc[i] % p);
  ptrim(r);
  return r;
}

// f mod g (g monic)
Poly pmod(int p, Poly f, const Poly& g) {
  assert(!g.empty() && g.back() == 1);
  while (f.size() >= g.size()) {
    std::uint8_t c = f.back();
    size_t shift = f.size() - g.size();
    if (c) {
      for (size_t i = 0; i < g.size(); ++i) f[shift + i] = mod_sub(p, f[shift + i], mod_mul(p, c, g[i]));
    }
    f.pop_back();
    ptrim(f);
    if (f.size() < g.size()) break;
  }
  ptrim(f);
  return f;
}

Poly pmulmod(int p, const Poly& f, const Poly& g, const Poly& mod) { return pmod(p, pmul(p, f, g), mod); }

Poly pgcd(int p, Poly a, Poly b) {
  while (!b.empty()) {
    // make b monic for pmod
    std::uint8_t lc = b.back();
    Poly bm = b;
    if (lc != 1) {
      std::uint8_t il = mod_inv(p, lc);
      for (auto& c : bm) c = mod_mul(p, c, il);
    }
    Poly r = pmod(p, a, bm);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty() && a.back() != 1) {
    std::uint8_t il = mod_inv(p, a.back());
    for (auto& c : a) c = mod_mul(p, c, il);
  }
  return a;
}

Poly ppowmod(int p, Poly base, unsigned __int128 e, const Poly& mod) {
  Poly r{1};
  base = pmod(p, std::move(base), mod);
  while (e) {
    if (e & 1) r = pmulmod(p, r, base, mod);
    base = pmulmod(p, base, base, mod);
    e >>= 1;
  }
  return r;
}

// x^{p^j} mod f by iterated composition with x^p mod f.
Poly frob_power_x(int p, int j, const Poly& f) {
  Poly xp = ppowmod(p, Poly{0, 1}, static_cast<unsigned>(p), f);
  Poly r{0, 1};
  for (int i = 0; i < j; ++i) {
    // r(xp) mod f, Horner
    Poly acc{};
    for (size_t t = r.size(); t-- > 0;) {
      acc = pmulmod(p, acc, xp, f);
      if (r[t]) acc = padd(p, acc, Poly{r[t]});
    }
    r = std::move(acc);
  }
  return r;
}

bool is_irreducible(int p, const Poly& f) {
  int deg = static_cast<int>(f.size()) - 1;
  if (deg < 1) return false;
  // x^{p^deg} == x mod f
  Poly x{0, 1};
  if (frob_power_x(p, deg, f) != x) return false;
  // for each prime l | deg: gcd(x^{p^{deg/l}} - x, f) == 1
  int d = deg;
  for (int l = 2; l * l <= d; ++l) {
    if (d % l) continue;
    while (d % l == 0) d /= l;
    Poly g = pgcd(p, psub(p, frob_power_x(p, deg / l, f), x), f);
    if (g.size() != 1) return false;
  }
  if (d > 1) {
    Poly g = pgcd(p, psub(p, frob_power_x(p, deg / d, f), x), f);
    if (g.size() != 1) return false;
  }
  return true;
}

}  // namespace

// --- FpMat ---

std::vector<int> FpMat::rref() {
  std::vector<int> pivots;
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int sel = -1;
    for (int i = r; i < rows; ++i)
      if (at(i, c)) {
        sel = i;
        break;
      }
    if (sel < 0) continue;
    if (sel != r)
      for (int j = 0; j < cols; ++j) std::swap(at(sel, j), at(r, j));
    std::uint8_t il = mod_inv(p, at(r, c));
    for (int j = 0; j < cols; ++j) at(r, j) = mod_mul(p, at(r, j), il);
    for (int i = 0; i < rows; ++i) {
      if (i == r || !at(i, c)) continue;
      std::uint8_t f = at(i, c);
      for (int j = 0; j < cols; ++j) at(i, j) = mod_sub(p, at(i, j), mod_mul(p, f, at(r, j)));
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

int FpMat::rank() const {
  FpMat t = *this;
  return static_cast<int>(t.rref().size());
}

std::optional<std::vector<std::uint8_t>> FpMat::solve(const std::vector<std::uint8_t>& rhs) const {
  FpMat aug(p, rows, cols + 1);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) aug.at(i, j) = at(i, j);
    aug.at(i, cols) = rhs[i];
  }
  std::vector<int> piv = aug.rref();
  for (int i = 0; i < rows; ++i) {
    bool zero = true;
    for (int j = 0; j < cols; ++j)
      if (aug.at(i, j)) {
        zero = false;
        break;
      }
    if (zero && aug.at(i, cols)) return std::nullopt;
  }
  std::vector<std::uint8_t> x(cols, 0);
  for (size_t i = 0; i < piv.size(); ++i) x[piv[i]] = aug.at(static_cast<int>(i), cols);
  return x;
}

std::vector<std::vector<std::uint8_t>> FpMat::kernel() const {
  FpMat t = *this;
  std::vector<int> piv = t.rref();
  std::vector<bool> is_piv(cols, false);
  for (int c : piv) is_piv[c] = true;
  std::vector<std::vector<std::uint8_t>> basis;
  for (int c = 0; c < cols; ++c) {
    if (is_piv[c]) continue;
    std::vector<std::uint8_t> v(cols, 0);
    v[c] = 1;
    for (size_t i = 0; i < piv.size(); ++i) v[piv[i]] = mod_sub(p, 0, t.at(static_cast<int>(i), c));
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<FpMat> FpMat::inverse() const {
  assert(rows == cols);
  FpMat aug(p, rows, 2 * cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) aug.at(i, j) = at(i, j);
    aug.at(i, cols + i) = 1;
  }
  std::vector<int> piv = aug.rref();
  if (static_cast<int>(piv.size()) != rows) return std::nullopt;
  FpMat inv(p, rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) inv.at(i, j) = aug.at(i, cols + j);
  return inv;
}

FpMat FpMat::identity(int p, int n) {
  FpMat m(p, n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

FpMat FpMat::mul(const FpMat& o) const {
  assert(cols == o.rows);
  FpMat r(p, rows, o.cols);
  for (int i = 0; i < rows; ++i)
    for (int t = 0; t < cols; ++t) {
      std::uint8_t v = at(i, t);
      if (!v) continue;
      for (int j = 0; j < o.cols; ++j) r.at(i, j) = mod_add(p, r.at(i, j), mod_mul(p, v, o.at(t, j)));
    }
  return r;
}

// --- Fq ---

const FieldTower& Fq::tower() const { return *L_->tower; }

Fq Fq::operator+(const Fq& o) const {
  assert(L_ == o.L_);
  return Fq(L_, padd(L_->tower->p(), c_, o.c_));
}

Fq Fq::operator-(const Fq& o) const {
  assert(L_ == o.L_);
  return Fq(L_, psub(L_->tower->p(), c_, o.c_));
}

Fq Fq::operator-() const { return Fq(L_, psub(L_->tower->p(), {}, c_)); }

Fq Fq::operator*(const Fq& o) const {
  assert(L_ == o.L_);
  return Fq(L_, pmulmod(L_->tower->p(), c_, o.c_, L_->modulus));
}

Fq Fq::inv() const {
  if (is_zero()) throw NotInvertible("zero field element");
  // extended Euclid in F_p[x]
  int p = L_->tower->p();
  Poly r0 = L_->modulus, r1 = c_, s0{}, s1{1};
  while (!r1.empty()) {
    // monicize r1 for division, tracking the factor
    std::uint8_t lc = r1.back();
    Poly r1m = r1, s1m = s1;
    if (lc != 1) {
      std::uint8_t il = mod_inv(p, lc);
      for (auto& c : r1m) c = mod_mul(p, c, il);
      for (auto& c : s1m) c = mod_mul(p, c, il);
    }
    // divide r0 by r1m: r0 = q*r1m + r
    Poly q{};
    Poly rem = r0;
    while (rem.size() >= r1m.size() && !rem.empty()) {
      size_t shift = rem.size() - r1m.size();
      std::uint8_t cq = rem.back();
      if (q.size() < shift + 1) q.resize(shift + 1, 0);
      q[shift] = mod_add(p, q[shift], cq);
      for (size_t i = 0; i < r1m.size(); ++i)
        rem[shift + i] = mod_sub(p, rem[shift + i], mod_mul(p, cq, r1m[i]));
      ptrim(rem);
    }
    Poly s_new = psub(p, s0, pmul(p, q, s1m));
    r0 = r1m;
    s0 = s1m;
    r1 = rem;
    s1 = s_new;
  }
  // r0 = gcd (monic); must be 1
  if (r0.size() != 1) throw InternalError("gcd with modulus nontrivial");
  return Fq(L_, pmod(p, s0, L_->modulus));
}

Fq Fq::pow(std::uint64_t e) const {
  Fq r = L_->tower->one(L_->m);
  Fq b = *this;
  while (e) {
    if (e & 1) r = r * b;
    b = b * b;
    e >>= 1;
  }
  return r;
}

Fq Fq::frobenius(int t) const {
  const FieldTower& T = *L_->tower;
  int k = T.k();
  // number of p-power applications, reduced mod deg
  long long steps = static_cast<long long>(t) * k % L_->deg;
  if (steps < 0) steps += L_->deg;
  if (steps == 0 || is_zero()) return *this;
  Poly cur(c_);
  cur.resize(L_->deg, 0);
  int p = T.p();
  for (long long s = 0; s < steps; ++s) {
    Poly next(L_->deg, 0);
    for (int j = 0; j < L_->deg; ++j) {
      if (!cur[j]) continue;
      for (int i = 0; i < L_->deg; ++i) {
        std::uint8_t m = L_->frob_mat[static_cast<size_t>(i) * L_->deg + j];
        if (m) next[i] = mod_add(p, next[i], mod_mul(p, cur[j], m));
      }
    }
    cur = std::move(next);
  }
  return Fq(L_, std::move(cur));
}

bool Fq::operator==(const Fq& o) const {
  assert(L_ == o.L_);
  return c_ == o.c_;
}

bool Fq::lex_less(const Fq& o) const {
  // compare as little-endian digit vectors padded to deg
  for (int i = L_->deg - 1; i >= 0; --i) {
    std::uint8_t a = i < static_cast<int>(c_.size()) ? c_[i] : 0;
    std::uint8_t b = i < static_cast<int>(o.c_.size()) ? o.c_[i] : 0;
    if (a != b) return a < b;
  }
  return false;
}

std::string Fq::str() const {
  if (is_zero()) return "0";
  std::string s;
  for (int i = static_cast<int>(c_.size()) - 1; i >= 0; --i) {
    if (!c_[i]) continue;
    if (!s.empty()) s += "+";
    if (i == 0) {
      s += std::to_string(static_cast<int>(c_[i]));
    } else {
      if (c_[i] != 1) s += std::to_string(static_cast<int>(c_[i])) + "*";
      s += "g";
      if (i > 1) s += "^" + std::to_string(i);
    }
  }
  return s;
}

// --- FieldTower ---

FieldTower::FieldTower(int p, int k, int max_degree) : p_(p), k_(k), max_degree_(max_degree) {
  q_ = 1;
  for (int i = 0; i < k; ++i) q_ *= p;
  level(1);
}

const FieldLevel* FieldTower::level(int m) const {
  if (m >= 1 && m <= kMaxLevels) {
    const FieldLevel* fast = level_cache_[m].load(std::memory_order_acquire);
    if (fast) return fast;
  }
  std::lock_guard<std::recursive_mutex> lk(mu_);
  return level_locked(m);
}

const FieldLevel* FieldTower::level_locked(int m) const {
  auto it = levels_.find(m);
  if (it != levels_.end()) return it->second.get();
  if (m < 1 || m * k_ > max_degree_)
    throw ExtensionBudgetExceeded("field level " + std::to_string(m) + " exceeds degree cap " +
                                  std::to_string(max_degree_));
  auto lvl = std::make_unique<FieldLevel>();
  lvl->tower = this;
  lvl->m = m;
  lvl->deg = m * k_;
  lvl->modulus = find_irreducible(lvl->deg);
  // p-power matrix and inverse
  int d = lvl->deg;
  FpMat F(p_, d, d);
  Poly xp = ppowmod(p_, Poly{0, 1}, static_cast<unsigned>(p_), lvl->modulus);
  Poly col{1};
  for (int j = 0; j < d; ++j) {
    for (int i = 0; i < d; ++i) F.at(i, j) = i < static_cast<int>(col.size()) ? col[i] : 0;
    col = pmulmod(p_, col, xp, lvl->modulus);
  }
  auto Finv = F.inverse();
  if (!Finv) throw InternalError("Frobenius matrix not invertible");
  lvl->frob_mat = F.a;
  lvl->frob_inv_mat = Finv->a;
  const FieldLevel* ptr = lvl.get();
  levels_[m] = std::move(lvl);
  if (m <= kMaxLevels) level_cache_[m].store(ptr, std::memory_order_release);
  // close the embedding lattice: divisors first, then multiples
  std::vector<int> existing;
  for (auto& [mm, _] : levels_) existing.push_back(mm);
  for (int a : existing)
    if (a != m && m % a == 0) make_embedding_locked(a, m);
  for (int b : existing)
    if (b != m && b % m == 0) make_embedding_locked(m, b);
  return ptr;
}

Poly FieldTower::find_irreducible(int deg) const {
  if (deg == 1) return Poly{0, 1};  // x itself: F_p = F_p[x]/(x)... use x - 1? x works: F_p[x]/(x) ~ F_p
  // lexicographically smallest monic irreducible of degree deg
  std::uint64_t count = 1;
  for (int i = 0; i < deg && count < (1ULL << 62); ++i) count *= p_;
  for (std::uint64_t idx = 0; idx < count; ++idx) {
    Poly f(deg + 1, 0);
    std::uint64_t v = idx;
    for (int i = 0; i < deg; ++i) {
      f[i] = static_cast<std::uint8_t>(v % p_);
      v /= p_;
    }
    f[deg] = 1;
    if (f[0] == 0) continue;  // reducible (x divides)
    if (is_irreducible(p_, f)) return f;
  }
  throw InternalError("no irreducible polynomial found");
}

void FieldTower::make_embedding_locked(int a, int b) const {
  if (embeddings_.count({a, b})) return;
  auto store = [&](Poly img) {
    auto up = std::make_unique<Poly>(std::move(img));
    const Poly* ptr = up.get();
    embeddings_[{a, b}] = std::move(up);
    if (a <= kMaxLevels && b <= kMaxLevels)
      embed_cache_[static_cast<size_t>(a) * (kMaxLevels + 1) + b].store(ptr, std::memory_order_release);
  };
  const FieldLevel* La = levels_.at(a).get();
  const FieldLevel* Lb = levels_.at(b).get();
  if (a == 1 && k_ == 1) {
    // prime field: generator is x mod (x) = 0; embedding trivial
    store(Poly{});
    return;
  }
  // roots of modulus(a) in level b
  std::vector<Fq> f;
  f.reserve(La->modulus.size());
  for (std::uint8_t c : La->modulus) f.push_back(from_int(b, c));
  std::vector<Fq> roots = poly_roots(std::move(f));
  if (roots.empty()) throw InternalError("no root for subfield embedding");
  std::sort(roots.begin(), roots.end(), [](const Fq& x, const Fq& y) { return x.lex_less(y); });
  auto apply = [&](const Fq& r, const Poly& coeffs) {
    // evaluate coeffs (an element of level a) at r
    Fq acc = zero(b);
    for (size_t t = coeffs.size(); t-- > 0;) {
      acc = acc * r + from_int(b, coeffs[t]);
    }
    return acc;
  };
  for (const Fq& r : roots) {
    bool ok = true;
    // lower triangles: d | a with both arrows present
    for (auto& [key, img] : embeddings_) {
      if (key.b == a && a % key.a == 0) {
        auto it = embeddings_.find({key.a, b});
        if (it == embeddings_.end()) continue;
        Fq lhs = apply(r, *img);  // image in level b of gen(d) via a
        Fq rhs = Fq(Lb, *it->second);
        if (!(lhs == rhs)) {
          ok = false;
          break;
        }
      }
    }
    if (ok) {
      // intermediate triangles: a | e | b with (a,e) and (e,b) present; the
      // composite must send gen(a) to r
      for (auto& [key, img] : embeddings_) {
        if (key.a == a && key.b != b && key.b % 1 == 0 && b % key.b == 0 && key.b % a == 0) {
          int e = key.b;
          auto it = embeddings_.find({e, b});
          if (it == embeddings_.end()) continue;
          Fq gim_eb = Fq(Lb, *it->second);
          Fq acc = zero(b);
          const Poly& ge = *img;  // gen(a) inside level e
          for (size_t t = ge.size(); t-- > 0;) acc = acc * gim_eb + from_int(b, ge[t]);
          if (!(acc == r)) {
            ok = false;
            break;
          }
        }
      }
    }
    if (ok) {
      // upper triangles: b | c with embeddings (b,c) and (a,c) present
      for (auto& [key, img] : embeddings_) {
        if (key.a == b) {
          int c = key.b;
          auto it = embeddings_.find({a, c});
          if (it == embeddings_.end()) continue;
          // map r up to level c via (b,c)
          Fq r_up = zero(c);
          Fq gim = Fq(levels_.at(c).get(), *img);
          Poly rc = r.coeffs();
          for (size_t t = rc.size(); t-- > 0;) r_up = r_up * gim + from_int(c, rc[t]);
          if (!(r_up == Fq(levels_.at(c).get(), *it->second))) {
            ok = false;
            break;
          }
        }
      }
    }
    if (ok) {
      store(r.coeffs());
      return;
    }
  }
  throw InternalError("no compatible embedding found");
}

Fq FieldTower::from_int(int m, std::int64_t v) const {
  v %= p_;
  if (v < 0) v += p_;
  if (v == 0) return zero(m);
  return Fq(level(m), Poly{static_cast<std::uint8_t>(v)});
}

Fq FieldTower::generator_image(int a, int b) const {
  level(a);
  const FieldLevel* Lb = level(b);
  if (a <= kMaxLevels && b <= kMaxLevels) {
    const Poly* fast =
        embed_cache_[static_cast<size_t>(a) * (kMaxLevels + 1) + b].load(std::memory_order_acquire);
    if (fast) return Fq(Lb, *fast);
  }
  std::lock_guard<std::recursive_mutex> lk(mu_);
  auto it = embeddings_.find({a, b});
  if (it == embeddings_.end()) throw InternalError("missing embedding");
  return Fq(Lb, *it->second);
}

Fq FieldTower::embed(const Fq& x, int M) const {
  int m = x.level();
  if (m == M) return x;
  if (M % m != 0) throw InternalError("embed: level does not divide target");
  if (k_ == 1 && m == 1) {
    // prime field constant
    Poly c = x.coeffs();
    return c.empty() ? zero(M) : from_int(M, c[0]);
  }
  Fq gim = generator_image(m, M);
  Fq acc = zero(M);
  const Poly& c = x.coeffs();
  for (size_t t = c.size(); t-- > 0;) acc = acc * gim + from_int(M, c[t]);
  return acc;
}

std::optional<Fq> FieldTower::project(const Fq& x, int a) const {
  int m = x.level();
  if (m == a) return x;
  if (m % a != 0) return std::nullopt;
  const FieldLevel* La = level(a);
  Fq gim = (k_ == 1 && a == 1) ? zero(m) : generator_image(a, m);
  int deg_a = La->deg;
  int deg_m = level(m)->deg;
  FpMat sys(p_, deg_m, deg_a);
  Fq pw = one(m);
  for (int j = 0; j < deg_a; ++j) {
    const Poly& pc = pw.coeffs();
    for (int i = 0; i < deg_m; ++i) sys.at(i, j) = i < static_cast<int>(pc.size()) ? pc[i] : 0;
    pw = pw * gim;
  }
  std::vector<std::uint8_t> rhs(deg_m, 0);
  const Poly& xc = x.coeffs();
  for (size_t i = 0; i < xc.size(); ++i) rhs[i] = xc[i];
  auto sol = sys.solve(rhs);
  if (!sol) return std::nullopt;
  Poly c(sol->begin(), sol->end());
  Fq y(La, std::move(c));
  // verify (solve() gives a solution of the consistent system only)
  if (!(embed(y, m) == x)) return std::nullopt;
  return y;
}

std::pair<Fq, Fq> FieldTower::common(const Fq& x, const Fq& y) const {
  int m = std::lcm(x.level(), y.level());
  return {embed(x, m), embed(y, m)};
}

Fq FieldTower::trace_to_base(const Fq& x) const {
  int m = x.level();
  Fq acc = x;
  Fq pw = x;
  for (int i = 1; i < m; ++i) {
    pw = pw.frobenius();
    acc = acc + pw;
  }
  auto down = project(acc, 1);
  if (!down) throw InternalError("trace not in base field");
  return *down;
}

std::pair<Fq, int> FieldTower::artin_schreier_solve(const Fq& c) const {
  int m = c.level();
  Fq t = trace_to_base(c);
  int target = m;
  Fq cc = c;
  if (!t.is_zero()) {
    target = m * p_;
    cc = embed(c, target);
  }
  const FieldLevel* L = level(target);
  int d = L->deg;
  // matrix of y -> y^q - y over F_p
  FpMat frob(p_, d, d);
  frob.a = L->frob_mat;
  FpMat M = frob;
  for (int i = 1; i < k_; ++i) M = M.mul(frob);
  for (int i = 0; i < d; ++i) M.at(i, i) = mod_sub(p_, M.at(i, i), 1);
  std::vector<std::uint8_t> rhs(d, 0);
  const Poly& pc = cc.coeffs();
  for (size_t i = 0; i < pc.size(); ++i) rhs[i] = pc[i];
  auto sol = M.solve(rhs);
  if (!sol) throw InternalError("Artin-Schreier equation unsolvable after trace fix");
  Poly yc(sol->begin(), sol->end());
  return {Fq(L, std::move(yc)), target};
}

std::vector<Fq> FieldTower::poly_roots(std::vector<Fq> poly) const {
  // trim and monicize
  while (!poly.empty() && poly.back().is_zero()) poly.pop_back();
  if (poly.size() <= 1) return {};
  const FieldLevel* L = poly[0].level_ptr();
  int m = L->m;
  Fq ilc = poly.back().inv();
  for (auto& c : poly) c = c * ilc;
  if (poly.size() == 2) return {-poly[0]};

  auto polymod = [&](std::vector<Fq> f, const std::vector<Fq>& g) {
    while (f.size() >= g.size()) {
      Fq c = f.back();
      size_t shift = f.size() - g.size();
      if (!c.is_zero())
        for (size_t i = 0; i < g.size(); ++i) f[shift + i] = f[shift + i] - c * g[i];
      f.pop_back();
      while (!f.empty() && f.back().is_zero()) f.pop_back();
      if (f.size() < g.size()) break;
    }
    return f;
  };
  auto polygcd = [&](std::vector<Fq> a, std::vector<Fq> b) {
    while (!b.empty()) {
      Fq il = b.back().inv();
      std::vector<Fq> bm = b;
      for (auto& c : bm) c = c * il;
      std::vector<Fq> r = polymod(a, bm);
      a = std::move(b);
      b = std::move(r);
    }
    if (!a.empty()) {
      Fq il = a.back().inv();
      for (auto& c : a) c = c * il;
    }
    return a;
  };
  auto polymulmod = [&](const std::vector<Fq>& f, const std::vector<Fq>& g, const std::vector<Fq>& mod) {
    std::vector<Fq> r(f.size() + g.size() - 1, zero(m));
    for (size_t i = 0; i < f.size(); ++i) {
      if (f[i].is_zero()) continue;
      for (size_t j = 0; j < g.size(); ++j) r[i + j] = r[i + j] + f[i] * g[j];
    }
    while (!r.empty() && r.back().is_zero()) r.pop_back();
    return polymod(std::move(r), mod);
  };

  // g = gcd(f, x^{|F|} - x): product of distinct linear factors over the level
  int d = L->deg;
  std::vector<Fq> x{zero(m), one(m)};
  std::vector<Fq> xq = x;
  // compute x^{p^d} mod poly by d successive p-th powers of the residue
  {
    std::vector<Fq> cur = polymod(x, poly);
    for (int s = 0; s < d; ++s) {
      // cur^p mod poly
      std::vector<Fq> acc{one(m)};
      for (int e = 0; e < p_; ++e) acc = polymulmod(acc, cur, poly);
      cur = std::move(acc);
    }
    xq = std::move(cur);
  }
  std::vector<Fq> diff = xq;
  diff.resize(std::max<size_t>(diff.size(), 2), zero(m));
  diff[1] = diff[1] - one(m);
  while (!diff.empty() && diff.back().is_zero()) diff.pop_back();
  std::vector<Fq> g = polygcd(poly, diff);
  std::vector<Fq> roots;
  if (g.size() <= 1) return roots;

  // split g recursively (equal-degree 1, Cantor-Zassenhaus)
  std::uint64_t seed = 0x5eedULL ^ (static_cast<std::uint64_t>(p_) << 32) ^ (static_cast<std::uint64_t>(d) << 8);
  for (std::uint8_t c : L->modulus) seed = seed * 131 + c;
  Rng rng(seed);
  std::vector<std::vector<Fq>> stack{g};
  while (!stack.empty()) {
    std::vector<Fq> h = std::move(stack.back());
    stack.pop_back();
    if (h.size() == 2) {  // x + h0
      roots.push_back(-h[0]);
      continue;
    }
    // random element a of the level
    for (int attempt = 0;; ++attempt) {
      if (attempt > 200) throw InternalError("root splitting failed");
      Poly ac(d);
      for (int i = 0; i < d; ++i) ac[i] = static_cast<std::uint8_t>(rng.below(p_));
      Fq a = from_coeffs(m, std::move(ac));
      std::vector<Fq> split;
      if (p_ == 2) {
        // trace polynomial of a*x: T = sum (a x)^{2^i}, i < d
        std::vector<Fq> ax{zero(m), a};
        std::vector<Fq> term = polymod(ax, h);
        std::vector<Fq> acc = term;
        for (int i = 1; i < d; ++i) {
          term = polymulmod(term, term, h);
          acc.resize(std::max(acc.size(), term.size()), zero(m));
          for (size_t j = 0; j < term.size(); ++j) acc[j] = acc[j] + term[j];
          while (!acc.empty() && acc.back().is_zero()) acc.pop_back();
        }
        split = polygcd(h, acc);
      } else {
        // (x+a)^{(|F|-1)/2} - 1
        unsigned __int128 e = 1;
        for (int i = 0; i < d; ++i) e *= static_cast<unsigned>(p_);
        e = (e - 1) / 2;
        std::vector<Fq> base{a, one(m)};
        std::vector<Fq> r{one(m)};
        std::vector<Fq> b = polymod(base, h);
        unsigned __int128 ee = e;
        while (ee) {
          if (ee & 1) r = polymulmod(r, b, h);
          b = polymulmod(b, b, h);
          ee >>= 1;
        }
        r.resize(std::max<size_t>(r.size(), 1), zero(m));
        r[0] = r[0] - one(m);
        while (!r.empty() && r.back().is_zero()) r.pop_back();
        split = polygcd(h, r);
      }
      if (split.size() > 1 && split.size() < h.size()) {
        // h / split
        std::vector<Fq> quot;
        {
          std::vector<Fq> rem = h;
          while (rem.size() >= split.size() && !rem.empty()) {
            Fq c = rem.back();
            size_t shift = rem.size() - split.size();
            if (quot.size() < shift + 1) quot.resize(shift + 1, zero(m));
            quot[shift] = quot[shift] + c;
            for (size_t i = 0; i < split.size(); ++i) rem[shift + i] = rem[shift + i] - c * split[i];
            while (!rem.empty() && rem.back().is_zero()) rem.pop_back();
          }
        }
        stack.push_back(std::move(split));
        stack.push_back(std::move(quot));
        break;
      }
    }
  }
  std::sort(roots.begin(), roots.end(), [](const Fq& x1, const Fq& y1) { return x1.lex_less(y1); });
  return roots;
}

Fq FieldTower::element_from_index(int m, std::uint64_t idx) const {
  const FieldLevel* L = level(m);
  Poly c(L->deg, 0);
  for (int i = 0; i < L->deg && idx; ++i) {
    c[i] = static_cast<std::uint8_t>(idx % p_);
    idx /= p_;
  }
  return Fq(L, std::move(c));
}

std::uint64_t FieldTower::level_size(int m) const {
  const FieldLevel* L = level(m);
  std::uint64_t s = 1;
  for (int i = 0; i < L->deg; ++i) {
    if (s > UINT64_MAX / static_cast<unsigned>(p_)) return UINT64_MAX;
    s *= static_cast<unsigned>(p_);
  }
  return s;
}

}  // namespace hpk
