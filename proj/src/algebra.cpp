#include "enriques/algebra.hpp"

#include <algorithm>
#include <cctype>
#include <mutex>
#include <sstream>

namespace enriques {

namespace {

// Lowest-weight irreducible polynomial of each degree (trinomial when one
// exists, else pentanomial); bit i is the coefficient of x^i.
constexpr std::uint64_t kModuli[33] = {
    0,          0x3,        0x7,        0xb,        0x13,        0x25,       0x43,
    0x83,       0x11b,      0x203,      0x409,      0x805,       0x1009,     0x201b,
    0x4021,     0x8003,     0x1002b,    0x20009,    0x40009,     0x80027,    0x100009,
    0x200005,   0x400003,   0x800021,   0x100001b,  0x2000009,   0x400001b,  0x8000027,
    0x10000003, 0x20000005, 0x40000003, 0x80000009, 0x10000008dULL};

int bit_length(std::uint64_t a) { return a == 0 ? 0 : 64 - __builtin_clzll(a); }

// GF(2)[x] arithmetic on bit vectors, used for the irreducibility test.
std::uint64_t gf2_mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m, int k) {
  std::uint64_t r = 0;
  while (b) {
    if (b & 1) r ^= a;
    b >>= 1;
    a <<= 1;
    if ((a >> k) & 1) a ^= m;
  }
  return r;
}

std::uint64_t gf2_gcd(std::uint64_t a, std::uint64_t b) {
  while (b) {
    while (a && bit_length(a) >= bit_length(b)) a ^= b << (bit_length(a) - bit_length(b));
    std::swap(a, b);
  }
  return a;
}

}  // namespace

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      out.push_back(p);
      while (n % p == 0) n /= p;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

int min_extension_for_root(std::uint64_t n) {
  if (n == 0 || n % 2 == 0) throw AlgebraError("roots of unity of even order do not exist in characteristic 2");
  if (n == 1) return 1;
  std::uint64_t r = 2 % n;
  for (int k = 1; k <= 64; ++k) {
    if (r == 1) return k;
    r = (r * 2) % n;
  }
  throw AlgebraError("order of 2 modulo n exceeds 64");
}

bool FiniteField::is_irreducible(int k, std::uint64_t m) {
  if (k < 1 || k > 32 || bit_length(m) != k + 1 || !(m & 1)) return k == 1 && m == 0x3;
  if (k == 1) return true;
  auto frob = [&](int n) {
    std::uint64_t r = 2;
    for (int i = 0; i < n; ++i) r = gf2_mulmod(r, r, m, k);
    return r;
  };
  // Rabin: x^(2^k) = x mod m, and gcd(x^(2^(k/q)) - x, m) = 1 for primes q | k.
  if (frob(k) != 2) return false;
  for (auto q : prime_factors(static_cast<std::uint64_t>(k)))
    if (gf2_gcd(m, frob(k / static_cast<int>(q)) ^ 2) != 1) return false;
  return true;
}

std::uint64_t FiniteField::shipped_modulus(int k) {
  if (k < 1 || k > 32) throw AlgebraError("field degree must be in [1, 32]");
  return kModuli[k];
}

FiniteField::FiniteField(int k) : FiniteField(k, shipped_modulus(k)) {}

FiniteField::FiniteField(int k, std::uint64_t modulus) : k_(k), mod_(modulus) {
  if (!is_irreducible(k, modulus)) throw AlgebraError("modulus is not irreducible of degree " + std::to_string(k));
}

Elem FiniteField::mul(Elem a, Elem b) const {
  if (k_ == 1) return a & b;
  Elem r = 0;
  while (b) {
    if (b & 1) r ^= a;
    b >>= 1;
    a <<= 1;
    if ((a >> k_) & 1) a ^= mod_;
  }
  return r;
}

Elem FiniteField::pow(Elem a, std::uint64_t e) const {
  Elem r = 1;
  while (e) {
    if (e & 1) r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}

Elem FiniteField::inv(Elem a) const {
  if (a == 0) throw AlgebraError("inverse of zero");
  return pow(a, size() - 2 == 0 ? 1 : size() - 2);
}

Elem FiniteField::sqrt(Elem a) const {
  for (int i = 0; i + 1 < k_; ++i) a = mul(a, a);
  return a;
}

Elem FiniteField::random_nonzero(std::mt19937_64& rng) const {
  for (;;) {
    Elem e = random_element(rng);
    if (e) return e;
  }
}

Elem FiniteField::generator() const {
  if (gen_) return gen_;
  const std::uint64_t n = size() - 1;
  if (n == 1) return gen_ = 1;
  auto ps = prime_factors(n);
  for (Elem g = 2; g < size(); ++g) {
    bool ok = true;
    for (auto p : ps)
      if (pow(g, n / p) == 1) { ok = false; break; }
    if (ok) return gen_ = g;
  }
  throw AlgebraError("no primitive element found");
}

std::uint64_t FiniteField::order_of(Elem a) const {
  if (a == 0) throw AlgebraError("zero has no multiplicative order");
  std::uint64_t n = size() - 1;
  for (auto p : prime_factors(n))
    while (n % p == 0 && pow(a, n / p) == 1) n /= p;
  return n;
}

Elem FiniteField::root_of_unity(std::uint64_t n) const {
  const std::uint64_t q = size() - 1;
  if (n == 0 || q % n != 0) {
    std::string hint;
    try {
      hint = "; smallest k with n | 2^k - 1 is " + std::to_string(min_extension_for_root(n));
    } catch (const AlgebraError& e) {
      hint = std::string("; ") + e.what();
    }
    throw AlgebraError("GF(2^" + std::to_string(k_) + ") has no element of order " + std::to_string(n) + hint);
  }
  Elem z = pow(generator(), q / n);
  if (order_of(z) != n) throw AlgebraError("root of unity has wrong order");
  return z;
}

std::vector<Elem> FiniteField::roots(const std::vector<Elem>& c) const {
  if (k_ > 24) throw AlgebraError("exhaustive root search limited to k <= 24");
  std::vector<Elem> out;
  bool all_zero = std::all_of(c.begin(), c.end(), [](Elem e) { return e == 0; });
  if (all_zero) throw AlgebraError("root search on the zero polynomial");
  for (Elem z = 0; z < size(); ++z) {
    Elem v = 0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) v = mul(v, z) ^ *it;
    if (v == 0) out.push_back(z);
  }
  return out;
}

FieldPtr gf(int k) {
  static std::mutex mu;
  static std::map<int, FieldPtr> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(k);
  if (it != cache.end()) return it->second;
  auto f = std::make_shared<const FiniteField>(k);
  cache.emplace(k, f);
  return f;
}

// ---------------------------------------------------------------- rings

int Ring::index(const std::string& name) const {
  for (int i = 0; i < size(); ++i)
    if (names[i] == name) return i;
  return -1;
}

int Ring::require(const std::string& name) const {
  int i = index(name);
  if (i < 0) throw AlgebraError("unknown variable '" + name + "'");
  return i;
}

RingPtr make_ring(std::vector<std::string> names, FieldPtr field) {
  if (static_cast<int>(names.size()) > kMaxVars)
    throw AlgebraError("too many variables (max " + std::to_string(kMaxVars) + ")");
  for (std::size_t i = 0; i < names.size(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (names[i] == names[j]) throw AlgebraError("duplicate variable '" + names[i] + "'");
  auto r = std::make_shared<Ring>();
  r->names = std::move(names);
  r->field = field ? std::move(field) : gf(1);
  return r;
}

namespace {

int deg(const Exps& e) {
  int s = 0;
  for (auto x : e) s += x;
  return s;
}

bool same_ring(const RingPtr& a, const RingPtr& b) {
  if (a == b) return true;
  if (!a || !b) return true;
  return a->names == b->names && a->field->degree() == b->field->degree() &&
         a->field->modulus() == b->field->modulus();
}

}  // namespace

bool GrlexLess::operator()(const Exps& a, const Exps& b) const {
  int da = deg(a), db = deg(b);
  if (da != db) return da < db;
  return a < b;
}

// ---------------------------------------------------------------- polynomials

MultiPoly one(const RingPtr& ring) { return MultiPoly::constant(ring, 1); }

MultiPoly MultiPoly::constant(const RingPtr& ring, Elem c) {
  MultiPoly p(ring);
  if (c) p.terms_.emplace(Exps{}, c);
  return p;
}

MultiPoly MultiPoly::variable(const RingPtr& ring, int v, unsigned e) {
  if (!ring || v < 0 || v >= ring->size()) throw AlgebraError("variable index out of range");
  Exps x{};
  x[v] = static_cast<std::uint16_t>(e);
  return monomial(ring, x, 1);
}

MultiPoly MultiPoly::variable(const RingPtr& ring, const std::string& name, unsigned e) {
  return variable(ring, ring->require(name), e);
}

MultiPoly MultiPoly::monomial(const RingPtr& ring, const Exps& e, Elem c) {
  MultiPoly p(ring);
  if (c) p.terms_.emplace(e, c);
  return p;
}

const FiniteField& MultiPoly::field() const { return ring_ ? *ring_->field : *gf(1); }

void MultiPoly::adopt(const MultiPoly& o) {
  if (!same_ring(ring_, o.ring_)) throw AlgebraError("polynomials from different rings");
  if (!ring_) ring_ = o.ring_;
}

bool MultiPoly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && deg(terms_.begin()->first) == 0);
}

Elem MultiPoly::constant_value() const {
  if (!is_constant()) throw AlgebraError("polynomial is not constant");
  return terms_.empty() ? 0 : terms_.begin()->second;
}

int MultiPoly::degree_in(int v) const {
  int d = 0;
  for (const auto& [e, c] : terms_) d = std::max(d, static_cast<int>(e[v]));
  return d;
}

int MultiPoly::total_degree() const { return terms_.empty() ? 0 : deg(terms_.rbegin()->first); }

MultiPoly& MultiPoly::operator+=(const MultiPoly& o) {
  adopt(o);
  for (const auto& [e, c] : o.terms_) {
    auto [it, inserted] = terms_.emplace(e, c);
    if (!inserted) {
      it->second ^= c;
      if (!it->second) terms_.erase(it);
    }
  }
  return *this;
}

MultiPoly MultiPoly::operator+(const MultiPoly& o) const {
  MultiPoly r = *this;
  r += o;
  return r;
}

MultiPoly MultiPoly::operator*(const MultiPoly& o) const {
  MultiPoly r(ring_);
  r.adopt(o);
  if (terms_.empty() || o.terms_.empty()) return r;
  const FiniteField& f = r.field();
  for (const auto& [ea, ca] : terms_) {
    for (const auto& [eb, cb] : o.terms_) {
      Exps e;
      for (int i = 0; i < kMaxVars; ++i) {
        unsigned s = unsigned(ea[i]) + eb[i];
        if (s > 0xffff) throw AlgebraError("exponent overflow");
        e[i] = static_cast<std::uint16_t>(s);
      }
      Elem c = f.mul(ca, cb);
      auto [it, inserted] = r.terms_.emplace(e, c);
      if (!inserted) {
        it->second ^= c;
        if (!it->second) r.terms_.erase(it);
      }
    }
  }
  return r;
}

bool MultiPoly::operator==(const MultiPoly& o) const {
  if (!same_ring(ring_, o.ring_)) return false;
  return terms_ == o.terms_;
}

MultiPoly MultiPoly::scaled(Elem c) const {
  MultiPoly r(ring_);
  if (!c) return r;
  for (const auto& [e, x] : terms_) r.terms_.emplace(e, field().mul(x, c));
  return r;
}

MultiPoly MultiPoly::square() const {
  // Cross terms vanish in characteristic 2.
  MultiPoly r(ring_);
  for (const auto& [e, c] : terms_) {
    Exps d;
    for (int i = 0; i < kMaxVars; ++i) {
      if (e[i] > 0x7fff) throw AlgebraError("exponent overflow");
      d[i] = static_cast<std::uint16_t>(2 * e[i]);
    }
    r.terms_.emplace(d, field().square(c));
  }
  return r;
}

MultiPoly MultiPoly::pow(unsigned e) const {
  MultiPoly r = one(ring_);
  MultiPoly b = *this;
  while (e) {
    if (e & 1) r = r * b;
    e >>= 1;
    if (e) b = b.square();
  }
  return r;
}

MultiPoly MultiPoly::derivative(int v) const {
  MultiPoly r(ring_);
  for (const auto& [e, c] : terms_) {
    if (e[v] % 2 == 0) continue;
    Exps d = e;
    --d[v];
    r.terms_.emplace(d, c);
  }
  return r;
}

std::vector<MultiPoly> MultiPoly::coefficients_in(int v) const {
  std::vector<MultiPoly> out(degree_in(v) + 1, MultiPoly(ring_));
  for (const auto& [e, c] : terms_) {
    Exps d = e;
    d[v] = 0;
    out[e[v]].terms_.emplace(d, c);
  }
  return out;
}

MultiPoly MultiPoly::reduce_monic(int v, const MultiPoly& f) const {
  auto fc = f.coefficients_in(v);
  const int n = static_cast<int>(fc.size()) - 1;
  if (n < 1 || !(fc[n].is_constant() && fc[n].constant_value() == 1))
    throw AlgebraError("reduce_monic: divisor must be monic of positive degree");
  auto c = coefficients_in(v);
  for (int i = static_cast<int>(c.size()) - 1; i >= n; --i) {
    if (c[i].is_zero()) continue;
    for (int j = 0; j < n; ++j)
      if (!fc[j].is_zero()) c[i - n + j] += c[i] * fc[j];
    c[i] = MultiPoly(ring_);
  }
  MultiPoly r(ring_);
  r.adopt(f);
  for (int i = 0; i < std::min<int>(n, static_cast<int>(c.size())); ++i)
    for (const auto& [e, x] : c[i].terms_) {
      Exps d = e;
      d[v] = static_cast<std::uint16_t>(i);
      r.terms_.emplace(d, x);
    }
  return r;
}

Exps MultiPoly::min_exponents() const {
  Exps m{};
  if (terms_.empty()) return m;
  m = terms_.begin()->first;
  for (const auto& [e, c] : terms_)
    for (int i = 0; i < kMaxVars; ++i) m[i] = std::min(m[i], e[i]);
  return m;
}

MultiPoly MultiPoly::divide_monomial(const Exps& m) const {
  MultiPoly r(ring_);
  for (const auto& [e, c] : terms_) {
    Exps d;
    for (int i = 0; i < kMaxVars; ++i) {
      if (e[i] < m[i]) throw AlgebraError("monomial does not divide polynomial");
      d[i] = static_cast<std::uint16_t>(e[i] - m[i]);
    }
    r.terms_.emplace(d, c);
  }
  return r;
}

MultiPoly MultiPoly::specialize(const std::map<int, Elem>& values) const {
  MultiPoly r(ring_);
  const FiniteField& f = field();
  for (const auto& [e, c] : terms_) {
    Exps d = e;
    Elem x = c;
    for (const auto& [v, val] : values) {
      if (d[v]) {
        x = f.mul(x, f.pow(val, d[v]));
        d[v] = 0;
      }
    }
    if (!x) continue;
    auto [it, inserted] = r.terms_.emplace(d, x);
    if (!inserted) {
      it->second ^= x;
      if (!it->second) r.terms_.erase(it);
    }
  }
  return r;
}

namespace {

// Splits p by the exponents of the mapped variables: p = sum_K rest_K * prod v^K_v.
std::map<Exps, MultiPoly> split_by(const MultiPoly& p, const std::vector<int>& vars) {
  std::map<Exps, MultiPoly> groups;
  for (const auto& [e, c] : p.terms()) {
    Exps key{}, rest = e;
    for (int v : vars) {
      key[v] = e[v];
      rest[v] = 0;
    }
    auto it = groups.try_emplace(key, MultiPoly(p.ring())).first;
    it->second += MultiPoly::monomial(p.ring(), rest, c);
  }
  return groups;
}

}  // namespace

MultiPoly MultiPoly::substitute_poly(const std::map<int, MultiPoly>& images) const {
  std::vector<int> vars;
  for (const auto& [v, img] : images) vars.push_back(v);
  std::map<int, std::vector<MultiPoly>> powers;
  for (const auto& [v, img] : images) {
    auto& pw = powers[v];
    pw.push_back(one(ring_));
    for (int k = 1; k <= degree_in(v); ++k) pw.push_back(pw.back() * img);
  }
  MultiPoly r(ring_);
  for (const auto& [key, rest] : split_by(*this, vars)) {
    MultiPoly term = rest;
    for (int v : vars)
      if (key[v]) term = term * powers[v][key[v]];
    r += term;
  }
  return r;
}

RationalFunction MultiPoly::substitute(const std::map<int, RationalFunction>& images) const {
  std::vector<int> vars;
  for (const auto& [v, img] : images) vars.push_back(v);
  // Common denominator prod_v den_v^(deg_v p); each monomial picks up the
  // complementary power of its own denominators.
  std::map<int, std::vector<MultiPoly>> npow, dpow;
  MultiPoly common = one(ring_);
  for (const auto& [v, img] : images) {
    const int d = degree_in(v);
    auto& np = npow[v];
    auto& dp = dpow[v];
    np.push_back(one(ring_));
    dp.push_back(one(ring_));
    for (int k = 1; k <= d; ++k) {
      np.push_back(np.back() * img.num());
      dp.push_back(dp.back() * img.den());
    }
    common = common * dp[d];
  }
  MultiPoly num(ring_);
  for (const auto& [key, rest] : split_by(*this, vars)) {
    MultiPoly term = rest;
    for (int v : vars) {
      const int d = static_cast<int>(dpow[v].size()) - 1;
      if (key[v]) term = term * npow[v][key[v]];
      if (d - key[v] > 0) term = term * dpow[v][d - key[v]];
    }
    num += term;
  }
  return RationalFunction(num, common);
}

MultiPoly MultiPoly::rebase(const RingPtr& target) const {
  MultiPoly r(target);
  const bool same_field = ring_ && ring_->field->degree() == target->field->degree() &&
                          ring_->field->modulus() == target->field->modulus();
  std::vector<int> map;
  if (ring_)
    for (const auto& n : ring_->names) map.push_back(target->index(n));
  for (const auto& [e, c] : terms_) {
    Exps d{};
    for (int i = 0; i < kMaxVars; ++i) {
      if (!e[i]) continue;
      if (i >= static_cast<int>(map.size()) || map[i] < 0)
        throw AlgebraError("rebase: variable '" + ring_->names[i] + "' missing from target ring");
      d[map[i]] = e[i];
    }
    if (c != 1 && !same_field) throw AlgebraError("rebase: coefficient outside GF(2) across fields");
    r.terms_.emplace(d, c);
  }
  return r;
}

Elem MultiPoly::evaluate(const std::vector<Elem>& point) const {
  const FiniteField& f = field();
  Elem s = 0;
  for (const auto& [e, c] : terms_) {
    Elem x = c;
    for (int i = 0; i < kMaxVars; ++i)
      if (e[i]) x = f.mul(x, f.pow(i < static_cast<int>(point.size()) ? point[i] : 0, e[i]));
    s ^= x;
  }
  return s;
}

namespace {

std::string format_coeff(Elem c) {
  std::ostringstream os;
  os << "[0x" << std::hex << c << "]";
  return os.str();
}

}  // namespace

std::string MultiPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [e, c] = *it;
    std::string t;
    if (c != 1) t = format_coeff(c);
    for (int i = 0; i < kMaxVars; ++i) {
      if (!e[i]) continue;
      if (!t.empty()) t += "*";
      t += ring_ ? ring_->names[i] : "?";
      if (e[i] > 1) t += "^" + std::to_string(e[i]);
    }
    if (t.empty()) t = "1";
    if (!out.empty()) out += " + ";
    out += t;
  }
  return out;
}

// ---------------------------------------------------------------- fractions

RationalFunction::RationalFunction() : den_(one(nullptr)) {}

RationalFunction::RationalFunction(MultiPoly num) : num_(std::move(num)), den_(one(num_.ring())) {}

RationalFunction::RationalFunction(MultiPoly num, MultiPoly den) : num_(std::move(num)), den_(std::move(den)) {
  normalize();
}

void RationalFunction::normalize() {
  if (den_.is_zero()) throw AlgebraError("division by the zero polynomial");
  RingPtr r = ring();
  if (num_.is_zero()) {
    num_ = MultiPoly(r);
    den_ = one(r);
    return;
  }
  Exps a = num_.min_exponents(), b = den_.min_exponents(), m;
  bool any = false;
  for (int i = 0; i < kMaxVars; ++i) {
    m[i] = std::min(a[i], b[i]);
    any = any || m[i];
  }
  if (any) {
    num_ = num_.divide_monomial(m);
    den_ = den_.divide_monomial(m);
  }
  if (den_.is_constant() && den_.constant_value() != 1) {
    const FiniteField& f = r ? *r->field : *gf(1);
    num_ = num_.scaled(f.inv(den_.constant_value()));
    den_ = one(r);
  } else if (num_ == den_) {
    num_ = one(r);
    den_ = one(r);
  }
}

Elem RationalFunction::constant_value() const {
  if (!is_constant()) throw AlgebraError("rational function is not constant");
  const FiniteField& f = ring() ? *ring()->field : *gf(1);
  return f.mul(num_.constant_value(), f.inv(den_.constant_value()));
}

RationalFunction RationalFunction::operator+(const RationalFunction& o) const {
  if (den_ == o.den_) return RationalFunction(num_ + o.num_, den_);
  if (o.is_zero()) return *this;
  if (is_zero()) return o;
  return RationalFunction(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

RationalFunction RationalFunction::operator*(const RationalFunction& o) const {
  if (is_zero() || o.is_zero()) return RationalFunction(MultiPoly(ring() ? ring() : o.ring()));
  // Cheap cancellation when one side's numerator equals the other's denominator.
  if (num_ == o.den_) return RationalFunction(o.num_, den_);
  if (o.num_ == den_) return RationalFunction(num_, o.den_);
  return RationalFunction(num_ * o.num_, den_ * o.den_);
}

RationalFunction RationalFunction::inverse() const {
  if (is_zero()) throw AlgebraError("inverse of the zero rational function");
  return RationalFunction(den_, num_);
}

RationalFunction RationalFunction::operator/(const RationalFunction& o) const { return *this * o.inverse(); }

RationalFunction RationalFunction::pow(int e) const {
  if (e < 0) return inverse().pow(-e);
  RationalFunction r(num_.pow(static_cast<unsigned>(e)), den_.pow(static_cast<unsigned>(e)));
  return r;
}

RationalFunction RationalFunction::derivative(int v) const {
  MultiPoly dn = num_.derivative(v), dd = den_.derivative(v);
  if (dd.is_zero()) return RationalFunction(dn, den_);
  return RationalFunction(dn * den_ + num_ * dd, den_.square());
}

bool RationalFunction::equals(const RationalFunction& o) const {
  if (den_ == o.den_) return num_ == o.num_;
  return (num_ * o.den_ + o.num_ * den_).is_zero();
}

RationalFunction RationalFunction::substitute(const std::map<int, RationalFunction>& images) const {
  RationalFunction n = num_.substitute(images);
  if (den_.is_constant()) return n;
  return n / den_.substitute(images);
}

RationalFunction RationalFunction::specialize(const std::map<int, Elem>& values) const {
  return RationalFunction(num_.specialize(values), den_.specialize(values));
}

RationalFunction RationalFunction::rebase(const RingPtr& target) const {
  return RationalFunction(num_.rebase(target), den_.rebase(target));
}

std::string RationalFunction::to_string() const {
  if (den_.is_constant()) return num_.to_string();
  return "(" + num_.to_string() + ")/(" + den_.to_string() + ")";
}

// ---------------------------------------------------------------- parser

namespace {

class Parser {
 public:
  Parser(const std::string& s, const RingPtr& ring, const Bindings& b) : s_(s), ring_(ring), b_(b) {}

  RationalFunction parse() {
    RationalFunction r = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return r;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(msg + " at offset " + std::to_string(pos_) + " in \"" + s_ + "\"");
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  RationalFunction constant(Elem c) const { return RationalFunction(MultiPoly::constant(ring_, c)); }

  RationalFunction expr() {
    eat('-');  // -f = f in characteristic 2
    RationalFunction r = product();
    for (;;) {
      if (eat('+') || eat('-')) r = r + product();
      else return r;
    }
  }

  RationalFunction product() {
    RationalFunction r = power();
    for (;;) {
      if (eat('*')) r = r * power();
      else if (eat('/')) {
        RationalFunction d = power();
        if (d.is_zero()) fail("division by zero");
        r = r / d;
      } else return r;
    }
  }

  RationalFunction power() {
    RationalFunction base = atom();
    if (!eat('^')) return base;
    bool neg = eat('-');
    skip();
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected integer exponent");
    long e = std::stol(s_.substr(start, pos_ - start));
    if (e > 4096) fail("exponent too large");
    if (neg && base.is_zero()) fail("negative power of zero");
    return base.pow(neg ? -static_cast<int>(e) : static_cast<int>(e));
  }

  RationalFunction atom() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      RationalFunction r = expr();
      if (!eat(')')) fail("expected ')'");
      return r;
    }
    if (c == '[') {
      ++pos_;
      std::size_t end = s_.find(']', pos_);
      if (end == std::string::npos) fail("unterminated field literal");
      std::string lit = s_.substr(pos_, end - pos_);
      pos_ = end + 1;
      Elem v = 0;
      try {
        v = std::stoull(lit, nullptr, 0);
      } catch (...) {
        fail("bad field literal");
      }
      if (!ring_->field->contains(v)) fail("field literal out of range");
      return constant(v);
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      const char last = s_[pos_ - 1];
      (void)start;
      return constant(static_cast<Elem>((last - '0') & 1));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
      std::string name = s_.substr(start, pos_ - start);
      if (name == "sqrt") {
        if (!eat('(')) fail("expected '(' after sqrt");
        RationalFunction arg = expr();
        if (!eat(')')) fail("expected ')'");
        if (!arg.is_constant()) fail("sqrt of a non-constant");
        return constant(ring_->field->sqrt(arg.constant_value()));
      }
      auto it = b_.find(name);
      if (it != b_.end()) return it->second;
      int v = ring_->index(name);
      if (v < 0) fail("unknown symbol '" + name + "'");
      return RationalFunction(MultiPoly::variable(ring_, v));
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  const std::string& s_;
  RingPtr ring_;
  const Bindings& b_;
  std::size_t pos_ = 0;
};

}  // namespace

RationalFunction parse_rational(const std::string& text, const RingPtr& ring, const Bindings& bindings) {
  if (!ring) throw ParseError("no ring supplied");
  return Parser(text, ring, bindings).parse();
}

MultiPoly parse_poly(const std::string& text, const RingPtr& ring, const Bindings& bindings) {
  RationalFunction r = parse_rational(text, ring, bindings);
  if (!r.is_polynomial()) throw ParseError("expected a polynomial: \"" + text + "\"");
  return r.num().scaled(ring->field->inv(r.den().constant_value()));
}

bool is_zero_identity(const MultiPoly& p) { return p.is_zero(); }

bool is_zero_identity(const MultiPoly& p, int trials, int k, std::uint64_t seed) {
  if (p.is_zero()) return true;
  auto field = gf(k);
  RingPtr r = make_ring(p.ring()->names, field);
  MultiPoly q = p.rebase(r);
  std::mt19937_64 rng(seed);
  std::vector<Elem> pt(r->size());
  for (int t = 0; t < trials; ++t) {
    for (auto& x : pt) x = field->random_element(rng);
    if (q.evaluate(pt) != 0) return false;
  }
  return true;
}

}  // namespace enriques
