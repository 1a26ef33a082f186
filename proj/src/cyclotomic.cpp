#include "bsrep/cyclotomic.hpp"

#include <cmath>
#include <memory>
#include <mutex>
#include <numeric>
#include <numbers>
#include <optional>
#include <sstream>
#include <unordered_map>
#include <utility>

#include "bsrep/error.hpp"
#include "bsrep/numtheory.hpp"

namespace bsrep {

namespace {

struct FieldData {
  Order order = 1;
  Order phi = 1;
  std::vector<BigInt> poly;                       // Phi_L, length phi + 1
  std::vector<std::pair<Order, BigInt>> tail;     // nonzero (j, a_j), j < phi
};

std::vector<Order> proper_divisors(Order L) {
  std::vector<Order> small, large;
  for (Order d = 1; d * d <= L; ++d) {
    if (L % d != 0) continue;
    small.push_back(d);
    if (d != L / d) large.push_back(L / d);
  }
  for (auto it = large.rbegin(); it != large.rend(); ++it) small.push_back(*it);
  small.pop_back();  // L itself
  return small;
}

// r / g for monic g, asserting the division is exact.
std::vector<BigInt> exact_divide(std::vector<BigInt> r, const std::vector<BigInt>& g) {
  const std::size_t m = g.size() - 1;
  const std::size_t n = r.size() - 1;
  std::vector<BigInt> quotient(n - m + 1);
  for (std::size_t i = n + 1; i-- > m;) {
    if (sgn(r[i]) == 0) continue;
    const BigInt c = r[i];
    quotient[i - m] = c;
    for (std::size_t j = 0; j <= m; ++j)
      if (sgn(g[j]) != 0) mpz_submul(r[i - m + j].get_mpz_t(), c.get_mpz_t(), g[j].get_mpz_t());
  }
  for (std::size_t i = 0; i < m; ++i)
    if (sgn(r[i]) != 0) throw std::logic_error("cyclotomic division left a remainder");
  return quotient;
}

std::shared_ptr<const FieldData> field(Order L);

std::shared_ptr<const FieldData> build_field(Order L) {
  std::vector<BigInt> r(L + 1);
  r[0] = -1;
  r[L] = 1;
  for (Order d : proper_divisors(L)) r = exact_divide(std::move(r), field(d)->poly);
  auto f = std::make_shared<FieldData>();
  f->order = L;
  f->phi = r.size() - 1;
  f->poly = std::move(r);
  for (Order j = 0; j < f->phi; ++j)
    if (sgn(f->poly[j]) != 0) f->tail.emplace_back(j, f->poly[j]);
  return f;
}

std::shared_ptr<const FieldData> field(Order L) {
  static std::mutex mu;
  static std::unordered_map<Order, std::shared_ptr<const FieldData>> cache;
  if (L == 0 || L > kMaxOrder)
    throw Error(ErrorKind::PreconditionFailed, "cyclotomic order out of range: " + std::to_string(L));
  {
    std::lock_guard<std::mutex> lock(mu);
    if (auto it = cache.find(L); it != cache.end()) return it->second;
  }
  auto built = build_field(L);
  std::lock_guard<std::mutex> lock(mu);
  return cache.emplace(L, std::move(built)).first->second;
}

// In-place reduction of r modulo Phi_L, leaving exactly phi coefficients.
void reduce(std::vector<BigInt>& r, const FieldData& f) {
  // x^L = 1 first: it is cheap and shortens the division.
  if (r.size() > f.order) {
    for (std::size_t i = f.order; i < r.size(); ++i)
      if (sgn(r[i]) != 0) r[i % f.order] += r[i];
    r.resize(f.order);
  }
  for (std::size_t i = r.size(); i-- > f.phi;) {
    if (sgn(r[i]) == 0) continue;
    const BigInt c = r[i];
    const std::size_t base = i - f.phi;
    for (const auto& [j, a] : f.tail)
      mpz_submul(r[base + j].get_mpz_t(), c.get_mpz_t(), a.get_mpz_t());
    r[i] = 0;
  }
  r.resize(f.phi);
}

void require_same_order(const CycNum& x, const CycNum& y) {
  if (x.order() != y.order())
    throw Error(ErrorKind::OrderMismatch, "cyclotomic orders differ: " +
                                              std::to_string(x.order()) + " vs " +
                                              std::to_string(y.order()));
}

Order reduce_exponent(long long t, Order L) {
  long long r = t % static_cast<long long>(L);
  if (r < 0) r += static_cast<long long>(L);
  return static_cast<Order>(r);
}

using ModPoly = std::vector<std::uint64_t>;

void trim(ModPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

std::uint64_t sub_mod(std::uint64_t a, std::uint64_t b, std::uint64_t P) {
  return a >= b ? a - b : a + (P - b);
}

std::uint64_t inv_mod(std::uint64_t a, std::uint64_t P) { return pow_mod_u64(a, P - 2, P); }

// a mod b over F_P, with the quotient accumulated into q.
void divmod(ModPoly& a, const ModPoly& b, ModPoly& q, std::uint64_t P) {
  const std::size_t m = b.size() - 1;
  q.assign(a.size() >= b.size() ? a.size() - m : 0, 0);
  const std::uint64_t lead = inv_mod(b.back(), P);
  for (std::size_t i = a.size(); i-- > m;) {
    if (a[i] == 0) continue;
    const std::uint64_t c = mul_mod_u64(a[i], lead, P);
    q[i - m] = c;
    for (std::size_t j = 0; j <= m; ++j)
      if (b[j] != 0) a[i - m + j] = sub_mod(a[i - m + j], mul_mod_u64(c, b[j], P), P);
  }
  if (a.size() > m) a.resize(m);
  trim(a);
}

// u with u * num = 1 modulo (Phi_L, P), or nothing when num is not a unit there.
std::optional<ModPoly> inverse_mod_prime(const std::vector<BigInt>& num, const FieldData& f,
                                         std::uint64_t P) {
  ModPoly r0(f.poly.size()), r1(num.size());
  for (std::size_t i = 0; i < f.poly.size(); ++i) r0[i] = mpz_fdiv_ui(f.poly[i].get_mpz_t(), P);
  for (std::size_t i = 0; i < num.size(); ++i) r1[i] = mpz_fdiv_ui(num[i].get_mpz_t(), P);
  trim(r1);
  ModPoly s0, s1{1}, q;
  while (r1.size() > 1) {
    divmod(r0, r1, q, P);
    // s0 - q s1
    ModPoly next(std::max(s0.size(), q.size() + s1.size() - 1), 0);
    for (std::size_t i = 0; i < s0.size(); ++i) next[i] = s0[i];
    for (std::size_t i = 0; i < q.size(); ++i) {
      if (q[i] == 0) continue;
      for (std::size_t j = 0; j < s1.size(); ++j)
        next[i + j] = sub_mod(next[i + j], mul_mod_u64(q[i], s1[j], P), P);
    }
    trim(next);
    s0 = std::move(s1);
    s1 = std::move(next);
    std::swap(r0, r1);
  }
  if (r1.empty()) return std::nullopt;
  const std::uint64_t scale = inv_mod(r1[0], P);
  for (auto& c : s1) c = mul_mod_u64(c, scale, P);
  s1.resize(f.phi, 0);
  return s1;
}

// Word-size primes just below 2^62, shared by all modular inverses.
std::uint64_t crt_prime(std::size_t i) {
  static std::mutex mu;
  static std::vector<std::uint64_t> primes;
  std::lock_guard<std::mutex> lock(mu);
  std::uint64_t n = primes.empty() ? (std::uint64_t{1} << 62) - 1 : primes.back() - 2;
  while (primes.size() <= i) {
    while (!is_prime_u64(n)) n -= 2;
    primes.push_back(n);
    n -= 2;
  }
  return primes[i];
}

// n/d with |n|, d <= sqrt(m / 2) and n = a d (mod m), if one exists.
std::optional<Rational> rational_reconstruction(const BigInt& a, const BigInt& m) {
  BigInt bound = m / 2;
  mpz_sqrt(bound.get_mpz_t(), bound.get_mpz_t());
  BigInt r0 = m, r1 = a, t0 = 0, t1 = 1, q, tmp;
  while (r1 > bound) {
    mpz_fdiv_q(q.get_mpz_t(), r0.get_mpz_t(), r1.get_mpz_t());
    tmp = r0 - q * r1;
    r0 = r1;
    r1 = tmp;
    tmp = t0 - q * t1;
    t0 = t1;
    t1 = tmp;
  }
  if (abs(t1) > bound || gcd(r1, t1) != 1) return std::nullopt;
  Rational out(r1, t1);
  out.canonicalize();
  return out;
}

}  // namespace

CycPoly cyclotomic_polynomial(Order L) {
  auto f = field(L);
  return CycPoly{L, f->poly};
}

Order field_degree(Order L) {
  if (L == 0) throw Error(ErrorKind::PreconditionFailed, "order must be >= 1");
  Order phi = L, n = L;
  for (Order p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    while (n % p == 0) n /= p;
    phi -= phi / p;
  }
  if (n > 1) phi -= phi / n;
  return phi;
}

Order common_order(Order a, Order b) { return std::lcm(a, b); }

// ---------------------------------------------------------------------------
// construction

CycNum::CycNum() = default;

CycNum CycNum::zero(Order L) {
  if (L == 0 || L > kMaxOrder) throw Error(ErrorKind::PreconditionFailed, "order must be in [1, 2^31]");
  CycNum x;
  x.order_ = L;
  return x;
}

CycNum CycNum::one(Order L) { return make_monomial(L, Rational(1), 0); }

CycNum CycNum::from_rational(const Rational& r, Order L) { return make_monomial(L, r, 0); }

CycNum CycNum::zeta(Order L, long long t) {
  if (L == 0) throw Error(ErrorKind::PreconditionFailed, "order must be >= 1");
  return make_monomial(L, Rational(1), reduce_exponent(t, L));
}

CycNum CycNum::zeta(Order L, const BigInt& t) {
  if (L == 0) throw Error(ErrorKind::PreconditionFailed, "order must be >= 1");
  return make_monomial(L, Rational(1), mod_floor(t, BigInt(L)).get_ui());
}

CycNum CycNum::monomial(const Rational& r, Order L, long long t) {
  if (L == 0) throw Error(ErrorKind::PreconditionFailed, "order must be >= 1");
  return make_monomial(L, r, reduce_exponent(t, L));
}

CycNum CycNum::make_monomial(Order L, Rational r, Order e) {
  CycNum x = zero(L);
  r.canonicalize();
  if (sgn(r) == 0) return x;
  e %= L;
  if (L % 2 == 0 && sgn(r) < 0) {
    r = -r;
    e = (e + L / 2) % L;
  }
  x.kind_ = Kind::Monomial;
  x.coef_ = std::move(r);
  x.exp_ = e;
  return x;
}

CycNum CycNum::from_coeffs(Order L, const std::vector<Rational>& coeffs) {
  const auto f = field(L);
  if (coeffs.size() != f->phi)
    throw Error(ErrorKind::DimensionMismatch,
                "expected " + std::to_string(f->phi) + " coefficients for order " +
                    std::to_string(L) + ", got " + std::to_string(coeffs.size()));
  BigInt den = 1;
  for (const auto& c : coeffs) den = lcm(den, BigInt(c.get_den()));
  Dense d;
  d.den = den;
  d.num.resize(f->phi);
  for (std::size_t i = 0; i < coeffs.size(); ++i)
    d.num[i] = BigInt(coeffs[i].get_num()) * (den / BigInt(coeffs[i].get_den()));
  return from_dense(L, std::move(d));
}

CycNum CycNum::from_dense(Order L, Dense d) {
  BigInt g = d.den;
  std::size_t nonzero = 0, last = 0;
  for (std::size_t i = 0; i < d.num.size(); ++i) {
    if (sgn(d.num[i]) == 0) continue;
    ++nonzero;
    last = i;
    if (g != 1) g = gcd(g, d.num[i]);
  }
  if (nonzero == 0) return zero(L);
  if (nonzero == 1) return make_monomial(L, Rational(d.num[last], d.den), last);
  if (sgn(d.den) < 0) g = -g;
  if (g != 1) {
    for (auto& c : d.num)
      if (sgn(c) != 0) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
    mpz_divexact(d.den.get_mpz_t(), d.den.get_mpz_t(), g.get_mpz_t());
  }
  CycNum x = zero(L);
  x.kind_ = Kind::Dense;
  x.num_ = std::move(d.num);
  x.den_ = std::move(d.den);
  return x;
}

// ---------------------------------------------------------------------------
// inspection

std::size_t CycNum::degree() const { return field(order_)->phi; }

CycNum::Dense CycNum::to_dense() const {
  const auto f = field(order_);
  Dense d;
  switch (kind_) {
    case Kind::Zero:
      d.num.assign(f->phi, BigInt(0));
      break;
    case Kind::Monomial: {
      std::vector<BigInt> r(std::max<std::size_t>(exp_ + 1, f->phi));
      r[exp_] = coef_.get_num();
      reduce(r, *f);
      d.num = std::move(r);
      d.den = coef_.get_den();
      break;
    }
    case Kind::Dense:
      d.num = num_;
      d.den = den_;
      break;
  }
  return d;
}

std::vector<Rational> CycNum::coeffs() const {
  const Dense d = to_dense();
  std::vector<Rational> out(d.num.size());
  for (std::size_t i = 0; i < d.num.size(); ++i) {
    out[i] = Rational(d.num[i], d.den);
    out[i].canonicalize();
  }
  return out;
}

bool CycNum::is_one() const {
  return kind_ == Kind::Monomial && exp_ == 0 && coef_ == 1;
}

bool CycNum::is_rational() const {
  if (kind_ == Kind::Zero) return true;
  if (kind_ == Kind::Monomial) return exp_ == 0 || 2 * exp_ == order_;
  return false;  // dense always has >= 2 nonzero basis coordinates
}

bool operator==(const CycNum& x, const CycNum& y) {
  if (x.order_ != y.order_) return false;
  if (x.kind_ == y.kind_) {
    switch (x.kind_) {
      case CycNum::Kind::Zero: return true;
      case CycNum::Kind::Monomial: return x.exp_ == y.exp_ && x.coef_ == y.coef_;
      case CycNum::Kind::Dense: return x.den_ == y.den_ && x.num_ == y.num_;
    }
  }
  if (x.is_zero() || y.is_zero()) return false;
  // A monomial whose exponent is >= phi expands to several coordinates and
  // can coincide with a dense value.
  const CycNum& mono = x.kind_ == CycNum::Kind::Monomial ? x : y;
  const CycNum& dense = x.kind_ == CycNum::Kind::Monomial ? y : x;
  const CycNum expanded = CycNum::from_dense(mono.order_, mono.to_dense());
  return expanded.kind_ == CycNum::Kind::Dense && expanded.den_ == dense.den_ &&
         expanded.num_ == dense.num_;
}

// ---------------------------------------------------------------------------
// arithmetic

CycNum CycNum::operator-() const {
  switch (kind_) {
    case Kind::Zero: return *this;
    case Kind::Monomial: return make_monomial(order_, -coef_, exp_);
    case Kind::Dense: {
      CycNum r = *this;
      for (auto& c : r.num_) c = -c;
      return r;
    }
  }
  return *this;
}

CycNum& CycNum::operator+=(const CycNum& y) {
  require_same_order(*this, y);
  if (y.is_zero()) return *this;
  if (is_zero()) return *this = y;
  const Order L = order_;
  if (kind_ == Kind::Monomial && y.kind_ == Kind::Monomial) {
    if (exp_ == y.exp_) return *this = make_monomial(L, coef_ + y.coef_, exp_);
    if (L % 2 == 0 && (exp_ + L / 2) % L == y.exp_)
      return *this = make_monomial(L, coef_ - y.coef_, exp_);
  }
  Dense a = to_dense();
  Dense b = y.to_dense();
  Dense r;
  r.den = lcm(a.den, b.den);
  const BigInt sa = r.den / a.den, sb = r.den / b.den;
  r.num.resize(a.num.size());
  for (std::size_t i = 0; i < a.num.size(); ++i) {
    if (sgn(a.num[i]) != 0) mpz_mul(r.num[i].get_mpz_t(), a.num[i].get_mpz_t(), sa.get_mpz_t());
    if (sgn(b.num[i]) != 0)
      mpz_addmul(r.num[i].get_mpz_t(), b.num[i].get_mpz_t(), sb.get_mpz_t());
  }
  return *this = from_dense(L, std::move(r));
}

CycNum& CycNum::operator-=(const CycNum& y) { return *this += -y; }

CycNum& CycNum::operator*=(const CycNum& y) { return *this = *this * y; }

CycNum operator*(const CycNum& x, const CycNum& y) {
  require_same_order(x, y);
  const Order L = x.order_;
  if (x.is_zero() || y.is_zero()) return CycNum::zero(L);
  using Kind = CycNum::Kind;
  if (x.kind_ == Kind::Monomial && y.kind_ == Kind::Monomial)
    return CycNum::make_monomial(L, x.coef_ * y.coef_, (x.exp_ + y.exp_) % L);

  const auto f = field(L);
  if (x.kind_ == Kind::Monomial || y.kind_ == Kind::Monomial) {
    const CycNum& mono = x.kind_ == Kind::Monomial ? x : y;
    const CycNum& dense = x.kind_ == Kind::Monomial ? y : x;
    std::vector<BigInt> r(std::max<std::size_t>(L, f->phi));
    const BigInt cn = mono.coef_.get_num();
    for (std::size_t j = 0; j < dense.num_.size(); ++j) {
      if (sgn(dense.num_[j]) == 0) continue;
      mpz_addmul(r[(j + mono.exp_) % L].get_mpz_t(), dense.num_[j].get_mpz_t(), cn.get_mpz_t());
    }
    reduce(r, *f);
    CycNum::Dense d{std::move(r), dense.den_ * BigInt(mono.coef_.get_den())};
    return CycNum::from_dense(L, std::move(d));
  }

  std::vector<BigInt> r(2 * f->phi - 1);
  for (std::size_t i = 0; i < x.num_.size(); ++i) {
    if (sgn(x.num_[i]) == 0) continue;
    for (std::size_t j = 0; j < y.num_.size(); ++j)
      if (sgn(y.num_[j]) != 0)
        mpz_addmul(r[i + j].get_mpz_t(), x.num_[i].get_mpz_t(), y.num_[j].get_mpz_t());
  }
  reduce(r, *f);
  CycNum::Dense d{std::move(r), x.den_ * y.den_};
  return CycNum::from_dense(L, std::move(d));
}

CycNum CycNum::inverse() const {
  if (is_zero()) throw Error(ErrorKind::DivisionByZero, "inverse of zero");
  if (kind_ == Kind::Monomial) {
    const Rational inv = 1 / coef_;
    return make_monomial(order_, inv, (order_ - exp_) % order_);
  }
  // Multi-modular: invert the numerator modulo word-size primes, lift by CRT,
  // reconstruct rationals once the modulus is large enough, confirm exactly.
  const auto f = field(order_);
  std::vector<BigInt> residues(f->phi);
  BigInt modulus = 1;
  std::size_t used = 0, next_check = 1;
  for (std::size_t i = 0; used < 1u << 14; ++i) {
    const std::uint64_t P = crt_prime(i);
    const auto u = inverse_mod_prime(num_, *f, P);
    if (!u) continue;
    const std::uint64_t m_mod = mpz_fdiv_ui(modulus.get_mpz_t(), P);
    const std::uint64_t m_inv = inv_mod(m_mod, P);
    for (std::size_t k = 0; k < f->phi; ++k) {
      const std::uint64_t have = mpz_fdiv_ui(residues[k].get_mpz_t(), P);
      const std::uint64_t delta = mul_mod_u64(sub_mod((*u)[k], have, P), m_inv, P);
      if (delta) mpz_addmul_ui(residues[k].get_mpz_t(), modulus.get_mpz_t(), delta);
    }
    modulus *= static_cast<unsigned long>(P);
    if (++used < next_check) continue;
    next_check *= 2;
    std::vector<Rational> coeffs(f->phi);
    bool ok = true;
    for (std::size_t k = 0; ok && k < f->phi; ++k) {
      const auto r = rational_reconstruction(residues[k], modulus);
      if (r)
        coeffs[k] = *r * den_;
      else
        ok = false;
    }
    if (!ok) continue;
    CycNum candidate = from_coeffs(order_, coeffs);
    if ((*this * candidate).is_one()) return candidate;
  }
  throw std::logic_error("cyclotomic inverse did not converge");
}

CycNum CycNum::pow(long long k) const {
  if (k < 0) return inverse().pow(-k);
  if (kind_ == Kind::Monomial) {
    Rational c;
    mpz_pow_ui(c.get_num_mpz_t(), coef_.get_num_mpz_t(), static_cast<unsigned long>(k));
    mpz_pow_ui(c.get_den_mpz_t(), coef_.get_den_mpz_t(), static_cast<unsigned long>(k));
    const Order e = static_cast<Order>(
        (static_cast<unsigned __int128>(exp_) * static_cast<unsigned long long>(k)) % order_);
    return make_monomial(order_, c, e);
  }
  CycNum result = one(order_), base = *this;
  while (k > 0) {
    if (k & 1) result *= base;
    k >>= 1;
    if (k > 0) base = base * base;
  }
  return result;
}

CycNum CycNum::change_order(Order M) const {
  if (M == 0 || M % order_ != 0)
    throw Error(ErrorKind::IncompatibleOrders, "order " + std::to_string(order_) +
                                                   " does not divide " + std::to_string(M));
  const Order k = M / order_;
  switch (kind_) {
    case Kind::Zero: return zero(M);
    case Kind::Monomial: return make_monomial(M, coef_, exp_ * k);
    case Kind::Dense: {
      const auto f = field(M);
      std::vector<BigInt> r(std::max<std::size_t>(M, f->phi));
      for (std::size_t j = 0; j < num_.size(); ++j)
        if (sgn(num_[j]) != 0) r[(j * k) % M] += num_[j];
      reduce(r, *f);
      return from_dense(M, Dense{std::move(r), den_});
    }
  }
  return *this;
}

std::complex<double> CycNum::to_complex() const {
  const long double tau = 2.0L * std::numbers::pi_v<long double>;
  auto cis = [&](Order e) {
    const long double angle = tau * static_cast<long double>(e) / static_cast<long double>(order_);
    return std::complex<long double>(std::cos(angle), std::sin(angle));
  };
  switch (kind_) {
    case Kind::Zero: return {0.0, 0.0};
    case Kind::Monomial: {
      const auto z = static_cast<long double>(coef_.get_d()) * cis(exp_);
      return {static_cast<double>(z.real()), static_cast<double>(z.imag())};
    }
    case Kind::Dense: {
      std::complex<long double> acc{0.0L, 0.0L};
      for (std::size_t j = 0; j < num_.size(); ++j)
        if (sgn(num_[j]) != 0)
          acc += static_cast<long double>(Rational(num_[j], den_).get_d()) * cis(j);
      return {static_cast<double>(acc.real()), static_cast<double>(acc.imag())};
    }
  }
  return {};
}

std::string CycNum::to_string() const {
  auto term = [](const Rational& c, Order e) {
    std::ostringstream os;
    if (e == 0) {
      os << c.get_str();
    } else {
      if (c == -1)
        os << "-";
      else if (c != 1)
        os << c.get_str() << "*";
      os << "z";
      if (e != 1) os << "^" << e;
    }
    return os.str();
  };
  switch (kind_) {
    case Kind::Zero: return "0";
    case Kind::Monomial: return term(coef_, exp_);
    case Kind::Dense: {
      std::string out;
      for (std::size_t j = 0; j < num_.size(); ++j) {
        if (sgn(num_[j]) == 0) continue;
        Rational c(num_[j], den_);
        c.canonicalize();
        std::string t = term(c, j);
        if (!out.empty()) out += (t[0] == '-') ? " - " + t.substr(1) : " + " + t;
        else out = t;
      }
      return out;
    }
  }
  return {};
}

CycNum add(const CycNum& x, const CycNum& y) { return x + y; }
CycNum sub(const CycNum& x, const CycNum& y) { return x - y; }
CycNum mul(const CycNum& x, const CycNum& y) { return x * y; }
CycNum neg(const CycNum& x) { return -x; }
CycNum inverse(const CycNum& x) { return x.inverse(); }
CycNum change_order(const CycNum& x, Order M) { return x.change_order(M); }
std::complex<double> to_complex(const CycNum& x) { return x.to_complex(); }

// ---------------------------------------------------------------------------
// residue embedding

ResidueEmbedding ResidueEmbedding::for_order(Order L, unsigned index) {
  if (L == 0) throw Error(ErrorKind::PreconditionFailed, "order must be >= 1");
  constexpr std::uint64_t kTop = std::uint64_t{1} << 62;
  std::uint64_t k = (kTop - 1) / L;
  std::uint64_t prime = 0;
  for (unsigned found = 0; k > 0; --k) {
    const std::uint64_t candidate = k * L + 1;
    if (!is_prime_u64(candidate)) continue;
    if (found++ == index) {
      prime = candidate;
      break;
    }
  }
  if (prime == 0) throw std::runtime_error("no prime congruent to 1 modulo the order");

  std::vector<std::uint64_t> order_primes;
  {
    Order n = L;
    for (Order p = 2; p * p <= n; ++p) {
      if (n % p != 0) continue;
      order_primes.push_back(p);
      while (n % p == 0) n /= p;
    }
    if (n > 1) order_primes.push_back(n);
  }
  const std::uint64_t cofactor = (prime - 1) / L;
  for (std::uint64_t g = 2;; ++g) {
    const std::uint64_t w = pow_mod_u64(g, cofactor, prime);
    bool exact = w != 0;
    for (std::uint64_t r : order_primes)
      if (exact && pow_mod_u64(w, L / r, prime) == 1) exact = false;
    if (L == 1) exact = (w == 1);
    if (!exact) continue;
    ResidueEmbedding e;
    e.order_ = L;
    e.prime_ = prime;
    e.root_ = w;
    return e;
  }
}

std::optional<std::uint64_t> ResidueEmbedding::map(const CycNum& x) const {
  if (order_ % x.order() != 0)
    throw Error(ErrorKind::IncompatibleOrders, "element order does not divide embedding order");
  const std::uint64_t step = order_ / x.order();
  auto reduce_rational = [&](const Rational& r) -> std::optional<std::uint64_t> {
    const std::uint64_t den = mpz_fdiv_ui(r.get_den_mpz_t(), prime_);
    if (den == 0) return std::nullopt;
    const std::uint64_t num = mpz_fdiv_ui(r.get_num_mpz_t(), prime_);
    return mul_mod_u64(num, pow_mod_u64(den, prime_ - 2, prime_), prime_);
  };
  if (x.is_zero()) return 0;
  if (x.is_monomial()) {
    auto c = reduce_rational(x.monomial_coefficient());
    if (!c) return std::nullopt;
    const std::uint64_t e = static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(x.monomial_exponent()) * step) % order_);
    return mul_mod_u64(*c, pow_mod_u64(root_, e, prime_), prime_);
  }
  const std::vector<Rational> cs = x.coeffs();
  const std::uint64_t z = pow_mod_u64(root_, step, prime_);
  std::uint64_t acc = 0;
  for (std::size_t i = cs.size(); i-- > 0;) {
    acc = mul_mod_u64(acc, z, prime_);
    if (sgn(cs[i]) == 0) continue;
    auto c = reduce_rational(cs[i]);
    if (!c) return std::nullopt;
    acc = (acc + *c) % prime_;
  }
  return acc;
}

}  // namespace bsrep
