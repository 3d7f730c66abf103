#include "qcell/scalar.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace qcell {

// ---------------------------------------------------------------- LaurentPoly

LaurentPoly::LaurentPoly(const mpz_class& c, int exp) {
  if (c != 0) terms_[exp] = c;
}

bool LaurentPoly::isOne() const {
  return terms_.size() == 1 && terms_.begin()->first == 0 && terms_.begin()->second == 1;
}

int LaurentPoly::minExp() const { return terms_.begin()->first; }
int LaurentPoly::maxExp() const { return terms_.rbegin()->first; }

mpz_class LaurentPoly::coeff(int exp) const {
  auto it = terms_.find(exp);
  return it == terms_.end() ? mpz_class(0) : it->second;
}

void LaurentPoly::setCoeff(int exp, const mpz_class& c) {
  if (c == 0)
    terms_.erase(exp);
  else
    terms_[exp] = c;
}

LaurentPoly LaurentPoly::operator+(const LaurentPoly& o) const {
  LaurentPoly r = *this;
  for (const auto& [e, c] : o.terms_) {
    auto it = r.terms_.find(e);
    if (it == r.terms_.end()) {
      r.terms_.emplace(e, c);
    } else {
      it->second += c;
      if (it->second == 0) r.terms_.erase(it);
    }
  }
  return r;
}

LaurentPoly LaurentPoly::operator-() const {
  LaurentPoly r = *this;
  for (auto& [e, c] : r.terms_) c = -c;
  return r;
}

LaurentPoly LaurentPoly::operator-(const LaurentPoly& o) const { return *this + (-o); }

LaurentPoly LaurentPoly::operator*(const LaurentPoly& o) const {
  LaurentPoly r;
  if (isZero() || o.isZero()) return r;
  for (const auto& [e1, c1] : terms_)
    for (const auto& [e2, c2] : o.terms_) {
      mpz_class& slot = r.terms_[e1 + e2];
      slot += c1 * c2;
    }
  for (auto it = r.terms_.begin(); it != r.terms_.end();)
    it = (it->second == 0) ? r.terms_.erase(it) : std::next(it);
  return r;
}

LaurentPoly LaurentPoly::shifted(int k) const {
  LaurentPoly r;
  for (const auto& [e, c] : terms_) r.terms_.emplace(e + k, c);
  return r;
}

LaurentPoly LaurentPoly::barInvolution() const {
  LaurentPoly r;
  for (const auto& [e, c] : terms_) r.terms_.emplace(-e, c);
  return r;
}

mpz_class LaurentPoly::content() const {
  mpz_class g = 0;
  for (const auto& [e, c] : terms_) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    if (g == 1) break;
  }
  return g;
}

LaurentPoly LaurentPoly::divExact(const LaurentPoly& o) const {
  if (o.isZero()) throw DivisionByZero();
  if (isZero()) return LaurentPoly();
  // Long division from the top; exactness is asserted.
  LaurentPoly rem = *this, quot;
  const int dlead = o.maxExp();
  const mpz_class& dc = o.terms().rbegin()->second;
  while (!rem.isZero() && rem.maxExp() - rem.minExp() >= dlead - o.minExp()) {
    mpz_class q, r;
    mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), rem.terms().rbegin()->second.get_mpz_t(),
                dc.get_mpz_t());
    if (r != 0) throw ScalarError("divExact: inexact coefficient division");
    int shift = rem.maxExp() - dlead;
    quot.setCoeff(shift, q);
    rem = rem - o.shifted(shift) * LaurentPoly(q);
  }
  if (!rem.isZero()) throw ScalarError("divExact: nonzero remainder");
  return quot;
}

namespace {

// Ordinary integer polynomials (lowest degree first) used for gcd work.
using PolyZ = std::vector<mpz_class>;

void trimZ(PolyZ& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

mpz_class contentZ(const PolyZ& p) {
  mpz_class g = 0;
  for (const auto& c : p) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
  return g;
}

PolyZ primitiveZ(PolyZ p) {
  trimZ(p);
  if (p.empty()) return p;
  mpz_class g = contentZ(p);
  if (p.back() < 0) g = -g;
  for (auto& c : p) c /= g;
  return p;
}

// Pseudo-remainder of a by b (b nonzero).
PolyZ pseudoRemZ(PolyZ a, const PolyZ& b) {
  trimZ(a);
  const long db = static_cast<long>(b.size()) - 1;
  const mpz_class& lead = b.back();
  while (static_cast<long>(a.size()) - 1 >= db && !a.empty()) {
    const long sh = static_cast<long>(a.size()) - 1 - db;
    mpz_class c = a.back();
    for (auto& x : a) x *= lead;
    for (long i = 0; i <= db; ++i) a[sh + i] -= c * b[i];
    trimZ(a);
  }
  return a;
}

PolyZ gcdZ(PolyZ a, PolyZ b) {
  a = primitiveZ(std::move(a));
  b = primitiveZ(std::move(b));
  if (a.empty()) return b;
  if (b.empty()) return a;
  if (a.size() < b.size()) std::swap(a, b);
  while (!b.empty()) {
    PolyZ r = pseudoRemZ(a, b);
    a = std::move(b);
    b = primitiveZ(std::move(r));
  }
  return a;
}

PolyZ toPolyZ(const LaurentPoly& p) {
  PolyZ r;
  if (p.isZero()) return r;
  const int lo = p.minExp();
  r.assign(p.maxExp() - lo + 1, mpz_class(0));
  for (const auto& [e, c] : p.terms()) r[e - lo] = c;
  return r;
}

LaurentPoly fromPolyZ(const PolyZ& p) {
  LaurentPoly r;
  for (size_t i = 0; i < p.size(); ++i) r.setCoeff(static_cast<int>(i), p[i]);
  return r;
}

}  // namespace

LaurentPoly LaurentPoly::gcd(const LaurentPoly& a, const LaurentPoly& b) {
  if (a.isZero()) return b.isZero() ? LaurentPoly() : fromPolyZ(primitiveZ(toPolyZ(b)));
  if (b.isZero()) return fromPolyZ(primitiveZ(toPolyZ(a)));
  return fromPolyZ(gcdZ(toPolyZ(a), toPolyZ(b)));
}

std::string LaurentPoly::str() const {
  if (isZero()) return "0";
  std::ostringstream os;
  bool first = true;
  // Highest power first for readability.
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [e, c] = *it;
    mpz_class a = c;
    if (first) {
      if (a < 0) { os << "-"; a = -a; }
    } else {
      os << (a < 0 ? "-" : "+");
      if (a < 0) a = -a;
    }
    first = false;
    if (e == 0) {
      os << a.get_str();
    } else {
      if (a != 1) os << a.get_str() << "*";
      os << "v";
      if (e != 1) os << "^" << e;
    }
  }
  return os.str();
}

// ------------------------------------------------------------------- RatFunc

RatFunc::RatFunc(LaurentPoly n, LaurentPoly d) : num(std::move(n)), den(std::move(d)) {
  normalize();
}

void RatFunc::normalize() {
  if (den.isZero()) throw DivisionByZero();
  if (num.isZero()) {
    den = LaurentPoly(mpz_class(1));
    return;
  }
  // Push all v-powers into the numerator.
  num = num.shifted(-den.minExp());
  den = den.shifted(-den.minExp());
  LaurentPoly g = LaurentPoly::gcd(num, den);
  if (!g.isOne()) {
    num = num.divExact(g);
    den = den.divExact(g);
    num = num.shifted(-den.minExp());
    den = den.shifted(-den.minExp());
  }
  mpz_class cn = num.content(), cd = den.content(), g2;
  mpz_gcd(g2.get_mpz_t(), cn.get_mpz_t(), cd.get_mpz_t());
  if (g2 > 1) {
    num = num.divExact(LaurentPoly(g2));
    den = den.divExact(LaurentPoly(g2));
  }
  if (den.coeff(den.minExp()) < 0) {
    num = -num;
    den = -den;
  }
}

// ---------------------------------------------------------------- cyclotomic

std::vector<mpz_class> cyclotomicPolynomial(int l) {
  if (l < 1) throw ScalarError("cyclotomic order must be >= 1");
  // x^l - 1 = prod_{d | l} Phi_d; divide out the proper divisors recursively.
  PolyZ num(l + 1, mpz_class(0));
  num[0] = -1;
  num[l] = 1;
  for (int d = 1; d < l; ++d) {
    if (l % d != 0) continue;
    PolyZ phi;
    {
      auto v = cyclotomicPolynomial(d);
      phi.assign(v.begin(), v.end());
    }
    // Exact polynomial division num /= phi.
    PolyZ quot(num.size() - phi.size() + 1, mpz_class(0));
    PolyZ rem = num;
    for (long i = static_cast<long>(quot.size()) - 1; i >= 0; --i) {
      mpz_class c = rem[i + phi.size() - 1] / phi.back();
      quot[i] = c;
      if (c == 0) continue;
      for (size_t j = 0; j < phi.size(); ++j) rem[i + j] -= c * phi[j];
    }
    num = std::move(quot);
  }
  return {num.begin(), num.end()};
}

// note: cyclotomicPolynomial recomputes divisors' polynomials; orders here are
// tiny so this stays cheap.

// ------------------------------------------------------------- ScalarContext

ScalarContext ScalarContext::cyclotomic(int l) {
  if (l < 3 || l % 2 == 0) throw ScalarError("cyclotomic order must be odd and >= 3");
  ScalarContext c;
  c.kind_ = CtxKind::Cyclotomic;
  c.l_ = l;
  c.phi_ = std::make_shared<const std::vector<mpz_class>>(cyclotomicPolynomial(l));
  c.cycloDeg_ = static_cast<int>(c.phi_->size()) - 1;
  return c;
}

ScalarContext ScalarContext::rational(const mpq_class& q) {
  if (q == 0) throw ScalarError("rational specialization point must be nonzero");
  ScalarContext c;
  c.kind_ = CtxKind::Rational;
  mpq_class qq = q;
  qq.canonicalize();
  c.q_ = std::make_shared<const mpq_class>(qq);
  return c;
}

bool ScalarContext::operator==(const ScalarContext& o) const {
  if (kind_ != o.kind_) return false;
  if (kind_ == CtxKind::Cyclotomic) return l_ == o.l_;
  if (kind_ == CtxKind::Rational) return *q_ == *o.q_;
  return true;
}

std::string ScalarContext::str() const {
  switch (kind_) {
    case CtxKind::Generic: return "generic";
    case CtxKind::Cyclotomic: return "cyclotomic(" + std::to_string(l_) + ")";
    case CtxKind::Rational: return "rational(" + q_->get_str() + ")";
  }
  return "";
}

// -------------------------------------------------------------------- Scalar

namespace {

CycloElem cycloReduce(std::vector<mpq_class> coeffs, const ScalarContext& ctx) {
  const auto& phi = ctx.cycloPoly();
  const size_t deg = phi.size() - 1;
  for (size_t i = coeffs.size(); i-- > deg;) {
    mpq_class c = coeffs[i];
    if (c == 0) continue;
    // phi is monic.
    for (size_t j = 0; j <= deg; ++j) coeffs[i - deg + j] -= c * mpq_class(phi[j]);
  }
  coeffs.resize(deg);
  for (auto& c : coeffs) c.canonicalize();
  CycloElem e;
  e.coeffs = std::move(coeffs);
  return e;
}

CycloElem cycloMul(const CycloElem& a, const CycloElem& b, const ScalarContext& ctx) {
  std::vector<mpq_class> prod(a.coeffs.size() + b.coeffs.size(), mpq_class(0));
  for (size_t i = 0; i < a.coeffs.size(); ++i) {
    if (a.coeffs[i] == 0) continue;
    for (size_t j = 0; j < b.coeffs.size(); ++j) {
      if (b.coeffs[j] == 0) continue;
      prod[i + j] += a.coeffs[i] * b.coeffs[j];
    }
  }
  return cycloReduce(std::move(prod), ctx);
}

bool cycloIsZero(const CycloElem& a) {
  for (const auto& c : a.coeffs)
    if (c != 0) return false;
  return true;
}

// Extended Euclid in Q[x] against Phi_l to invert a unit of Q(zeta_l).
CycloElem cycloInverse(const CycloElem& a, const ScalarContext& ctx) {
  if (cycloIsZero(a)) throw DivisionByZero();
  using PolyQ = std::vector<mpq_class>;
  auto trim = [](PolyQ& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
  };
  PolyQ r0, r1 = a.coeffs;
  for (const auto& c : ctx.cycloPoly()) r0.emplace_back(c);
  trim(r1);
  PolyQ s0{mpq_class(0)}, s1{mpq_class(1)};  // coefficients of `a`
  while (true) {
    trim(r1);
    if (r1.empty()) throw ScalarError("cyclotomic inverse: unexpected common factor");
    if (r1.size() == 1) {
      // r1 = s1 * a (mod phi) is a nonzero constant: inverse is s1 / r1.
      CycloElem inv;
      inv.coeffs.assign(ctx.cycloDegree(), mpq_class(0));
      for (size_t i = 0; i < s1.size() && i < inv.coeffs.size(); ++i) {
        inv.coeffs[i] = s1[i] / r1[0];
        inv.coeffs[i].canonicalize();
      }
      return inv;
    }
    // r0 = q*r1 + r, with deg r < deg r1
    PolyQ q(r0.size() >= r1.size() ? r0.size() - r1.size() + 1 : 0, mpq_class(0));
    PolyQ r = r0;
    for (long i = static_cast<long>(q.size()) - 1; i >= 0; --i) {
      mpq_class c = r[i + r1.size() - 1] / r1.back();
      q[i] = c;
      if (c == 0) continue;
      for (size_t j = 0; j < r1.size(); ++j) r[i + j] -= c * r1[j];
    }
    trim(r);
    // s_next = s0 - q*s1
    PolyQ s(std::max(s0.size(), q.size() + s1.size()), mpq_class(0));
    for (size_t i = 0; i < s0.size(); ++i) s[i] = s0[i];
    for (size_t i = 0; i < q.size(); ++i) {
      if (q[i] == 0) continue;
      for (size_t j = 0; j < s1.size(); ++j) s[i + j] -= q[i] * s1[j];
    }
    trim(s);
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s);
  }
}

mpq_class qPow(const mpq_class& q, long k) {
  mpq_class r(1);
  mpq_class base = k >= 0 ? q : mpq_class(1) / q;
  for (long i = 0, n = k >= 0 ? k : -k; i < n; ++i) r *= base;
  return r;
}

}  // namespace

Scalar::Scalar(const ScalarContext& ctx) : ctx_(ctx) {
  switch (ctx.kind()) {
    case CtxKind::Generic: value_ = RatFunc(); break;
    case CtxKind::Cyclotomic: {
      CycloElem e;
      e.coeffs.assign(ctx.cycloDegree(), mpq_class(0));
      value_ = std::move(e);
      break;
    }
    case CtxKind::Rational: value_ = mpq_class(0); break;
  }
}

Scalar Scalar::one(const ScalarContext& ctx) { return fromInt(1, ctx); }

Scalar Scalar::fromInt(long n, const ScalarContext& ctx) {
  return fromRational(mpq_class(n), ctx);
}

Scalar Scalar::fromRational(const mpq_class& r, const ScalarContext& ctx) {
  mpq_class rc = r;
  rc.canonicalize();
  Scalar s(ctx);
  switch (ctx.kind()) {
    case CtxKind::Generic:
      s.value_ = RatFunc(LaurentPoly(rc.get_num()), LaurentPoly(rc.get_den()));
      break;
    case CtxKind::Cyclotomic: {
      CycloElem e = std::get<CycloElem>(s.value_);
      e.coeffs[0] = rc;
      s.value_ = std::move(e);
      break;
    }
    case CtxKind::Rational: s.value_ = rc; break;
  }
  return s;
}

Scalar Scalar::vPower(long k, const ScalarContext& ctx) {
  Scalar s(ctx);
  switch (ctx.kind()) {
    case CtxKind::Generic:
      s.value_ = RatFunc(LaurentPoly(mpz_class(1), static_cast<int>(k)),
                         LaurentPoly(mpz_class(1)));
      break;
    case CtxKind::Cyclotomic: {
      long e = k % ctx.order();
      if (e < 0) e += ctx.order();
      std::vector<mpq_class> c(static_cast<size_t>(e) + 1, mpq_class(0));
      c[e] = 1;
      s.value_ = cycloReduce(std::move(c), ctx);
      break;
    }
    case CtxKind::Rational: s.value_ = qPow(ctx.qValue(), k); break;
  }
  return s;
}

Scalar Scalar::fromLaurent(const LaurentPoly& p, const ScalarContext& ctx) {
  if (ctx.kind() == CtxKind::Generic) {
    Scalar s(ctx);
    s.value_ = RatFunc(p, LaurentPoly(mpz_class(1)));
    return s;
  }
  return specialize(p, ctx);
}

bool Scalar::isZero() const {
  switch (ctx_.kind()) {
    case CtxKind::Generic: return ratFunc().num.isZero();
    case CtxKind::Cyclotomic: return cycloIsZero(cyclo());
    case CtxKind::Rational: return rationalValue() == 0;
  }
  return false;
}

bool Scalar::isOne() const {
  switch (ctx_.kind()) {
    case CtxKind::Generic: return ratFunc().num.isOne() && ratFunc().den.isOne();
    case CtxKind::Cyclotomic: {
      const auto& c = cyclo().coeffs;
      if (c.empty() || c[0] != 1) return false;
      for (size_t i = 1; i < c.size(); ++i)
        if (c[i] != 0) return false;
      return true;
    }
    case CtxKind::Rational: return rationalValue() == 1;
  }
  return false;
}

Scalar Scalar::operator+(const Scalar& o) const {
  if (ctx_ != o.ctx_) throw ScalarError("context mismatch");
  Scalar r(ctx_);
  switch (ctx_.kind()) {
    case CtxKind::Generic: {
      const RatFunc &a = ratFunc(), &b = o.ratFunc();
      r.value_ = RatFunc(a.num * b.den + b.num * a.den, a.den * b.den);
      break;
    }
    case CtxKind::Cyclotomic: {
      CycloElem e = cyclo();
      const auto& b = o.cyclo().coeffs;
      for (size_t i = 0; i < e.coeffs.size(); ++i) {
        e.coeffs[i] += b[i];
        e.coeffs[i].canonicalize();
      }
      r.value_ = std::move(e);
      break;
    }
    case CtxKind::Rational: r.value_ = rationalValue() + o.rationalValue(); break;
  }
  return r;
}

Scalar Scalar::operator-() const {
  Scalar r(ctx_);
  switch (ctx_.kind()) {
    case CtxKind::Generic: {
      RatFunc a = ratFunc();
      a.num = -a.num;
      r.value_ = std::move(a);
      break;
    }
    case CtxKind::Cyclotomic: {
      CycloElem e = cyclo();
      for (auto& c : e.coeffs) c = -c;
      r.value_ = std::move(e);
      break;
    }
    case CtxKind::Rational: r.value_ = mpq_class(-rationalValue()); break;
  }
  return r;
}

Scalar Scalar::operator-(const Scalar& o) const { return *this + (-o); }

Scalar Scalar::operator*(const Scalar& o) const {
  if (ctx_ != o.ctx_) throw ScalarError("context mismatch");
  Scalar r(ctx_);
  switch (ctx_.kind()) {
    case CtxKind::Generic: {
      const RatFunc &a = ratFunc(), &b = o.ratFunc();
      r.value_ = RatFunc(a.num * b.num, a.den * b.den);
      break;
    }
    case CtxKind::Cyclotomic: r.value_ = cycloMul(cyclo(), o.cyclo(), ctx_); break;
    case CtxKind::Rational: r.value_ = mpq_class(rationalValue() * o.rationalValue()); break;
  }
  return r;
}

Scalar Scalar::inverse() const {
  if (isZero()) throw DivisionByZero();
  Scalar r(ctx_);
  switch (ctx_.kind()) {
    case CtxKind::Generic: {
      const RatFunc& a = ratFunc();
      r.value_ = RatFunc(a.den, a.num);
      break;
    }
    case CtxKind::Cyclotomic: r.value_ = cycloInverse(cyclo(), ctx_); break;
    case CtxKind::Rational: r.value_ = mpq_class(1 / rationalValue()); break;
  }
  return r;
}

Scalar Scalar::operator/(const Scalar& o) const { return *this * o.inverse(); }

bool Scalar::operator==(const Scalar& o) const {
  if (ctx_ != o.ctx_) return false;
  return value_ == o.value_;
}

// ------------------------------------------------------------ quantum numbers

LaurentPoly qintPoly(long a) {
  LaurentPoly r;
  if (a == 0) return r;
  const long n = a > 0 ? a : -a;
  // [n] = v^{n-1} + v^{n-3} + ... + v^{1-n}
  for (long e = n - 1; e >= 1 - n; e -= 2) r.setCoeff(static_cast<int>(e), 1);
  if (a < 0)
    for (auto [e, c] : r.terms()) r.setCoeff(e, -c);
  return r;
}

LaurentPoly qfactPoly(long b) {
  LaurentPoly r(mpz_class(1));
  for (long k = 2; k <= b; ++k) r = r * qintPoly(k);
  return r;
}

LaurentPoly qbinomPoly(long a, long b) {
  if (b < 0) throw ScalarError("qbinom: b must be nonnegative");
  LaurentPoly num(mpz_class(1));
  for (long t = 0; t < b; ++t) num = num * qintPoly(a - t);
  return num.divExact(qfactPoly(b));
}

Scalar qint(long a, const ScalarContext& ctx) { return Scalar::fromLaurent(qintPoly(a), ctx); }
Scalar qfact(long b, const ScalarContext& ctx) { return Scalar::fromLaurent(qfactPoly(b), ctx); }
Scalar qbinom(long a, long b, const ScalarContext& ctx) {
  return Scalar::fromLaurent(qbinomPoly(a, b), ctx);
}

// --------------------------------------------------------------- specialize

Scalar specialize(const LaurentPoly& p, const ScalarContext& ctx) {
  if (ctx.kind() == CtxKind::Generic) return Scalar::fromLaurent(p, ctx);
  Scalar acc(ctx);
  for (const auto& [e, c] : p.terms()) {
    acc += Scalar::fromRational(mpq_class(c), ctx) * Scalar::vPower(e, ctx);
  }
  return acc;
}

Scalar specialize(const Scalar& generic, const ScalarContext& ctx) {
  if (generic.context().kind() != CtxKind::Generic)
    throw ScalarError("specialize: input must be generic");
  if (ctx.kind() == CtxKind::Generic) return generic;
  const RatFunc& rf = generic.ratFunc();
  Scalar den = specialize(rf.den, ctx);
  if (den.isZero()) throw DenominatorVanishes();
  return specialize(rf.num, ctx) / den;
}

// ------------------------------------------------------------- text format

namespace {

// Serialize a rational as "a" or "a/b".
std::string ratStr(const mpq_class& r) {
  if (r.get_den() == 1) return r.get_num().get_str();
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

// Sparse sum of c*z^k terms over rational coefficients, variable name `var`.
std::string polyTermsStr(const std::vector<std::pair<long, mpq_class>>& terms,
                         const std::string& var) {
  if (terms.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : terms) {
    mpq_class a = c;
    if (first) {
      if (a < 0) { os << "-"; a = -a; }
    } else {
      os << (a < 0 ? "-" : "+");
      if (a < 0) a = -a;
    }
    first = false;
    if (e == 0) {
      os << ratStr(a);
    } else {
      if (a != 1) os << ratStr(a) << "*";
      os << var;
      if (e != 1) os << "^" << e;
    }
  }
  return os.str();
}

struct Parser {
  const std::string& s;
  size_t pos = 0;
  explicit Parser(const std::string& str) : s(str) {}

  void skipWs() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }
  bool eat(char c) {
    skipWs();
    if (pos < s.size() && s[pos] == c) { ++pos; return true; }
    return false;
  }
  void expect(char c) {
    if (!eat(c)) throw ScalarError(std::string("parse: expected '") + c + "' in " + s);
  }
  mpz_class integer() {
    skipWs();
    size_t start = pos;
    if (pos < s.size() && (s[pos] == '-' || s[pos] == '+')) ++pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (start == pos) throw ScalarError("parse: expected integer in " + s);
    return mpz_class(s.substr(start, pos - start));
  }
  long exponent() {
    skipWs();
    size_t start = pos;
    if (pos < s.size() && (s[pos] == '-' || s[pos] == '+')) ++pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (start == pos) throw ScalarError("parse: expected exponent in " + s);
    return std::stol(s.substr(start, pos - start));
  }

  // Sum of terms in variable `var` with rational coefficients.
  std::vector<std::pair<long, mpq_class>> polyTerms(char var) {
    std::vector<std::pair<long, mpq_class>> out;
    skipWs();
    bool neg = false;
    if (eat('-')) neg = true;
    else eat('+');
    while (true) {
      mpq_class coeff(1);
      bool sawCoeff = false;
      skipWs();
      if (pos < s.size() && (std::isdigit(static_cast<unsigned char>(s[pos])))) {
        mpz_class n = integer();
        mpz_class d(1);
        if (eat('/')) d = integer();
        coeff = mpq_class(n) / mpq_class(d);
        coeff.canonicalize();
        sawCoeff = true;
      }
      long e = 0;
      bool sawVar = false;
      if (sawCoeff) {
        if (eat('*')) {
          skipWs();
          if (pos >= s.size() || s[pos] != var) throw ScalarError("parse: expected variable");
          ++pos;
          sawVar = true;
        }
      }
      if (!sawVar) {
        skipWs();
        if (pos < s.size() && s[pos] == var) { ++pos; sawVar = true; }
      }
      if (sawVar) {
        e = 1;
        if (eat('^')) e = exponent();
      } else if (!sawCoeff) {
        throw ScalarError("parse: expected term in " + s);
      }
      if (neg) coeff = -coeff;
      out.emplace_back(e, coeff);
      skipWs();
      if (eat('+')) neg = false;
      else if (eat('-')) neg = true;
      else break;
    }
    return out;
  }
};

LaurentPoly termsToLaurent(const std::vector<std::pair<long, mpq_class>>& terms) {
  LaurentPoly p;
  for (const auto& [e, c] : terms) {
    if (c.get_den() != 1) throw ScalarError("parse: integer coefficient expected");
    p.setCoeff(static_cast<int>(e), p.coeff(static_cast<int>(e)) + c.get_num());
  }
  return p;
}

}  // namespace

std::string Scalar::str() const {
  switch (ctx_.kind()) {
    case CtxKind::Generic:
      return "(" + ratFunc().num.str() + ")/(" + ratFunc().den.str() + ")";
    case CtxKind::Cyclotomic: {
      std::vector<std::pair<long, mpq_class>> terms;
      const auto& c = cyclo().coeffs;
      for (size_t i = 0; i < c.size(); ++i)
        if (c[i] != 0) terms.emplace_back(static_cast<long>(i), c[i]);
      return "zeta(" + std::to_string(ctx_.order()) + "):" + polyTermsStr(terms, "z");
    }
    case CtxKind::Rational: return ratStr(rationalValue());
  }
  return "";
}

Scalar Scalar::parse(const std::string& text, const ScalarContext& ctx) {
  Parser p(text);
  switch (ctx.kind()) {
    case CtxKind::Generic: {
      p.expect('(');
      auto numTerms = p.polyTerms('v');
      p.expect(')');
      p.expect('/');
      p.expect('(');
      auto denTerms = p.polyTerms('v');
      p.expect(')');
      Scalar s(ctx);
      s.value_ = RatFunc(termsToLaurent(numTerms), termsToLaurent(denTerms));
      return s;
    }
    case CtxKind::Cyclotomic: {
      p.skipWs();
      const std::string head = "zeta(";
      if (text.compare(p.pos, head.size(), head) != 0)
        throw ScalarError("parse: expected zeta(l) header");
      p.pos += head.size();
      mpz_class l = p.integer();
      p.expect(')');
      p.expect(':');
      if (l.get_si() != ctx.order()) throw ScalarError("parse: cyclotomic order mismatch");
      auto terms = p.polyTerms('z');
      std::vector<mpq_class> coeffs;
      long maxe = 0;
      for (const auto& [e, c] : terms) maxe = std::max(maxe, e);
      coeffs.assign(static_cast<size_t>(maxe) + 1, mpq_class(0));
      for (const auto& [e, c] : terms) {
        if (e < 0) throw ScalarError("parse: negative zeta exponent");
        coeffs[e] += c;
      }
      Scalar s(ctx);
      s.value_ = cycloReduce(std::move(coeffs), ctx);
      return s;
    }
    case CtxKind::Rational: {
      mpz_class n = p.integer();
      mpz_class d(1);
      if (p.eat('/')) d = p.integer();
      mpq_class r = mpq_class(n) / mpq_class(d);
      r.canonicalize();
      return Scalar::fromRational(r, ctx);
    }
  }
  throw ScalarError("parse: unreachable");
}

}  // namespace qcell
