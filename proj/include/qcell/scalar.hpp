#pragma once

#include <gmpxx.h>

#include <compare>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace qcell {

struct ScalarError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct DivisionByZero : ScalarError {
  DivisionByZero() : ScalarError("division by zero") {}
};
// Raised by specialize() when a generic denominator maps to 0; the caller must
// clear denominators generically before specializing.
struct DenominatorVanishes : ScalarError {
  DenominatorVanishes() : ScalarError("denominator specializes to zero") {}
};

/// Laurent polynomial in v with arbitrary-precision integer coefficients.
/// Canonical form: no zero coefficient is ever stored.
class LaurentPoly {
public:
  LaurentPoly() = default;
  explicit LaurentPoly(const mpz_class& c, int exp = 0);
  static LaurentPoly monomial(const mpz_class& c, int exp) { return LaurentPoly(c, exp); }

  bool isZero() const { return terms_.empty(); }
  bool isOne() const;
  int minExp() const;  // requires nonzero
  int maxExp() const;  // requires nonzero
  mpz_class coeff(int exp) const;
  const std::map<int, mpz_class>& terms() const { return terms_; }
  void setCoeff(int exp, const mpz_class& c);

  LaurentPoly operator+(const LaurentPoly& o) const;
  LaurentPoly operator-(const LaurentPoly& o) const;
  LaurentPoly operator-() const;
  LaurentPoly operator*(const LaurentPoly& o) const;
  bool operator==(const LaurentPoly& o) const { return terms_ == o.terms_; }

  LaurentPoly shifted(int k) const;  // multiply by v^k
  /// Exact division; throws ScalarError if the division leaves a remainder.
  LaurentPoly divExact(const LaurentPoly& o) const;
  /// Substitution v -> v^{-1}.
  LaurentPoly barInvolution() const;
  mpz_class content() const;

  /// gcd as Laurent polynomial: an ordinary polynomial with nonzero constant
  /// term, positive leading coefficient (pure v-powers are units and ignored).
  static LaurentPoly gcd(const LaurentPoly& a, const LaurentPoly& b);

  std::string str() const;

private:
  std::map<int, mpz_class> terms_;
};

/// Reduced fraction of Laurent polynomials. Canonical form: the denominator is
/// an ordinary polynomial with nonzero constant term, its lowest-degree
/// coefficient positive, gcd(num, den) = 1 and coprime contents.
struct RatFunc {
  LaurentPoly num, den;
  RatFunc() : num(), den(mpz_class(1)) {}
  RatFunc(LaurentPoly n, LaurentPoly d);
  void normalize();
  bool operator==(const RatFunc& o) const { return num == o.num && den == o.den; }
};

/// Element of Q(zeta_l) as a rational-coefficient polynomial in zeta reduced
/// modulo the l-th cyclotomic polynomial. coeffs.size() == deg(Phi_l).
struct CycloElem {
  std::vector<mpq_class> coeffs;
  bool operator==(const CycloElem& o) const { return coeffs == o.coeffs; }
};

/// Integer coefficients of the l-th cyclotomic polynomial, low degree first.
std::vector<mpz_class> cyclotomicPolynomial(int l);

enum class CtxKind { Generic, Cyclotomic, Rational };

class ScalarContext {
public:
  ScalarContext() : kind_(CtxKind::Generic) {}
  static ScalarContext generic() { return ScalarContext(); }
  static ScalarContext cyclotomic(int l);
  static ScalarContext rational(const mpq_class& q);

  CtxKind kind() const { return kind_; }
  int order() const { return l_; }  // Cyclotomic only
  const mpq_class& qValue() const { return *q_; }
  int cycloDegree() const { return cycloDeg_; }
  const std::vector<mpz_class>& cycloPoly() const { return *phi_; }

  bool operator==(const ScalarContext& o) const;
  bool operator!=(const ScalarContext& o) const { return !(*this == o); }
  std::string str() const;

private:
  CtxKind kind_;
  int l_ = 0;
  int cycloDeg_ = 0;
  std::shared_ptr<const std::vector<mpz_class>> phi_;
  std::shared_ptr<const mpq_class> q_;
};

/// Exact field element over one of the three supported coefficient fields.
/// All arithmetic is exact; division by zero throws, never yields a NaN.
class Scalar {
public:
  Scalar() : ctx_(), value_(RatFunc()) {}
  explicit Scalar(const ScalarContext& ctx);
  static Scalar zero(const ScalarContext& ctx) { return Scalar(ctx); }
  static Scalar one(const ScalarContext& ctx);
  static Scalar fromInt(long n, const ScalarContext& ctx);
  static Scalar fromRational(const mpq_class& r, const ScalarContext& ctx);
  /// The image of v^k (generic: monomial; cyclotomic: zeta^k; rational: q^k).
  static Scalar vPower(long k, const ScalarContext& ctx);
  static Scalar fromLaurent(const LaurentPoly& p, const ScalarContext& ctx);

  const ScalarContext& context() const { return ctx_; }
  bool isZero() const;
  bool isOne() const;

  Scalar operator+(const Scalar& o) const;
  Scalar operator-(const Scalar& o) const;
  Scalar operator-() const;
  Scalar operator*(const Scalar& o) const;
  Scalar operator/(const Scalar& o) const;
  Scalar inverse() const;
  Scalar& operator+=(const Scalar& o) { *this = *this + o; return *this; }
  Scalar& operator-=(const Scalar& o) { *this = *this - o; return *this; }
  Scalar& operator*=(const Scalar& o) { *this = *this * o; return *this; }
  bool operator==(const Scalar& o) const;
  bool operator!=(const Scalar& o) const { return !(*this == o); }

  const RatFunc& ratFunc() const { return std::get<RatFunc>(value_); }
  const CycloElem& cyclo() const { return std::get<CycloElem>(value_); }
  const mpq_class& rationalValue() const { return std::get<mpq_class>(value_); }

  /// Exact textual form; parse() inverts it bit-exactly.
  std::string str() const;
  static Scalar parse(const std::string& s, const ScalarContext& ctx);

private:
  ScalarContext ctx_;
  std::variant<RatFunc, CycloElem, mpq_class> value_;
  friend Scalar specialize(const Scalar&, const ScalarContext&);
};

/// Quantum integer [a] = (v^a - v^{-a})/(v - v^{-1}) evaluated in ctx.
Scalar qint(long a, const ScalarContext& ctx);
/// Quantum factorial [b]! = [1][2]...[b]; [0]! = 1.
Scalar qfact(long b, const ScalarContext& ctx);
/// Quantum binomial [a][a-1]...[a-b+1]/[b]!, computed generically (always a
/// Laurent polynomial) and then specialized, so no division can occur.
Scalar qbinom(long a, long b, const ScalarContext& ctx);

/// Generic quantum numbers as Laurent polynomials.
LaurentPoly qintPoly(long a);
LaurentPoly qfactPoly(long b);
LaurentPoly qbinomPoly(long a, long b);

/// Ring homomorphism v -> zeta_l (resp. v -> q) applied to a generic scalar.
/// Throws DenominatorVanishes when the denominator maps to zero.
Scalar specialize(const LaurentPoly& p, const ScalarContext& ctx);
Scalar specialize(const Scalar& generic, const ScalarContext& ctx);

}  // namespace qcell
