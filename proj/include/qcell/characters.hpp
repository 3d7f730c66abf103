#pragma once

#include <map>
#include <stdexcept>
#include <vector>

#include "qcell/scalar.hpp"

namespace qcell {

/// Thrown when character peeling produces a negative multiplicity, i.e. the
/// input was not the character of a tilting module for this parameter.
struct InconsistentCharacter : std::runtime_error {
  InconsistentCharacter() : std::runtime_error("character is not a tilting character") {}
};

/// Formal sl2 character: weight -> dimension of the weight space.
class CharacterA1 {
public:
  CharacterA1() = default;

  long mult(long weight) const;
  void add(long weight, long count);
  bool empty() const { return coeffs_.empty(); }
  long maxWeight() const;  // requires nonempty
  const std::map<long, long>& coeffs() const { return coeffs_; }

  CharacterA1 operator+(const CharacterA1& o) const;
  CharacterA1 operator-(const CharacterA1& o) const;
  /// Character of the tensor product (convolution).
  CharacterA1 operator*(const CharacterA1& o) const;
  bool operator==(const CharacterA1& o) const { return coeffs_ == o.coeffs_; }

  bool symmetric() const;
  long totalDim() const;

private:
  std::map<long, long> coeffs_;
};

/// chi(lambda): weight spaces lambda, lambda-2, ..., -lambda of dimension 1.
CharacterA1 weylCharacter(long lambda);

/// Multiplicities of indecomposable tilting summands, lambda -> m_lambda >= 0.
using TiltingMultiset = std::map<long, long>;

/// Context for tilting combinatorics: l = 0 encodes the generic (semisimple)
/// case, otherwise l is an odd integer >= 3.
struct TiltingContext {
  int l = 0;
  static TiltingContext generic() { return {0}; }
  static TiltingContext rootOfUnity(int l) { return {l}; }
  bool isGeneric() const { return l == 0; }
};

/// (T_q(lambda) : Delta_q(mu)) for sl2: 1 on the diagonal; 1 when mu is the
/// one-wall mirror of a regular lambda above the fundamental alcove; else 0.
long tiltingWeylMult(long lambda, long mu, const TiltingContext& ctx);

/// Character of the indecomposable tilting module with top weight lambda.
CharacterA1 tiltingCharacter(long lambda, const TiltingContext& ctx);

/// Unique multiset {m_lambda} with ch = sum m_lambda * ch(T(lambda)), found by
/// peeling maximal weights downward. Throws InconsistentCharacter.
TiltingMultiset decomposeTilting(CharacterA1 ch, const TiltingContext& ctx);

/// Character of V^{tensor d} for the 2-dimensional module V.
CharacterA1 tensorPowerCharacter(int d);

/// Number of standard two-row tableaux of shape ((d+k)/2, (d-k)/2).
long stdTableauCount(long d, long k);

/// Alternating-sum formula for the summand multiplicity of T(k) in V^{tensor
/// d} at a root of unity: plain tableau count on singular weights, signed sum
/// over the upward linkage orbit otherwise.
long alternatingSumMultiplicity(long d, long k, int l);

long catalan(int d);

}  // namespace qcell
