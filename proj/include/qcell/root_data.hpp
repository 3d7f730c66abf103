#pragma once

#include <string>
#include <vector>

#include "qcell/scalar.hpp"

namespace qcell {

// Rank-1 weight and alcove combinatorics. Dominant weights are identified
// with nonnegative integers, the full weight lattice with the integers, and
// rho = 1. The affine reflection indexed by r acts through the wall at
// l*r - 1 in the rho-shifted picture.

struct AffineReflectionA1 {
  int l;
  int r;
  /// Dot-action: reflect about the wall at l*r - 1.
  long apply(long weight) const { return 2L * (static_cast<long>(l) * r - 1) - weight; }
};

/// True iff 0 < lambda + 1 < l (interior of the fundamental alcove).
bool inFundamentalAlcove(long lambda, int l);

/// True iff lambda lies on a wall, i.e. l divides lambda + 1.
bool isSingular(long lambda, int l);

/// All dominant weights mu <= bound in the affine-Weyl dot-orbit of lambda,
/// ascending. Orbits are infinite, hence the explicit bound.
std::vector<long> linkageClass(long lambda, int l, long bound);

/// Number of walls strictly between the alcove of a regular dominant weight
/// and the fundamental alcove.
long alcoveLength(long lambda, int l);

// Rank-2 (sl3) weights in the (omega_1, omega_2) coordinates. Provided for
// the fixed l = 3 verification data; there is no general rank-2 engine here.

struct WeightA2 {
  long a1 = 0, a2 = 0;
  bool dominant() const { return a1 >= 0 && a2 >= 0; }
  bool operator==(const WeightA2& o) const { return a1 == o.a1 && a2 == o.a2; }
  auto operator<=>(const WeightA2& o) const = default;
};

/// lambda <= mu in the dominance order (difference a nonnegative integer
/// combination of simple roots).
bool dominanceLeqA2(const WeightA2& lambda, const WeightA2& mu);

bool inFundamentalAlcoveA2(const WeightA2& lambda, int l);
/// Weights of the closure lying on the listed walls.
std::vector<WeightA2> nonAffineWallSetA2(int l);
std::vector<WeightA2> affineWallSetA2(int l);

/// Dominant weights in the dot-orbit of lambda that are <= lambda in
/// dominance order, sorted.
std::vector<WeightA2> linkageClassA2(const WeightA2& lambda, int l);

/// Alcove distance from the fundamental alcove for regular dominant weights:
/// sum over positive roots of floor(<lambda+rho, beta^vee>/l).
long alcoveLengthA2(const WeightA2& lambda, int l);

struct A2FixtureReport {
  bool pass = true;
  std::vector<std::string> failures;
  void check(bool ok, const std::string& what) {
    if (!ok) { pass = false; failures.push_back(what); }
  }
};

/// Verifies the hard-coded l = 3 rank-2 facts: fundamental-alcove membership,
/// wall sets, the linkage classes of (1,1) and (3,3), and the recorded
/// parabolic Kazhdan-Lusztig values against alcove-length exponents.
A2FixtureReport a2FixtureChecks();

}  // namespace qcell
