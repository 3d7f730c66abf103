#include "doctest.h"
#include "qcell/characters.hpp"
#include "qcell/root_data.hpp"

#include <random>

using namespace qcell;

namespace {
const TiltingContext GEN = TiltingContext::generic();
const TiltingContext L3 = TiltingContext::rootOfUnity(3);
const TiltingContext L5 = TiltingContext::rootOfUnity(5);
}  // namespace

TEST_CASE("weyl characters") {
  CHECK(weylCharacter(0).coeffs() == std::map<long, long>{{0, 1}});
  CHECK(weylCharacter(3).coeffs() ==
        std::map<long, long>{{3, 1}, {1, 1}, {-1, 1}, {-3, 1}});
  // character of V (x) V by the convolution oracle
  CharacterA1 sq = weylCharacter(1) * weylCharacter(1);
  CHECK(sq.coeffs() == std::map<long, long>{{2, 1}, {0, 2}, {-2, 1}});
}

TEST_CASE("tilting multiplicities at l = 3") {
  CHECK(tiltingWeylMult(3, 3, L3) == 1);
  CHECK(tiltingWeylMult(3, 1, L3) == 1);
  CHECK(tiltingWeylMult(3, 0, L3) == 0);
  CHECK(tiltingWeylMult(2, 0, L3) == 0);  // singular: T = Delta
  CHECK(tiltingWeylMult(2, 2, L3) == 1);
  for (long k = 0; k <= 12; ++k) {
    CHECK(tiltingWeylMult(k, k, GEN) == 1);
    CHECK(tiltingWeylMult(k, k, L5) == 1);
  }
}

TEST_CASE("multiplicity vanishes off the linkage class") {
  for (int l : {3, 5, 7}) {
    TiltingContext ctx = TiltingContext::rootOfUnity(l);
    for (long lam = 0; lam <= 20; ++lam) {
      auto linked = linkageClass(lam, l, lam);
      for (long mu = 0; mu <= lam; ++mu) {
        if (tiltingWeylMult(lam, mu, ctx) == 0) continue;
        CHECK(std::find(linked.begin(), linked.end(), mu) != linked.end());
      }
    }
  }
}

TEST_CASE("recorded tensor power decompositions") {
  CHECK(decomposeTilting(tensorPowerCharacter(3), L3) == TiltingMultiset{{3, 1}, {1, 1}});
  CHECK(decomposeTilting(tensorPowerCharacter(3), L5) == TiltingMultiset{{3, 1}, {1, 2}});
  CHECK(decomposeTilting(tensorPowerCharacter(3), GEN) == TiltingMultiset{{3, 1}, {1, 2}});
  CHECK(decomposeTilting(tensorPowerCharacter(4), L3) ==
        TiltingMultiset{{4, 1}, {2, 3}, {0, 1}});
  for (int l : {3, 5, 7})
    CHECK(decomposeTilting(tensorPowerCharacter(2), TiltingContext::rootOfUnity(l)) ==
          TiltingMultiset{{2, 1}, {0, 1}});
  CHECK(decomposeTilting(tensorPowerCharacter(1), L3) == TiltingMultiset{{1, 1}});
}

TEST_CASE("round trip: synthesize then decompose") {
  std::mt19937 rng(424242);
  std::uniform_int_distribution<int> wDist(0, 12), mDist(0, 3);
  for (int l : {3, 5, 7}) {
    TiltingContext ctx = TiltingContext::rootOfUnity(l);
    for (int trial = 0; trial < 50; ++trial) {
      TiltingMultiset ms;
      for (int k = 0; k < 4; ++k) {
        long m = mDist(rng);
        if (m) ms[wDist(rng)] += m;
      }
      CharacterA1 ch;
      for (const auto& [lam, m] : ms)
        for (long i = 0; i < m; ++i) ch = ch + tiltingCharacter(lam, ctx);
      CHECK(decomposeTilting(ch, ctx) == ms);
    }
  }
}

TEST_CASE("endomorphism dimension from the hom formula is the Catalan number") {
  // dim End(V^(x)d) = sum over lambda of (T:Delta)(T:Nabla); the filtration
  // multiplicities are character data, so the sum cannot depend on l.
  for (int d = 0; d <= 10; ++d) {
    CharacterA1 ch = tensorPowerCharacter(d);
    for (const TiltingContext& ctx : {GEN, L3, L5, TiltingContext::rootOfUnity(7)}) {
      TiltingMultiset summands = decomposeTilting(ch, ctx);
      std::map<long, long> weylMult;
      for (const auto& [lam, m] : summands)
        for (long mu = lam; mu >= 0; mu -= 2)
          weylMult[mu] += m * tiltingWeylMult(lam, mu, ctx);
      long sum = 0;
      for (const auto& [lam, m] : weylMult) sum += m * m;
      CHECK(sum == catalan(d));
    }
  }
}

TEST_CASE("inconsistent characters are rejected") {
  CharacterA1 bad;
  bad.add(2, 1);  // asymmetric: not a module character
  CHECK_THROWS_AS(decomposeTilting(bad, L3), InconsistentCharacter);
  // chi(4) + chi(2): at l = 3 the T(4) peel forces a negative chi(0).
  CharacterA1 bad2 = weylCharacter(4) + weylCharacter(2);
  CHECK_THROWS_AS(decomposeTilting(bad2, L3), InconsistentCharacter);
}

TEST_CASE("alternating-sum multiplicity formula at l = 3") {
  for (int d = 1; d <= 8; ++d) {
    TiltingMultiset ms = decomposeTilting(tensorPowerCharacter(d), L3);
    for (long k = d % 2; k <= d; k += 2) {
      long expect = ms.count(k) ? ms.at(k) : 0;
      CHECK(alternatingSumMultiplicity(d, k, 3) == expect);
    }
  }
}

TEST_CASE("standard tableau counts") {
  CHECK(stdTableauCount(3, 3) == 1);
  CHECK(stdTableauCount(3, 1) == 2);
  CHECK(stdTableauCount(6, 2) == 9);
  long sum = 0;
  for (long k = 0; k <= 8; k += 2) sum += stdTableauCount(8, k) * stdTableauCount(8, k);
  CHECK(sum == catalan(8));
}
