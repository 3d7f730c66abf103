#include "doctest.h"
#include "qcell/root_data.hpp"

#include <algorithm>

using namespace qcell;

TEST_CASE("fundamental alcove membership") {
  CHECK(inFundamentalAlcove(0, 3));
  CHECK(inFundamentalAlcove(1, 3));
  CHECK_FALSE(inFundamentalAlcove(2, 3));  // affine wall
  CHECK_FALSE(inFundamentalAlcove(-1, 3)); // non-affine wall
  CHECK_FALSE(inFundamentalAlcove(-1, 7));
  CHECK(inFundamentalAlcove(5, 7));
}

TEST_CASE("singular weights") {
  CHECK(isSingular(2, 3));
  CHECK_FALSE(isSingular(0, 3));
  CHECK(isSingular(5, 3));  // oracle: 5 + 1 = 2*3 lies on the second wall
  CHECK(isSingular(-1, 5));
  CHECK_FALSE(isSingular(3, 5));
}

TEST_CASE("linkage classes at l = 3") {
  CHECK(linkageClass(0, 3, 13) == std::vector<long>{0, 4, 6, 10, 12});
  CHECK(linkageClass(1, 3, 13) == std::vector<long>{1, 3, 7, 9, 13});
  CHECK(linkageClass(2, 3, 13) == std::vector<long>{2, 8});
}

TEST_CASE("dot action is an involution") {
  for (int l : {3, 5, 7})
    for (int r = -2; r <= 3; ++r) {
      AffineReflectionA1 s{l, r};
      for (long w = -1; w <= 4 * l; ++w) CHECK(s.apply(s.apply(w)) == w);
    }
}

TEST_CASE("linkage is symmetric and partitions weights consistently") {
  for (int l : {3, 5, 7}) {
    const long bound = 60;
    for (long a = 0; a <= 20; ++a) {
      auto ca = linkageClass(a, l, bound);
      for (long b = 0; b <= 20; ++b) {
        auto cb = linkageClass(b, l, bound);
        bool aInB = std::find(cb.begin(), cb.end(), a) != cb.end();
        bool bInA = std::find(ca.begin(), ca.end(), b) != ca.end();
        CHECK(aInB == bInA);
      }
    }
  }
}

TEST_CASE("every dominant weight is singular or inside a unique alcove") {
  for (int l : {3, 5, 7})
    for (long w = 0; w <= 40; ++w) {
      if (isSingular(w, l)) continue;
      // interior of the alcove (wall below, wall above)
      long below = ((w + 1) / l) * l - 1;
      CHECK(below < w);
      CHECK(w < below + l);
    }
}

TEST_CASE("rank-2 dominance order") {
  CHECK(dominanceLeqA2({0, 0}, {1, 1}));
  CHECK(dominanceLeqA2({1, 1}, {3, 3}));
  CHECK_FALSE(dominanceLeqA2({0, 6}, {3, 3}));
  CHECK(dominanceLeqA2({1, 1}, {3, 0}));        // difference is a simple root
  CHECK_FALSE(dominanceLeqA2({0, 0}, {1, 0}));  // difference not integral
  CHECK(dominanceLeqA2({0, 3}, {3, 3}));
  CHECK(dominanceLeqA2({3, 0}, {3, 3}));
}

TEST_CASE("rank-2 fixture suite") {
  A2FixtureReport rep = a2FixtureChecks();
  for (const auto& f : rep.failures) MESSAGE(f);
  CHECK(rep.pass);
}

TEST_CASE("rank-2 linkage details") {
  auto set11 = linkageClassA2({1, 1}, 3);
  CHECK(set11 == std::vector<WeightA2>{{0, 0}, {1, 1}});
  auto set33 = linkageClassA2({3, 3}, 3);
  CHECK(set33.size() == 7);
  CHECK(std::find(set33.begin(), set33.end(), WeightA2{4, 1}) != set33.end());
  CHECK(std::find(set33.begin(), set33.end(), WeightA2{0, 6}) == set33.end());
}
