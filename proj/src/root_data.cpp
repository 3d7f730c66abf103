#include "qcell/root_data.hpp"

#include <algorithm>
#include <set>

namespace qcell {

bool inFundamentalAlcove(long lambda, int l) { return 0 < lambda + 1 && lambda + 1 < l; }

bool isSingular(long lambda, int l) { return (lambda + 1) % l == 0; }

std::vector<long> linkageClass(long lambda, int l, long bound) {
  std::set<long> seen;
  std::vector<long> todo{lambda};
  seen.insert(lambda);
  // Orbit closure under all wall reflections, clipped to [-1 - 2l, bound + 2l]
  // so that every reflection path between surviving weights is explored.
  const long lo = -1 - 2L * l, hi = bound + 2L * l;
  while (!todo.empty()) {
    long w = todo.back();
    todo.pop_back();
    const long rmin = (lo + w) / 2 / l - 2, rmax = (hi + w) / 2 / l + 2;
    for (long r = rmin; r <= rmax; ++r) {
      long img = AffineReflectionA1{l, static_cast<int>(r)}.apply(w);
      if (img < lo || img > hi) continue;
      if (seen.insert(img).second) todo.push_back(img);
    }
  }
  std::vector<long> out;
  for (long w : seen)
    if (w >= 0 && w <= bound) out.push_back(w);
  return out;
}

long alcoveLength(long lambda, int l) { return (lambda + 1) / l; }

// ---------------------------------------------------------------- rank 2

namespace {

// Simple roots and highest root in omega-coordinates, with pairings
// <(a1,a2), alpha_1^vee> = a1, <., alpha_2^vee> = a2, <., alpha_0^vee> = a1+a2.
struct RootA2 {
  long c1, c2;  // root written in the omega basis
  int idx;      // 0,1 -> simple; 2 -> highest root
};
const RootA2 kRoots[3] = {{2, -1, 0}, {-1, 2, 1}, {1, 1, 2}};

long pairing(const WeightA2& w, const RootA2& beta) {
  switch (beta.idx) {
    case 0: return w.a1;
    case 1: return w.a2;
    default: return w.a1 + w.a2;
  }
}

WeightA2 dotReflect(const WeightA2& lambda, const RootA2& beta, long r, int l) {
  WeightA2 shifted{lambda.a1 + 1, lambda.a2 + 1};  // + rho
  long n = pairing(shifted, beta) - static_cast<long>(l) * r;
  return WeightA2{shifted.a1 - n * beta.c1 - 1, shifted.a2 - n * beta.c2 - 1};
}

}  // namespace

bool dominanceLeqA2(const WeightA2& lambda, const WeightA2& mu) {
  // mu - lambda = a*alpha_1 + b*alpha_2 with a,b in N:
  // solving (2a - b, -a + 2b) = (d1, d2) gives 3a = 2 d1 + d2, 3b = d1 + 2 d2.
  long d1 = mu.a1 - lambda.a1, d2 = mu.a2 - lambda.a2;
  long ta = 2 * d1 + d2, tb = d1 + 2 * d2;
  return ta >= 0 && tb >= 0 && ta % 3 == 0 && tb % 3 == 0;
}

bool inFundamentalAlcoveA2(const WeightA2& lambda, int l) {
  long p1 = lambda.a1 + 1, p2 = lambda.a2 + 1, p0 = lambda.a1 + lambda.a2 + 2;
  return 0 < p1 && p1 < l && 0 < p2 && p2 < l && 0 < p0 && p0 < l;
}

namespace {

std::vector<WeightA2> closureWeights(int l) {
  std::vector<WeightA2> out;
  for (long a = -1; a <= l; ++a)
    for (long b = -1; b <= l; ++b) {
      long p1 = a + 1, p2 = b + 1, p0 = a + b + 2;
      if (0 <= p1 && p1 <= l && 0 <= p2 && p2 <= l && 0 <= p0 && p0 <= l)
        out.push_back(WeightA2{a, b});
    }
  return out;
}

}  // namespace

std::vector<WeightA2> nonAffineWallSetA2(int l) {
  // Points on a finite reflection wall; corners also lying on the affine wall
  // are listed with the affine set.
  std::vector<WeightA2> out;
  for (const auto& w : closureWeights(l))
    if ((w.a1 + 1 == 0 || w.a2 + 1 == 0) && w.a1 + w.a2 + 2 != l) out.push_back(w);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<WeightA2> affineWallSetA2(int l) {
  std::vector<WeightA2> out;
  for (const auto& w : closureWeights(l))
    if (w.a1 + w.a2 + 2 == l) out.push_back(w);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<WeightA2> linkageClassA2(const WeightA2& lambda, int l) {
  std::set<WeightA2> seen{lambda};
  std::vector<WeightA2> todo{lambda};
  const long bound = std::max(lambda.a1 + lambda.a2, 0L) + 3L * l;
  while (!todo.empty()) {
    WeightA2 w = todo.back();
    todo.pop_back();
    for (const auto& beta : kRoots) {
      long rmax = (std::abs(pairing(w, beta)) + bound) / l + 2;
      for (long r = -rmax; r <= rmax; ++r) {
        WeightA2 img = dotReflect(w, beta, r, l);
        if (std::abs(img.a1) > bound || std::abs(img.a2) > bound) continue;
        if (seen.insert(img).second) todo.push_back(img);
      }
    }
  }
  std::vector<WeightA2> out;
  for (const auto& w : seen)
    if (w.dominant() && dominanceLeqA2(w, lambda)) out.push_back(w);
  std::sort(out.begin(), out.end());
  return out;
}

long alcoveLengthA2(const WeightA2& lambda, int l) {
  WeightA2 shifted{lambda.a1 + 1, lambda.a2 + 1};
  long total = 0;
  for (const auto& beta : kRoots) total += pairing(shifted, beta) / l;
  return total;
}

A2FixtureReport a2FixtureChecks() {
  A2FixtureReport rep;
  const int l = 3;

  // Fundamental alcove of sl3 at l = 3 meets the dominant weights in (0,0)
  // alone.
  rep.check(inFundamentalAlcoveA2({0, 0}, l), "(0,0) in fundamental alcove");
  std::vector<WeightA2> domInA0;
  for (long a = 0; a <= 4; ++a)
    for (long b = 0; b <= 4; ++b)
      if (inFundamentalAlcoveA2({a, b}, l)) domInA0.push_back({a, b});
  rep.check(domInA0 == std::vector<WeightA2>{{0, 0}}, "dominant alcove interior == {(0,0)}");

  std::vector<WeightA2> expNonAffine{{-1, -1}, {-1, 0}, {-1, 1}, {0, -1}, {1, -1}};
  std::sort(expNonAffine.begin(), expNonAffine.end());
  rep.check(nonAffineWallSetA2(l) == expNonAffine, "non-affine wall set");

  std::vector<WeightA2> expAffine{{1, 0}, {0, 1}, {2, -1}, {-1, 2}};
  std::sort(expAffine.begin(), expAffine.end());
  rep.check(affineWallSetA2(l) == expAffine, "affine wall set");

  std::vector<WeightA2> exp11{{0, 0}, {1, 1}};
  std::sort(exp11.begin(), exp11.end());
  rep.check(linkageClassA2({1, 1}, l) == exp11, "linkage class of (1,1)");

  std::vector<WeightA2> exp33{{0, 0}, {1, 1}, {3, 0}, {0, 3}, {4, 1}, {1, 4}, {3, 3}};
  std::sort(exp33.begin(), exp33.end());
  rep.check(linkageClassA2({3, 3}, l) == exp33, "linkage class of (3,3)");

  // Recorded parabolic Kazhdan-Lusztig values for the blocks of (1,1) and
  // (3,3). Nonzero entries are v^(difference of alcove lengths); the (0,0)
  // entry of the (3,3) pattern vanishes.
  struct Fix { WeightA2 mu; long exp; };  // exp < 0 encodes a zero value
  const WeightA2 nu{1, 1}, xi{3, 3};
  const std::vector<Fix> nuTable{{{1, 1}, 0}, {{0, 0}, 1}};
  const std::vector<Fix> xiTable{{{3, 3}, 0},  {{4, 1}, 1},  {{1, 4}, 1}, {{3, 0}, 2},
                                 {{0, 3}, 2},  {{1, 1}, 3},  {{0, 0}, -1}};
  for (const auto& [mu, e] : nuTable) {
    if (e < 0) continue;
    rep.check(alcoveLengthA2(nu, l) - alcoveLengthA2(mu, l) == e,
              "KL exponent for nu block at (" + std::to_string(mu.a1) + "," +
                  std::to_string(mu.a2) + ")");
  }
  for (const auto& [mu, e] : xiTable) {
    if (e < 0) continue;
    rep.check(alcoveLengthA2(xi, l) - alcoveLengthA2(mu, l) == e,
              "KL exponent for xi block at (" + std::to_string(mu.a1) + "," +
                  std::to_string(mu.a2) + ")");
  }
  // Multiset of the six nonzero xi values: {1, v, v, v^2, v^2, v^3}.
  std::multiset<long> exps;
  for (const auto& [mu, e] : xiTable)
    if (e >= 0) exps.insert(e);
  rep.check(exps == std::multiset<long>{0, 1, 1, 2, 2, 3}, "xi value multiset");
  return rep;
}

}  // namespace qcell
