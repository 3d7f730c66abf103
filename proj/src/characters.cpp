#include "qcell/characters.hpp"

#include <algorithm>

#include "qcell/root_data.hpp"

namespace qcell {

long CharacterA1::mult(long weight) const {
  auto it = coeffs_.find(weight);
  return it == coeffs_.end() ? 0 : it->second;
}

void CharacterA1::add(long weight, long count) {
  if (count == 0) return;
  long& slot = coeffs_[weight];
  slot += count;
  if (slot == 0) coeffs_.erase(weight);
}

long CharacterA1::maxWeight() const { return coeffs_.rbegin()->first; }

CharacterA1 CharacterA1::operator+(const CharacterA1& o) const {
  CharacterA1 r = *this;
  for (const auto& [w, c] : o.coeffs_) r.add(w, c);
  return r;
}

CharacterA1 CharacterA1::operator-(const CharacterA1& o) const {
  CharacterA1 r = *this;
  for (const auto& [w, c] : o.coeffs_) r.add(w, -c);
  return r;
}

CharacterA1 CharacterA1::operator*(const CharacterA1& o) const {
  CharacterA1 r;
  for (const auto& [w1, c1] : coeffs_)
    for (const auto& [w2, c2] : o.coeffs_) r.add(w1 + w2, c1 * c2);
  return r;
}

bool CharacterA1::symmetric() const {
  for (const auto& [w, c] : coeffs_)
    if (mult(-w) != c) return false;
  return true;
}

long CharacterA1::totalDim() const {
  long d = 0;
  for (const auto& [w, c] : coeffs_) d += c;
  return d;
}

CharacterA1 weylCharacter(long lambda) {
  CharacterA1 ch;
  for (long w = lambda; w >= -lambda; w -= 2) ch.add(w, 1);
  return ch;
}

long tiltingWeylMult(long lambda, long mu, const TiltingContext& ctx) {
  if (lambda < 0 || mu < 0) return 0;
  if (mu == lambda) return 1;
  if (ctx.isGeneric()) return 0;
  const int l = ctx.l;
  // Singular weights and the closure of the fundamental alcove: T = Delta.
  if (isSingular(lambda, l) || lambda <= l - 1) return 0;
  // Regular lambda above the first wall: the mirror through the wall directly
  // below lambda is the unique further Weyl factor.
  const long wall = ((lambda + 1) / l) * l - 1;
  return (mu == 2 * wall - lambda) ? 1 : 0;
}

CharacterA1 tiltingCharacter(long lambda, const TiltingContext& ctx) {
  CharacterA1 ch = weylCharacter(lambda);
  for (long mu = lambda - 2; mu >= 0; mu -= 2)
    if (tiltingWeylMult(lambda, mu, ctx)) ch = ch + weylCharacter(mu);
  return ch;
}

TiltingMultiset decomposeTilting(CharacterA1 ch, const TiltingContext& ctx) {
  TiltingMultiset out;
  while (!ch.empty()) {
    const long top = ch.maxWeight();
    const long m = ch.mult(top);
    if (top < 0 || m < 0) throw InconsistentCharacter();
    out[top] = m;
    CharacterA1 t = tiltingCharacter(top, ctx);
    for (const auto& [w, c] : t.coeffs()) ch.add(w, -m * c);
    if (!ch.empty() && ch.maxWeight() >= top) throw InconsistentCharacter();
  }
  // Peeling can only stop cleanly; negative residues surface as weights whose
  // multiplicity went below zero.
  for (const auto& [w, c] : out)
    if (c < 0) throw InconsistentCharacter();
  return out;
}

CharacterA1 tensorPowerCharacter(int d) {
  CharacterA1 v = weylCharacter(1);
  CharacterA1 r = weylCharacter(0);
  for (int i = 0; i < d; ++i) r = r * v;
  return r;
}

namespace {

long binomial(long n, long k) {
  if (k < 0 || k > n) return 0;
  long r = 1;
  for (long i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
  return r;
}

}  // namespace

long stdTableauCount(long d, long k) {
  if (k < 0 || k > d || (d - k) % 2 != 0) return 0;
  const long rows2 = (d - k) / 2;
  return binomial(d, rows2) - binomial(d, rows2 - 1);
}

long alternatingSumMultiplicity(long d, long k, int l) {
  if (k < 0 || k > d || (d - k) % 2 != 0) return 0;
  if ((k + 1) % l == 0) return stdTableauCount(d, k);
  std::vector<long> orbit = linkageClass(k, l, d);
  long total = 0, sign = 1;
  for (long mu : orbit) {
    if (mu < k) continue;
    total += sign * stdTableauCount(d, mu);
    sign = -sign;
  }
  return total;
}

long catalan(int d) {
  long c = 1;
  for (int i = 0; i < d; ++i) c = c * 2 * (2 * i + 1) / (i + 2);
  return c;
}

}  // namespace qcell
