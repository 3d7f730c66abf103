#include "qcell/tl.hpp"

#include <algorithm>
#include <functional>
#include <mutex>
#include <sstream>

namespace qcell {

// ----------------------------------------------------------------- TLDiagram

TLDiagram TLDiagram::identity(int d) {
  TLDiagram t;
  t.bot = t.top = d;
  t.match.resize(2 * d);
  for (int i = 0; i < d; ++i) {
    t.match[i] = d + i;
    t.match[d + i] = i;
  }
  return t;
}

TLDiagram TLDiagram::capCup(int d, int i) {
  TLDiagram t = identity(d);
  const int a = i - 1, b = i;  // bottom arc
  t.match[a] = b;
  t.match[b] = a;
  t.match[d + a] = d + b;
  t.match[d + b] = d + a;
  return t;
}

bool TLDiagram::valid() const {
  if (static_cast<int>(match.size()) != bot + top) return false;
  if ((bot + top) % 2 != 0) return false;
  for (int p = 0; p < bot + top; ++p) {
    if (match[p] < 0 || match[p] >= bot + top) return false;
    if (match[p] == p || match[match[p]] != p) return false;
  }
  return planar();
}

bool TLDiagram::planar() const {
  // Circular order: bottom left to right, then top right to left.
  const int n = bot + top;
  std::vector<int> circ(n), posOf(n);
  for (int i = 0; i < bot; ++i) circ[i] = i;
  for (int j = 0; j < top; ++j) circ[bot + j] = bot + top - 1 - j;
  for (int k = 0; k < n; ++k) posOf[circ[k]] = k;
  std::vector<int> stack;
  for (int k = 0; k < n; ++k) {
    int p = circ[k];
    if (!stack.empty() && stack.back() == match[p]) {
      stack.pop_back();
    } else if (posOf[match[p]] > k) {
      stack.push_back(p);
    } else {
      return false;  // partner already passed but not on top: crossing
    }
  }
  return stack.empty();
}

int TLDiagram::throughStrands() const {
  int t = 0;
  for (int i = 0; i < bot; ++i)
    if (match[i] >= bot) ++t;
  return t;
}

TLDiagram TLDiagram::flipped() const {
  TLDiagram r;
  r.bot = top;
  r.top = bot;
  r.match.resize(bot + top);
  auto relabel = [&](int p) { return p < bot ? top + p : p - bot; };
  for (int p = 0; p < bot + top; ++p) r.match[relabel(p)] = relabel(match[p]);
  return r;
}

TLDiagram TLDiagram::beside(const TLDiagram& o) const {
  TLDiagram r;
  r.bot = bot + o.bot;
  r.top = top + o.top;
  r.match.resize(r.bot + r.top);
  auto mine = [&](int p) { return p < bot ? p : p + o.bot; };
  auto theirs = [&](int p) { return p < o.bot ? bot + p : p + bot + top; };
  for (int p = 0; p < bot + top; ++p) r.match[mine(p)] = mine(match[p]);
  for (int p = 0; p < o.bot + o.top; ++p) r.match[theirs(p)] = theirs(o.match[p]);
  return r;
}

std::string TLDiagram::str() const {
  std::ostringstream os;
  if (bot == top)
    os << bot << ";";
  else
    os << bot << "," << top << ";";
  for (int p = 0; p < bot + top; ++p) {
    if (match[p] > p) os << " (" << p + 1 << "," << match[p] + 1 << ")";
  }
  return os.str();
}

TLDiagram TLDiagram::parse(const std::string& text) {
  TLDiagram t;
  size_t semi = text.find(';');
  if (semi == std::string::npos) throw TLError("diagram parse: missing ';'");
  std::string head = text.substr(0, semi);
  size_t comma = head.find(',');
  if (comma == std::string::npos) {
    t.bot = t.top = std::stoi(head);
  } else {
    t.bot = std::stoi(head.substr(0, comma));
    t.top = std::stoi(head.substr(comma + 1));
  }
  t.match.assign(t.bot + t.top, -1);
  size_t pos = semi + 1;
  while (true) {
    size_t open = text.find('(', pos);
    if (open == std::string::npos) break;
    size_t mid = text.find(',', open);
    size_t close = text.find(')', mid);
    if (mid == std::string::npos || close == std::string::npos)
      throw TLError("diagram parse: malformed pair");
    int a = std::stoi(text.substr(open + 1, mid - open - 1)) - 1;
    int b = std::stoi(text.substr(mid + 1, close - mid - 1)) - 1;
    if (a < 0 || b < 0 || a >= t.bot + t.top || b >= t.bot + t.top)
      throw TLError("diagram parse: point out of range");
    t.match[a] = b;
    t.match[b] = a;
    pos = close + 1;
  }
  if (!t.valid()) throw TLError("diagram parse: invalid matching");
  return t;
}

std::pair<TLDiagram, int> stackDiagrams(const TLDiagram& y, const TLDiagram& x) {
  if (y.bot != x.top) throw StrandMismatch();
  const int mid = x.top;
  // Node labels: 0..x.bot-1 bottom, then mid nodes, then top of y.
  // Each mid node carries two edges: one from x, one from y.
  TLDiagram r;
  r.bot = x.bot;
  r.top = y.top;
  r.match.assign(r.bot + r.top, -1);

  auto xPartner = [&](int p) { return x.match[p]; };          // in x labels
  auto yPartner = [&](int p) { return y.match[p]; };          // in y labels
  // Trace from an outer endpoint (diagram label in the result).
  std::vector<bool> usedMid(mid, false);
  auto trace = [&](int startOuter) {
    // startOuter: result label. Convert to x- or y-local and walk.
    bool inX = startOuter < r.bot;
    int p = inX ? startOuter : (startOuter - r.bot) + y.bot;  // local label
    while (true) {
      int q = inX ? xPartner(p) : yPartner(p);
      if (inX && q < x.bot) return q;                         // bottom endpoint
      if (!inX && q >= y.bot) return r.bot + (q - y.bot);     // top endpoint
      // q is a mid node: jump to the other diagram.
      int m = inX ? q - x.bot : q;
      usedMid[m] = true;
      if (inX) {
        p = m;  // y-local bottom label
        inX = false;
      } else {
        p = x.bot + m;
        inX = true;
      }
    }
  };
  for (int s = 0; s < r.bot + r.top; ++s) {
    if (r.match[s] >= 0) continue;
    int e = trace(s);
    r.match[s] = e;
    r.match[e] = s;
  }
  // Circles: mid-mid cycles never touched by the outer traces, alternating
  // an x edge (between x top points) and a y edge (between y bottom points).
  int circles = 0;
  for (int m = 0; m < mid; ++m) {
    if (usedMid[m]) continue;
    ++circles;
    int cur = m;
    bool useX = true;
    while (true) {
      usedMid[cur] = true;
      cur = useX ? xPartner(x.bot + cur) - x.bot : yPartner(cur);
      useX = !useX;
      if (cur == m && useX) break;
    }
  }
  return {r, circles};
}

// ----------------------------------------------------------------- TLElement

TLElement TLElement::unit(int d, const ScalarContext& ctx) {
  TLElement e(d, d, ctx);
  e.add(TLDiagram::identity(d), Scalar::one(ctx));
  return e;
}

TLElement TLElement::single(const TLDiagram& d, const ScalarContext& ctx) {
  TLElement e(d.bot, d.top, ctx);
  e.add(d, Scalar::one(ctx));
  return e;
}

void TLElement::add(const TLDiagram& d, const Scalar& c) {
  if (c.isZero()) return;
  auto it = terms_.find(d);
  if (it == terms_.end()) {
    terms_.emplace(d, c);
  } else {
    it->second += c;
    if (it->second.isZero()) terms_.erase(it);
  }
}

TLElement TLElement::operator+(const TLElement& o) const {
  TLElement r = *this;
  for (const auto& [d, c] : o.terms_) r.add(d, c);
  return r;
}

TLElement TLElement::operator-(const TLElement& o) const {
  TLElement r = *this;
  for (const auto& [d, c] : o.terms_) r.add(d, -c);
  return r;
}

TLElement TLElement::operator*(const Scalar& s) const {
  TLElement r(bot_, top_, ctx_);
  if (s.isZero()) return r;
  for (const auto& [d, c] : terms_) r.add(d, c * s);
  return r;
}

bool TLElement::operator==(const TLElement& o) const {
  return bot_ == o.bot_ && top_ == o.top_ && terms_ == o.terms_;
}

TLElement TLElement::flipped() const {
  TLElement r(top_, bot_, ctx_);
  for (const auto& [d, c] : terms_) r.add(d.flipped(), c);
  return r;
}

TLElement compose(const TLElement& y, const TLElement& x) {
  if (y.bot() != x.top()) throw StrandMismatch();
  const ScalarContext& ctx = x.context();
  const Scalar delta = qint(2, ctx);
  TLElement r(x.bot(), y.top(), ctx);
  for (const auto& [dy, cy] : y.terms())
    for (const auto& [dx, cx] : x.terms()) {
      auto [glued, circles] = stackDiagrams(dy, dx);
      Scalar coef = cy * cx;
      for (int k = 0; k < circles; ++k) coef *= delta;
      r.add(glued, coef);
    }
  return r;
}

// --------------------------------------------------------------- enumeration

namespace {

void matchPoints(const std::vector<int>& pts, std::vector<int>& match,
                 std::vector<TLDiagram>& out, int bot, int top) {
  if (pts.empty()) {
    TLDiagram t;
    t.bot = bot;
    t.top = top;
    t.match = match;
    out.push_back(t);
    return;
  }
  const int first = pts[0];
  for (size_t k = 1; k < pts.size(); k += 2) {
    match[first] = pts[k];
    match[pts[k]] = first;
    std::vector<int> inside(pts.begin() + 1, pts.begin() + k);
    std::vector<int> outside(pts.begin() + k + 1, pts.end());
    if (inside.empty()) {
      matchPoints(outside, match, out, bot, top);
    } else {
      // recurse on inside, then outside for each inside completion: do it by
      // composing the two recursions through a worklist
      std::vector<TLDiagram> insideDone;
      std::vector<int> scratch = match;
      matchPoints(inside, scratch, insideDone, bot, top);
      for (const auto& ins : insideDone) {
        std::vector<int> merged = ins.match;
        merged[first] = pts[k];
        merged[pts[k]] = first;
        // outside recursion with the merged state
        std::vector<int> m2 = merged;
        matchPoints(outside, m2, out, bot, top);
      }
    }
  }
}

}  // namespace

std::vector<TLDiagram> tlBasis(int d) {
  // Non-crossing matchings of the circular boundary sequence: bottom points
  // left to right, then the top points right to left.
  std::vector<int> circ;
  for (int i = 0; i < d; ++i) circ.push_back(i);
  for (int j = 2 * d - 1; j >= d; --j) circ.push_back(j);
  std::vector<int> match(2 * d, -1);
  std::vector<TLDiagram> out;
  matchPoints(circ, match, out, d, d);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// ------------------------------------------------------------------ tableaux

std::vector<TwoRowTableau> standardTableaux(int d, int k) {
  std::vector<TwoRowTableau> out;
  if (k < 0 || k > d || (d - k) % 2 != 0) return out;
  const int rows2 = (d - k) / 2;
  std::vector<int> cur;
  // choose second-row positions with the ballot condition
  std::function<void(int)> rec = [&](int next) {
    if (static_cast<int>(cur.size()) == rows2) {
      out.push_back(TwoRowTableau{d, cur});
      return;
    }
    for (int p = next; p <= d; ++p) {
      // prefix condition at p: (second-row entries <= p) < (first-row <= p)
      int snd = static_cast<int>(cur.size()) + 1;
      int fst = p - snd;
      if (fst < snd) continue;
      cur.push_back(p);
      rec(p + 1);
      cur.pop_back();
    }
  };
  rec(1);
  return out;
}

TLDiagram tableauToHalfDiagram(const TwoRowTableau& t) {
  const int d = t.d;
  const int k = d - 2 * static_cast<int>(t.secondRow.size());
  TLDiagram r;
  r.bot = d;
  r.top = k;
  r.match.assign(d + k, -1);
  std::vector<bool> capped(d, false);
  std::vector<bool> isSecond(d + 1, false);
  for (int s : t.secondRow) isSecond[s] = true;
  // cap each second-row entry with the nearest available entry to its left
  std::vector<int> stack;
  for (int p = 1; p <= d; ++p) {
    if (!isSecond[p]) {
      stack.push_back(p);
    } else {
      int partner = stack.back();
      stack.pop_back();
      r.match[partner - 1] = p - 1;
      r.match[p - 1] = partner - 1;
      capped[partner - 1] = capped[p - 1] = true;
    }
  }
  // remaining points become through strands in order
  int nextTop = 0;
  for (int p = 0; p < d; ++p) {
    if (capped[p]) continue;
    r.match[p] = d + nextTop;
    r.match[d + nextTop] = p;
    ++nextTop;
  }
  return r;
}

// ----------------------------------------------------- diagram cell basis

Matrix tlCoordinates(const TLElement& x, const std::vector<TLDiagram>& basis) {
  Matrix v(static_cast<int>(basis.size()), 1, x.context());
  for (const auto& [d, c] : x.terms()) {
    auto it = std::lower_bound(basis.begin(), basis.end(), d);
    if (it == basis.end() || !(*it == d)) throw TLError("diagram outside the basis");
    v.at(static_cast<int>(it - basis.begin()), 0) = c;
  }
  return v;
}

DiagramCellBasis grahamLehrerBasis(int d, const ScalarContext& ctx) {
  DiagramCellBasis out;
  out.d = d;
  out.diagrams = tlBasis(d);
  for (int k = d % 2; k <= d; k += 2) {
    out.levels.push_back(k);
    out.tableaux[k] = standardTableaux(d, k);
  }
  for (long k : out.levels) {
    const auto& tabs = out.tableaux[k];
    for (size_t s = 0; s < tabs.size(); ++s)
      for (size_t t = 0; t < tabs.size(); ++t) {
        TLDiagram xs = tableauToHalfDiagram(tabs[s]);
        TLDiagram xt = tableauToHalfDiagram(tabs[t]);
        auto [glued, circles] = stackDiagrams(xs.flipped(), xt);
        if (circles != 0) throw TLError("half-diagram pairing produced a circle");
        AbstractCellElement e;
        e.levelLabel = k;
        e.i = static_cast<int>(s);
        e.j = static_cast<int>(t);
        e.vec = tlCoordinates(TLElement::single(glued, ctx), out.diagrams);
        out.elements.push_back(std::move(e));
      }
  }
  return out;
}

// -------------------------------------------------------------- Jones-Wenzl

TLElement jonesWenzl(int d, const ScalarContext& ctx) {
  if (d < 1) throw TLError("jonesWenzl requires d >= 1");
  for (int k = 2; k <= d; ++k)
    if (qint(k, ctx).isZero()) throw CoefficientPole();
  TLElement jw = TLElement::unit(1, ctx);
  for (int n = 2; n <= d; ++n) {
    TLElement wide(n, n, ctx);
    for (const auto& [dg, c] : jw.terms()) wide.add(dg.beside(TLDiagram::identity(1)), c);
    TLElement u = TLElement::single(TLDiagram::capCup(n, n - 1), ctx);
    Scalar coef = qint(n - 1, ctx) / qint(n, ctx);
    jw = wide - compose(wide, compose(u, wide)) * coef;
  }
  return jw;
}

TLElement halfElement(const std::vector<int>& eps, const ScalarContext& ctx) {
  if (eps.empty() || eps[0] != 1) throw TLError("sign vector must start with +1");
  long sum = 0;
  for (int e : eps) {
    sum += e;
    if (sum < 0) throw TLError("sign vector has a negative partial sum");
  }
  TLElement t = TLElement::unit(1, ctx);  // t_{(+1)}
  long i = 1;
  for (size_t n = 1; n < eps.size(); ++n) {
    // widen by one strand on the right
    TLElement wide(t.bot() + 1, static_cast<int>(i) + 1, ctx);
    for (const auto& [dg, c] : t.terms()) wide.add(dg.beside(TLDiagram::identity(1)), c);
    if (eps[n] == 1) {
      t = compose(jonesWenzl(static_cast<int>(i) + 1, ctx), wide);
      ++i;
    } else {
      // cap the last two of the i+1 upper points, then project
      TLDiagram cap;
      cap.bot = static_cast<int>(i) + 1;
      cap.top = static_cast<int>(i) - 1;
      cap.match.assign(cap.bot + cap.top, -1);
      cap.match[i - 1] = static_cast<int>(i);
      cap.match[i] = static_cast<int>(i) - 1;
      for (int p = 0; p < static_cast<int>(i) - 1; ++p) {
        cap.match[p] = cap.bot + p;
        cap.match[cap.bot + p] = p;
      }
      TLElement capped = compose(TLElement::single(cap, ctx), wide);
      if (i - 1 >= 1)
        t = compose(jonesWenzl(static_cast<int>(i) - 1, ctx), capped);
      else
        t = capped;  // zero upper points: nothing to project
      --i;
    }
  }
  return t;
}

TLElement generalizedJW(const std::vector<int>& eps, const ScalarContext& ctx) {
  TLElement t = halfElement(eps, ctx);
  return compose(t.flipped(), t);
}

std::vector<std::vector<int>> admissibleSignVectors(int d) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  std::function<void(int, int)> rec = [&](int n, int sum) {
    if (n == d) {
      out.push_back(cur);
      return;
    }
    for (int e : {+1, -1}) {
      if (sum + e < 0) continue;
      cur.push_back(e);
      rec(n + 1, sum + e);
      cur.pop_back();
    }
  };
  rec(0, 0);
  return out;
}

IdempotentFamily rescaleToIdempotents(int d, const ScalarContext& ctx) {
  IdempotentFamily fam;
  fam.eps = admissibleSignVectors(d);
  for (const auto& eps : fam.eps) {
    TLElement jw = generalizedJW(eps, ctx);
    TLElement sq = compose(jw, jw);
    if (jw.isZero()) throw NotIdempotentable();
    // sq must be a scalar multiple of jw
    const auto& [d0, c0] = *jw.terms().begin();
    auto it = sq.terms().find(d0);
    if (it == sq.terms().end()) throw NotIdempotentable();
    Scalar ratio = it->second / c0;
    if (ratio.isZero() || !(sq == jw * ratio)) throw NotIdempotentable();
    fam.idempotents.push_back(jw * ratio.inverse());
  }
  return fam;
}

// --------------------------------------------------------------- Schur-Weyl

namespace {

// Frozen evaluation/coevaluation coefficients on the basis m_0, m_1 of the
// 2-dimensional module, chosen so the closed circle evaluates to +[2] and the
// cap-cup generators satisfy the diagram relations. With this convention the
// straightening move carries a sign, so diagram images are defined through
// reduced generator words, not by reading the matching off directly.
Scalar capCoef(int a, int b, const ScalarContext& ctx) {
  if (a == 0 && b == 1) return -Scalar::vPower(-1, ctx);
  if (a == 1 && b == 0) return Scalar::one(ctx);
  return Scalar::zero(ctx);
}

Scalar cupCoef(int a, int b, const ScalarContext& ctx) {
  if (a == 0 && b == 1) return -Scalar::one(ctx);
  if (a == 1 && b == 0) return Scalar::vPower(1, ctx);
  return Scalar::zero(ctx);
}

// Image of the cap-cup generator on strands i, i+1 (1-based).
Matrix capCupMatrix(int d, int i, const WeightModule& power) {
  const ScalarContext& ctx = power.context();
  Matrix m(power.dim(), power.dim(), ctx);
  const int shift = d - 1 - i;  // bit position of strand i+1
  for (int in = 0; in < power.dim(); ++in) {
    const int a = (in >> (shift + 1)) & 1, b = (in >> shift) & 1;
    if (a == b) continue;
    const Scalar c = capCoef(a, b, ctx);
    const int base = in & ~(3 << shift);
    // cup emits the two middle configurations
    m.at(base | (1 << shift), in) += c * cupCoef(0, 1, ctx);
    m.at(base | (1 << (shift + 1)), in) += c * cupCoef(1, 0, ctx);
  }
  return m;
}

/// Images of every planar diagram, grown from the identity by right
/// multiplication with the generators; circle factors are divided out so each
/// diagram gets the value of a reduced word. Memoized per (d, context) in a
/// write-once cache.
const std::map<TLDiagram, Matrix>& diagramImages(int d, const WeightModule& power) {
  static std::mutex mu;
  static std::map<std::string, std::map<TLDiagram, Matrix>> cache;
  std::lock_guard<std::mutex> lock(mu);
  const std::string key = std::to_string(d) + "|" + power.context().str();
  auto hit = cache.find(key);
  if (hit != cache.end()) return hit->second;

  const ScalarContext& ctx = power.context();
  std::map<TLDiagram, Matrix> images;
  std::vector<Matrix> gens;
  std::vector<TLDiagram> genDiagrams;
  for (int i = 1; i < d; ++i) {
    gens.push_back(capCupMatrix(d, i, power));
    genDiagrams.push_back(TLDiagram::capCup(d, i));
  }
  const Scalar delta = qint(2, ctx);
  const Scalar deltaInv = delta.inverse();

  std::vector<TLDiagram> work{TLDiagram::identity(d)};
  images.emplace(work[0], Matrix::identity(power.dim(), ctx));
  while (!work.empty()) {
    TLDiagram dg = work.back();
    work.pop_back();
    const Matrix& cur = images.at(dg);
    for (size_t gi = 0; gi < gens.size(); ++gi) {
      auto [next, circles] = stackDiagrams(dg, genDiagrams[gi]);
      if (images.count(next)) continue;
      Matrix img = cur * gens[gi];
      for (int c = 0; c < circles; ++c) img = img * deltaInv;
      images.emplace(next, std::move(img));
      work.push_back(next);
    }
  }
  return cache.emplace(key, std::move(images)).first->second;
}

}  // namespace

Matrix schurWeylDiagram(const TLDiagram& dg, const WeightModule& power) {
  const int d = dg.bot;
  if (dg.top != d || power.dim() != (1 << d))
    throw TLError("diagram does not act on this tensor power");
  return diagramImages(d, power).at(dg);
}

Matrix schurWeyl(const TLElement& x, const WeightModule& power) {
  Matrix m(power.dim(), power.dim(), power.context());
  for (const auto& [dg, c] : x.terms()) m = m + schurWeylDiagram(dg, power) * c;
  return m;
}

bool tlSemisimple(int d, const ScalarContext& ctx) {
  if (ctx.kind() != CtxKind::Cyclotomic) return true;
  return d < ctx.order();
}

// ----------------------------------------------------- transport / pullback

SchurWeylTransport::SchurWeylTransport(int d, const WeightModule& tensorPower)
    : d_(d), power_(tensorPower) {
  const ScalarContext& ctx = power_.context();
  basis_ = tlBasis(d);
  const int nb = static_cast<int>(basis_.size());
  std::vector<std::pair<int, int>> allCoords;
  for (int c = 0; c < power_.dim(); ++c)
    for (int r = 0; r < power_.dim(); ++r)
      if (power_.weights()[r] == power_.weights()[c]) allCoords.emplace_back(r, c);

  std::vector<Matrix> imgs;
  imgs.reserve(basis_.size());
  for (const auto& dg : basis_) imgs.push_back(schurWeylDiagram(dg, power_));

  // Greedy selection of coordinate rows until the image matrix has full
  // column rank; keeps the elimination at the Catalan-number scale.
  Matrix echelon(nb, nb, ctx);
  int kept = 0;
  for (const auto& [r, c] : allCoords) {
    if (kept == nb) break;
    Matrix row(1, nb, ctx);
    bool zero = true;
    for (int b = 0; b < nb; ++b) {
      row.at(0, b) = imgs[b].at(r, c);
      if (!row.at(0, b).isZero()) zero = false;
    }
    if (zero) continue;
    // reduce against the kept rows
    for (int e = 0; e < kept; ++e) {
      int pivot = -1;
      for (int b = 0; b < nb; ++b)
        if (!echelon.at(e, b).isZero()) { pivot = b; break; }
      if (pivot < 0) continue;
      const Scalar f = row.at(0, pivot) / echelon.at(e, pivot);
      if (f.isZero()) continue;
      for (int b = 0; b < nb; ++b)
        if (!echelon.at(e, b).isZero()) row.at(0, b) -= f * echelon.at(e, b);
    }
    bool reduced = true;
    for (int b = 0; b < nb; ++b)
      if (!row.at(0, b).isZero()) { reduced = false; break; }
    if (reduced) continue;
    for (int b = 0; b < nb; ++b) echelon.at(kept, b) = row.at(0, b);
    coords_.emplace_back(r, c);
    ++kept;
  }
  rank_ = kept;

  // Images restricted to the selected rows, and the full image table for the
  // residual verification during pullbacks.
  images_ = Matrix(static_cast<int>(allCoords.size()), nb, ctx);
  for (int b = 0; b < nb; ++b)
    for (size_t k = 0; k < allCoords.size(); ++k)
      images_.at(static_cast<int>(k), b) = imgs[b].at(allCoords[k].first, allCoords[k].second);
  allCoords_ = std::move(allCoords);
  if (rank_ == nb) {
    Matrix square(nb, nb, ctx);
    for (int k = 0; k < nb; ++k)
      for (int b = 0; b < nb; ++b)
        square.at(k, b) = imgs[b].at(coords_[k].first, coords_[k].second);
    solver_ = square.inverse().value();
  }
}

TLElement SchurWeylTransport::pullback(const Matrix& endo) const {
  const ScalarContext& ctx = power_.context();
  const int nb = static_cast<int>(basis_.size());
  if (rank_ != nb) throw TLError("pullback requires a full-rank representation");
  Matrix b(nb, 1, ctx);
  for (int k = 0; k < nb; ++k) b.at(k, 0) = endo.at(coords_[k].first, coords_[k].second);
  Matrix x = solver_ * b;
  // Verify the full system, including the off-selection coordinates and the
  // vanishing of all off-block entries.
  for (size_t k = 0; k < allCoords_.size(); ++k) {
    Scalar acc = Scalar::zero(ctx);
    for (int c = 0; c < nb; ++c) {
      const Scalar& ic = images_.at(static_cast<int>(k), c);
      if (!ic.isZero() && !x.at(c, 0).isZero()) acc += ic * x.at(c, 0);
    }
    if (!(acc == endo.at(allCoords_[k].first, allCoords_[k].second)))
      throw TLError("pullback: endomorphism outside the image");
  }
  for (int c = 0; c < endo.cols(); ++c)
    for (int r = 0; r < endo.rows(); ++r)
      if (!endo.at(r, c).isZero() && power_.weights()[r] != power_.weights()[c])
        throw TLError("pullback: endomorphism is not weight-graded");
  TLElement out(d_, d_, ctx);
  for (int c = 0; c < nb; ++c)
    if (!x.at(c, 0).isZero()) out.add(basis_[c], x.at(c, 0));
  return out;
}

PulledBackCellDatum pullbackCellDatum(const CellDatum& cd, const SchurWeylTransport& transport) {
  PulledBackCellDatum out;
  out.diagrams = transport.basis();
  out.d = out.diagrams.empty() ? 0 : out.diagrams[0].bot;
  for (const auto& lev : cd.levels) {
    out.levels.push_back(lev.lambda);
    std::vector<int> degs;
    const int n = static_cast<int>(lev.entries.size());
    for (int i = 0; i < n; ++i) degs.push_back(lev.entries[i].degree);
    out.degrees[lev.lambda] = degs;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        TLElement x = transport.pullback(cd.element(lev, i, j));
        AbstractCellElement e;
        e.levelLabel = lev.lambda;
        e.i = i;
        e.j = j;
        e.vec = tlCoordinates(x, out.diagrams);
        out.elements.push_back(std::move(e));
      }
  }
  return out;
}

}  // namespace qcell
