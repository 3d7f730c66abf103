#include "qcell/weight_module.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>

namespace qcell {

// ----------------------------------------------------------------- SparseMat

void SparseMat::add(int r, int c, const Scalar& v) {
  if (v.isZero()) return;
  auto& column = col[c];
  for (auto& [row, val] : column) {
    if (row == r) {
      val += v;
      if (val.isZero()) {
        column.erase(std::find_if(column.begin(), column.end(),
                                  [&](const auto& p) { return p.first == r; }));
      }
      return;
    }
  }
  column.emplace_back(r, v);
}

bool SparseMat::isZero() const {
  for (const auto& c : col)
    if (!c.empty()) return false;
  return true;
}

Matrix SparseMat::dense(const ScalarContext& ctx) const {
  Matrix m(rows, cols, ctx);
  for (int c = 0; c < cols; ++c)
    for (const auto& [r, v] : col[c]) m.at(r, c) = v;
  return m;
}

Matrix SparseMat::apply(const Matrix& m) const {
  Matrix r(rows, m.cols(), m.context());
  for (int c = 0; c < cols; ++c)
    for (const auto& [row, v] : col[c])
      for (int j = 0; j < m.cols(); ++j) {
        const Scalar& x = m.at(c, j);
        if (!x.isZero()) r.at(row, j) += v * x;
      }
  return r;
}

Matrix SparseMat::applyRight(const Matrix& m) const {
  Matrix r(m.rows(), cols, m.context());
  for (int c = 0; c < cols; ++c)
    for (const auto& [row, v] : col[c])
      for (int i = 0; i < m.rows(); ++i) {
        const Scalar& x = m.at(i, row);
        if (!x.isZero()) r.at(i, c) += x * v;
      }
  return r;
}

SparseMat SparseMat::compose(const SparseMat& o) const {
  SparseMat r(rows, o.cols);
  for (int c = 0; c < o.cols; ++c) {
    std::map<int, Scalar> acc;
    for (const auto& [mid, v1] : o.col[c])
      for (const auto& [row, v2] : col[mid]) {
        auto it = acc.find(row);
        if (it == acc.end())
          acc.emplace(row, v2 * v1);
        else
          it->second += v2 * v1;
      }
    for (const auto& [row, v] : acc)
      if (!v.isZero()) r.col[c].emplace_back(row, v);
  }
  return r;
}

SparseMat SparseMat::transposed() const {
  SparseMat r(cols, rows);
  for (int c = 0; c < cols; ++c)
    for (const auto& [row, v] : col[c]) r.col[row].emplace_back(c, v);
  return r;
}

// -------------------------------------------------------------- WeightModule

WeightModule::WeightModule(ScalarContext ctx, std::vector<int> weights)
    : ctx_(std::move(ctx)), weights_(std::move(weights)) {
  for (int w : weights_) maxdp_ = std::max(maxdp_, std::abs(w));
  eAct_.assign(maxdp_, SparseMat(dim(), dim()));
  fAct_.assign(maxdp_, SparseMat(dim(), dim()));
  zero_ = SparseMat(dim(), dim());
}

int WeightModule::maxWeight() const {
  int m = weights_.empty() ? 0 : weights_[0];
  for (int w : weights_) m = std::max(m, w);
  return m;
}

const SparseMat& WeightModule::e(int j) const {
  return (j >= 1 && j <= maxdp_) ? eAct_[j - 1] : zero_;
}

const SparseMat& WeightModule::f(int j) const {
  return (j >= 1 && j <= maxdp_) ? fAct_[j - 1] : zero_;
}

std::vector<int> WeightModule::indicesOfWeight(int w) const {
  std::vector<int> idx;
  for (int i = 0; i < dim(); ++i)
    if (weights_[i] == w) idx.push_back(i);
  return idx;
}

std::vector<Scalar> WeightModule::kDiagonal(int power) const {
  std::vector<Scalar> d;
  d.reserve(dim());
  for (int w : weights_) d.push_back(Scalar::vPower(static_cast<long>(power) * w, ctx_));
  return d;
}

// ------------------------------------------------------------------ builders

WeightModule weylModule(int i, const ScalarContext& ctx) {
  std::vector<int> weights(i + 1);
  for (int k = 0; k <= i; ++k) weights[k] = i - 2 * k;
  WeightModule m(ctx, std::move(weights));
  for (int j = 1; j <= m.maxdp(); ++j) {
    for (int k = 0; k <= i; ++k) {
      if (k - j >= 0) m.eMut(j).add(k - j, k, qbinom(i - k + j, j, ctx));
      if (k + j <= i) m.fMut(j).add(k + j, k, qbinom(k + j, j, ctx));
    }
  }
  return m;
}

WeightModule dualModule(const WeightModule& m) {
  const ScalarContext& ctx = m.context();
  WeightModule d(ctx, m.weights());
  for (int j = 1; j <= m.maxdp(); ++j) {
    // omega(S(E^{(j)})) = (-1)^j v^{j(j-1)} K^j F^{(j)}, and the dual action
    // is the transpose of that operator; analogously for F^{(j)}.
    const long jj = static_cast<long>(j);
    const Scalar se = ((j % 2) ? -Scalar::one(ctx) : Scalar::one(ctx)) *
                      Scalar::vPower(jj * (jj - 1), ctx);
    const Scalar sf = ((j % 2) ? -Scalar::one(ctx) : Scalar::one(ctx)) *
                      Scalar::vPower(-jj * (jj - 1), ctx);
    const SparseMat& fj = m.f(j);
    for (int c = 0; c < fj.cols; ++c)
      for (const auto& [r, v] : fj.col[c]) {
        // (K^j F^{(j)})_{r,c} transposed lands at (c, r).
        d.eMut(j).add(c, r, se * Scalar::vPower(jj * m.weights()[r], ctx) * v);
      }
    const SparseMat& ej = m.e(j);
    for (int c = 0; c < ej.cols; ++c)
      for (const auto& [r, v] : ej.col[c]) {
        // (E^{(j)} K^{-j})_{r,c} = v^{-j w_c} E_{r,c}; transposed to (c, r).
        d.fMut(j).add(c, r, sf * Scalar::vPower(-jj * m.weights()[c], ctx) * v);
      }
  }
  return d;
}

WeightModule dualWeylModule(int i, const ScalarContext& ctx) {
  return dualModule(weylModule(i, ctx));
}

WeightModule tensorProduct(const WeightModule& m, const WeightModule& n) {
  if (m.context() != n.context()) throw ScalarError("tensorProduct: context mismatch");
  const ScalarContext& ctx = m.context();
  const int dm = m.dim(), dn = n.dim();
  std::vector<int> weights(static_cast<size_t>(dm) * dn);
  for (int a = 0; a < dm; ++a)
    for (int b = 0; b < dn; ++b) weights[static_cast<size_t>(a) * dn + b] = m.weights()[a] + n.weights()[b];
  WeightModule t(ctx, std::move(weights));

  auto addKron = [&](SparseMat& dst, const SparseMat& A, const SparseMat& B, const Scalar& coef) {
    for (int ca = 0; ca < A.cols; ++ca)
      for (const auto& [ra, va] : A.col[ca])
        for (int cb = 0; cb < B.cols; ++cb)
          for (const auto& [rb, vb] : B.col[cb])
            dst.add(ra * dn + rb, ca * dn + cb, coef * va * vb);
  };
  auto identityOf = [&](int d) {
    SparseMat id(d, d);
    for (int i = 0; i < d; ++i) id.col[i].emplace_back(i, Scalar::one(ctx));
    return id;
  };
  const SparseMat idM = identityOf(dm), idN = identityOf(dn);

  auto scaledByK = [&](const SparseMat& A, const WeightModule& mod, int kpow, bool onRows) {
    SparseMat r = A;
    for (int c = 0; c < r.cols; ++c)
      for (auto& [row, v] : r.col[c]) {
        int w = onRows ? mod.weights()[row] : mod.weights()[c];
        v *= Scalar::vPower(static_cast<long>(kpow) * w, ctx);
      }
    return r;
  };

  for (int j = 1; j <= t.maxdp(); ++j) {
    for (int a = 0; a <= j; ++a) {
      const int b = j - a;
      const Scalar coef = Scalar::vPower(static_cast<long>(a) * b, ctx);
      // E^{(a)} K^b on the left factor; K^b scales by the source weight.
      const SparseMat& Ea = (a == 0) ? idM : m.e(a);
      const SparseMat& Eb = (b == 0) ? idN : n.e(b);
      SparseMat left = (b == 0) ? Ea : scaledByK(Ea, m, b, false);
      addKron(t.eMut(j), left, Eb, coef);

      const SparseMat& Fa = (a == 0) ? idM : m.f(a);
      const SparseMat& Fb = (b == 0) ? idN : n.f(b);
      SparseMat right = (a == 0) ? Fb : scaledByK(Fb, n, -a, false);
      addKron(t.fMut(j), Fa, right, coef);
    }
  }
  return t;
}

WeightModule vectorPower(int d, const ScalarContext& ctx) {
  WeightModule v = weylModule(1, ctx);
  WeightModule r = weylModule(0, ctx);
  for (int i = 0; i < d; ++i) r = tensorProduct(r, v);
  return r;
}

// -------------------------------------------------------------- verification

namespace {

bool sparseEqual(const SparseMat& a, const SparseMat& b, const ScalarContext& ctx) {
  return (a.dense(ctx) - b.dense(ctx)).isZero();
}

SparseMat scaleSparse(const SparseMat& a, const Scalar& s) {
  SparseMat r = a;
  for (auto& c : r.col)
    for (auto& [row, v] : c) v *= s;
  return r;
}

}  // namespace

bool verifyModuleRelations(const WeightModule& m, std::string* why) {
  const ScalarContext& ctx = m.context();
  auto fail = [&](const std::string& s) {
    if (why) *why = s;
    return false;
  };
  // Weight grading: E^{(j)} raises by 2j, F^{(j)} lowers by 2j. This is the
  // matrix form of the K E^{(j)} = v^{2j} E^{(j)} K relations.
  for (int j = 1; j <= m.maxdp(); ++j) {
    for (int c = 0; c < m.dim(); ++c) {
      for (const auto& [r, v] : m.e(j).col[c])
        if (m.weights()[r] != m.weights()[c] + 2 * j) return fail("E grading violated");
      for (const auto& [r, v] : m.f(j).col[c])
        if (m.weights()[r] != m.weights()[c] - 2 * j) return fail("F grading violated");
    }
  }
  // [E, F] acts on a weight-w vector by the quantum integer [w].
  if (m.maxdp() >= 1) {
    SparseMat ef = m.e(1).compose(m.f(1));
    SparseMat fe = m.f(1).compose(m.e(1));
    Matrix diff = ef.dense(ctx) - fe.dense(ctx);
    for (int c = 0; c < m.dim(); ++c)
      for (int r = 0; r < m.dim(); ++r) {
        Scalar expect = (r == c) ? qint(m.weights()[c], ctx) : Scalar::zero(ctx);
        if (!(diff.at(r, c) == expect)) return fail("[E,F] relation violated");
      }
  }
  // Divided-power composition: E^{(a)} E^{(b)} = qbinom(a+b, a) E^{(a+b)}.
  for (int a = 1; a <= m.maxdp(); ++a)
    for (int b = 1; a + b <= m.maxdp() + 1 && b <= m.maxdp(); ++b) {
      SparseMat lhsE = m.e(a).compose(m.e(b));
      SparseMat rhsE = (a + b <= m.maxdp()) ? scaleSparse(m.e(a + b), qbinom(a + b, a, ctx))
                                            : SparseMat(m.dim(), m.dim());
      if (!sparseEqual(lhsE, rhsE, ctx)) return fail("E divided-power law violated");
      SparseMat lhsF = m.f(a).compose(m.f(b));
      SparseMat rhsF = (a + b <= m.maxdp()) ? scaleSparse(m.f(a + b), qbinom(a + b, a, ctx))
                                            : SparseMat(m.dim(), m.dim());
      if (!sparseEqual(lhsF, rhsF, ctx)) return fail("F divided-power law violated");
    }
  return true;
}

// ------------------------------------------------------------------ Hom work

Matrix highestWeightVectors(const WeightModule& m, int lambda) {
  const ScalarContext& ctx = m.context();
  const std::vector<int> idx = m.indicesOfWeight(lambda);
  if (idx.empty()) return Matrix(m.dim(), 0, ctx);

  // Constraint rows over the weight-lambda coordinates.
  std::vector<std::vector<Scalar>> rows;
  auto addConstraints = [&](const SparseMat& op) {
    // Rows of op restricted to columns idx, grouped by output index.
    std::map<int, std::vector<Scalar>> byRow;
    for (size_t c = 0; c < idx.size(); ++c)
      for (const auto& [r, v] : op.col[idx[c]]) {
        auto it = byRow.find(r);
        if (it == byRow.end())
          it = byRow.emplace(r, std::vector<Scalar>(idx.size(), Scalar::zero(ctx))).first;
        it->second[c] = v;
      }
    for (auto& [r, row] : byRow) rows.push_back(std::move(row));
  };
  for (int j = 1; j <= m.maxdp(); ++j) addConstraints(m.e(j));
  for (int k = lambda + 1; k <= m.maxdp(); ++k) addConstraints(m.f(k));

  Matrix sys(static_cast<int>(rows.size()), static_cast<int>(idx.size()), ctx);
  for (size_t r = 0; r < rows.size(); ++r)
    for (size_t c = 0; c < idx.size(); ++c) sys.at(static_cast<int>(r), static_cast<int>(c)) = rows[r][c];
  Matrix null = sys.nullspaceBasis();

  Matrix out(m.dim(), null.cols(), ctx);
  for (int c = 0; c < null.cols(); ++c)
    for (size_t r = 0; r < idx.size(); ++r) out.at(idx[r], c) = null.at(static_cast<int>(r), c);
  return out;
}

Matrix weylHomFromVector(const WeightModule& m, int lambda, const Matrix& hwCol) {
  const ScalarContext& ctx = m.context();
  Matrix g(m.dim(), lambda + 1, ctx);
  Matrix cur = hwCol;
  for (int k = 0; k <= lambda; ++k) {
    if (k > 0) cur = m.f(k).apply(hwCol);
    for (int r = 0; r < m.dim(); ++r) g.at(r, k) = cur.at(r, 0);
  }
  return g;
}

std::vector<Matrix> homFromWeyl(const WeightModule& m, int lambda) {
  Matrix hw = highestWeightVectors(m, lambda);
  std::vector<Matrix> out;
  for (int c = 0; c < hw.cols(); ++c) {
    Matrix colv(m.dim(), 1, m.context());
    for (int r = 0; r < m.dim(); ++r) colv.at(r, 0) = hw.at(r, c);
    out.push_back(weylHomFromVector(m, lambda, colv));
  }
  return out;
}

std::vector<Matrix> homToDualWeyl(const WeightModule& m, int lambda) {
  // Hom(M, DualWeyl(lambda)) = transpose-transport of Hom(Weyl(lambda), D(M)).
  WeightModule dm = dualModule(m);
  std::vector<Matrix> duals = homFromWeyl(dm, lambda);
  std::vector<Matrix> out;
  for (const auto& g : duals) out.push_back(g.transpose());
  return out;
}

std::vector<Matrix> homSpace(const WeightModule& src, const WeightModule& tgt) {
  if (src.context() != tgt.context()) throw ScalarError("homSpace: context mismatch");
  const ScalarContext& ctx = src.context();

  // Unknowns: entries (r, c) with matching weights, enumerated column-major.
  std::vector<std::pair<int, int>> unknowns;
  std::map<std::pair<int, int>, int> unknownIndex;
  for (int c = 0; c < src.dim(); ++c)
    for (int r = 0; r < tgt.dim(); ++r)
      if (src.weights()[c] == tgt.weights()[r]) {
        unknownIndex[{r, c}] = static_cast<int>(unknowns.size());
        unknowns.emplace_back(r, c);
      }

  const int maxdp = std::max(src.maxdp(), tgt.maxdp());
  std::vector<std::map<int, Scalar>> rows;
  auto addCommutator = [&](const SparseMat& opS, const SparseMat& opT) {
    // For each source column c and output row r (in tgt, weight w_c + shift):
    //   sum_mid opT[r, mid] X[mid, c] - sum_mid X[r, mid] opS[mid, c] = 0.
    for (int c = 0; c < src.dim(); ++c) {
      std::map<int, std::map<int, Scalar>> eqByRow;
      for (int mid = 0; mid < tgt.dim(); ++mid) {
        if (tgt.weights()[mid] != src.weights()[c]) continue;
        auto it = unknownIndex.find({mid, c});
        if (it == unknownIndex.end()) continue;
        for (const auto& [r, v] : opT.col[mid]) {
          auto& eq = eqByRow[r];
          auto jt = eq.find(it->second);
          if (jt == eq.end()) eq.emplace(it->second, v);
          else jt->second += v;
        }
      }
      for (const auto& [mid, v] : opS.col[c]) {
        for (int r = 0; r < tgt.dim(); ++r) {
          if (tgt.weights()[r] != src.weights()[mid]) continue;
          auto it = unknownIndex.find({r, mid});
          if (it == unknownIndex.end()) continue;
          auto& eq = eqByRow[r];
          auto jt = eq.find(it->second);
          if (jt == eq.end()) eq.emplace(it->second, -v);
          else jt->second -= v;
        }
      }
      for (auto& [r, eq] : eqByRow) {
        if (!eq.empty()) rows.push_back(std::move(eq));
      }
    }
  };
  for (int j = 1; j <= maxdp; ++j) {
    addCommutator(src.e(j), tgt.e(j));
    addCommutator(src.f(j), tgt.f(j));
  }

  Matrix sys(static_cast<int>(rows.size()), static_cast<int>(unknowns.size()), ctx);
  for (size_t r = 0; r < rows.size(); ++r)
    for (const auto& [u, v] : rows[r]) sys.at(static_cast<int>(r), u) = v;
  Matrix null = sys.nullspaceBasis();

  std::vector<Matrix> out;
  for (int k = 0; k < null.cols(); ++k) {
    Matrix phi(tgt.dim(), src.dim(), ctx);
    for (size_t u = 0; u < unknowns.size(); ++u)
      phi.at(unknowns[u].first, unknowns[u].second) = null.at(static_cast<int>(u), k);
    out.push_back(std::move(phi));
  }
  return out;
}

bool isIntertwiner(const WeightModule& src, const WeightModule& tgt, const Matrix& mat,
                   std::string* why) {
  auto fail = [&](const std::string& s) {
    if (why) *why = s;
    return false;
  };
  for (int c = 0; c < src.dim(); ++c)
    for (int r = 0; r < tgt.dim(); ++r)
      if (!mat.at(r, c).isZero() && tgt.weights()[r] != src.weights()[c])
        return fail("not weight-graded");
  const int maxdp = std::max(src.maxdp(), tgt.maxdp());
  for (int j = 1; j <= maxdp; ++j) {
    if (!(tgt.e(j).apply(mat) == src.e(j).applyRight(mat))) return fail("E commutation fails");
    if (!(tgt.f(j).apply(mat) == src.f(j).applyRight(mat))) return fail("F commutation fails");
  }
  return true;
}

}  // namespace qcell
