#include "qcell/tilting.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>

#include "json.hpp"

namespace qcell {

namespace fs = std::filesystem;
using nlohmann::json;

TiltingContext tiltingContextOf(const ScalarContext& ctx) {
  if (ctx.kind() == CtxKind::Cyclotomic) return TiltingContext::rootOfUnity(ctx.order());
  return TiltingContext::generic();
}

// ------------------------------------------------------------- TiltingCache

std::string TiltingCache::key(long lambda, const ScalarContext& ctx) const {
  return std::to_string(lambda) + "|" + ctx.str();
}

std::shared_ptr<const TiltingModel> TiltingCache::find(long lambda,
                                                       const ScalarContext& ctx) const {
  auto it = mem_.find(key(lambda, ctx));
  return it == mem_.end() ? nullptr : it->second;
}

void TiltingCache::store(long lambda, const ScalarContext& ctx,
                         std::shared_ptr<const TiltingModel> m) {
  mem_[key(lambda, ctx)] = std::move(m);
}

// ------------------------------------------------------------------- helpers

namespace {

CharacterA1 moduleCharacter(const WeightModule& m) {
  CharacterA1 ch;
  for (int w : m.weights()) ch.add(w, 1);
  return ch;
}

Matrix columnOf(const Matrix& m, int c) {
  Matrix v(m.rows(), 1, m.context());
  for (int r = 0; r < m.rows(); ++r) v.at(r, 0) = m.at(r, c);
  return v;
}

SparseMat denseToSparse(const Matrix& m) {
  SparseMat s(m.rows(), m.cols());
  for (int c = 0; c < m.cols(); ++c)
    for (int r = 0; r < m.rows(); ++r)
      if (!m.at(r, c).isZero()) s.col[c].emplace_back(r, m.at(r, c));
  return s;
}

/// Restrict a module to the kernel of a self-adjoint idempotent: K spans the
/// kernel, Y maps old coordinates to kernel coordinates (Y*K = id).
WeightModule restrictModule(const WeightModule& M, const Matrix& K, const Matrix& Y) {
  std::vector<int> weights(K.cols(), 0);
  for (int c = 0; c < K.cols(); ++c) {
    for (int r = 0; r < K.rows(); ++r)
      if (!K.at(r, c).isZero()) { weights[c] = M.weights()[r]; break; }
  }
  WeightModule R(M.context(), std::move(weights));
  for (int j = 1; j <= R.maxdp(); ++j) {
    if (j <= M.maxdp()) {
      Matrix ej = Y * M.e(j).apply(K);
      Matrix fj = Y * M.f(j).apply(K);
      R.eMut(j) = denseToSparse(ej);
      R.fMut(j) = denseToSparse(fj);
    }
  }
  return R;
}

/// Deterministic completion of independent columns g to a full basis using
/// standard basis vectors; returns the square change-of-basis matrix.
Matrix completeBasis(const Matrix& g) {
  const ScalarContext& ctx = g.context();
  const int n = g.rows();
  Matrix cand = g.hcat(Matrix::identity(n, ctx));
  Matrix probe = cand;
  std::vector<int> pivots = probe.rowReduce();
  if (static_cast<int>(pivots.size()) != n) throw TiltingError("basis completion failed");
  return cand.cols(pivots);
}

}  // namespace

Matrix kroneckerForm(const Matrix& a, const Matrix& b) {
  const ScalarContext& ctx = a.context();
  Matrix r(a.rows() * b.rows(), a.cols() * b.cols(), ctx);
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) {
      if (a.at(i, j).isZero()) continue;
      for (int k = 0; k < b.rows(); ++k)
        for (int l = 0; l < b.cols(); ++l) {
          if (b.at(k, l).isZero()) continue;
          r.at(i * b.rows() + k, j * b.cols() + l) = a.at(i, j) * b.at(k, l);
        }
    }
  return r;
}

// --------------------------------------------------------------- solveLifts

std::vector<Matrix> solveLifts(const TiltingModel& t, const WeightModule& M,
                               const std::vector<Matrix>& gs) {
  const ScalarContext& ctx = M.context();
  const int dimT = t.mod.dim(), dimM = M.dim();
  const int known = static_cast<int>(t.top) + 1;
  if (dimT == known) return gs;  // T = Weyl module, iota = id

  // Unknown entries: (r, c) for complement columns c with matching weights.
  std::vector<std::pair<int, int>> unknowns;
  std::map<std::pair<int, int>, int> uidx;
  for (int c = known; c < dimT; ++c)
    for (int r = 0; r < dimM; ++r)
      if (M.weights()[r] == t.mod.weights()[c]) {
        uidx[{r, c}] = static_cast<int>(unknowns.size());
        unknowns.emplace_back(r, c);
      }

  struct Row {
    std::map<int, Scalar> lhs;
    std::vector<Scalar> rhs;  // one per g
  };
  std::vector<Row> rows;
  const int maxdp = std::max(M.maxdp(), t.mod.maxdp());

  auto addConstraints = [&](const SparseMat& opM, const SparseMat& opT) {
    // For each T-column c and M-row r of weight w_c + dir*2j:
    //   sum_mid opM[r,mid] X[mid,c] - sum_c' X[r,c'] opT[c',c] = rhs-known part.
    for (int c = 0; c < dimT; ++c) {
      std::map<int, Row> byRow;
      auto rowSlot = [&](int r) -> Row& {
        auto it = byRow.find(r);
        if (it == byRow.end()) {
          it = byRow.emplace(r, Row{{}, std::vector<Scalar>(gs.size(), Scalar::zero(ctx))}).first;
        }
        return it->second;
      };
      // opM * X[:, c], assembled through the sparse columns of opM.
      for (int mid = 0; mid < dimM; ++mid) {
        if (M.weights()[mid] != t.mod.weights()[c]) continue;
        auto uit = uidx.find({mid, c});
        const bool unknownEntry = (uit != uidx.end()) && c >= known;
        if (!unknownEntry && c >= known) continue;
        // Walk opM entries out of `mid`.
        // For known columns use g values; for unknown columns use coefficients.
        // opM is column-sparse: entries (r, v) in opM.col[mid].
        for (const auto& [r, v] : opM.col[mid]) {
          Row& row = rowSlot(r);
          if (c < known) {
            for (size_t k = 0; k < gs.size(); ++k) {
              const Scalar& gv = gs[k].at(mid, c);
              if (!gv.isZero()) row.rhs[k] -= v * gv;
            }
          } else {
            auto jt = row.lhs.find(uit->second);
            if (jt == row.lhs.end()) row.lhs.emplace(uit->second, v);
            else jt->second += v;
          }
        }
      }
      // - X[:, c'] * opT[c', c]
      for (const auto& [cp, v] : opT.col[c]) {
        for (int r = 0; r < dimM; ++r) {
          if (M.weights()[r] != t.mod.weights()[cp]) continue;
          if (cp < known) {
            bool any = false;
            for (size_t k = 0; k < gs.size(); ++k)
              if (!gs[k].at(r, cp).isZero()) { any = true; break; }
            if (!any) continue;
            Row& row = rowSlot(r);
            for (size_t k = 0; k < gs.size(); ++k) {
              const Scalar& gv = gs[k].at(r, cp);
              if (!gv.isZero()) row.rhs[k] += v * gv;
            }
          } else {
            auto uit = uidx.find({r, cp});
            if (uit == uidx.end()) continue;
            Row& row = rowSlot(r);
            auto jt = row.lhs.find(uit->second);
            if (jt == row.lhs.end()) row.lhs.emplace(uit->second, -v);
            else jt->second -= v;
          }
        }
      }
      for (auto& [r, row] : byRow) {
        bool lhsZero = row.lhs.empty();
        bool rhsZero = true;
        for (const auto& s : row.rhs)
          if (!s.isZero()) { rhsZero = false; break; }
        if (lhsZero && rhsZero) continue;
        if (lhsZero && !rhsZero) throw LiftUnsolvable();
        rows.push_back(std::move(row));
      }
    }
  };
  for (int j = 1; j <= maxdp; ++j) {
    addConstraints(M.e(j), t.mod.e(j));
    addConstraints(M.f(j), t.mod.f(j));
  }

  Matrix A(static_cast<int>(rows.size()), static_cast<int>(unknowns.size()), ctx);
  Matrix B(static_cast<int>(rows.size()), static_cast<int>(gs.size()), ctx);
  for (size_t r = 0; r < rows.size(); ++r) {
    for (const auto& [u, v] : rows[r].lhs) A.at(static_cast<int>(r), u) = v;
    for (size_t k = 0; k < gs.size(); ++k) B.at(static_cast<int>(r), static_cast<int>(k)) = rows[r].rhs[k];
  }
  auto X = A.solve(B);
  if (!X) throw LiftUnsolvable();

  std::vector<Matrix> lifts;
  for (size_t k = 0; k < gs.size(); ++k) {
    Matrix gbar(dimM, dimT, ctx);
    for (int c = 0; c < known; ++c)
      for (int r = 0; r < dimM; ++r) gbar.at(r, c) = gs[k].at(r, c);
    for (size_t u = 0; u < unknowns.size(); ++u)
      gbar.at(unknowns[u].first, unknowns[u].second) = X->at(static_cast<int>(u), static_cast<int>(k));
    lifts.push_back(std::move(gbar));
  }
  return lifts;
}

// -------------------------------------------------------------- dualityForm

DualityData dualityForm(const WeightModule& M) {
  WeightModule dm = dualModule(M);
  std::vector<Matrix> sols = homSpace(M, dm);
  const Scalar half = Scalar::fromRational(mpq_class(1, 2), M.context());
  auto tryForm = [&](const Matrix& h) -> std::optional<DualityData> {
    Matrix sym = (h + h.transpose()) * half;
    if (!(sym == sym.transpose())) return std::nullopt;
    auto inv = sym.inverse();
    if (!inv) return std::nullopt;
    if (!isIntertwiner(M, dm, sym)) return std::nullopt;
    return DualityData{sym, *inv};
  };
  for (const auto& s : sols) {
    if (auto d = tryForm(s)) return *d;
  }
  for (size_t i = 0; i < sols.size(); ++i)
    for (size_t j = i + 1; j < sols.size(); ++j) {
      if (auto d = tryForm(sols[i] + sols[j])) return *d;
    }
  throw AsymmetricForm();
}

// ------------------------------------------------------------- peeling core

namespace {

struct PeelState {
  WeightModule mod;
  Matrix form;
  Matrix inclGlobal;  // original dim x current dim
  Matrix projGlobal;  // current dim x original dim
};

/// Extracts one T(mu)-summand through the non-isotropic highest-weight vector
/// hwCombo; updates the state in place and returns the global summand data.
Summand peelOne(PeelState& st, long mu, const Matrix& hwCombo, TiltingCache& cache,
                const ScalarContext& ctx) {
  auto tmu = buildTilting(mu, ctx, cache);
  Matrix g = weylHomFromVector(st.mod, static_cast<int>(mu), hwCombo);
  Matrix gbar = solveLifts(*tmu, st.mod, {g})[0];
  // fbar = i(gbar): T -> T(mu), using the two self-duality forms.
  Matrix fbar = tmu->formInv * gbar.transpose() * st.form;
  Matrix u = fbar * gbar;
  auto uinv = u.inverse();
  if (!uinv) throw PeelingStalled();
  Matrix incl = gbar * (*uinv);
  Matrix e = incl * fbar;
  if (!(e * e == e)) throw TiltingError("splitting idempotent is not idempotent");

  Summand s;
  s.mu = mu;
  s.incl = st.inclGlobal * incl;
  s.proj = fbar * st.projGlobal;

  Matrix K = e.nullspaceBasis();
  auto Y = K.solve(Matrix::identity(e.rows(), ctx) - e);
  if (!Y) throw TiltingError("kernel projection failed");
  st.mod = restrictModule(st.mod, K, *Y);
  st.form = K.transpose() * st.form * K;
  st.inclGlobal = st.inclGlobal * K;
  st.projGlobal = (*Y) * st.projGlobal;
  return s;
}

/// Peels all T(mu) summands for weights mu where `keep` is false; summands at
/// kept weights stay in the remainder.
std::vector<Summand> peelAll(PeelState& st, TiltingCache& cache,
                             const std::function<bool(long)>& keep) {
  const ScalarContext& ctx = st.mod.context();
  std::vector<Summand> out;
  if (st.mod.dim() == 0) return out;
  long mu = st.mod.maxWeight();
  for (; mu >= 0; mu -= 1) {
    if (st.mod.dim() == 0) break;
    if (mu > st.mod.maxWeight()) continue;
    if (keep(mu)) continue;
    while (true) {
      Matrix hw = highestWeightVectors(st.mod, static_cast<int>(mu));
      if (hw.cols() == 0) break;
      Matrix gram = hw.transpose() * st.form * hw;
      // Deterministic non-isotropic vector: first nonzero diagonal entry,
      // else the sum of the first anisotropic off-diagonal pair.
      int pick = -1, pick2 = -1;
      for (int i = 0; i < gram.rows() && pick < 0; ++i)
        if (!gram.at(i, i).isZero()) pick = i;
      if (pick < 0) {
        for (int i = 0; i < gram.rows() && pick < 0; ++i)
          for (int j = i + 1; j < gram.cols(); ++j)
            if (!gram.at(i, j).isZero()) { pick = i; pick2 = j; break; }
      }
      if (pick < 0) break;  // radical only: no further summand at mu
      Matrix x = columnOf(hw, pick);
      if (pick2 >= 0) x = x + columnOf(hw, pick2);
      out.push_back(peelOne(st, mu, x, cache, ctx));
    }
  }
  return out;
}

std::shared_ptr<TiltingModel> weylTiltingModel(long lambda, const ScalarContext& ctx) {
  auto m = std::make_shared<TiltingModel>();
  m->top = lambda;
  m->mod = weylModule(static_cast<int>(lambda), ctx);
  DualityData dd = dualityForm(m->mod);
  // Normalize so the highest-weight pairing is 1.
  const Scalar c00 = dd.form.at(0, 0);
  if (c00.isZero()) throw AsymmetricForm();
  m->form = dd.form * c00.inverse();
  m->formInv = m->form.inverse().value();
  m->iota = Matrix::identity(static_cast<int>(lambda) + 1, ctx);
  m->pi = m->iota.transpose() * m->form;
  m->weylFactors = {{lambda, 1}};
  return m;
}

std::string ctxSlug(const ScalarContext& ctx) {
  switch (ctx.kind()) {
    case CtxKind::Generic: return "generic";
    case CtxKind::Cyclotomic: return "l" + std::to_string(ctx.order());
    case CtxKind::Rational: {
      std::string s = ctx.qValue().get_str();
      for (auto& ch : s)
        if (ch == '/' || ch == '-') ch = '_';
      return "q" + s;
    }
  }
  return "ctx";
}

bool validateModel(const TiltingModel& m, const ScalarContext& ctx) {
  if (!verifyModuleRelations(m.mod)) return false;
  WeightModule dm = dualModule(m.mod);
  if (!isIntertwiner(m.mod, dm, m.form)) return false;
  if (!(m.form == m.form.transpose())) return false;
  if (m.form.at(0, 0) != Scalar::one(ctx)) return false;
  // iota = [I; 0] in the adapted basis.
  const int k = static_cast<int>(m.top) + 1;
  for (int c = 0; c < k; ++c)
    for (int r = 0; r < m.mod.dim(); ++r) {
      Scalar expect = (r == c) ? Scalar::one(ctx) : Scalar::zero(ctx);
      if (!(m.iota.at(r, c) == expect)) return false;
    }
  return true;
}

}  // namespace

std::shared_ptr<const TiltingModel> buildTilting(long lambda, const ScalarContext& ctx,
                                                 TiltingCache& cache) {
  if (lambda < 0) throw TiltingError("tilting weight must be dominant");
  if (auto hit = cache.find(lambda, ctx)) return hit;

  // Disk cache, when configured.
  const std::string file = cache.directory().empty()
                               ? std::string()
                               : cache.directory() + "/tilting_" + std::to_string(lambda) + "_" +
                                     ctxSlug(ctx) + ".json";
  if (!file.empty() && fs::exists(file)) {
    std::ifstream in(file);
    std::stringstream ss;
    ss << in.rdbuf();
    try {
      auto m = tiltingModelFromJson(ss.str(), ctx);
      if (m && validateModel(*m, ctx)) {
        std::shared_ptr<const TiltingModel> cm = m;
        cache.store(lambda, ctx, cm);
        return cm;
      }
      cache.note("cache entry invalid, rebuilding: " + file);
    } catch (const std::exception& e) {
      cache.note("cache entry unreadable, rebuilding: " + file + " (" + e.what() + ")");
    }
  }

  const TiltingContext tctx = tiltingContextOf(ctx);
  TiltingMultiset target;
  for (long mu = lambda; mu >= 0; mu -= 2) {
    long m = tiltingWeylMult(lambda, mu, tctx);
    if (m) target[mu] = m;
  }

  std::shared_ptr<TiltingModel> model;
  if (target.size() == 1) {
    model = weylTiltingModel(lambda, ctx);
  } else {
    auto prev = buildTilting(lambda - 1, ctx, cache);
    auto vmodel = buildTilting(1, ctx, cache);
    PeelState st;
    st.mod = tensorProduct(prev->mod, vmodel->mod);
    st.form = kroneckerForm(prev->form, vmodel->form);
    st.inclGlobal = Matrix::identity(st.mod.dim(), ctx);
    st.projGlobal = st.inclGlobal;
    peelAll(st, cache, [&](long mu) { return mu == lambda; });

    // The remainder must now realize the target character.
    CharacterA1 want;
    for (const auto& [mu, m] : target)
      for (long i = 0; i < m; ++i) want = want + weylCharacter(mu);
    if (!(moduleCharacter(st.mod) == want)) throw PeelingStalled();

    // Adapt the basis so the Weyl inclusion is [I; 0].
    Matrix hw = highestWeightVectors(st.mod, static_cast<int>(lambda));
    if (hw.cols() != 1) throw PeelingStalled();
    // Scale the highest-weight vector so its leading coordinate is 1.
    Matrix x = columnOf(hw, 0);
    for (int r = 0; r < x.rows(); ++r)
      if (!x.at(r, 0).isZero()) {
        x = x * x.at(r, 0).inverse();
        break;
      }
    Matrix g = weylHomFromVector(st.mod, static_cast<int>(lambda), x);
    Matrix P = completeBasis(g);
    auto Pinv = P.inverse();
    if (!Pinv) throw TiltingError("basis adaptation failed");

    model = std::make_shared<TiltingModel>();
    model->top = lambda;
    std::vector<int> weights(st.mod.dim());
    for (int c = 0; c < P.cols(); ++c) {
      for (int r = 0; r < P.rows(); ++r)
        if (!P.at(r, c).isZero()) { weights[c] = st.mod.weights()[r]; break; }
    }
    model->mod = WeightModule(ctx, weights);
    for (int j = 1; j <= model->mod.maxdp(); ++j) {
      if (j <= st.mod.maxdp()) {
        model->mod.eMut(j) = denseToSparse((*Pinv) * st.mod.e(j).apply(P));
        model->mod.fMut(j) = denseToSparse((*Pinv) * st.mod.f(j).apply(P));
      }
    }
    Matrix H = P.transpose() * st.form * P;
    const Scalar c00 = H.at(0, 0);
    if (c00.isZero()) throw AsymmetricForm();
    model->form = H * c00.inverse();
    model->formInv = model->form.inverse().value();
    model->iota = Matrix(model->mod.dim(), static_cast<int>(lambda) + 1, ctx);
    for (int c = 0; c <= lambda; ++c) model->iota.at(c, c) = Scalar::one(ctx);
    model->pi = model->iota.transpose() * model->form;
    model->weylFactors = target;
  }

  if (!validateModel(*model, ctx)) throw TiltingError("tilting model failed validation");

  if (!file.empty()) {
    fs::create_directories(cache.directory());
    std::ofstream out(file);
    out << tiltingModelToJson(*model);
  }
  std::shared_ptr<const TiltingModel> cm = model;
  cache.store(lambda, ctx, cm);
  return cm;
}

std::vector<Summand> decomposeModule(const WeightModule& M, const Matrix& form,
                                     TiltingCache& cache) {
  PeelState st;
  st.mod = M;
  st.form = form;
  st.inclGlobal = Matrix::identity(M.dim(), M.context());
  st.projGlobal = st.inclGlobal;
  std::vector<Summand> out = peelAll(st, cache, [](long) { return false; });
  if (st.mod.dim() != 0) throw PeelingStalled();
  return out;
}

// ------------------------------------------------------------- serialization

namespace {

json matrixToJson(const Matrix& m) {
  json rows = json::array();
  for (int r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (int c = 0; c < m.cols(); ++c) row.push_back(m.at(r, c).str());
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrixFromJson(const json& j, const ScalarContext& ctx) {
  const int rows = static_cast<int>(j.size());
  const int cols = rows ? static_cast<int>(j[0].size()) : 0;
  Matrix m(rows, cols, ctx);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) m.at(r, c) = Scalar::parse(j[r][c].get<std::string>(), ctx);
  return m;
}

json sparseToJson(const SparseMat& s) {
  json triples = json::array();
  for (int c = 0; c < s.cols; ++c)
    for (const auto& [r, v] : s.col[c]) triples.push_back({r, c, v.str()});
  return triples;
}

}  // namespace

std::string tiltingModelToJson(const TiltingModel& m) {
  json j;
  j["schema"] = 1;
  j["context"] = m.mod.context().str();
  j["top"] = m.top;
  j["weights"] = m.mod.weights();
  json evs = json::array(), fvs = json::array();
  for (int d = 1; d <= m.mod.maxdp(); ++d) {
    evs.push_back(sparseToJson(m.mod.e(d)));
    fvs.push_back(sparseToJson(m.mod.f(d)));
  }
  j["e"] = std::move(evs);
  j["f"] = std::move(fvs);
  j["form"] = matrixToJson(m.form);
  json wf = json::object();
  for (const auto& [mu, c] : m.weylFactors) wf[std::to_string(mu)] = c;
  j["weyl_factors"] = std::move(wf);
  return j.dump(1);
}

std::shared_ptr<TiltingModel> tiltingModelFromJson(const std::string& text,
                                                   const ScalarContext& ctx) {
  json j = json::parse(text);
  if (j.at("schema").get<int>() != 1) throw TiltingError("unknown schema version");
  if (j.at("context").get<std::string>() != ctx.str())
    throw TiltingError("cache context mismatch");
  auto m = std::make_shared<TiltingModel>();
  m->top = j.at("top").get<long>();
  std::vector<int> weights = j.at("weights").get<std::vector<int>>();
  if (m->top < 0 || weights.size() < static_cast<size_t>(m->top) + 1)
    throw TiltingError("cached model header inconsistent");
  m->mod = WeightModule(ctx, weights);
  const int dim = m->mod.dim();
  auto loadOps = [&](const json& arr, bool isE) {
    if (static_cast<int>(arr.size()) > m->mod.maxdp())
      throw TiltingError("cached model has out-of-range operators");
    for (size_t d = 0; d < arr.size(); ++d) {
      for (const auto& t : arr[d]) {
        int r = t[0].get<int>(), c = t[1].get<int>();
        if (r < 0 || r >= dim || c < 0 || c >= dim)
          throw TiltingError("cached model entry out of range");
        Scalar v = Scalar::parse(t[2].get<std::string>(), ctx);
        if (isE)
          m->mod.eMut(static_cast<int>(d) + 1).add(r, c, v);
        else
          m->mod.fMut(static_cast<int>(d) + 1).add(r, c, v);
      }
    }
  };
  loadOps(j.at("e"), true);
  loadOps(j.at("f"), false);
  m->form = matrixFromJson(j.at("form"), ctx);
  if (m->form.rows() != dim || m->form.cols() != dim)
    throw TiltingError("cached form has the wrong shape");
  auto inv = m->form.inverse();
  if (!inv) throw TiltingError("cached form not invertible");
  m->formInv = *inv;
  m->iota = Matrix(m->mod.dim(), static_cast<int>(m->top) + 1, ctx);
  for (int c = 0; c <= m->top; ++c) m->iota.at(c, c) = Scalar::one(ctx);
  m->pi = m->iota.transpose() * m->form;
  for (const auto& [k, v] : j.at("weyl_factors").items())
    m->weylFactors[std::stol(k)] = v.get<long>();
  return m;
}

}  // namespace qcell
