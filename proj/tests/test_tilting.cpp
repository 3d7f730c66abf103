#include "doctest.h"
#include "qcell/tilting.hpp"

#include <filesystem>
#include <fstream>

using namespace qcell;

namespace {
const ScalarContext G = ScalarContext::generic();
const ScalarContext C3 = ScalarContext::cyclotomic(3);
const ScalarContext C5 = ScalarContext::cyclotomic(5);

CharacterA1 charOf(const WeightModule& m) {
  CharacterA1 ch;
  for (int w : m.weights()) ch.add(w, 1);
  return ch;
}
}  // namespace

TEST_CASE("simple tilting modules coincide with Weyl modules") {
  TiltingCache cache;
  // inside the closure of the fundamental alcove, and for singular weights
  for (long lam : {0L, 1L, 2L}) {
    auto t = buildTilting(lam, C3, cache);
    CHECK(t->mod.dim() == lam + 1);
    CHECK(t->weylFactors == TiltingMultiset{{lam, 1}});
  }
  auto t5 = buildTilting(5, C3, cache);  // singular: 5 + 1 = 2*3
  CHECK(t5->mod.dim() == 6);
  auto g8 = buildTilting(8, G, cache);  // generic: always simple
  CHECK(g8->mod.dim() == 9);
}

TEST_CASE("nontrivial tilting modules at l = 3") {
  TiltingCache cache;
  auto t3 = buildTilting(3, C3, cache);
  CHECK(t3->mod.dim() == 6);  // Weyl factors of highest weight 3 and 1
  CHECK(t3->weylFactors == TiltingMultiset{{3, 1}, {1, 1}});
  CHECK(charOf(t3->mod) == weylCharacter(3) + weylCharacter(1));
  std::string why;
  CHECK_MESSAGE(verifyModuleRelations(t3->mod, &why), why);

  auto t4 = buildTilting(4, C3, cache);
  CHECK(t4->weylFactors == TiltingMultiset{{4, 1}, {0, 1}});
  CHECK(t4->mod.dim() == 6);

  auto t6 = buildTilting(6, C5, cache);
  CHECK(t6->weylFactors == TiltingMultiset{{6, 1}, {2, 1}});
}

TEST_CASE("tilting model invariants") {
  TiltingCache cache;
  for (const auto& ctx : {G, C3, C5}) {
    for (long lam = 0; lam <= 6; ++lam) {
      auto t = buildTilting(lam, ctx, cache);
      // unique maximal weight with one-dimensional weight space
      CHECK(t->mod.maxWeight() == lam);
      CHECK(t->mod.indicesOfWeight(static_cast<int>(lam)).size() == 1);
      // self-dual: the form is a symmetric invertible intertwiner
      CHECK(t->form == t->form.transpose());
      CHECK(isIntertwiner(t->mod, dualModule(t->mod), t->form));
      CHECK(t->form * t->formInv == Matrix::identity(t->mod.dim(), ctx));
      // pi o iota is the canonical pairing map with highest-weight entry 1
      Matrix c = t->pi * t->iota;
      CHECK(c.at(0, 0).isOne());
      // iota is the inclusion of the Weyl submodule
      WeightModule w = weylModule(static_cast<int>(lam), ctx);
      CHECK(isIntertwiner(w, t->mod, t->iota));
      CHECK(isIntertwiner(t->mod, dualWeylModule(static_cast<int>(lam), ctx), t->pi));
    }
  }
}

TEST_CASE("V tensor V at l = 3 splits as expected") {
  TiltingCache cache;
  WeightModule v2 = vectorPower(2, C3);
  auto v1 = buildTilting(1, C3, cache);
  Matrix form = kroneckerForm(v1->form, v1->form);
  auto summands = decomposeModule(v2, form, cache);
  REQUIRE(summands.size() == 2);
  CHECK(summands[0].mu == 2);
  CHECK(summands[1].mu == 0);
  // The top summand contains m_0 (x) m_0 (basis index 0).
  CHECK_FALSE(summands[0].proj.at(0, 0).isZero());
  // Projections and inclusions compose to identities and resolve the identity.
  const ScalarContext& ctx = C3;
  Matrix idSum(4, 4, ctx);
  for (const auto& s : summands) {
    Matrix pi = s.proj * s.incl;
    CHECK(pi == Matrix::identity(pi.rows(), ctx));
    idSum = idSum + s.incl * s.proj;
  }
  CHECK(idSum == Matrix::identity(4, ctx));
}

TEST_CASE("decomposition matches the character combinatorics") {
  TiltingCache cache;
  for (const auto& ctx : {G, C3, C5}) {
    for (int d = 1; d <= 5; ++d) {
      WeightModule t = vectorPower(d, ctx);
      auto v1 = buildTilting(1, ctx, cache);
      Matrix form = v1->form;
      for (int i = 1; i < d; ++i) form = kroneckerForm(form, v1->form);
      auto summands = decomposeModule(t, form, cache);
      TiltingMultiset got;
      for (const auto& s : summands) got[s.mu] += 1;
      CHECK(got == decomposeTilting(charOf(t), tiltingContextOf(ctx)));
      // orthogonal idempotent resolution
      Matrix idSum(t.dim(), t.dim(), ctx);
      for (const auto& s : summands) idSum = idSum + s.incl * s.proj;
      CHECK(idSum == Matrix::identity(t.dim(), ctx));
      for (size_t a = 0; a < summands.size(); ++a)
        for (size_t b = 0; b < summands.size(); ++b) {
          if (a == b) continue;
          CHECK((summands[a].proj * summands[b].incl).isZero());
        }
    }
  }
}

TEST_CASE("lifts extend homs through the Weyl inclusion") {
  TiltingCache cache;
  WeightModule t = vectorPower(3, C3);
  auto t1 = buildTilting(1, C3, cache);
  auto gs = homFromWeyl(t, 1);
  REQUIRE(gs.size() == 2);
  auto lifts = solveLifts(*t1, t, gs);
  for (size_t i = 0; i < gs.size(); ++i) {
    CHECK(isIntertwiner(t1->mod, t, lifts[i]));
    CHECK(lifts[i] * t1->iota == gs[i]);
  }
  // and through a genuinely bigger cover
  auto t3 = buildTilting(3, C3, cache);
  auto gs3 = homFromWeyl(t, 3);
  REQUIRE(gs3.size() == 1);
  auto lifts3 = solveLifts(*t3, t, gs3);
  CHECK(isIntertwiner(t3->mod, t, lifts3[0]));
  CHECK(lifts3[0] * t3->iota == gs3[0]);
}

TEST_CASE("duality involution is involutive and anti-multiplicative") {
  TiltingCache cache;
  WeightModule t = vectorPower(3, C3);
  auto v1 = buildTilting(1, C3, cache);
  Matrix form = kroneckerForm(kroneckerForm(v1->form, v1->form), v1->form);
  DualityData dd{form, form.inverse().value()};
  CHECK(isIntertwiner(t, dualModule(t), form));
  auto gs = homFromWeyl(t, 1);
  auto fs = homToDualWeyl(t, 1);
  std::vector<Matrix> endos;
  endos.push_back(Matrix::identity(t.dim(), C3));
  for (const auto& g : gs)
    for (const auto& f : fs) endos.push_back(g * f);
  for (const auto& a : endos) {
    CHECK(dd.involution(dd.involution(a)) == a);
    for (const auto& b : endos)
      CHECK(dd.involution(a * b) == dd.involution(b) * dd.involution(a));
  }
  CHECK(dd.involution(endos[0]) == endos[0]);  // i(id) = id
}

TEST_CASE("dualityForm solves small modules directly") {
  for (const auto& ctx : {G, C3}) {
    WeightModule t = vectorPower(2, ctx);
    DualityData dd = dualityForm(t);
    CHECK(dd.form == dd.form.transpose());
    CHECK(isIntertwiner(t, dualModule(t), dd.form));
  }
}

TEST_CASE("model serialization round-trips and bad cache entries are rejected") {
  namespace fs = std::filesystem;
  fs::path dir = fs::temp_directory_path() / "qcell_cache_test";
  fs::remove_all(dir);

  TiltingCache cache(dir.string());
  auto t3 = buildTilting(3, C3, cache);
  std::string file = dir.string() + "/tilting_3_l3.json";
  REQUIRE(fs::exists(file));

  // Round trip through a fresh cache.
  TiltingCache cache2(dir.string());
  auto loaded = buildTilting(3, C3, cache2);
  CHECK(loaded->mod.dim() == t3->mod.dim());
  CHECK(loaded->form == t3->form);
  CHECK(loaded->mod.e(1).dense(C3) == t3->mod.e(1).dense(C3));
  CHECK(cache2.notes().empty());

  // Corrupt the stored form: the loader must notice and rebuild.
  {
    std::ifstream in(file);
    std::string text((std::istreambuf_iterator<char>(in)), {});
    auto pos = text.find("\"form\"");
    REQUIRE(pos != std::string::npos);
    text.replace(text.find("zeta(3):", pos), 8, "zeta(3):9+");
    std::ofstream out(file);
    out << text;
  }
  TiltingCache cache3(dir.string());
  auto rebuilt = buildTilting(3, C3, cache3);
  CHECK(rebuilt->form == t3->form);
  CHECK_FALSE(cache3.notes().empty());

  // Corrupt the header: inconsistent dimensions must be rejected, not crash.
  {
    std::ifstream in(file);
    std::string text((std::istreambuf_iterator<char>(in)), {});
    auto pos = text.find("\"top\": 3");
    REQUIRE(pos != std::string::npos);
    text.replace(pos, 8, "\"top\": 9");
    std::ofstream out(file);
    out << text;
  }
  TiltingCache cache4(dir.string());
  auto rebuilt2 = buildTilting(3, C3, cache4);
  CHECK(rebuilt2->form == t3->form);
  CHECK_FALSE(cache4.notes().empty());
  fs::remove_all(dir);
}
