#include "doctest.h"
#include "qcell/cellular.hpp"
#include "qcell/tl.hpp"

#include <random>

using namespace qcell;

namespace {
const ScalarContext G = ScalarContext::generic();
const ScalarContext C3 = ScalarContext::cyclotomic(3);
}  // namespace

TEST_CASE("scalar strings survive a round trip through every context") {
  std::mt19937 rng(31337);
  std::uniform_int_distribution<int> d(-6, 6);
  for (const auto& ctx : {G, C3, ScalarContext::cyclotomic(9),
                          ScalarContext::rational(mpq_class(-3, 5))}) {
    for (int t = 0; t < 50; ++t) {
      Scalar s = qint(d(rng), ctx) * Scalar::vPower(d(rng), ctx) +
                 Scalar::fromRational(mpq_class(d(rng), 7), ctx);
      CHECK(Scalar::parse(s.str(), ctx) == s);
    }
  }
}

TEST_CASE("tilting model json round-trips exactly") {
  TiltingCache cache;
  for (const auto& ctx : {G, C3}) {
    for (long lam : {1L, 3L, 4L}) {
      auto t = buildTilting(lam, ctx, cache);
      auto back = tiltingModelFromJson(tiltingModelToJson(*t), ctx);
      CHECK(back->top == t->top);
      CHECK(back->mod.weights() == t->mod.weights());
      CHECK(back->form == t->form);
      CHECK(back->pi == t->pi);
      CHECK(back->weylFactors == t->weylFactors);
      for (int j = 1; j <= t->mod.maxdp(); ++j) {
        CHECK(back->mod.e(j).dense(ctx) == t->mod.e(j).dense(ctx));
        CHECK(back->mod.f(j).dense(ctx) == t->mod.f(j).dense(ctx));
      }
    }
  }
}

TEST_CASE("cell datum json carries the documented schema fields") {
  TiltingCache cache;
  auto t3 = buildTilting(3, C3, cache);
  CellDatum cd = cellularBasis(t3->mod, t3->form, cache);
  std::string j = cellDatumToJson(cd);
  for (const char* field : {"\"schema\"", "\"context\"", "\"poset\"", "\"index_sets\"",
                            "\"basis\"", "\"involution\"", "\"degrees\"",
                            "\"summand_multiplicities\""})
    CHECK(j.find(field) != std::string::npos);
}

TEST_CASE("diagram strings match the documented shape") {
  TLDiagram u1 = TLDiagram::capCup(3, 1);
  CHECK(u1.str() == "3; (1,2) (3,6) (4,5)");
  CHECK(TLDiagram::identity(2).str() == "2; (1,3) (2,4)");
  TLDiagram cap;
  cap.bot = 2;
  cap.top = 0;
  cap.match = {1, 0};
  CHECK(cap.str() == "2,0; (1,2)");
  CHECK(TLDiagram::parse(cap.str()) == cap);
}
