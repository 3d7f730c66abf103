#include "doctest.h"
#include "qcell/matrix.hpp"

using namespace qcell;

namespace {
const ScalarContext G = ScalarContext::generic();

Matrix fromInts(const std::vector<std::vector<long>>& rows, const ScalarContext& ctx) {
  Matrix m(static_cast<int>(rows.size()), rows.empty() ? 0 : static_cast<int>(rows[0].size()),
           ctx);
  for (size_t r = 0; r < rows.size(); ++r)
    for (size_t c = 0; c < rows[r].size(); ++c)
      m.at(static_cast<int>(r), static_cast<int>(c)) = Scalar::fromInt(rows[r][c], ctx);
  return m;
}
}  // namespace

TEST_CASE("row reduction and rank") {
  Matrix m = fromInts({{1, 2, 3}, {2, 4, 6}, {1, 0, 1}}, G);
  CHECK(m.rank() == 2);
  CHECK(Matrix::identity(4, G).rank() == 4);
}

TEST_CASE("nullspace basis solves the system") {
  Matrix m = fromInts({{1, 2, 3}, {2, 4, 6}}, G);
  Matrix ns = m.nullspaceBasis();
  CHECK(ns.cols() == 2);
  CHECK((m * ns).isZero());
}

TEST_CASE("solve returns particular solutions with free variables zero") {
  Matrix a = fromInts({{1, 2}, {3, 4}}, G);
  Matrix b = fromInts({{5}, {11}}, G);
  auto x = a.solve(b);
  REQUIRE(x.has_value());
  CHECK(a * (*x) == b);

  Matrix singular = fromInts({{1, 1}, {1, 1}}, G);
  CHECK_FALSE(singular.solve(fromInts({{1}, {2}}, G)).has_value());
}

TEST_CASE("inverse over the rational function field") {
  Matrix a(2, 2, G);
  a.at(0, 0) = Scalar::vPower(1, G);
  a.at(0, 1) = Scalar::one(G);
  a.at(1, 0) = Scalar::one(G);
  a.at(1, 1) = Scalar::vPower(-1, G);
  // determinant v * v^-1 - 1 = 0: singular
  CHECK_FALSE(a.inverse().has_value());
  a.at(1, 1) = Scalar::vPower(1, G);
  auto inv = a.inverse();
  REQUIRE(inv.has_value());
  CHECK(a * (*inv) == Matrix::identity(2, G));
  CHECK((*inv) * a == Matrix::identity(2, G));
}

TEST_CASE("reduction works over a cyclotomic field") {
  ScalarContext c3 = ScalarContext::cyclotomic(3);
  Matrix a(2, 2, c3);
  a.at(0, 0) = Scalar::vPower(1, c3);        // zeta
  a.at(0, 1) = Scalar::vPower(2, c3);        // zeta^2
  a.at(1, 0) = Scalar::one(c3);
  a.at(1, 1) = Scalar::vPower(1, c3);
  // rows are proportional by zeta: rank 1
  CHECK(a.rank() == 1);
}
