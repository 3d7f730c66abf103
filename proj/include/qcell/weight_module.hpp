#pragma once

#include <string>
#include <vector>

#include "qcell/matrix.hpp"
#include "qcell/scalar.hpp"

namespace qcell {

/// Column-major sparse matrix used for module action operators.
struct SparseMat {
  int rows = 0, cols = 0;
  std::vector<std::vector<std::pair<int, Scalar>>> col;

  SparseMat() = default;
  SparseMat(int r, int c) : rows(r), cols(c), col(c) {}
  void add(int r, int c, const Scalar& v);
  bool isZero() const;
  Matrix dense(const ScalarContext& ctx) const;
  /// Dense product (*this) * m.
  Matrix apply(const Matrix& m) const;
  /// Dense product m * (*this).
  Matrix applyRight(const Matrix& m) const;
  SparseMat compose(const SparseMat& o) const;  // (*this) * o
  SparseMat transposed() const;
};

/// Finite-dimensional module over quantum sl2 in a fixed weight basis: the
/// Cartan generator acts diagonally through `weights`, and the divided powers
/// E^{(j)}, F^{(j)} act by the stored sparse matrices for j = 1..maxdp.
class WeightModule {
public:
  WeightModule() = default;
  WeightModule(ScalarContext ctx, std::vector<int> weights);

  const ScalarContext& context() const { return ctx_; }
  int dim() const { return static_cast<int>(weights_.size()); }
  const std::vector<int>& weights() const { return weights_; }
  int maxdp() const { return maxdp_; }
  int maxWeight() const;

  /// E^{(j)} / F^{(j)} for j >= 1; identically zero matrices beyond maxdp.
  const SparseMat& e(int j) const;
  const SparseMat& f(int j) const;
  SparseMat& eMut(int j) { return eAct_[j - 1]; }
  SparseMat& fMut(int j) { return fAct_[j - 1]; }

  std::vector<int> indicesOfWeight(int w) const;
  /// Diagonal of K^power as scalars, entry per basis vector.
  std::vector<Scalar> kDiagonal(int power) const;

private:
  ScalarContext ctx_;
  std::vector<int> weights_;
  int maxdp_ = 0;
  std::vector<SparseMat> eAct_, fAct_;
  mutable SparseMat zero_;
};

/// Weyl module with highest weight i: basis m_0..m_i of weights i, i-2, ...,
/// -i and divided-power action by quantum binomials (computed generically and
/// specialized into ctx).
WeightModule weylModule(int i, const ScalarContext& ctx);

/// Contravariant dual: same weights; the action is the transpose of the
/// antipode-automorphism twist of the original action.
WeightModule dualModule(const WeightModule& m);

/// Dual Weyl module as the dual of the Weyl module.
WeightModule dualWeylModule(int i, const ScalarContext& ctx);

/// Tensor product with divided powers given by the coproduct expansion
///   E^{(j)} -> sum_{a+b=j} v^{ab} E^{(a)}K^b (x) E^{(b)},
///   F^{(j)} -> sum_{a+b=j} v^{ab} F^{(a)} (x) F^{(b)}K^{-a}.
/// Basis order: (i,j) -> i*dim(n) + j.
WeightModule tensorProduct(const WeightModule& m, const WeightModule& n);

/// d-th tensor power of the 2-dimensional Weyl module.
WeightModule vectorPower(int d, const ScalarContext& ctx);

/// Checks the defining relations as exact matrix identities: weight grading
/// of each E^{(j)}/F^{(j)}, the commutator [E,F] acting by quantum integers,
/// and the divided-power composition laws. Returns false with a reason.
bool verifyModuleRelations(const WeightModule& m, std::string* why = nullptr);

/// Columns spanning the weight-lambda vectors killed by every E^{(j)} and by
/// every F^{(k)} with k > lambda; this is Hom(Weyl(lambda), M) in coordinates
/// of the image of the highest-weight vector. Deterministic echelon basis.
Matrix highestWeightVectors(const WeightModule& m, int lambda);

/// Full matrices of a basis of Hom(Weyl(lambda), M), one dim(M) x (lambda+1)
/// matrix per basis element; column k is the image of the basis vector m_k.
std::vector<Matrix> homFromWeyl(const WeightModule& m, int lambda);

/// Expand a highest-weight vector into the full Weyl-source intertwiner.
Matrix weylHomFromVector(const WeightModule& m, int lambda, const Matrix& hwCol);

/// Basis of Hom(M, DualWeyl(lambda)) as (lambda+1) x dim(M) matrices (rows in
/// the dual-basis coordinates of the Weyl module).
std::vector<Matrix> homToDualWeyl(const WeightModule& m, int lambda);

/// General intertwiner-space solver: deterministic echelon basis of all
/// weight-graded matrices commuting with every divided power. Intended for
/// small modules; Weyl-module sources use homFromWeyl instead.
std::vector<Matrix> homSpace(const WeightModule& src, const WeightModule& tgt);

/// Exact check that `mat` (dim(tgt) x dim(src)) commutes with the actions and
/// is weight-graded.
bool isIntertwiner(const WeightModule& src, const WeightModule& tgt, const Matrix& mat,
                   std::string* why = nullptr);

}  // namespace qcell
