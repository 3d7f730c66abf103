#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "qcell/characters.hpp"
#include "qcell/matrix.hpp"
#include "qcell/weight_module.hpp"

namespace qcell {

struct TiltingError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
/// Peeling found no splittable summand although the character is too big.
struct PeelingStalled : TiltingError {
  PeelingStalled() : TiltingError("tilting peeling stalled") {}
};
/// No symmetric invariant bilinear form was found in the intertwiner space.
struct AsymmetricForm : TiltingError {
  AsymmetricForm() : TiltingError("no symmetric self-duality form found") {}
};
/// A lift equation had no solution; indicates an internal inconsistency.
struct LiftUnsolvable : TiltingError {
  LiftUnsolvable() : TiltingError("lift system unsolvable") {}
};

/// Explicit model of an indecomposable tilting module. The basis is adapted
/// to the Weyl submodule: the first top+1 basis vectors are the images of the
/// Weyl basis under the inclusion, so iota = [I; 0]. `form` is a symmetric
/// invertible intertwiner into the dual module, normalized so that the
/// composite pi o iota is the canonical map with highest-weight entry 1.
struct TiltingModel {
  long top = 0;
  WeightModule mod;
  Matrix iota;     // dim x (top+1)
  Matrix form;     // dim x dim, symmetric
  Matrix formInv;  // cached inverse
  Matrix pi;       // (top+1) x dim, equals iota^T * form
  TiltingMultiset weylFactors;
};

/// Build-once cache of tilting models keyed by (top weight, context), with an
/// optional directory of serialized models.
class TiltingCache {
public:
  TiltingCache() = default;
  explicit TiltingCache(std::string cacheDir) : dir_(std::move(cacheDir)) {}

  std::shared_ptr<const TiltingModel> find(long lambda, const ScalarContext& ctx) const;
  void store(long lambda, const ScalarContext& ctx, std::shared_ptr<const TiltingModel> m);
  const std::string& directory() const { return dir_; }
  /// Messages emitted when an on-disk entry failed validation.
  const std::vector<std::string>& notes() const { return notes_; }
  void note(const std::string& s) { notes_.push_back(s); }

private:
  std::string key(long lambda, const ScalarContext& ctx) const;
  std::map<std::string, std::shared_ptr<const TiltingModel>> mem_;
  std::string dir_;
  std::vector<std::string> notes_;
};

/// Tilting combinatorics context matching the scalar context: generic and
/// rational parameters behave semisimply, cyclotomic(l) uses the alcove data.
TiltingContext tiltingContextOf(const ScalarContext& ctx);

/// The indecomposable tilting module with highest weight lambda, built by
/// recursive summand peeling of T(lambda-1) (x) V. Deterministic.
std::shared_ptr<const TiltingModel> buildTilting(long lambda, const ScalarContext& ctx,
                                                 TiltingCache& cache);

/// Symmetric self-duality form of a tensor product from factor forms.
Matrix kroneckerForm(const Matrix& a, const Matrix& b);

/// Lifts through the Weyl inclusion: for each g in gs (a dim(M) x (top+1)
/// intertwiner from the Weyl module), an intertwiner gbar: T -> M with
/// gbar o iota = g, solved with free variables set to zero.
std::vector<Matrix> solveLifts(const TiltingModel& t, const WeightModule& M,
                               const std::vector<Matrix>& gs);

/// One indecomposable summand of a module: incl o proj is the idempotent and
/// proj o incl the identity on the model of T(mu).
struct Summand {
  long mu = 0;
  Matrix incl;  // dim M x dim T(mu)
  Matrix proj;  // dim T(mu) x dim M
};

/// Full decomposition into indecomposable tilting summands, peeled from the
/// maximal weight downward with self-adjoint splitting idempotents.
std::vector<Summand> decomposeModule(const WeightModule& M, const Matrix& form,
                                     TiltingCache& cache);

/// Self-duality data for an arbitrary tilting module: the symmetric form and
/// the induced algebra anti-involution phi -> form^{-1} phi^T form.
struct DualityData {
  Matrix form;
  Matrix formInv;
  Matrix involution(const Matrix& phi) const { return formInv * phi.transpose() * form; }
};

/// Finds a symmetric invertible intertwiner M -> D(M) by solving the
/// intertwiner system and symmetrizing; throws AsymmetricForm on failure.
DualityData dualityForm(const WeightModule& M);

/// JSON serialization of a tilting model (schema-versioned, exact scalars).
std::string tiltingModelToJson(const TiltingModel& m);
std::shared_ptr<TiltingModel> tiltingModelFromJson(const std::string& json,
                                                   const ScalarContext& ctx);

}  // namespace qcell
