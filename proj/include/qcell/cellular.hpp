#pragma once

#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "qcell/tilting.hpp"

namespace qcell {

struct CellularError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// One index of a cell level: a basis vector of Hom(Weyl(lambda), T) together
/// with its lift through the tilting cover and an optional grading degree.
struct CellEntry {
  Matrix g;     // dim(T) x (lambda+1)
  Matrix gbar;  // dim(T) x dim(T(lambda)); composed with iota this gives g
  int degree = 0;
};

struct CellLevel {
  long lambda = 0;
  std::vector<CellEntry> entries;
  Matrix gram;         // pairing values theta(g_i, g_j)
  Matrix formInvTop;   // cached inverse form of T(lambda)
};

/// Cellular structure data for End(T): poset of weights with their index
/// sets, the basis through lifted factorizations, and the duality involution.
struct CellDatum {
  ScalarContext ctx;
  WeightModule T;
  Matrix form;     // symmetric self-duality form on T
  Matrix formInv;
  std::vector<CellLevel> levels;    // lambda ascending
  TiltingMultiset summandMults;     // m_lambda (indecomposable multiplicities)
  bool graded = false;              // degrees assigned

  const CellLevel* level(long lambda) const;
  /// i(phi) = form^{-1} phi^T form.
  Matrix involution(const Matrix& phi) const { return formInv * phi.transpose() * form; }
  /// The basis element c_{ij} = gbar_i o i(gbar_j), materialized on demand.
  Matrix element(const CellLevel& lev, int i, int j) const;
  /// f-side lift i(gbar_j): T -> T(lambda).
  Matrix fbar(const CellLevel& lev, int j) const;
  int totalRank() const;
};

/// Cellular basis of End(T) adapted to an explicit summand decomposition:
/// index sets list the inclusions of T(lambda)-summands first (degree 0),
/// then for each higher summand T(mu) containing a Weyl factor of highest
/// weight lambda the induced map (degree 1). Grading degrees are assigned.
CellDatum cellularBasis(const WeightModule& T, const Matrix& form, TiltingCache& cache);

/// Cellular basis built from the plain echelon bases of Hom(Weyl(lambda), T)
/// with deterministic particular-solution lifts; no degrees.
CellDatum cellularBasisEchelon(const WeightModule& T, const Matrix& form, TiltingCache& cache);

struct CellAxiomReport {
  bool pass = true;
  std::vector<std::string> failures;
  void check(bool ok, const std::string& what) {
    if (!ok) { pass = false; failures.push_back(what); }
  }
};

/// Verifies the cell-datum axioms: the elements form a basis of End(T) of
/// dimension sum (T:Delta)^2, the involution sends c_{ij} to c_{ji}, and left
/// multiplication expands with coefficients independent of the column index
/// modulo lower levels. `generators` defaults to the basis itself.
CellAxiomReport verifyCellAxioms(const CellDatum& cd,
                                 const std::vector<Matrix>& generators = {});

/// Cell module at lambda: action matrices on Hom(Weyl(lambda), T) for each
/// generator, plus the Gram matrix of the cellular pairing.
struct CellModule {
  long lambda = 0;
  int dim = 0;
  std::vector<Matrix> action;  // one per generator
  Matrix gram;
};

CellModule cellModule(const CellDatum& cd, long lambda, const std::vector<Matrix>& generators);

struct SimpleDimensionRow {
  long lambda = 0;
  long dimCell = 0;
  long gramRank = 0;
  long summandMult = 0;
  bool agree = false;
};

/// For each lambda: dim C(lambda), the Gram rank (= dim of the simple head
/// when nonzero) and the summand multiplicity; `agree` cross-checks the rank
/// against the multiplicity.
std::vector<SimpleDimensionRow> simpleDimensions(const CellDatum& cd);

/// True iff the Gram form at lambda is nonzero, i.e. T(lambda) is a summand.
bool summandTest(const CellDatum& cd, long lambda);

/// Semisimplicity through the module side (every summand weight lies in the
/// closure of the fundamental alcove or is singular) with an exact cross
/// check against nondegeneracy of all Gram forms.
bool semisimplicityTest(const CellDatum& cd);

/// Diagnostic for the graded case: counts products c_{ij} c_{kl} whose
/// expansion at the *same* level contains terms of unexpected degree.
struct GradingDiagnostic {
  long checkedProducts = 0;
  long inhomogeneousProducts = 0;
};
GradingDiagnostic gradingDiagnostic(const CellDatum& cd);

/// Schema-versioned JSON export of the full datum.
std::string cellDatumToJson(const CellDatum& cd);

// ------------------------------------------------------------------ generic
// Cell-axiom verification for an abstract algebra given by structure vectors:
// used to check diagram-algebra cell data without matrix realizations.

struct AbstractCellElement {
  long levelLabel = 0;  // position of the level in the poset order
  int i = 0, j = 0;
  Matrix vec;  // coordinates in a fixed algebra basis (column vector)
};

CellAxiomReport verifyAbstractCellAxioms(
    const std::vector<AbstractCellElement>& basis,
    const std::function<Matrix(const Matrix&, const Matrix&)>& multiply,
    const std::function<Matrix(const Matrix&)>& involution);

}  // namespace qcell
