#pragma once

#include <map>
#include <string>
#include <vector>

#include "qcell/cellular.hpp"
#include "qcell/matrix.hpp"
#include "qcell/scalar.hpp"
#include "qcell/weight_module.hpp"

namespace qcell {

struct TLError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct StrandMismatch : TLError {
  StrandMismatch() : TLError("strand counts do not match") {}
};
/// A Jones-Wenzl coefficient required a vanishing quantum integer: the
/// projector does not exist at this parameter.
struct CoefficientPole : TLError {
  CoefficientPole() : TLError("vanishing quantum integer in a projector coefficient") {}
};

/// Planar matching diagram with `bot` bottom and `top` top boundary points.
/// Points are numbered 0..bot-1 along the bottom (left to right) and
/// bot..bot+top-1 along the top (left to right); `match` stores the partner
/// of each point. Planarity is the nested-parentheses condition on the
/// circular order (bottom left to right, then top right to left).
struct TLDiagram {
  int bot = 0, top = 0;
  std::vector<int> match;

  static TLDiagram identity(int d);
  /// Cap-cup generator on strands i, i+1 (1-based), d strands.
  static TLDiagram capCup(int d, int i);

  bool planar() const;
  bool valid() const;
  int throughStrands() const;
  /// Reflection swapping the bottom and top boundaries.
  TLDiagram flipped() const;
  /// Horizontal juxtaposition (*this) next to `o`.
  TLDiagram beside(const TLDiagram& o) const;

  auto operator<=>(const TLDiagram& o) const = default;

  std::string str() const;  // "d; (a,b) (c,e) ..." with 1-based points
  static TLDiagram parse(const std::string& text);
};

/// Stacking composition y on top of x with circle count: x maps bot->mid,
/// y maps mid->top; returns the glued diagram and the number of closed loops.
std::pair<TLDiagram, int> stackDiagrams(const TLDiagram& y, const TLDiagram& x);

/// Exact linear combination of diagrams with a common boundary shape.
class TLElement {
public:
  TLElement() = default;
  TLElement(int bot, int top, const ScalarContext& ctx) : bot_(bot), top_(top), ctx_(ctx) {}
  static TLElement unit(int d, const ScalarContext& ctx);
  static TLElement single(const TLDiagram& d, const ScalarContext& ctx);

  int bot() const { return bot_; }
  int top() const { return top_; }
  const ScalarContext& context() const { return ctx_; }
  const std::map<TLDiagram, Scalar>& terms() const { return terms_; }
  bool isZero() const { return terms_.empty(); }

  void add(const TLDiagram& d, const Scalar& c);
  TLElement operator+(const TLElement& o) const;
  TLElement operator-(const TLElement& o) const;
  TLElement operator*(const Scalar& s) const;
  bool operator==(const TLElement& o) const;

  TLElement flipped() const;

private:
  int bot_ = 0, top_ = 0;
  ScalarContext ctx_;
  std::map<TLDiagram, Scalar> terms_;
};

/// Diagrammatic composition: stack y on top of x, each closed circle
/// contributing a factor delta = [2].
TLElement compose(const TLElement& y, const TLElement& x);

/// All planar (d,d)-diagrams in canonical order; Catalan(d) of them.
std::vector<TLDiagram> tlBasis(int d);

/// Standard two-row tableau given by the positions (1-based) of the entries
/// in the second row, increasing.
struct TwoRowTableau {
  int d = 0;
  std::vector<int> secondRow;
};

/// All standard tableaux of shape ((d+k)/2, (d-k)/2), ordered.
std::vector<TwoRowTableau> standardTableaux(int d, int k);

/// Half diagram of a standard tableau: each second-row entry is capped with
/// the nearest available smaller first-row entry to its left.
TLDiagram tableauToHalfDiagram(const TwoRowTableau& t);

/// The diagram-algebra cell datum: levels are through-strand counts (fewer
/// columns below), index sets the standard tableaux, and the basis elements
/// flip(x_s) o x_t. Returned as abstract elements over the diagram basis.
struct DiagramCellBasis {
  int d = 0;
  std::vector<long> levels;  // through-strand counts, ascending
  std::map<long, std::vector<TwoRowTableau>> tableaux;
  std::vector<AbstractCellElement> elements;
  std::vector<TLDiagram> diagrams;  // coordinate order
};
DiagramCellBasis grahamLehrerBasis(int d, const ScalarContext& ctx);

/// Coordinates of an element in the diagram basis of TL_d.
Matrix tlCoordinates(const TLElement& x, const std::vector<TLDiagram>& basis);

/// Jones-Wenzl projector by the recursion with coefficient [d-1]/[d];
/// throws CoefficientPole when a required quantum integer vanishes.
TLElement jonesWenzl(int d, const ScalarContext& ctx);

/// Half element t_eps for a sign vector with nonnegative partial sums, and
/// the generalized projector flip(t_eps) o t_eps.
TLElement halfElement(const std::vector<int>& eps, const ScalarContext& ctx);
TLElement generalizedJW(const std::vector<int>& eps, const ScalarContext& ctx);

/// All admissible sign vectors of length d (nonnegative partial sums).
std::vector<std::vector<int>> admissibleSignVectors(int d);

/// Rescales each generalized projector to an idempotent; verifies pairwise
/// orthogonality and that the family sums to the identity.
struct IdempotentFamily {
  std::vector<std::vector<int>> eps;
  std::vector<TLElement> idempotents;
};
struct NotIdempotentable : TLError {
  NotIdempotentable() : TLError("generalized projector is not rescalable to an idempotent") {}
};
IdempotentFamily rescaleToIdempotents(int d, const ScalarContext& ctx);

/// Representation on V^{tensor d}: the algebra map sending the cap-cup
/// generator to the fixed evaluation/coevaluation pair (closed circle = +[2]).
Matrix schurWeyl(const TLElement& x, const WeightModule& tensorPower);
Matrix schurWeylDiagram(const TLDiagram& d, const WeightModule& tensorPower);

/// Semisimplicity of the diagram algebra: generic parameters always, a
/// primitive l-th root of unity exactly when d < l.
bool tlSemisimple(int d, const ScalarContext& ctx);

/// Linear system inverting the representation on its image: expresses an
/// endomorphism as a diagram combination. Requires the map to be injective
/// (rank Catalan(d)), which holds in every context here.
class SchurWeylTransport {
public:
  SchurWeylTransport(int d, const WeightModule& tensorPower);
  int rank() const { return rank_; }
  const std::vector<TLDiagram>& basis() const { return basis_; }
  TLElement pullback(const Matrix& endo) const;

private:
  int d_;
  const WeightModule& power_;
  std::vector<TLDiagram> basis_;
  std::vector<std::pair<int, int>> coords_;     // selected independent entries
  std::vector<std::pair<int, int>> allCoords_;  // all weight-diagonal entries
  Matrix solver_;                               // inverse of the selected square
  Matrix images_;
  int rank_ = 0;
};

/// Transports a matrix-side cell datum through the inverse representation:
/// returns the diagram-side elements level by level along with the degrees.
struct PulledBackCellDatum {
  int d = 0;
  std::vector<long> levels;
  std::vector<AbstractCellElement> elements;
  std::vector<TLDiagram> diagrams;
  std::map<long, std::vector<int>> degrees;
};
PulledBackCellDatum pullbackCellDatum(const CellDatum& cd, const SchurWeylTransport& transport);

}  // namespace qcell
