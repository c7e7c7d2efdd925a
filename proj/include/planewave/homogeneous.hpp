// Homogeneous models (F antisymmetric, B symmetric), their global Brinkmann
// metrics, classification, isotropy algebras, invariant forms, and the
// derivation normal-form reductions.
//
// Family (a): S(u) = e^{uF} B e^{-uF} on all of R (complete).
// Family (b): S(u) = e^{ln(u)F} B e^{-ln(u)F} / u^2 on u > 0 (incomplete).
#ifndef PLANEWAVE_HOMOGENEOUS_HPP
#define PLANEWAVE_HOMOGENEOUS_HPP

#include "planewave/heisenberg.hpp"
#include "planewave/metrics.hpp"

#include <vector>

namespace planewave {

enum class Family { a, b };

struct HomogeneousModel {
  int n = 0;
  Family family = Family::a;
  Matrix F;  // antisymmetric
  Matrix B;  // symmetric

  // delta is determined by the family: 0 for (a), 1 for (b).
  double delta() const { return family == Family::a ? 0.0 : 1.0; }
  Derivation derivation() const;
  void validate(double tol = 1e-10) const;
};

struct Classification {
  bool flat = false;
  bool cahen_wallach = false;
  bool complete = false;
  int isotropy_dim = 0;
};

BrinkmannMetric build_metric(const HomogeneousModel& m);

// Transversal isometric flow. Family (a): s.(v,y,u) = (v, e^{sF} y, u+s),
// additive in s. Family (b): s.(v,y,u) = (s v, e^{ln(1/s)F} y, u/s), s > 0,
// multiplicative in s.
Point transversal_flow(const HomogeneousModel& m, double s, const Point& p);

Classification classify(const HomogeneousModel& m, double tol = 1e-10);

// Orthonormal basis of {E antisymmetric : EF = FE, EB = BE}; singular values
// below 1e-9 of the largest count as zero.
std::vector<Matrix> isotropy_algebra(const Matrix& F, const Matrix& B);

// Invariant scalar product on the (T, z, Y_1..Y_n) quotient basis, pinned by
// the two free scalars q(z,T) < 0 and q(T,T).
struct InvariantForm {
  int n = 0;
  Matrix entries;  // (n+2) x (n+2), basis order (T, z, Y_1..Y_n)
  double qzT = -1.0;
  double qTT = 0.0;
};

InvariantForm invariant_form(const Derivation& L_reduced, double qzT, double qTT);

struct ReducedDerivation {
  Derivation reduced;          // D block = I
  HeisAutomorphism conjugator; // J0 J, preserves a+
  bool negated = false;        // true when the sign-flip branch ran (D < 0)
};

// Conjugates a derivation with definite D to one with D = I. Rejects
// indefinite or degenerate D (no invariant Lorentzian metric exists then).
ReducedDerivation reduce_D_to_identity(const Derivation& L, double tol = 1e-10);

// Normal form of a D = I derivation: A block becomes delta I + F and C block
// becomes F, with F = (A - A^T)/2 antisymmetric; B stays symmetric.
Derivation blau_normal_form(const Derivation& L, double tol = 1e-10);
// The automorphism realizing blau_normal_form by conjugation.
HeisAutomorphism blau_conjugation(const Derivation& L, double tol = 1e-10);

// Chart change for family (b): maps the pre-transform chart (v, y, u), u in
// R, onto the global chart (vbar, ybar, ubar), ubar > 0:
//   ubar = e^{-u},  ybar = e^{-uF} y,  vbar = -e^{u} v.
// The pullback of build_metric(m) through this map equals
// pre_transform_metric_at (2dudv - 2(Fy.dy)du + dy^2 + (2v+|Fy|^2+y^TBy)du^2).
Point coordinate_transform_b(const HomogeneousModel& m, const Point& p);
Matrix pre_transform_metric_at(const HomogeneousModel& m, const Point& p);

// True iff the nilpotent N has Jordan type one 3-block plus kernel, i.e.
// rank N = 2, rank N^2 = 1, N^3 = 0. Contract: N nonzero with N^dim = 0
// within tol.
bool nilpotent_lorentz_check(const Matrix& N, double tol = 1e-9);

const char* to_string(Family f);

}  // namespace planewave

#endif
