// Heis(2n+1): group arithmetic, Lie algebra, derivations and automorphisms
// in the a+ (+) a- (+) z splitting.
//
// Conventions, fixed once for the whole project:
//   * coordinates are ordered (a+, a-, z);
//   * omega((x+,x-),(y+,y-)) = <x+,y-> - <x-,y+>;
//   * group elements live in exponential coordinates, so the product is
//     (a,z)(a',z') = (a+a', z+z'+omega(a,a')/2) and exp/log are trivial.
#ifndef PLANEWAVE_HEISENBERG_HPP
#define PLANEWAVE_HEISENBERG_HPP

#include "planewave/linalg.hpp"

#include <string>
#include <vector>

namespace planewave {

struct HeisElement {
  int n = 0;
  Vector a_plus;   // length n
  Vector a_minus;  // length n
  double z = 0.0;

  static HeisElement identity(int n);
  Vector coords() const;  // (a+, a-, z) as a 2n+1 vector
  static HeisElement from_coords(const Vector& c);
};

struct HeisVector {
  int n = 0;
  Vector a_plus;
  Vector a_minus;
  double z = 0.0;

  static HeisVector zero(int n);
  Vector coords() const;
  static HeisVector from_coords(const Vector& c);
};

HeisElement heis_mul(const HeisElement& g, const HeisElement& h);
HeisElement heis_inverse(const HeisElement& g);
HeisVector heis_bracket(const HeisVector& x, const HeisVector& y);
double symplectic(const Vector& ap, const Vector& am, const Vector& bp, const Vector& bm);

// Block matrix (A,B;D,C) + delta acting on heis in the (a+, a-, z) splitting:
//   (Lx)+ = A x+ + B x-,  (Lx)- = D x+ + C x-,  (Lx)_z = delta x_z.
// L is a derivation iff B and D are symmetric and A + C^T = delta I.
struct Derivation {
  int n = 0;
  Matrix A, B, C, D;
  double delta = 0.0;

  Matrix as_matrix() const;  // (2n+1) x (2n+1)
  static Derivation from_matrix(const Matrix& m);
};

struct DerivationReport {
  bool valid = false;
  std::vector<std::string> violations;  // human-readable failed conditions
};

DerivationReport derivation_check(const Derivation& L, double tol = 1e-10);
bool derivation_valid(const Derivation& L, double tol = 1e-10);

// Automorphism of Heis given by its linear part on (a+, a-, z). In
// exponential coordinates a bracket-preserving linear map is at once a Lie
// algebra and a group automorphism.
struct HeisAutomorphism {
  int n = 0;
  Matrix linear;  // (2n+1) x (2n+1)

  static HeisAutomorphism identity(int n);
  HeisAutomorphism compose(const HeisAutomorphism& other) const;  // this after other
};

// Max bracket-preservation defect over all basis pairs.
double bracket_residual(const HeisAutomorphism& phi);

// Constructs an automorphism, checking the bracket invariant at tol.
HeisAutomorphism make_automorphism(const Matrix& linear, double tol = 1e-10);

// exp(t L) for a valid derivation L.
HeisAutomorphism automorphism_from_derivation(const Derivation& L, double t,
                                              double tol = 1e-10);

HeisElement apply_automorphism(const HeisAutomorphism& phi, const HeisElement& g);
HeisVector apply_automorphism(const HeisAutomorphism& phi, const HeisVector& x);

// The deforming 1-parameter group of flat space: exp(u L) with L the
// identity shift a+ -> a- (2-step nilpotent, so the series terminates).
HeisAutomorphism mink_deforming_curve(int n, double u);

}  // namespace planewave

#endif
