#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qxr/epsilon.hpp"
#include "qxr/ratfunc.hpp"

namespace qxr {

// One of the three curvature relations, in the form
//   a2_coeff * A^2  =  sum_i b_coeff[i] * b_i^2  +  constant,
// where A is the auxiliary connection-form function and b_i are the
// components of the tangential part of the vertical field.
struct GaussRelation {
  std::pair<int, int> pair;          // (1,2), (2,3) or (1,3)
  RatFunc a2_coeff;                  // carries the factor t
  std::array<RatFunc, 3> b_coeff;    // coefficients of b1^2, b2^2, b3^2
  RatFunc constant;
};

// Affine relation  sum_i coeff[i] * b_i^2 + constant = 0  after A^2 has been
// eliminated.
struct AffineRelation3 {
  std::array<RatFunc, 3> coeff;
  RatFunc constant;
};

// 2x2 linear system M (b1^2, b2^2)^T = rhs obtained by substituting
// b3^2 = 1 - t - b1^2 - b2^2 into the two reduced relations.
struct LinearSystem2 {
  std::array<std::array<RatFunc, 2>, 2> M;
  std::array<RatFunc, 2> rhs;
  // Derived display data: the t-free parts of the matrix entries and the
  // degree-one remainders of the right-hand sides.
  std::array<std::array<RatFunc, 2>, 2> C;
  std::array<RatFunc, 2> L;
  std::string provenance;

  // Cleared numerators over the factored denominators
  //   den(M11) = d12^2 d23^2, den(M12) = d12^2 d23^2,
  //   den(M21) = d12^2 d13^2, den(M22) = d12^2 d13^2,
  //   den(rhs1) = d23^2,      den(rhs2) = d13^2,
  // with d12 = m2-m1, d23 = m3-m2, d13 = m3-m1. These drive the exact
  // polynomial clearing; the RatFunc entries above are the same objects.
  std::array<std::array<MultiPoly, 2>, 2> M_num;
  std::array<MultiPoly, 2> rhs_num;
};

struct BSquaredSolution {
  std::array<RatFunc, 3> b_sq;   // b1^2, b2^2, b3^2 as rational functions
  RatFunc det_m;
  std::array<MultiPoly, 3> p;    // cleared numerators, deg_t = 3
  MultiPoly q;                   // cleared common denominator, deg_t = 2
};

// Integer system forced by the vanishing of the three t^5 coefficients.
struct MuSystem {
  static std::array<std::array<long, 3>, 3> matrix() {
    return {{{3, -2, -1}, {1, -2, 1}, {1, 2, -3}}};
  }
  int rank = 0;
  std::vector<std::array<long, 3>> kernel;  // primitive integer basis
};

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string witness;
};

// Optional corruption hook used by the mutation tests: certification must
// flip to failure under any of these.
struct Mutation {
  enum class Target { none, gauss_b_coeff, gauss_constant, p_poly, q_poly, t5_expected };
  Target target = Target::none;
  int relation = 0;  // 0..2 for gauss targets
  int index = 0;     // coefficient index / p index / t5 index
};

struct EliminationTrace {
  Epsilon epsilon = Epsilon::plus();
  std::array<GaussRelation, 3> relations;
  std::array<AffineRelation3, 2> reduced;
  LinearSystem2 system;
  BSquaredSolution solution;
  std::array<MultiPoly, 3> derivative_polys;  // P1, P2, P3
  std::array<MultiPoly, 3> t5_coeffs;
  MuSystem mu_system;
  std::vector<CheckResult> checks;
  bool certified = false;
  std::string first_failure;

  std::uint64_t seed = 0;
  int random_points = 0;

  void record(std::string name, bool pass, std::string witness = "");
};

// ----- pipeline stages ------------------------------------------------------

std::array<GaussRelation, 3> build_gauss_relations(Epsilon eps);

// Solves the (1,2) relation for A^2 and substitutes into the other two.
std::array<AffineRelation3, 2> eliminate_A(const std::array<GaussRelation, 3>& relations);

LinearSystem2 substitute_b3(const std::array<AffineRelation3, 2>& reduced);

BSquaredSolution solve_b_squared(const LinearSystem2& sys);

std::vector<CheckResult> verify_leading_ratios(const BSquaredSolution& sol);

std::array<MultiPoly, 3> derivative_identity_polys(const BSquaredSolution& sol, Epsilon eps);

// Expected t^5 coefficients of P1, P2, P3 with eps substituted.
std::array<MultiPoly, 3> expected_t5_coeffs(Epsilon eps);

std::vector<CheckResult> extract_and_check_t5(const std::array<MultiPoly, 3>& P, Epsilon eps);

MuSystem solve_mu_system();

// The three cubic-sum identities used by the clearing steps.
std::vector<CheckResult> check_cubic_sum_identities();

// Runs the whole pipeline for one epsilon, recording every displayed object
// and every check. `random_points` admissible rational samples are used for
// the evaluation cross-validations.
EliminationTrace run_certification(Epsilon eps, std::uint64_t seed = 20240901,
                                   int random_points = 120,
                                   const Mutation* mutation = nullptr);

// ----- small helpers shared with the tests ----------------------------------

// mu_i for i in 1..3, the t variable, and mu_i - mu_j.
MultiPoly mu(int i);
MultiPoly tpoly();
MultiPoly dmu(int i, int j);

// Admissible random rational point: pairwise-distinct mu, and every tracked
// denominator (the d_ij, q, det M numerator) nonzero. Components have
// numerators and denominators uniform in [-10^6, 10^6] resp. [1, 10^6].
class PointSampler {
 public:
  explicit PointSampler(std::uint64_t seed);
  std::array<Rational, 4> next_admissible(const BSquaredSolution& sol);

 private:
  std::uint64_t state_;
  std::uint64_t next_raw();
  Rational next_rational();
};

}  // namespace qxr
