#pragma once

#include <cstddef>
#include <vector>

#include "orbitdesign/dalg.hpp"
#include "orbitdesign/group.hpp"
#include "orbitdesign/repdec.hpp"

// Matrix coefficient functions of an isotypic chart and numerical checks of
// their orthogonality, in two equivalent formulations:
//
//   (real)  the n^2 * d real component functions rho_ij^(X) are orthogonal
//           in L^2(G) with squared norm 1/(n d);
//   (D)     the normalized D-valued functions f_a = sqrt(n) * rho_ij satisfy
//           <f_a, tau_Z(f_b)>_G = delta_ab * delta_{1Z}.
//
// verify_equivalence_roundtrip checks that the two formulations agree on an
// arbitrary family of D-valued functions, not just on matrix coefficients.

namespace orbitdesign::schur {

// Residual tolerance for the orthogonality checks. Group sums accumulate
// roundoff, so for orders above kTolScaleOrder the effective tolerance is
// scaled by sqrt(order).
inline constexpr double kDefaultTol = 1e-9;
inline constexpr std::size_t kTolScaleOrder = 1000;

double effective_tolerance(double tol, std::size_t order);

// Values of all n x n coefficient functions of one chart, tabulated over the
// group: value(t, i, j) = rho(g_t)_{ij} with g_t the t-th element in the
// group's enumeration order. The real components rho_ij^(X) are the stored
// coefficients, so rho_ij = sum_X rho_ij^(X) * X holds exactly.
struct CoefficientTable {
    dalg::AlgebraTag tag;
    int n = 0;
    std::vector<dalg::DMatrix> values;

    explicit CoefficientTable(dalg::AlgebraTag t = dalg::AlgebraTag{}) : tag(t) {}

    std::size_t order() const { return values.size(); }
    const dalg::DScalar& value(std::size_t t, int i, int j) const {
        return values[t].at(i, j);
    }
    double real_component(std::size_t t, int i, int j, int X) const {
        return values[t].at(i, j).c[X];
    }
    // One coefficient function as a per-element value list, scaled by `scale`.
    std::vector<dalg::DScalar> function(int i, int j, double scale = 1.0) const;
};

CoefficientTable coefficient_table(const group::FiniteMatrixGroup& G,
                                   const repdec::IsotypicComponent& comp);

// <f1, f2>_G = (1/|G|) sum_g f1(g) * conj(f2(g)). Conjugate-symmetric.
// Functions are given as per-element value lists and must be nonempty and of
// equal length.
dalg::DScalar inner_product_G(const std::vector<dalg::DScalar>& f1,
                              const std::vector<dalg::DScalar>& f2);
double inner_product_G(const std::vector<double>& f1,
                       const std::vector<double>& f2);

// Orthogonality of the real component functions: <rho_ij^(X), rho_kl^(Y)>_G
// should equal (1/(n d)) * delta_ik delta_jl delta_XY. The report records the
// worst residual and where it occurred.
struct SchurRealReport {
    bool pass = false;
    double tolerance = 0.0;  // effective tolerance actually applied
    double max_residual = 0.0;
    int i = 0, j = 0, X = 0;  // arg-max: first coefficient function
    int k = 0, l = 0, Y = 0;  // arg-max: second coefficient function
};

// Twisted D-valued orthogonality of the normalized family f_(i,j) = sqrt(n)
// rho_ij: <f_a, tau_Z(f_b)>_G should equal delta_ab delta_{1Z}.
struct SchurDReport {
    bool pass = false;
    double tolerance = 0.0;
    double max_residual = 0.0;
    int i = 0, j = 0;  // arg-max: first coefficient
    int k = 0, l = 0;  // arg-max: second coefficient
    int Z = 0;         // arg-max: partial conjugation index
};

SchurRealReport verify_schur_real(const CoefficientTable& table,
                                  double tol = kDefaultTol);
SchurRealReport verify_schur_real(const group::FiniteMatrixGroup& G,
                                  const repdec::IsotypicComponent& comp,
                                  double tol = kDefaultTol);
SchurDReport verify_schur_d(const CoefficientTable& table,
                            double tol = kDefaultTol);
SchurDReport verify_schur_d(const group::FiniteMatrixGroup& G,
                            const repdec::IsotypicComponent& comp,
                            double tol = kDefaultTol);

// Both formulations evaluated independently on an arbitrary family of
// D-valued functions f_a (per-element value lists of equal length):
//   condition (1): <f_a^(X), f_b^(Y)>_G = (1/d) delta_ab delta_XY,
//   condition (2): <f_a, tau_Z(f_b)>_G = delta_ab delta_{1Z}.
// roundtrip_residual measures the exact algebraic link between them: the
// real Gram blocks reconstructed from the twisted D-valued products must
// match the directly computed ones regardless of whether either condition
// holds.
struct EquivalenceReport {
    bool real_holds = false;
    bool d_holds = false;
    bool equivalent = false;  // real_holds == d_holds
    double real_residual = 0.0;
    double d_residual = 0.0;
    double roundtrip_residual = 0.0;
    double tolerance = 0.0;
};

EquivalenceReport check_equivalence(
    dalg::AlgebraTag tag,
    const std::vector<std::vector<dalg::DScalar>>& family,
    double tol = kDefaultTol);

// True iff condition (1) and condition (2) agree on the family (both hold or
// both fail).
bool verify_equivalence_roundtrip(
    dalg::AlgebraTag tag,
    const std::vector<std::vector<dalg::DScalar>>& family,
    double tol = kDefaultTol);

}  // namespace orbitdesign::schur
