#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "orbitdesign/group.hpp"
#include "orbitdesign/repdec.hpp"

// Moment-condition checks for orbits on the unit sphere, projection of
// designs into invariant subspaces, and the dimension-weighted combination
// that glues per-component designs into a global one.
//
// An orbit Gv is a 1-design when its first moment (1/|G|) sum_g gv vanishes
// and a 2-design when additionally the second moment (1/|G|) sum_g (gv)(gv)^T
// equals I/dim. Both sums are normalized by the group order throughout; the
// unnormalized first-moment condition is the same up to the factor |G|.

namespace orbitdesign::design {

inline constexpr double kDefaultTol = 1e-9;

struct NotUnitVector : std::invalid_argument {
    explicit NotUnitVector(const std::string& what) : std::invalid_argument(what) {}
};
struct ZeroProjection : std::runtime_error {
    explicit ZeroProjection(const std::string& what) : std::runtime_error(what) {}
};
struct ComponentNotDesign : std::runtime_error {
    explicit ComponentNotDesign(const std::string& what) : std::runtime_error(what) {}
};

struct DesignReport {
    double first_moment_norm = 0.0;
    // Entrywise max-norm of the second moment minus I/dim.
    double second_moment_deviation = 0.0;
    bool is_1_design = false;
    bool is_2_design = false;
    double tol = 0.0;
    // Set when v has a component in a fixed (trivial) summand above tol; such
    // orbits cannot be 1-designs but still get a full report.
    bool trivial_overlap_warning = false;
    // Distance from v to the subspace checked against (zero for the ambient
    // check); folded into the verdict so that a vector outside the subspace
    // never passes.
    double subspace_residual = 0.0;
    int dim = 0;  // dimension the moments were compared against
};

Eigen::VectorXd first_moment(const group::FiniteMatrixGroup& G, const Eigen::VectorXd& v);
Eigen::MatrixXd second_moment(const group::FiniteMatrixGroup& G, const Eigen::VectorXd& v);

// Moment conditions against the full ambient space.
DesignReport check_design(const group::FiniteMatrixGroup& G, const Eigen::VectorXd& v,
                          double tol = kDefaultTol);

// Moment conditions inside an invariant subspace spanned by the orthonormal
// columns of `basis`: restricted first moment zero and restricted second
// moment I/k with k = columns of basis. v must lie in the subspace.
DesignReport check_design_in_subspace(const group::FiniteMatrixGroup& G,
                                      const Eigen::VectorXd& v, const Eigen::MatrixXd& basis,
                                      double tol = kDefaultTol);

struct ProjectionResult {
    Eigen::VectorXd w;  // normalized projection, ambient coordinates
    double norm_sq_observed = 0.0;
    double norm_sq_expected = 0.0;
    DesignReport sub_report;  // 2-design check of w inside the component
    bool pass = false;        // norm matches expectation and sub_report passes
};

// Project a design vector onto one isotypic component and re-check the design
// conditions there. A 2-design in a space of dimension dim_V projects to a
// 2-design in the component with norm^2 = dim_component / dim_V; dim_V
// defaults to the ambient dimension when 0. Throws ZeroProjection when the
// projection norm is at most tol.
ProjectionResult project_design(const group::FiniteMatrixGroup& G, const Eigen::VectorXd& v,
                                const repdec::IsotypicComponent& component, int dim_V = 0,
                                double tol = kDefaultTol);

// Dimension-weighted combination x = sum_i sqrt(dim V_i / dim V) x_i over
// mutually orthogonal components, where dim V = sum_i dim V_i. Each x_i must
// be a unit vector inside its component whose orbit passes the 2-design check
// there; otherwise ComponentNotDesign. The result is a unit vector whose
// orbit is a 2-design in the direct sum of the components.
Eigen::VectorXd combine_designs(
    const group::FiniteMatrixGroup& G,
    const std::vector<std::pair<const repdec::IsotypicComponent*, Eigen::VectorXd>>& parts,
    double tol = kDefaultTol);

// Independent oracle: averages random quadratics f(x) = x^T A x + b^T x + c
// over the orbit and compares against the exact sphere average tr(A)/dim + c.
// Returns the max absolute discrepancy over the trials; it is small for every
// 2-design and generically large otherwise.
double polynomial_average_check(const group::FiniteMatrixGroup& G, const Eigen::VectorXd& v,
                                int trials, std::uint64_t seed);

}  // namespace orbitdesign::design
