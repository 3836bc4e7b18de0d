#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "orbitdesign/dalg.hpp"
#include "orbitdesign/group.hpp"
#include "orbitdesign/repdec.hpp"

// Construction of 2-design orbit vectors and the converse classification: a
// unit vector v generates a 2-design in the direct sum of chosen isotypic
// components exactly when
//   (i)  its chart matrix in each component, normalized to Frobenius norm 1,
//        has gram (1/m_i) I (possible iff m_i <= n_i), and
//   (ii) its component norms satisfy ||pi_i(v)||^2 = dim V_i / dim V,
// with nothing left over outside the chosen components.

namespace orbitdesign::construct {

inline constexpr double kDefaultTol = 1e-9;

struct MultiplicityExceedsDimension : std::runtime_error {
    explicit MultiplicityExceedsDimension(const std::string& what)
        : std::runtime_error(what) {}
};

// Unit vector in one component whose orbit is a 2-design there, built from
// M = (1/sqrt(m)) * (first m columns of U) for a D-unitary U: random when
// seeded, or supplied explicitly. Throws MultiplicityExceedsDimension when
// m > n, where no such vector exists.
Eigen::VectorXd construct_isotypic_design(const repdec::IsotypicComponent& comp,
                                          std::uint64_t seed);
Eigen::VectorXd construct_isotypic_design(const repdec::IsotypicComponent& comp,
                                          const dalg::DMatrix& U);

// Dimension-weighted sum of per-component designs over the selected
// components (all of them when `selected` is empty). The result is a unit
// vector whose orbit is a 2-design in the direct sum of the selections.
Eigen::VectorXd construct_global_design(const repdec::Decomposition& dec,
                                        std::uint64_t seed);
Eigen::VectorXd construct_global_design(const repdec::Decomposition& dec,
                                        const std::vector<std::size_t>& selected,
                                        std::uint64_t seed);

struct ComponentClassification {
    dalg::DMatrix M;              // chart coordinates of the projection
    bool in_target = false;
    double scale_observed = 0.0;  // ||pi_i(v)||
    double scale_expected = 0.0;  // sqrt(dim V_i / dim V), or 0 off target
    double scale_residual = 0.0;  // |observed^2 - expected^2|
    double gram_residual = 0.0;   // ||gram(M/||M||_F) - (1/m) I||_max
    bool pass = false;
};

struct ClassificationResult {
    std::vector<ComponentClassification> components;
    // Mass of v outside the target components (includes any fixed summand).
    double off_target_norm = 0.0;
    double max_residual = 0.0;
    bool overall_pass = false;
    double tol = 0.0;
    int dim_V = 0;
};

// Test v against the classification above. `target` lists the components
// spanning the design space V and dim_V its dimension; the default takes
// every component of the decomposition with the ambient dimension, in which
// case overall_pass agrees with the moment-condition check of the full orbit.
ClassificationResult classify_orbit(const group::FiniteMatrixGroup& G,
                                    const repdec::Decomposition& dec,
                                    const Eigen::VectorXd& v, double tol = kDefaultTol);
ClassificationResult classify_orbit(const group::FiniteMatrixGroup& G,
                                    const repdec::Decomposition& dec,
                                    const Eigen::VectorXd& v,
                                    const std::vector<std::size_t>& target, int dim_V,
                                    double tol = kDefaultTol);

}  // namespace orbitdesign::construct
