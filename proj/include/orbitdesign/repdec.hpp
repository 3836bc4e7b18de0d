// Isotypic decomposition of a real orthogonal representation: splitting into
// minimal invariant subspaces, Frobenius-Schur type detection through the
// commutant, and a D-coordinate chart identifying each isotypic component
// with a matrix space over its type algebra.
#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "orbitdesign/dalg.hpp"
#include "orbitdesign/group.hpp"

namespace orbitdesign::repdec {

// Eigenspace refinement stalled: invariant samples stopped splitting a
// subspace that is still reducible.
struct DegenerateSplit : std::runtime_error {
    explicit DegenerateSplit(const std::string& what) : std::runtime_error(what) {}
};

// Commutant dimension other than 1, 2 or 4: the subspace handed to fs_type
// was not irreducible.
struct UnexpectedCommutantDim : std::runtime_error {
    explicit UnexpectedCommutantDim(const std::string& what) : std::runtime_error(what) {}
};

// A complex or quaternionic structure map failed its algebra checks after
// polar normalization.
struct StructureMapFailure : std::runtime_error {
    explicit StructureMapFailure(const std::string& what) : std::runtime_error(what) {}
};

// One isotypic block: m copies of an irreducible of D-dimension n over the
// type algebra D. real_basis columns are orthonormal ambient vectors laid
// out in the realification chart order (basis element major, then copy,
// then D-row), so component coordinates of a vector realify a DMatrix.
struct IsotypicComponent {
    dalg::AlgebraTag fs_tag;
    int n = 0;
    int m = 0;
    int dim_real = 0;
    Eigen::MatrixXd real_basis;
    // D-matrix representation per group element, in element-list order;
    // gram(d_rep[g]) = I and chart(g w) = d_rep[g] * chart(w).
    std::vector<dalg::DMatrix> d_rep;

    dalg::RealificationChart chart() const { return {fs_tag, n, m}; }
    Eigen::MatrixXd projector() const { return real_basis * real_basis.transpose(); }
};

struct Decomposition {
    int ambient_dim = 0;
    // Dimension of the space that was decomposed (ambient, or the invariant
    // subspace handed to decompose).
    int space_dim = 0;
    int trivial_multiplicity = 0;
    Eigen::MatrixXd trivial_basis;
    std::vector<IsotypicComponent> components;
};

// T = (1/|G|) sum_g g S g^T for a random symmetric S: an invariant symmetric
// operator whose eigenspaces are invariant subspaces.
Eigen::MatrixXd invariant_symmetric_sample(const group::FiniteMatrixGroup& G, std::uint64_t seed);

// Frobenius-Schur type of a minimal invariant subspace (columns of basis
// orthonormal): the commutant dimension 1, 2 or 4 picks R, C or H.
dalg::AlgebraTag fs_type(const group::FiniteMatrixGroup& G, const Eigen::MatrixXd& basis);

// Builds the full component record for one isotypic block spanned by
// component_basis: splits it into copies, finds commutant structure maps,
// assembles a right-D-orthonormal basis, aligns the copies with averaged
// orthogonal intertwiners, and tabulates the D-matrix representation.
IsotypicComponent build_chart(const group::FiniteMatrixGroup& G,
                              const Eigen::MatrixXd& component_basis, std::uint64_t seed);

Decomposition decompose(const group::FiniteMatrixGroup& G, std::uint64_t seed);
// Same, restricted to an invariant subspace given by orthonormal columns.
Decomposition decompose(const group::FiniteMatrixGroup& G, const Eigen::MatrixXd& subspace_basis,
                        std::uint64_t seed);

// Component coordinates of an ambient vector (length dim_real) and the
// D-matrix they realify; lift is the right inverse landing in the component.
Eigen::VectorXd project(const IsotypicComponent& comp, const Eigen::VectorXd& v);
dalg::DMatrix to_matrix(const IsotypicComponent& comp, const Eigen::VectorXd& v);
Eigen::VectorXd lift(const IsotypicComponent& comp, const dalg::DMatrix& M);

}  // namespace orbitdesign::repdec
