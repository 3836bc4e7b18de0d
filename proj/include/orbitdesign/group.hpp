// Finite groups of real orthogonal matrices: closure enumeration from a
// generator set, the group action, and orbit point sets.
#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace orbitdesign::group {

struct NonOrthogonalGenerator : std::invalid_argument {
    explicit NonOrthogonalGenerator(const std::string& what) : std::invalid_argument(what) {}
};

// Closure enumeration grew past the cap: the generated group is infinite or
// the cap was set too small.
struct OrderCapExceeded : std::runtime_error {
    explicit OrderCapExceeded(const std::string& what) : std::runtime_error(what) {}
};

struct DimensionMismatch : std::invalid_argument {
    explicit DimensionMismatch(const std::string& what) : std::invalid_argument(what) {}
};

struct GeneratorSet {
    int dim = 0;
    double tol = 1e-9;
    std::vector<Eigen::MatrixXd> generators;
};

// Fully enumerated group. elements[0] is the identity; all elements are
// orthogonal and pairwise distinct within tol. The generating matrices are
// kept so that commutant systems can range over generators only.
struct FiniteMatrixGroup {
    int dim = 0;
    double tol = 1e-9;
    std::vector<Eigen::MatrixXd> elements;
    std::vector<Eigen::MatrixXd> generators;

    int order() const { return static_cast<int>(elements.size()); }
};

inline constexpr int kDefaultMaxOrder = 100000;

FiniteMatrixGroup enumerate_closure(const GeneratorSet& gens, int max_order = kDefaultMaxOrder);

Eigen::VectorXd act(const Eigen::MatrixXd& g, const Eigen::VectorXd& v);

// Distinct points of { g v : g in G }, deduplicated within tol, in first-seen
// element order.
std::vector<Eigen::VectorXd> orbit_points(const FiniteMatrixGroup& G, const Eigen::VectorXd& v,
                                          double tol);

}  // namespace orbitdesign::group
