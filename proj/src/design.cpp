#include "orbitdesign/design.hpp"

#include <cmath>
#include <sstream>

#include "orbitdesign/rng.hpp"

namespace orbitdesign::design {

namespace {

void require_unit(const Eigen::VectorXd& v, double tol, const char* where) {
    if (std::abs(v.norm() - 1.0) > tol) {
        std::ostringstream msg;
        msg << where << ": expected a unit vector, got norm " << v.norm();
        throw NotUnitVector(msg.str());
    }
}

void require_dim(const group::FiniteMatrixGroup& G, const Eigen::VectorXd& v) {
    if (v.size() != G.dim) {
        throw group::DimensionMismatch("design: vector length does not match the group dimension");
    }
}

double max_abs(const Eigen::MatrixXd& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace

Eigen::VectorXd first_moment(const group::FiniteMatrixGroup& G, const Eigen::VectorXd& v) {
    require_dim(G, v);
    Eigen::VectorXd sum = Eigen::VectorXd::Zero(G.dim);
    for (const Eigen::MatrixXd& g : G.elements) sum += g * v;
    return sum / static_cast<double>(G.order());
}

Eigen::MatrixXd second_moment(const group::FiniteMatrixGroup& G, const Eigen::VectorXd& v) {
    require_dim(G, v);
    Eigen::MatrixXd sum = Eigen::MatrixXd::Zero(G.dim, G.dim);
    for (const Eigen::MatrixXd& g : G.elements) {
        const Eigen::VectorXd gv = g * v;
        sum += gv * gv.transpose();
    }
    return sum / static_cast<double>(G.order());
}

DesignReport check_design(const group::FiniteMatrixGroup& G, const Eigen::VectorXd& v,
                          double tol) {
    require_dim(G, v);
    require_unit(v, tol, "check_design");

    DesignReport report;
    report.tol = tol;
    report.dim = G.dim;
    report.first_moment_norm = first_moment(G, v).norm();
    const Eigen::MatrixXd sm = second_moment(G, v);
    const Eigen::MatrixXd target = Eigen::MatrixXd::Identity(G.dim, G.dim) / G.dim;
    report.second_moment_deviation = max_abs(sm - target);
    report.is_1_design = report.first_moment_norm <= tol;
    report.is_2_design = report.is_1_design && report.second_moment_deviation <= tol;
    // The first moment is exactly the projection of v onto the fixed
    // subspace, so a nonzero value means v leans into a trivial summand.
    report.trivial_overlap_warning = report.first_moment_norm > tol;
    return report;
}

DesignReport check_design_in_subspace(const group::FiniteMatrixGroup& G,
                                      const Eigen::VectorXd& v, const Eigen::MatrixXd& basis,
                                      double tol) {
    require_dim(G, v);
    require_unit(v, tol, "check_design_in_subspace");
    if (basis.rows() != G.dim || basis.cols() < 1) {
        throw group::DimensionMismatch("check_design_in_subspace: basis shape mismatch");
    }
    const int k = static_cast<int>(basis.cols());
    const Eigen::MatrixXd eye_k = Eigen::MatrixXd::Identity(k, k);
    if (max_abs(basis.transpose() * basis - eye_k) > 1e-8) {
        throw std::invalid_argument("check_design_in_subspace: basis columns not orthonormal");
    }

    DesignReport report;
    report.tol = tol;
    report.dim = k;
    report.subspace_residual = (basis * (basis.transpose() * v) - v).norm();
    const Eigen::VectorXd fm = basis.transpose() * first_moment(G, v);
    const Eigen::MatrixXd sm = basis.transpose() * second_moment(G, v) * basis;
    report.first_moment_norm = fm.norm();
    report.second_moment_deviation = max_abs(sm - eye_k / k);
    report.is_1_design =
        report.first_moment_norm <= tol && report.subspace_residual <= tol;
    report.is_2_design = report.is_1_design && report.second_moment_deviation <= tol;
    report.trivial_overlap_warning = report.first_moment_norm > tol;
    return report;
}

ProjectionResult project_design(const group::FiniteMatrixGroup& G, const Eigen::VectorXd& v,
                                const repdec::IsotypicComponent& component, int dim_V,
                                double tol) {
    require_dim(G, v);
    require_unit(v, tol, "project_design");
    if (dim_V == 0) dim_V = G.dim;

    const Eigen::VectorXd coords = component.real_basis.transpose() * v;
    const double norm = coords.norm();
    if (norm <= tol) {
        throw ZeroProjection("project_design: v has no component in this subspace");
    }

    ProjectionResult result;
    result.norm_sq_observed = norm * norm;
    result.norm_sq_expected = static_cast<double>(component.dim_real) / dim_V;
    result.w = component.real_basis * (coords / norm);
    result.sub_report = check_design_in_subspace(G, result.w, component.real_basis, tol);
    result.pass = std::abs(result.norm_sq_observed - result.norm_sq_expected) <= tol &&
                  result.sub_report.is_2_design;
    return result;
}

Eigen::VectorXd combine_designs(
    const group::FiniteMatrixGroup& G,
    const std::vector<std::pair<const repdec::IsotypicComponent*, Eigen::VectorXd>>& parts,
    double tol) {
    if (parts.empty()) {
        throw std::invalid_argument("combine_designs: no components given");
    }
    int dim_V = 0;
    for (const auto& [component, x] : parts) dim_V += component->dim_real;

    Eigen::VectorXd combined = Eigen::VectorXd::Zero(G.dim);
    for (std::size_t idx = 0; idx < parts.size(); ++idx) {
        const repdec::IsotypicComponent& component = *parts[idx].first;
        const Eigen::VectorXd& x = parts[idx].second;
        require_dim(G, x);
        const double off = (component.real_basis * (component.real_basis.transpose() * x) - x).norm();
        if (off > tol) {
            std::ostringstream msg;
            msg << "combine_designs: vector " << idx << " lies outside its component "
                << "(residual " << off << ")";
            throw ComponentNotDesign(msg.str());
        }
        const DesignReport report = check_design_in_subspace(G, x, component.real_basis, tol);
        if (!report.is_2_design) {
            std::ostringstream msg;
            msg << "combine_designs: vector " << idx << " is not a 2-design in its component "
                << "(first moment " << report.first_moment_norm << ", second moment deviation "
                << report.second_moment_deviation << ")";
            throw ComponentNotDesign(msg.str());
        }
        combined += std::sqrt(static_cast<double>(component.dim_real) / dim_V) * x;
    }
    return combined;
}

double polynomial_average_check(const group::FiniteMatrixGroup& G, const Eigen::VectorXd& v,
                                int trials, std::uint64_t seed) {
    require_dim(G, v);
    Rng rng(seed);
    const int n = G.dim;

    double worst = 0.0;
    for (int trial = 0; trial < trials; ++trial) {
        Eigen::MatrixXd a(n, n);
        for (int r = 0; r < n; ++r)
            for (int c = 0; c <= r; ++c) a(r, c) = a(c, r) = rng.normal();
        Eigen::VectorXd b(n);
        for (int r = 0; r < n; ++r) b(r) = rng.normal();
        const double c = rng.normal();

        double orbit_avg = 0.0;
        for (const Eigen::MatrixXd& g : G.elements) {
            const Eigen::VectorXd gv = g * v;
            orbit_avg += gv.dot(a * gv) + b.dot(gv) + c;
        }
        orbit_avg /= static_cast<double>(G.order());

        const double sphere_avg = a.trace() / n + c;
        worst = std::max(worst, std::abs(orbit_avg - sphere_avg));
    }
    return worst;
}

}  // namespace orbitdesign::design
