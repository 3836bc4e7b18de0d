#include "orbitdesign/construct.hpp"

#include <cmath>
#include <sstream>

#include "orbitdesign/design.hpp"
#include "orbitdesign/rng.hpp"

namespace orbitdesign::construct {

namespace {

void require_feasible(const repdec::IsotypicComponent& comp) {
    if (comp.m > comp.n) {
        std::ostringstream msg;
        msg << "no 2-design orbit exists in a component with multiplicity " << comp.m
            << " above its D-dimension " << comp.n
            << ": an n x m matrix with m > n cannot have gram (1/m) I";
        throw MultiplicityExceedsDimension(msg.str());
    }
}

}  // namespace

Eigen::VectorXd construct_isotypic_design(const repdec::IsotypicComponent& comp,
                                          std::uint64_t seed) {
    require_feasible(comp);
    return construct_isotypic_design(comp,
                                     dalg::random_d_unitary(comp.fs_tag, comp.n, seed));
}

Eigen::VectorXd construct_isotypic_design(const repdec::IsotypicComponent& comp,
                                          const dalg::DMatrix& U) {
    require_feasible(comp);
    if (U.tag != comp.fs_tag || U.rows != comp.n || U.cols != comp.n) {
        throw std::invalid_argument(
            "construct_isotypic_design: U must be n x n over the component algebra");
    }
    dalg::DMatrix M = U.first_columns(comp.m);
    M = dalg::d_mat_scale(M, 1.0 / std::sqrt(static_cast<double>(comp.m)));
    return repdec::lift(comp, M);
}

Eigen::VectorXd construct_global_design(const repdec::Decomposition& dec,
                                        std::uint64_t seed) {
    return construct_global_design(dec, {}, seed);
}

Eigen::VectorXd construct_global_design(const repdec::Decomposition& dec,
                                        const std::vector<std::size_t>& selected,
                                        std::uint64_t seed) {
    std::vector<std::size_t> chosen = selected;
    if (chosen.empty()) {
        for (std::size_t i = 0; i < dec.components.size(); ++i) chosen.push_back(i);
    }
    if (chosen.empty()) {
        throw std::invalid_argument("construct_global_design: decomposition has no components");
    }
    int dim_V = 0;
    for (std::size_t i : chosen) {
        if (i >= dec.components.size()) {
            throw std::invalid_argument("construct_global_design: component index out of range");
        }
        dim_V += dec.components[i].dim_real;
    }

    // One independent unitary per component, drawn in selection order.
    Rng rng(seed);
    Eigen::VectorXd v = Eigen::VectorXd::Zero(dec.ambient_dim);
    for (std::size_t i : chosen) {
        const repdec::IsotypicComponent& comp = dec.components[i];
        const Eigen::VectorXd x = construct_isotypic_design(comp, rng.next_u64());
        v += std::sqrt(static_cast<double>(comp.dim_real) / dim_V) * x;
    }
    return v;
}

ClassificationResult classify_orbit(const group::FiniteMatrixGroup& G,
                                    const repdec::Decomposition& dec,
                                    const Eigen::VectorXd& v, double tol) {
    std::vector<std::size_t> all;
    for (std::size_t i = 0; i < dec.components.size(); ++i) all.push_back(i);
    return classify_orbit(G, dec, v, all, G.dim, tol);
}

ClassificationResult classify_orbit(const group::FiniteMatrixGroup& G,
                                    const repdec::Decomposition& dec,
                                    const Eigen::VectorXd& v,
                                    const std::vector<std::size_t>& target, int dim_V,
                                    double tol) {
    if (v.size() != G.dim || dec.ambient_dim != G.dim) {
        throw group::DimensionMismatch("classify_orbit: dimension mismatch");
    }
    if (std::abs(v.norm() - 1.0) > tol) {
        throw design::NotUnitVector("classify_orbit: expected a unit vector");
    }
    if (dim_V <= 0) {
        throw std::invalid_argument("classify_orbit: dim_V must be positive");
    }

    std::vector<bool> in_target(dec.components.size(), false);
    for (std::size_t i : target) {
        if (i >= dec.components.size()) {
            throw std::invalid_argument("classify_orbit: target component index out of range");
        }
        in_target[i] = true;
    }

    ClassificationResult result;
    result.tol = tol;
    result.dim_V = dim_V;

    Eigen::VectorXd target_part = Eigen::VectorXd::Zero(G.dim);
    for (std::size_t i = 0; i < dec.components.size(); ++i) {
        const repdec::IsotypicComponent& comp = dec.components[i];
        ComponentClassification entry;
        entry.in_target = in_target[i];
        entry.M = repdec::to_matrix(comp, v);
        entry.scale_observed = dalg::frobenius_norm(entry.M);
        if (entry.in_target) {
            entry.scale_expected = std::sqrt(static_cast<double>(comp.dim_real) / dim_V);
            target_part += comp.real_basis * (comp.real_basis.transpose() * v);
        }
        entry.scale_residual = std::abs(entry.scale_observed * entry.scale_observed -
                                        entry.scale_expected * entry.scale_expected);

        if (entry.in_target) {
            if (entry.scale_observed <= tol) {
                // A numerically zero projection cannot carry a design, and
                // normalizing it would only amplify noise; report the
                // limiting gram deviation ||0 - (1/m) I||_max.
                entry.gram_residual = 1.0 / comp.m;
            } else {
                const dalg::DMatrix normalized =
                    dalg::d_mat_scale(entry.M, 1.0 / entry.scale_observed);
                entry.gram_residual = dalg::max_deviation_from_scaled_identity(
                    dalg::gram(normalized), 1.0 / comp.m);
            }
            entry.pass = entry.scale_residual <= tol && entry.gram_residual <= tol;
            result.max_residual =
                std::max({result.max_residual, entry.scale_residual, entry.gram_residual});
        } else {
            // Off-target components must be empty; their shape is irrelevant.
            entry.pass = entry.scale_residual <= tol;
            result.max_residual = std::max(result.max_residual, entry.scale_residual);
        }
        result.components.push_back(std::move(entry));
    }

    result.off_target_norm = (v - target_part).norm();
    result.max_residual = std::max(result.max_residual, result.off_target_norm);
    result.overall_pass = result.max_residual <= tol;
    return result;
}

}  // namespace orbitdesign::construct
