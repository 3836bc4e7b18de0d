#include "orbitdesign/repdec.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "orbitdesign/io.hpp"
#include "orbitdesign/rng.hpp"

namespace orbitdesign::repdec {

namespace {

using dalg::AlgebraTag;
using dalg::DMatrix;
using dalg::DScalar;
using group::FiniteMatrixGroup;

// Relative gap that separates eigenvalue clusters when splitting invariant
// subspaces.
constexpr double kClusterGap = 1e-7;
// Singular values below this fraction of the largest count as null directions
// in commutant systems.
constexpr double kNullFraction = 1e-8;
// An averaged intertwiner above this Frobenius norm counts as nonzero.
constexpr double kIntertwinerFloor = 1e-8;
constexpr int kMaxSplitSamples = 5;
constexpr int kMaxStructureAttempts = 8;
constexpr int kDecomposeRetries = 3;

Eigen::MatrixXd random_matrix(int k, Rng& rng) {
    Eigen::MatrixXd m(k, k);
    for (int c = 0; c < k; ++c) {
        for (int r = 0; r < k; ++r) m(r, c) = rng.normal();
    }
    return m;
}

Eigen::MatrixXd random_symmetric(int k, Rng& rng) {
    const Eigen::MatrixXd m = random_matrix(k, rng);
    return 0.5 * (m + m.transpose());
}

std::vector<Eigen::MatrixXd> restrict_all(const std::vector<Eigen::MatrixXd>& mats,
                                          const Eigen::MatrixXd& W) {
    std::vector<Eigen::MatrixXd> out;
    out.reserve(mats.size());
    for (const Eigen::MatrixXd& m : mats) out.push_back(W.transpose() * m * W);
    return out;
}

Eigen::MatrixXd averaged_conjugation(const std::vector<Eigen::MatrixXd>& elems,
                                     const Eigen::MatrixXd& S) {
    Eigen::MatrixXd T = Eigen::MatrixXd::Zero(S.rows(), S.cols());
    for (const Eigen::MatrixXd& g : elems) T += g * S * g.transpose();
    return T / static_cast<double>(elems.size());
}

// Rows constrain A M = M A for every generator M; columns index vec(A),
// column-major.
Eigen::MatrixXd commutant_constraints(const std::vector<Eigen::MatrixXd>& gens, int k) {
    Eigen::MatrixXd C = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(gens.size()) * k * k,
                                              static_cast<Eigen::Index>(k) * k);
    Eigen::Index row0 = 0;
    for (const Eigen::MatrixXd& M : gens) {
        for (int q = 0; q < k; ++q) {
            for (int p = 0; p < k; ++p) {
                const Eigen::Index row = row0 + p + static_cast<Eigen::Index>(q) * k;
                for (int s = 0; s < k; ++s) {
                    C(row, p + static_cast<Eigen::Index>(s) * k) += M(s, q);
                    C(row, s + static_cast<Eigen::Index>(q) * k) -= M(p, s);
                }
            }
        }
        row0 += static_cast<Eigen::Index>(k) * k;
    }
    return C;
}

int null_space_dim(const Eigen::MatrixXd& C) {
    if (C.rows() == 0 || C.cols() == 0) return static_cast<int>(C.cols());
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(C);
    const auto& sv = svd.singularValues();
    const double top = sv[0];
    if (top < 1e-12) return static_cast<int>(C.cols());
    int dim = 0;
    for (Eigen::Index t = 0; t < sv.size(); ++t) {
        if (sv[t] <= kNullFraction * top) ++dim;
    }
    dim += static_cast<int>(C.cols() - sv.size());
    return dim;
}

int full_commutant_dim(const std::vector<Eigen::MatrixXd>& gens, int k) {
    return null_space_dim(commutant_constraints(gens, k));
}

// Dimension of the symmetric matrices commuting with every generator;
// equals 1 exactly when the subspace is irreducible.
int sym_commutant_dim(const std::vector<Eigen::MatrixXd>& gens, int k) {
    const Eigen::MatrixXd C = commutant_constraints(gens, k);
    const int nsym = k * (k + 1) / 2;
    Eigen::MatrixXd B = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(k) * k, nsym);
    int col = 0;
    for (int b = 0; b < k; ++b) {
        for (int a = 0; a <= b; ++a) {
            B(a + static_cast<Eigen::Index>(b) * k, col) = 1.0;
            if (a != b) B(b + static_cast<Eigen::Index>(a) * k, col) = 1.0;
            ++col;
        }
    }
    return null_space_dim(C * B);
}

Eigen::MatrixXd polar_orthogonal(const Eigen::MatrixXd& m) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
    return svd.matrixU() * svd.matrixV().transpose();
}

// Column blocks of the eigenvector matrix, one per eigenvalue cluster.
std::vector<Eigen::MatrixXd> eigencluster_blocks(const Eigen::MatrixXd& T) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(T);
    const Eigen::VectorXd& ev = es.eigenvalues();
    const Eigen::MatrixXd& Q = es.eigenvectors();
    const int k = static_cast<int>(ev.size());
    const double gap = kClusterGap * std::max(1.0, ev.cwiseAbs().maxCoeff());
    std::vector<Eigen::MatrixXd> blocks;
    int start = 0;
    for (int t = 1; t <= k; ++t) {
        if (t == k || ev[t] - ev[t - 1] > gap) {
            blocks.push_back(Q.middleCols(start, t - start));
            start = t;
        }
    }
    return blocks;
}

// Splits an invariant subspace (orthonormal ambient columns) into minimal
// invariant subspaces by refining along eigenspaces of invariant symmetric
// samples; minimality is certified by a one-dimensional symmetric commutant.
std::vector<Eigen::MatrixXd> refine_to_minimal(const FiniteMatrixGroup& G,
                                               const Eigen::MatrixXd& start, Rng& rng) {
    std::vector<Eigen::MatrixXd> queue{start};
    std::vector<Eigen::MatrixXd> minimal;
    for (size_t head = 0; head < queue.size(); ++head) {
        const Eigen::MatrixXd W = queue[head];
        const int k = static_cast<int>(W.cols());
        if (k == 1 || sym_commutant_dim(restrict_all(G.generators, W), k) == 1) {
            minimal.push_back(W);
            continue;
        }
        const std::vector<Eigen::MatrixXd> elems = restrict_all(G.elements, W);
        bool split = false;
        for (int attempt = 0; attempt < kMaxSplitSamples && !split; ++attempt) {
            const Eigen::MatrixXd T = averaged_conjugation(elems, random_symmetric(k, rng));
            const std::vector<Eigen::MatrixXd> blocks = eigencluster_blocks(T);
            if (blocks.size() <= 1) continue;
            for (const Eigen::MatrixXd& Q : blocks) queue.push_back(W * Q);
            split = true;
        }
        if (!split) {
            throw DegenerateSplit("invariant samples failed to split a reducible subspace of dimension " +
                                  std::to_string(k));
        }
    }
    return minimal;
}

// Nonzero averaged intertwiner test; equivalent irreducibles give a sizable
// average for almost every seed matrix, inequivalent ones give zero.
bool copies_equivalent(const std::vector<Eigen::MatrixXd>& elems_a,
                       const std::vector<Eigen::MatrixXd>& elems_b, Rng& rng) {
    if (elems_a.front().rows() != elems_b.front().rows()) return false;
    const int k = static_cast<int>(elems_a.front().rows());
    for (int attempt = 0; attempt < 3; ++attempt) {
        const Eigen::MatrixXd R = random_matrix(k, rng);
        Eigen::MatrixXd phi = Eigen::MatrixXd::Zero(k, k);
        for (size_t t = 0; t < elems_a.size(); ++t) {
            phi += elems_b[t] * R * elems_a[t].transpose();
        }
        phi /= static_cast<double>(elems_a.size());
        if (phi.norm() > kIntertwinerFloor) return true;
    }
    return false;
}

// Orthogonal intertwiner from the subspace carrying elems_from onto the one
// carrying elems_to. The polar factor of a nonzero averaged intertwiner is
// itself an intertwiner because the symmetric commutant of an irreducible is
// the scalars.
Eigen::MatrixXd orthogonal_intertwiner(const std::vector<Eigen::MatrixXd>& elems_from,
                                       const std::vector<Eigen::MatrixXd>& elems_to, Rng& rng) {
    const int k = static_cast<int>(elems_from.front().rows());
    for (int attempt = 0; attempt < kMaxStructureAttempts; ++attempt) {
        const Eigen::MatrixXd R = random_matrix(k, rng);
        Eigen::MatrixXd phi = Eigen::MatrixXd::Zero(k, k);
        for (size_t t = 0; t < elems_from.size(); ++t) {
            phi += elems_to[t] * R * elems_from[t].transpose();
        }
        phi /= static_cast<double>(elems_from.size());
        if (phi.norm() < kIntertwinerFloor) continue;
        return polar_orthogonal(phi);
    }
    throw StructureMapFailure("could not align two equivalent copies with an averaged intertwiner");
}

// Orthogonal antisymmetric commutant element squaring to -I, trace-orthogonal
// to avoid (pass the first structure map there to get an anticommuting pair).
Eigen::MatrixXd make_structure_map(const std::vector<Eigen::MatrixXd>& elems, Rng& rng,
                                   const Eigen::MatrixXd* avoid) {
    const int k = static_cast<int>(elems.front().rows());
    const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(k, k);
    for (int attempt = 0; attempt < kMaxStructureAttempts; ++attempt) {
        const Eigen::MatrixXd A = averaged_conjugation(elems, random_matrix(k, rng));
        Eigen::MatrixXd J0 = 0.5 * (A - A.transpose());
        if (avoid != nullptr) {
            J0 -= (*avoid) * (avoid->cwiseProduct(J0).sum() / avoid->squaredNorm());
        }
        if (J0.norm() < 1e-6) continue;
        const Eigen::MatrixXd J = polar_orthogonal(J0);
        if ((J * J + id).cwiseAbs().maxCoeff() > 1e-8) continue;
        if (avoid != nullptr && ((*avoid) * J + J * (*avoid)).cwiseAbs().maxCoeff() > 1e-8) continue;
        return J;
    }
    throw StructureMapFailure("no antisymmetric commutant element passed the polar normalization");
}

// Greedy right-D-orthonormal basis: each new basis vector is the coordinate
// direction with the largest residual after removing the D-span of the
// vectors found so far.
std::vector<Eigen::VectorXd> d_orthonormal_basis(const std::vector<Eigen::MatrixXd>& r_ops,
                                                 int n) {
    const int k = static_cast<int>(r_ops.front().rows());
    const int d = static_cast<int>(r_ops.size());
    Eigen::MatrixXd span(k, 0);
    std::vector<Eigen::VectorXd> basis;
    basis.reserve(n);
    for (int s = 0; s < n; ++s) {
        Eigen::VectorXd best;
        double best_norm = -1.0;
        for (int t = 0; t < k; ++t) {
            Eigen::VectorXd e = Eigen::VectorXd::Unit(k, t);
            const Eigen::VectorXd res = e - span * (span.transpose() * e);
            if (res.norm() > best_norm) {
                best_norm = res.norm();
                best = res;
            }
        }
        const Eigen::VectorXd u = best / best_norm;
        basis.push_back(u);
        Eigen::MatrixXd grown(k, span.cols() + d);
        grown.leftCols(span.cols()) = span;
        for (int X = 0; X < d; ++X) grown.col(span.cols() + X) = r_ops[X] * u;
        span = std::move(grown);
    }
    return basis;
}

// Defensive check of the finished chart: the tabulated representation must be
// D-unitary and must intertwine the chart with the ambient action.
void verify_chart(const FiniteMatrixGroup& G, const IsotypicComponent& comp, Rng& rng) {
    for (size_t t = 0; t < G.elements.size(); ++t) {
        if (dalg::max_deviation_from_scaled_identity(dalg::gram(comp.d_rep[t]), 1.0) > 1e-9) {
            throw StructureMapFailure("tabulated representation is not D-unitary");
        }
    }
    for (int trial = 0; trial < 4; ++trial) {
        Eigen::VectorXd x(comp.dim_real);
        for (int t = 0; t < comp.dim_real; ++t) x[t] = rng.normal();
        const Eigen::VectorXd w = comp.real_basis * x;
        // The representation acts columnwise on the n x m chart matrix.
        const dalg::DMatrix M = dalg::unrealify_vector(comp.fs_tag, comp.n, comp.m, x);
        for (size_t t = 0; t < G.elements.size(); ++t) {
            const Eigen::VectorXd lhs = comp.real_basis.transpose() * (G.elements[t] * w);
            const Eigen::VectorXd rhs = dalg::realify_vector(dalg::d_mat_mul(comp.d_rep[t], M));
            if ((lhs - rhs).cwiseAbs().maxCoeff() > 1e-8) {
                throw StructureMapFailure("chart does not intertwine the group action");
            }
        }
    }
}

bool component_order(const IsotypicComponent& a, const IsotypicComponent& b) {
    if (a.dim_real != b.dim_real) return a.dim_real < b.dim_real;
    if (a.fs_tag.dim() != b.fs_tag.dim()) return a.fs_tag.dim() < b.fs_tag.dim();
    // The projector is basis-independent, so this order is stable across
    // seeds; entries are rounded to absorb roundoff.
    const Eigen::MatrixXd pa = a.projector();
    const Eigen::MatrixXd pb = b.projector();
    for (Eigen::Index t = 0; t < pa.size(); ++t) {
        const auto qa = std::llround(pa(t) * 1e6);
        const auto qb = std::llround(pb(t) * 1e6);
        if (qa != qb) return qa < qb;
    }
    return false;
}

Decomposition decompose_once(const FiniteMatrixGroup& G, const Eigen::MatrixXd& space,
                             std::uint64_t seed) {
    Rng rng(seed);
    const int k_space = static_cast<int>(space.cols());

    Eigen::MatrixXd p_fix = Eigen::MatrixXd::Zero(G.dim, G.dim);
    for (const Eigen::MatrixXd& g : G.elements) p_fix += g;
    p_fix /= static_cast<double>(G.order());

    // The restricted averaging projector has eigenvalues 0 and 1; the
    // eigenvalue-1 space collects every trivial summand.
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(space.transpose() * p_fix * space);
    std::vector<int> fixed_cols, moving_cols;
    for (int t = 0; t < k_space; ++t) {
        (es.eigenvalues()[t] > 0.5 ? fixed_cols : moving_cols).push_back(t);
    }

    Decomposition dec;
    dec.ambient_dim = G.dim;
    dec.space_dim = k_space;
    dec.trivial_multiplicity = static_cast<int>(fixed_cols.size());
    dec.trivial_basis.resize(G.dim, fixed_cols.size());
    for (size_t t = 0; t < fixed_cols.size(); ++t) {
        dec.trivial_basis.col(static_cast<Eigen::Index>(t)) =
            space * es.eigenvectors().col(fixed_cols[t]);
    }

    if (!moving_cols.empty()) {
        Eigen::MatrixXd v0(G.dim, moving_cols.size());
        for (size_t t = 0; t < moving_cols.size(); ++t) {
            v0.col(static_cast<Eigen::Index>(t)) = space * es.eigenvectors().col(moving_cols[t]);
        }
        const std::vector<Eigen::MatrixXd> minimal = refine_to_minimal(G, v0, rng);

        std::vector<std::vector<Eigen::MatrixXd>> restricted;
        restricted.reserve(minimal.size());
        for (const Eigen::MatrixXd& W : minimal) restricted.push_back(restrict_all(G.elements, W));

        std::vector<std::vector<int>> classes;
        for (size_t t = 0; t < minimal.size(); ++t) {
            bool placed = false;
            for (std::vector<int>& cls : classes) {
                if (copies_equivalent(restricted[static_cast<size_t>(cls.front())], restricted[t],
                                      rng)) {
                    cls.push_back(static_cast<int>(t));
                    placed = true;
                    break;
                }
            }
            if (!placed) classes.push_back({static_cast<int>(t)});
        }

        for (const std::vector<int>& cls : classes) {
            const int k = static_cast<int>(minimal[static_cast<size_t>(cls.front())].cols());
            Eigen::MatrixXd span(G.dim, static_cast<Eigen::Index>(cls.size()) * k);
            for (size_t c = 0; c < cls.size(); ++c) {
                span.middleCols(static_cast<Eigen::Index>(c) * k, k) =
                    minimal[static_cast<size_t>(cls[c])];
            }
            dec.components.push_back(build_chart(G, span, rng.next_u64()));
        }
    }

    std::sort(dec.components.begin(), dec.components.end(), component_order);

    int total = dec.trivial_multiplicity;
    for (const IsotypicComponent& comp : dec.components) total += comp.dim_real;
    if (total != k_space) {
        throw DegenerateSplit("decomposition lost dimensions: " + std::to_string(total) +
                              " of " + std::to_string(k_space));
    }
    return dec;
}

}  // namespace

Eigen::MatrixXd invariant_symmetric_sample(const FiniteMatrixGroup& G, std::uint64_t seed) {
    Rng rng(seed);
    return averaged_conjugation(G.elements, random_symmetric(G.dim, rng));
}

AlgebraTag fs_type(const FiniteMatrixGroup& G, const Eigen::MatrixXd& basis) {
    const int k = static_cast<int>(basis.cols());
    const int dim = full_commutant_dim(restrict_all(G.generators, basis), k);
    switch (dim) {
        case 1: return AlgebraTag::real();
        case 2: return AlgebraTag::complex();
        case 4: return AlgebraTag::quaternion();
        default:
            throw UnexpectedCommutantDim("commutant dimension " + std::to_string(dim) +
                                         " on a subspace of dimension " + std::to_string(k) +
                                         "; subspace is not irreducible");
    }
}

IsotypicComponent build_chart(const FiniteMatrixGroup& G, const Eigen::MatrixXd& component_basis,
                              std::uint64_t seed) {
    Rng rng(seed);
    const std::vector<Eigen::MatrixXd> copies = refine_to_minimal(G, component_basis, rng);
    const int m = static_cast<int>(copies.size());
    const int k = static_cast<int>(copies.front().cols());
    for (const Eigen::MatrixXd& c : copies) {
        if (c.cols() != k) {
            throw UnexpectedCommutantDim("copies of unequal dimension inside one isotypic block");
        }
    }

    const AlgebraTag tag = fs_type(G, copies.front());
    const int d = tag.dim();
    if (k % d != 0) {
        throw UnexpectedCommutantDim("copy dimension " + std::to_string(k) +
                                     " is not divisible by the algebra dimension " +
                                     std::to_string(d));
    }
    const int n = k / d;

    const std::vector<Eigen::MatrixXd> elems1 = restrict_all(G.elements, copies.front());

    // Right multiplications by the algebra basis on the first copy. The pair
    // (J, K) anticommutes, so K*J realizes the third quaternion unit with
    // R(x) R(y) = R(y x).
    std::vector<Eigen::MatrixXd> r_ops{Eigen::MatrixXd::Identity(k, k)};
    if (d >= 2) r_ops.push_back(make_structure_map(elems1, rng, nullptr));
    if (d == 4) {
        const Eigen::MatrixXd K = make_structure_map(elems1, rng, &r_ops[1]);
        r_ops.push_back(K);
        r_ops.push_back(K * r_ops[1]);
    }

    const std::vector<Eigen::VectorXd> basis_d = d_orthonormal_basis(r_ops, n);

    // Copies after the first are expressed through an orthogonal intertwiner
    // from the first copy, so all copies share one set of representation
    // matrices.
    std::vector<Eigen::MatrixXd> aligned{copies.front()};
    for (int c = 1; c < m; ++c) {
        const std::vector<Eigen::MatrixXd> elems_c = restrict_all(G.elements, copies[c]);
        aligned.push_back(copies[c] * orthogonal_intertwiner(elems1, elems_c, rng));
    }

    IsotypicComponent comp;
    comp.fs_tag = tag;
    comp.n = n;
    comp.m = m;
    comp.dim_real = n * m * d;
    comp.real_basis.resize(G.dim, comp.dim_real);
    const dalg::RealificationChart chart{tag, n, m};
    for (int X = 0; X < d; ++X) {
        for (int c = 0; c < m; ++c) {
            for (int s = 0; s < n; ++s) {
                comp.real_basis.col(chart.index(s, c, X)) = aligned[c] * (r_ops[X] * basis_d[s]);
            }
        }
    }

    comp.d_rep.reserve(G.elements.size());
    for (const Eigen::MatrixXd& g1 : elems1) {
        DMatrix rho(tag, n, n);
        for (int s = 0; s < n; ++s) {
            const Eigen::VectorXd image = g1 * basis_d[s];
            for (int t = 0; t < n; ++t) {
                DScalar entry(tag);
                for (int X = 0; X < d; ++X) entry.c[X] = (r_ops[X] * basis_d[t]).dot(image);
                rho.at(t, s) = entry;
            }
        }
        comp.d_rep.push_back(std::move(rho));
    }

    verify_chart(G, comp, rng);
    return comp;
}

Decomposition decompose(const FiniteMatrixGroup& G, const Eigen::MatrixXd& subspace_basis,
                        std::uint64_t seed) {
    for (int attempt = 0;; ++attempt) {
        try {
            return decompose_once(G, subspace_basis, seed + 0x9e3779b97f4a7c15ull * attempt);
        } catch (const std::runtime_error& err) {
            if (attempt + 1 >= kDecomposeRetries) throw;
            io::log(io::LogLevel::Warn,
                    std::string("decomposition retry after: ") + err.what());
        }
    }
}

Decomposition decompose(const FiniteMatrixGroup& G, std::uint64_t seed) {
    return decompose(G, Eigen::MatrixXd::Identity(G.dim, G.dim), seed);
}

Eigen::VectorXd project(const IsotypicComponent& comp, const Eigen::VectorXd& v) {
    if (v.size() != comp.real_basis.rows()) {
        throw group::DimensionMismatch("project: vector length does not match the ambient dimension");
    }
    return comp.real_basis.transpose() * v;
}

dalg::DMatrix to_matrix(const IsotypicComponent& comp, const Eigen::VectorXd& v) {
    return dalg::unrealify_vector(comp.fs_tag, comp.n, comp.m, project(comp, v));
}

Eigen::VectorXd lift(const IsotypicComponent& comp, const dalg::DMatrix& M) {
    if (M.tag != comp.fs_tag || M.rows != comp.n || M.cols != comp.m) {
        throw group::DimensionMismatch("lift: matrix shape does not match the component chart");
    }
    return comp.real_basis * dalg::realify_vector(M);
}

}  // namespace orbitdesign::repdec
