#include "orbitdesign/schur.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace orbitdesign::schur {

namespace {

void require_same_length(std::size_t a, std::size_t b) {
    if (a == 0 || a != b) {
        throw std::invalid_argument(
            "inner_product_G: functions must be nonempty and of equal length");
    }
}

double max_abs_coeff(const dalg::DScalar& x) {
    double m = 0.0;
    for (int X = 0; X < 4; ++X) m = std::max(m, std::abs(x.c[X]));
    return m;
}

}  // namespace

double effective_tolerance(double tol, std::size_t order) {
    if (order > kTolScaleOrder) {
        return tol * std::sqrt(static_cast<double>(order));
    }
    return tol;
}

std::vector<dalg::DScalar> CoefficientTable::function(int i, int j,
                                                      double scale) const {
    std::vector<dalg::DScalar> f;
    f.reserve(values.size());
    for (const dalg::DMatrix& m : values) {
        f.push_back(dalg::d_scale(m.at(i, j), scale));
    }
    return f;
}

CoefficientTable coefficient_table(const group::FiniteMatrixGroup& G,
                                   const repdec::IsotypicComponent& comp) {
    if (comp.d_rep.size() != G.order()) {
        throw std::invalid_argument(
            "coefficient_table: chart was built from a different group");
    }
    CoefficientTable table(comp.fs_tag);
    table.n = comp.n;
    table.values = comp.d_rep;
    return table;
}

dalg::DScalar inner_product_G(const std::vector<dalg::DScalar>& f1,
                              const std::vector<dalg::DScalar>& f2) {
    require_same_length(f1.size(), f2.size());
    dalg::DScalar acc = dalg::DScalar::zero(f1[0].tag);
    for (std::size_t t = 0; t < f1.size(); ++t) {
        acc = acc + f1[t] * dalg::d_conj(f2[t]);
    }
    return dalg::d_scale(acc, 1.0 / static_cast<double>(f1.size()));
}

double inner_product_G(const std::vector<double>& f1,
                       const std::vector<double>& f2) {
    require_same_length(f1.size(), f2.size());
    double acc = 0.0;
    for (std::size_t t = 0; t < f1.size(); ++t) acc += f1[t] * f2[t];
    return acc / static_cast<double>(f1.size());
}

SchurRealReport verify_schur_real(const CoefficientTable& table, double tol) {
    const int n = table.n;
    const int d = table.tag.dim();
    const std::size_t N = table.order();
    SchurRealReport report;
    report.tolerance = effective_tolerance(tol, N);
    const double diag_value = 1.0 / static_cast<double>(n * d);

    struct RealIndex {
        int i, j, X;
    };
    std::vector<RealIndex> idx;
    idx.reserve(static_cast<std::size_t>(n) * n * d);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int X = 0; X < d; ++X) idx.push_back({i, j, X});

    for (const RealIndex& a : idx) {
        for (const RealIndex& b : idx) {
            double acc = 0.0;
            for (std::size_t t = 0; t < N; ++t) {
                acc += table.real_component(t, a.i, a.j, a.X) *
                       table.real_component(t, b.i, b.j, b.X);
            }
            acc /= static_cast<double>(N);
            const bool diag =
                (a.i == b.i && a.j == b.j && a.X == b.X);
            const double residual = std::abs(acc - (diag ? diag_value : 0.0));
            if (residual > report.max_residual) {
                report.max_residual = residual;
                report.i = a.i;
                report.j = a.j;
                report.X = a.X;
                report.k = b.i;
                report.l = b.j;
                report.Y = b.X;
            }
        }
    }
    report.pass = report.max_residual <= report.tolerance;
    return report;
}

SchurRealReport verify_schur_real(const group::FiniteMatrixGroup& G,
                                  const repdec::IsotypicComponent& comp,
                                  double tol) {
    return verify_schur_real(coefficient_table(G, comp), tol);
}

SchurDReport verify_schur_d(const CoefficientTable& table, double tol) {
    const int n = table.n;
    const int d = table.tag.dim();
    const std::size_t N = table.order();
    SchurDReport report;
    report.tolerance = effective_tolerance(tol, N);

    // Normalized family: f_(i,j) = sqrt(n) * rho_ij, row-major over (i, j).
    const double scale = std::sqrt(static_cast<double>(n));
    std::vector<std::vector<dalg::DScalar>> family;
    family.reserve(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) family.push_back(table.function(i, j, scale));

    const dalg::DScalar one = dalg::DScalar::one(table.tag);
    const dalg::DScalar zero = dalg::DScalar::zero(table.tag);
    for (std::size_t a = 0; a < family.size(); ++a) {
        for (std::size_t b = 0; b < family.size(); ++b) {
            for (int Z = 0; Z < d; ++Z) {
                dalg::DScalar acc = dalg::DScalar::zero(table.tag);
                for (std::size_t t = 0; t < N; ++t) {
                    acc = acc +
                          family[a][t] * dalg::d_conj(dalg::tau(Z, family[b][t]));
                }
                acc = dalg::d_scale(acc, 1.0 / static_cast<double>(N));
                const dalg::DScalar& target = (a == b && Z == 0) ? one : zero;
                const double residual = max_abs_coeff(acc - target);
                if (residual > report.max_residual) {
                    report.max_residual = residual;
                    report.i = static_cast<int>(a) / n;
                    report.j = static_cast<int>(a) % n;
                    report.k = static_cast<int>(b) / n;
                    report.l = static_cast<int>(b) % n;
                    report.Z = Z;
                }
            }
        }
    }
    report.pass = report.max_residual <= report.tolerance;
    return report;
}

SchurDReport verify_schur_d(const group::FiniteMatrixGroup& G,
                            const repdec::IsotypicComponent& comp, double tol) {
    return verify_schur_d(coefficient_table(G, comp), tol);
}

EquivalenceReport check_equivalence(
    dalg::AlgebraTag tag, const std::vector<std::vector<dalg::DScalar>>& family,
    double tol) {
    EquivalenceReport report;
    report.tolerance = tol;
    if (family.empty()) {
        report.real_holds = true;
        report.d_holds = true;
        report.equivalent = true;
        return report;
    }

    const std::size_t N = family[0].size();
    for (const auto& f : family) {
        if (f.size() != N || N == 0) {
            throw std::invalid_argument(
                "check_equivalence: family functions must be nonempty and of "
                "equal length");
        }
    }
    report.tolerance = effective_tolerance(tol, N);

    const int d = tag.dim();
    const dalg::DScalar one = dalg::DScalar::one(tag);
    const dalg::DScalar zero = dalg::DScalar::zero(tag);
    for (std::size_t a = 0; a < family.size(); ++a) {
        for (std::size_t b = 0; b < family.size(); ++b) {
            // Condition (1): Gram block of the real component functions.
            double M[4][4] = {};
            for (int X = 0; X < d; ++X) {
                for (int Y = 0; Y < d; ++Y) {
                    double acc = 0.0;
                    for (std::size_t t = 0; t < N; ++t) {
                        acc += family[a][t].c[X] * family[b][t].c[Y];
                    }
                    M[X][Y] = acc / static_cast<double>(N);
                    const bool diag = (a == b && X == Y);
                    report.real_residual =
                        std::max(report.real_residual,
                                 std::abs(M[X][Y] - (diag ? 1.0 / d : 0.0)));
                }
            }

            // Condition (2): twisted D-valued products.
            dalg::DScalar S[4] = {zero, zero, zero, zero};
            for (int Z = 0; Z < d; ++Z) {
                dalg::DScalar acc = dalg::DScalar::zero(tag);
                for (std::size_t t = 0; t < N; ++t) {
                    acc = acc +
                          family[a][t] * dalg::d_conj(dalg::tau(Z, family[b][t]));
                }
                S[Z] = dalg::d_scale(acc, 1.0 / static_cast<double>(N));
                const dalg::DScalar& target = (a == b && Z == 0) ? one : zero;
                report.d_residual =
                    std::max(report.d_residual, max_abs_coeff(S[Z] - target));
            }

            // The two sides are linked pointwise: S_Z = sum_Y sign(Z,Y) T_Y
            // conj(Y) with T_Y = sum_X M[X][Y] X, and the sign-table columns
            // are orthogonal characters, so the Gram block can be recovered
            // from the twisted products whether or not either condition holds.
            for (int Y = 0; Y < d; ++Y) {
                dalg::DScalar U = dalg::DScalar::zero(tag);
                for (int Z = 0; Z < d; ++Z) {
                    U = U + dalg::d_scale(S[Z], dalg::tau_sign(tag, Z, Y));
                }
                U = dalg::d_scale(U, 1.0 / static_cast<double>(d));
                const dalg::DScalar T = U * dalg::DScalar::basis(tag, Y);
                for (int X = 0; X < d; ++X) {
                    report.roundtrip_residual = std::max(
                        report.roundtrip_residual, std::abs(T.c[X] - M[X][Y]));
                }
            }
        }
    }
    report.real_holds = report.real_residual <= report.tolerance;
    report.d_holds = report.d_residual <= report.tolerance;
    report.equivalent = (report.real_holds == report.d_holds);
    return report;
}

bool verify_equivalence_roundtrip(
    dalg::AlgebraTag tag, const std::vector<std::vector<dalg::DScalar>>& family,
    double tol) {
    return check_equivalence(tag, family, tol).equivalent;
}

}  // namespace orbitdesign::schur
