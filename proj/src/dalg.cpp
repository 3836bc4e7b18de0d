#include "orbitdesign/dalg.hpp"

#include <cmath>
#include <sstream>

#include "orbitdesign/rng.hpp"

namespace orbitdesign::dalg {

namespace {

// Hamilton multiplication on the ordered basis (1, i, j, k):
// i*j = k, j*k = i, k*i = j, and squares of imaginaries are -1.
constexpr int kMulIndex[4][4] = {
    {0, 1, 2, 3},
    {1, 0, 3, 2},
    {2, 3, 0, 1},
    {3, 2, 1, 0},
};

constexpr int kMulSign[4][4] = {
    {+1, +1, +1, +1},
    {+1, -1, +1, -1},
    {+1, -1, -1, +1},
    {+1, +1, -1, -1},
};

// Signs of the partial conjugations on (1, i, j, k). Row Y, column X.
// For H these are the sandwich maps v -> Y v Y^{-1}; tau_i fixes 1 and i
// and negates j and k, and similarly for tau_j, tau_k.
constexpr int kTauSignQuat[4][4] = {
    {+1, +1, +1, +1},
    {+1, +1, -1, -1},
    {+1, -1, +1, -1},
    {+1, -1, -1, +1},
};

// For C, tau_i is complex conjugation, which negates i.
constexpr int kTauSignComplex[2][2] = {
    {+1, +1},
    {+1, -1},
};

void require_same_tag(AlgebraTag a, AlgebraTag b, const char* op) {
    if (a != b) {
        throw TagMismatch(std::string(op) + ": operands live in different algebras");
    }
}

void require_basis_index(AlgebraTag tag, int X, const char* op) {
    if (X < 0 || X >= tag.dim()) {
        throw TagMismatch(std::string(op) + ": basis index " + std::to_string(X) +
                          " out of range for algebra " + algebra_letter(tag));
    }
}

}  // namespace

char algebra_letter(AlgebraTag tag) {
    switch (tag.kind) {
        case AlgebraKind::Real: return 'R';
        case AlgebraKind::Complex: return 'C';
        case AlgebraKind::Quaternion: return 'H';
    }
    return '?';
}

AlgebraTag algebra_from_letter(char letter) {
    switch (letter) {
        case 'R': case 'r': return AlgebraTag::real();
        case 'C': case 'c': return AlgebraTag::complex();
        case 'H': case 'h': return AlgebraTag::quaternion();
    }
    throw TagMismatch(std::string("unknown algebra letter '") + letter + "'");
}

int basis_mul_index(int a, int b) { return kMulIndex[a][b]; }
int basis_mul_sign(int a, int b) { return kMulSign[a][b]; }

int tau_sign(AlgebraTag tag, int Y, int X) {
    require_basis_index(tag, Y, "tau_sign");
    require_basis_index(tag, X, "tau_sign");
    switch (tag.kind) {
        case AlgebraKind::Real: return +1;
        case AlgebraKind::Complex: return kTauSignComplex[Y][X];
        case AlgebraKind::Quaternion: return kTauSignQuat[Y][X];
    }
    return +1;
}

DScalar::DScalar(AlgebraTag t, std::array<double, 4> coeffs) : tag(t), c(coeffs) {
    for (int X = t.dim(); X < 4; ++X) {
        if (c[X] != 0.0) {
            throw TagMismatch("DScalar: nonzero coefficient outside the algebra");
        }
    }
}

DScalar DScalar::one(AlgebraTag t) {
    DScalar s(t);
    s.c[0] = 1.0;
    return s;
}

DScalar DScalar::basis(AlgebraTag t, int X) {
    require_basis_index(t, X, "DScalar::basis");
    DScalar s(t);
    s.c[X] = 1.0;
    return s;
}

DScalar DScalar::from_real(AlgebraTag t, double x) {
    DScalar s(t);
    s.c[0] = x;
    return s;
}

double DScalar::norm_sq() const {
    double acc = 0.0;
    for (int X = 0; X < tag.dim(); ++X) acc += c[X] * c[X];
    return acc;
}

double DScalar::norm() const { return std::sqrt(norm_sq()); }

DScalar d_add(const DScalar& x, const DScalar& y) {
    require_same_tag(x.tag, y.tag, "d_add");
    DScalar r(x.tag);
    for (int X = 0; X < x.tag.dim(); ++X) r.c[X] = x.c[X] + y.c[X];
    return r;
}

DScalar d_sub(const DScalar& x, const DScalar& y) {
    require_same_tag(x.tag, y.tag, "d_sub");
    DScalar r(x.tag);
    for (int X = 0; X < x.tag.dim(); ++X) r.c[X] = x.c[X] - y.c[X];
    return r;
}

DScalar d_mul(const DScalar& x, const DScalar& y) {
    require_same_tag(x.tag, y.tag, "d_mul");
    const int d = x.tag.dim();
    DScalar r(x.tag);
    for (int a = 0; a < d; ++a) {
        if (x.c[a] == 0.0) continue;
        for (int b = 0; b < d; ++b) {
            r.c[kMulIndex[a][b]] += kMulSign[a][b] * x.c[a] * y.c[b];
        }
    }
    return r;
}

DScalar d_scale(const DScalar& x, double a) {
    DScalar r(x.tag);
    for (int X = 0; X < x.tag.dim(); ++X) r.c[X] = a * x.c[X];
    return r;
}

DScalar d_neg(const DScalar& x) { return d_scale(x, -1.0); }

DScalar d_conj(const DScalar& x) {
    DScalar r(x.tag);
    r.c[0] = x.c[0];
    for (int X = 1; X < x.tag.dim(); ++X) r.c[X] = -x.c[X];
    return r;
}

std::string to_string(const DScalar& x) {
    static const char* names[4] = {"", "i", "j", "k"};
    std::ostringstream out;
    out << x.c[0];
    for (int X = 1; X < x.tag.dim(); ++X) {
        out << (x.c[X] < 0.0 ? " - " : " + ") << std::abs(x.c[X]) << names[X];
    }
    return out.str();
}

DScalar tau(int X, const DScalar& v) {
    require_basis_index(v.tag, X, "tau");
    DScalar r(v.tag);
    for (int Y = 0; Y < v.tag.dim(); ++Y) {
        r.c[Y] = tau_sign(v.tag, X, Y) * v.c[Y];
    }
    return r;
}

DScalar tau_sum(int Y, AlgebraTag tag) {
    require_basis_index(tag, Y, "tau_sum");
    DScalar acc(tag);
    for (int X = 0; X < tag.dim(); ++X) {
        const DScalar term = d_mul(DScalar::basis(tag, X), d_conj(tau(Y, DScalar::basis(tag, X))));
        acc = d_add(acc, term);
    }
    return acc;
}

std::vector<double> component_inversion(const std::vector<DScalar>& f, int X) {
    std::vector<double> out;
    out.reserve(f.size());
    for (const DScalar& val : f) {
        const AlgebraTag tag = val.tag;
        require_basis_index(tag, X, "component_inversion");
        const DScalar conj_X = d_conj(DScalar::basis(tag, X));
        DScalar acc(tag);
        for (int Y = 0; Y < tag.dim(); ++Y) {
            const double s = tau_sign(tag, X, Y);
            acc = d_add(acc, d_scale(d_mul(conj_X, tau(Y, val)), s));
        }
        // The imaginary parts cancel exactly; only the real component survives.
        out.push_back(acc.c[0] / tag.dim());
    }
    return out;
}

DScalar quaternion_sandwich_sum(const DScalar& T) {
    if (T.tag != AlgebraTag::quaternion()) {
        throw TagMismatch("quaternion_sandwich_sum: argument must be a quaternion");
    }
    DScalar acc(T.tag);
    for (int X = 0; X < 4; ++X) {
        const DScalar bX = DScalar::basis(T.tag, X);
        acc = d_add(acc, d_mul(d_mul(bX, T), d_conj(bX)));
    }
    return acc;
}

DMatrix::DMatrix(AlgebraTag t, int r, int c)
    : tag(t), rows(r), cols(c), entries(static_cast<size_t>(r) * c, DScalar(t)) {}

DMatrix DMatrix::identity(AlgebraTag t, int n) {
    DMatrix m(t, n, n);
    for (int r = 0; r < n; ++r) m.at(r, r) = DScalar::one(t);
    return m;
}

DMatrix DMatrix::first_columns(int m) const {
    if (m < 0 || m > cols) {
        throw TagMismatch("DMatrix::first_columns: column count out of range");
    }
    DMatrix out(tag, rows, m);
    for (int r = 0; r < rows; ++r) {
        for (int c = 0; c < m; ++c) out.at(r, c) = at(r, c);
    }
    return out;
}

DMatrix d_mat_mul(const DMatrix& a, const DMatrix& b) {
    require_same_tag(a.tag, b.tag, "d_mat_mul");
    if (a.cols != b.rows) {
        throw TagMismatch("d_mat_mul: inner dimensions disagree");
    }
    DMatrix out(a.tag, a.rows, b.cols);
    for (int r = 0; r < a.rows; ++r) {
        for (int s = 0; s < a.cols; ++s) {
            const DScalar& ars = a.at(r, s);
            if (ars.norm_sq() == 0.0) continue;
            for (int c = 0; c < b.cols; ++c) {
                out.at(r, c) = d_add(out.at(r, c), d_mul(ars, b.at(s, c)));
            }
        }
    }
    return out;
}

DMatrix d_mat_scale(const DMatrix& m, double a) {
    DMatrix out(m.tag, m.rows, m.cols);
    for (size_t t = 0; t < m.entries.size(); ++t) out.entries[t] = d_scale(m.entries[t], a);
    return out;
}

DMatrix hermitian_adjoint(const DMatrix& m) {
    DMatrix out(m.tag, m.cols, m.rows);
    for (int r = 0; r < m.rows; ++r) {
        for (int c = 0; c < m.cols; ++c) out.at(c, r) = d_conj(m.at(r, c));
    }
    return out;
}

DMatrix gram(const DMatrix& m) { return d_mat_mul(hermitian_adjoint(m), m); }

double frobenius_norm(const DMatrix& m) {
    double acc = 0.0;
    for (const DScalar& e : m.entries) acc += e.norm_sq();
    return std::sqrt(acc);
}

double max_deviation_from_scaled_identity(const DMatrix& m, double a) {
    double worst = 0.0;
    for (int r = 0; r < m.rows; ++r) {
        for (int c = 0; c < m.cols; ++c) {
            DScalar diff = m.at(r, c);
            if (r == c) diff.c[0] -= a;
            worst = std::max(worst, diff.norm());
        }
    }
    return worst;
}

Eigen::VectorXd realify_vector(const DMatrix& m) {
    const RealificationChart chart{m.tag, m.rows, m.cols};
    Eigen::VectorXd v = Eigen::VectorXd::Zero(chart.real_dim());
    for (int r = 0; r < m.rows; ++r) {
        for (int c = 0; c < m.cols; ++c) {
            for (int X = 0; X < m.tag.dim(); ++X) {
                v[chart.index(r, c, X)] = m.at(r, c).c[X];
            }
        }
    }
    return v;
}

DMatrix unrealify_vector(AlgebraTag tag, int rows, int cols, const Eigen::VectorXd& v) {
    const RealificationChart chart{tag, rows, cols};
    if (v.size() != chart.real_dim()) {
        throw TagMismatch("unrealify_vector: real dimension does not match the chart");
    }
    DMatrix m(tag, rows, cols);
    for (int r = 0; r < rows; ++r) {
        for (int c = 0; c < cols; ++c) {
            for (int X = 0; X < tag.dim(); ++X) {
                m.at(r, c).c[X] = v[chart.index(r, c, X)];
            }
        }
    }
    return m;
}

Eigen::MatrixXd realify_operator(const DMatrix& a) {
    const int d = a.tag.dim();
    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(a.rows * d, a.cols * d);
    const RealificationChart domain{a.tag, a.cols, 1};
    DMatrix basis_vec(a.tag, a.cols, 1);
    for (int s = 0; s < a.cols; ++s) {
        for (int X = 0; X < d; ++X) {
            basis_vec.at(s, 0) = DScalar::basis(a.tag, X);
            out.col(domain.index(s, 0, X)) = realify_vector(d_mat_mul(a, basis_vec));
            basis_vec.at(s, 0) = DScalar(a.tag);
        }
    }
    return out;
}

Eigen::MatrixXd realify_right_mult(const DScalar& lambda, int n) {
    const int d = lambda.tag.dim();
    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(n * d, n * d);
    const RealificationChart chart{lambda.tag, n, 1};
    for (int s = 0; s < n; ++s) {
        for (int X = 0; X < d; ++X) {
            const DScalar image = d_mul(DScalar::basis(lambda.tag, X), lambda);
            for (int Y = 0; Y < d; ++Y) {
                out(chart.index(s, 0, Y), chart.index(s, 0, X)) = image.c[Y];
            }
        }
    }
    return out;
}

double right_mult_real_trace(const DScalar& lambda, int n) {
    return realify_right_mult(lambda, n).trace();
}

DMatrix random_d_unitary(AlgebraTag tag, int n, std::uint64_t seed) {
    Rng rng(seed);
    DMatrix u(tag, n, n);
    const int d = tag.dim();
    for (int c = 0; c < n; ++c) {
        // Draw a fresh candidate column and orthogonalize against the ones
        // already accepted; redraw in the measure-zero degenerate case.
        for (int attempt = 0; attempt < 64; ++attempt) {
            for (int r = 0; r < n; ++r) {
                for (int X = 0; X < d; ++X) u.at(r, c).c[X] = rng.normal();
            }
            for (int k = 0; k < c; ++k) {
                DScalar coeff(tag);
                for (int r = 0; r < n; ++r) {
                    coeff = d_add(coeff, d_mul(d_conj(u.at(r, k)), u.at(r, c)));
                }
                for (int r = 0; r < n; ++r) {
                    u.at(r, c) = d_sub(u.at(r, c), d_mul(u.at(r, k), coeff));
                }
            }
            double norm_sq = 0.0;
            for (int r = 0; r < n; ++r) norm_sq += u.at(r, c).norm_sq();
            if (norm_sq > 1e-12) {
                const double inv = 1.0 / std::sqrt(norm_sq);
                for (int r = 0; r < n; ++r) u.at(r, c) = d_scale(u.at(r, c), inv);
                break;
            }
        }
    }
    return u;
}

}  // namespace orbitdesign::dalg
