// Arithmetic over the normed division algebras R, C, H: tagged scalars,
// matrices, partial conjugations, and the realification chart that turns
// D-linear algebra into real linear algebra.
#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace orbitdesign::dalg {

enum class AlgebraKind { Real, Complex, Quaternion };

// One of R, C, H with its real dimension d = 1, 2, 4.
// Basis order is fixed as (1, i, j, k); multiplication follows the Hamilton
// convention i*j = k.
struct AlgebraTag {
    AlgebraKind kind = AlgebraKind::Real;

    constexpr int dim() const {
        switch (kind) {
            case AlgebraKind::Real: return 1;
            case AlgebraKind::Complex: return 2;
            case AlgebraKind::Quaternion: return 4;
        }
        return 1;
    }

    static constexpr AlgebraTag real() { return {AlgebraKind::Real}; }
    static constexpr AlgebraTag complex() { return {AlgebraKind::Complex}; }
    static constexpr AlgebraTag quaternion() { return {AlgebraKind::Quaternion}; }

    friend constexpr bool operator==(AlgebraTag a, AlgebraTag b) { return a.kind == b.kind; }
    friend constexpr bool operator!=(AlgebraTag a, AlgebraTag b) { return a.kind != b.kind; }
};

// Letter used in reports and JSON: R, C or H.
char algebra_letter(AlgebraTag tag);
AlgebraTag algebra_from_letter(char letter);

struct TagMismatch : std::invalid_argument {
    explicit TagMismatch(const std::string& what) : std::invalid_argument(what) {}
};

// Basis products on (1, i, j, k), exact integer arithmetic.
// basis_mul_index/sign give X_a * X_b = sign * X_index.
int basis_mul_index(int a, int b);
int basis_mul_sign(int a, int b);

// tau_sign(tag, Y, X) = tau_Y(X) / X  in {+1, -1}.
// tau_1 = id always; for C, tau_i is complex conjugation; for H, tau_Y is the
// sandwich v -> Y v Y^{-1}, which fixes 1 and Y and negates the rest.
int tau_sign(AlgebraTag tag, int Y, int X);

// Scalar in D. Coefficients are stored against the basis (1, i, j, k);
// coefficients beyond dim() are kept at exactly zero.
struct DScalar {
    AlgebraTag tag;
    std::array<double, 4> c{0.0, 0.0, 0.0, 0.0};

    DScalar() = default;
    explicit DScalar(AlgebraTag t) : tag(t) {}
    DScalar(AlgebraTag t, std::array<double, 4> coeffs);

    static DScalar zero(AlgebraTag t) { return DScalar(t); }
    static DScalar one(AlgebraTag t);
    static DScalar basis(AlgebraTag t, int X);
    static DScalar from_real(AlgebraTag t, double x);

    double re() const { return c[0]; }
    double norm_sq() const;
    double norm() const;
};

DScalar d_add(const DScalar& x, const DScalar& y);
DScalar d_sub(const DScalar& x, const DScalar& y);
DScalar d_mul(const DScalar& x, const DScalar& y);
DScalar d_scale(const DScalar& x, double a);
DScalar d_neg(const DScalar& x);
DScalar d_conj(const DScalar& x);

inline DScalar operator+(const DScalar& x, const DScalar& y) { return d_add(x, y); }
inline DScalar operator-(const DScalar& x, const DScalar& y) { return d_sub(x, y); }
inline DScalar operator*(const DScalar& x, const DScalar& y) { return d_mul(x, y); }
inline DScalar operator*(const DScalar& x, double a) { return d_scale(x, a); }
inline DScalar operator*(double a, const DScalar& x) { return d_scale(x, a); }
inline DScalar operator-(const DScalar& x) { return d_neg(x); }

std::string to_string(const DScalar& x);

// Partial conjugation tau_X applied to a general scalar (coefficientwise signs).
DScalar tau(int X, const DScalar& v);

// Sum_{X in I_D} X * conj(tau_Y(X)); equals dim * delta_{1Y}. Evaluated with
// the exact integer tables, used as a self-test oracle.
DScalar tau_sum(int Y, AlgebraTag tag);

// Inversion formula: recovers the real component functions f^(X) of a
// D-valued function from its partial conjugates,
//   f^(X) = (1/d) sum_Y (tau_X(Y)/Y) * conj(X) * tau_Y(f).
std::vector<double> component_inversion(const std::vector<DScalar>& f, int X);

// Sum_{X in I_H} X T conj(X) = 4 Re(T) for quaternions, evaluated termwise.
DScalar quaternion_sandwich_sum(const DScalar& T);

// Dense matrix over D, row-major. Treated as a right D-module map acting on
// column vectors by left multiplication.
struct DMatrix {
    AlgebraTag tag;
    int rows = 0;
    int cols = 0;
    std::vector<DScalar> entries;

    DMatrix() = default;
    DMatrix(AlgebraTag t, int r, int c);

    static DMatrix identity(AlgebraTag t, int n);
    static DMatrix zero(AlgebraTag t, int r, int c) { return DMatrix(t, r, c); }

    DScalar& at(int r, int c) { return entries[static_cast<size_t>(r) * cols + c]; }
    const DScalar& at(int r, int c) const { return entries[static_cast<size_t>(r) * cols + c]; }

    DMatrix first_columns(int m) const;
};

DMatrix d_mat_mul(const DMatrix& a, const DMatrix& b);
DMatrix d_mat_scale(const DMatrix& m, double a);
DMatrix hermitian_adjoint(const DMatrix& m);
// gram(M) = adjoint(M) * M; D-Hermitian by construction.
DMatrix gram(const DMatrix& m);
double frobenius_norm(const DMatrix& m);
// Max-norm distance from a * I (used for gram tests against (1/m) I).
double max_deviation_from_scaled_identity(const DMatrix& m, double a);

// Realification chart for D^{n x m}: a fixed linear isometry onto R^{n m d}.
// Index order is X-major, then column, then row, so for column vectors
// (m = 1) the order is X-major then component index.
struct RealificationChart {
    AlgebraTag tag;
    int rows = 0;
    int cols = 1;

    int real_dim() const { return rows * cols * tag.dim(); }
    int index(int r, int c, int X) const { return (X * cols + c) * rows + r; }
};

Eigen::VectorXd realify_vector(const DMatrix& m);
DMatrix unrealify_vector(AlgebraTag tag, int rows, int cols, const Eigen::VectorXd& v);

// Real matrix of w -> A w on D^n in the realification chart (nd x nd).
Eigen::MatrixXd realify_operator(const DMatrix& a);

// Real matrix of v -> v * lambda on D^n; its diagonal n x n blocks all equal
// Re(lambda) I_n, so the real trace is n * d * Re(lambda).
Eigen::MatrixXd realify_right_mult(const DScalar& lambda, int n);
double right_mult_real_trace(const DScalar& lambda, int n);

// Member of O_D(n) with gram(U) = I, built by filling independent normal
// coefficients and running D-valued modified Gram-Schmidt over the columns.
// Deterministic for a fixed seed.
DMatrix random_d_unitary(AlgebraTag tag, int n, std::uint64_t seed);

}  // namespace orbitdesign::dalg
