#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "orbitdesign/group.hpp"
#include "orbitdesign/io.hpp"
#include "orbitdesign/repdec.hpp"
#include "orbitdesign/rng.hpp"

using namespace orbitdesign;
using group::FiniteMatrixGroup;
using repdec::Decomposition;
using repdec::IsotypicComponent;

namespace {

const std::string kDataDir = ORBIT_DESIGNS_DATA_DIR;

FiniteMatrixGroup load_fixture(const std::string& name) {
    return group::enumerate_closure(io::load_group_file(kDataDir + "/groups/" + name));
}

// Block-diagonal direct product of C4 on the first two coordinates and Q8 on
// the last four: two nontrivial components of real dimensions 2 and 4.
FiniteMatrixGroup product_c4_q8() {
    const auto c4 = io::load_group_file(kDataDir + "/groups/c4.json");
    const auto q8 = io::load_group_file(kDataDir + "/groups/q8.json");
    group::GeneratorSet gens;
    gens.dim = 6;
    Eigen::MatrixXd a = Eigen::MatrixXd::Identity(6, 6);
    a.topLeftCorner(2, 2) = c4.generators[0];
    gens.generators.push_back(a);
    for (const Eigen::MatrixXd& q : q8.generators) {
        Eigen::MatrixXd b = Eigen::MatrixXd::Identity(6, 6);
        b.bottomRightCorner(4, 4) = q;
        gens.generators.push_back(b);
    }
    return group::enumerate_closure(gens);
}

Eigen::VectorXd random_unit(int dim, std::uint64_t seed) {
    Rng rng(seed);
    Eigen::VectorXd v(dim);
    for (int t = 0; t < dim; ++t) v[t] = rng.normal();
    return v.normalized();
}

struct Signature {
    char letter;
    int n, m;
};

bool matches(const Decomposition& dec, int trivial, const std::vector<Signature>& sigs) {
    if (dec.trivial_multiplicity != trivial) return false;
    if (dec.components.size() != sigs.size()) return false;
    for (size_t t = 0; t < sigs.size(); ++t) {
        const IsotypicComponent& comp = dec.components[t];
        if (dalg::algebra_letter(comp.fs_tag) != sigs[t].letter) return false;
        if (comp.n != sigs[t].n || comp.m != sigs[t].m) return false;
    }
    return true;
}

}  // namespace

TEST_CASE("invariant symmetric samples commute with the action") {
    for (const char* name : {"c4.json", "s3_permutation.json", "q8.json", "s3_regular.json"}) {
        const FiniteMatrixGroup G = load_fixture(name);
        const Eigen::MatrixXd T = repdec::invariant_symmetric_sample(G, 7);
        CHECK((T - T.transpose()).cwiseAbs().maxCoeff() < 1e-12);
        for (const Eigen::MatrixXd& g : G.elements) {
            CHECK((T * g - g * T).cwiseAbs().maxCoeff() < 1e-10);
        }
    }
}

TEST_CASE("invariant sample of the trivial group is the sample itself") {
    group::GeneratorSet gens;
    gens.dim = 3;
    gens.generators.push_back(Eigen::MatrixXd::Identity(3, 3));
    const FiniteMatrixGroup G = group::enumerate_closure(gens);
    const Eigen::MatrixXd T = repdec::invariant_symmetric_sample(G, 5);
    CHECK((T - T.transpose()).cwiseAbs().maxCoeff() == 0.0);
    CHECK(T.cwiseAbs().maxCoeff() > 0.1);
}

TEST_CASE("invariant samples on irreducible representations are scalar") {
    for (const char* name : {"c4.json", "q8.json", "icosahedral.json"}) {
        const FiniteMatrixGroup G = load_fixture(name);
        const Eigen::MatrixXd T = repdec::invariant_symmetric_sample(G, 11);
        const double alpha = T.trace() / G.dim;
        CHECK((T - alpha * Eigen::MatrixXd::Identity(G.dim, G.dim)).cwiseAbs().maxCoeff() < 1e-10);
    }
}

TEST_CASE("fixture representations decompose into their known components") {
    CHECK(matches(repdec::decompose(load_fixture("c4.json"), 1), 0, {{'C', 1, 1}}));
    CHECK(matches(repdec::decompose(load_fixture("s3_permutation.json"), 1), 1, {{'R', 2, 1}}));
    CHECK(matches(repdec::decompose(load_fixture("q8.json"), 1), 0, {{'H', 1, 1}}));
    CHECK(matches(repdec::decompose(load_fixture("icosahedral.json"), 1), 0, {{'R', 3, 1}}));
    // Regular representation of S3: trivial + sign + two copies of the
    // standard representation.
    CHECK(matches(repdec::decompose(load_fixture("s3_regular.json"), 1), 1,
                  {{'R', 1, 1}, {'R', 2, 2}}));
    CHECK(matches(repdec::decompose(product_c4_q8(), 1), 0, {{'C', 1, 1}, {'H', 1, 1}}));
}

TEST_CASE("component dimensions and trivial multiplicity add up to the ambient dimension") {
    for (const char* name : {"c4.json", "s3_permutation.json", "s3_regular.json", "q8.json",
                             "icosahedral.json"}) {
        const FiniteMatrixGroup G = load_fixture(name);
        const Decomposition dec = repdec::decompose(G, 3);
        int total = dec.trivial_multiplicity;
        for (const IsotypicComponent& comp : dec.components) {
            CHECK(comp.dim_real == comp.n * comp.m * comp.fs_tag.dim());
            CHECK(comp.real_basis.cols() == comp.dim_real);
            total += comp.dim_real;
        }
        CHECK(total == G.dim);
    }
}

TEST_CASE("component bases are orthonormal and mutually orthogonal") {
    const FiniteMatrixGroup G = load_fixture("s3_regular.json");
    const Decomposition dec = repdec::decompose(G, 17);
    std::vector<Eigen::MatrixXd> bases{dec.trivial_basis};
    for (const IsotypicComponent& comp : dec.components) bases.push_back(comp.real_basis);
    for (size_t a = 0; a < bases.size(); ++a) {
        const Eigen::MatrixXd gram = bases[a].transpose() * bases[a];
        CHECK((gram - Eigen::MatrixXd::Identity(gram.rows(), gram.cols())).cwiseAbs().maxCoeff() <
              1e-10);
        for (size_t b = a + 1; b < bases.size(); ++b) {
            CHECK((bases[a].transpose() * bases[b]).cwiseAbs().maxCoeff() < 1e-10);
        }
    }
}

TEST_CASE("frobenius-schur detection is deterministic across seeds") {
    for (std::uint64_t seed : {1ull, 2ull, 3ull, 4ull, 5ull}) {
        CHECK(matches(repdec::decompose(load_fixture("c4.json"), seed), 0, {{'C', 1, 1}}));
        CHECK(matches(repdec::decompose(load_fixture("s3_permutation.json"), seed), 1,
                      {{'R', 2, 1}}));
        CHECK(matches(repdec::decompose(load_fixture("q8.json"), seed), 0, {{'H', 1, 1}}));
    }
}

TEST_CASE("component projectors agree across seeds") {
    for (const char* name : {"s3_regular.json", "q8.json", "icosahedral.json"}) {
        const FiniteMatrixGroup G = load_fixture(name);
        const Decomposition dec_a = repdec::decompose(G, 101);
        const Decomposition dec_b = repdec::decompose(G, 202);
        REQUIRE(dec_a.components.size() == dec_b.components.size());
        for (size_t t = 0; t < dec_a.components.size(); ++t) {
            const Eigen::MatrixXd diff =
                dec_a.components[t].projector() - dec_b.components[t].projector();
            CHECK(diff.cwiseAbs().maxCoeff() < 1e-7);
        }
    }
}

TEST_CASE("fs_type solves the commutant on minimal invariant subspaces") {
    const Decomposition perm = repdec::decompose(load_fixture("s3_permutation.json"), 1);
    const FiniteMatrixGroup s3 = load_fixture("s3_permutation.json");
    CHECK(repdec::fs_type(s3, perm.components[0].real_basis) == dalg::AlgebraTag::real());

    const FiniteMatrixGroup c4 = load_fixture("c4.json");
    CHECK(repdec::fs_type(c4, Eigen::MatrixXd::Identity(2, 2)) == dalg::AlgebraTag::complex());

    const FiniteMatrixGroup q8 = load_fixture("q8.json");
    CHECK(repdec::fs_type(q8, Eigen::MatrixXd::Identity(4, 4)) == dalg::AlgebraTag::quaternion());
}

TEST_CASE("fs_type rejects subspaces with oversized commutants") {
    // The full regular representation of S3 has a six-dimensional commutant.
    const FiniteMatrixGroup G = load_fixture("s3_regular.json");
    CHECK_THROWS_AS(repdec::fs_type(G, Eigen::MatrixXd::Identity(6, 6)),
                    repdec::UnexpectedCommutantDim);
}

TEST_CASE("tabulated representations are D-unitary homomorphisms") {
    for (const char* name : {"c4.json", "s3_regular.json", "q8.json"}) {
        const FiniteMatrixGroup G = load_fixture(name);
        const Decomposition dec = repdec::decompose(G, 23);
        for (const IsotypicComponent& comp : dec.components) {
            for (const dalg::DMatrix& rho : comp.d_rep) {
                CHECK(dalg::max_deviation_from_scaled_identity(dalg::gram(rho), 1.0) < 1e-9);
            }
            // Spot-check the homomorphism property through the element table.
            for (size_t a = 0; a < G.elements.size(); a += 2) {
                for (size_t b = 1; b < G.elements.size(); b += 3) {
                    const Eigen::MatrixXd gh = G.elements[a] * G.elements[b];
                    size_t idx = 0;
                    while ((gh - G.elements[idx]).cwiseAbs().maxCoeff() > G.tol) ++idx;
                    const dalg::DMatrix prod = dalg::d_mat_mul(comp.d_rep[a], comp.d_rep[b]);
                    double err = 0.0;
                    for (size_t t = 0; t < prod.entries.size(); ++t) {
                        err = std::max(err, dalg::d_sub(prod.entries[t],
                                                        comp.d_rep[idx].entries[t]).norm());
                    }
                    CHECK(err < 1e-8);
                }
            }
        }
    }
}

TEST_CASE("charts intertwine the ambient action with the D-matrix action") {
    for (const char* name : {"c4.json", "s3_regular.json", "q8.json"}) {
        const FiniteMatrixGroup G = load_fixture(name);
        const Decomposition dec = repdec::decompose(G, 29);
        for (const IsotypicComponent& comp : dec.components) {
            for (int trial = 0; trial < 20; ++trial) {
                const Eigen::VectorXd x = random_unit(comp.dim_real, 1000 + trial);
                const Eigen::VectorXd w = comp.real_basis * x;
                for (size_t t = 0; t < G.elements.size(); ++t) {
                    const dalg::DMatrix lhs = repdec::to_matrix(comp, G.elements[t] * w);
                    const dalg::DMatrix rhs =
                        dalg::d_mat_mul(comp.d_rep[t], repdec::to_matrix(comp, w));
                    double err = 0.0;
                    for (size_t e = 0; e < lhs.entries.size(); ++e) {
                        err = std::max(err,
                                       dalg::d_sub(lhs.entries[e], rhs.entries[e]).norm());
                    }
                    CHECK(err < 1e-8);
                }
            }
        }
    }
}

TEST_CASE("the quaternion component of Q8 enumerates a copy of the unit quaternion group") {
    const FiniteMatrixGroup G = load_fixture("q8.json");
    const Decomposition dec = repdec::decompose(G, 31);
    REQUIRE(dec.components.size() == 1);
    const IsotypicComponent& comp = dec.components[0];
    REQUIRE(comp.n == 1);
    REQUIRE(comp.d_rep.size() == 8);

    // The chart is unique only up to a quaternion algebra automorphism, so
    // the image is {+-1, +-p, +-q, +-pq} for some orthonormal imaginary
    // frame rather than the literal standard basis.
    std::vector<dalg::DScalar> real_part, imaginary;
    for (const dalg::DMatrix& rho : comp.d_rep) {
        const dalg::DScalar q = rho.at(0, 0);
        CHECK(std::abs(q.norm() - 1.0) < 1e-10);
        (std::abs(q.re()) > 0.5 ? real_part : imaginary).push_back(q);
    }
    REQUIRE(real_part.size() == 2);
    REQUIRE(imaginary.size() == 6);
    CHECK(std::abs(std::abs(real_part[0].re()) - 1.0) < 1e-10);
    CHECK(std::abs(real_part[0].re() + real_part[1].re()) < 1e-10);
    for (size_t a = 0; a < imaginary.size(); ++a) {
        CHECK(std::abs(imaginary[a].re()) < 1e-10);
        for (size_t b = a + 1; b < imaginary.size(); ++b) {
            double dot = 0.0;
            for (int X = 1; X < 4; ++X) dot += imaginary[a].c[X] * imaginary[b].c[X];
            // Antipodal partner or an orthogonal imaginary direction.
            CHECK((std::abs(dot + 1.0) < 1e-10 || std::abs(dot) < 1e-10));
        }
    }
}

TEST_CASE("project and lift are inverse isometries on a component") {
    const FiniteMatrixGroup G = product_c4_q8();
    const Decomposition dec = repdec::decompose(G, 37);
    REQUIRE(dec.components.size() == 2);
    for (const IsotypicComponent& comp : dec.components) {
        Rng rng(99);
        dalg::DMatrix M(comp.fs_tag, comp.n, comp.m);
        for (auto& e : M.entries) {
            for (int X = 0; X < comp.fs_tag.dim(); ++X) e.c[X] = rng.normal();
        }
        const Eigen::VectorXd v = repdec::lift(comp, M);
        CHECK(std::abs(v.norm() - dalg::frobenius_norm(M)) < 1e-12);
        const dalg::DMatrix back = repdec::to_matrix(comp, v);
        for (size_t t = 0; t < M.entries.size(); ++t) {
            CHECK(dalg::d_sub(back.entries[t], M.entries[t]).norm() < 1e-12);
        }
    }
}

TEST_CASE("projections split norms by Pythagoras across components") {
    const FiniteMatrixGroup G = product_c4_q8();
    const Decomposition dec = repdec::decompose(G, 41);
    const Eigen::VectorXd a = dec.components[0].real_basis.col(0);
    const Eigen::VectorXd b = dec.components[1].real_basis.col(0);
    const Eigen::VectorXd v = 0.6 * a + 0.8 * b;
    CHECK(std::abs(repdec::project(dec.components[0], v).norm() - 0.6) < 1e-12);
    CHECK(std::abs(repdec::project(dec.components[1], v).norm() - 0.8) < 1e-12);
    CHECK(repdec::project(dec.components[0], b).norm() < 1e-12);
}

TEST_CASE("decomposing an invariant subspace reports only its summands") {
    const FiniteMatrixGroup G = load_fixture("s3_regular.json");
    const Decomposition full = repdec::decompose(G, 43);
    // Span of all nontrivial components: the regular representation with the
    // trivial line removed.
    Eigen::MatrixXd reduced(6, 5);
    reduced.leftCols(1) = full.components[0].real_basis;
    reduced.rightCols(4) = full.components[1].real_basis;
    const Decomposition dec = repdec::decompose(G, reduced, 47);
    CHECK(dec.space_dim == 5);
    CHECK(matches(dec, 0, {{'R', 1, 1}, {'R', 2, 2}}));
}

TEST_CASE("build_chart is self-contained on an isotypic span") {
    const FiniteMatrixGroup G = load_fixture("s3_regular.json");
    const Decomposition dec = repdec::decompose(G, 53);
    const IsotypicComponent& std_comp = dec.components[1];
    const IsotypicComponent rebuilt = repdec::build_chart(G, std_comp.real_basis, 59);
    CHECK(rebuilt.n == 2);
    CHECK(rebuilt.m == 2);
    CHECK(rebuilt.fs_tag == dalg::AlgebraTag::real());
    CHECK((rebuilt.projector() - std_comp.projector()).cwiseAbs().maxCoeff() < 1e-10);
}
