#include "orbitdesign/group.hpp"

#include <cmath>
#include <cstdint>
#include <unordered_map>

namespace orbitdesign::group {

namespace {

bool matrices_close(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b, double tol) {
    return (a - b).cwiseAbs().maxCoeff() <= tol;
}

// Entrywise quantization key for near-duplicate lookup. Cell size tol/dim
// keeps two copies of the same element (differing by roundoff far below tol)
// in one cell except when an entry straddles a cell boundary; the enumerator
// falls back to a linear scan before accepting a matrix as new.
struct QuantizedKey {
    std::vector<std::int64_t> cells;

    bool operator==(const QuantizedKey& other) const { return cells == other.cells; }
};

struct QuantizedKeyHash {
    size_t operator()(const QuantizedKey& key) const {
        std::uint64_t h = 1469598103934665603ull;
        for (std::int64_t c : key.cells) {
            h ^= static_cast<std::uint64_t>(c);
            h *= 1099511628211ull;
        }
        return static_cast<size_t>(h);
    }
};

QuantizedKey quantize(const Eigen::MatrixXd& m, double cell) {
    QuantizedKey key;
    key.cells.reserve(static_cast<size_t>(m.size()));
    for (int c = 0; c < m.cols(); ++c) {
        for (int r = 0; r < m.rows(); ++r) {
            key.cells.push_back(static_cast<std::int64_t>(std::llround(m(r, c) / cell)));
        }
    }
    return key;
}

}  // namespace

FiniteMatrixGroup enumerate_closure(const GeneratorSet& gens, int max_order) {
    if (gens.dim <= 0) {
        throw DimensionMismatch("enumerate_closure: dimension must be positive");
    }
    if (max_order < 1) {
        throw OrderCapExceeded("enumerate_closure: max_order must be at least 1");
    }
    const int n = gens.dim;
    const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(n, n);
    for (size_t t = 0; t < gens.generators.size(); ++t) {
        const Eigen::MatrixXd& g = gens.generators[t];
        if (g.rows() != n || g.cols() != n) {
            throw DimensionMismatch("generator " + std::to_string(t) +
                                    " is not " + std::to_string(n) + "x" + std::to_string(n));
        }
        if (!matrices_close(g.transpose() * g, id, gens.tol)) {
            throw NonOrthogonalGenerator("generator " + std::to_string(t) +
                                         " is not orthogonal within tol");
        }
    }

    FiniteMatrixGroup out;
    out.dim = n;
    out.tol = gens.tol;
    out.generators = gens.generators;

    const double cell = gens.tol / n;
    std::unordered_map<QuantizedKey, int, QuantizedKeyHash> seen;

    auto find_element = [&](const Eigen::MatrixXd& m) -> int {
        auto it = seen.find(quantize(m, cell));
        if (it != seen.end() && matrices_close(out.elements[it->second], m, gens.tol)) {
            return it->second;
        }
        // Either genuinely new or a duplicate whose quantized entries landed
        // in a neighboring cell; scan to make the call.
        for (size_t t = 0; t < out.elements.size(); ++t) {
            if (matrices_close(out.elements[t], m, gens.tol)) return static_cast<int>(t);
        }
        return -1;
    };

    auto insert_element = [&](const Eigen::MatrixXd& m) {
        seen.emplace(quantize(m, cell), static_cast<int>(out.elements.size()));
        out.elements.push_back(m);
    };

    insert_element(id);
    // BFS over right multiplication by generators; out.elements doubles as
    // the work queue.
    for (size_t head = 0; head < out.elements.size(); ++head) {
        for (const Eigen::MatrixXd& g : gens.generators) {
            const Eigen::MatrixXd product = out.elements[head] * g;
            if (find_element(product) >= 0) continue;
            if (out.order() >= max_order) {
                throw OrderCapExceeded("closure exceeds max_order = " + std::to_string(max_order));
            }
            insert_element(product);
        }
    }
    return out;
}

Eigen::VectorXd act(const Eigen::MatrixXd& g, const Eigen::VectorXd& v) {
    if (g.cols() != v.size()) {
        throw DimensionMismatch("act: matrix is " + std::to_string(g.rows()) + "x" +
                                std::to_string(g.cols()) + " but vector has length " +
                                std::to_string(v.size()));
    }
    return g * v;
}

std::vector<Eigen::VectorXd> orbit_points(const FiniteMatrixGroup& G, const Eigen::VectorXd& v,
                                          double tol) {
    if (G.dim != v.size()) {
        throw DimensionMismatch("orbit_points: vector length " + std::to_string(v.size()) +
                                " does not match group dimension " + std::to_string(G.dim));
    }
    std::vector<Eigen::VectorXd> points;
    points.reserve(G.elements.size());
    for (const Eigen::MatrixXd& g : G.elements) {
        const Eigen::VectorXd p = g * v;
        bool fresh = true;
        for (const Eigen::VectorXd& q : points) {
            if ((p - q).cwiseAbs().maxCoeff() <= tol) {
                fresh = false;
                break;
            }
        }
        if (fresh) points.push_back(p);
    }
    return points;
}

}  // namespace orbitdesign::group
