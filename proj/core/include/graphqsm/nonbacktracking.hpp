#pragma once

#include <vector>

#include "graphqsm/ktheory.hpp"
#include "graphqsm/multigraph.hpp"

namespace gqsm {

/**
 * The 2|E| directed edges of a multigraph: undirected edge e yields ids
 * 2e (file orientation ends[0] -> ends[1]) and 2e+1 (its reversal).
 * A loop still yields two distinct directed edges.
 */
class DirectedEdges {
public:
    explicit DirectedEdges(const Multigraph& g) : g_(&g) {}

    int count() const { return 2 * g_->edge_count(); }
    int edge_of(int d) const { return d >> 1; }
    bool is_reversed(int d) const { return d & 1; }
    int reversal(int d) const { return d ^ 1; }
    int origin(int d) const {
        const Edge& e = g_->edge(d >> 1);
        return (d & 1) ? e.v : e.u;
    }
    int terminus(int d) const {
        const Edge& e = g_->edge(d >> 1);
        return (d & 1) ? e.u : e.v;
    }
    const Multigraph& graph() const { return *g_; }

private:
    const Multigraph* g_;
};

/// Bass-Hashimoto edge operator: T(e,f) = 1 iff terminus(e) = origin(f)
/// and f != reversal(e). Requires an admissible graph.
IntMatrix bass_hashimoto(const Multigraph& g);

struct PerronData {
    double lambda = 0.0;
    std::vector<double> right_eigenvector; // positive, unit sum
    double delta = 0.0;                    // ln(lambda)
    double residual = 0.0;                 // max-norm of T r - lambda r
};

/// Perron root and eigenvector of a Bass-Hashimoto matrix via shifted
/// power iteration (T + I, all-ones start, deterministic); the shift
/// removes the period-2 oscillation of bipartite graphs without changing
/// eigenvectors. Relative residual tolerance 1e-14 on T itself.
PerronData perron_root(const IntMatrix& t);

/// Integer polynomial, coefficients lowest degree first, no trailing zeros.
struct IntPoly {
    std::vector<BigInt> coeffs;

    int degree() const { return static_cast<int>(coeffs.size()) - 1; }
    const BigInt& at(int k) const;
    void trim();
    bool operator==(const IntPoly&) const = default;

    static IntPoly constant(BigInt c);
    IntPoly operator+(const IntPoly&) const;
    IntPoly operator-(const IntPoly&) const;
    IntPoly operator*(const IntPoly&) const;
    /// Exact quotient; throws std::logic_error when the division leaves a
    /// remainder (never happens inside fraction-free elimination).
    IntPoly exact_div(const IntPoly& divisor) const;
    double eval(double u) const;
    std::string to_string() const;
};

/// Exact determinant of a square polynomial matrix (row-major entries),
/// fraction-free Bareiss elimination over Z[u].
IntPoly poly_matrix_determinant(std::vector<IntPoly> entries, int n);

/// Reciprocal of the Ihara zeta function as det(I - uT), exact integer
/// coefficients, cross-checked coefficient-wise against the three-term
/// determinant form (1-u^2)^(|E|-|V|) det(I - uA + u^2(D-I)) with loops
/// counting 2 in both A and D. A mismatch throws std::logic_error.
IntPoly ihara_zeta_recip(const Multigraph& g);

} // namespace gqsm
