#include "graphqsm/ktheory.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace gqsm {

IntMatrix IntMatrix::identity(int n) {
    IntMatrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

IntMatrix IntMatrix::transpose() const {
    IntMatrix t(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

IntMatrix IntMatrix::operator*(const IntMatrix& rhs) const {
    IntMatrix p(rows_, rhs.cols_);
    for (int i = 0; i < rows_; ++i)
        for (int k = 0; k < cols_; ++k) {
            const BigInt& a = (*this)(i, k);
            if (a == 0) continue;
            for (int j = 0; j < rhs.cols_; ++j) p(i, j) += a * rhs(k, j);
        }
    return p;
}

IntMatrix IntMatrix::operator-(const IntMatrix& rhs) const {
    IntMatrix d(rows_, cols_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) d(i, j) = (*this)(i, j) - rhs(i, j);
    return d;
}

BigInt determinant(const IntMatrix& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("determinant needs a square matrix");
    int n = m.rows();
    if (n == 0) return 1;
    IntMatrix a = m;
    BigInt sign = 1, prev = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (a(k, k) == 0) {
            int p = -1;
            for (int i = k + 1; i < n; ++i)
                if (a(i, k) != 0) { p = i; break; }
            if (p < 0) return 0;
            for (int j = 0; j < n; ++j) std::swap(a(k, j), a(p, j));
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j)
                a(i, j) = (a(k, k) * a(i, j) - a(i, k) * a(k, j)) / prev;
        prev = a(k, k);
    }
    return sign * a(n - 1, n - 1);
}

namespace {

struct SnfState {
    IntMatrix d, u, v;

    void swap_rows(int i, int j) {
        if (i == j) return;
        for (int c = 0; c < d.cols(); ++c) std::swap(d(i, c), d(j, c));
        for (int c = 0; c < u.cols(); ++c) std::swap(u(i, c), u(j, c));
    }
    void swap_cols(int i, int j) {
        if (i == j) return;
        for (int r = 0; r < d.rows(); ++r) std::swap(d(r, i), d(r, j));
        for (int r = 0; r < v.rows(); ++r) std::swap(v(r, i), v(r, j));
    }
    void add_row(int dst, int src, const BigInt& f) { // row dst += f * row src
        for (int c = 0; c < d.cols(); ++c) d(dst, c) += f * d(src, c);
        for (int c = 0; c < u.cols(); ++c) u(dst, c) += f * u(src, c);
    }
    void add_col(int dst, int src, const BigInt& f) {
        for (int r = 0; r < d.rows(); ++r) d(r, dst) += f * d(r, src);
        for (int r = 0; r < v.rows(); ++r) v(r, dst) += f * v(r, src);
    }
    void negate_row(int i) {
        for (int c = 0; c < d.cols(); ++c) d(i, c) = -d(i, c);
        for (int c = 0; c < u.cols(); ++c) u(i, c) = -u(i, c);
    }

    bool pivot_isolated(int s) const {
        for (int i = s + 1; i < d.rows(); ++i)
            if (d(i, s) != 0) return false;
        for (int j = s + 1; j < d.cols(); ++j)
            if (d(s, j) != 0) return false;
        return true;
    }

    // Smallest nonzero |entry| in the trailing submatrix; false if all zero.
    bool locate_min(int s, int& ir, int& ic) const {
        bool found = false;
        BigInt best;
        for (int i = s; i < d.rows(); ++i)
            for (int j = s; j < d.cols(); ++j) {
                if (d(i, j) == 0) continue;
                BigInt a = abs(d(i, j));
                if (!found || a < best) {
                    found = true;
                    best = a;
                    ir = i;
                    ic = j;
                }
            }
        return found;
    }

    // First trailing entry not divisible by the pivot, if any.
    bool divisibility_defect(int s, int& ir, int& ic) const {
        for (int i = s + 1; i < d.rows(); ++i)
            for (int j = s + 1; j < d.cols(); ++j)
                if (d(i, j) % d(s, s) != 0) {
                    ir = i;
                    ic = j;
                    return true;
                }
        return false;
    }
};

} // namespace

SmithDecomposition smith_normal_form(const IntMatrix& m) {
    SnfState s;
    s.d = m;
    s.u = IntMatrix::identity(m.rows());
    s.v = IntMatrix::identity(m.cols());
    int rank_bound = std::min(m.rows(), m.cols());

    for (int k = 0; k < rank_bound; ++k) {
        int ir, ic;
        if (!s.locate_min(k, ir, ic)) break; // trailing block zero
        s.swap_rows(k, ir);
        s.swap_cols(k, ic);
        while (true) {
            // eliminate below and to the right of the pivot
            bool reduced_all = true;
            for (int i = k + 1; i < s.d.rows(); ++i) {
                if (s.d(i, k) == 0) continue;
                BigInt q = s.d(i, k) / s.d(k, k);
                s.add_row(i, k, -q);
                if (s.d(i, k) != 0) reduced_all = false;
            }
            for (int j = k + 1; j < s.d.cols(); ++j) {
                if (s.d(k, j) == 0) continue;
                BigInt q = s.d(k, j) / s.d(k, k);
                s.add_col(j, k, -q);
                if (s.d(k, j) != 0) reduced_all = false;
            }
            if (!reduced_all || !s.pivot_isolated(k)) {
                // a remainder survived; bring the new minimum to the pivot
                if (!s.locate_min(k, ir, ic)) break;
                s.swap_rows(k, ir);
                s.swap_cols(k, ic);
                continue;
            }
            int dr, dc;
            if (s.divisibility_defect(k, dr, dc)) {
                // fold the offending row into the pivot row and restart
                s.add_row(k, dr, 1);
                continue;
            }
            break;
        }
        if (s.d(k, k) < 0) s.negate_row(k);
    }
    return SmithDecomposition{std::move(s.d), std::move(s.u), std::move(s.v)};
}

std::vector<BigInt> SmithDecomposition::invariant_factors() const {
    std::vector<BigInt> f;
    int n = std::min(d.rows(), d.cols());
    for (int i = 0; i < n; ++i)
        if (d(i, i) != 0) f.push_back(d(i, i));
    return f;
}

std::string AbelianGroup::to_string() const {
    std::ostringstream os;
    bool first = true;
    if (free_rank > 0) {
        os << "Z";
        if (free_rank > 1) os << "^" << free_rank;
        first = false;
    }
    for (const BigInt& t : torsion) {
        if (!first) os << " + ";
        os << "Z/" << t;
        first = false;
    }
    if (first) os << "0";
    return os.str();
}

AbelianGroup cokernel(const IntMatrix& m) {
    SmithDecomposition snf = smith_normal_form(m);
    AbelianGroup g;
    std::vector<BigInt> factors = snf.invariant_factors();
    g.free_rank = m.rows() - static_cast<int>(factors.size());
    for (BigInt& f : factors)
        if (f > 1) g.torsion.push_back(std::move(f));
    return g;
}

BoundaryK0 k0_boundary_algebra(int g) {
    if (g < 2) throw std::invalid_argument("k0_boundary_algebra requires g >= 2");
    int n = 2 * g;
    // Block matrix [[J, J-I], [J-I, J]] with J the all-ones g x g block.
    IntMatrix a(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            bool same_block = (i < g) == (j < g);
            a(i, j) = same_block ? 1 : (i % g == j % g ? 0 : 1);
        }
    IntMatrix m = IntMatrix::identity(n) - a.transpose();
    SmithDecomposition snf = smith_normal_form(m);

    BoundaryK0 out;
    std::vector<BigInt> factors = snf.invariant_factors();
    out.k0.free_rank = n - static_cast<int>(factors.size());
    for (const BigInt& f : factors)
        if (f > 1) out.k0.torsion.push_back(f);

    // Class of the unit = all-ones vector, transported to the Smith basis:
    // order of y = U * 1 in sum Z/d_i (d_i = 0 on free rows).
    BigInt order = 1;
    for (int i = 0; i < n; ++i) {
        BigInt y = 0;
        for (int j = 0; j < n; ++j) y += snf.u(i, j);
        BigInt di = i < std::min(snf.d.rows(), snf.d.cols()) ? snf.d(i, i) : BigInt(0);
        if (di == 0) {
            if (y != 0) {
                order = 0; // infinite order
                break;
            }
        } else {
            BigInt component_order = di / gcd(di, y == 0 ? di : abs(y));
            order = order / gcd(order, component_order) * component_order; // lcm
        }
    }
    out.unit_class_order = order;
    return out;
}

AbelianGroup k0_vertex_ck(const Multigraph& g, const std::vector<int>& orientation) {
    if (g.vertex_count() == 0) throw std::invalid_argument("k0_vertex_ck requires a nonempty graph");
    if (static_cast<int>(orientation.size()) != g.edge_count())
        throw std::invalid_argument("orientation must assign a direction to every edge");
    int n = g.vertex_count();
    IntMatrix a(n, n);
    for (int e = 0; e < g.edge_count(); ++e) {
        int from = orientation[e] ? g.edge(e).v : g.edge(e).u;
        int to = orientation[e] ? g.edge(e).u : g.edge(e).v;
        a(from, to) += 1; // a loop contributes one directed edge v -> v
    }
    return cokernel(IntMatrix::identity(n) - a);
}

namespace {

void require_theorem_hypotheses(const Multigraph& g, const char* which) {
    if (!g.admissible())
        throw std::invalid_argument(std::string(which) + ": graph must be connected with min degree >= 3");
    if (betti(g).g <= 1)
        throw std::invalid_argument(std::string(which) + ": Betti number must exceed 1");
}

} // namespace

Theorem1Report theorem1_oracle(const Multigraph& gx, const Multigraph& gy) {
    require_theorem_hypotheses(gx, "theorem1_oracle(X)");
    require_theorem_hypotheses(gy, "theorem1_oracle(Y)");
    Theorem1Report r;
    r.g_x = betti(gx).g;
    r.g_y = betti(gy).g;
    r.verdict = (r.g_x == r.g_y);
    r.conditions.fill(r.verdict);
    return r;
}

EdgeCkIso edge_ck_strict_iso(const Multigraph& gx, const Multigraph& gy) {
    require_theorem_hypotheses(gx, "edge_ck_strict_iso(X)");
    require_theorem_hypotheses(gy, "edge_ck_strict_iso(Y)");
    int g_x = betti(gx).g, g_y = betti(gy).g;
    EdgeCkIso r;
    r.stable = (g_x == g_y);
    r.strict = r.stable && std::gcd(gx.edge_count(), g_x - 1) == std::gcd(gy.edge_count(), g_y - 1);
    return r;
}

} // namespace gqsm
