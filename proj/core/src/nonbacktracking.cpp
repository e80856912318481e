#include "graphqsm/nonbacktracking.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace gqsm {

IntMatrix bass_hashimoto(const Multigraph& g) {
    if (!g.admissible()) throw std::invalid_argument("bass_hashimoto requires an admissible graph");
    DirectedEdges de(g);
    int n = de.count();
    IntMatrix t(n, n);
    for (int e = 0; e < n; ++e)
        for (int f = 0; f < n; ++f)
            if (de.terminus(e) == de.origin(f) && f != de.reversal(e)) t(e, f) = 1;
    return t;
}

PerronData perron_root(const IntMatrix& t) {
    if (t.rows() != t.cols() || t.rows() == 0)
        throw std::invalid_argument("perron_root needs a nonempty square matrix");
    int n = t.rows();
    std::vector<double> td(static_cast<size_t>(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) td[i * n + j] = static_cast<double>(t(i, j));

    std::vector<double> v(n, 1.0 / n), w(n);
    const double tol = 1e-14;
    const int max_iter = 200000;
    double lambda = 0.0, residual = 0.0;
    bool converged = false;
    for (int it = 0; it < max_iter; ++it) {
        // w = T v
        for (int i = 0; i < n; ++i) {
            double s = 0.0;
            const double* row = &td[i * n];
            for (int j = 0; j < n; ++j) s += row[j] * v[j];
            w[i] = s;
        }
        double sw = 0.0, sv = 0.0;
        for (int i = 0; i < n; ++i) {
            sw += w[i];
            sv += v[i];
        }
        lambda = sw / sv;
        residual = 0.0;
        for (int i = 0; i < n; ++i) residual = std::max(residual, std::abs(w[i] - lambda * v[i]));
        if (residual <= tol * lambda) {
            converged = true;
            break;
        }
        // shifted step: v <- normalize(w + v)
        double total = sw + sv;
        for (int i = 0; i < n; ++i) v[i] = (w[i] + v[i]) / total;
    }
    if (!converged)
        throw std::runtime_error("perron_root did not converge (matrix not irreducible?)");

    double sum = 0.0;
    for (double x : v) {
        if (x <= 0.0) throw std::runtime_error("perron_root produced a non-positive eigenvector entry");
        sum += x;
    }
    PerronData out;
    out.lambda = lambda;
    out.right_eigenvector.resize(n);
    for (int i = 0; i < n; ++i) out.right_eigenvector[i] = v[i] / sum;
    out.delta = std::log(lambda);
    out.residual = residual;
    return out;
}

const BigInt& IntPoly::at(int k) const {
    static const BigInt zero = 0;
    if (k < 0 || k >= static_cast<int>(coeffs.size())) return zero;
    return coeffs[k];
}

void IntPoly::trim() {
    while (!coeffs.empty() && coeffs.back() == 0) coeffs.pop_back();
}

IntPoly IntPoly::constant(BigInt c) {
    IntPoly p;
    if (c != 0) p.coeffs.push_back(std::move(c));
    return p;
}

IntPoly IntPoly::operator+(const IntPoly& rhs) const {
    IntPoly r;
    r.coeffs.resize(std::max(coeffs.size(), rhs.coeffs.size()));
    for (size_t i = 0; i < r.coeffs.size(); ++i) r.coeffs[i] = at(i) + rhs.at(i);
    r.trim();
    return r;
}

IntPoly IntPoly::operator-(const IntPoly& rhs) const {
    IntPoly r;
    r.coeffs.resize(std::max(coeffs.size(), rhs.coeffs.size()));
    for (size_t i = 0; i < r.coeffs.size(); ++i) r.coeffs[i] = at(i) - rhs.at(i);
    r.trim();
    return r;
}

IntPoly IntPoly::operator*(const IntPoly& rhs) const {
    IntPoly r;
    if (coeffs.empty() || rhs.coeffs.empty()) return r;
    r.coeffs.assign(coeffs.size() + rhs.coeffs.size() - 1, 0);
    for (size_t i = 0; i < coeffs.size(); ++i) {
        if (coeffs[i] == 0) continue;
        for (size_t j = 0; j < rhs.coeffs.size(); ++j)
            r.coeffs[i + j] += coeffs[i] * rhs.coeffs[j];
    }
    r.trim();
    return r;
}

IntPoly IntPoly::exact_div(const IntPoly& divisor) const {
    if (divisor.coeffs.empty()) throw std::logic_error("polynomial division by zero");
    IntPoly rem = *this;
    rem.trim();
    if (rem.coeffs.empty()) return rem;
    if (rem.degree() < divisor.degree()) throw std::logic_error("inexact polynomial division");
    IntPoly q;
    q.coeffs.assign(rem.degree() - divisor.degree() + 1, 0);
    const BigInt& lead = divisor.coeffs.back();
    for (int k = rem.degree() - divisor.degree(); k >= 0; --k) {
        BigInt top = rem.at(k + divisor.degree());
        if (top == 0) continue;
        if (top % lead != 0) throw std::logic_error("inexact polynomial division");
        BigInt c = top / lead;
        q.coeffs[k] = c;
        for (int j = 0; j <= divisor.degree(); ++j) {
            int idx = k + j;
            rem.coeffs.resize(std::max<size_t>(rem.coeffs.size(), idx + 1));
            rem.coeffs[idx] -= c * divisor.coeffs[j];
        }
    }
    rem.trim();
    if (!rem.coeffs.empty()) throw std::logic_error("inexact polynomial division");
    q.trim();
    return q;
}

double IntPoly::eval(double u) const {
    double r = 0.0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it)
        r = r * u + static_cast<double>(*it);
    return r;
}

std::string IntPoly::to_string() const {
    std::ostringstream os;
    os << "[";
    for (size_t i = 0; i < coeffs.size(); ++i) {
        if (i) os << ", ";
        os << coeffs[i];
    }
    os << "]";
    return os.str();
}

IntPoly poly_matrix_determinant(std::vector<IntPoly> a, int n) {
    if (static_cast<int>(a.size()) != n * n)
        throw std::invalid_argument("poly_matrix_determinant: entry count mismatch");
    if (n == 0) return IntPoly::constant(1);
    auto at = [&](int i, int j) -> IntPoly& { return a[i * n + j]; };
    bool negate = false;
    IntPoly prev = IntPoly::constant(1);
    for (int k = 0; k < n - 1; ++k) {
        if (at(k, k).coeffs.empty()) {
            int p = -1;
            for (int i = k + 1; i < n; ++i)
                if (!at(i, k).coeffs.empty()) { p = i; break; }
            if (p < 0) return IntPoly{}; // zero column: singular
            for (int j = 0; j < n; ++j) std::swap(at(k, j), at(p, j));
            negate = !negate;
        }
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j)
                at(i, j) = (at(k, k) * at(i, j) - at(i, k) * at(k, j)).exact_div(prev);
        prev = at(k, k);
    }
    IntPoly det = at(n - 1, n - 1);
    if (negate) det = IntPoly{} - det;
    return det;
}

IntPoly ihara_zeta_recip(const Multigraph& g) {
    if (!g.admissible()) throw std::invalid_argument("ihara_zeta_recip requires an admissible graph");
    DirectedEdges de(g);
    int n = de.count();

    // det(I - uT)
    IntPoly u;
    u.coeffs = {0, 1};
    std::vector<IntPoly> pent(static_cast<size_t>(n) * n);
    IntMatrix t = bass_hashimoto(g);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            IntPoly p;
            if (i == j) p = IntPoly::constant(1);
            if (t(i, j) != 0) p = p - u;
            pent[i * n + j] = p;
        }
    IntPoly lhs = poly_matrix_determinant(std::move(pent), n);

    // (1 - u^2)^(|E|-|V|) * det(I - uA + u^2 (D - I)), loops counting 2.
    int nv = g.vertex_count();
    std::vector<IntPoly> vent(static_cast<size_t>(nv) * nv);
    for (int i = 0; i < nv; ++i)
        for (int j = 0; j < nv; ++j) {
            BigInt adj = 0;
            for (const Edge& e : g.edges()) {
                if (e.u == i && e.v == j) adj += (i == j) ? 2 : 1;
                else if (e.u == j && e.v == i && i != j) adj += 1;
            }
            IntPoly p;
            if (i == j) {
                p.coeffs = {1, -adj, BigInt(g.degree(i)) - 1};
            } else {
                p.coeffs = {0, -adj};
            }
            p.trim();
            vent[i * nv + j] = p;
        }
    IntPoly rhs = poly_matrix_determinant(std::move(vent), nv);
    IntPoly one_minus_u2;
    one_minus_u2.coeffs = {1, 0, -1};
    for (int k = 0; k < g.edge_count() - nv; ++k) rhs = rhs * one_minus_u2;

    if (!(lhs == rhs))
        throw std::logic_error("ihara zeta cross-check failed: det(I-uT) != three-term form");
    return lhs;
}

} // namespace gqsm
