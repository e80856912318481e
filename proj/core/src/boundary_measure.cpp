#include "graphqsm/boundary_measure.hpp"

#include <cmath>

namespace gqsm {

namespace {

int common_prefix(const std::vector<int>& a, const std::vector<int>& b) {
    size_t n = std::min(a.size(), b.size());
    size_t i = 0;
    while (i < n && a[i] == b[i]) ++i;
    return static_cast<int>(i);
}

// lambda^k for integer k by repeated multiplication; exact when the result
// is exactly representable, deterministic always.
double int_pow(double lambda, int k) {
    double r = 1.0;
    for (int i = 0; i < std::abs(k); ++i) r *= lambda;
    return k >= 0 ? r : 1.0 / r;
}

} // namespace

PSMeasure::PSMeasure(const CoveringTree& tree, PerronData perron, TreeVertex base)
    : tree_(&tree), base_(std::move(base)), perron_(std::move(perron)) {
    if (static_cast<int>(perron_.right_eigenvector.size()) != tree.directed().count())
        throw std::invalid_argument("PSMeasure: eigenvector size mismatch");
    int pos = tree.endpoint(base_.path);
    z_ = 0.0;
    for (int d = 0; d < tree.directed().count(); ++d)
        if (tree.directed().origin(d) == pos) z_ += perron_.right_eigenvector[d];
}

PSMeasure patterson_sullivan(const CoveringTree& tree) {
    return PSMeasure(tree, perron_root(bass_hashimoto(tree.graph())));
}

double PSMeasure::cylinder_measure(const Cylinder& c) const {
    if (c.path.empty()) throw std::invalid_argument("cylinder measure needs depth >= 1");
    int l = common_prefix(base_.path, c.path);
    if (l == c.depth())
        throw InsufficientDepth("cylinder does not extend past the measure base point");
    int n = base_.depth() + c.depth() - 2 * l; // distance from base to the endpoint
    return int_pow(perron_.lambda, -(n - 1)) * perron_.right_eigenvector[c.path.back()] / z_;
}

double PSMeasure::image_measure(const GroupWord& w, const Cylinder& c) const {
    double total = 0.0;
    for (const Cylinder& piece : tree_->image_pieces(w, c)) total += cylinder_measure(piece);
    return total;
}

double conformality_residual(const PSMeasure& m, const GroupWord& w, const Cylinder& c) {
    const CoveringTree& tree = m.tree();
    TreeVertex pulled = tree.deck_apply(inverse_word(w), m.base());
    int b = tree.busemann(m.base(), pulled, c);
    double lhs = m.image_measure(w, c);
    double rhs = int_pow(m.lambda(), b) * m.cylinder_measure(c);
    return std::abs(lhs - rhs);
}

double basepoint_rn_check(const CoveringTree& tree, const TreeVertex& x0p, int depth) {
    if (depth <= x0p.depth())
        throw InsufficientDepth("basepoint_rn_check: depth must exceed d(x0, x0p)");
    PerronData perron = perron_root(bass_hashimoto(tree.graph()));
    PSMeasure m0(tree, perron);
    PSMeasure mp(tree, perron, x0p);
    // Derivation from the cylinder formula: with n_p = d(x0p, end) and
    // n_0 = d(x0, end), B(x0p, x0, xi_C) = n_p - n_0, so
    // mu_p(C) = lambda^-B mu_0(C) * (Z_0 / Z_p). Sign s = -1, frozen.
    double ratio = m0.normalization() / mp.normalization();
    double worst = 0.0;
    for (const auto& path : tree.cylinders_at_depth(depth)) {
        Cylinder c{path};
        int b = tree.busemann(x0p, TreeVertex{}, c);
        double expected = int_pow(perron.lambda, -b) * m0.cylinder_measure(c) * ratio;
        worst = std::max(worst, std::abs(mp.cylinder_measure(c) - expected));
    }
    return worst;
}

} // namespace gqsm
