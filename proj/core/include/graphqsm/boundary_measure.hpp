#pragma once

#include "graphqsm/covering_tree.hpp"
#include "graphqsm/nonbacktracking.hpp"

namespace gqsm {

/**
 * Patterson-Sullivan cylinder measure built from the Perron data of the
 * Bass-Hashimoto operator: mu(C) = Z^-1 lambda^-(n-1) r(e_n) with n the
 * distance from the base point to the cylinder endpoint, e_n the last
 * directed edge (in the quotient graph) and Z the normalization over the
 * directed edges leaving the base position. Additive under refinement
 * because T r = lambda r telescopes.
 */
class PSMeasure {
public:
    PSMeasure(const CoveringTree& tree, PerronData perron, TreeVertex base = {});

    const CoveringTree& tree() const { return *tree_; }
    const TreeVertex& base() const { return base_; }
    const PerronData& perron() const { return perron_; }
    double lambda() const { return perron_.lambda; }
    double delta() const { return perron_.delta; }
    double normalization() const { return z_; }

    /// Measure of a cylinder; throws InsufficientDepth when the cylinder
    /// does not lie past the base point (its prefix must leave the base
    /// position before its end).
    double cylinder_measure(const Cylinder& c) const;

    /// Measure of the deck image w . c, summed over the exact piece
    /// decomposition.
    double image_measure(const GroupWord& w, const Cylinder& c) const;

private:
    const CoveringTree* tree_;
    TreeVertex base_;
    PerronData perron_;
    double z_ = 0.0;
};

/// Convenience: measure rooted at the canonical base point x0.
PSMeasure patterson_sullivan(const CoveringTree& tree);

/// |mu(wC) - lambda^B mu(C)| with B = B(base, w^-1 base, C); exact zero in
/// exact arithmetic, small float residual here. Propagates InsufficientDepth
/// from the Busemann evaluation.
double conformality_residual(const PSMeasure& m, const GroupWord& w, const Cylinder& c);

/// Base-point comparison: max over depth-`depth` cylinders of
/// |mu_x0p(C) - lambda^-B(x0p,x0,C) mu_x0(C) (Z0/Zp)|. The sign and the
/// normalization ratio are the convention derived once from the cylinder
/// formula (see implementation) and frozen.
double basepoint_rn_check(const CoveringTree& tree, const TreeVertex& x0p, int depth);

} // namespace gqsm
