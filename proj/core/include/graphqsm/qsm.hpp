#pragma once

#include <complex>
#include <map>
#include <random>

#include "graphqsm/boundary_measure.hpp"
#include "graphqsm/covering_tree.hpp"

namespace gqsm {

/// Element of the algebraic crossed product at a fixed cylinder resolution:
/// a finite sum of terms f_w mu_w whose coefficient functions are locally
/// constant on the depth-k cylinder partition (values indexed in the
/// partition's lexicographic order). Immutable; built via QsmSystem.
class CrossedProductElement {
public:
    using Coefficients = std::vector<std::complex<double>>;

    int depth() const { return depth_; }
    bool dagger() const { return dagger_; }
    const std::map<GroupWord, Coefficients>& terms() const { return terms_; }

private:
    friend class QsmSystem;
    int depth_ = 1;
    bool dagger_ = false;
    std::map<GroupWord, Coefficients> terms_;
};

/// Real time t and inverse-temperature (imaginary time) b: the term of
/// word w is scaled on cylinder C by exp(i t B) * lambda^(-(b/delta) B)
/// with B = B(x0, w^-1 x0, C) an exact integer.
struct TimeParameter {
    double t = 0.0;
    double b = 0.0;
};

/**
 * The quantum statistical mechanical model bound to a covering tree and a
 * Patterson-Sullivan measure: crossed product arithmetic, the Busemann
 * time evolution, and the KMS functional tau(sum f_w mu_w) = int f_1 dmu.
 */
class QsmSystem {
public:
    QsmSystem(const CoveringTree& tree, const PSMeasure& mu, int max_depth = 18,
              int max_word_letters = 4);

    const CoveringTree& tree() const { return *tree_; }
    const PSMeasure& measure() const { return *mu_; }
    double delta() const { return mu_->delta(); }

    /// Smallest resolution depth valid for a support word.
    int required_depth(const GroupWord& w) const;

    /// Validating constructor: words reduced, depth exceeds every support
    /// word's realization length, coefficient vectors match the partition.
    CrossedProductElement element(int depth, std::map<GroupWord, CrossedProductElement::Coefficients> terms,
                                  bool dagger = false) const;
    CrossedProductElement unit(int depth) const;
    /// coeff * mu_w (constant coefficient function).
    CrossedProductElement monomial(const GroupWord& w, std::complex<double> coeff,
                                   int depth = 0) const;
    /// Indicator of a cylinder times mu_w.
    CrossedProductElement indicator(const Cylinder& c, const GroupWord& w, int depth = 0) const;

    CrossedProductElement refine(const CrossedProductElement& a, int new_depth) const;

    /// (f mu_a)(g mu_b) = f (g o a^-1) mu_ab, extended bilinearly; the
    /// result lives at the common refinement depth that keeps every
    /// pullback locally constant.
    CrossedProductElement multiply(const CrossedProductElement& a,
                                   const CrossedProductElement& b) const;

    CrossedProductElement time_evolve(const CrossedProductElement& a, TimeParameter p) const;

    /// tau = integral of the identity-word coefficient.
    std::complex<double> kms_state(const CrossedProductElement& a) const;

    /// |tau(a b) - tau(b sigma_{i beta}(a))|.
    double kms_residual(const CrossedProductElement& a, const CrossedProductElement& b,
                        double beta) const;

    /// Seeded random element: identity plus two random words of length
    /// <= max_letters, coefficients in the unit disc, depth = max needed + 1.
    CrossedProductElement random_element(std::mt19937& rng, int max_letters = 2,
                                         bool dagger = false) const;

    std::string to_json(const CrossedProductElement& a) const;
    CrossedProductElement from_json(const std::string& text) const;

private:
    const CoveringTree* tree_;
    const PSMeasure* mu_;
    int max_depth_;
    int max_word_letters_;

    double evolution_factor_real_exponent(double b, int busemann_value) const;
};

} // namespace gqsm
