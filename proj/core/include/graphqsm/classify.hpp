#pragma once

#include <map>
#include <string>
#include <vector>

#include "graphqsm/covering_tree.hpp"
#include "graphqsm/ktheory.hpp"
#include "graphqsm/nonbacktracking.hpp"
#include "graphqsm/qsm.hpp"

namespace gqsm {

/// Aggregated invariant fingerprint of an admissible graph; every field is
/// reproducible bit-for-bit from the graph file and L.
struct Fingerprint {
    int g = 0;
    BoundaryK0 k0;
    long long gcd_invariant = 0;             // gcd(|E|, g-1)
    IntPoly zeta;                            // det(I - uT)
    double lambda = 0.0;                     // Perron root (derived from zeta)
    std::map<int, long long> length_spectrum; // translation length -> word count, |w| <= L

    /// Exact-field comparison (lambda is derived from zeta and excluded).
    bool equal_invariants(const Fingerprint& o) const {
        return g == o.g && k0 == o.k0 && gcd_invariant == o.gcd_invariant && zeta == o.zeta &&
               length_spectrum == o.length_spectrum;
    }
};

Fingerprint fingerprint(const Multigraph& g, int spectrum_length = 5);

/// Generator bijection with signs: generator i of X maps to
/// sign[i] * target[i] of Y (1-based targets).
struct GeneratorPairing {
    std::vector<int> target;
    std::vector<int> sign;
    static GeneratorPairing identity(int g);
};

struct EquivarianceReport {
    long long cylinders_checked = 0;
    long long violations = 0;
    std::vector<std::string> violation_examples;
    bool clean() const { return violations == 0; }
};

/**
 * Cylinder-level model of the boundary homeomorphism Phi between the
 * boundaries of two equal-Betti graphs: a cylinder's Cayley coding is
 * relabelled through the generator pairing and realized as the shortest
 * target prefix carrying that coding.
 */
class BoundaryConjugacy {
public:
    BoundaryConjugacy(const CoveringTree& x, const CoveringTree& y, GeneratorPairing pairing);

    const CoveringTree& source() const { return *x_; }
    const CoveringTree& target() const { return *y_; }
    const GeneratorPairing& pairing() const { return pairing_; }

    std::vector<int> relabel(const std::vector<int>& letters) const;
    std::vector<int> relabel_inverse(const std::vector<int>& letters) const;
    GroupWord map_word(const GroupWord& w) const;

    /// Image of an X-cylinder as a single Y-cylinder.
    Cylinder map_cylinder(const Cylinder& c) const;
    Cylinder inverse_map_cylinder(const Cylinder& c) const;

    /// Checks Phi(gamma_i . C) == gamma_sigma(i) . Phi(C) as sets of
    /// target cylinders, over all source cylinders of depth <= max_depth
    /// and all signed generators.
    EquivarianceReport equivariance_report(int max_depth) const;

private:
    const CoveringTree* x_;
    const CoveringTree* y_;
    GeneratorPairing pairing_;
    std::vector<int> inverse_target_; // target generator -> source generator
};

/// Throws std::invalid_argument when the Betti numbers differ (no conjugacy
/// exists by the rank obstruction).
BoundaryConjugacy build_conjugacy(const CoveringTree& x, const CoveringTree& y,
                                  const GeneratorPairing& pairing);

/// Transports an element through the conjugacy: words are relabelled and
/// coefficient functions pulled through Phi^-1 at cylinder level.
CrossedProductElement algebra_transport(const BoundaryConjugacy& phi, const QsmSystem& source,
                                        const QsmSystem& target, const CrossedProductElement& a);

struct SurveyRow {
    std::string graph_a, graph_b;
    bool g_equal = false;
    bool k0_equal = false;
    bool gcd_equal = false;
    bool zeta_equal = false;
    bool spectrum_equal = false;
    bool fingerprint_equal = false;
    bool isomorphic = false;
};

struct SurveyReport {
    std::vector<std::string> names;
    std::vector<Multigraph> graphs;
    std::vector<int> betti_numbers;
    std::vector<SurveyRow> rows;
    int theorem1_class_count = 0;        // = number of distinct Betti numbers
    bool fingerprints_separate = true;   // within each class, non-isomorphic pairs differ
    std::vector<std::pair<std::string, std::string>> collisions;
};

/// Pairwise Theorem-1 vs fingerprint vs isomorphism comparison over the
/// enumerated corpus.
SurveyReport survey(int max_vertices, int max_edges, int spectrum_length);

} // namespace gqsm
