#include "graphqsm/classify.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

#include "graphqsm/boundary_measure.hpp"

namespace gqsm {

Fingerprint fingerprint(const Multigraph& g, int spectrum_length) {
    if (!g.admissible()) throw std::invalid_argument("fingerprint requires an admissible graph");
    int betti_g = betti(g).g;
    if (betti_g <= 1) throw std::invalid_argument("fingerprint requires Betti number > 1");
    if (spectrum_length < 0 || spectrum_length > 6)
        throw BoundExceeded("fingerprint spectrum length must be <= 6");

    Fingerprint f;
    f.g = betti_g;
    f.k0 = k0_boundary_algebra(betti_g);
    f.gcd_invariant = std::gcd(g.edge_count(), betti_g - 1);
    f.zeta = ihara_zeta_recip(g);
    f.lambda = perron_root(bass_hashimoto(g)).lambda;

    CoveringTree tree(g);
    for (const GroupWord& w : tree.words_up_to(spectrum_length))
        f.length_spectrum[tree.translation_length(w).amplitude] += 1;
    return f;
}

GeneratorPairing GeneratorPairing::identity(int g) {
    GeneratorPairing p;
    p.target.resize(g);
    p.sign.assign(g, 1);
    std::iota(p.target.begin(), p.target.end(), 1);
    return p;
}

BoundaryConjugacy::BoundaryConjugacy(const CoveringTree& x, const CoveringTree& y,
                                     GeneratorPairing pairing)
    : x_(&x), y_(&y), pairing_(std::move(pairing)) {
    int g = x.generator_count();
    if (y.generator_count() != g)
        throw std::invalid_argument("build_conjugacy: Betti numbers differ (no conjugacy exists)");
    if (static_cast<int>(pairing_.target.size()) != g ||
        static_cast<int>(pairing_.sign.size()) != g)
        throw std::invalid_argument("generator pairing must be total");
    inverse_target_.assign(g + 1, 0);
    std::vector<char> seen(g + 1, 0);
    for (int i = 0; i < g; ++i) {
        int t = pairing_.target[i];
        if (t < 1 || t > g || seen[t]) throw std::invalid_argument("pairing is not a bijection");
        if (pairing_.sign[i] != 1 && pairing_.sign[i] != -1)
            throw std::invalid_argument("pairing signs must be +-1");
        seen[t] = 1;
        inverse_target_[t] = i + 1;
    }
}

std::vector<int> BoundaryConjugacy::relabel(const std::vector<int>& letters) const {
    std::vector<int> out;
    out.reserve(letters.size());
    for (int l : letters) {
        int i = std::abs(l) - 1;
        out.push_back((l > 0 ? 1 : -1) * pairing_.sign[i] * pairing_.target[i]);
    }
    return out;
}

std::vector<int> BoundaryConjugacy::relabel_inverse(const std::vector<int>& letters) const {
    std::vector<int> out;
    out.reserve(letters.size());
    for (int l : letters) {
        int t = std::abs(l);
        int i = inverse_target_[t];
        out.push_back((l > 0 ? 1 : -1) * pairing_.sign[i - 1] * i);
    }
    return out;
}

GroupWord BoundaryConjugacy::map_word(const GroupWord& w) const {
    return GroupWord{relabel(w.letters)};
}

Cylinder BoundaryConjugacy::map_cylinder(const Cylinder& c) const {
    return y_->spine(relabel(x_->cayley_encode(c)));
}

Cylinder BoundaryConjugacy::inverse_map_cylinder(const Cylinder& c) const {
    return x_->spine(relabel_inverse(y_->cayley_encode(c)));
}

namespace {

// Refine a family of disjoint cylinders to a common uniform depth.
std::set<std::vector<int>> refine_cover(const CoveringTree& tree, std::vector<Cylinder> pieces,
                                        int depth) {
    std::set<std::vector<int>> out;
    for (Cylinder& p : pieces) {
        std::vector<std::vector<int>> frontier{std::move(p.path)};
        while (static_cast<int>(frontier.front().size()) < depth) {
            std::vector<std::vector<int>> next;
            for (const auto& path : frontier)
                for (int e : tree.extensions(path)) {
                    auto ext = path;
                    ext.push_back(e);
                    next.push_back(std::move(ext));
                }
            frontier = std::move(next);
        }
        for (auto& path : frontier) out.insert(std::move(path));
    }
    return out;
}

} // namespace

EquivarianceReport BoundaryConjugacy::equivariance_report(int max_depth) const {
    EquivarianceReport report;
    int g = x_->generator_count();
    for (int depth = 1; depth <= max_depth; ++depth) {
        for (const auto& path : x_->cylinders_at_depth(depth)) {
            Cylinder c{path};
            for (int l = 1; l <= g; ++l)
                for (int sign : {1, -1}) {
                    GroupWord gen{{sign * l}};
                    GroupWord gen_y{relabel(gen.letters)};

                    // Phi(gamma . C) as target cylinders
                    std::vector<Cylinder> lhs;
                    for (const Cylinder& piece : x_->image_pieces(gen, c))
                        lhs.push_back(map_cylinder(piece));
                    // gamma' . Phi(C)
                    std::vector<Cylinder> rhs = y_->image_pieces(gen_y, map_cylinder(c));

                    int common = 1;
                    for (const Cylinder& p : lhs) common = std::max(common, p.depth());
                    for (const Cylinder& p : rhs) common = std::max(common, p.depth());
                    ++report.cylinders_checked;
                    if (refine_cover(*y_, std::move(lhs), common) !=
                        refine_cover(*y_, std::move(rhs), common)) {
                        ++report.violations;
                        if (report.violation_examples.size() < 8) {
                            std::ostringstream os;
                            os << "depth " << depth << " generator " << sign * l;
                            report.violation_examples.push_back(os.str());
                        }
                    }
                }
        }
    }
    return report;
}

BoundaryConjugacy build_conjugacy(const CoveringTree& x, const CoveringTree& y,
                                  const GeneratorPairing& pairing) {
    return BoundaryConjugacy(x, y, pairing);
}

CrossedProductElement algebra_transport(const BoundaryConjugacy& phi, const QsmSystem& source,
                                        const QsmSystem& target, const CrossedProductElement& a) {
    const CoveringTree& x = phi.source();
    const CoveringTree& y = phi.target();
    if (&source.tree() != &x || &target.tree() != &y)
        throw std::invalid_argument("algebra_transport: systems do not match the conjugacy");

    // The result must resolve every relabelled support word.
    int k = a.depth();
    int target_depth = k;
    for (const auto& [w, values] : a.terms())
        target_depth = std::max(target_depth, target.required_depth(phi.map_word(w)));

    // Deepen until every target cylinder's coding determines a source
    // cylinder at a's resolution (the minimum coding length over depth-d
    // cylinders is monotone in d).
    for (;; ++target_depth) {
        size_t min_letters = SIZE_MAX;
        for (const auto& path : y.cylinders_at_depth(target_depth))
            min_letters = std::min(min_letters, y.cayley_encode(Cylinder{path}).size());
        if (min_letters >= static_cast<size_t>(k)) break;
        if (target_depth > 8 * k + 16)
            throw BoundExceeded("algebra_transport: committed depth too large");
    }

    const auto& target_cyls = y.cylinders_at_depth(target_depth);
    std::vector<int> source_index(target_cyls.size());
    for (size_t i = 0; i < target_cyls.size(); ++i) {
        std::vector<int> coding = y.cayley_encode(Cylinder{target_cyls[i]});
        Cylinder back = x.spine(phi.relabel_inverse(coding));
        back.path.resize(k);
        source_index[i] = x.cylinder_index(k, back.path);
    }

    std::map<GroupWord, CrossedProductElement::Coefficients> terms;
    for (const auto& [w, values] : a.terms()) {
        GroupWord mapped = phi.map_word(w);
        CrossedProductElement::Coefficients out(target_cyls.size());
        for (size_t i = 0; i < target_cyls.size(); ++i) out[i] = values[source_index[i]];
        terms[mapped] = std::move(out);
    }
    return target.element(target_depth, std::move(terms), a.dagger());
}

namespace {

std::string survey_name(const Multigraph& g, int index) {
    std::ostringstream os;
    os << "v" << g.vertex_count() << "e" << g.edge_count() << "g" << betti(g).g << "_" << index;
    return os.str();
}

} // namespace

SurveyReport survey(int max_vertices, int max_edges, int spectrum_length) {
    SurveyReport report;
    std::vector<Multigraph> all = enumerate_multigraphs(max_vertices, max_edges);
    // Theorem 1 and the QSM fingerprint both assume g > 1.
    for (Multigraph& g : all)
        if (betti(g).g > 1) report.graphs.push_back(std::move(g));

    std::vector<Fingerprint> prints;
    std::set<int> betti_values;
    for (size_t i = 0; i < report.graphs.size(); ++i) {
        report.names.push_back(survey_name(report.graphs[i], static_cast<int>(i)));
        prints.push_back(fingerprint(report.graphs[i], spectrum_length));
        report.betti_numbers.push_back(prints.back().g);
        betti_values.insert(prints.back().g);
    }
    report.theorem1_class_count = static_cast<int>(betti_values.size());

    for (size_t i = 0; i < report.graphs.size(); ++i)
        for (size_t j = i + 1; j < report.graphs.size(); ++j) {
            SurveyRow row;
            row.graph_a = report.names[i];
            row.graph_b = report.names[j];
            row.g_equal = prints[i].g == prints[j].g;
            row.k0_equal = prints[i].k0 == prints[j].k0;
            row.gcd_equal = prints[i].gcd_invariant == prints[j].gcd_invariant;
            row.zeta_equal = prints[i].zeta == prints[j].zeta;
            row.spectrum_equal = prints[i].length_spectrum == prints[j].length_spectrum;
            row.fingerprint_equal = prints[i].equal_invariants(prints[j]);
            row.isomorphic = isomorphic(report.graphs[i], report.graphs[j]).has_value();
            if (row.fingerprint_equal && !row.isomorphic) {
                report.fingerprints_separate = false;
                report.collisions.emplace_back(row.graph_a, row.graph_b);
            }
            report.rows.push_back(std::move(row));
        }
    return report;
}

} // namespace gqsm
