#include "graphqsm/qsm.hpp"

#include <algorithm>
#include <cmath>

#include <nlohmann/json.hpp>

namespace gqsm {

using ordered_json = nlohmann::ordered_json;

namespace {

double int_pow(double lambda, int k) {
    double r = 1.0;
    for (int i = 0; i < std::abs(k); ++i) r *= lambda;
    return k >= 0 ? r : 1.0 / r;
}

} // namespace

QsmSystem::QsmSystem(const CoveringTree& tree, const PSMeasure& mu, int max_depth,
                     int max_word_letters)
    : tree_(&tree), mu_(&mu), max_depth_(max_depth), max_word_letters_(max_word_letters) {
    if (&mu.tree() != &tree) throw std::invalid_argument("QsmSystem: measure built on another tree");
    if (!mu.base().path.empty())
        throw std::invalid_argument("QsmSystem: the time evolution is rooted at x0");
}

int QsmSystem::required_depth(const GroupWord& w) const {
    return static_cast<int>(tree_->realization(w).size()) + 1;
}

CrossedProductElement QsmSystem::element(int depth,
                                         std::map<GroupWord, CrossedProductElement::Coefficients> terms,
                                         bool dagger) const {
    if (depth < 1) throw std::invalid_argument("element depth must be >= 1");
    if (depth > max_depth_) throw BoundExceeded("element depth exceeds the configured bound");
    size_t partition = tree_->cylinders_at_depth(depth).size();
    for (const auto& [w, values] : terms) {
        if (reduce_word(w.letters).letters != w.letters)
            throw std::invalid_argument("support word is not freely reduced");
        if (w.length() > max_word_letters_)
            throw BoundExceeded("support word longer than the configured bound");
        if (required_depth(w) > depth)
            throw InsufficientDepth("element depth must exceed d(x0, w^-1 x0) for every support word");
        if (values.size() != partition)
            throw std::invalid_argument("coefficient function must be total on the partition");
        if (dagger)
            for (int l : w.letters)
                if (l < 0) throw std::invalid_argument("dagger elements carry positive words only");
    }
    CrossedProductElement a;
    a.depth_ = depth;
    a.dagger_ = dagger;
    a.terms_ = std::move(terms);
    return a;
}

CrossedProductElement QsmSystem::unit(int depth) const {
    std::map<GroupWord, CrossedProductElement::Coefficients> terms;
    terms[GroupWord{}] = CrossedProductElement::Coefficients(tree_->cylinders_at_depth(depth).size(), 1.0);
    return element(depth, std::move(terms), true);
}

CrossedProductElement QsmSystem::monomial(const GroupWord& w, std::complex<double> coeff,
                                          int depth) const {
    if (depth == 0) depth = required_depth(w);
    std::map<GroupWord, CrossedProductElement::Coefficients> terms;
    terms[w] = CrossedProductElement::Coefficients(tree_->cylinders_at_depth(depth).size(), coeff);
    bool dagger = std::all_of(w.letters.begin(), w.letters.end(), [](int l) { return l > 0; });
    return element(depth, std::move(terms), dagger);
}

CrossedProductElement QsmSystem::indicator(const Cylinder& c, const GroupWord& w, int depth) const {
    if (depth == 0) depth = std::max(required_depth(w), c.depth());
    if (c.depth() > depth) throw InsufficientDepth("indicator cylinder deeper than element depth");
    const auto& cyls = tree_->cylinders_at_depth(depth);
    CrossedProductElement::Coefficients values(cyls.size(), 0.0);
    for (size_t i = 0; i < cyls.size(); ++i)
        if (std::equal(c.path.begin(), c.path.end(), cyls[i].begin())) values[i] = 1.0;
    std::map<GroupWord, CrossedProductElement::Coefficients> terms;
    terms[w] = std::move(values);
    bool dagger = std::all_of(w.letters.begin(), w.letters.end(), [](int l) { return l > 0; });
    return element(depth, std::move(terms), dagger);
}

CrossedProductElement QsmSystem::refine(const CrossedProductElement& a, int new_depth) const {
    if (new_depth == a.depth()) return a;
    if (new_depth < a.depth()) throw std::invalid_argument("refine cannot coarsen");
    const auto& cyls = tree_->cylinders_at_depth(new_depth);
    std::map<GroupWord, CrossedProductElement::Coefficients> terms;
    for (const auto& [w, values] : a.terms()) {
        CrossedProductElement::Coefficients next(cyls.size());
        for (size_t i = 0; i < cyls.size(); ++i) {
            std::vector<int> prefix(cyls[i].begin(), cyls[i].begin() + a.depth());
            next[i] = values[tree_->cylinder_index(a.depth(), prefix)];
        }
        terms[w] = std::move(next);
    }
    return element(new_depth, std::move(terms), a.dagger());
}

CrossedProductElement QsmSystem::multiply(const CrossedProductElement& a,
                                          const CrossedProductElement& b) const {
    int base_depth = std::max(a.depth(), b.depth());
    int pullback = 0;
    for (const auto& [alpha, values] : a.terms())
        pullback = std::max(pullback, static_cast<int>(tree_->realization(alpha).size()));
    int depth = base_depth + pullback;

    // product words and the resolution they force
    for (const auto& [alpha, fa] : a.terms())
        for (const auto& [beta, fb] : b.terms()) {
            GroupWord prod = concat_words(alpha, beta);
            if (prod.length() > max_word_letters_)
                throw BoundExceeded("product support word longer than the configured bound");
            depth = std::max(depth, required_depth(prod));
        }
    if (depth > max_depth_)
        throw BoundExceeded("product requires resolution beyond the configured depth bound");

    const auto& cyls = tree_->cylinders_at_depth(depth);
    size_t count = cyls.size();

    // index of each result cylinder's prefix in a's partition
    std::vector<int> a_index(count);
    for (size_t i = 0; i < count; ++i) {
        std::vector<int> prefix(cyls[i].begin(), cyls[i].begin() + a.depth());
        a_index[i] = tree_->cylinder_index(a.depth(), prefix);
    }

    std::map<GroupWord, CrossedProductElement::Coefficients> terms;
    for (const auto& [alpha, fa] : a.terms()) {
        // (g o alpha^-1) on each result cylinder: pull the path through
        // alpha^-1 and truncate to b's resolution; one table per alpha.
        std::vector<int> alpha_inv_real = tree_->realization(inverse_word(alpha));
        std::vector<int> pull_index(count);
        for (size_t i = 0; i < count; ++i) {
            std::vector<int> pulled = alpha_inv_real;
            for (int d : cyls[i]) {
                if (!pulled.empty() && pulled.back() == tree_->directed().reversal(d))
                    pulled.pop_back();
                else
                    pulled.push_back(d);
            }
            pulled.resize(b.depth());
            pull_index[i] = tree_->cylinder_index(b.depth(), pulled);
        }
        for (const auto& [beta, fb] : b.terms()) {
            GroupWord prod = concat_words(alpha, beta);
            auto [it, inserted] =
                terms.try_emplace(prod, CrossedProductElement::Coefficients(count, 0.0));
            CrossedProductElement::Coefficients& out = it->second;
            for (size_t i = 0; i < count; ++i) out[i] += fa[a_index[i]] * fb[pull_index[i]];
        }
    }
    return element(depth, std::move(terms), a.dagger() && b.dagger());
}

double QsmSystem::evolution_factor_real_exponent(double b, int busemann_value) const {
    // exponent of lambda in the imaginary-time factor lambda^(-(b/delta) B)
    return -(b / mu_->delta()) * busemann_value;
}

CrossedProductElement QsmSystem::time_evolve(const CrossedProductElement& a, TimeParameter p) const {
    const auto& cyls = tree_->cylinders_at_depth(a.depth());
    std::map<GroupWord, CrossedProductElement::Coefficients> terms;
    for (const auto& [w, values] : a.terms()) {
        TreeVertex pulled_base{tree_->realization(inverse_word(w))};
        CrossedProductElement::Coefficients next(values.size());
        for (size_t i = 0; i < cyls.size(); ++i) {
            int bus = tree_->busemann(TreeVertex{}, pulled_base, Cylinder{cyls[i]});
            std::complex<double> factor = std::polar(1.0, p.t * bus);
            if (p.b != 0.0) {
                double expo = evolution_factor_real_exponent(p.b, bus);
                double rounded = std::nearbyint(expo);
                factor *= (std::abs(expo - rounded) < 1e-12)
                              ? int_pow(mu_->lambda(), static_cast<int>(rounded))
                              : std::pow(mu_->lambda(), expo);
            }
            next[i] = values[i] * factor;
        }
        terms[w] = std::move(next);
    }
    return element(a.depth(), std::move(terms), a.dagger());
}

std::complex<double> QsmSystem::kms_state(const CrossedProductElement& a) const {
    auto it = a.terms().find(GroupWord{});
    if (it == a.terms().end()) return 0.0;
    const auto& cyls = tree_->cylinders_at_depth(a.depth());
    std::complex<double> total = 0.0;
    for (size_t i = 0; i < cyls.size(); ++i)
        total += it->second[i] * mu_->cylinder_measure(Cylinder{cyls[i]});
    return total;
}

double QsmSystem::kms_residual(const CrossedProductElement& a, const CrossedProductElement& b,
                               double beta) const {
    std::complex<double> lhs = kms_state(multiply(a, b));
    std::complex<double> rhs = kms_state(multiply(b, time_evolve(a, TimeParameter{0.0, beta})));
    return std::abs(lhs - rhs);
}

CrossedProductElement QsmSystem::random_element(std::mt19937& rng, int max_letters,
                                                bool dagger) const {
    auto u01 = [&rng] { return (rng() >> 5) * (1.0 / 134217728.0); }; // 27-bit uniform
    int g = tree_->generator_count();
    auto random_word = [&]() {
        int len = 1 + static_cast<int>(rng() % max_letters);
        std::vector<int> letters;
        while (static_cast<int>(letters.size()) < len) {
            int l;
            if (dagger) l = 1 + static_cast<int>(rng() % g);
            else {
                int k = static_cast<int>(rng() % (2 * g));
                l = (k % 2 == 0) ? (k / 2 + 1) : -(k / 2 + 1);
            }
            if (!letters.empty() && letters.back() == -l) continue;
            letters.push_back(l);
        }
        return GroupWord{letters};
    };

    std::vector<GroupWord> support{GroupWord{}, random_word(), random_word()};
    int depth = 1;
    for (const GroupWord& w : support) depth = std::max(depth, required_depth(w) + 1);

    size_t partition = tree_->cylinders_at_depth(depth).size();
    std::map<GroupWord, CrossedProductElement::Coefficients> terms;
    for (const GroupWord& w : support) {
        auto [it, inserted] = terms.try_emplace(w, CrossedProductElement::Coefficients(partition));
        if (!inserted) continue; // duplicate random word
        for (auto& v : it->second) {
            double r = std::sqrt(u01());
            double th = 2.0 * 3.14159265358979323846 * u01();
            v = std::polar(r, th);
        }
    }
    return element(depth, std::move(terms), dagger);
}

std::string QsmSystem::to_json(const CrossedProductElement& a) const {
    ordered_json j;
    j["depth"] = a.depth();
    j["dagger"] = a.dagger();
    j["terms"] = ordered_json::array();
    for (const auto& [w, values] : a.terms()) {
        ordered_json t;
        t["word"] = w.letters;
        ordered_json vals = ordered_json::array();
        for (const auto& v : values) vals.push_back({v.real(), v.imag()});
        t["values"] = std::move(vals);
        j["terms"].push_back(std::move(t));
    }
    return j.dump();
}

CrossedProductElement QsmSystem::from_json(const std::string& text) const {
    ordered_json j = ordered_json::parse(text);
    int depth = j.at("depth").get<int>();
    bool dagger = j.value("dagger", false);
    std::map<GroupWord, CrossedProductElement::Coefficients> terms;
    for (const auto& t : j.at("terms")) {
        GroupWord w{t.at("word").get<std::vector<int>>()};
        CrossedProductElement::Coefficients values;
        for (const auto& v : t.at("values")) values.emplace_back(v[0].get<double>(), v[1].get<double>());
        terms[w] = std::move(values);
    }
    return element(depth, std::move(terms), dagger);
}

} // namespace gqsm
