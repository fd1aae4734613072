#include "act/model.hpp"

#include <cmath>
#include <stdexcept>

namespace act {
namespace {

struct Batch {
    std::vector<double> mu;
    std::vector<double> sigma;
};

// Two-pass mean and population deviation per feature.
Batch batch_stats(const std::vector<std::vector<double>>& features) {
    if (features.empty()) throw std::invalid_argument("update_params: empty sample list");
    const std::size_t c = features.front().size();
    Batch b;
    b.mu.assign(c, 0.0);
    b.sigma.assign(c, 0.0);
    for (const auto& v : features) {
        if (v.size() != c) throw std::invalid_argument("update_params: ragged feature batch");
        for (std::size_t i = 0; i < c; ++i) b.mu[i] += v[i];
    }
    const double inv = 1.0 / static_cast<double>(features.size());
    for (std::size_t i = 0; i < c; ++i) b.mu[i] *= inv;
    for (const auto& v : features) {
        for (std::size_t i = 0; i < c; ++i) {
            const double d = v[i] - b.mu[i];
            b.sigma[i] += d * d;
        }
    }
    for (std::size_t i = 0; i < c; ++i) b.sigma[i] = std::sqrt(b.sigma[i] * inv);
    return b;
}

void normalize_row(RowMatrix& unit, const RowMatrix& raw, int j) {
    double norm2 = 0.0;
    const auto src = raw.row(j);
    for (double v : src) norm2 += v * v;
    auto dst = unit.row(j);
    if (norm2 == 0.0) {
        for (double& v : dst) v = 0.0;
        return;
    }
    const double inv = 1.0 / std::sqrt(norm2);
    for (std::size_t i = 0; i < src.size(); ++i) dst[i] = src[i] * inv;
}

// One class of one bag: gate on the raw-vector distance, then blend.
void update_class(RowMatrix& stored_raw, RowMatrix& stored_unit, const RowMatrix& fresh_raw,
                  double theta, double eta) {
    for (int j = 0; j < stored_raw.rows; ++j) {
        const auto s = stored_raw.row(j);
        const auto f = fresh_raw.row(j);
        double dist2 = 0.0;
        for (std::size_t d = 0; d < s.size(); ++d) {
            const double diff = f[d] - s[d];
            dist2 += diff * diff;
        }
        if (std::sqrt(dist2) < theta) continue;
        auto out = stored_raw.row(j);
        for (std::size_t d = 0; d < out.size(); ++d) {
            out[d] = eta * f[d] + (1.0 - eta) * out[d];
        }
        normalize_row(stored_unit, stored_raw, j);
    }
}

}  // namespace

double classify(std::span<const double> v, const ClassifierParams& params) {
    if (static_cast<int>(v.size()) != params.size()) {
        throw std::invalid_argument("classify: feature length differs from parameter count");
    }
    double score = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const double dp = (v[i] - params.mu_pos[i]) / params.sigma_pos[i];
        const double dn = (v[i] - params.mu_neg[i]) / params.sigma_neg[i];
        score += std::log(params.sigma_neg[i]) - std::log(params.sigma_pos[i]) +
                 0.5 * (dn * dn - dp * dp);
    }
    return score;
}

Gaussian blend_gaussian(double mu, double sigma, double batch_mu, double batch_sigma,
                        double lambda) {
    Gaussian g;
    g.mu = lambda * mu + (1.0 - lambda) * batch_mu;
    const double var = lambda * sigma * sigma + (1.0 - lambda) * batch_sigma * batch_sigma +
                       lambda * (1.0 - lambda) * (mu - batch_mu) * (mu - batch_mu);
    g.sigma = std::max(std::sqrt(var), kSigmaFloor);
    return g;
}

void update_params(ClassifierParams& params,
                   const std::vector<std::vector<double>>& pos_features,
                   const std::vector<std::vector<double>>& neg_features, double lambda) {
    if (lambda < 0.0 || lambda >= 1.0) {
        throw std::invalid_argument("update_params: lambda must be in [0, 1)");
    }
    const Batch pos = batch_stats(pos_features);
    const Batch neg = batch_stats(neg_features);
    const std::size_t c = pos.mu.size();
    if (neg.mu.size() != c || params.mu_pos.size() != c) {
        throw std::invalid_argument("update_params: feature count mismatch");
    }
    for (std::size_t i = 0; i < c; ++i) {
        const Gaussian p =
            blend_gaussian(params.mu_pos[i], params.sigma_pos[i], pos.mu[i], pos.sigma[i], lambda);
        const Gaussian n =
            blend_gaussian(params.mu_neg[i], params.sigma_neg[i], neg.mu[i], neg.sigma[i], lambda);
        params.mu_pos[i] = p.mu;
        params.sigma_pos[i] = p.sigma;
        params.mu_neg[i] = n.mu;
        params.sigma_neg[i] = n.sigma;
    }
}

ClassifierParams init_params(const std::vector<std::vector<double>>& pos_features,
                             const std::vector<std::vector<double>>& neg_features) {
    const std::size_t c = pos_features.empty() ? 0 : pos_features.front().size();
    ClassifierParams params;
    params.mu_pos.assign(c, 0.0);
    params.sigma_pos.assign(c, 1.0);
    params.mu_neg.assign(c, 0.0);
    params.sigma_neg.assign(c, 1.0);
    update_params(params, pos_features, neg_features, 0.0);
    return params;
}

void update_templates(TemplateCenters& stored, const TemplateCenters& fresh, double theta,
                      double eta) {
    if (stored.size() != fresh.size()) {
        throw std::invalid_argument("update_templates: bag count mismatch");
    }
    for (std::size_t i = 0; i < stored.size(); ++i) {
        BagCenters& s = stored[i];
        const BagCenters& f = fresh[i];
        if (s.tpl_w != f.tpl_w || s.tpl_h != f.tpl_h || s.count() != f.count()) {
            throw std::invalid_argument("update_templates: template geometry mismatch");
        }
        update_class(s.pos_raw, s.pos_unit, f.pos_raw, theta, eta);
        update_class(s.neg_raw, s.neg_unit, f.neg_raw, theta, eta);
    }
}

}  // namespace act
