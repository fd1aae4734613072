#pragma once

#include <span>
#include <vector>

#include "act/features.hpp"

namespace act {

// Per-feature Gaussian class conditionals of the naive Bayes classifier.
// Standard deviations never drop below kSigmaFloor.
struct ClassifierParams {
    std::vector<double> mu_pos;
    std::vector<double> sigma_pos;
    std::vector<double> mu_neg;
    std::vector<double> sigma_neg;

    int size() const { return static_cast<int>(mu_pos.size()); }
    bool operator==(const ClassifierParams&) const = default;
};

inline constexpr double kSigmaFloor = 1e-3;

// Log likelihood ratio sum_i log N(v_i; mu+, sigma+) - log N(v_i; mu-, sigma-),
// uniform class prior.
double classify(std::span<const double> v, const ClassifierParams& params);

// One exponential-forgetting step of a Gaussian against fresh batch moments:
//   mu    <- lambda mu + (1 - lambda) mu_b
//   sigma <- sqrt(lambda sigma^2 + (1 - lambda) sigma_b^2
//                 + lambda (1 - lambda) (mu - mu_b)^2)
// The result is the mean/deviation of the two-component mixture
// lambda N(mu, sigma) + (1 - lambda) N(mu_b, sigma_b).
struct Gaussian {
    double mu = 0.0;
    double sigma = 0.0;
};
Gaussian blend_gaussian(double mu, double sigma, double batch_mu, double batch_sigma,
                        double lambda);

// Batch mean and population (1/n) deviation per feature from the sample
// feature vectors, then one blend per class. lambda = 0 adopts the batch
// statistics outright, which is also how first-frame initialization works.
void update_params(ClassifierParams& params,
                   const std::vector<std::vector<double>>& pos_features,
                   const std::vector<std::vector<double>>& neg_features, double lambda);

ClassifierParams init_params(const std::vector<std::vector<double>>& pos_features,
                             const std::vector<std::vector<double>>& neg_features);

// Conservative center update. Per template and class: the stored raw center
// is kept while its L2 distance to the fresh raw center stays below theta;
// once the change reaches theta the stored center moves to
// eta * fresh + (1 - eta) * stored and the unit copy is recomputed.
// Distances are taken on raw intensity vectors; unit vectors would cap the
// distance at 2 and a threshold around 100 could never fire.
void update_templates(TemplateCenters& stored, const TemplateCenters& fresh, double theta,
                      double eta);

}  // namespace act
