#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "discourse/profiles.hpp"

namespace discourse {

enum class FeatureTransform { raw, log1p, proportion };
enum class CovarianceStructure { full, tied, diagonal, spherical };

std::string_view to_string(FeatureTransform t);
std::string_view to_string(CovarianceStructure s);
FeatureTransform parse_feature_transform(std::string_view s);
CovarianceStructure parse_covariance_structure(std::string_view s);

/// Row-major n x d matrix of per-user discourse features, one column per
/// configured lexicon.
struct FeatureMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> data;  // rows * cols, row-major
    std::vector<std::string> row_labels;
    FeatureTransform transform = FeatureTransform::raw;

    double at(std::size_t r, std::size_t c) const { return data[r * cols + c]; }
    std::span<const double> row(std::size_t r) const { return {data.data() + r * cols, cols}; }
};

/// Row u = the user's per-discourse totals over all episodes, transformed.
/// proportion maps an all-zero row to the uniform vector 1/d.
FeatureMatrix build_feature_matrix(std::span<const UserEpisodeProfile> profiles,
                                   std::span<const std::string> users,
                                   std::span<const std::string> lexicon_names,
                                   FeatureTransform transform);

struct GmmConfig {
    std::size_t max_iterations = 200;
    double rel_tolerance = 1e-6;   // on log-likelihood improvement
    double regularization = 1e-6;  // epsilon added to covariance diagonals
    std::uint64_t seed = 0;
    std::size_t restarts = 5;  // best of N by final log-likelihood
};

struct GmmModel {
    std::size_t components = 0;
    std::size_t dims = 0;
    CovarianceStructure structure = CovarianceStructure::full;
    std::vector<double> weights;               // K, sums to 1
    std::vector<std::vector<double>> means;    // K x d
    std::vector<std::vector<double>> covariances;  // K x (d*d), row-major, materialized
    double log_likelihood = 0.0;
    std::size_t iterations = 0;
    bool converged = false;
    std::vector<double> log_likelihood_history;  // one entry per EM iteration
};

/// EM fit with k-means++-style seeded means, uniform initial weights and the
/// data covariance (projected to the requested structure) as the initial
/// covariance. E-step uses log-sum-exp; every M-step covariance gets
/// `regularization` added to its diagonal. Deterministic given the seed.
/// DataError when n < K or the matrix contains non-finite values.
GmmModel fit_gmm(const FeatureMatrix& X, std::size_t components, CovarianceStructure structure,
                 const GmmConfig& config = {});

/// BIC = p ln n - 2 ln L, with p = (K-1) + K d + covariance parameters.
double bic(const GmmModel& model, const FeatureMatrix& X);

/// Covariance parameter count: K d(d+1)/2 (full), d(d+1)/2 (tied),
/// K d (diagonal), K (spherical); plus (K-1) weights and K d means.
std::size_t bic_parameter_count(std::size_t components, std::size_t dims,
                                CovarianceStructure structure);

struct BicCell {
    std::size_t components = 0;
    CovarianceStructure structure = CovarianceStructure::full;
    double bic = 0.0;  // +inf for failed fits
};

struct BicReport {
    std::vector<BicCell> grid;   // complete over K range x structures
    std::size_t selected = 0;    // index into grid (minimum BIC)
};

/// Fits every (K, structure) cell and returns the minimum-BIC model with the
/// full grid. A failed cell records +inf; all-failed is a DataError.
std::pair<GmmModel, BicReport> select_model(const FeatureMatrix& X, std::size_t k_min,
                                            std::size_t k_max,
                                            std::span<const CovarianceStructure> structures,
                                            const GmmConfig& config = {});

struct ClusterAssignment {
    std::vector<std::size_t> labels;       // argmax responsibility, ties to lowest
    std::vector<double> responsibilities;  // n x K, row-major; rows sum to 1
};

ClusterAssignment assign_clusters(const GmmModel& model, const FeatureMatrix& X);

/// JSON export: K, structure, weights, means, covariances, log-likelihood, BIC.
std::string model_to_json(const GmmModel& model, double bic_value);

}  // namespace discourse
