#include "discourse/cluster.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <unordered_map>

#include <json.hpp>

#include "discourse/errors.hpp"
#include "discourse/rng.hpp"

namespace discourse {

std::string_view to_string(FeatureTransform t) {
    switch (t) {
        case FeatureTransform::raw: return "raw";
        case FeatureTransform::log1p: return "log1p";
        case FeatureTransform::proportion: return "proportion";
    }
    return "raw";
}

std::string_view to_string(CovarianceStructure s) {
    switch (s) {
        case CovarianceStructure::full: return "full";
        case CovarianceStructure::tied: return "tied";
        case CovarianceStructure::diagonal: return "diagonal";
        case CovarianceStructure::spherical: return "spherical";
    }
    return "full";
}

FeatureTransform parse_feature_transform(std::string_view s) {
    if (s == "raw") return FeatureTransform::raw;
    if (s == "log1p") return FeatureTransform::log1p;
    if (s == "proportion") return FeatureTransform::proportion;
    throw ConfigError("unknown feature transform: " + std::string(s));
}

CovarianceStructure parse_covariance_structure(std::string_view s) {
    if (s == "full") return CovarianceStructure::full;
    if (s == "tied") return CovarianceStructure::tied;
    if (s == "diagonal") return CovarianceStructure::diagonal;
    if (s == "spherical") return CovarianceStructure::spherical;
    throw ConfigError("unknown covariance structure: " + std::string(s));
}

FeatureMatrix build_feature_matrix(std::span<const UserEpisodeProfile> profiles,
                                   std::span<const std::string> users,
                                   std::span<const std::string> lexicon_names,
                                   FeatureTransform transform) {
    if (users.empty()) throw DataError("build_feature_matrix requires a nonempty user cohort");
    const std::size_t d = lexicon_names.size();
    FeatureMatrix X;
    X.rows = users.size();
    X.cols = d;
    X.transform = transform;
    X.row_labels.assign(users.begin(), users.end());
    X.data.assign(X.rows * d, 0.0);

    std::unordered_map<std::string_view, std::size_t> index;
    for (std::size_t i = 0; i < X.row_labels.size(); ++i) index[X.row_labels[i]] = i;
    for (const UserEpisodeProfile& profile : profiles) {
        const auto it = index.find(profile.user);
        if (it == index.end()) continue;
        for (std::size_t c = 0; c < d && c < profile.discourse_counts.size(); ++c)
            X.data[it->second * d + c] += static_cast<double>(profile.discourse_counts[c]);
    }

    for (std::size_t r = 0; r < X.rows; ++r) {
        double* row = X.data.data() + r * d;
        switch (transform) {
            case FeatureTransform::raw:
                break;
            case FeatureTransform::log1p:
                for (std::size_t c = 0; c < d; ++c) row[c] = std::log1p(row[c]);
                break;
            case FeatureTransform::proportion: {
                double total = 0.0;
                for (std::size_t c = 0; c < d; ++c) total += row[c];
                if (total > 0.0)
                    for (std::size_t c = 0; c < d; ++c) row[c] /= total;
                else
                    for (std::size_t c = 0; c < d; ++c) row[c] = 1.0 / static_cast<double>(d);
                break;
            }
        }
    }
    return X;
}

// ---------------------------------------------------------------------------
// Small dense symmetric linear algebra (d is the lexicon count, so tiny).

namespace {

// In-place lower Cholesky of a row-major d x d SPD matrix. Returns false when
// the matrix is not positive definite.
bool cholesky(std::vector<double>& a, std::size_t d) {
    for (std::size_t j = 0; j < d; ++j) {
        double diag = a[j * d + j];
        for (std::size_t k = 0; k < j; ++k) diag -= a[j * d + k] * a[j * d + k];
        if (!(diag > 0.0)) return false;
        const double ljj = std::sqrt(diag);
        a[j * d + j] = ljj;
        for (std::size_t i = j + 1; i < d; ++i) {
            double v = a[i * d + j];
            for (std::size_t k = 0; k < j; ++k) v -= a[i * d + k] * a[j * d + k];
            a[i * d + j] = v / ljj;
        }
        for (std::size_t k = j + 1; k < d; ++k) a[j * d + k] = 0.0;
    }
    return true;
}

struct ComponentDensity {
    std::vector<double> chol;  // lower Cholesky factor of the covariance
    double log_norm = 0.0;     // -(d/2) ln 2pi - (1/2) ln det
};

ComponentDensity prepare_density(const std::vector<double>& cov, std::size_t d) {
    ComponentDensity density;
    density.chol = cov;
    if (!cholesky(density.chol, d))
        throw DataError("covariance matrix not positive definite");
    double log_det = 0.0;
    for (std::size_t i = 0; i < d; ++i) log_det += std::log(density.chol[i * d + i]);
    log_det *= 2.0;
    density.log_norm = -0.5 * (static_cast<double>(d) * std::log(2.0 * std::numbers::pi) + log_det);
    return density;
}

double log_gaussian(const ComponentDensity& density, std::span<const double> x,
                    std::span<const double> mean, std::size_t d, std::vector<double>& scratch) {
    // Solve L z = (x - mean); the Mahalanobis term is |z|^2.
    for (std::size_t i = 0; i < d; ++i) {
        double v = x[i] - mean[i];
        for (std::size_t k = 0; k < i; ++k) v -= density.chol[i * d + k] * scratch[k];
        scratch[i] = v / density.chol[i * d + i];
    }
    double mahal = 0.0;
    for (std::size_t i = 0; i < d; ++i) mahal += scratch[i] * scratch[i];
    return density.log_norm - 0.5 * mahal;
}

// Column means and the MLE covariance (divisor n) of the whole matrix.
void data_mean_cov(const FeatureMatrix& X, std::vector<double>& mean, std::vector<double>& cov) {
    const std::size_t n = X.rows, d = X.cols;
    mean.assign(d, 0.0);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < d; ++c) mean[c] += X.at(r, c);
    for (double& m : mean) m /= static_cast<double>(n);
    cov.assign(d * d, 0.0);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t i = 0; i < d; ++i) {
            const double di = X.at(r, i) - mean[i];
            for (std::size_t j = i; j < d; ++j)
                cov[i * d + j] += di * (X.at(r, j) - mean[j]);
        }
    }
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = i; j < d; ++j) {
            cov[i * d + j] /= static_cast<double>(n);
            cov[j * d + i] = cov[i * d + j];
        }
}

// Projects a dense covariance onto the requested structure and adds the
// epsilon ridge. tied handling happens in the M-step (shared across k).
void project_structure(std::vector<double>& cov, std::size_t d, CovarianceStructure structure,
                       double epsilon) {
    switch (structure) {
        case CovarianceStructure::full:
        case CovarianceStructure::tied:
            break;
        case CovarianceStructure::diagonal:
            for (std::size_t i = 0; i < d; ++i)
                for (std::size_t j = 0; j < d; ++j)
                    if (i != j) cov[i * d + j] = 0.0;
            break;
        case CovarianceStructure::spherical: {
            double trace = 0.0;
            for (std::size_t i = 0; i < d; ++i) trace += cov[i * d + i];
            const double sigma2 = trace / static_cast<double>(d);
            std::fill(cov.begin(), cov.end(), 0.0);
            for (std::size_t i = 0; i < d; ++i) cov[i * d + i] = sigma2;
            break;
        }
    }
    for (std::size_t i = 0; i < d; ++i) cov[i * d + i] += epsilon;
}

// k-means++-style seeding: first mean uniform, later means proportional to
// the squared distance to the nearest chosen mean.
std::vector<std::vector<double>> seed_means(const FeatureMatrix& X, std::size_t k,
                                            Xoshiro256& rng) {
    const std::size_t n = X.rows, d = X.cols;
    std::vector<std::vector<double>> means;
    means.reserve(k);
    std::vector<double> min_dist_sq(n, std::numeric_limits<double>::infinity());

    const std::size_t first = static_cast<std::size_t>(rng.next_below(n));
    means.emplace_back(X.row(first).begin(), X.row(first).end());

    while (means.size() < k) {
        double total = 0.0;
        for (std::size_t r = 0; r < n; ++r) {
            double dist_sq = 0.0;
            const auto row = X.row(r);
            const auto& last = means.back();
            for (std::size_t c = 0; c < d; ++c) {
                const double diff = row[c] - last[c];
                dist_sq += diff * diff;
            }
            min_dist_sq[r] = std::min(min_dist_sq[r], dist_sq);
            total += min_dist_sq[r];
        }
        std::size_t chosen;
        if (total > 0.0) {
            const double target = rng.next_double() * total;
            double running = 0.0;
            chosen = n - 1;
            for (std::size_t r = 0; r < n; ++r) {
                running += min_dist_sq[r];
                if (running >= target) {
                    chosen = r;
                    break;
                }
            }
        } else {
            chosen = static_cast<std::size_t>(rng.next_below(n));  // all points identical
        }
        means.emplace_back(X.row(chosen).begin(), X.row(chosen).end());
    }
    return means;
}

struct EStepResult {
    double log_likelihood = 0.0;
};

// Responsibilities via log-sum-exp; resp is n x K row-major.
EStepResult e_step(const FeatureMatrix& X, const GmmModel& model,
                   std::vector<double>& resp, std::vector<double>& scratch) {
    const std::size_t n = X.rows, d = X.cols, k = model.components;
    std::vector<ComponentDensity> densities;
    densities.reserve(k);
    for (std::size_t c = 0; c < k; ++c) densities.push_back(prepare_density(model.covariances[c], d));
    std::vector<double> log_weights(k);
    for (std::size_t c = 0; c < k; ++c) log_weights[c] = std::log(model.weights[c]);

    EStepResult result;
    for (std::size_t r = 0; r < n; ++r) {
        double* row = resp.data() + r * k;
        double max_term = -std::numeric_limits<double>::infinity();
        for (std::size_t c = 0; c < k; ++c) {
            row[c] = log_weights[c] +
                     log_gaussian(densities[c], X.row(r), model.means[c], d, scratch);
            max_term = std::max(max_term, row[c]);
        }
        double sum = 0.0;
        for (std::size_t c = 0; c < k; ++c) sum += std::exp(row[c] - max_term);
        const double lse = max_term + std::log(sum);
        result.log_likelihood += lse;
        for (std::size_t c = 0; c < k; ++c) row[c] = std::exp(row[c] - lse);
    }
    return result;
}

void m_step(const FeatureMatrix& X, const std::vector<double>& resp, GmmModel& model,
            double epsilon) {
    const std::size_t n = X.rows, d = X.cols, k = model.components;
    std::vector<double> nk(k, 0.0);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < k; ++c) nk[c] += resp[r * k + c];

    double total = 0.0;
    for (std::size_t c = 0; c < k; ++c) {
        nk[c] = std::max(nk[c], 1e-300);  // a starved component keeps pi > 0
        total += nk[c];
    }
    for (std::size_t c = 0; c < k; ++c) model.weights[c] = nk[c] / total;

    for (std::size_t c = 0; c < k; ++c) {
        auto& mean = model.means[c];
        std::fill(mean.begin(), mean.end(), 0.0);
        for (std::size_t r = 0; r < n; ++r) {
            const double w = resp[r * k + c];
            const auto row = X.row(r);
            for (std::size_t j = 0; j < d; ++j) mean[j] += w * row[j];
        }
        for (std::size_t j = 0; j < d; ++j) mean[j] /= nk[c];
    }

    if (model.structure == CovarianceStructure::tied) {
        std::vector<double> shared(d * d, 0.0);
        for (std::size_t c = 0; c < k; ++c) {
            for (std::size_t r = 0; r < n; ++r) {
                const double w = resp[r * k + c];
                const auto row = X.row(r);
                for (std::size_t i = 0; i < d; ++i) {
                    const double di = row[i] - model.means[c][i];
                    for (std::size_t j = i; j < d; ++j)
                        shared[i * d + j] += w * di * (row[j] - model.means[c][j]);
                }
            }
        }
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = i; j < d; ++j) {
                shared[i * d + j] /= static_cast<double>(n);
                shared[j * d + i] = shared[i * d + j];
            }
        for (std::size_t i = 0; i < d; ++i) shared[i * d + i] += epsilon;
        for (std::size_t c = 0; c < k; ++c) model.covariances[c] = shared;
        return;
    }

    for (std::size_t c = 0; c < k; ++c) {
        auto& cov = model.covariances[c];
        std::fill(cov.begin(), cov.end(), 0.0);
        for (std::size_t r = 0; r < n; ++r) {
            const double w = resp[r * k + c];
            const auto row = X.row(r);
            for (std::size_t i = 0; i < d; ++i) {
                const double di = row[i] - model.means[c][i];
                for (std::size_t j = i; j < d; ++j)
                    cov[i * d + j] += w * di * (row[j] - model.means[c][j]);
            }
        }
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = i; j < d; ++j) {
                cov[i * d + j] /= nk[c];
                cov[j * d + i] = cov[i * d + j];
            }
        project_structure(cov, d, model.structure, epsilon);
    }
}

GmmModel fit_gmm_once(const FeatureMatrix& X, std::size_t k, CovarianceStructure structure,
                      const GmmConfig& config, std::uint64_t seed) {
    const std::size_t n = X.rows, d = X.cols;
    Xoshiro256 rng(seed);

    GmmModel model;
    model.components = k;
    model.dims = d;
    model.structure = structure;
    model.weights.assign(k, 1.0 / static_cast<double>(k));
    model.means = seed_means(X, k, rng);

    std::vector<double> data_mean, data_cov;
    data_mean_cov(X, data_mean, data_cov);
    std::vector<double> init_cov = data_cov;
    if (structure == CovarianceStructure::diagonal || structure == CovarianceStructure::spherical)
        project_structure(init_cov, d, structure, config.regularization);
    else
        project_structure(init_cov, d, CovarianceStructure::full, config.regularization);
    model.covariances.assign(k, init_cov);

    std::vector<double> resp(n * k);
    std::vector<double> scratch(d);

    double previous_ll = -std::numeric_limits<double>::infinity();
    for (std::size_t iter = 0; iter < config.max_iterations; ++iter) {
        const EStepResult e = e_step(X, model, resp, scratch);
        model.log_likelihood = e.log_likelihood;
        model.log_likelihood_history.push_back(e.log_likelihood);
        model.iterations = iter + 1;
        if (iter > 0) {
            const double improvement = e.log_likelihood - previous_ll;
            const double scale = std::max(1.0, std::abs(e.log_likelihood));
            if (std::abs(improvement) / scale < config.rel_tolerance) {
                model.converged = true;
                break;
            }
        }
        previous_ll = e.log_likelihood;
        m_step(X, resp, model, config.regularization);
    }
    return model;
}

}  // namespace

GmmModel fit_gmm(const FeatureMatrix& X, std::size_t components, CovarianceStructure structure,
                 const GmmConfig& config) {
    if (components == 0) throw DataError("fit_gmm requires at least one component");
    if (X.cols == 0) throw DataError("fit_gmm requires at least one feature dimension");
    if (X.rows < components)
        throw DataError("fit_gmm requires n >= K, got n=" + std::to_string(X.rows) +
                        " K=" + std::to_string(components));
    for (double v : X.data)
        if (!std::isfinite(v)) throw DataError("fit_gmm input contains non-finite values");

    const std::size_t restarts = std::max<std::size_t>(1, config.restarts);
    GmmModel best;
    bool have_best = false;
    for (std::size_t attempt = 0; attempt < restarts; ++attempt) {
        GmmModel candidate =
            fit_gmm_once(X, components, structure, config, derive_seed(config.seed, attempt));
        if (!have_best || candidate.log_likelihood > best.log_likelihood) {
            best = std::move(candidate);
            have_best = true;
        }
    }
    return best;
}

std::size_t bic_parameter_count(std::size_t components, std::size_t dims,
                                CovarianceStructure structure) {
    const std::size_t k = components, d = dims;
    std::size_t cov_params = 0;
    switch (structure) {
        case CovarianceStructure::full: cov_params = k * d * (d + 1) / 2; break;
        case CovarianceStructure::tied: cov_params = d * (d + 1) / 2; break;
        case CovarianceStructure::diagonal: cov_params = k * d; break;
        case CovarianceStructure::spherical: cov_params = k; break;
    }
    return (k - 1) + k * d + cov_params;
}

double bic(const GmmModel& model, const FeatureMatrix& X) {
    const auto p = bic_parameter_count(model.components, model.dims, model.structure);
    return static_cast<double>(p) * std::log(static_cast<double>(X.rows)) -
           2.0 * model.log_likelihood;
}

std::pair<GmmModel, BicReport> select_model(const FeatureMatrix& X, std::size_t k_min,
                                            std::size_t k_max,
                                            std::span<const CovarianceStructure> structures,
                                            const GmmConfig& config) {
    if (k_min == 0 || k_max < k_min) throw ConfigError("select_model needs a nonempty K range");
    if (structures.empty()) throw ConfigError("select_model needs at least one structure");

    BicReport report;
    GmmModel best;
    double best_bic = std::numeric_limits<double>::infinity();
    bool have_best = false;
    for (std::size_t k = k_min; k <= k_max; ++k) {
        for (const CovarianceStructure structure : structures) {
            BicCell cell;
            cell.components = k;
            cell.structure = structure;
            try {
                GmmModel model = fit_gmm(X, k, structure, config);
                cell.bic = bic(model, X);
                if (cell.bic < best_bic) {
                    best_bic = cell.bic;
                    best = std::move(model);
                    have_best = true;
                    report.selected = report.grid.size();
                }
            } catch (const DataError&) {
                cell.bic = std::numeric_limits<double>::infinity();
            }
            report.grid.push_back(cell);
        }
    }
    if (!have_best) throw DataError("select_model: every grid cell failed to fit");
    return {std::move(best), std::move(report)};
}

ClusterAssignment assign_clusters(const GmmModel& model, const FeatureMatrix& X) {
    if (model.dims != X.cols)
        throw DataError("assign_clusters: model dimensionality does not match the matrix");
    const std::size_t n = X.rows, k = model.components;
    ClusterAssignment out;
    out.responsibilities.assign(n * k, 0.0);
    out.labels.assign(n, 0);
    std::vector<double> scratch(X.cols);
    e_step(X, model, out.responsibilities, scratch);
    for (std::size_t r = 0; r < n; ++r) {
        const double* row = out.responsibilities.data() + r * k;
        std::size_t best = 0;
        for (std::size_t c = 1; c < k; ++c)
            if (row[c] > row[best]) best = c;
        out.labels[r] = best;
    }
    return out;
}

std::string model_to_json(const GmmModel& model, double bic_value) {
    nlohmann::ordered_json j;
    j["components"] = model.components;
    j["dims"] = model.dims;
    j["structure"] = std::string(to_string(model.structure));
    j["weights"] = model.weights;
    j["means"] = model.means;
    j["covariances"] = model.covariances;
    j["log_likelihood"] = model.log_likelihood;
    j["bic"] = bic_value;
    j["iterations"] = model.iterations;
    j["converged"] = model.converged;
    return j.dump(2);
}

}  // namespace discourse
