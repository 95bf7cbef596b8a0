#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "kmernet/features.hpp"

namespace kmernet {

/// Per-feature z-score parameters fitted on a training set. Constant
/// features have stddev 0 and standardize to 0.
struct Standardizer {
    std::vector<double> mean;
    std::vector<double> stddev;

    static Standardizer fit(const std::vector<FeatureVector>& train);
    FeatureVector apply(const FeatureVector& v) const;
    std::vector<FeatureVector> apply(const std::vector<FeatureVector>& vs) const;

    friend bool operator==(const Standardizer&, const Standardizer&) = default;
};

struct StandardizedSplit {
    Standardizer stats;
    std::vector<FeatureVector> train;
    std::vector<FeatureVector> applied;
};

/// Fits on `train` only and transforms both sets with those statistics.
StandardizedSplit standardize(const std::vector<FeatureVector>& train,
                              const std::vector<FeatureVector>& apply_to);

struct Prediction {
    std::string label;
    /// One score per known class, summing to 1.
    std::map<std::string, double> scores;
};

/// Euclidean k-nearest-neighbour vote. Vote ties go to the class whose voting
/// neighbours have the smaller mean distance, then to the smaller label.
/// Equidistant neighbours are taken in training order. `classes` lists every
/// class that should get a score (training labels are always included).
Prediction knn_predict(const std::vector<FeatureVector>& train, const FeatureVector& query,
                       std::size_t k, const std::vector<std::string>& classes = {});

/// Gaussian naive Bayes with class-frequency priors.
class GaussianNaiveBayes {
public:
    static constexpr double kVarianceFloor = 1e-9;

    /// Requires at least two instances per class.
    static GaussianNaiveBayes fit(const std::vector<FeatureVector>& train);
    Prediction predict(const FeatureVector& query) const;

    struct ClassModel {
        double log_prior = 0;
        std::vector<double> mean;
        std::vector<double> variance;
    };
    const std::map<std::string, ClassModel>& classes() const { return classes_; }

private:
    std::map<std::string, ClassModel> classes_;
};

Prediction gnb_fit_predict(const std::vector<FeatureVector>& train, const FeatureVector& query);

struct ClassifierSpec {
    enum class Kind { Knn, Gnb };
    Kind kind = Kind::Knn;
    std::size_t k = 1;

    std::string describe() const;
};

ClassifierSpec::Kind parse_classifier_kind(std::string_view name);

struct RocPoint {
    double fpr = 0;
    double tpr = 0;

    friend bool operator==(const RocPoint&, const RocPoint&) = default;
};

/// One-vs-rest ROC: thresholds sweep the distinct scores in descending order.
/// Starts at (0,0) and ends at (1,1).
std::vector<RocPoint> roc_points(const std::vector<double>& scores,
                                 const std::vector<std::string>& labels,
                                 const std::string& positive_class);

/// Trapezoidal area under a ROC polyline.
double auc(const std::vector<RocPoint>& points);

struct InstancePrediction {
    std::string id;
    std::string truth;
    std::string predicted;
    std::size_t fold = 0;
    std::map<std::string, double> scores;
};

struct EvaluationReport {
    std::string classifier;
    std::size_t folds = 0;
    std::uint64_t seed = 0;
    /// Class order used by the confusion matrix and ROC series.
    std::vector<std::string> classes;
    std::vector<double> fold_accuracy;
    double accuracy = 0;
    /// confusion[true][predicted]
    std::vector<std::vector<std::size_t>> confusion;
    std::vector<std::vector<RocPoint>> roc;
    std::vector<double> auc;
    /// In dataset order.
    std::vector<InstancePrediction> predictions;
};

/// Seeded stratified fold index per instance. Each class is shuffled and
/// dealt round-robin; the dealing position carries over between classes so
/// overall fold sizes also stay within one of each other.
std::vector<std::size_t> assign_folds(const std::vector<FeatureVector>& dataset, std::size_t folds,
                                      std::uint64_t seed);

/// Stratified k-fold cross-validation. Standardization is refit on every
/// training fold.
EvaluationReport cross_validate(const std::vector<FeatureVector>& dataset,
                                const ClassifierSpec& classifier, std::size_t folds = 10,
                                std::uint64_t seed = 42);

/// Returns a copy with labels shuffled (seeded); values and ids untouched.
std::vector<FeatureVector> permute_labels(std::vector<FeatureVector> dataset, std::uint64_t seed);

/// Plain-text summary: accuracy, per-fold accuracy, confusion matrix, AUCs.
std::string report_text(const EvaluationReport& report);

/// Columns: class,fpr,tpr.
std::string roc_csv(const EvaluationReport& report);

}  // namespace kmernet
