#include "kmernet/classify.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <numbers>
#include <numeric>
#include <sstream>
#include <unordered_map>

#include "kmernet/error.hpp"
#include "kmernet/random.hpp"

namespace kmernet {

Standardizer Standardizer::fit(const std::vector<FeatureVector>& train) {
    if (train.empty()) throw Error("cannot standardize with an empty training set");
    const std::size_t dim = train.front().values.size();
    Standardizer s;
    s.mean.assign(dim, 0.0);
    s.stddev.assign(dim, 0.0);
    const double n = static_cast<double>(train.size());
    for (std::size_t j = 0; j < dim; ++j) {
        double lo = train.front().values.at(j);
        double hi = lo;
        double sum = 0.0;
        for (const auto& v : train) {
            if (v.values.size() != dim) throw Error("training vectors differ in length");
            lo = std::min(lo, v.values[j]);
            hi = std::max(hi, v.values[j]);
            sum += v.values[j];
        }
        if (lo == hi) {
            s.mean[j] = lo;
            continue;
        }
        s.mean[j] = sum / n;
        double sq = 0.0;
        for (const auto& v : train) {
            const double d = v.values[j] - s.mean[j];
            sq += d * d;
        }
        s.stddev[j] = std::sqrt(sq / n);
    }
    return s;
}

FeatureVector Standardizer::apply(const FeatureVector& v) const {
    if (v.values.size() != mean.size()) throw Error("vector length does not match standardizer");
    FeatureVector out = v;
    for (std::size_t j = 0; j < mean.size(); ++j) {
        out.values[j] = stddev[j] == 0.0 ? 0.0 : (v.values[j] - mean[j]) / stddev[j];
    }
    return out;
}

std::vector<FeatureVector> Standardizer::apply(const std::vector<FeatureVector>& vs) const {
    std::vector<FeatureVector> out;
    out.reserve(vs.size());
    for (const auto& v : vs) out.push_back(apply(v));
    return out;
}

StandardizedSplit standardize(const std::vector<FeatureVector>& train,
                              const std::vector<FeatureVector>& apply_to) {
    StandardizedSplit out;
    out.stats = Standardizer::fit(train);
    out.train = out.stats.apply(train);
    out.applied = out.stats.apply(apply_to);
    return out;
}

namespace {

const std::string& label_of(const FeatureVector& v) {
    if (!v.label) throw Error("vector " + v.id + " has no label");
    return *v.label;
}

double squared_distance(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size()) throw Error("vector length mismatch");
    double d = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double x = a[i] - b[i];
        d += x * x;
    }
    return d;
}

}  // namespace

Prediction knn_predict(const std::vector<FeatureVector>& train, const FeatureVector& query,
                       std::size_t k, const std::vector<std::string>& classes) {
    if (train.empty()) throw Error("empty training set");
    if (k < 1 || k > train.size()) {
        throw Error("k must be in [1, " + std::to_string(train.size()) + "], got " + std::to_string(k));
    }
    std::vector<std::pair<double, std::size_t>> dist(train.size());
    for (std::size_t i = 0; i < train.size(); ++i) {
        dist[i] = {squared_distance(train[i].values, query.values), i};
    }
    std::partial_sort(dist.begin(), dist.begin() + static_cast<std::ptrdiff_t>(k), dist.end());

    struct Tally {
        std::size_t votes = 0;
        double distance_sum = 0;
    };
    std::map<std::string, Tally> tally;
    for (const auto& c : classes) tally[c];
    for (const auto& v : train) tally[label_of(v)];
    for (std::size_t i = 0; i < k; ++i) {
        auto& t = tally[label_of(train[dist[i].second])];
        ++t.votes;
        t.distance_sum += std::sqrt(dist[i].first);
    }

    Prediction out;
    const Tally* best = nullptr;
    for (const auto& [label, t] : tally) {
        out.scores[label] = static_cast<double>(t.votes) / static_cast<double>(k);
        if (t.votes == 0) continue;
        // Map iteration is lexicographic, so only strictly better candidates win.
        bool better = best == nullptr || t.votes > best->votes ||
                      (t.votes == best->votes &&
                       t.distance_sum / t.votes < best->distance_sum / best->votes);
        if (better) {
            best = &t;
            out.label = label;
        }
    }
    return out;
}

GaussianNaiveBayes GaussianNaiveBayes::fit(const std::vector<FeatureVector>& train) {
    if (train.empty()) throw Error("empty training set");
    std::map<std::string, std::vector<const FeatureVector*>> by_class;
    for (const auto& v : train) by_class[label_of(v)].push_back(&v);
    const std::size_t dim = train.front().values.size();

    GaussianNaiveBayes model;
    for (const auto& [label, members] : by_class) {
        if (members.size() < 2) {
            throw Error("class '" + label + "' has fewer than 2 training instances");
        }
        ClassModel cm;
        const double n = static_cast<double>(members.size());
        cm.log_prior = std::log(n / static_cast<double>(train.size()));
        cm.mean.assign(dim, 0.0);
        cm.variance.assign(dim, 0.0);
        for (const auto* v : members) {
            if (v->values.size() != dim) throw Error("training vectors differ in length");
            for (std::size_t j = 0; j < dim; ++j) cm.mean[j] += v->values[j];
        }
        for (auto& m : cm.mean) m /= n;
        for (const auto* v : members) {
            for (std::size_t j = 0; j < dim; ++j) {
                const double d = v->values[j] - cm.mean[j];
                cm.variance[j] += d * d;
            }
        }
        for (auto& var : cm.variance) var = std::max(var / n, kVarianceFloor);
        model.classes_.emplace(label, std::move(cm));
    }
    return model;
}

Prediction GaussianNaiveBayes::predict(const FeatureVector& query) const {
    std::vector<std::pair<std::string, double>> log_post;
    for (const auto& [label, cm] : classes_) {
        if (query.values.size() != cm.mean.size()) throw Error("vector length mismatch");
        double lp = cm.log_prior;
        for (std::size_t j = 0; j < cm.mean.size(); ++j) {
            const double d = query.values[j] - cm.mean[j];
            lp -= 0.5 * std::log(2.0 * std::numbers::pi * cm.variance[j]) +
                  d * d / (2.0 * cm.variance[j]);
        }
        log_post.emplace_back(label, lp);
    }
    double top = log_post.front().second;
    Prediction out;
    out.label = log_post.front().first;
    for (const auto& [label, lp] : log_post) {
        if (lp > top) {
            top = lp;
            out.label = label;
        }
    }
    double norm = 0.0;
    for (const auto& [label, lp] : log_post) norm += std::exp(lp - top);
    for (const auto& [label, lp] : log_post) out.scores[label] = std::exp(lp - top) / norm;
    return out;
}

Prediction gnb_fit_predict(const std::vector<FeatureVector>& train, const FeatureVector& query) {
    return GaussianNaiveBayes::fit(train).predict(query);
}

std::string ClassifierSpec::describe() const {
    if (kind == Kind::Knn) return "knn (k=" + std::to_string(k) + ")";
    return "gnb";
}

ClassifierSpec::Kind parse_classifier_kind(std::string_view name) {
    if (name == "knn") return ClassifierSpec::Kind::Knn;
    if (name == "gnb") return ClassifierSpec::Kind::Gnb;
    throw Error("unknown classifier '" + std::string(name) + "' (expected knn or gnb)");
}

std::vector<RocPoint> roc_points(const std::vector<double>& scores,
                                 const std::vector<std::string>& labels,
                                 const std::string& positive_class) {
    if (scores.size() != labels.size()) throw Error("scores and labels differ in length");
    std::size_t positives = 0;
    for (const auto& l : labels) positives += (l == positive_class);
    const std::size_t negatives = labels.size() - positives;
    if (positives == 0 || negatives == 0) {
        throw Error("ROC needs both positive and negative instances of '" + positive_class + "'");
    }
    std::vector<std::size_t> order(scores.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });

    std::vector<RocPoint> out{{0.0, 0.0}};
    std::size_t tp = 0;
    std::size_t fp = 0;
    for (std::size_t i = 0; i < order.size();) {
        const double threshold = scores[order[i]];
        for (; i < order.size() && scores[order[i]] == threshold; ++i) {
            if (labels[order[i]] == positive_class) {
                ++tp;
            } else {
                ++fp;
            }
        }
        out.push_back({static_cast<double>(fp) / static_cast<double>(negatives),
                       static_cast<double>(tp) / static_cast<double>(positives)});
    }
    if (out.back() != RocPoint{1.0, 1.0}) out.push_back({1.0, 1.0});
    return out;
}

double auc(const std::vector<RocPoint>& points) {
    double area = 0.0;
    for (std::size_t i = 1; i < points.size(); ++i) {
        area += (points[i].fpr - points[i - 1].fpr) * (points[i].tpr + points[i - 1].tpr) / 2.0;
    }
    return area;
}

namespace {

std::vector<std::string> classes_in_order(const std::vector<FeatureVector>& dataset) {
    std::vector<std::string> out;
    for (const auto& v : dataset) {
        const auto& l = label_of(v);
        if (std::find(out.begin(), out.end(), l) == out.end()) out.push_back(l);
    }
    return out;
}

}  // namespace

std::vector<std::size_t> assign_folds(const std::vector<FeatureVector>& dataset, std::size_t folds,
                                      std::uint64_t seed) {
    if (folds < 2) throw Error("folds must be at least 2");
    const auto classes = classes_in_order(dataset);
    Rng rng(seed);
    std::vector<std::size_t> fold(dataset.size(), 0);
    std::size_t dealer = 0;
    for (const auto& c : classes) {
        std::vector<std::size_t> members;
        for (std::size_t i = 0; i < dataset.size(); ++i) {
            if (*dataset[i].label == c) members.push_back(i);
        }
        if (members.size() < folds) {
            throw Error("class '" + c + "' has " + std::to_string(members.size()) +
                        " instances, fewer than the " + std::to_string(folds) +
                        " folds needed for stratification");
        }
        shuffle(std::span(members), rng);
        for (auto idx : members) fold[idx] = dealer++ % folds;
    }
    return fold;
}

EvaluationReport cross_validate(const std::vector<FeatureVector>& dataset,
                                const ClassifierSpec& classifier, std::size_t folds,
                                std::uint64_t seed) {
    if (dataset.empty()) throw Error("empty dataset");
    EvaluationReport report;
    report.classifier = classifier.describe();
    report.folds = folds;
    report.seed = seed;
    report.classes = classes_in_order(dataset);
    const auto fold_of = assign_folds(dataset, folds, seed);

    std::unordered_map<std::string, std::size_t> class_index;
    for (std::size_t i = 0; i < report.classes.size(); ++i) class_index[report.classes[i]] = i;
    const std::size_t n_classes = report.classes.size();
    report.confusion.assign(n_classes, std::vector<std::size_t>(n_classes, 0));
    report.predictions.resize(dataset.size());

    for (std::size_t f = 0; f < folds; ++f) {
        std::vector<FeatureVector> train;
        std::vector<FeatureVector> test;
        std::vector<std::size_t> test_index;
        for (std::size_t i = 0; i < dataset.size(); ++i) {
            if (fold_of[i] == f) {
                test.push_back(dataset[i]);
                test_index.push_back(i);
            } else {
                train.push_back(dataset[i]);
            }
        }
        auto split = standardize(train, test);
        std::optional<GaussianNaiveBayes> gnb;
        if (classifier.kind == ClassifierSpec::Kind::Gnb) gnb = GaussianNaiveBayes::fit(split.train);

        std::size_t correct = 0;
        for (std::size_t t = 0; t < split.applied.size(); ++t) {
            Prediction p = gnb ? gnb->predict(split.applied[t])
                               : knn_predict(split.train, split.applied[t], classifier.k,
                                             report.classes);
            for (const auto& c : report.classes) p.scores.try_emplace(c, 0.0);
            const auto& truth = *test[t].label;
            correct += (p.label == truth);
            ++report.confusion[class_index.at(truth)][class_index.at(p.label)];
            report.predictions[test_index[t]] =
                InstancePrediction{test[t].id, truth, p.label, f, std::move(p.scores)};
        }
        report.fold_accuracy.push_back(static_cast<double>(correct) /
                                       static_cast<double>(test.size()));
    }

    std::size_t trace = 0;
    for (std::size_t c = 0; c < n_classes; ++c) trace += report.confusion[c][c];
    report.accuracy = static_cast<double>(trace) / static_cast<double>(dataset.size());

    std::vector<std::string> truths;
    for (const auto& p : report.predictions) truths.push_back(p.truth);
    for (const auto& c : report.classes) {
        std::vector<double> scores;
        for (const auto& p : report.predictions) scores.push_back(p.scores.at(c));
        if (n_classes < 2) {
            report.roc.push_back({});
            report.auc.push_back(0.0);
            continue;
        }
        report.roc.push_back(roc_points(scores, truths, c));
        report.auc.push_back(auc(report.roc.back()));
    }
    return report;
}

std::vector<FeatureVector> permute_labels(std::vector<FeatureVector> dataset, std::uint64_t seed) {
    std::vector<std::optional<std::string>> labels;
    for (auto& v : dataset) labels.push_back(std::move(v.label));
    Rng rng(seed);
    shuffle(std::span(labels), rng);
    for (std::size_t i = 0; i < dataset.size(); ++i) dataset[i].label = std::move(labels[i]);
    return dataset;
}

std::string report_text(const EvaluationReport& report) {
    std::ostringstream out;
    out << "classifier: " << report.classifier << '\n';
    out << "folds: " << report.folds << '\n';
    out << "seed: " << report.seed << '\n';
    out << "instances: " << report.predictions.size() << '\n';
    out << std::fixed << std::setprecision(1);
    out << "accuracy: " << 100.0 * report.accuracy << "%\n";
    out << "fold accuracy:";
    for (double a : report.fold_accuracy) out << ' ' << 100.0 * a;
    out << '\n';

    std::size_t width = 9;
    for (const auto& c : report.classes) width = std::max(width, c.size() + 2);
    out << "confusion matrix (rows = true class, columns = predicted):\n";
    out << std::setw(static_cast<int>(width)) << "";
    for (const auto& c : report.classes) out << std::setw(static_cast<int>(width)) << c;
    out << '\n';
    for (std::size_t r = 0; r < report.classes.size(); ++r) {
        out << std::setw(static_cast<int>(width)) << report.classes[r];
        for (auto n : report.confusion[r]) out << std::setw(static_cast<int>(width)) << n;
        out << '\n';
    }
    out << std::setprecision(4) << "one-vs-rest AUC:\n";
    for (std::size_t c = 0; c < report.classes.size(); ++c) {
        out << "  " << report.classes[c] << ' ' << report.auc[c] << '\n';
    }
    return out.str();
}

std::string roc_csv(const EvaluationReport& report) {
    std::ostringstream out;
    out << "class,fpr,tpr\n";
    for (std::size_t c = 0; c < report.classes.size(); ++c) {
        for (const auto& p : report.roc[c]) {
            out << report.classes[c] << ',' << format_value(p.fpr) << ',' << format_value(p.tpr)
                << '\n';
        }
    }
    return out.str();
}

}  // namespace kmernet
