#include "txm/svm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "txm/errors.hpp"
#include "txm/rng.hpp"

namespace txm {

namespace {

double sparse_dot(const std::vector<double>& w, const FeatureVector& x) {
    double acc = 0.0;
    for (const auto& [idx, val] : x.entries) acc += w[idx] * val;
    return acc;
}

void check_instance(const FeatureVector& x, std::size_t dimension) {
    for (const auto& [idx, val] : x.entries) {
        if (idx >= dimension) throw DataError("feature index exceeds the model dimension");
        if (!std::isfinite(val)) throw DataError("non-finite feature value");
    }
}

}  // namespace

double decision(const BinaryLinearModel& model, const FeatureVector& x) {
    check_instance(x, model.weights.size());
    return sparse_dot(model.weights, x) + model.bias;
}

double primal_objective(const BinaryLinearModel& model, const std::vector<FeatureVector>& x,
                        const std::vector<int>& y, double c) {
    double reg = model.bias * model.bias;
    for (double w : model.weights) reg += w * w;
    double hinge = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double margin = y[i] * (sparse_dot(model.weights, x[i]) + model.bias);
        hinge += std::max(0.0, 1.0 - margin);
    }
    return 0.5 * reg + c * hinge;
}

// Dual coordinate descent for the L1-loss SVC dual:
//   min_a 0.5 a^T Q a - e^T a,  0 <= a_i <= C,  Q_ij = y_i y_j x~_i . x~_j
// with x~ the bias-augmented instance. Coordinates are visited in a seeded
// random permutation per epoch; the projected-gradient range drives the stop.
BinaryLinearModel train_binary(const std::vector<FeatureVector>& x, const std::vector<int>& y,
                               std::size_t dimension, const TrainConfig& config,
                               TrainDiagnostics* diagnostics) {
    if (x.empty() || x.size() != y.size()) throw DataError("training set is empty or misaligned");
    if (!(config.c > 0.0)) throw ConfigError("svm.c must be positive");
    if (!(config.tolerance > 0.0)) throw ConfigError("svm.tolerance must be positive");
    if (config.max_epochs <= 0) throw ConfigError("svm.max_epochs must be positive");

    bool has_pos = false, has_neg = false;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (y[i] != 1 && y[i] != -1) throw DataError("labels must be +1 or -1");
        (y[i] > 0 ? has_pos : has_neg) = true;
        check_instance(x[i], dimension);
    }

    BinaryLinearModel model;
    model.weights.assign(dimension, 0.0);

    // Single-label degenerate case: the constant classifier for that label.
    if (!has_pos || !has_neg) {
        model.bias = has_pos ? 1.0 : -1.0;
        if (diagnostics) diagnostics->converged = true;
        return model;
    }

    const std::size_t n = x.size();
    const double c = config.c;
    std::vector<double> alpha(n, 0.0);
    std::vector<double> q_diag(n, 1.0);  // + 1.0 for the bias column
    for (std::size_t i = 0; i < n; ++i) {
        for (const auto& [idx, val] : x[i].entries) q_diag[i] += val * val;
    }

    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    SplitMix64 rng(mix_seed(config.seed, 0xdcdULL));

    bool converged = false;
    int epoch = 0;
    for (; epoch < config.max_epochs; ++epoch) {
        rng.shuffle(order);
        double pg_max = -std::numeric_limits<double>::infinity();
        double pg_min = std::numeric_limits<double>::infinity();

        for (const std::size_t i : order) {
            const double yi = y[i];
            const double g = yi * (sparse_dot(model.weights, x[i]) + model.bias) - 1.0;

            double pg = g;
            if (alpha[i] <= 0.0 && g >= 0.0) {
                pg = 0.0;
            } else if (alpha[i] >= c && g <= 0.0) {
                pg = 0.0;
            }
            pg_max = std::max(pg_max, pg);
            pg_min = std::min(pg_min, pg);

            if (pg != 0.0) {
                const double old = alpha[i];
                alpha[i] = std::clamp(old - g / q_diag[i], 0.0, c);
                const double delta = (alpha[i] - old) * yi;
                if (delta != 0.0) {
                    for (const auto& [idx, val] : x[i].entries) model.weights[idx] += delta * val;
                    model.bias += delta;
                }
            }
        }

        if (diagnostics) {
            diagnostics->epoch_objective.push_back(primal_objective(model, x, y, c));
            double alpha_sum = 0.0, reg = model.bias * model.bias;
            for (double a : alpha) alpha_sum += a;
            for (double w : model.weights) reg += w * w;
            diagnostics->epoch_dual_objective.push_back(alpha_sum - 0.5 * reg);
        }
        if (pg_max - pg_min < config.tolerance && std::abs(pg_max) < config.tolerance &&
            std::abs(pg_min) < config.tolerance) {
            converged = true;
            ++epoch;
            break;
        }
    }

    if (diagnostics) {
        diagnostics->epochs = epoch;
        diagnostics->converged = converged;
    }
    return model;
}

OvoModel train_ovo(const std::vector<FeatureVector>& x, const std::vector<std::size_t>& labels,
                   const CategorySet& categories, std::size_t dimension,
                   const TrainConfig& config) {
    if (x.empty() || x.size() != labels.size()) throw DataError("training set is empty or misaligned");
    const std::size_t k = categories.size();
    if (k < 2) throw ConfigError("one-vs-one needs at least two categories");

    OvoModel ovo;
    ovo.categories = categories;
    ovo.dimension = dimension;
    ovo.train_counts.assign(k, 0);
    for (const std::size_t lab : labels) {
        if (lab >= k) throw DataError("label index out of range");
        ++ovo.train_counts[lab];
    }
    std::size_t present = 0;
    for (const auto cnt : ovo.train_counts) present += cnt > 0 ? 1 : 0;
    if (present < 2) throw DataError("one-vs-one training needs at least two categories present");

    ovo.models.reserve(k * (k - 1) / 2);
    std::size_t pair_index = 0;
    for (std::size_t a = 0; a < k; ++a) {
        for (std::size_t b = a + 1; b < k; ++b, ++pair_index) {
            std::vector<FeatureVector> sub_x;
            std::vector<int> sub_y;
            for (std::size_t i = 0; i < x.size(); ++i) {
                if (labels[i] == a || labels[i] == b) {
                    sub_x.push_back(x[i]);
                    sub_y.push_back(labels[i] == a ? 1 : -1);
                }
            }
            TrainConfig pair_cfg = config;
            pair_cfg.seed = mix_seed(config.seed, 0x0503ULL, pair_index);

            BinaryLinearModel m;
            if (sub_x.empty()) {
                // Neither class has data; fall back to the earlier category.
                m.weights.assign(dimension, 0.0);
                m.bias = 0.0;
            } else {
                m = train_binary(sub_x, sub_y, dimension, pair_cfg);
            }
            m.category_a = static_cast<std::uint32_t>(a);
            m.category_b = static_cast<std::uint32_t>(b);
            ovo.models.push_back(std::move(m));
        }
    }
    return ovo;
}

const char* tie_break_name(TieBreak tb) {
    switch (tb) {
        case TieBreak::None: return "none";
        case TieBreak::MarginSum: return "margin_sum";
        case TieBreak::TrainCount: return "train_count";
        case TieBreak::CategoryOrder: return "category_order";
    }
    return "none";
}

VoteResult predict(const OvoModel& model, const FeatureVector& x) {
    const std::size_t k = model.categories.size();
    VoteResult result;
    result.votes.assign(k, 0);
    result.margin_sums.assign(k, 0.0);

    for (const auto& m : model.models) {
        const double d = decision(m, x);
        const std::size_t winner = d >= 0.0 ? m.category_a : m.category_b;
        ++result.votes[winner];
        result.margin_sums[winner] += std::abs(d);
    }

    // Majority vote; ties resolved by margin sum, then training-size prior,
    // then category order.
    int best_votes = -1;
    for (std::size_t cat = 0; cat < k; ++cat) best_votes = std::max(best_votes, result.votes[cat]);

    std::vector<std::size_t> tied;
    for (std::size_t cat = 0; cat < k; ++cat) {
        if (result.votes[cat] == best_votes) tied.push_back(cat);
    }
    if (tied.size() == 1) {
        result.category = tied[0];
        result.tie_break = TieBreak::None;
        return result;
    }

    double best_margin = -1.0;
    for (const auto cat : tied) best_margin = std::max(best_margin, result.margin_sums[cat]);
    std::vector<std::size_t> margin_tied;
    for (const auto cat : tied) {
        if (result.margin_sums[cat] == best_margin) margin_tied.push_back(cat);
    }
    if (margin_tied.size() == 1) {
        result.category = margin_tied[0];
        result.tie_break = TieBreak::MarginSum;
        return result;
    }

    std::uint64_t best_count = 0;
    for (const auto cat : margin_tied) best_count = std::max(best_count, model.train_counts[cat]);
    std::vector<std::size_t> count_tied;
    for (const auto cat : margin_tied) {
        if (model.train_counts[cat] == best_count) count_tied.push_back(cat);
    }
    if (count_tied.size() == 1) {
        result.category = count_tied[0];
        result.tie_break = TieBreak::TrainCount;
        return result;
    }

    result.category = count_tied.front();  // smallest index wins
    result.tie_break = TieBreak::CategoryOrder;
    return result;
}

}  // namespace txm
