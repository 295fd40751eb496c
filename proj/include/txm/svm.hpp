#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "txm/features.hpp"
#include "txm/types.hpp"

namespace txm {

// L1-loss soft-margin linear SVM, trained by dual coordinate descent over the
// box-constrained dual. The bias rides along as an implicit all-ones column,
// so the minimized objective is
//     0.5*(||w||^2 + b^2) + C * sum_i max(0, 1 - y_i*(w.x_i + b)).
struct TrainConfig {
    double c = 1.0;
    double tolerance = 1e-4;  // stop when the projected-gradient range falls below this
    int max_epochs = 1000;
    std::uint64_t seed = 1;
};

struct BinaryLinearModel {
    std::vector<double> weights;  // dense, dimension = feature-space dimension
    double bias = 0.0;
    std::uint32_t category_a = 0;  // positive decisions vote for category_a
    std::uint32_t category_b = 1;  // category_a precedes category_b in the CategorySet
};

struct TrainDiagnostics {
    std::vector<double> epoch_objective;       // primal objective after each epoch
    std::vector<double> epoch_dual_objective;  // dual objective; non-decreasing by construction
    int epochs = 0;
    bool converged = false;
};

BinaryLinearModel train_binary(const std::vector<FeatureVector>& x, const std::vector<int>& y,
                               std::size_t dimension, const TrainConfig& config,
                               TrainDiagnostics* diagnostics = nullptr);

// w.x + b
double decision(const BinaryLinearModel& model, const FeatureVector& x);

// The objective train_binary minimizes, for tests and diagnostics.
double primal_objective(const BinaryLinearModel& model, const std::vector<FeatureVector>& x,
                        const std::vector<int>& y, double c);

// One-vs-one decomposition: k(k-1)/2 pairwise models in canonical order
// (0,1), (0,2), ..., (k-2,k-1), combined by majority vote.
struct OvoModel {
    CategorySet categories;
    std::vector<BinaryLinearModel> models;
    std::vector<std::uint64_t> train_counts;  // per-category training sizes (tie-break prior)
    std::size_t dimension = 0;
};

OvoModel train_ovo(const std::vector<FeatureVector>& x, const std::vector<std::size_t>& labels,
                   const CategorySet& categories, std::size_t dimension,
                   const TrainConfig& config);

enum class TieBreak { None, MarginSum, TrainCount, CategoryOrder };
const char* tie_break_name(TieBreak tb);

struct VoteResult {
    std::size_t category = 0;
    std::vector<int> votes;          // per category; sums to k(k-1)/2
    std::vector<double> margin_sums; // sum of |margin| over the votes each category won
    TieBreak tie_break = TieBreak::None;
};

VoteResult predict(const OvoModel& model, const FeatureVector& x);

}  // namespace txm
