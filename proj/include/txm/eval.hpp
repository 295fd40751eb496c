#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "txm/pipeline.hpp"
#include "txm/types.hpp"

namespace txm {

// One-vs-rest confusion tallies per category.
struct ConfusionCounts {
    struct PerClass {
        std::uint64_t tp = 0;
        std::uint64_t fp = 0;
        std::uint64_t tn = 0;
        std::uint64_t fn = 0;
    };
    std::vector<PerClass> per_class;
    std::uint64_t total = 0;
};

ConfusionCounts confusion(const std::vector<std::size_t>& predicted,
                          const std::vector<std::size_t>& gold, std::size_t category_count);

// Per-class precision/recall/F (zero when the denominator is zero) and their
// unweighted macro averages over all classes, zero-support ones included.
struct MetricsReport {
    struct PerClass {
        double precision = 0.0;
        double recall = 0.0;
        double f1 = 0.0;
        std::uint64_t support = 0;
    };
    std::vector<PerClass> per_class;
    double macro_precision = 0.0;
    double macro_recall = 0.0;
    double macro_f1 = 0.0;
};

MetricsReport metrics(const ConfusionCounts& counts);

// A named feature-group subset evaluated as one ablation stage.
struct ExperimentStage {
    std::string name;
    FeatureGroups groups;
};

// The incremental ablation ladder: words, +lexica, +amount+date, all.
std::vector<ExperimentStage> default_stages();

struct ExperimentRow {
    double split = 0.0;
    std::string stage;
    double p_mean = 0.0, p_std = 0.0;
    double r_mean = 0.0, r_std = 0.0;
    double f_mean = 0.0, f_std = 0.0;
    double reduction_mean = 0.0;  // percent
};

struct ExperimentTable {
    std::vector<ExperimentRow> rows;
    std::vector<double> splits;
    int samplings = 0;
    std::uint64_t seed = 0;
    std::string config_echo;

    std::string to_tsv() const;
    std::string to_json() const;
};

// Repeated random splits: for every split fraction and sampling, one full
// train/classify cycle per stage; the partition is shared across stages so
// the ablation isolates the feature effect.
ExperimentTable run_experiment(const Dataset& dataset, const GazetteerConfig& gazetteer,
                               const PipelineConfig& base_config,
                               const std::vector<double>& splits, int samplings,
                               const std::vector<ExperimentStage>& stages,
                               std::uint64_t seed_base);

}  // namespace txm
