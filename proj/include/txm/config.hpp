#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "txm/eval.hpp"
#include "txm/pipeline.hpp"

namespace txm {

// Flat key=value configuration. Every default named by the pipeline modules
// is reachable here; flag overrides win over file values, and the canonical
// echo is embedded in reports and bundles so they stay self-describing.
struct AppConfig {
    double similarity_threshold = 0.85;
    int lexicon_unigram_min = 5;
    int lexicon_bigram_min = 3;
    FeatureGroups groups;
    NgramOrders word_orders{1, 4};
    NgramOrders char_orders{3, 5};
    std::vector<double> amount_edges{20, 60, 200, 800, 1500, 3000};
    std::vector<int> date_windows{5, 10, 20, 25};
    double svm_c = 1.0;
    double svm_tolerance = 1e-4;
    int svm_max_epochs = 1000;
    std::uint64_t svm_seed = 1;

    void set(const std::string& key, const std::string& value);  // throws ConfigError
    void validate() const;
    std::string echo() const;  // canonical key=value text, sorted keys
    PipelineConfig pipeline() const;

    static AppConfig from_file(const std::filesystem::path& path);
};

// "word+lex+amount+date" / "all" -> feature group set.
FeatureGroups parse_groups(const std::string& text);
std::string format_groups(const FeatureGroups& groups);

// "1-4" or "3" -> inclusive order range.
NgramOrders parse_orders(const std::string& text);

// "0.3,0.4,0.6,0.7" -> fractions.
std::vector<double> parse_fraction_list(const std::string& text);

// "word,word+lex,all" -> ablation stages.
std::vector<ExperimentStage> parse_stages(const std::string& text);

}  // namespace txm
