#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "txm/corpus.hpp"
#include "txm/features.hpp"
#include "txm/lexicon.hpp"
#include "txm/preprocess.hpp"
#include "txm/similarity.hpp"
#include "txm/svm.hpp"
#include "txm/types.hpp"

namespace txm {

inline constexpr std::uint32_t kBundleFormatVersion = 1;

struct PipelineConfig {
    double similarity_threshold = 0.85;
    int lexicon_unigram_min = 5;
    int lexicon_bigram_min = 3;
    FeatureGroups groups;
    NgramOrders word_orders{1, 4};
    NgramOrders char_orders{3, 5};
    std::vector<double> amount_edges{20, 60, 200, 800, 1500, 3000};
    std::vector<int> date_windows{5, 10, 20, 25};
    TrainConfig svm;
    std::string echo;  // canonical configuration text, embedded in reports and bundles
};

struct TrainReport {
    std::size_t total = 0;
    std::size_t admitted = 0;
    std::size_t skipped = 0;
    std::vector<std::size_t> admitted_per_category;
    std::vector<std::pair<std::size_t, std::size_t>> lexicon_sizes;  // (unigrams, bigrams)
    std::size_t feature_dimension = 0;
    std::size_t pair_models = 0;

    double reduction_pct() const {
        return total == 0 ? 0.0
                          : 100.0 * static_cast<double>(skipped) / static_cast<double>(total);
    }
};

// Everything needed to classify a raw record end-to-end. The gazetteer files
// themselves stay external; their digests detect drift at load time.
struct ModelBundle {
    std::uint32_t format_version = kBundleFormatVersion;
    std::uint64_t stopword_digest = 0;
    std::uint64_t names_digest = 0;
    CategorySet categories;
    SimilarityStore store;
    Lexicon lexicon;
    VectorizerModel vectorizer;
    OvoModel ovo;
    std::string config_echo;
};

enum class Stage { SimilarityHit, SvmVote };
const char* stage_name(Stage stage);

struct Classification {
    std::string category;
    Stage stage = Stage::SvmVote;
    double confidence = 0.0;  // similarity for stage 1, vote fraction for stage 2
};

// Training flow: preprocess -> similarity admission in dataset order ->
// lexica + vectorizer + one-vs-one models fitted on the admitted subset only.
ModelBundle train_pipeline(const Dataset& train, const GazetteerConfig& gazetteer,
                           const PipelineConfig& config, TrainReport* report = nullptr);

// Two-stage classification: similarity hit short-circuits, misses go to the
// voted SVM.
Classification classify(const ModelBundle& bundle, const GazetteerConfig& gazetteer,
                        const TransactionRecord& record);

void save_bundle(const ModelBundle& bundle, const std::filesystem::path& path);
ModelBundle load_bundle(const std::filesystem::path& path);

std::string serialize_bundle(const ModelBundle& bundle);
ModelBundle deserialize_bundle(std::string_view bytes);

// Non-fatal drift warnings between a loaded bundle and the gazetteer in use.
std::vector<std::string> gazetteer_warnings(const ModelBundle& bundle,
                                            const GazetteerConfig& gazetteer);

}  // namespace txm
