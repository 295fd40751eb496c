#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "txm/lexicon.hpp"
#include "txm/preprocess.hpp"
#include "txm/types.hpp"

namespace txm {

struct FeatureGroups {
    bool lexica = true;
    bool amount = true;
    bool date = true;
    bool word_ngrams = true;  // always on; the text baseline
    bool char_ngrams = true;

    static FeatureGroups all() { return {}; }
    static FeatureGroups only_words() { return {false, false, false, true, false}; }
    bool operator==(const FeatureGroups&) const = default;
};

struct NgramOrders {
    int lo = 1;
    int hi = 1;
    bool operator==(const NgramOrders&) const = default;
};

// Sparse vector; entries sorted by feature index, indices unique.
struct FeatureVector {
    std::vector<std::pair<std::uint32_t, double>> entries;
};

// Word n-grams over the lowercase content tokens (placeholders and name tags
// dropped, the sequence closing up), one space-joined string per n-gram,
// every order in [lo, hi], with multiplicity.
std::vector<std::string> word_ngrams(const PreprocessedText& text, NgramOrders orders);

// Character n-grams over the raw description: lowercased, punctuation turned
// into spaces, whitespace runs collapsed, ends trimmed; windows slide over
// codepoints and include the spaces.
std::vector<std::string> char_ngrams(std::string_view raw_description, NgramOrders orders);

struct AmountFeatures {
    bool income = false;  // amount >= 0
    int bucket = 0;       // 0..edges.size(); |amount| in [0,e0], (e0,e1], ..., (eN,inf)
};
AmountFeatures amount_features(double amount, const std::vector<double>& edges);

// One indicator per window: 1 iff the day falls within the last M days of
// its month. Nested by construction (last 5 implies last 10, ...).
std::vector<int> date_features(const Date& date, const std::vector<int>& windows);

// Frozen feature space: explicit sorted vocabularies (no hashing), dense
// disjoint index ranges per enabled group. Unseen n-grams at inference are
// ignored.
struct VectorizerModel {
    std::map<std::string, std::uint32_t> word_vocab;
    std::map<std::string, std::uint32_t> char_vocab;
    Lexicon lexicon;
    std::vector<double> amount_edges;
    std::vector<int> date_windows;
    CategorySet categories;
    FeatureGroups groups;
    NgramOrders word_orders{1, 4};
    NgramOrders char_orders{3, 5};

    // Dense layout, recomputed by assign_layout().
    std::uint32_t lexica_offset = 0;
    std::uint32_t amount_offset = 0;
    std::uint32_t date_offset = 0;
    std::uint32_t word_offset = 0;
    std::uint32_t char_offset = 0;
    std::uint32_t dimension = 0;

    void assign_layout();
};

VectorizerModel fit_vectorizer(const std::vector<TransactionRecord>& records,
                               const std::vector<PreprocessedText>& texts, Lexicon lexicon,
                               CategorySet categories, FeatureGroups groups,
                               NgramOrders word_orders, NgramOrders char_orders,
                               std::vector<double> amount_edges, std::vector<int> date_windows);

// Lexicon counts stay raw, meta features are indicators, and each n-gram
// count sub-vector is Euclidean-normalized (zero vectors stay zero).
FeatureVector vectorize(const VectorizerModel& model, const TransactionRecord& record,
                        const PreprocessedText& text);

}  // namespace txm
