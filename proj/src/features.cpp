#include "txm/features.hpp"

#include <algorithm>
#include <cmath>

#include "txm/errors.hpp"
#include "txm/utf8.hpp"

namespace txm {

std::vector<std::string> word_ngrams(const PreprocessedText& text, NgramOrders orders) {
    const auto words = text.content_lower();
    std::vector<std::string> out;
    for (int n = orders.lo; n <= orders.hi; ++n) {
        if (n <= 0) continue;
        const auto un = static_cast<std::size_t>(n);
        if (words.size() < un) break;
        for (std::size_t i = 0; i + un <= words.size(); ++i) {
            std::string gram = words[i];
            for (std::size_t j = 1; j < un; ++j) {
                gram += ' ';
                gram += words[i + j];
            }
            out.push_back(std::move(gram));
        }
    }
    return out;
}

std::vector<std::string> char_ngrams(std::string_view raw_description, NgramOrders orders) {
    // Lowercase, punctuation to spaces, single spaces, trimmed.
    std::vector<char32_t> cleaned;
    bool pending_space = false;
    for (char32_t cp : utf8::decode(raw_description)) {
        if (utf8::is_letter(cp) || utf8::is_digit(cp)) {
            if (pending_space && !cleaned.empty()) cleaned.push_back(U' ');
            pending_space = false;
            cleaned.push_back(utf8::to_lower(cp));
        } else {
            pending_space = true;
        }
    }

    std::vector<std::string> out;
    for (int n = orders.lo; n <= orders.hi; ++n) {
        if (n <= 0) continue;
        const auto un = static_cast<std::size_t>(n);
        if (cleaned.size() < un) continue;
        for (std::size_t i = 0; i + un <= cleaned.size(); ++i) {
            std::string gram;
            for (std::size_t j = 0; j < un; ++j) utf8::append(gram, cleaned[i + j]);
            out.push_back(std::move(gram));
        }
    }
    return out;
}

AmountFeatures amount_features(double amount, const std::vector<double>& edges) {
    AmountFeatures f;
    f.income = amount >= 0.0;  // zero counts as income
    const double mag = std::abs(amount);
    f.bucket = static_cast<int>(edges.size());
    for (std::size_t i = 0; i < edges.size(); ++i) {
        if (mag <= edges[i]) {
            f.bucket = static_cast<int>(i);
            break;
        }
    }
    return f;
}

std::vector<int> date_features(const Date& date, const std::vector<int>& windows) {
    const int month_days = Date::days_in_month(date.year, date.month);
    std::vector<int> out(windows.size(), 0);
    for (std::size_t i = 0; i < windows.size(); ++i) {
        out[i] = date.day > month_days - windows[i] ? 1 : 0;
    }
    return out;
}

void VectorizerModel::assign_layout() {
    std::uint32_t next = 0;
    auto take = [&next](bool enabled, std::size_t width) {
        const std::uint32_t off = next;
        if (enabled) next += static_cast<std::uint32_t>(width);
        return off;
    };
    lexica_offset = take(groups.lexica, 2 * categories.size());
    amount_offset = take(groups.amount, amount_edges.size() + 1 + 1);  // buckets + sign
    date_offset = take(groups.date, date_windows.size());
    word_offset = take(groups.word_ngrams, word_vocab.size());
    char_offset = take(groups.char_ngrams, char_vocab.size());
    dimension = next;
}

VectorizerModel fit_vectorizer(const std::vector<TransactionRecord>& records,
                               const std::vector<PreprocessedText>& texts, Lexicon lexicon,
                               CategorySet categories, FeatureGroups groups,
                               NgramOrders word_orders, NgramOrders char_orders,
                               std::vector<double> amount_edges, std::vector<int> date_windows) {
    if (records.empty() || records.size() != texts.size()) {
        throw DataError("vectorizer requires a non-empty training set");
    }
    if (!groups.word_ngrams) throw ConfigError("the word n-gram group cannot be disabled");
    for (std::size_t i = 1; i < amount_edges.size(); ++i) {
        if (!(amount_edges[i - 1] < amount_edges[i])) {
            throw ConfigError("amount edges must be strictly ascending");
        }
    }

    VectorizerModel model;
    model.lexicon = std::move(lexicon);
    model.categories = std::move(categories);
    model.groups = groups;
    model.word_orders = word_orders;
    model.char_orders = char_orders;
    model.amount_edges = std::move(amount_edges);
    model.date_windows = std::move(date_windows);

    // std::map keeps the vocabularies sorted; indices are their rank.
    for (std::size_t i = 0; i < records.size(); ++i) {
        for (auto& g : word_ngrams(texts[i], word_orders)) model.word_vocab.emplace(std::move(g), 0);
        if (groups.char_ngrams) {
            for (auto& g : char_ngrams(records[i].description, char_orders)) {
                model.char_vocab.emplace(std::move(g), 0);
            }
        }
    }
    std::uint32_t idx = 0;
    for (auto& [gram, id] : model.word_vocab) id = idx++;
    idx = 0;
    for (auto& [gram, id] : model.char_vocab) id = idx++;

    model.assign_layout();
    return model;
}

namespace {

// Accumulates n-gram counts against a vocabulary, L2-normalizes, and appends.
void append_normalized_counts(const std::vector<std::string>& grams,
                              const std::map<std::string, std::uint32_t>& vocab,
                              std::uint32_t offset,
                              std::vector<std::pair<std::uint32_t, double>>& entries) {
    std::map<std::uint32_t, double> counts;
    for (const auto& g : grams) {
        auto it = vocab.find(g);
        if (it != vocab.end()) ++counts[it->second];
    }
    if (counts.empty()) return;
    double norm_sq = 0.0;
    for (const auto& [id, c] : counts) norm_sq += c * c;
    const double inv = 1.0 / std::sqrt(norm_sq);
    for (const auto& [id, c] : counts) entries.emplace_back(offset + id, c * inv);
}

}  // namespace

FeatureVector vectorize(const VectorizerModel& model, const TransactionRecord& record,
                        const PreprocessedText& text) {
    FeatureVector vec;
    auto& entries = vec.entries;

    if (model.groups.lexica) {
        const auto hits = lexicon_counts(text, model.lexicon);
        for (std::size_t c = 0; c < hits.size(); ++c) {
            const auto base = model.lexica_offset + static_cast<std::uint32_t>(2 * c);
            if (hits[c].unigrams > 0) entries.emplace_back(base, hits[c].unigrams);
            if (hits[c].bigrams > 0) entries.emplace_back(base + 1, hits[c].bigrams);
        }
    }
    if (model.groups.amount) {
        const auto af = amount_features(record.amount, model.amount_edges);
        entries.emplace_back(model.amount_offset + static_cast<std::uint32_t>(af.bucket), 1.0);
        if (af.income) {
            entries.emplace_back(
                model.amount_offset + static_cast<std::uint32_t>(model.amount_edges.size() + 1),
                1.0);
        }
    }
    if (model.groups.date) {
        const auto df = date_features(record.date, model.date_windows);
        for (std::size_t i = 0; i < df.size(); ++i) {
            if (df[i]) entries.emplace_back(model.date_offset + static_cast<std::uint32_t>(i), 1.0);
        }
    }
    append_normalized_counts(word_ngrams(text, model.word_orders), model.word_vocab,
                             model.word_offset, entries);
    if (model.groups.char_ngrams) {
        append_normalized_counts(char_ngrams(record.description, model.char_orders),
                                 model.char_vocab, model.char_offset, entries);
    }

    std::sort(entries.begin(), entries.end());
    return vec;
}

}  // namespace txm
