#include "txm/lexicon.hpp"

#include <map>

#include "txm/errors.hpp"
#include "txm/utf8.hpp"

namespace txm {

namespace {

// Letters only, lowercased; codepoint count decides the single-letter drop.
std::string letters_only_lower(const std::string& token, std::size_t& letter_count) {
    std::string out;
    letter_count = 0;
    for (char32_t cp : utf8::decode(token)) {
        if (utf8::is_letter(cp)) {
            utf8::append(out, utf8::to_lower(cp));
            ++letter_count;
        }
    }
    return out;
}

}  // namespace

std::vector<std::string> lexicon_terms(const PreprocessedText& text) {
    std::vector<std::string> terms;
    for (const auto& tok : text.tokens) {
        if (tok.kind != TokenKind::Content) continue;
        std::size_t letters = 0;
        std::string word = letters_only_lower(tok.text, letters);
        if (letters >= 2) terms.push_back(std::move(word));
    }
    return terms;
}

Lexicon build_lexica(const std::vector<PreprocessedText>& texts,
                     const std::vector<std::size_t>& labels, std::size_t category_count,
                     int unigram_min, int bigram_min) {
    if (texts.size() != labels.size()) throw DataError("texts and labels length mismatch");

    std::vector<std::map<std::string, int>> uni_counts(category_count);
    std::vector<std::map<std::string, int>> bi_counts(category_count);
    for (std::size_t i = 0; i < texts.size(); ++i) {
        const std::size_t cat = labels[i];
        if (cat >= category_count) throw DataError("label index out of range");
        const auto terms = lexicon_terms(texts[i]);
        for (const auto& t : terms) ++uni_counts[cat][t];
        for (std::size_t j = 0; j + 1 < terms.size(); ++j) {
            ++bi_counts[cat][terms[j] + " " + terms[j + 1]];
        }
    }

    Lexicon lex;
    lex.unigram_min = unigram_min;
    lex.bigram_min = bigram_min;
    lex.per_category.resize(category_count);
    for (std::size_t c = 0; c < category_count; ++c) {
        for (const auto& [word, n] : uni_counts[c]) {
            if (n >= unigram_min) lex.per_category[c].unigrams.insert(word);
        }
        for (const auto& [pair, n] : bi_counts[c]) {
            if (n >= bigram_min) lex.per_category[c].bigrams.insert(pair);
        }
    }
    return lex;
}

std::vector<LexiconHits> lexicon_counts(const PreprocessedText& text, const Lexicon& lexicon) {
    std::vector<LexiconHits> hits(lexicon.per_category.size());
    const auto terms = lexicon_terms(text);
    for (std::size_t c = 0; c < lexicon.per_category.size(); ++c) {
        const auto& cat = lexicon.per_category[c];
        for (const auto& t : terms) {
            if (cat.unigrams.count(t) > 0) ++hits[c].unigrams;
        }
        for (std::size_t j = 0; j + 1 < terms.size(); ++j) {
            if (cat.bigrams.count(terms[j] + " " + terms[j + 1]) > 0) ++hits[c].bigrams;
        }
    }
    return hits;
}

}  // namespace txm
