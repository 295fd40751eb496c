#pragma once

#include <set>
#include <string>
#include <vector>

#include "txm/preprocess.hpp"
#include "txm/types.hpp"

namespace txm {

// Per-category sets of frequent unigrams and adjacent bigrams, induced from
// preprocessed training descriptions. Entries are lowercase, purely
// alphabetic and at least two letters long; bigrams are stored space-joined.
struct Lexicon {
    struct PerCategory {
        std::set<std::string> unigrams;
        std::set<std::string> bigrams;
    };

    std::vector<PerCategory> per_category;  // aligned with the CategorySet
    int unigram_min = 5;
    int bigram_min = 3;
};

// The token stream the lexicon counts over: content tokens with every
// non-letter character removed, lowercased; emptied and single-letter tokens
// are dropped, as are placeholder and name-tag positions, and the sequence
// closes up so bigram adjacency spans the removals.
std::vector<std::string> lexicon_terms(const PreprocessedText& text);

Lexicon build_lexica(const std::vector<PreprocessedText>& texts,
                     const std::vector<std::size_t>& labels, std::size_t category_count,
                     int unigram_min = 5, int bigram_min = 3);

struct LexiconHits {
    int unigrams = 0;
    int bigrams = 0;
};

// Occurrence counts (with multiplicity) of a text's terms in each category's
// lexicon.
std::vector<LexiconHits> lexicon_counts(const PreprocessedText& text, const Lexicon& lexicon);

}  // namespace txm
