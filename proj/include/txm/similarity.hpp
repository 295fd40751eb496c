#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "txm/preprocess.hpp"

namespace txm {

// Token-set signature of a description: the lowercase content tokens, plus a
// single "#pn#" marker when any name tag is present. Placeholders and the
// name-tag suffixes themselves carry no signature text.
struct SetSignature {
    std::set<std::string> tokens;

    static SetSignature from_text(const PreprocessedText& text);
    bool operator==(const SetSignature&) const = default;
};

// |a∩b| / |a∪b|; two empty signatures compare as 1.0 so that all-stopword
// descriptions deduplicate instead of misbehaving.
double jaccard(const SetSignature& a, const SetSignature& b);

struct AdmitResult {
    bool admitted = true;
    std::size_t match_index = 0;  // set when skipped: the first matching entry
};

struct FirstStageHit {
    std::size_t category = 0;
    double similarity = 0.0;
};

// Exact linear-scan store of admitted training signatures. Build is
// sequential (each admission depends on the previous ones); once frozen,
// first_stage queries are pure.
class SimilarityStore {
public:
    struct Entry {
        SetSignature signature;
        std::size_t category = 0;
    };

    explicit SimilarityStore(double threshold = 0.85);

    double threshold() const { return threshold_; }
    std::size_t size() const { return entries_.size(); }
    const std::vector<Entry>& entries() const { return entries_; }

    // Skips when some stored entry of the same category exceeds the
    // threshold (strict >). A near-duplicate of a different category is
    // always admitted.
    AdmitResult admit_training(SetSignature signature, std::size_t category);

    // Best entry above the threshold; ties go to the earliest insertion.
    std::optional<FirstStageHit> first_stage(const SetSignature& signature) const;

    // Deserialization support.
    void restore_entry(SetSignature signature, std::size_t category);

private:
    std::vector<Entry> entries_;
    double threshold_;
};

}  // namespace txm
