#include "txm/similarity.hpp"

#include "txm/errors.hpp"
#include "txm/utf8.hpp"

namespace txm {

namespace {
constexpr const char* kNameMarker = "#pn#";
}

SetSignature SetSignature::from_text(const PreprocessedText& text) {
    SetSignature sig;
    for (const auto& tok : text.tokens) {
        if (tok.kind == TokenKind::Content) {
            sig.tokens.insert(utf8::to_lower_copy(tok.text));
        }
    }
    if (text.has_name_tag()) sig.tokens.insert(kNameMarker);
    return sig;
}

double jaccard(const SetSignature& a, const SetSignature& b) {
    if (a.tokens.empty() && b.tokens.empty()) return 1.0;
    std::size_t inter = 0;
    auto ia = a.tokens.begin();
    auto ib = b.tokens.begin();
    while (ia != a.tokens.end() && ib != b.tokens.end()) {
        if (*ia < *ib) {
            ++ia;
        } else if (*ib < *ia) {
            ++ib;
        } else {
            ++inter;
            ++ia;
            ++ib;
        }
    }
    const std::size_t uni = a.tokens.size() + b.tokens.size() - inter;
    return static_cast<double>(inter) / static_cast<double>(uni);
}

SimilarityStore::SimilarityStore(double threshold) : threshold_(threshold) {
    if (!(threshold > 0.0 && threshold <= 1.0)) {
        throw ConfigError("similarity threshold must lie in (0, 1]");
    }
}

AdmitResult SimilarityStore::admit_training(SetSignature signature, std::size_t category) {
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        if (entries_[i].category == category &&
            jaccard(entries_[i].signature, signature) > threshold_) {
            return {false, i};
        }
    }
    entries_.push_back({std::move(signature), category});
    return {true, entries_.size() - 1};
}

std::optional<FirstStageHit> SimilarityStore::first_stage(const SetSignature& signature) const {
    std::optional<FirstStageHit> best;
    for (const auto& entry : entries_) {
        const double sim = jaccard(entry.signature, signature);
        if (sim > threshold_ && (!best || sim > best->similarity)) {
            best = FirstStageHit{entry.category, sim};
        }
    }
    return best;
}

void SimilarityStore::restore_entry(SetSignature signature, std::size_t category) {
    entries_.push_back({std::move(signature), category});
}

}  // namespace txm
