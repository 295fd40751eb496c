#pragma once

#include <cstdint>
#include <filesystem>
#include <utility>
#include <vector>

#include "txm/types.hpp"

namespace txm {

// The fifteen standard transaction categories, in their canonical order.
CategorySet default_categories();

// CSV ingestion. Header `id;description;amount;date;category` (column order
// free, extra columns ignored, category column optional for unlabeled files).
// Amounts accept both '.' and ',' decimal separators and a trailing currency
// sign; dates are ISO-8601 with an optional time-of-day that is dropped.
Dataset load_dataset(const std::filesystem::path& path, const CategorySet& categories);
void save_dataset(const Dataset& dataset, const std::filesystem::path& path);

// Field-level parsers, exposed for streaming consumers.
double parse_amount(const std::string& raw, std::size_t line_no);
Date parse_date(const std::string& raw, std::size_t line_no);

// Uniform random partition without replacement; |train| = round(fraction*N).
// Identical seed, identical partition.
std::pair<Dataset, Dataset> split_dataset(const Dataset& dataset, double train_fraction,
                                          std::uint64_t seed);

// ---------------------------------------------------------------------------
// Seeded synthetic corpus generation. Templates carry {merchant}, {name},
// {month} and {digits} slots; every generated description additionally ends
// with a unique serial token so distinct fresh records never collide as
// token sets. A duplicate_rate fraction of each category is emitted as
// near-copies (token-set-preserving perturbations) of a few popular records
// of that category, which keeps the skippable fraction stable under random
// subsampling.

struct CategoryTemplates {
    std::vector<std::string> templates;
    std::vector<std::string> merchants;
    double amount_lo = -150.0;
    double amount_hi = -1.0;
};

struct SynthConfig {
    CategorySet categories;
    std::vector<CategoryTemplates> category_templates;  // aligned with categories
    std::vector<int> records_per_category;              // aligned; all > 0
    double duplicate_rate = 0.0;                        // in [0, 1]
    std::uint64_t seed = 1;
    std::vector<std::string> name_pool;  // fills {name}; matches the shipped gazetteer

    void validate() const;  // throws ConfigError
};

// Spanish-flavored templates for the default categories.
SynthConfig default_synth_config(int records_per_category, double duplicate_rate,
                                 std::uint64_t seed);
// Strictly category-disjoint vocabulary; every class is linearly separable
// from text alone.
SynthConfig disjoint_synth_config(int records_per_category, double duplicate_rate,
                                  std::uint64_t seed);

Dataset generate_synthetic(const SynthConfig& config);

}  // namespace txm
