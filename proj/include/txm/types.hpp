#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "txm/errors.hpp"

namespace txm {

// Calendar date. Source files may carry a time-of-day (and offset); only the
// date survives parsing, since the downstream features use day-of-month only.
struct Date {
    int year = 1970;
    int month = 1;
    int day = 1;

    static bool leap_year(int y) {
        return (y % 4 == 0 && y % 100 != 0) || (y % 400 == 0);
    }
    static int days_in_month(int year, int month) {
        static constexpr int kDays[12] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
        if (month == 2 && leap_year(year)) return 29;
        return kDays[month - 1];
    }
    bool valid() const {
        return month >= 1 && month <= 12 && day >= 1 && day <= days_in_month(year, month);
    }
    std::string iso() const;

    auto operator<=>(const Date&) const = default;
};

struct TransactionRecord {
    std::string id;
    std::string description;
    double amount = 0.0;  // euros, signed; zero allowed
    Date date;
    std::optional<std::string> category;
};

// Ordered set of class labels. The order is fixed when the set is built and
// is shared verbatim by every artifact (store, lexicon, vectorizer, models)
// trained against it.
class CategorySet {
public:
    CategorySet() = default;
    explicit CategorySet(std::vector<std::string> labels);

    const std::vector<std::string>& labels() const { return labels_; }
    std::size_t size() const { return labels_.size(); }
    const std::string& label(std::size_t i) const { return labels_[i]; }
    std::optional<std::size_t> index_of(const std::string& label) const;

    bool operator==(const CategorySet&) const = default;

private:
    std::vector<std::string> labels_;
};

struct Dataset {
    std::vector<TransactionRecord> records;
    CategorySet categories;
};

}  // namespace txm
