#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace txm::csv {

// Semicolon-separated values, double-quote quoting with "" escapes, one
// record per line. Descriptions are short single-line texts, so embedded
// newlines are not supported.
std::vector<std::string> split_line(const std::string& line, std::size_t line_no);
std::string join_line(const std::vector<std::string>& fields);

}  // namespace txm::csv
