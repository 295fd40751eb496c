#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace txm::utf8 {

// Decodes UTF-8 into codepoints; malformed bytes become U+FFFD.
std::vector<char32_t> decode(std::string_view s);

void append(std::string& out, char32_t cp);
std::string encode(const std::vector<char32_t>& cps);

// Lowercasing covers ASCII, Latin-1 Supplement and Latin Extended-A, which
// is all the shipped Spanish gazetteer needs; other codepoints pass through.
char32_t to_lower(char32_t cp);
std::string to_lower_copy(std::string_view s);

bool is_space(char32_t cp);
bool is_digit(char32_t cp);
bool is_letter(char32_t cp);

}  // namespace txm::utf8
