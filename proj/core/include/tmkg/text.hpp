#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace tmkg {

// 1 m/s-granularity speed bucket: the integer interval the value falls in.
std::int64_t bucket_number(double v);

// Lowercased word and number tokens. Words are maximal alphanumeric runs
// starting with a letter; digit-led runs are read as decimal numbers
// (digits, optionally '.' digits) and replaced by their bucket, so
// "5.31 m/s" and "5.0 m/s" tokenize identically.
std::vector<std::string> tokenize(std::string_view text);

std::map<std::string, double> term_frequencies(std::string_view text);

// Cosine over term-frequency vectors; two empty texts count as identical.
double text_cosine(std::string_view a, std::string_view b);

}  // namespace tmkg
