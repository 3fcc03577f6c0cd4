#include "tmkg/text.hpp"

#include <cctype>
#include <cmath>

namespace tmkg {

std::int64_t bucket_number(double v) {
  return static_cast<std::int64_t>(std::floor(v));
}

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  std::size_t i = 0;
  const auto alpha = [](char c) {
    return std::isalpha(static_cast<unsigned char>(c)) != 0;
  };
  const auto digit = [](char c) {
    return std::isdigit(static_cast<unsigned char>(c)) != 0;
  };
  const auto alnum = [&](char c) { return alpha(c) || digit(c); };
  while (i < text.size()) {
    const char c = text[i];
    if (alpha(c)) {
      std::string word;
      while (i < text.size() && alnum(text[i])) {
        word.push_back(static_cast<char>(
            std::tolower(static_cast<unsigned char>(text[i]))));
        ++i;
      }
      tokens.push_back(std::move(word));
    } else if (digit(c)) {
      const std::size_t start = i;
      while (i < text.size() && digit(text[i])) {
        ++i;
      }
      if (i + 1 < text.size() && text[i] == '.' && digit(text[i + 1])) {
        ++i;
        while (i < text.size() && digit(text[i])) {
          ++i;
        }
      }
      const double value = std::stod(std::string(text.substr(start, i - start)));
      tokens.push_back(std::to_string(bucket_number(value)));
    } else {
      ++i;
    }
  }
  return tokens;
}

std::map<std::string, double> term_frequencies(std::string_view text) {
  std::map<std::string, double> tf;
  for (auto& token : tokenize(text)) {
    tf[token] += 1.0;
  }
  return tf;
}

double text_cosine(std::string_view a, std::string_view b) {
  const auto ta = term_frequencies(a);
  const auto tb = term_frequencies(b);
  if (ta.empty() && tb.empty()) {
    return 1.0;
  }
  double ab = 0.0;
  for (const auto& [token, weight] : ta) {
    if (auto it = tb.find(token); it != tb.end()) {
      ab += weight * it->second;
    }
  }
  double na = 0.0;
  for (const auto& [token, weight] : ta) {
    na += weight * weight;
  }
  double nb = 0.0;
  for (const auto& [token, weight] : tb) {
    nb += weight * weight;
  }
  if (na == 0.0 || nb == 0.0) {
    return 0.0;
  }
  return ab / (std::sqrt(na) * std::sqrt(nb));
}

}  // namespace tmkg
