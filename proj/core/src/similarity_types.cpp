#include "tmkg/similarity_types.hpp"

#include <stdexcept>
#include <string>

namespace tmkg {

std::string_view backend_name(Backend backend) {
  switch (backend) {
    case Backend::kStructural: return "structural";
    case Backend::kLexical: return "lexical";
    case Backend::kSemantic: return "semantic";
  }
  throw std::invalid_argument("unknown backend");
}

Backend backend_from_name(std::string_view name) {
  if (name == "structural") return Backend::kStructural;
  if (name == "lexical") return Backend::kLexical;
  if (name == "semantic") return Backend::kSemantic;
  throw std::invalid_argument("unknown backend: " + std::string(name));
}

}  // namespace tmkg
