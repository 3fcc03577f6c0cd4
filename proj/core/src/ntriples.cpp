#include "tmkg/ntriples.hpp"

#include <algorithm>
#include <cctype>
#include <optional>
#include <vector>

#include "tmkg/errors.hpp"

namespace tmkg {
namespace {

std::string escape_literal(std::string_view lexical) {
  std::string out;
  out.reserve(lexical.size());
  for (char c : lexical) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

// Cursor over one triple line.
struct LineScanner {
  std::string_view line;
  std::size_t pos = 0;
  std::size_t lineno;

  LineScanner(std::string_view l, std::size_t n) : line(l), lineno(n) {}

  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(what, lineno);
  }

  void skip_ws() {
    while (pos < line.size() &&
           (line[pos] == ' ' || line[pos] == '\t')) {
      ++pos;
    }
  }

  bool at_end() const { return pos >= line.size(); }

  char peek() const { return line[pos]; }

  Iri read_iri() {
    if (at_end() || line[pos] != '<') {
      fail("expected '<' to open an IRI");
    }
    const auto close = line.find('>', pos + 1);
    if (close == std::string_view::npos) {
      fail("unterminated IRI");
    }
    Iri iri(line.substr(pos + 1, close - pos - 1));
    if (!is_absolute_iri(iri)) {
      fail("not an absolute IRI: " + iri);
    }
    pos = close + 1;
    return iri;
  }

  std::string read_quoted() {
    // caller checked the opening quote
    ++pos;
    std::string out;
    while (pos < line.size()) {
      const char c = line[pos];
      if (c == '"') {
        ++pos;
        return out;
      }
      if (c == '\\') {
        if (pos + 1 >= line.size()) {
          fail("dangling escape in literal");
        }
        const char e = line[pos + 1];
        switch (e) {
          case '"': out.push_back('"'); break;
          case '\\': out.push_back('\\'); break;
          case 'n': out.push_back('\n'); break;
          case 'r': out.push_back('\r'); break;
          case 't': out.push_back('\t'); break;
          default: fail(std::string("unsupported escape \\") + e);
        }
        pos += 2;
        continue;
      }
      out.push_back(c);
      ++pos;
    }
    fail("unterminated string literal");
  }

  Term read_object() {
    if (at_end()) {
      fail("missing object term");
    }
    if (peek() == '<') {
      return Term::iri(read_iri());
    }
    if (peek() == '"') {
      std::string lexical = read_quoted();
      if (pos + 1 >= line.size() || line[pos] != '^' || line[pos + 1] != '^') {
        fail("literal is missing its ^^<datatype>");
      }
      pos += 2;
      Iri datatype = read_iri();
      try {
        return Term::literal(std::move(lexical), std::move(datatype));
      } catch (const std::invalid_argument& e) {
        fail(e.what());
      }
    }
    fail("object must be an IRI or a typed literal");
  }
};

std::optional<Triple> parse_line(std::string_view line, std::size_t lineno) {
  // tolerate CRLF input
  if (!line.empty() && line.back() == '\r') {
    line.remove_suffix(1);
  }
  LineScanner sc(line, lineno);
  sc.skip_ws();
  if (sc.at_end() || sc.peek() == '#') {
    return std::nullopt;
  }
  Triple t;
  t.s = sc.read_iri();
  sc.skip_ws();
  t.p = sc.read_iri();
  sc.skip_ws();
  t.o = sc.read_object();
  sc.skip_ws();
  if (sc.at_end() || sc.peek() != '.') {
    sc.fail("triple line must end with '.'");
  }
  ++sc.pos;
  sc.skip_ws();
  if (!sc.at_end()) {
    sc.fail("trailing content after '.'");
  }
  return t;
}

void import_into(Graph& graph, std::string_view text) {
  std::size_t lineno = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    if (start == text.size()) {
      break;
    }
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) {
      end = text.size();
    }
    ++lineno;
    if (auto t = parse_line(text.substr(start, end - start), lineno)) {
      try {
        graph.insert(std::move(*t));
      } catch (const std::invalid_argument& e) {
        throw ParseError(e.what(), lineno);
      }
    }
    start = end + 1;
  }
}

}  // namespace

std::string render_term(const Term& term) {
  if (term.is_iri()) {
    return "<" + term.value + ">";
  }
  return "\"" + escape_literal(term.value) + "\"^^<" + term.datatype + ">";
}

std::string render_triple(const Triple& triple) {
  return "<" + triple.s + "> <" + triple.p + "> " + render_term(triple.o) + " .";
}

std::string export_graph(const Graph& graph) {
  std::vector<std::string> lines;
  lines.reserve(graph.size());
  for (const Triple& t : graph.triples()) {
    lines.push_back(render_triple(t));
  }
  std::sort(lines.begin(), lines.end());
  std::string out;
  for (const auto& line : lines) {
    out += line;
    out += '\n';
  }
  return out;
}

Graph import_graph(std::string_view text) {
  Graph g;
  import_into(g, text);
  return g;
}

void import_background(Graph& graph, std::string_view text) {
  import_into(graph, text);
}

}  // namespace tmkg
