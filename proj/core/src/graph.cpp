#include "tmkg/graph.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

#include "tmkg/errors.hpp"
#include "tmkg/ontology.hpp"

namespace tmkg {

bool Graph::insert(Triple t) {
  if (!is_absolute_iri(t.s)) {
    throw std::invalid_argument("triple subject is not an absolute IRI: " + t.s);
  }
  if (!is_absolute_iri(t.p)) {
    throw std::invalid_argument("triple predicate is not an absolute IRI: " + t.p);
  }
  if (t.o.is_iri() && !is_absolute_iri(t.o.value)) {
    throw std::invalid_argument("triple object is not an absolute IRI: " + t.o.value);
  }
  auto [it, inserted] = triples_.insert(t);
  if (!inserted) {
    return false;
  }
  spo_[t.s][t.p].insert(t.o);
  pos_[t.p][t.o].insert(t.s);
  osp_[t.o][t.s].insert(t.p);
  propagate_types(t);
  return true;
}

void Graph::insert_all(const std::vector<Triple>& triples) {
  for (const auto& t : triples) {
    insert(t);
  }
}

void Graph::insert_all(const std::set<Triple>& triples) {
  for (const auto& t : triples) {
    insert(t);
  }
}

void Graph::propagate_types(const Triple& t) {
  if (t.p == rdf::type && t.o.is_iri()) {
    // x became an instance of C; add every D with C subClassOf D.
    std::vector<Iri> supers;
    if (auto cls = spo_.find(t.o.value); cls != spo_.end()) {
      if (auto sup = cls->second.find(rdfs::subClassOf); sup != cls->second.end()) {
        for (const Term& d : sup->second) {
          if (d.is_iri()) {
            supers.push_back(d.value);
          }
        }
      }
    }
    for (const auto& d : supers) {
      insert({t.s, rdf::type, Term::iri(d)});
    }
  }
  if (t.p == rdfs::subClassOf && t.o.is_iri()) {
    // C gained a superclass; retype all existing instances of C.
    std::vector<Iri> instances;
    if (auto ty = pos_.find(rdf::type); ty != pos_.end()) {
      if (auto inst = ty->second.find(Term::iri(t.s)); inst != ty->second.end()) {
        instances.assign(inst->second.begin(), inst->second.end());
      }
    }
    for (const auto& x : instances) {
      insert({x, rdf::type, t.o});
    }
  }
}

std::vector<Triple> Graph::find(const std::optional<Iri>& s, const std::optional<Iri>& p,
                                const std::optional<Term>& o) const {
  std::vector<Triple> out;
  if (s && p && o) {
    Triple t{*s, *p, *o};
    if (triples_.contains(t)) {
      out.push_back(std::move(t));
    }
  } else if (s && p) {
    if (auto it = spo_.find(*s); it != spo_.end()) {
      if (auto jt = it->second.find(*p); jt != it->second.end()) {
        for (const Term& obj : jt->second) {
          out.push_back({*s, *p, obj});
        }
      }
    }
  } else if (p && o) {
    if (auto it = pos_.find(*p); it != pos_.end()) {
      if (auto jt = it->second.find(*o); jt != it->second.end()) {
        for (const Iri& subj : jt->second) {
          out.push_back({subj, *p, *o});
        }
      }
    }
  } else if (s && o) {
    if (auto it = osp_.find(*o); it != osp_.end()) {
      if (auto jt = it->second.find(*s); jt != it->second.end()) {
        for (const Iri& pred : jt->second) {
          out.push_back({*s, pred, *o});
        }
      }
    }
  } else if (s) {
    if (auto it = spo_.find(*s); it != spo_.end()) {
      for (const auto& [pred, objs] : it->second) {
        for (const Term& obj : objs) {
          out.push_back({*s, pred, obj});
        }
      }
    }
  } else if (p) {
    if (auto it = pos_.find(*p); it != pos_.end()) {
      for (const auto& [obj, subjs] : it->second) {
        for (const Iri& subj : subjs) {
          out.push_back({subj, *p, obj});
        }
      }
    }
  } else if (o) {
    if (auto it = osp_.find(*o); it != osp_.end()) {
      for (const auto& [subj, preds] : it->second) {
        for (const Iri& pred : preds) {
          out.push_back({subj, pred, *o});
        }
      }
    }
  } else {
    out.assign(triples_.begin(), triples_.end());
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Triple> Graph::enumerate(IndexOrder order) const {
  std::vector<Triple> out;
  out.reserve(triples_.size());
  switch (order) {
    case IndexOrder::kSpo:
      for (const auto& [s, pm] : spo_) {
        for (const auto& [p, objs] : pm) {
          for (const Term& o : objs) {
            out.push_back({s, p, o});
          }
        }
      }
      break;
    case IndexOrder::kPos:
      for (const auto& [p, om] : pos_) {
        for (const auto& [o, subjs] : om) {
          for (const Iri& s : subjs) {
            out.push_back({s, p, o});
          }
        }
      }
      break;
    case IndexOrder::kOsp:
      for (const auto& [o, sm] : osp_) {
        for (const auto& [s, preds] : sm) {
          for (const Iri& p : preds) {
            out.push_back({s, p, o});
          }
        }
      }
      break;
  }
  return out;
}

PatternTerm PatternTerm::var(std::string name) {
  if (name.empty()) {
    throw std::invalid_argument("pattern variable name must be non-empty");
  }
  PatternTerm pt;
  pt.is_variable = true;
  pt.variable = std::move(name);
  return pt;
}

PatternTerm PatternTerm::constant(Term t) {
  PatternTerm pt;
  pt.is_variable = false;
  pt.value = std::move(t);
  return pt;
}

namespace {

std::optional<Term> resolve(const PatternTerm& pt, const Bindings& bindings) {
  if (!pt.is_variable) {
    return pt.value;
  }
  if (auto it = bindings.find(pt.variable); it != bindings.end()) {
    return it->second;
  }
  return std::nullopt;
}

int bound_positions(const TriplePattern& p, const Bindings& bindings) {
  int n = 0;
  for (const PatternTerm* pt : {&p.s, &p.p, &p.o}) {
    if (resolve(*pt, bindings)) {
      ++n;
    }
  }
  return n;
}

bool unify_position(const PatternTerm& pt, const Term& actual, Bindings& bindings) {
  if (!pt.is_variable) {
    return pt.value == actual;
  }
  auto [it, inserted] = bindings.emplace(pt.variable, actual);
  return inserted || it->second == actual;
}

void search(const Graph& graph, const std::vector<TriplePattern>& patterns,
            std::vector<bool>& used, std::size_t remaining, Bindings& current,
            std::vector<Bindings>& out) {
  if (remaining == 0) {
    out.push_back(current);
    return;
  }
  // Most-bound-first keeps the candidate fan-out small.
  std::size_t best = patterns.size();
  int best_score = -1;
  for (std::size_t i = 0; i < patterns.size(); ++i) {
    if (used[i]) {
      continue;
    }
    const int score = bound_positions(patterns[i], current);
    if (score > best_score) {
      best_score = score;
      best = i;
    }
  }
  const TriplePattern& pat = patterns[best];
  const auto s = resolve(pat.s, current);
  const auto p = resolve(pat.p, current);
  const auto o = resolve(pat.o, current);
  // Literals can never appear in subject or predicate position.
  if ((s && !s->is_iri()) || (p && !p->is_iri())) {
    return;
  }
  used[best] = true;
  const auto candidates =
      graph.find(s ? std::optional<Iri>(s->value) : std::nullopt,
                 p ? std::optional<Iri>(p->value) : std::nullopt, o);
  for (const Triple& t : candidates) {
    Bindings saved = current;
    if (unify_position(pat.s, Term::iri(t.s), current) &&
        unify_position(pat.p, Term::iri(t.p), current) &&
        unify_position(pat.o, t.o, current)) {
      search(graph, patterns, used, remaining - 1, current, out);
    }
    current = std::move(saved);
  }
  used[best] = false;
}

bool bindings_less(const Bindings& a, const Bindings& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(),
                                      [](const auto& x, const auto& y) {
                                        if (x.first != y.first) {
                                          return x.first < y.first;
                                        }
                                        return x.second < y.second;
                                      });
}

}  // namespace

std::vector<Bindings> match_pattern(const Graph& graph,
                                    const std::vector<TriplePattern>& patterns) {
  if (patterns.empty()) {
    throw std::invalid_argument("match_pattern requires at least one pattern");
  }
  std::vector<Bindings> results;
  std::vector<bool> used(patterns.size(), false);
  Bindings current;
  search(graph, patterns, used, patterns.size(), current, results);
  std::sort(results.begin(), results.end(), bindings_less);
  results.erase(std::unique(results.begin(), results.end()), results.end());
  return results;
}

namespace {

// Splits the pattern text into three term tokens; quoted strings may contain
// whitespace and carry an optional ^^datatype suffix.
std::vector<std::string> split_pattern_tokens(std::string_view text) {
  std::vector<std::string> tokens;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) {
      ++i;
    }
    if (i >= text.size()) {
      break;
    }
    const std::size_t start = i;
    if (text[i] == '"') {
      ++i;
      bool closed = false;
      while (i < text.size()) {
        if (text[i] == '\\' && i + 1 < text.size()) {
          i += 2;
          continue;
        }
        if (text[i] == '"') {
          ++i;
          closed = true;
          break;
        }
        ++i;
      }
      if (!closed) {
        throw ParseError("unterminated string literal in pattern");
      }
      while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i]))) {
        ++i;
      }
    } else {
      while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i]))) {
        ++i;
      }
    }
    tokens.emplace_back(text.substr(start, i - start));
  }
  return tokens;
}

bool looks_like_integer(std::string_view tok) {
  std::size_t i = (tok[0] == '+' || tok[0] == '-') ? 1 : 0;
  if (i >= tok.size()) {
    return false;
  }
  for (; i < tok.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(tok[i]))) {
      return false;
    }
  }
  return true;
}

bool looks_like_decimal(std::string_view tok) {
  const auto dot = tok.find('.');
  if (dot == std::string_view::npos) {
    return false;
  }
  return looks_like_integer(tok.substr(0, dot)) &&
         dot + 1 < tok.size() && looks_like_integer(tok.substr(dot + 1));
}

std::string unescape_pattern_literal(std::string_view body) {
  std::string out;
  out.reserve(body.size());
  for (std::size_t i = 0; i < body.size(); ++i) {
    if (body[i] != '\\') {
      out.push_back(body[i]);
      continue;
    }
    if (i + 1 >= body.size()) {
      throw ParseError("dangling escape in string literal");
    }
    switch (body[++i]) {
      case '"': out.push_back('"'); break;
      case '\\': out.push_back('\\'); break;
      case 'n': out.push_back('\n'); break;
      case 'r': out.push_back('\r'); break;
      case 't': out.push_back('\t'); break;
      default:
        throw ParseError(std::string("unsupported escape \\") + body[i]);
    }
  }
  return out;
}

PatternTerm parse_pattern_term(const std::string& tok) {
  if (tok.front() == '?') {
    const std::string name = tok.substr(1);
    if (name.empty()) {
      throw ParseError("pattern variable needs a name after '?'");
    }
    return PatternTerm::var(name);
  }
  if (tok.front() == '<') {
    if (tok.back() != '>' || tok.size() < 3) {
      throw ParseError("malformed IRI in pattern: " + tok);
    }
    return PatternTerm::constant(Term::iri(tok.substr(1, tok.size() - 2)));
  }
  if (tok.front() == '"') {
    const auto close = tok.rfind('"');
    if (close == 0) {
      throw ParseError("unterminated string literal: " + tok);
    }
    const std::string body = unescape_pattern_literal(
        std::string_view(tok).substr(1, close - 1));
    std::string datatype{xsd::String};
    if (close + 1 < tok.size()) {
      std::string_view rest = std::string_view(tok).substr(close + 1);
      if (rest.size() < 3 || rest.substr(0, 2) != "^^") {
        throw ParseError("malformed literal suffix in pattern: " + tok);
      }
      rest.remove_prefix(2);
      if (rest.front() == '<') {
        if (rest.back() != '>') {
          throw ParseError("malformed datatype IRI in pattern: " + tok);
        }
        datatype = std::string(rest.substr(1, rest.size() - 2));
      } else {
        datatype = expand_curie(rest);
      }
    }
    return PatternTerm::constant(Term::literal(body, datatype));
  }
  if (looks_like_integer(tok)) {
    return PatternTerm::constant(Term::literal(tok, std::string(xsd::Integer)));
  }
  if (looks_like_decimal(tok)) {
    return PatternTerm::constant(Term::literal(tok, std::string(xsd::Decimal)));
  }
  if (tok.find(':') != std::string::npos) {
    return PatternTerm::constant(Term::iri(expand_curie(tok)));
  }
  throw ParseError("cannot parse pattern term: " + tok);
}

}  // namespace

TriplePattern parse_pattern(std::string_view text) {
  const auto tokens = split_pattern_tokens(text);
  if (tokens.size() != 3) {
    throw ParseError("pattern must have exactly three terms, got " +
                     std::to_string(tokens.size()));
  }
  try {
    return {parse_pattern_term(tokens[0]), parse_pattern_term(tokens[1]),
            parse_pattern_term(tokens[2])};
  } catch (const ParseError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    // bad CURIE prefixes, malformed IRIs, unsupported datatypes
    throw ParseError(e.what());
  }
}

}  // namespace tmkg
