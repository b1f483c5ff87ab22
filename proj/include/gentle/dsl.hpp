#pragma once

// The line-oriented quiver description language: positioned parsing and
// canonical emission.
//
//   quiver NAME
//   vertices V1 V2 ...
//   arrow ID SRC DST
//   rel A B        # declares the zero relation (A, B); walk order: B then A
//
// '#' starts a comment. Declarations must precede use; duplicate ids,
// undeclared vertices and non-composable relations are positioned errors.

#include <cctype>
#include <map>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "gentle/core.hpp"

namespace gentle {

struct SourceSpan {
  int line = 0;
  int column = 0;

  friend bool operator==(const SourceSpan&, const SourceSpan&) = default;
};

struct ParseError {
  int line = 0;
  int column = 0;
  std::string message;

  std::string describe() const {
    std::ostringstream os;
    os << line << ':' << column << ": " << message;
    return os.str();
  }
};

struct QuiverDocument {
  std::string name;
  QuiverWithRelations body;
  std::map<std::string, SourceSpan> sourceSpans;  // "vertex:V", "arrow:A", "rel:A:B"

  friend bool operator==(const QuiverDocument& a, const QuiverDocument& b) {
    return a.name == b.name && structurally_equal(a.body, b.body);
  }
};

namespace detail {

struct Token {
  std::string text;
  int column = 0;  // 1-based
};

inline std::vector<Token> tokenize_line(const std::string& line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    if (line[i] == '#') break;
    if (std::isspace(static_cast<unsigned char>(line[i]))) {
      ++i;
      continue;
    }
    std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i])) &&
           line[i] != '#')
      ++i;
    out.push_back({line.substr(start, i - start), static_cast<int>(start) + 1});
  }
  return out;
}

inline bool valid_token(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  return true;
}

}  // namespace detail

inline std::variant<QuiverDocument, std::vector<ParseError>> parse_dsl(
    const std::string& text) {
  QuiverDocument doc;
  std::vector<ParseError> errors;
  bool have_header = false;

  auto err = [&](int line, int column, std::string msg) {
    errors.push_back({line, column, std::move(msg)});
  };

  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    auto toks = detail::tokenize_line(raw);
    if (toks.empty()) continue;
    const detail::Token& head = toks.front();

    if (head.text == "quiver") {
      if (toks.size() != 2) {
        err(lineno, head.column, "expected: quiver NAME");
        continue;
      }
      if (!detail::valid_token(toks[1].text)) {
        err(lineno, toks[1].column, "invalid name '" + toks[1].text + "'");
        continue;
      }
      if (have_header) {
        err(lineno, head.column, "duplicate quiver header");
        continue;
      }
      have_header = true;
      doc.name = toks[1].text;
      continue;
    }
    if (!have_header) {
      err(lineno, head.column, "expected 'quiver NAME' before '" + head.text + "'");
      have_header = true;  // report once, keep collecting diagnostics
      doc.name = "unnamed";
    }

    if (head.text == "vertices") {
      if (toks.size() < 2) {
        err(lineno, head.column, "expected at least one vertex name");
        continue;
      }
      for (std::size_t i = 1; i < toks.size(); ++i) {
        if (!detail::valid_token(toks[i].text)) {
          err(lineno, toks[i].column, "invalid vertex name '" + toks[i].text + "'");
          continue;
        }
        if (doc.body.has_vertex(toks[i].text)) {
          err(lineno, toks[i].column, "duplicate vertex '" + toks[i].text + "'");
          continue;
        }
        doc.body.vertices.push_back(toks[i].text);
        doc.sourceSpans["vertex:" + toks[i].text] = {lineno, toks[i].column};
      }
    } else if (head.text == "arrow") {
      if (toks.size() != 4) {
        err(lineno, head.column, "expected: arrow ID SRC DST");
        continue;
      }
      bool ok = true;
      for (std::size_t i = 1; i < 4; ++i)
        if (!detail::valid_token(toks[i].text)) {
          err(lineno, toks[i].column, "invalid token '" + toks[i].text + "'");
          ok = false;
        }
      if (!ok) continue;
      if (doc.body.has_arrow(toks[1].text)) {
        err(lineno, toks[1].column, "duplicate arrow id '" + toks[1].text + "'");
        continue;
      }
      if (!doc.body.has_vertex(toks[2].text)) {
        err(lineno, toks[2].column, "undeclared vertex '" + toks[2].text + "'");
        continue;
      }
      if (!doc.body.has_vertex(toks[3].text)) {
        err(lineno, toks[3].column, "undeclared vertex '" + toks[3].text + "'");
        continue;
      }
      doc.body.arrows.push_back({toks[1].text, toks[2].text, toks[3].text});
      doc.sourceSpans["arrow:" + toks[1].text] = {lineno, toks[1].column};
    } else if (head.text == "rel") {
      if (toks.size() != 3) {
        err(lineno, head.column, "expected: rel FIRST SECOND");
        continue;
      }
      const Arrow* f = doc.body.find_arrow(toks[1].text);
      const Arrow* s = doc.body.find_arrow(toks[2].text);
      if (!f) {
        err(lineno, toks[1].column, "unknown arrow '" + toks[1].text + "'");
        continue;
      }
      if (!s) {
        err(lineno, toks[2].column, "unknown arrow '" + toks[2].text + "'");
        continue;
      }
      if (f->source != s->target) {
        err(lineno, toks[1].column,
            "relation (" + f->id + ", " + s->id + ") is not composable: source(" +
                f->id + ") = " + f->source + " but target(" + s->id + ") = " +
                s->target);
        continue;
      }
      if (doc.body.has_relation(f->id, s->id)) {
        err(lineno, toks[1].column,
            "duplicate relation (" + f->id + ", " + s->id + ")");
        continue;
      }
      doc.body.relations.push_back({f->id, s->id});
      doc.sourceSpans["rel:" + f->id + ":" + s->id] = {lineno, toks[1].column};
    } else {
      err(lineno, head.column, "unknown directive '" + head.text + "'");
    }
  }

  if (!have_header) err(1, 1, "missing 'quiver NAME' header");
  if (!errors.empty()) return errors;
  if (doc.body.vertices.empty()) {
    err(lineno > 0 ? lineno : 1, 1, "quiver declares no vertices");
    return errors;
  }
  return doc;
}

// Canonical text: sorted vertices, arrows sorted by id, relations sorted. The
// walk-order convention for 'rel' lines is restated in the header comment of
// every emitted file, since it is the easiest detail to get backwards.
inline std::string emit(const QuiverDocument& doc) {
  QuiverWithRelations q = doc.body.normalized();
  std::ostringstream os;
  os << "# " << doc.name << ": quiver with length-2 zero relations\n";
  os << "# 'rel A B' declares the zero relation (A, B); as a walk, B is traversed first, then A.\n";
  os << "quiver " << doc.name << "\n";
  os << "vertices";
  for (const VertexId& v : q.vertices) os << ' ' << v;
  os << "\n";
  for (const Arrow& a : q.arrows)
    os << "arrow " << a.id << ' ' << a.source << ' ' << a.target << "\n";
  for (const Relation& r : q.relations)
    os << "rel " << r.first << ' ' << r.second << "\n";
  return os.str();
}

inline QuiverDocument make_document(std::string name, QuiverWithRelations body) {
  return QuiverDocument{std::move(name), std::move(body), {}};
}

}  // namespace gentle
