#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "koszul/errors.hpp"
#include "koszul/morphisms.hpp"
#include "koszul/presentation.hpp"
#include "koszul/scalar.hpp"

namespace koszul::dsl {

// Scalar expression: sum of rational coefficients times parameter products.
struct ScalarExpr {
  struct Mono {
    Rational coef;
    std::vector<std::string> params;  // sorted

    bool operator==(const Mono&) const = default;
  };
  std::vector<Mono> monos;

  bool operator==(const ScalarExpr&) const = default;

  static ScalarExpr constant(Rational c) {
    ScalarExpr e;
    if (c != 0) e.monos.push_back({std::move(c), {}});
    return e;
  }

  bool is_constant() const {
    return monos.empty() || (monos.size() == 1 && monos[0].params.empty());
  }

  void add_mono(Mono m) {
    if (m.coef == 0) return;
    for (auto& existing : monos)
      if (existing.params == m.params) {
        existing.coef += m.coef;
        if (existing.coef == 0)
          monos.erase(monos.begin() + (&existing - monos.data()));
        return;
      }
    monos.push_back(std::move(m));
  }

  void collect_params(std::vector<std::string>& out) const {
    for (const auto& m : monos)
      for (const auto& p : m.params)
        if (std::find(out.begin(), out.end(), p) == out.end()) out.push_back(p);
  }

  Rational evaluate(const std::map<std::string, Rational>& values) const {
    Rational total = 0;
    for (const auto& m : monos) {
      Rational prod = m.coef;
      for (const auto& p : m.params) {
        auto it = values.find(p);
        if (it == values.end())
          throw EngineError("UnboundParameter",
                            "parameter '" + p + "' has no value");
        prod *= it->second;
      }
      total += prod;
    }
    return total;
  }
};

// One term of a relation or automorphism image: scalar times a word in the
// generators (word length 2 for relations, 1 for automorphism images).
struct GenTerm {
  ScalarExpr coef;
  std::vector<std::string> word;

  bool operator==(const GenTerm&) const = default;
};

using GenExpr = std::vector<GenTerm>;

struct AutBlock {
  std::string name;
  // images[i] = linear form for generator i, in declaration order
  std::vector<GenExpr> images;

  bool operator==(const AutBlock&) const = default;
};

struct SigmaBlock {
  std::string name;
  ScalarExpr p, q;
  // S[j][k] is an n x n matrix of scalar expressions, entry (i,l) the
  // coefficient of generator l in sigma_{j+1,k+1}(generator i)
  std::array<std::array<std::vector<std::vector<ScalarExpr>>, 2>, 2> S;

  bool operator==(const SigmaBlock&) const = default;
};

struct FieldChoice {
  bool rational = true;
  long prime = 0;

  bool operator==(const FieldChoice&) const = default;
};

struct ParamDecl {
  std::string name;
  std::vector<Rational> grid;  // empty when declared without values

  bool operator==(const ParamDecl&) const = default;
};

struct InputDocument {
  FieldChoice field;
  std::vector<std::string> generators;
  std::vector<GenExpr> relations;
  std::vector<ParamDecl> params;
  std::vector<AutBlock> auts;
  std::vector<SigmaBlock> sigmas;

  bool operator==(const InputDocument&) const = default;

  const AutBlock* find_aut(const std::string& name) const {
    for (const auto& a : auts)
      if (a.name == name) return &a;
    return nullptr;
  }
  const SigmaBlock* find_sigma(const std::string& name) const {
    for (const auto& s : sigmas)
      if (s.name == name) return &s;
    return nullptr;
  }
  const ParamDecl* find_param(const std::string& name) const {
    for (const auto& p : params)
      if (p.name == name) return &p;
    return nullptr;
  }
};

// ---------------------------------------------------------------------------
// Tokenizer

namespace detail {

struct Token {
  enum Kind { Ident, Number, Punct, End } kind = End;
  std::string text;
  int line = 1, col = 1;
};

class Lexer {
 public:
  explicit Lexer(const std::string& src) : src_(src) { advance(); }

  const Token& peek() const { return tok_; }
  Token take() {
    Token t = tok_;
    advance();
    return t;
  }

 private:
  void advance() {
    while (pos_ < src_.size()) {
      char c = src_[pos_];
      if (c == '\n') {
        ++line_;
        col_ = 1;
        ++pos_;
      } else if (c == ' ' || c == '\t' || c == '\r') {
        ++col_;
        ++pos_;
      } else if (c == '#') {
        while (pos_ < src_.size() && src_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
    tok_.line = line_;
    tok_.col = col_;
    if (pos_ >= src_.size()) {
      tok_.kind = Token::End;
      tok_.text = "end of input";
      return;
    }
    char c = src_[pos_];
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[pos_])) ||
              src_[pos_] == '_'))
        ++pos_;
      tok_.kind = Token::Ident;
      tok_.text = src_.substr(start, pos_ - start);
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < src_.size() &&
             std::isdigit(static_cast<unsigned char>(src_[pos_])))
        ++pos_;
      tok_.kind = Token::Number;
      tok_.text = src_.substr(start, pos_ - start);
    } else if (c == '-' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '>') {
      tok_.kind = Token::Punct;
      tok_.text = "->";
      pos_ += 2;
    } else {
      tok_.kind = Token::Punct;
      tok_.text = std::string(1, c);
      ++pos_;
    }
    col_ += static_cast<int>(tok_.text.size());
  }

  const std::string& src_;
  std::size_t pos_ = 0;
  int line_ = 1, col_ = 1;
  Token tok_;
};

}  // namespace detail

// ---------------------------------------------------------------------------
// Parser

class Parser {
 public:
  explicit Parser(const std::string& src) : lex_(src) {}

  InputDocument parse() {
    InputDocument doc;
    while (lex_.peek().kind != detail::Token::End) {
      const auto& t = lex_.peek();
      if (t.kind != detail::Token::Ident)
        fail(t, "statement keyword (field, gens, rel, param, aut, sigma)");
      if (t.text == "field")
        parse_field(doc);
      else if (t.text == "gens")
        parse_gens(doc);
      else if (t.text == "rel")
        parse_rel(doc);
      else if (t.text == "param")
        parse_param(doc);
      else if (t.text == "aut")
        parse_aut(doc);
      else if (t.text == "sigma")
        parse_sigma(doc);
      else
        fail(t, "statement keyword (field, gens, rel, param, aut, sigma)");
    }
    if (doc.generators.empty())
      throw ParseError(1, 1, "a 'gens' declaration");
    return doc;
  }

 private:
  [[noreturn]] void fail(const detail::Token& t, const std::string& expected) {
    throw ParseError(t.line, t.col, expected + ", got '" + t.text + "'");
  }

  detail::Token expect_punct(const std::string& p) {
    const auto& t = lex_.peek();
    if (t.kind != detail::Token::Punct || t.text != p) fail(t, "'" + p + "'");
    return lex_.take();
  }

  std::string expect_ident(const char* what) {
    const auto& t = lex_.peek();
    if (t.kind != detail::Token::Ident) fail(t, what);
    return lex_.take().text;
  }

  bool at_punct(const std::string& p) {
    return lex_.peek().kind == detail::Token::Punct && lex_.peek().text == p;
  }

  Rational expect_rational() {
    bool neg = false;
    if (at_punct("-")) {
      lex_.take();
      neg = true;
    }
    const auto& t = lex_.peek();
    if (t.kind != detail::Token::Number) fail(t, "a number");
    Rational num(lex_.take().text);
    if (at_punct("/")) {
      lex_.take();
      const auto& d = lex_.peek();
      if (d.kind != detail::Token::Number) fail(d, "a denominator");
      Rational den(lex_.take().text);
      if (den == 0) fail(d, "a nonzero denominator");
      num /= den;
    }
    return neg ? -num : num;
  }

  void parse_field(InputDocument& doc) {
    lex_.take();
    const auto& t = lex_.peek();
    if (t.kind != detail::Token::Ident) fail(t, "'q' or 'F<p>'");
    std::string name = lex_.take().text;
    if (name == "q" || name == "Q") {
      doc.field = {true, 0};
    } else if ((name[0] == 'F' || name[0] == 'f') && name.size() > 1 &&
               std::all_of(name.begin() + 1, name.end(), [](char c) {
                 return std::isdigit(static_cast<unsigned char>(c));
               })) {
      doc.field = {false, std::stol(name.substr(1))};
      if (doc.field.prime < 2) fail(t, "a prime modulus");
    } else {
      fail(t, "'q' or 'F<p>'");
    }
    expect_punct(";");
  }

  void parse_gens(InputDocument& doc) {
    lex_.take();
    while (true) {
      doc.generators.push_back(expect_ident("a generator name"));
      if (at_punct(",")) {
        lex_.take();
        continue;
      }
      break;
    }
    expect_punct(";");
  }

  void parse_param(InputDocument& doc) {
    lex_.take();
    ParamDecl p;
    p.name = expect_ident("a parameter name");
    if (at_punct("=")) {
      lex_.take();
      expect_punct("{");
      if (!at_punct("}"))
        while (true) {
          p.grid.push_back(expect_rational());
          if (at_punct(",")) {
            lex_.take();
            continue;
          }
          break;
        }
      expect_punct("}");
    }
    expect_punct(";");
    doc.params.push_back(std::move(p));
  }

  bool is_generator(const InputDocument& doc, const std::string& name) {
    return std::find(doc.generators.begin(), doc.generators.end(), name) !=
           doc.generators.end();
  }

  // factor := rational | ident ['^' int]; collects into coef / word
  void parse_factor(const InputDocument& doc, ScalarExpr::Mono& mono,
                    std::vector<std::string>& word) {
    const auto& t = lex_.peek();
    if (t.kind == detail::Token::Number) {
      Rational num(lex_.take().text);
      if (at_punct("/")) {
        lex_.take();
        const auto& d = lex_.peek();
        if (d.kind != detail::Token::Number) fail(d, "a denominator");
        Rational den(lex_.take().text);
        if (den == 0) fail(d, "a nonzero denominator");
        num /= den;
      }
      mono.coef *= num;
      return;
    }
    if (t.kind != detail::Token::Ident) fail(t, "a number, generator, or parameter");
    std::string name = lex_.take().text;
    long power = 1;
    if (at_punct("^")) {
      lex_.take();
      const auto& e = lex_.peek();
      if (e.kind != detail::Token::Number) fail(e, "an exponent");
      power = std::stol(lex_.take().text);
      if (power < 1) fail(e, "a positive exponent");
    }
    if (is_generator(doc, name)) {
      for (long i = 0; i < power; ++i) word.push_back(name);
    } else {
      for (long i = 0; i < power; ++i) mono.params.push_back(name);
    }
  }

  // expr := ['-'] term (('+'|'-') term)*; term := factor ('*' factor)*
  GenExpr parse_gen_expr(const InputDocument& doc) {
    GenExpr terms;
    bool first = true;
    while (true) {
      Rational sign = 1;
      if (at_punct("-")) {
        lex_.take();
        sign = -1;
      } else if (at_punct("+")) {
        if (first) fail(lex_.peek(), "a term");
        lex_.take();
      } else if (!first) {
        break;
      }
      first = false;
      ScalarExpr::Mono mono{sign, {}};
      std::vector<std::string> word;
      parse_factor(doc, mono, word);
      while (at_punct("*")) {
        lex_.take();
        parse_factor(doc, mono, word);
      }
      std::sort(mono.params.begin(), mono.params.end());
      // merge with an existing term over the same word
      GenTerm term;
      term.word = std::move(word);
      term.coef.add_mono(std::move(mono));
      bool merged = false;
      for (auto& existing : terms)
        if (existing.word == term.word) {
          for (auto& m : term.coef.monos) existing.coef.add_mono(std::move(m));
          merged = true;
          break;
        }
      if (!merged) terms.push_back(std::move(term));
    }
    std::erase_if(terms, [](const GenTerm& t) { return t.coef.monos.empty(); });
    return terms;
  }

  void parse_rel(InputDocument& doc) {
    auto kw = lex_.take();
    GenExpr e = parse_gen_expr(doc);
    expect_punct(";");
    if (e.empty()) fail(kw, "a nonzero relation");
    for (const auto& t : e)
      if (t.word.size() != 2)
        throw ParseError(kw.line, kw.col,
                         "a homogeneous degree-2 relation (found a degree-" +
                             std::to_string(t.word.size()) + " term)");
    doc.relations.push_back(std::move(e));
  }

  void parse_aut(InputDocument& doc) {
    auto kw = lex_.take();
    AutBlock blk;
    blk.name = expect_ident("an automorphism name");
    expect_punct("{");
    std::map<std::string, GenExpr> images;
    while (!at_punct("}")) {
      auto gt = lex_.peek();
      std::string gen = expect_ident("a generator name");
      if (!is_generator(doc, gen)) fail(gt, "a declared generator");
      expect_punct("->");
      GenExpr e = parse_gen_expr(doc);
      expect_punct(";");
      for (const auto& t : e)
        if (t.word.size() != 1)
          throw ParseError(gt.line, gt.col,
                           "a homogeneous degree-1 image for '" + gen + "'");
      if (!images.emplace(gen, std::move(e)).second)
        fail(gt, "each generator at most once");
    }
    expect_punct("}");
    for (const auto& g : doc.generators) {
      auto it = images.find(g);
      if (it == images.end())
        throw ParseError(kw.line, kw.col,
                         "an image for generator '" + g + "' in aut " +
                             blk.name);
      blk.images.push_back(std::move(it->second));
    }
    doc.auts.push_back(std::move(blk));
  }

  ScalarExpr parse_scalar_expr(const InputDocument& doc) {
    auto start = lex_.peek();
    GenExpr e = parse_gen_expr(doc);
    ScalarExpr out;
    for (auto& t : e) {
      if (!t.word.empty())
        throw ParseError(start.line, start.col,
                         "a scalar expression (no generators)");
      for (auto& m : t.coef.monos) out.add_mono(std::move(m));
    }
    return out;
  }

  std::vector<std::vector<ScalarExpr>> parse_scalar_matrix(
      const InputDocument& doc) {
    expect_punct("[");
    std::vector<std::vector<ScalarExpr>> rows;
    while (true) {
      expect_punct("[");
      std::vector<ScalarExpr> row;
      if (!at_punct("]"))
        while (true) {
          row.push_back(parse_scalar_expr(doc));
          if (at_punct(",")) {
            lex_.take();
            continue;
          }
          break;
        }
      expect_punct("]");
      rows.push_back(std::move(row));
      if (at_punct(",")) {
        lex_.take();
        continue;
      }
      break;
    }
    expect_punct("]");
    return rows;
  }

  void parse_sigma(InputDocument& doc) {
    auto kw = lex_.take();
    SigmaBlock blk;
    blk.name = expect_ident("a sigma name");
    expect_punct("{");
    bool seen[6] = {};
    while (!at_punct("}")) {
      auto ft = lex_.peek();
      std::string fieldname = expect_ident("p, q, S11, S12, S21, or S22");
      expect_punct("=");
      int slot;
      if (fieldname == "p")
        slot = 0;
      else if (fieldname == "q")
        slot = 1;
      else if (fieldname == "S11")
        slot = 2;
      else if (fieldname == "S12")
        slot = 3;
      else if (fieldname == "S21")
        slot = 4;
      else if (fieldname == "S22")
        slot = 5;
      else
        fail(ft, "p, q, S11, S12, S21, or S22");
      if (seen[slot]) fail(ft, "each sigma field at most once");
      seen[slot] = true;
      if (slot <= 1) {
        (slot == 0 ? blk.p : blk.q) = parse_scalar_expr(doc);
      } else {
        auto m = parse_scalar_matrix(doc);
        const std::size_t n = doc.generators.size();
        if (m.size() != n ||
            std::any_of(m.begin(), m.end(),
                        [n](const auto& r) { return r.size() != n; }))
          fail(ft, "an " + std::to_string(n) + "x" + std::to_string(n) +
                       " matrix");
        int j = (slot - 2) / 2, k = (slot - 2) % 2;
        blk.S[j][k] = std::move(m);
      }
      expect_punct(";");
    }
    expect_punct("}");
    for (int s = 0; s < 6; ++s)
      if (!seen[s]) {
        static const char* names[] = {"p", "q", "S11", "S12", "S21", "S22"};
        throw ParseError(kw.line, kw.col, std::string("a value for ") +
                                              names[s] + " in sigma " +
                                              blk.name);
      }
    doc.sigmas.push_back(std::move(blk));
  }

  detail::Lexer lex_;
};

inline InputDocument parse(const std::string& text) {
  return Parser(text).parse();
}

// ---------------------------------------------------------------------------
// Pretty-printer (canonical form; parse(pretty_print(doc)) == doc)

namespace detail {

inline std::string rational_str(const Rational& r) {
  std::ostringstream os;
  os << r;
  return os.str();
}

inline void print_mono(std::ostream& os, const ScalarExpr::Mono& m,
                       bool leading) {
  Rational c = m.coef;
  if (c < 0) {
    os << (leading ? "-" : " - ");
    c = -c;
  } else if (!leading) {
    os << " + ";
  }
  bool printed = false;
  if (c != 1 || m.params.empty()) {
    os << rational_str(c);
    printed = true;
  }
  for (const auto& p : m.params) {
    if (printed) os << "*";
    os << p;
    printed = true;
  }
}

inline void print_scalar(std::ostream& os, const ScalarExpr& e) {
  if (e.monos.empty()) {
    os << "0";
    return;
  }
  for (std::size_t i = 0; i < e.monos.size(); ++i)
    print_mono(os, e.monos[i], i == 0);
}

inline void print_gen_expr(std::ostream& os, const GenExpr& e) {
  if (e.empty()) {
    os << "0";
    return;
  }
  bool first = true;
  for (const auto& term : e) {
    for (std::size_t i = 0; i < term.coef.monos.size(); ++i) {
      const auto& m = term.coef.monos[i];
      Rational c = m.coef;
      if (c < 0) {
        os << (first ? "-" : " - ");
        c = -c;
      } else if (!first) {
        os << " + ";
      }
      first = false;
      bool printed = false;
      if (c != 1 || (m.params.empty() && term.word.empty())) {
        os << rational_str(c);
        printed = true;
      }
      for (const auto& p : m.params) {
        if (printed) os << "*";
        os << p;
        printed = true;
      }
      for (const auto& g : term.word) {
        if (printed) os << "*";
        os << g;
        printed = true;
      }
    }
  }
}

}  // namespace detail

inline std::string pretty_print(const InputDocument& doc) {
  std::ostringstream os;
  if (doc.field.rational)
    os << "field q;\n";
  else
    os << "field F" << doc.field.prime << ";\n";
  os << "gens ";
  for (std::size_t i = 0; i < doc.generators.size(); ++i)
    os << (i ? ", " : "") << doc.generators[i];
  os << ";\n";
  for (const auto& p : doc.params) {
    os << "param " << p.name;
    if (!p.grid.empty()) {
      os << " = {";
      for (std::size_t i = 0; i < p.grid.size(); ++i)
        os << (i ? ", " : "") << detail::rational_str(p.grid[i]);
      os << "}";
    }
    os << ";\n";
  }
  for (const auto& r : doc.relations) {
    os << "rel ";
    detail::print_gen_expr(os, r);
    os << ";\n";
  }
  for (const auto& a : doc.auts) {
    os << "aut " << a.name << " {\n";
    for (std::size_t i = 0; i < doc.generators.size(); ++i) {
      os << "  " << doc.generators[i] << " -> ";
      detail::print_gen_expr(os, a.images[i]);
      os << ";\n";
    }
    os << "}\n";
  }
  for (const auto& s : doc.sigmas) {
    os << "sigma " << s.name << " {\n  p = ";
    detail::print_scalar(os, s.p);
    os << ";\n  q = ";
    detail::print_scalar(os, s.q);
    os << ";\n";
    static const char* names[2][2] = {{"S11", "S12"}, {"S21", "S22"}};
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k) {
        os << "  " << names[j][k] << " = [";
        const auto& m = s.S[j][k];
        for (std::size_t r = 0; r < m.size(); ++r) {
          os << (r ? ", [" : "[");
          for (std::size_t c = 0; c < m[r].size(); ++c) {
            if (c) os << ", ";
            detail::print_scalar(os, m[r][c]);
          }
          os << "]";
        }
        os << "];\n";
      }
    os << "}\n";
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Instantiation into exact-arithmetic objects

using ParamValues = std::map<std::string, Rational>;

template <class F>
F eval_scalar(const ScalarExpr& e, const ParamValues& values) {
  return field_from_rational<F>(e.evaluate(values));
}

template <class F>
QuadraticPresentation<F> make_presentation(const InputDocument& doc,
                                           const ParamValues& values = {}) {
  const std::size_t n = doc.generators.size();
  auto index_of = [&](const std::string& g) {
    return static_cast<std::size_t>(
        std::find(doc.generators.begin(), doc.generators.end(), g) -
        doc.generators.begin());
  };
  Matrix<F> rels(doc.relations.size(), n * n);
  for (std::size_t r = 0; r < doc.relations.size(); ++r)
    for (const auto& term : doc.relations[r])
      rels(r, index_of(term.word[0]) * n + index_of(term.word[1])) +=
          eval_scalar<F>(term.coef, values);
  return QuadraticPresentation<F>(doc.generators, rels);
}

template <class F>
Matrix<F> make_aut_matrix(const InputDocument& doc, const AutBlock& blk,
                          const ParamValues& values = {}) {
  const std::size_t n = doc.generators.size();
  auto index_of = [&](const std::string& g) {
    return static_cast<std::size_t>(
        std::find(doc.generators.begin(), doc.generators.end(), g) -
        doc.generators.begin());
  };
  Matrix<F> m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (const auto& term : blk.images[i])
      m(i, index_of(term.word[0])) += eval_scalar<F>(term.coef, values);
  return m;
}

template <class F>
SigmaHom<F> make_sigma(const InputDocument& doc, const SigmaBlock& blk,
                       const QuadraticPresentation<F>& pres,
                       const ParamValues& values = {}) {
  const std::size_t n = doc.generators.size();
  std::array<std::array<Matrix<F>, 2>, 2> S;
  for (int j = 0; j < 2; ++j)
    for (int k = 0; k < 2; ++k) {
      Matrix<F> m(n, n);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t l = 0; l < n; ++l)
          m(i, l) = eval_scalar<F>(blk.S[j][k][i][l], values);
      S[j][k] = std::move(m);
    }
  return check_sigma(pres, eval_scalar<F>(blk.p, values),
                     eval_scalar<F>(blk.q, values), S);
}

}  // namespace koszul::dsl
