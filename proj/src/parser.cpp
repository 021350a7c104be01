#include "craig/parser.hpp"

#include <cctype>
#include <vector>

namespace craig {

ParseError::ParseError(std::string message, int position)
    : std::runtime_error(std::move(message) + " at column " + std::to_string(position)),
      position_(position) {}

namespace {

enum class Tok { Ident, True, False, Tilde, Amp, Pipe, Arrow, SeqArrow, LParen, RParen, Comma, End };

struct Token {
  Tok kind;
  std::string text;
  int pos;
};

std::vector<Token> lex(const std::string& in) {
  std::vector<Token> out;
  std::size_t i = 0;
  auto col = [&] { return static_cast<int>(i) + 1; };
  while (i < in.size()) {
    char c = in[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    int pos = col();
    if (c == '~') { out.push_back({Tok::Tilde, "~", pos}); ++i; continue; }
    if (c == '&') { out.push_back({Tok::Amp, "&", pos}); ++i; continue; }
    if (c == '|') { out.push_back({Tok::Pipe, "|", pos}); ++i; continue; }
    if (c == '(') { out.push_back({Tok::LParen, "(", pos}); ++i; continue; }
    if (c == ')') { out.push_back({Tok::RParen, ")", pos}); ++i; continue; }
    if (c == ',') { out.push_back({Tok::Comma, ",", pos}); ++i; continue; }
    if (c == '-') {
      if (i + 1 >= in.size() || in[i + 1] != '>')
        throw ParseError("expected '->'", pos);
      out.push_back({Tok::Arrow, "->", pos});
      i += 2;
      continue;
    }
    if (c == '=') {
      if (i + 1 >= in.size() || in[i + 1] != '>')
        throw ParseError("expected '=>'", pos);
      out.push_back({Tok::SeqArrow, "=>", pos});
      i += 2;
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = i;
      while (i < in.size() &&
             (std::isalnum(static_cast<unsigned char>(in[i])) || in[i] == '_'))
        ++i;
      std::string word = in.substr(start, i - start);
      if (word == "true") out.push_back({Tok::True, word, pos});
      else if (word == "false") out.push_back({Tok::False, word, pos});
      else out.push_back({Tok::Ident, word, pos});
      continue;
    }
    throw ParseError(std::string("unexpected character '") + c + "'", pos);
  }
  out.push_back({Tok::End, "", static_cast<int>(in.size()) + 1});
  return out;
}

class Parser {
public:
  explicit Parser(const std::string& in) : toks_(lex(in)) {}

  Formula formula_all() {
    Formula f = implies();
    expect(Tok::End, "end of input");
    return f;
  }

  Sequent sequent_all() {
    std::vector<Formula> ant, suc;
    if (peek().kind != Tok::SeqArrow) {
      ant.push_back(implies());
      while (accept(Tok::Comma)) ant.push_back(implies());
    }
    expect(Tok::SeqArrow, "'=>'");
    if (peek().kind != Tok::End) {
      suc.push_back(implies());
      while (accept(Tok::Comma)) suc.push_back(implies());
    }
    expect(Tok::End, "end of input");
    return Sequent::of(std::move(ant), std::move(suc));
  }

private:
  std::vector<Token> toks_;
  std::size_t at_ = 0;

  const Token& peek() const { return toks_[at_]; }
  Token take() { return toks_[at_++]; }

  bool accept(Tok k) {
    if (peek().kind != k) return false;
    ++at_;
    return true;
  }

  void expect(Tok k, const char* what) {
    if (peek().kind != k)
      throw ParseError(std::string("expected ") + what, peek().pos);
    ++at_;
  }

  Formula implies() {
    Formula lhs = disj();
    if (accept(Tok::Arrow)) return Formula::implication(std::move(lhs), implies());
    return lhs;
  }

  Formula disj() {
    Formula f = conj();
    while (accept(Tok::Pipe)) f = Formula::disjunction(std::move(f), conj());
    return f;
  }

  Formula conj() {
    Formula f = unary();
    while (accept(Tok::Amp)) f = Formula::conjunction(std::move(f), unary());
    return f;
  }

  Formula unary() {
    if (accept(Tok::Tilde)) return Formula::negation(unary());
    return primary();
  }

  Formula primary() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::Ident: return Formula::atom(take().text);
      case Tok::True: take(); return Formula::top();
      case Tok::False: take(); return Formula::bottom();
      case Tok::LParen: {
        take();
        Formula f = implies();
        expect(Tok::RParen, "')'");
        return f;
      }
      default:
        throw ParseError("expected a formula", t.pos);
    }
  }
};

}  // namespace

Formula parse_formula(const std::string& input) { return Parser(input).formula_all(); }

Sequent parse_sequent(const std::string& input) { return Parser(input).sequent_all(); }

}  // namespace craig
