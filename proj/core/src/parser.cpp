#include "bispectral/parser.hpp"

#include <algorithm>
#include <cctype>

#include "bispectral/error.hpp"

namespace bispectral {

const char* context_kind_name(ContextKind k) {
  switch (k) {
    case ContextKind::exp: return "exp";
    case ContextKind::airy: return "airy";
    case ContextKind::bessel: return "bessel";
  }
  return "?";
}

std::vector<std::string> Dialect::symbols() const {
  switch (kind) {
    case Kind::raw_x: return {"x", "Dx"};
    case Kind::raw_y: return {"y", "Dy"};
    case Kind::scalar: return {};
    case Kind::generators:
      if (context == ContextKind::bessel) return {"BB", "S", "X2"};
      return {"x", "Dx"};
  }
  return {};
}

ExprTree ExprTree::make_scalar(const GaussianRational& v) {
  ExprTree e;
  e.kind = Kind::scalar;
  e.value = v;
  return e;
}

ExprTree ExprTree::make_symbol(const std::string& name) {
  ExprTree e;
  e.kind = Kind::symbol;
  e.name = name;
  return e;
}

ExprTree ExprTree::make_sum(std::vector<ExprTree> terms) {
  if (terms.size() == 1) return std::move(terms[0]);
  ExprTree e;
  e.kind = Kind::sum;
  e.children = std::move(terms);
  return e;
}

ExprTree ExprTree::make_product(std::vector<ExprTree> factors) {
  if (factors.size() == 1) return std::move(factors[0]);
  ExprTree e;
  e.kind = Kind::product;
  e.children = std::move(factors);
  return e;
}

ExprTree ExprTree::make_quotient(ExprTree num, ExprTree den) {
  ExprTree e;
  e.kind = Kind::quotient;
  e.children.push_back(std::move(num));
  e.children.push_back(std::move(den));
  return e;
}

ExprTree ExprTree::make_power(ExprTree base, unsigned exponent) {
  ExprTree e;
  e.kind = Kind::power;
  e.children.push_back(std::move(base));
  e.exponent = exponent;
  return e;
}

namespace {

bool is_atomic(const ExprTree& e) {
  if (e.kind == ExprTree::Kind::symbol) return true;
  if (e.kind == ExprTree::Kind::scalar) return e.value.is_real() && sgn(e.value.re()) >= 0 && e.value.re().get_den() == 1;
  return false;
}

std::string wrapped(const ExprTree& e) {
  std::string s = to_string(e);
  return is_atomic(e) ? s : "(" + s + ")";
}

}  // namespace

std::string to_string(const ExprTree& e) {
  switch (e.kind) {
    case ExprTree::Kind::scalar: return e.value.to_string();
    case ExprTree::Kind::symbol: return e.name;
    case ExprTree::Kind::sum: {
      std::string out;
      for (std::size_t k = 0; k < e.children.size(); ++k) {
        const ExprTree& c = e.children[k];
        std::string t = c.kind == ExprTree::Kind::sum ? "(" + to_string(c) + ")" : to_string(c);
        if (k == 0) {
          out = t;
        } else if (t.size() > 1 && t[0] == '-') {
          out += " - " + t.substr(1);
        } else {
          out += " + " + t;
        }
      }
      return out;
    }
    case ExprTree::Kind::product: {
      std::vector<std::string> factors;
      bool negate = false;
      for (const ExprTree& c : e.children) {
        if (c.kind == ExprTree::Kind::power && c.exponent == 0) continue;
        if (c.kind == ExprTree::Kind::scalar && c.value == GaussianRational(1)) continue;
        if (c.kind == ExprTree::Kind::scalar && c.value == GaussianRational(-1)) {
          negate = !negate;
          continue;
        }
        factors.push_back(c.kind == ExprTree::Kind::power && c.exponent == 1 ? wrapped(c.children[0]) : wrapped(c));
      }
      std::string out;
      for (std::size_t k = 0; k < factors.size(); ++k) {
        if (k > 0) out += "*";
        out += factors[k];
      }
      if (out.empty()) out = "1";
      return negate ? "-" + out : out;
    }
    case ExprTree::Kind::quotient: return wrapped(e.children[0]) + "/" + wrapped(e.children[1]);
    case ExprTree::Kind::power:
      if (e.exponent == 0) return "1";
      if (e.exponent == 1) return to_string(e.children[0]);
      return wrapped(e.children[0]) + "^" + std::to_string(e.exponent);
  }
  return "";
}

bool is_reserved_symbol(const std::string& name) {
  static const std::vector<std::string> reserved{"x", "y", "Dx", "Dy", "BB", "S", "X2", "i"};
  return std::find(reserved.begin(), reserved.end(), name) != reserved.end();
}

namespace {

bool is_identifier(const std::string& s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  return std::all_of(s.begin(), s.end(), [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
}

}  // namespace

void validate_env(const ParamEnv& env) {
  for (const auto& [name, value] : env) {
    if (!is_identifier(name)) throw Error(ErrorKind::InvalidArgument, "bad parameter name '" + name + "'");
    if (is_reserved_symbol(name)) throw Error(ErrorKind::ReservedSymbolMisuse, "parameter name '" + name + "' is reserved");
  }
}

namespace {

struct Token {
  enum class Kind { number, ident, op, end };
  Kind kind;
  std::string text;
  std::size_t pos;
};

std::vector<Token> tokenize(const std::string& s) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
      out.push_back({Token::Kind::number, s.substr(i, j - i), i});
      i = j;
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_')) ++j;
      out.push_back({Token::Kind::ident, s.substr(i, j - i), i});
      i = j;
      continue;
    }
    if (std::string("+-*/^()").find(c) != std::string::npos) {
      out.push_back({Token::Kind::op, std::string(1, c), i});
      ++i;
      continue;
    }
    throw SyntaxError(i, std::string("unexpected character '") + c + "'");
  }
  out.push_back({Token::Kind::end, "", s.size()});
  return out;
}

class Parser {
 public:
  Parser(const std::string& text, const Dialect& dialect, const ParamEnv& env)
      : tokens_(tokenize(text)), dialect_(dialect), env_(env), allowed_(dialect.symbols()) {}

  ExprTree run() {
    ExprTree e = expr();
    if (peek().kind != Token::Kind::end) throw SyntaxError(peek().pos, "unexpected '" + peek().text + "'");
    return e;
  }

 private:
  const Token& peek() const { return tokens_[pos_]; }
  bool at_op(const char* op) const { return peek().kind == Token::Kind::op && peek().text == op; }
  Token take() { return tokens_[pos_++]; }

  ExprTree signed_term() {
    bool negative = false;
    while (at_op("-") || at_op("+")) {
      if (take().text == "-") negative = !negative;
    }
    ExprTree t = term();
    if (!negative) return t;
    if (t.kind == ExprTree::Kind::scalar) return ExprTree::make_scalar(-t.value);
    return ExprTree::make_product({ExprTree::make_scalar(-1), std::move(t)});
  }

  ExprTree expr() {
    std::vector<ExprTree> terms;
    terms.push_back(signed_term());
    while (at_op("+") || at_op("-")) {
      // The sign is consumed by signed_term.
      terms.push_back(signed_term());
    }
    return ExprTree::make_sum(std::move(terms));
  }

  ExprTree term() {
    ExprTree acc = factor();
    std::vector<ExprTree> factors;
    factors.push_back(std::move(acc));
    while (at_op("*") || at_op("/")) {
      std::string op = take().text;
      ExprTree rhs = factor();
      if (op == "*") {
        factors.push_back(std::move(rhs));
      } else {
        ExprTree num = ExprTree::make_product(std::move(factors));
        factors.clear();
        factors.push_back(ExprTree::make_quotient(std::move(num), std::move(rhs)));
      }
    }
    return ExprTree::make_product(std::move(factors));
  }

  ExprTree factor() {
    ExprTree b = base();
    if (at_op("^")) {
      take();
      const Token& t = peek();
      if (t.kind != Token::Kind::number) throw SyntaxError(t.pos, "expected a nonnegative integer exponent");
      take();
      if (t.text.size() > 4) throw SyntaxError(t.pos, "exponent too large");
      return ExprTree::make_power(std::move(b), static_cast<unsigned>(std::stoul(t.text)));
    }
    return b;
  }

  ExprTree base() {
    const Token& t = peek();
    switch (t.kind) {
      case Token::Kind::number: {
        take();
        mpz_class num(t.text);
        if (at_op("/") && tokens_[pos_ + 1].kind == Token::Kind::number) {
          take();
          const Token& d = take();
          mpz_class den(d.text);
          if (den == 0) throw SyntaxError(d.pos, "zero denominator");
          mpq_class q(num, den);
          q.canonicalize();
          return ExprTree::make_scalar(GaussianRational(q));
        }
        return ExprTree::make_scalar(GaussianRational(mpq_class(num)));
      }
      case Token::Kind::ident: {
        take();
        if (t.text == "i") return ExprTree::make_scalar(GaussianRational::imag_unit());
        if (is_reserved_symbol(t.text)) {
          if (std::find(allowed_.begin(), allowed_.end(), t.text) == allowed_.end()) {
            throw Error(ErrorKind::ReservedSymbolMisuse,
                        "symbol '" + t.text + "' at position " + std::to_string(t.pos) + " is not part of this dialect");
          }
          return ExprTree::make_symbol(t.text);
        }
        auto it = env_.find(t.text);
        if (it == env_.end()) {
          throw Error(ErrorKind::UnboundParameter, "'" + t.text + "' at position " + std::to_string(t.pos));
        }
        return ExprTree::make_scalar(it->second);
      }
      case Token::Kind::op:
        if (t.text == "(") {
          take();
          ExprTree e = expr();
          if (!at_op(")")) throw SyntaxError(peek().pos, "expected ')'");
          take();
          return e;
        }
        throw SyntaxError(t.pos, "unexpected '" + t.text + "'");
      case Token::Kind::end: throw SyntaxError(t.pos, "unexpected end of input");
    }
    throw SyntaxError(t.pos, "unreachable");
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  Dialect dialect_;
  const ParamEnv& env_;
  std::vector<std::string> allowed_;
};

}  // namespace

ExprTree parse(const std::string& text, const Dialect& dialect, const ParamEnv& env) {
  validate_env(env);
  return Parser(text, dialect, env).run();
}

OreOp expand(const ExprTree& e, Var v) {
  switch (e.kind) {
    case ExprTree::Kind::scalar: return OreOp::scalar(e.value, v);
    case ExprTree::Kind::symbol:
      if (e.name == var_name(v)) return OreOp::function(RatFunc(Poly::variable(v)));
      if (e.name == derivation_name(v)) return OreOp::derivation(v);
      throw Error(ErrorKind::ReservedSymbolMisuse, "symbol '" + e.name + "' cannot be expanded in " + var_name(v));
    case ExprTree::Kind::sum: {
      OreOp acc(v);
      for (const auto& c : e.children) acc += expand(c, v);
      return acc;
    }
    case ExprTree::Kind::product: {
      OreOp acc = OreOp::identity(v);
      for (const auto& c : e.children) acc = acc * expand(c, v);
      return acc;
    }
    case ExprTree::Kind::quotient: {
      OreOp num = expand(e.children[0], v);
      OreOp den = expand(e.children[1], v);
      if (den.is_zero()) throw Error(ErrorKind::DivisionByZero, "division by zero in expression");
      if (den.order() != 0) throw Error(ErrorKind::InvalidArgument, "divisor must not contain derivatives");
      RatFunc inv = RatFunc(Poly::constant(1, v)) / den.coeff(0);
      return num * OreOp::function(inv);
    }
    case ExprTree::Kind::power: return expand(e.children[0], v).pow(e.exponent);
  }
  return OreOp(v);
}

GaussianRational evaluate_scalar(const ExprTree& e) {
  switch (e.kind) {
    case ExprTree::Kind::scalar: return e.value;
    case ExprTree::Kind::symbol:
      throw Error(ErrorKind::ReservedSymbolMisuse, "symbol '" + e.name + "' in a scalar expression");
    case ExprTree::Kind::sum: {
      GaussianRational acc(0);
      for (const auto& c : e.children) acc += evaluate_scalar(c);
      return acc;
    }
    case ExprTree::Kind::product: {
      GaussianRational acc(1);
      for (const auto& c : e.children) acc *= evaluate_scalar(c);
      return acc;
    }
    case ExprTree::Kind::quotient: return evaluate_scalar(e.children[0]) / evaluate_scalar(e.children[1]);
    case ExprTree::Kind::power: {
      GaussianRational b = evaluate_scalar(e.children[0]);
      GaussianRational acc(1);
      for (unsigned k = 0; k < e.exponent; ++k) acc *= b;
      return acc;
    }
  }
  return GaussianRational(0);
}

OreOp parse_op(const std::string& text, Var v, const ParamEnv& env) {
  return expand(parse(text, v == Var::x ? Dialect::raw_x() : Dialect::raw_y(), env), v);
}

Poly parse_poly(const std::string& text, Var v, const ParamEnv& env) {
  OreOp d = parse_op(text, v, env);
  if (d.is_zero()) return Poly(v);
  if (d.order() != 0 || !d.coeff(0).is_polynomial()) {
    throw Error(ErrorKind::InvalidArgument, "'" + text + "' is not a polynomial in " + var_name(v));
  }
  return d.coeff(0).num().with_var(v);
}

GaussianRational parse_scalar(const std::string& text, const ParamEnv& env) {
  return evaluate_scalar(parse(text, Dialect::scalar(), env));
}

std::string print_op(const OreOp& d) { return to_string(d); }

}  // namespace bispectral
