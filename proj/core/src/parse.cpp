#include "superhol/parse.hpp"

#include <cctype>
#include <charconv>
#include <cstring>

namespace superhol {

namespace {

struct Token {
  enum class Kind { number, ident, punct, end };
  Kind kind;
  double num = 0.0;
  std::string text;
  int line = 1, col = 1;
};

class Lexer {
public:
  explicit Lexer(const std::string& s) : s_(s) { advance(); }

  const Token& peek() const { return tok_; }

  Token next() {
    Token t = tok_;
    advance();
    return t;
  }

  [[noreturn]] void error(const std::string& msg) const {
    fail(ErrorCode::parse_error, "syntax error at " + std::to_string(tok_.line) + ":" +
                                     std::to_string(tok_.col) + ": " + msg);
  }

private:
  void advance() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) {
      if (s_[pos_] == '\n') {
        ++line_;
        col_ = 1;
      } else {
        ++col_;
      }
      ++pos_;
    }
    tok_ = Token{};
    tok_.line = line_;
    tok_.col = col_;
    if (pos_ >= s_.size()) {
      tok_.kind = Token::Kind::end;
      return;
    }
    char c = s_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (pos_ < s_.size() && s_[pos_] == '.') {
        ++pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      }
      if (pos_ < s_.size() && (s_[pos_] == 'e' || s_[pos_] == 'E')) {
        std::size_t save = pos_;
        ++pos_;
        if (pos_ < s_.size() && (s_[pos_] == '+' || s_[pos_] == '-')) ++pos_;
        if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
          while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        } else {
          pos_ = save; // 'e' belonged to something else
        }
      }
      tok_.kind = Token::Kind::number;
      tok_.text = s_.substr(start, pos_ - start);
      auto res = std::from_chars(s_.data() + start, s_.data() + pos_, tok_.num);
      if (res.ec != std::errc())
        fail(ErrorCode::parse_error, "bad numeric literal '" + tok_.text + "'");
      col_ += int(pos_ - start);
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() &&
             (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
        ++pos_;
      tok_.kind = Token::Kind::ident;
      tok_.text = s_.substr(start, pos_ - start);
      col_ += int(pos_ - start);
      return;
    }
    tok_.kind = Token::Kind::punct;
    tok_.text = std::string(1, c);
    ++pos_;
    ++col_;
  }

  const std::string& s_;
  std::size_t pos_ = 0;
  int line_ = 1, col_ = 1;
  Token tok_;
};

struct Framed {
  SuperFunction scalar;
  std::map<int, SuperFunction> frames;

  bool has_frames() const { return !frames.empty(); }

  void prune() {
    for (auto it = frames.begin(); it != frames.end();)
      it = it->second.is_zero() ? frames.erase(it) : std::next(it);
  }
};

class Parser {
public:
  Parser(const std::string& text, const ParseContext& ctx) : lex_(text), ctx_(ctx) {}

  Framed run() {
    Framed v = parse_expr();
    if (lex_.peek().kind != Token::Kind::end)
      lex_.error("unexpected trailing input '" + lex_.peek().text + "'");
    v.prune();
    return v;
  }

  std::vector<std::string> warnings;

private:
  Framed parse_expr() {
    Framed v = parse_term();
    while (lex_.peek().kind == Token::Kind::punct &&
           (lex_.peek().text == "+" || lex_.peek().text == "-")) {
      bool minus = lex_.next().text == "-";
      Framed rhs = parse_term();
      if (minus) rhs = negate(rhs);
      v.scalar += rhs.scalar;
      for (auto& [m, f] : rhs.frames) {
        auto it = v.frames.find(m);
        if (it == v.frames.end())
          v.frames.emplace(m, f);
        else
          it->second += f;
      }
    }
    return v;
  }

  Framed parse_term() {
    Framed v = parse_unary();
    while (lex_.peek().kind == Token::Kind::punct &&
           (lex_.peek().text == "*" || lex_.peek().text == "/")) {
      bool div = lex_.next().text == "/";
      Framed rhs = parse_unary();
      if (div) {
        if (rhs.has_frames() || rhs.scalar.terms().size() != 1)
          lex_.error("division is only allowed by nonzero numeric literals");
        Expr c = rhs.scalar.coeff(0, 0);
        if (!ex_is_const(c))
          lex_.error("division is only allowed by nonzero numeric literals");
        if (c->value == 0.0) lex_.error("division by zero");
        v = divide(v, c->value);
      } else {
        v = multiply(v, rhs);
      }
    }
    return v;
  }

  Framed parse_unary() {
    if (lex_.peek().kind == Token::Kind::punct && lex_.peek().text == "-") {
      lex_.next();
      return negate(parse_unary());
    }
    return parse_power();
  }

  Framed parse_power() {
    Framed base = parse_atom();
    if (lex_.peek().kind == Token::Kind::punct && lex_.peek().text == "^") {
      lex_.next();
      int sign = 1;
      if (lex_.peek().kind == Token::Kind::punct && lex_.peek().text == "-") {
        lex_.next();
        sign = -1;
      }
      if (lex_.peek().kind != Token::Kind::number) lex_.error("expected integer exponent");
      Token t = lex_.next();
      double d = t.num;
      int k = int(d);
      if (double(k) != d) lex_.error("exponent must be an integer");
      k *= sign;
      if (base.has_frames()) {
        if (k == 1) return base;
        if (k == 0) return make_scalar(SuperFunction::constant(1.0));
        lex_.error("frame symbols cannot be raised to powers");
      }
      if (k < 0) {
        // negative powers arise internally; the surface grammar allows them
        // only on purely scalar atoms
        SuperFunction out = SuperFunction::scalar(
            ex_pow(require_pure_scalar(base.scalar, "negative power"), k));
        return make_scalar(out);
      }
      // a purely scalar base keeps its power node; monomial content must be
      // multiplied out for the sign bookkeeping
      if (base.scalar.terms().size() == 1 &&
          base.scalar.terms().begin()->first == SuperFunction::Key{0, 0}) {
        return make_scalar(SuperFunction::scalar(ex_pow(base.scalar.coeff(0, 0), k)));
      }
      std::string warn;
      SuperFunction out = sf_pow(base.scalar, k, &warn);
      if (!warn.empty()) warnings.push_back(warn);
      return make_scalar(out);
    }
    return base;
  }

  Expr require_pure_scalar(const SuperFunction& f, const std::string& what) {
    for (const auto& [key, c] : f.terms())
      if (key.first != 0 || key.second != 0)
        lex_.error(what + " requires a purely scalar operand");
    return f.coeff(0, 0);
  }

  Framed parse_atom() {
    const Token& t = lex_.peek();
    if (t.kind == Token::Kind::number) {
      return make_scalar(SuperFunction::constant(lex_.next().num));
    }
    if (t.kind == Token::Kind::punct && t.text == "(") {
      lex_.next();
      Framed v = parse_expr();
      expect(")");
      return v;
    }
    if (t.kind == Token::Kind::ident) return parse_ident();
    lex_.error("expected a number, identifier, function, or '('");
  }

  void expect(const std::string& p) {
    if (lex_.peek().kind != Token::Kind::punct || lex_.peek().text != p)
      lex_.error("expected '" + p + "'");
    lex_.next();
  }

  static bool split_indexed(const std::string& s, const char* prefix, int& idx) {
    std::size_t n = std::strlen(prefix);
    if (s.size() <= n || s.compare(0, n, prefix) != 0) return false;
    for (std::size_t i = n; i < s.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    idx = std::atoi(s.c_str() + n);
    return true;
  }

  Framed parse_ident() {
    Token t = lex_.next();
    const std::string& name = t.text;

    for (Func f : {Func::sin, Func::cos, Func::exp, Func::tanh, Func::sqrt}) {
      if (name == func_name(f)) {
        expect("(");
        Framed arg = parse_expr();
        expect(")");
        if (arg.has_frames()) lex_.error("frame symbols cannot appear inside functions");
        return make_scalar(sf_func(f, arg.scalar));
      }
    }

    if (name == "t") {
      if (!ctx_.allow_t) unknown(t);
      return make_scalar(SuperFunction::scalar(ex_var(kVarT)));
    }
    if (name == "s") {
      if (!ctx_.allow_s) unknown(t);
      return make_scalar(SuperFunction::scalar(ex_var(kVarS)));
    }

    int idx = 0;
    if (split_indexed(name, "x", idx)) {
      if (idx < 1 || idx > ctx_.num_x) unknown(t);
      return make_scalar(SuperFunction::scalar(ex_var(idx)));
    }
    if (split_indexed(name, "th", idx)) {
      if (idx < 1 || idx > ctx_.num_theta) unknown(t);
      return make_scalar(SuperFunction::monomial(Mask(1) << (idx - 1), 0, ex_const(1.0)));
    }
    if (split_indexed(name, "eta", idx)) {
      if (idx < 1 || idx > ctx_.num_eta) unknown(t);
      return make_scalar(SuperFunction::monomial(0, Mask(1) << (idx - 1), ex_const(1.0)));
    }
    if (split_indexed(name, "T", idx)) {
      if (ctx_.num_frames == 0)
        lex_.error("frame symbol '" + name + "' is not legal in this value");
      if (idx < 1 || idx > ctx_.num_frames) unknown(t);
      Framed v;
      v.frames[idx] = SuperFunction::constant(1.0);
      return v;
    }
    unknown(t);
  }

  [[noreturn]] void unknown(const Token& t) {
    fail(ErrorCode::parse_error, "unknown identifier '" + t.text + "' at " +
                                     std::to_string(t.line) + ":" + std::to_string(t.col));
  }

  static Framed make_scalar(SuperFunction f) {
    Framed v;
    v.scalar = std::move(f);
    return v;
  }

  static Framed negate(Framed v) {
    v.scalar = sf_neg(v.scalar);
    for (auto& [m, f] : v.frames) f = sf_neg(f);
    return v;
  }

  static Framed divide(Framed v, double d) {
    auto div_sf = [d](const SuperFunction& f) {
      SuperFunction out;
      for (const auto& [key, c] : f.terms())
        out.set_coeff(key.first, key.second, ex_div(c, d));
      return out;
    };
    v.scalar = div_sf(v.scalar);
    for (auto& [m, f] : v.frames) f = div_sf(f);
    return v;
  }

  Framed multiply(const Framed& a, const Framed& b) {
    if (a.has_frames() && b.has_frames())
      lex_.error("products of two frame symbols are not allowed");
    // Frame symbols are positionless component tags: the non-frame factors of
    // a term multiply, in written order, into the left coefficient of T^m.
    Framed out;
    out.scalar = sf_mul(a.scalar, b.scalar);
    for (const auto& [m, f] : b.frames) {
      SuperFunction comp = sf_mul(a.scalar, f);
      if (!comp.is_zero()) out.frames[m] += comp;
    }
    for (const auto& [m, f] : a.frames) {
      SuperFunction comp = sf_mul(f, b.scalar);
      if (!comp.is_zero()) out.frames[m] += comp;
    }
    return out;
  }

  Lexer lex_;
  const ParseContext& ctx_;
};

} // namespace

ParseResult parse_superfunction(const std::string& text, const ParseContext& ctx) {
  ParseContext c = ctx;
  c.num_frames = 0;
  Parser p(text, c);
  Framed v = p.run();
  return {std::move(v.scalar), std::move(p.warnings)};
}

FramedParseResult parse_framed(const std::string& text, const ParseContext& ctx) {
  if (ctx.num_frames <= 0 || int(ctx.frame_parity.size()) != ctx.num_frames)
    fail(ErrorCode::precondition_failed, "frame-valued parse needs frame parities");
  Parser p(text, ctx);
  Framed v = p.run();
  FramedParseResult r;
  r.scalar = std::move(v.scalar);
  r.frames = std::move(v.frames);
  r.warnings = std::move(p.warnings);
  return r;
}

GrassmannElement parse_element(const std::string& text, int gens) {
  ParseContext ctx;
  ctx.num_eta = gens;
  ParseResult r = parse_superfunction(text, ctx);
  return sf_to_element(r.value, gens);
}

} // namespace superhol
