#include "fpl/dsl.hpp"

#include <cctype>
#include <cstdio>
#include <sstream>

namespace fpl::dsl {

namespace {

enum class Tok {
  number, ident, plus, minus, star, slash, caret, lparen, rparen,
  comma, semicolon, colon, lt, le, gt, ge, eq, end,
};

struct Token {
  Tok kind;
  std::string text;
  std::size_t offset;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) { advance(); }

  const Token& peek() const { return current_; }

  Token take() {
    Token t = current_;
    advance();
    return t;
  }

 private:
  void advance() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    const std::size_t start = pos_;
    if (pos_ >= src_.size()) {
      current_ = {Tok::end, "", start};
      return;
    }
    const char c = src_[pos_];
    auto single = [&](Tok kind) {
      ++pos_;
      current_ = {kind, std::string(1, c), start};
    };
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t end = pos_;
      while (end < src_.size() && std::isdigit(static_cast<unsigned char>(src_[end]))) ++end;
      if (end < src_.size() && src_[end] == '.') {
        ++end;
        if (end >= src_.size() || !std::isdigit(static_cast<unsigned char>(src_[end])))
          throw ParseError("digits expected after decimal point", end);
        while (end < src_.size() && std::isdigit(static_cast<unsigned char>(src_[end]))) ++end;
      }
      current_ = {Tok::number, std::string(src_.substr(pos_, end - pos_)), start};
      pos_ = end;
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t end = pos_;
      while (end < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[end])) || src_[end] == '_'))
        ++end;
      current_ = {Tok::ident, std::string(src_.substr(pos_, end - pos_)), start};
      pos_ = end;
      return;
    }
    switch (c) {
      case '+': single(Tok::plus); return;
      case '-': single(Tok::minus); return;
      case '*': single(Tok::star); return;
      case '/': single(Tok::slash); return;
      case '^': single(Tok::caret); return;
      case '(': single(Tok::lparen); return;
      case ')': single(Tok::rparen); return;
      case ',': single(Tok::comma); return;
      case ';': single(Tok::semicolon); return;
      case ':': single(Tok::colon); return;
      case '<':
        if (pos_ + 1 < src_.size() && src_[pos_ + 1] == '=') {
          pos_ += 2;
          current_ = {Tok::le, "<=", start};
        } else single(Tok::lt);
        return;
      case '>':
        if (pos_ + 1 < src_.size() && src_[pos_ + 1] == '=') {
          pos_ += 2;
          current_ = {Tok::ge, ">=", start};
        } else single(Tok::gt);
        return;
      case '=':
        if (pos_ + 1 < src_.size() && src_[pos_ + 1] == '=') {
          pos_ += 2;
          current_ = {Tok::eq, "==", start};
        } else throw ParseError("'=' must be '=='", start);
        return;
    }
    throw ParseError(std::string("unexpected character '") + c + "'", start);
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  Token current_;
};

class Parser {
 public:
  Parser(std::string_view src, std::vector<std::string> vars)
      : lexer_(src), vars_(std::move(vars)) {}

  ExprPtr parse() {
    ExprPtr e = expr();
    const Token& t = lexer_.peek();
    if (t.kind != Tok::end)
      throw ParseError("unexpected token '" + t.text + "'", t.offset);
    return e;
  }

 private:
  static ExprPtr make(Expr e) { return std::make_shared<const Expr>(std::move(e)); }

  ExprPtr expr() {
    ExprPtr lhs = term();
    while (lexer_.peek().kind == Tok::plus || lexer_.peek().kind == Tok::minus) {
      const Token op = lexer_.take();
      if (lexer_.peek().kind == Tok::end)
        throw ParseError("expression expected", lexer_.peek().offset);
      ExprPtr rhs = term();
      lhs = make(Expr{BinaryNode{op.kind == Tok::plus ? BinOp::add : BinOp::sub, lhs, rhs}});
    }
    return lhs;
  }

  ExprPtr term() {
    ExprPtr lhs = factor();
    while (lexer_.peek().kind == Tok::star || lexer_.peek().kind == Tok::slash) {
      const Token op = lexer_.take();
      ExprPtr rhs = factor();
      lhs = make(Expr{BinaryNode{op.kind == Tok::star ? BinOp::mul : BinOp::div, lhs, rhs}});
    }
    return lhs;
  }

  ExprPtr factor() {
    ExprPtr b = base();
    if (lexer_.peek().kind == Tok::caret) {
      lexer_.take();
      bool negative = false;
      if (lexer_.peek().kind == Tok::minus) {
        lexer_.take();
        negative = true;
      }
      const Token t = lexer_.take();
      if (t.kind != Tok::number || t.text.find('.') != std::string::npos)
        throw ParseError("integer exponent expected after '^'", t.offset);
      if (t.text.size() > 4) throw ParseError("exponent too large", t.offset);
      long e = std::stol(t.text);
      return make(Expr{PowNode{b, negative ? -e : e}});
    }
    return b;
  }

  ExprPtr base() {
    const Token t = lexer_.take();
    switch (t.kind) {
      case Tok::number: {
        NumberNode n{t.text, std::stod(t.text), parse_rational(t.text)};
        return make(Expr{std::move(n)});
      }
      case Tok::lparen: {
        ExprPtr e = expr();
        expect(Tok::rparen, ")");
        return e;
      }
      case Tok::ident: {
        for (std::size_t i = 0; i < vars_.size(); ++i)
          if (vars_[i] == t.text) return make(Expr{VarNode{static_cast<int>(i)}});
        if (t.text == "piecewise") return piecewise(t);
        Builtin fn;
        if (t.text == "abs") fn = Builtin::abs;
        else if (t.text == "sqrt") fn = Builtin::sqrt;
        else if (t.text == "min") fn = Builtin::min;
        else if (t.text == "max") fn = Builtin::max;
        else throw ParseError("unknown identifier '" + t.text + "'", t.offset);
        expect(Tok::lparen, "(");
        std::vector<ExprPtr> args;
        args.push_back(expr());
        while (lexer_.peek().kind == Tok::comma) {
          lexer_.take();
          args.push_back(expr());
        }
        expect(Tok::rparen, ")");
        const std::size_t want_min = (fn == Builtin::min || fn == Builtin::max) ? 2 : 1;
        const std::size_t want_max = (fn == Builtin::min || fn == Builtin::max) ? args.size() : 1;
        if (args.size() < want_min || args.size() > want_max)
          throw ParseError("wrong argument count for '" + t.text + "'", t.offset);
        return make(Expr{CallNode{fn, std::move(args)}});
      }
      default:
        throw ParseError("expression expected", t.offset);
    }
  }

  ExprPtr piecewise(const Token& kw) {
    expect(Tok::lparen, "(");
    PiecewiseNode node;
    while (true) {
      ExprPtr first = expr();
      const Tok k = lexer_.peek().kind;
      if (k == Tok::lt || k == Tok::le || k == Tok::gt || k == Tok::ge || k == Tok::eq) {
        const Token op = lexer_.take();
        ExprPtr rhs = expr();
        expect(Tok::colon, ":");
        ExprPtr value = expr();
        expect(Tok::semicolon, ";");
        RelOp rel;
        switch (op.kind) {
          case Tok::lt: rel = RelOp::lt; break;
          case Tok::le: rel = RelOp::le; break;
          case Tok::gt: rel = RelOp::gt; break;
          case Tok::ge: rel = RelOp::ge; break;
          default: rel = RelOp::eq; break;
        }
        node.cases.push_back({Guard{first, rel, rhs}, value});
        continue;
      }
      node.otherwise = first;  // mandatory default arm
      expect(Tok::rparen, ")");
      break;
    }
    (void)kw;
    return make(Expr{std::move(node)});
  }

  void expect(Tok kind, const char* what) {
    const Token t = lexer_.take();
    if (t.kind != kind)
      throw ParseError(std::string("expected '") + what + "'", t.offset);
  }

  Lexer lexer_;
  std::vector<std::string> vars_;
};

const std::vector<std::string>& var_names(int arity) {
  static const std::vector<std::string> map_vars{"x"};
  static const std::vector<std::string> unary{"t"};
  static const std::vector<std::string> ternary{"u", "v", "w"};
  switch (arity) {
    case 0: return map_vars;
    case 1: return unary;
    default: return ternary;
  }
}

void print(const ExprPtr& e, const std::vector<std::string>& vars, std::string& out);

void print_operand(const ExprPtr& e, const std::vector<std::string>& vars, std::string& out) {
  const bool needs_parens = std::holds_alternative<BinaryNode>(e->node) ||
                            std::holds_alternative<PowNode>(e->node);
  if (needs_parens) out += '(';
  print(e, vars, out);
  if (needs_parens) out += ')';
}

void print(const ExprPtr& e, const std::vector<std::string>& vars, std::string& out) {
  if (const auto* num = std::get_if<NumberNode>(&e->node)) {
    out += num->literal;
  } else if (const auto* var = std::get_if<VarNode>(&e->node)) {
    out += vars[var->index];
  } else if (const auto* bin = std::get_if<BinaryNode>(&e->node)) {
    out += '(';
    print(bin->lhs, vars, out);
    switch (bin->op) {
      case BinOp::add: out += " + "; break;
      case BinOp::sub: out += " - "; break;
      case BinOp::mul: out += " * "; break;
      case BinOp::div: out += " / "; break;
    }
    print(bin->rhs, vars, out);
    out += ')';
  } else if (const auto* pw = std::get_if<PowNode>(&e->node)) {
    print_operand(pw->base, vars, out);
    out += '^';
    out += std::to_string(pw->exponent);
  } else if (const auto* call = std::get_if<CallNode>(&e->node)) {
    switch (call->fn) {
      case Builtin::abs: out += "abs"; break;
      case Builtin::sqrt: out += "sqrt"; break;
      case Builtin::min: out += "min"; break;
      case Builtin::max: out += "max"; break;
    }
    out += '(';
    for (std::size_t i = 0; i < call->args.size(); ++i) {
      if (i) out += ", ";
      print(call->args[i], vars, out);
    }
    out += ')';
  } else {
    const auto& node = std::get<PiecewiseNode>(e->node);
    out += "piecewise(";
    for (const auto& [guard, value] : node.cases) {
      print(guard.lhs, vars, out);
      switch (guard.op) {
        case RelOp::lt: out += " < "; break;
        case RelOp::le: out += " <= "; break;
        case RelOp::gt: out += " > "; break;
        case RelOp::ge: out += " >= "; break;
        case RelOp::eq: out += " == "; break;
      }
      print(guard.rhs, vars, out);
      out += " : ";
      print(value, vars, out);
      out += " ; ";
    }
    print(node.otherwise, vars, out);
    out += ')';
  }
}

}  // namespace

MapExpr parse_map(std::string_view src) {
  Parser p(src, var_names(0));
  return MapExpr{p.parse()};
}

FuncExpr parse_func(std::string_view src, int arity) {
  if (arity != 1 && arity != 3) throw InvalidInput("function arity must be 1 or 3");
  Parser p(src, var_names(arity));
  return FuncExpr{p.parse(), arity};
}

std::string to_string(const MapExpr& expr) {
  std::string out;
  print(expr.root, var_names(0), out);
  return out;
}

std::string to_string(const FuncExpr& expr) {
  std::string out;
  print(expr.root, var_names(expr.arity), out);
  return out;
}

bool structurally_equal(const ExprPtr& a, const ExprPtr& b) {
  if (a->node.index() != b->node.index()) return false;
  if (const auto* num = std::get_if<NumberNode>(&a->node))
    return num->literal == std::get<NumberNode>(b->node).literal;
  if (const auto* var = std::get_if<VarNode>(&a->node))
    return var->index == std::get<VarNode>(b->node).index;
  if (const auto* bin = std::get_if<BinaryNode>(&a->node)) {
    const auto& other = std::get<BinaryNode>(b->node);
    return bin->op == other.op && structurally_equal(bin->lhs, other.lhs) &&
           structurally_equal(bin->rhs, other.rhs);
  }
  if (const auto* pw = std::get_if<PowNode>(&a->node)) {
    const auto& other = std::get<PowNode>(b->node);
    return pw->exponent == other.exponent && structurally_equal(pw->base, other.base);
  }
  if (const auto* call = std::get_if<CallNode>(&a->node)) {
    const auto& other = std::get<CallNode>(b->node);
    if (call->fn != other.fn || call->args.size() != other.args.size()) return false;
    for (std::size_t i = 0; i < call->args.size(); ++i)
      if (!structurally_equal(call->args[i], other.args[i])) return false;
    return true;
  }
  const auto& lhs = std::get<PiecewiseNode>(a->node);
  const auto& rhs = std::get<PiecewiseNode>(b->node);
  if (lhs.cases.size() != rhs.cases.size()) return false;
  for (std::size_t i = 0; i < lhs.cases.size(); ++i) {
    const auto& [ga, va] = lhs.cases[i];
    const auto& [gb, vb] = rhs.cases[i];
    if (ga.op != gb.op || !structurally_equal(ga.lhs, gb.lhs) ||
        !structurally_equal(ga.rhs, gb.rhs) || !structurally_equal(va, vb))
      return false;
  }
  return structurally_equal(lhs.otherwise, rhs.otherwise);
}

namespace {

std::string fmt(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

}  // namespace

SpotcheckReport spotcheck_f_class(const FuncExpr& f) {
  if (f.arity != 3) throw InvalidInput("F-class spot check needs a ternary function");
  SpotcheckReport report;
  const double at_origin = eval_func<double>(f, 0.0, 0.0, 0.0);
  report.add("origin", std::isfinite(at_origin) && std::fabs(at_origin) <= 1e-12,
             "F(0,0,0) = " + fmt(at_origin));
  double last = at_origin;
  bool finite = true;
  for (int k = 1; k <= 40; ++k) {
    const double t = std::ldexp(1.0, -k);
    last = eval_func<double>(f, t, t, t);
    if (!std::isfinite(last)) { finite = false; break; }
  }
  report.add("decay", finite && std::fabs(last) <= 1e-6,
             "F(t,t,t) at t = 2^-40 is " + fmt(last));
  return report;
}

SpotcheckReport spotcheck_scalar_class(const FuncExpr& f, ScalarClassKind kind) {
  if (f.arity != 1) throw InvalidInput("scalar class spot check needs a unary function");
  SpotcheckReport report;
  if (kind == ScalarClassKind::beta) {
    double worst = 0;
    bool finite = true;
    for (int k = 1; k <= 40; ++k) {
      const double v = eval_func<double>(f, std::ldexp(1.0, -k));
      if (!std::isfinite(v)) { finite = false; break; }
      if (k >= 30 && std::fabs(v) > worst) worst = std::fabs(v);
    }
    report.add("limsup", finite && worst <= 1e9,
               "max |beta(t)| over t in [2^-40, 2^-30] is " + fmt(worst));
  } else {
    int failures = 0;
    double first_bad = 0;
    for (int e = -20; e <= 10; ++e) {
      const double t = std::ldexp(1.0, e);
      const double v = eval_func<double>(f, t);
      if (!(std::isfinite(v) && v < t)) {
        if (failures == 0) first_bad = t;
        ++failures;
      }
    }
    report.add("below_identity", failures == 0,
               failures == 0 ? "phi(t) < t on the whole grid"
                             : "phi(t) >= t at " + std::to_string(failures) +
                                   " grid points, first at t = " + fmt(first_bad));
  }
  return report;
}

}  // namespace fpl::dsl
