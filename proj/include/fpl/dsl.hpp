#pragma once

#include <cmath>
#include <memory>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "fpl/errors.hpp"
#include "fpl/scalar.hpp"

namespace fpl::dsl {

enum class BinOp { add, sub, mul, div };
enum class RelOp { lt, le, gt, ge, eq };
enum class Builtin { abs, min, max, sqrt };

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct NumberNode {
  std::string literal;  // kept verbatim so printing round-trips
  double value;
  Rational exact;
};
struct VarNode {
  int index;
};
struct BinaryNode {
  BinOp op;
  ExprPtr lhs, rhs;
};
struct PowNode {
  ExprPtr base;
  long exponent;
};
struct CallNode {
  Builtin fn;
  std::vector<ExprPtr> args;
};
struct Guard {
  ExprPtr lhs;
  RelOp op;
  ExprPtr rhs;
};
struct PiecewiseNode {
  std::vector<std::pair<Guard, ExprPtr>> cases;  // evaluated in order
  ExprPtr otherwise;
};

struct Expr {
  std::variant<NumberNode, VarNode, BinaryNode, PowNode, CallNode, PiecewiseNode> node;
};

/// Piecewise real-valued expression in the single variable x.
struct MapExpr {
  ExprPtr root;
};

/// Expression in t (arity 1, for beta / phi) or (u, v, w) (arity 3, for F).
struct FuncExpr {
  ExprPtr root;
  int arity = 1;
};

MapExpr parse_map(std::string_view src);
FuncExpr parse_func(std::string_view src, int arity);

std::string to_string(const MapExpr& expr);
std::string to_string(const FuncExpr& expr);

bool structurally_equal(const ExprPtr& a, const ExprPtr& b);

namespace detail {

template <ScalarMode S>
S scalar_sqrt(const S& v) {
  if constexpr (kExactMode<S>) {
    if (v < S(0)) throw EvalError("sqrt of a negative value");
    auto root = exact_sqrt(v);
    if (!root) throw EvalError("sqrt is irrational in exact mode");
    return *root;
  } else {
    if (v < 0) throw EvalError("sqrt of a negative value");
    return std::sqrt(v);
  }
}

template <ScalarMode S>
S scalar_pow(const S& base, long exponent) {
  if (exponent == 0) return S(1);
  const bool negative = exponent < 0;
  unsigned long e = negative ? -static_cast<unsigned long>(exponent) : exponent;
  S acc(1), b = base;
  while (e > 0) {
    if (e & 1) acc *= b;
    b *= b;
    e >>= 1;
  }
  if (negative) {
    if (acc == S(0)) throw EvalError("division by zero in negative power");
    return S(1) / acc;
  }
  return acc;
}

}  // namespace detail

/// Evaluates an expression tree on the given argument vector. Piecewise
/// guards run in order, first true guard wins; '==' compares exactly in
/// both modes.
template <ScalarMode S>
S eval(const ExprPtr& expr, std::span<const S> args) {
  const auto& node = expr->node;
  if (const auto* num = std::get_if<NumberNode>(&node)) {
    if constexpr (kExactMode<S>) return num->exact;
    else return num->value;
  }
  if (const auto* var = std::get_if<VarNode>(&node)) return args[var->index];
  if (const auto* bin = std::get_if<BinaryNode>(&node)) {
    const S lhs = eval<S>(bin->lhs, args);
    const S rhs = eval<S>(bin->rhs, args);
    switch (bin->op) {
      case BinOp::add: return lhs + rhs;
      case BinOp::sub: return lhs - rhs;
      case BinOp::mul: return lhs * rhs;
      case BinOp::div:
        if (rhs == S(0)) throw EvalError("division by zero");
        return lhs / rhs;
    }
  }
  if (const auto* pw = std::get_if<PowNode>(&node))
    return detail::scalar_pow(eval<S>(pw->base, args), pw->exponent);
  if (const auto* call = std::get_if<CallNode>(&node)) {
    switch (call->fn) {
      case Builtin::abs: return scalar_abs(eval<S>(call->args[0], args));
      case Builtin::sqrt: return detail::scalar_sqrt(eval<S>(call->args[0], args));
      case Builtin::min: {
        S best = eval<S>(call->args[0], args);
        for (std::size_t i = 1; i < call->args.size(); ++i) {
          const S v = eval<S>(call->args[i], args);
          if (v < best) best = v;
        }
        return best;
      }
      case Builtin::max: {
        S best = eval<S>(call->args[0], args);
        for (std::size_t i = 1; i < call->args.size(); ++i) {
          const S v = eval<S>(call->args[i], args);
          if (v > best) best = v;
        }
        return best;
      }
    }
  }
  const auto& pw = std::get<PiecewiseNode>(node);
  for (const auto& [guard, value] : pw.cases) {
    const S lhs = eval<S>(guard.lhs, args);
    const S rhs = eval<S>(guard.rhs, args);
    bool hit = false;
    switch (guard.op) {
      case RelOp::lt: hit = lhs < rhs; break;
      case RelOp::le: hit = lhs <= rhs; break;
      case RelOp::gt: hit = lhs > rhs; break;
      case RelOp::ge: hit = lhs >= rhs; break;
      case RelOp::eq: hit = lhs == rhs; break;
    }
    if (hit) return eval<S>(value, args);
  }
  return eval<S>(pw.otherwise, args);
}

template <ScalarMode S>
S eval_map(const MapExpr& expr, const S& x) {
  return eval<S>(expr.root, std::span<const S>(&x, 1));
}

template <ScalarMode S>
S eval_func(const FuncExpr& expr, std::span<const S> args) {
  if (static_cast<int>(args.size()) != expr.arity)
    throw InvalidInput("function arity mismatch");
  return eval<S>(expr.root, args);
}

template <ScalarMode S>
S eval_func(const FuncExpr& expr, const S& t) {
  return eval_func(expr, std::span<const S>(&t, 1));
}

template <ScalarMode S>
S eval_func(const FuncExpr& expr, const S& u, const S& v, const S& w) {
  const S args[3] = {u, v, w};
  return eval_func(expr, std::span<const S>(args, 3));
}

// ---- advisory numeric spot checks for the function classes ----

struct SpotcheckItem {
  std::string name;
  bool pass;
  std::string detail;
};

struct SpotcheckReport {
  bool ok = true;
  std::vector<SpotcheckItem> items;

  void add(std::string name, bool pass, std::string detail) {
    ok = ok && pass;
    items.push_back({std::move(name), pass, std::move(detail)});
  }
};

/// Probes the F-class conditions: F(0,0,0) = 0 and decay to 0 along the
/// diagonal sequence (2^-k, 2^-k, 2^-k), k = 1..40. Advisory only:
/// continuity is not decidable from finitely many evaluations.
SpotcheckReport spotcheck_f_class(const FuncExpr& f);

enum class ScalarClassKind { beta, phi };

/// beta: probes beta(2^-k) for blow-up near 0 (limsup must stay finite).
/// phi: checks phi(t) < t on the logarithmic grid t = 2^e, e = -20..10.
SpotcheckReport spotcheck_scalar_class(const FuncExpr& f, ScalarClassKind kind);

}  // namespace fpl::dsl
