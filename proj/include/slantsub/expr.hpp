#pragma once

#include <map>
#include <memory>
#include <string>
#include <string_view>

#include <Eigen/Dense>

#include "slantsub/errors.hpp"

namespace slantsub {

/// Scenario arithmetic expressions: constants, variables x1..xn,
/// unary {neg, sin, cos, sqrt}, binary {+, -, *, /, ^}.
struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
    enum class Kind { Constant, Variable, Unary, Binary };
    enum class Op { Neg, Sin, Cos, Sqrt, Add, Sub, Mul, Div, Pow };

    Kind kind = Kind::Constant;
    double value = 0.0; // Constant
    int var = 0;        // Variable, zero-based
    Op op = Op::Neg;
    ExprPtr a;
    ExprPtr b;
};

ExprPtr make_const(double v);
ExprPtr make_var(int index);

/// Named constants are resolved to Constant nodes at parse time; "pi" is
/// always bound. Variables past `dimension` are rejected.
ExprPtr parse_expression(std::string_view text, int dimension,
                         const std::map<std::string, double>& constants = {});

/// Division/sqrt/pow guarded; throws EvalError instead of returning NaN/inf.
double eval_expr(const Expr& e, const Eigen::VectorXd& coords);

/// d/dx_axis, or nullptr when the derivative leaves the language
/// (a^b with non-constant exponent needs log).
ExprPtr try_differentiate(const ExprPtr& e, int axis);

std::string render(const Expr& e);

bool expr_equal(const Expr& lhs, const Expr& rhs);

} // namespace slantsub
