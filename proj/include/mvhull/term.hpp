// SPDX-License-Identifier: Apache-2.0
#pragma once

// Terms of the MV / Riesz MV signature and their concrete syntax.
//
//   term  := [ RAT "#" ] disj
//   disj  := conj { "\/" conj }
//   conj  := sum  { "/\" sum }
//   sum   := prod { "(+)" prod }
//   prod  := atom { "(.)" atom }
//   atom  := "~" atom | "(" term ")" | ident | "0" | "1"
//   RAT   := INT "/" POSINT
//
// Binary operators associate to the left; "~" binds tightest; a scalar
// prefix covers the rest of the enclosing term.

#include "mvhull/error.hpp"
#include "mvhull/rational.hpp"

#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace mvhull::term {

enum class Op { Var, Zero, One, Neg, Oplus, Odot, Join, Meet, Scalar };

struct Term {
    Op op = Op::Zero;
    std::string name;     // Var
    Rat scalar;           // Scalar
    std::vector<Term> args;

    static Term var(std::string n) { return {Op::Var, std::move(n), {}, {}}; }
    static Term zero() { return {Op::Zero, {}, {}, {}}; }
    static Term one() { return {Op::One, {}, {}, {}}; }
    static Term unary(Op op, Term a) { return {op, {}, {}, {std::move(a)}}; }
    static Term binary(Op op, Term a, Term b) { return {op, {}, {}, {std::move(a), std::move(b)}}; }
    static Term scaled(Rat q, Term a) { return {Op::Scalar, {}, std::move(q), {std::move(a)}}; }

    bool has_scalars() const;
    std::set<std::string> variables() const;

    friend bool operator==(const Term&, const Term&) = default;
};

/// Throws Parse (with the column) on syntax errors and Domain when a scalar
/// lies outside [0,1].
Term parse(std::string_view input);

/// Minimal-parenthesis rendering; parse(print(t)) == t.
std::string print(const Term& t);

/// Structural fold over a term. `Alg` supplies value_type and the
/// operations var, zero, one, neg, oplus, odot, join, meet, scalar.
template <class Alg>
typename Alg::value_type fold(const Term& t, Alg& alg) {
    switch (t.op) {
        case Op::Var: return alg.var(t.name);
        case Op::Zero: return alg.zero();
        case Op::One: return alg.one();
        case Op::Neg: return alg.neg(fold(t.args[0], alg));
        case Op::Oplus: return alg.oplus(fold(t.args[0], alg), fold(t.args[1], alg));
        case Op::Odot: return alg.odot(fold(t.args[0], alg), fold(t.args[1], alg));
        case Op::Join: return alg.join(fold(t.args[0], alg), fold(t.args[1], alg));
        case Op::Meet: return alg.meet(fold(t.args[0], alg), fold(t.args[1], alg));
        case Op::Scalar: return alg.scalar(t.scalar, fold(t.args[0], alg));
    }
    fail(ErrorCode::Invariant, "unknown term operator");
}

enum class Context { MV, Riesz };

/// Evaluation in the standard algebra [0,1]. Scalars are rejected (Domain)
/// in the MV context; unbound variables raise Domain.
Rat eval(const Term& t, const std::map<std::string, Rat>& env, Context ctx = Context::Riesz);

/// Pointwise evaluation in [0,1]^m.
QVector eval(const Term& t, const std::map<std::string, QVector>& env, std::size_t m,
             Context ctx = Context::Riesz);

}  // namespace mvhull::term
