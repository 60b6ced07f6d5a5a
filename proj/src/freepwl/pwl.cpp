// SPDX-License-Identifier: Apache-2.0
#include "mvhull/freepwl.hpp"

#include "mvhull/error.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <sstream>

namespace mvhull::pwl {

namespace {

bool collinear(const Rat& x0, const Rat& v0, const Rat& x1, const Rat& v1, const Rat& x2, const Rat& v2) {
    return (v1 - v0) * (x2 - x0) == (v2 - v0) * (x1 - x0);
}

}  // namespace

PWL::PWL(std::vector<Rat> nodes, std::vector<Rat> values) {
    if (nodes.size() != values.size() || nodes.size() < 2) {
        fail(ErrorCode::Domain, "a piecewise-linear function needs matching node and value lists of length >= 2");
    }
    if (!nodes.front().is_zero() || nodes.back() != Rat(1)) fail(ErrorCode::Domain, "nodes must run from 0 to 1");
    for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
        if (!(nodes[i] < nodes[i + 1])) fail(ErrorCode::Domain, "nodes must be strictly increasing");
    }
    for (const auto& v : values) {
        if (v.sign() < 0 || Rat(1) < v) fail(ErrorCode::Domain, "value " + v.str() + " is outside [0,1]");
    }
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        while (nodes_.size() >= 2 &&
               collinear(nodes_[nodes_.size() - 2], values_[values_.size() - 2], nodes_.back(), values_.back(),
                         nodes[i], values[i])) {
            nodes_.pop_back();
            values_.pop_back();
        }
        nodes_.push_back(std::move(nodes[i]));
        values_.push_back(std::move(values[i]));
    }
}

PWL PWL::identity() { return PWL({Rat(0), Rat(1)}, {Rat(0), Rat(1)}); }

PWL PWL::constant(const Rat& c) { return PWL({Rat(0), Rat(1)}, {c, c}); }

PWL PWL::parse(std::string_view text) {
    std::string s(text);
    std::replace(s.begin(), s.end(), ',', ' ');
    std::istringstream in(s);
    std::vector<Rat> nodes, values;
    std::string pair;
    while (in >> pair) {
        const auto colon = pair.find(':');
        if (colon == std::string::npos) fail(ErrorCode::Parse, "expected node:value, got '" + pair + "'");
        nodes.push_back(Rat::parse(std::string_view(pair).substr(0, colon)));
        values.push_back(Rat::parse(std::string_view(pair).substr(colon + 1)));
    }
    return PWL(std::move(nodes), std::move(values));
}

Rat PWL::operator()(const Rat& x) const {
    if (x.sign() < 0 || Rat(1) < x) fail(ErrorCode::Domain, "argument " + x.str() + " is outside [0,1]");
    const auto it = std::upper_bound(nodes_.begin(), nodes_.end(), x);
    if (it == nodes_.end()) return values_.back();
    const std::size_t i = static_cast<std::size_t>(it - nodes_.begin()) - 1;
    return values_[i] + slope(i) * (x - nodes_[i]);
}

Rat PWL::slope(std::size_t i) const { return (values_[i + 1] - values_[i]) / (nodes_[i + 1] - nodes_[i]); }

Rat PWL::intercept(std::size_t i) const { return values_[i] - slope(i) * nodes_[i]; }

std::string PWL::str() const {
    std::string out;
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
        if (i) out += ' ';
        out += nodes_[i].str() + ":" + values_[i].str();
    }
    return out;
}

namespace {

using Pointwise = std::function<Rat(const Rat&, const Rat&)>;
using Level = std::function<Rat(const Rat&, const Rat&)>;

// Combines f and g pointwise. `level` is a function of the two values whose
// sign changes mark the extra breakpoints the operation introduces.
PWL combine(const PWL& f, const PWL& g, const Pointwise& op, const Level& level) {
    std::vector<Rat> xs;
    std::merge(f.nodes().begin(), f.nodes().end(), g.nodes().begin(), g.nodes().end(), std::back_inserter(xs));
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    std::vector<Rat> all;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        all.push_back(xs[i]);
        if (i + 1 == xs.size()) break;
        const Rat h0 = level(f(xs[i]), g(xs[i]));
        const Rat h1 = level(f(xs[i + 1]), g(xs[i + 1]));
        if (h0.sign() * h1.sign() < 0) all.push_back(xs[i] + (xs[i + 1] - xs[i]) * h0 / (h0 - h1));
    }
    std::vector<Rat> vs;
    vs.reserve(all.size());
    for (const auto& x : all) vs.push_back(op(f(x), g(x)));
    return PWL(std::move(all), std::move(vs));
}

Rat sum_minus_one(const Rat& a, const Rat& b) { return a + b - Rat(1); }
Rat difference(const Rat& a, const Rat& b) { return a - b; }

}  // namespace

PWL oplus(const PWL& f, const PWL& g) {
    return combine(f, g, [](const Rat& a, const Rat& b) { return min(Rat(1), a + b); }, sum_minus_one);
}

PWL odot(const PWL& f, const PWL& g) {
    return combine(f, g, [](const Rat& a, const Rat& b) { return max(Rat(0), a + b - Rat(1)); }, sum_minus_one);
}

PWL meet(const PWL& f, const PWL& g) {
    return combine(f, g, [](const Rat& a, const Rat& b) { return min(a, b); }, difference);
}

PWL join(const PWL& f, const PWL& g) {
    return combine(f, g, [](const Rat& a, const Rat& b) { return max(a, b); }, difference);
}

PWL neg(const PWL& f) {
    std::vector<Rat> vs;
    for (const auto& v : f.values()) vs.push_back(Rat(1) - v);
    return PWL(f.nodes(), std::move(vs));
}

PWL scalar(const Rat& q, const PWL& f) {
    if (q.sign() < 0 || Rat(1) < q) fail(ErrorCode::Domain, "scalar " + q.str() + " is outside [0,1]");
    std::vector<Rat> vs;
    for (const auto& v : f.values()) vs.push_back(q * v);
    return PWL(f.nodes(), std::move(vs));
}

PWL nat_mul(std::uint32_t n, const PWL& f) {
    PWL acc = PWL::constant(Rat(0));
    for (std::uint32_t i = 0; i < n; ++i) acc = oplus(acc, f);
    return acc;
}

bool is_mcnaughton(const PWL& f) {
    for (std::size_t i = 0; i < f.pieces(); ++i) {
        if (!f.slope(i).is_integer() || !f.intercept(i).is_integer()) return false;
    }
    return true;
}

namespace {

struct PwlAlg {
    using value_type = PWL;
    std::string variable;

    PWL var(const std::string& n) const {
        if (!variable.empty() && n != variable) fail(ErrorCode::Domain, "term has more than one variable");
        return PWL::identity();
    }
    PWL zero() const { return PWL::constant(Rat(0)); }
    PWL one() const { return PWL::constant(Rat(1)); }
    PWL neg(const PWL& a) const { return pwl::neg(a); }
    PWL oplus(const PWL& a, const PWL& b) const { return pwl::oplus(a, b); }
    PWL odot(const PWL& a, const PWL& b) const { return pwl::odot(a, b); }
    PWL join(const PWL& a, const PWL& b) const { return pwl::join(a, b); }
    PWL meet(const PWL& a, const PWL& b) const { return pwl::meet(a, b); }
    PWL scalar(const Rat& q, const PWL& a) const { return pwl::scalar(q, a); }
};

}  // namespace

PWL term_to_pwl(const term::Term& t) {
    const auto vars = t.variables();
    if (vars.size() > 1) fail(ErrorCode::Domain, "term has more than one variable");
    PwlAlg alg{vars.empty() ? std::string() : *vars.begin()};
    return term::fold(t, alg);
}

bool FareySubdivision::unimodular() const {
    for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
        const Int det = nodes[i].num() * nodes[i + 1].den() - nodes[i + 1].num() * nodes[i].den();
        if (abs(det) != 1) return false;
    }
    return true;
}

FareySubdivision regular_refine(std::span<const Rat> breakpoints) {
    std::vector<Rat> nodes{Rat(0), Rat(1)};
    for (const auto& target : breakpoints) {
        if (target.sign() < 0 || Rat(1) < target) fail(ErrorCode::Domain, "breakpoint " + target.str() + " is outside [0,1]");
        // Descend the Stern-Brocot tree between 0/1 and 1/1.
        Int lp = 0, lq = 1, rp = 1, rq = 1;
        while (true) {
            if (target == Rat(lp, lq) || target == Rat(rp, rq)) break;
            const Rat mid(lp + rp, lq + rq);
            nodes.push_back(mid);
            if (mid == target) break;
            if (target < mid) {
                rp = lp + rp;
                rq = lq + rq;
            } else {
                lp = lp + rp;
                lq = lq + rq;
            }
        }
    }
    std::sort(nodes.begin(), nodes.end());
    nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
    return {std::move(nodes)};
}

PWL hat(const FareySubdivision& s, std::size_t i) {
    const auto& n = s.nodes;
    if (i >= n.size()) fail(ErrorCode::Domain, "hat index out of range");
    std::vector<Rat> xs, vs;
    if (i > 0) {
        if (i > 1) {
            xs.push_back(Rat(0));
            vs.push_back(Rat(0));
        }
        xs.push_back(n[i - 1]);
        vs.push_back(Rat(0));
    }
    xs.push_back(n[i]);
    vs.push_back(Rat(1));
    if (i + 1 < n.size()) {
        xs.push_back(n[i + 1]);
        vs.push_back(Rat(0));
        if (i + 2 < n.size()) {
            xs.push_back(Rat(1));
            vs.push_back(Rat(0));
        }
    }
    return PWL(std::move(xs), std::move(vs));
}

PWL Decomposition::reconstruct() const {
    // Untruncated sum; a partial sum above 1 is rejected by the PWL constructor.
    PWL acc = PWL::constant(Rat(0));
    for (std::size_t i = 0; i < coefficients.size(); ++i) {
        acc = combine(acc, scalar(coefficients[i], hat(subdivision, i)),
                      [](const Rat& a, const Rat& b) { return a + b; },
                      [](const Rat&, const Rat&) { return Rat(0); });
    }
    return acc;
}

PWL Decomposition::reconstruct_truncated() const {
    PWL acc = PWL::constant(Rat(0));
    for (std::size_t i = 0; i < coefficients.size(); ++i) acc = oplus(acc, scalar(coefficients[i], hat(subdivision, i)));
    return acc;
}

Decomposition schauder_decompose(const PWL& f) {
    Decomposition d;
    d.subdivision = regular_refine(f.nodes());
    for (const auto& x : d.subdivision.nodes) d.coefficients.push_back(f(x));
    return d;
}

}  // namespace mvhull::pwl
