// SPDX-License-Identifier: Apache-2.0
#include "mvhull/rational.hpp"

#include "mvhull/error.hpp"

#include <cctype>
#include <ostream>
#include <sstream>

namespace mvhull {

namespace {

bool parse_int(std::string_view s, Int& out) {
    if (s.empty()) return false;
    std::size_t i = 0;
    if (s[0] == '-' || s[0] == '+') i = 1;
    if (i == s.size()) return false;
    for (std::size_t j = i; j < s.size(); ++j) {
        if (!std::isdigit(static_cast<unsigned char>(s[j]))) return false;
    }
    std::string body(s.substr(s[0] == '+' ? 1 : 0));
    out = Int(body, 10);
    return true;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

}  // namespace

Rat::Rat(const Int& num, const Int& den) {
    if (den == 0) fail(ErrorCode::Domain, "zero denominator");
    v_ = mpq_class(num, den);
    v_.canonicalize();
}

Rat Rat::parse(std::string_view text) {
    const std::string_view s = trim(text);
    const auto slash = s.find('/');
    Int num, den = 1;
    bool ok = false;
    if (slash == std::string_view::npos) {
        ok = parse_int(s, num);
    } else {
        const auto d = s.substr(slash + 1);
        ok = parse_int(s.substr(0, slash), num) && !d.empty() && d[0] != '-' && d[0] != '+' &&
             parse_int(d, den) && den != 0;
    }
    if (!ok) fail(ErrorCode::Parse, "malformed rational '" + std::string(s) + "'");
    return Rat(num, den);
}

Rat& Rat::operator/=(const Rat& o) {
    if (o.is_zero()) fail(ErrorCode::Domain, "division by zero");
    v_ /= o.v_;
    return *this;
}

Int Rat::floor() const {
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), v_.get_num_mpz_t(), v_.get_den_mpz_t());
    return q;
}

Int Rat::ceil() const {
    Int q;
    mpz_cdiv_q(q.get_mpz_t(), v_.get_num_mpz_t(), v_.get_den_mpz_t());
    return q;
}

std::string Rat::str() const {
    if (v_.get_den() == 1) return v_.get_num().get_str();
    return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

std::ostream& operator<<(std::ostream& os, const Rat& r) { return os << r.str(); }

QVector QVector::parse(std::string_view text) {
    std::string_view s = trim(text);
    if (!s.empty() && s.front() == '(') {
        if (s.back() != ')') fail(ErrorCode::Parse, "unbalanced parenthesis in vector '" + std::string(text) + "'");
        s = trim(s.substr(1, s.size() - 2));
    }
    std::vector<Rat> out;
    if (s.empty()) return QVector(std::move(out));
    std::size_t start = 0;
    while (true) {
        const auto comma = s.find(',', start);
        out.push_back(Rat::parse(s.substr(start, comma == std::string_view::npos ? s.npos : comma - start)));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return QVector(std::move(out));
}

bool QVector::is_zero() const {
    for (const auto& x : e_) {
        if (!x.is_zero()) return false;
    }
    return true;
}

std::vector<std::size_t> QVector::support() const {
    std::vector<std::size_t> s;
    for (std::size_t i = 0; i < e_.size(); ++i) {
        if (!e_[i].is_zero()) s.push_back(i);
    }
    return s;
}

Int QVector::common_denominator() const {
    Int l = 1;
    for (const auto& x : e_) {
        const Int d = x.den();
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), d.get_mpz_t());
    }
    return l;
}

QVector& QVector::operator+=(const QVector& o) {
    if (o.size() != size()) fail(ErrorCode::Domain, "vector length mismatch");
    for (std::size_t i = 0; i < e_.size(); ++i) e_[i] += o.e_[i];
    return *this;
}

QVector& QVector::operator-=(const QVector& o) {
    if (o.size() != size()) fail(ErrorCode::Domain, "vector length mismatch");
    for (std::size_t i = 0; i < e_.size(); ++i) e_[i] -= o.e_[i];
    return *this;
}

QVector& QVector::operator*=(const Rat& s) {
    for (auto& x : e_) x *= s;
    return *this;
}

std::string QVector::str() const {
    std::ostringstream os;
    os << *this;
    return os.str();
}

std::ostream& operator<<(std::ostream& os, const QVector& v) {
    os << '(';
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) os << ',';
        os << v[i];
    }
    return os << ')';
}

QVector positive_part(const QVector& v) {
    QVector out = v;
    for (auto& x : out) {
        if (x.sign() < 0) x = Rat{};
    }
    return out;
}

bool pointwise_leq(const QVector& a, const QVector& b) {
    if (a.size() != b.size()) fail(ErrorCode::Domain, "vector length mismatch");
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (b[i] < a[i]) return false;
    }
    return true;
}

bool in_unit_cube(const QVector& v) {
    for (const auto& x : v) {
        if (x.sign() < 0 || Rat(1) < x) return false;
    }
    return true;
}

}  // namespace mvhull
