// SPDX-License-Identifier: Apache-2.0
#include "mvhull/error.hpp"
#include "mvhull/mvcore.hpp"

namespace mvhull::mv {

namespace {

void check_unit(const QVector& a) {
    if (!in_unit_cube(a)) fail(ErrorCode::Domain, "entry outside [0,1] in " + a.str());
}

void check_pair(const QVector& a, const QVector& b) {
    if (a.size() != b.size()) fail(ErrorCode::Domain, "vector length mismatch");
    check_unit(a);
    check_unit(b);
}

}  // namespace

QVector oplus(const QVector& a, const QVector& b) {
    check_pair(a, b);
    QVector out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = min(Rat(1), a[i] + b[i]);
    return out;
}

QVector odot(const QVector& a, const QVector& b) {
    check_pair(a, b);
    QVector out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = max(Rat(0), a[i] + b[i] - Rat(1));
    return out;
}

QVector neg(const QVector& a) {
    check_unit(a);
    QVector out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = Rat(1) - a[i];
    return out;
}

QVector join(const QVector& a, const QVector& b) {
    check_pair(a, b);
    QVector out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = max(a[i], b[i]);
    return out;
}

QVector meet(const QVector& a, const QVector& b) {
    check_pair(a, b);
    QVector out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = min(a[i], b[i]);
    return out;
}

QVector nat_mul(std::uint32_t n, const QVector& a) {
    check_unit(a);
    QVector out(a.size());
    const Rat k(static_cast<long>(n));
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = min(Rat(1), k * a[i]);
    return out;
}

}  // namespace mvhull::mv
