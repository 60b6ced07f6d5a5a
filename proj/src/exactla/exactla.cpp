// SPDX-License-Identifier: Apache-2.0
#include "mvhull/exactla.hpp"

#include "mvhull/error.hpp"

#include <algorithm>
#include <utility>

namespace mvhull::la {

namespace {

std::size_t check_lengths(std::span<const QVector> vectors, std::size_t m) {
    if (m == 0 && !vectors.empty()) m = vectors.front().size();
    for (const auto& v : vectors) {
        if (v.size() != m) fail(ErrorCode::Domain, "dimension mismatch: expected length " + std::to_string(m) +
                                                       ", got " + std::to_string(v.size()));
    }
    return m;
}

Int lcm(const Int& a, const Int& b) {
    Int r;
    mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

Int gcd(const Int& a, const Int& b) {
    Int r;
    mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

Int floor_div(const Int& a, const Int& b) {
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

bool row_is_zero(const IntRow& r) {
    return std::all_of(r.begin(), r.end(), [](const Int& x) { return x == 0; });
}

void axpy(IntRow& dst, const Int& q, const IntRow& src) {
    for (std::size_t i = 0; i < dst.size(); ++i) dst[i] -= q * src[i];
}

// Row-style HNF of the integer row space. Returns rows with pivots.
std::pair<std::vector<IntRow>, std::vector<std::size_t>> hnf_rows(std::vector<IntRow> work, std::size_t m) {
    std::erase_if(work, row_is_zero);
    std::vector<IntRow> out;
    std::vector<std::size_t> pivots;
    for (std::size_t col = 0; col < m && !work.empty(); ++col) {
        // Euclid on column `col` across the working rows.
        while (true) {
            std::size_t best = work.size();
            for (std::size_t i = 0; i < work.size(); ++i) {
                if (work[i][col] == 0) continue;
                if (best == work.size() || abs(work[i][col]) < abs(work[best][col])) best = i;
            }
            if (best == work.size()) break;
            bool clean = true;
            for (std::size_t i = 0; i < work.size(); ++i) {
                if (i == best || work[i][col] == 0) continue;
                axpy(work[i], floor_div(work[i][col], work[best][col]), work[best]);
                if (work[i][col] != 0) clean = false;
            }
            if (clean) {
                IntRow piv = std::move(work[best]);
                work.erase(work.begin() + static_cast<std::ptrdiff_t>(best));
                if (piv[col] < 0) {
                    for (auto& x : piv) x = -x;
                }
                out.push_back(std::move(piv));
                pivots.push_back(col);
                std::erase_if(work, row_is_zero);
                break;
            }
        }
    }
    for (std::size_t i = 0; i < out.size(); ++i) {
        const std::size_t p = pivots[i];
        for (std::size_t j = 0; j < i; ++j) {
            const Int q = floor_div(out[j][p], out[i][p]);
            if (q != 0) axpy(out[j], q, out[i]);
        }
    }
    return {std::move(out), std::move(pivots)};
}

}  // namespace

QVector IntegerLattice::basis_vector(std::size_t i) const {
    QVector v(dim_);
    for (std::size_t j = 0; j < dim_; ++j) v[j] = Rat(basis_[i][j], den_);
    return v;
}

std::vector<QVector> IntegerLattice::basis_vectors() const {
    std::vector<QVector> out;
    out.reserve(rank());
    for (std::size_t i = 0; i < rank(); ++i) out.push_back(basis_vector(i));
    return out;
}

IntegerLattice IntegerLattice::extended(std::span<const QVector> extra) const {
    std::vector<QVector> all = basis_vectors();
    all.insert(all.end(), extra.begin(), extra.end());
    return hnf_generate(all, dim_);
}

IntegerLattice hnf_generate(std::span<const QVector> vectors, std::size_t m) {
    m = check_lengths(vectors, m);
    IntegerLattice lat(m);
    Int den = 1;
    for (const auto& v : vectors) den = lcm(den, v.common_denominator());

    std::vector<IntRow> rows;
    rows.reserve(vectors.size());
    for (const auto& v : vectors) {
        IntRow r(m);
        for (std::size_t j = 0; j < m; ++j) {
            const Rat scaled = v[j] * Rat(den, 1);
            r[j] = scaled.num();
        }
        rows.push_back(std::move(r));
    }
    auto [basis, pivots] = hnf_rows(std::move(rows), m);

    Int g = den;
    for (const auto& r : basis) {
        for (const auto& x : r) g = gcd(g, x);
    }
    if (g != 1) {
        den /= g;
        for (auto& r : basis) {
            for (auto& x : r) x /= g;
        }
    }
    lat.den_ = basis.empty() ? Int(1) : den;
    lat.basis_ = std::move(basis);
    lat.pivots_ = std::move(pivots);
    return lat;
}

std::optional<std::vector<Int>> lattice_member(const IntegerLattice& lattice, const QVector& v) {
    const std::size_t m = lattice.ambient_dim();
    if (v.size() != m) fail(ErrorCode::Domain, "dimension mismatch in lattice membership");
    IntRow w(m);
    const Rat scale(lattice.den(), 1);
    for (std::size_t j = 0; j < m; ++j) {
        const Rat s = v[j] * scale;
        if (!s.is_integer()) return std::nullopt;
        w[j] = s.num();
    }
    std::vector<Int> coords;
    coords.reserve(lattice.rank());
    for (std::size_t i = 0; i < lattice.rank(); ++i) {
        const std::size_t p = lattice.pivots()[i];
        const Int& piv = lattice.basis()[i][p];
        if (!mpz_divisible_p(w[p].get_mpz_t(), piv.get_mpz_t())) return std::nullopt;
        const Int c = w[p] / piv;
        axpy(w, c, lattice.basis()[i]);
        coords.push_back(c);
    }
    if (!row_is_zero(w)) return std::nullopt;
    return coords;
}

std::optional<std::vector<Rat>> span_solve(std::span<const QVector> basis, const QVector& v) {
    const std::size_t k = basis.size();
    const std::size_t m = v.size();
    for (const auto& b : basis) {
        if (b.size() != m) fail(ErrorCode::Domain, "dimension mismatch in span_solve");
    }
    // Augmented m x (k+1) system with the basis vectors as columns.
    std::vector<std::vector<Rat>> a(m, std::vector<Rat>(k + 1));
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < k; ++j) a[i][j] = basis[j][i];
        a[i][k] = v[i];
    }
    std::vector<std::size_t> pivot_row(k);
    std::size_t r = 0;
    for (std::size_t c = 0; c < k; ++c) {
        std::size_t p = r;
        while (p < m && a[p][c].is_zero()) ++p;
        if (p == m) fail(ErrorCode::Invariant, "span_solve: basis is linearly dependent");
        std::swap(a[p], a[r]);
        const Rat inv = Rat(1) / a[r][c];
        for (auto& x : a[r]) x *= inv;
        for (std::size_t i = 0; i < m; ++i) {
            if (i == r || a[i][c].is_zero()) continue;
            const Rat f = a[i][c];
            for (std::size_t j = c; j <= k; ++j) a[i][j] -= f * a[r][j];
        }
        pivot_row[c] = r++;
    }
    for (std::size_t i = r; i < m; ++i) {
        if (!a[i][k].is_zero()) return std::nullopt;
    }
    std::vector<Rat> x(k);
    for (std::size_t c = 0; c < k; ++c) x[c] = a[pivot_row[c]][k];
    return x;
}

std::vector<QVector> rref_basis(std::span<const QVector> vectors, std::size_t m) {
    m = check_lengths(vectors, m);
    std::vector<QVector> rows(vectors.begin(), vectors.end());
    std::size_t r = 0;
    for (std::size_t c = 0; c < m && r < rows.size(); ++c) {
        std::size_t p = r;
        while (p < rows.size() && rows[p][c].is_zero()) ++p;
        if (p == rows.size()) continue;
        std::swap(rows[p], rows[r]);
        rows[r] *= Rat(1) / rows[r][c];
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i == r || rows[i][c].is_zero()) continue;
            const Rat f = rows[i][c];
            for (std::size_t j = c; j < m; ++j) rows[i][j] -= f * rows[r][j];
        }
        ++r;
    }
    rows.resize(r);
    return rows;
}

std::size_t rank(std::span<const QVector> vectors) { return rref_basis(vectors).size(); }

char sign_char(Sign s) noexcept {
    switch (s) {
        case Sign::Pos: return '+';
        case Sign::Neg: return '-';
        case Sign::Zero: return '0';
    }
    return '?';
}

std::string SignRegion::signature() const {
    std::string s;
    s.reserve(signs.size());
    for (auto x : signs) s.push_back(sign_char(x));
    return s;
}

namespace {

using Constraint = std::vector<Rat>;

// Scale so the first nonzero coefficient has absolute value 1.
void normalize(Constraint& c) {
    for (const auto& x : c) {
        if (x.is_zero()) continue;
        const Rat s = Rat(1) / abs(x);
        for (auto& y : c) y *= s;
        return;
    }
}

bool is_null(const Constraint& c, std::size_t vars) {
    for (std::size_t j = 0; j < vars; ++j) {
        if (!c[j].is_zero()) return false;
    }
    return true;
}

}  // namespace

std::optional<std::vector<Rat>> strict_cone_point(std::span<const std::vector<Rat>> constraints, std::size_t vars) {
    // systems[v] holds constraints over variables 0..v-1.
    std::vector<std::vector<Constraint>> systems(vars + 1);
    systems[vars].assign(constraints.begin(), constraints.end());
    for (auto& c : systems[vars]) {
        if (c.size() != vars) fail(ErrorCode::Domain, "constraint length mismatch");
    }
    for (std::size_t v = vars; v-- > 0;) {
        auto& cur = systems[v + 1];
        std::vector<Constraint> pos, neg, next;
        for (const auto& c : cur) {
            if (is_null(c, v + 1)) return std::nullopt;  // 0 > 0
            const int s = c[v].sign();
            (s > 0 ? pos : s < 0 ? neg : next).push_back(c);
        }
        for (const auto& p : pos) {
            for (const auto& n : neg) {
                Constraint comb(vars);
                const Rat wp = -n[v];
                const Rat wn = p[v];
                for (std::size_t j = 0; j < v; ++j) comb[j] = wp * p[j] + wn * n[j];
                next.push_back(std::move(comb));
            }
        }
        for (auto& c : next) {
            c[v] = Rat{};
            normalize(c);
        }
        std::sort(next.begin(), next.end());
        next.erase(std::unique(next.begin(), next.end()), next.end());
        systems[v] = std::move(next);
    }
    if (!systems[0].empty()) return std::nullopt;

    std::vector<Rat> t(vars);
    for (std::size_t v = 0; v < vars; ++v) {
        std::optional<Rat> lo, hi;
        for (const auto& c : systems[v + 1]) {
            Rat rest;
            for (std::size_t j = 0; j < v; ++j) rest += c[j] * t[j];
            const int s = c[v].sign();
            if (s == 0) {
                if (rest.sign() <= 0) fail(ErrorCode::Invariant, "Fourier-Motzkin back substitution failed");
                continue;
            }
            const Rat bound = -rest / c[v];
            if (s > 0) {
                if (!lo || *lo < bound) lo = bound;
            } else {
                if (!hi || bound < *hi) hi = bound;
            }
        }
        if (lo && hi) {
            if (!(*lo < *hi)) fail(ErrorCode::Invariant, "Fourier-Motzkin produced an empty interval");
            t[v] = (*lo + *hi) / Rat(2);
        } else if (lo) {
            t[v] = Rat(lo->floor() + 1, 1);
        } else if (hi) {
            t[v] = Rat(hi->ceil() - 1, 1);
        } else {
            t[v] = Rat{};
        }
    }
    return t;
}

namespace {

struct RegionSearch {
    std::vector<QVector> rows;                 // RREF basis of V
    std::vector<std::vector<Rat>> functionals;  // per coordinate, coefficients over rows
    std::vector<bool> vanishing;
    std::vector<SignRegion> out;

    Rat eval(std::size_t coord, const std::vector<Rat>& t) const {
        Rat s;
        for (std::size_t j = 0; j < t.size(); ++j) s += functionals[coord][j] * t[j];
        return s;
    }

    void recurse(std::size_t coord, std::vector<Constraint>& cons, std::vector<Sign>& signs,
                 const std::vector<Rat>& point) {
        const std::size_t m = functionals.size();
        if (coord == m) {
            QVector w(m);
            for (std::size_t j = 0; j < rows.size(); ++j) w += point[j] * rows[j];
            out.push_back({signs, std::move(w)});
            return;
        }
        if (vanishing[coord]) {
            signs.push_back(Sign::Zero);
            recurse(coord + 1, cons, signs, point);
            signs.pop_back();
            return;
        }
        const int current = eval(coord, point).sign();
        for (const int s : {1, -1}) {
            Constraint c = functionals[coord];
            if (s < 0) {
                for (auto& x : c) x = -x;
            }
            cons.push_back(std::move(c));
            std::optional<std::vector<Rat>> next;
            if (current == s) {
                next = point;
            } else {
                next = strict_cone_point(cons, rows.size());
            }
            if (next) {
                signs.push_back(s > 0 ? Sign::Pos : Sign::Neg);
                recurse(coord + 1, cons, signs, *next);
                signs.pop_back();
            }
            cons.pop_back();
        }
    }
};

}  // namespace

std::vector<SignRegion> sign_regions(std::span<const QVector> basis) {
    RegionSearch search;
    search.rows = rref_basis(basis);
    if (search.rows.empty()) return {};
    const std::size_t m = search.rows.front().size();
    const std::size_t k = search.rows.size();
    search.functionals.assign(m, std::vector<Rat>(k));
    search.vanishing.assign(m, true);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < k; ++j) {
            search.functionals[i][j] = search.rows[j][i];
            if (!search.rows[j][i].is_zero()) search.vanishing[i] = false;
        }
    }
    std::vector<Constraint> cons;
    std::vector<Sign> signs;
    search.recurse(0, cons, signs, std::vector<Rat>(k));
    return std::move(search.out);
}

}  // namespace mvhull::la
