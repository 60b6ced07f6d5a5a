// SPDX-License-Identifier: Apache-2.0
#include "mvhull/error.hpp"
#include "mvhull/mvcore.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <set>
#include <unordered_set>

namespace mvhull::mv {

namespace {

// Closure runs beyond this many elements are refused rather than exhausting memory.
constexpr std::size_t kMaxElements = std::size_t{1} << 22;

struct RowHash {
    std::size_t operator()(const std::vector<std::int32_t>& r) const noexcept {
        std::size_t h = 1469598103934665603ull;
        for (auto x : r) h = (h ^ static_cast<std::size_t>(x)) * 1099511628211ull;
        return h;
    }
};

bool row_less(const std::int32_t* a, const std::int32_t* b, std::size_t n) {
    return std::lexicographical_compare(a, a + n, b, b + n);
}

std::int32_t checked_den(std::int64_t den) {
    if (den < 1 || den > (std::numeric_limits<std::int32_t>::max() / 4)) {
        fail(ErrorCode::Domain, "denominator out of range: " + std::to_string(den));
    }
    return static_cast<std::int32_t>(den);
}

}  // namespace

PointSet::PointSet(std::vector<std::string> labels) : labels_(std::move(labels)) {
    if (labels_.empty()) fail(ErrorCode::Domain, "point set must be nonempty");
    std::set<std::string> seen;
    for (const auto& l : labels_) {
        if (l.empty()) fail(ErrorCode::Domain, "empty point label");
        if (!seen.insert(l).second) fail(ErrorCode::Domain, "duplicate point label '" + l + "'");
    }
}

PointSet PointSet::numbered(std::size_t m, const std::string& prefix) {
    std::vector<std::string> l;
    for (std::size_t i = 1; i <= m; ++i) l.push_back(prefix + std::to_string(i));
    return PointSet(std::move(l));
}

std::optional<std::size_t> PointSet::index_of(const std::string& label) const {
    const auto it = std::find(labels_.begin(), labels_.end(), label);
    if (it == labels_.end()) return std::nullopt;
    return static_cast<std::size_t>(it - labels_.begin());
}

std::optional<std::vector<std::int32_t>> GridAlgebra::encode(const QVector& v) const {
    if (v.size() != dim()) return std::nullopt;
    std::vector<std::int32_t> key(stride_, 0);
    const Rat d(static_cast<long>(den_));
    for (std::size_t i = 0; i < v.size(); ++i) {
        const Rat s = v[i] * d;
        if (!s.is_integer() || s.sign() < 0 || d < s) return std::nullopt;
        key[i] = static_cast<std::int32_t>(s.num().get_si());
    }
    return key;
}

GridAlgebra GridAlgebra::generate(PointSet points, std::int64_t den, std::vector<QVector> generators) {
    GridAlgebra alg;
    alg.den_ = checked_den(den);
    alg.points_ = std::move(points);
    if (alg.points_.size() == 0) fail(ErrorCode::Domain, "point set must be nonempty");
    alg.stride_ = simd::padded_stride(alg.dim());
    const std::size_t m = alg.dim();
    const std::size_t stride = alg.stride_;

    std::vector<std::vector<std::int32_t>> seeds;
    seeds.emplace_back(stride, 0);
    std::vector<std::int32_t> one(stride, 0);
    std::fill_n(one.begin(), m, alg.den_);
    seeds.push_back(one);
    for (const auto& g : generators) {
        if (g.size() != m) {
            fail(ErrorCode::Domain, "generator " + g.str() + " has length " + std::to_string(g.size()) +
                                        ", expected " + std::to_string(m));
        }
        auto key = alg.encode(g);
        if (!key) fail(ErrorCode::Domain, "generator " + g.str() + " is off the grid 1/" + std::to_string(den));
        seeds.push_back(std::move(*key));
    }
    alg.generators_ = std::move(generators);

    const simd::GridKernels& k = simd::active();
    std::vector<std::int32_t> cells;
    std::unordered_set<std::vector<std::int32_t>, RowHash> seen;
    std::size_t count = 0;
    auto insert = [&](const std::int32_t* row) {
        std::vector<std::int32_t> key(row, row + stride);
        if (!seen.insert(key).second) return;
        if (count == kMaxElements) fail(ErrorCode::Domain, "generated algebra exceeds the element limit");
        cells.insert(cells.end(), key.begin(), key.end());
        ++count;
    };
    for (const auto& s : seeds) insert(s.data());

    std::vector<std::int32_t> x(stride), scratch;
    for (std::size_t i = 0; i < count; ++i) {
        std::copy_n(cells.begin() + static_cast<std::ptrdiff_t>(i * stride), stride, x.begin());
        std::vector<std::int32_t> c(stride);
        k.complement(x.data(), m, stride, alg.den_, c.data());
        insert(c.data());
        // Pairs (i, j) with j <= i; later elements pair with i when they are processed.
        const std::size_t n = i + 1;
        scratch.resize(n * stride);
        k.oplus_rows(x.data(), cells.data(), n, stride, alg.den_, scratch.data());
        for (std::size_t j = 0; j < n; ++j) insert(scratch.data() + j * stride);
    }
    alg.finish(std::move(cells), count);
    return alg;
}

GridAlgebra GridAlgebra::from_closed_set(PointSet points, std::int64_t den, std::vector<QVector> elements) {
    GridAlgebra probe;
    probe.den_ = checked_den(den);
    probe.points_ = std::move(points);
    probe.stride_ = simd::padded_stride(probe.dim());
    std::vector<std::int32_t> cells;
    for (const auto& e : elements) {
        auto key = probe.encode(e);
        if (!key) fail(ErrorCode::Domain, "element " + e.str() + " is off the grid");
        cells.insert(cells.end(), key->begin(), key->end());
    }
    std::vector<QVector> gens;
    for (const auto& e : elements) {
        bool constant = true;
        for (const auto& x : e) constant = constant && (x == e[0]) && (x.is_zero() || x == Rat(1));
        if (!constant) gens.push_back(e);
    }
    std::sort(gens.begin(), gens.end());
    gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
    probe.generators_ = std::move(gens);
    const std::size_t n = elements.size();
    probe.finish(std::move(cells), n);

    // Closure check against the generated algebra.
    GridAlgebra gen = generate(probe.points_, probe.den_, probe.generators_);
    if (gen.count_ != probe.count_ || gen.cells_ != probe.cells_) {
        fail(ErrorCode::Invariant, "element set is not closed under (+) and negation");
    }
    return probe;
}

void GridAlgebra::finish(std::vector<std::int32_t> cells, std::size_t count) {
    const std::size_t stride = stride_;
    std::vector<std::size_t> order(count);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return row_less(cells.data() + a * stride, cells.data() + b * stride, stride);
    });
    cells_.assign(count * stride, 0);
    std::size_t out = 0;
    for (std::size_t idx = 0; idx < count; ++idx) {
        const std::int32_t* src = cells.data() + order[idx] * stride;
        if (out > 0 && std::equal(src, src + stride, cells_.data() + (out - 1) * stride)) continue;
        std::copy_n(src, stride, cells_.data() + out * stride);
        ++out;
    }
    cells_.resize(out * stride);
    count_ = out;

    // Point classes: points on which every element agrees.
    const std::size_t m = dim();
    classes_.class_of.assign(m, 0);
    classes_.members.clear();
    for (std::size_t p = 0; p < m; ++p) {
        bool placed = false;
        for (std::size_t c = 0; c < classes_.members.size() && !placed; ++c) {
            const std::size_t q = classes_.members[c].front();
            bool same = true;
            for (std::size_t r = 0; r < count_ && same; ++r) {
                same = cells_[r * stride + p] == cells_[r * stride + q];
            }
            if (same) {
                classes_.members[c].push_back(p);
                classes_.class_of[p] = c;
                placed = true;
            }
        }
        if (!placed) {
            classes_.class_of[p] = classes_.members.size();
            classes_.members.push_back({p});
        }
    }
}

std::optional<std::size_t> GridAlgebra::find(std::span<const std::int32_t> key) const {
    std::size_t lo = 0, hi = count_;
    while (lo < hi) {
        const std::size_t mid = (lo + hi) / 2;
        const std::int32_t* r = cells_.data() + mid * stride_;
        if (row_less(r, key.data(), stride_)) {
            lo = mid + 1;
        } else {
            hi = mid;
        }
    }
    if (lo < count_ && std::equal(key.begin(), key.end(), cells_.data() + lo * stride_)) return lo;
    return std::nullopt;
}

QVector GridAlgebra::element(std::size_t i) const {
    QVector v(dim());
    const auto r = row(i);
    for (std::size_t j = 0; j < dim(); ++j) v[j] = Rat(Int(r[j]), Int(den_));
    return v;
}

std::vector<QVector> GridAlgebra::elements() const {
    std::vector<QVector> out;
    out.reserve(count_);
    for (std::size_t i = 0; i < count_; ++i) out.push_back(element(i));
    return out;
}

bool GridAlgebra::contains(const QVector& v) const {
    const auto key = encode(v);
    return key && find(*key).has_value();
}

}  // namespace mvhull::mv
