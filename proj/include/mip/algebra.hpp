#pragma once

// The modular group algebra FG. The central device is a Jennings-style
// triangular basis: for a generating sequence x_1, x_2, ... compatible with
// the dimension subgroup chain D_1 > D_2 > ..., the products
// prod (x_i - 1)^{d_i} (d_i < p, taken in a fixed order) form a basis of FG
// that is unitriangular with respect to the collected element index, and the
// products of weight >= w span I(G)^w. That gives every power of the
// augmentation ideal an echelon basis for free; other ideals are echelonized
// against it.

#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "mip/field.hpp"
#include "mip/group.hpp"

namespace mip {

class GroupAlgebra;

// Dense coefficient vector over the group-element index, bit-plane packed in
// characteristic 2.
class RowVec {
public:
    RowVec() = default;
    RowVec(std::uint32_t n, const Field& f)
        : n_(n), m_(f.p == 2 ? f.m : 0), words_((n + 63) / 64) {
        if (f.p == 2)
            planes_.assign(std::size_t(m_) * words_, 0);
        else
            bytes_.assign(n, 0);
    }

    std::uint32_t size() const { return n_; }

    fe get(std::uint32_t i) const {
        if (!planes_.empty() || m_) {
            fe v = 0;
            for (std::uint32_t k = 0; k < m_; ++k)
                v |= fe(((planes_[std::size_t(k) * words_ + (i >> 6)] >> (i & 63)) & 1) << k);
            return v;
        }
        return bytes_.empty() ? 0 : bytes_[i];
    }

    void set(std::uint32_t i, fe c) {
        if (m_) {
            for (std::uint32_t k = 0; k < m_; ++k) {
                std::uint64_t& w = planes_[std::size_t(k) * words_ + (i >> 6)];
                std::uint64_t bit = std::uint64_t(1) << (i & 63);
                if ((c >> k) & 1)
                    w |= bit;
                else
                    w &= ~bit;
            }
        } else {
            bytes_[i] = std::uint8_t(c);
        }
    }

    void add_at(std::uint32_t i, fe c, const Field& f) { set(i, f.add(get(i), c)); }

    bool is_zero() const {
        for (auto w : planes_)
            if (w) return false;
        for (auto b : bytes_)
            if (b) return false;
        return true;
    }

    // this += c * src
    void add_scaled(const RowVec& src, fe c, const Field& f) {
        if (c == 0) return;
        if (m_) {
            // multiplication by c is GF(2)-linear on the bit planes
            for (std::uint32_t j = 0; j < m_; ++j) {
                fe img = f.mul(c, fe(1) << j);
                for (std::uint32_t k = 0; k < m_; ++k)
                    if ((img >> k) & 1) {
                        const std::uint64_t* s = &src.planes_[std::size_t(j) * words_];
                        std::uint64_t* d = &planes_[std::size_t(k) * words_];
                        for (std::uint32_t w = 0; w < words_; ++w) d[w] ^= s[w];
                    }
            }
        } else {
            for (std::uint32_t i = 0; i < n_; ++i)
                if (src.bytes_[i]) bytes_[i] = std::uint8_t(f.add(bytes_[i], f.mul(c, src.bytes_[i])));
        }
    }

    // highest index with a nonzero coefficient strictly below `from`
    // (pass n for the global top); -1 if none
    std::int64_t top_below(std::uint32_t from) const {
        if (from == 0) return -1;
        std::uint32_t limit = from; // exclusive
        if (m_) {
            std::uint32_t wtop = (limit + 63) / 64;
            for (std::uint32_t w = wtop; w-- > 0;) {
                std::uint64_t acc = 0;
                for (std::uint32_t k = 0; k < m_; ++k) acc |= planes_[std::size_t(k) * words_ + w];
                if (w == wtop - 1 && (limit & 63)) acc &= (~std::uint64_t(0)) >> (64 - (limit & 63));
                if (acc) {
                    int bit = 63 - __builtin_clzll(acc);
                    return std::int64_t(w) * 64 + bit;
                }
            }
            return -1;
        }
        for (std::uint32_t i = limit; i-- > 0;)
            if (bytes_[i]) return i;
        return -1;
    }

    std::int64_t top() const { return top_below(n_); }

private:
    std::uint32_t n_ = 0, m_ = 0, words_ = 0;
    std::vector<std::uint64_t> planes_;
    std::vector<std::uint8_t> bytes_;
};

// Finitely supported coefficient map; terms sorted by element index.
struct Sparse {
    std::vector<std::pair<std::uint32_t, fe>> terms;

    static Sparse single(std::uint32_t i, fe c) {
        Sparse s;
        if (c != 0) s.terms.push_back({i, c});
        return s;
    }

    std::size_t support() const { return terms.size(); }

    void normalize(const Field& f) {
        std::sort(terms.begin(), terms.end());
        std::vector<std::pair<std::uint32_t, fe>> out;
        for (auto& [i, c] : terms) {
            if (!out.empty() && out.back().first == i)
                out.back().second = f.add(out.back().second, c);
            else
                out.push_back({i, c});
            if (out.back().second == 0) out.pop_back();
        }
        terms = std::move(out);
    }

    fe augmentation(const Field& f) const {
        fe s = 0;
        for (auto& [i, c] : terms) s = f.add(s, c);
        return s;
    }
};

inline Sparse sparse_add(const Sparse& a, const Sparse& b, const Field& f) {
    Sparse out;
    out.terms.reserve(a.terms.size() + b.terms.size());
    for (auto& t : a.terms) out.terms.push_back(t);
    for (auto& t : b.terms) out.terms.push_back(t);
    out.normalize(f);
    return out;
}

inline Sparse sparse_scale(Sparse a, fe c, const Field& f) {
    if (c == 0) return Sparse{};
    for (auto& [i, v] : a.terms) v = f.mul(v, c);
    return a;
}

class SubspaceBasis;
class QuotientSpace;

class GroupAlgebra {
public:
    const Group& group;
    Field field;
    std::uint32_t n; // |G|

    GroupAlgebra(const Group& g, const Field& f, std::uint64_t algebra_bound = (1ull << 12),
                 std::uint64_t table_bound = (1ull << 11))
        : group(g), field(f) {
        if (g.order() > algebra_bound)
            throw bound_error("group order " + std::to_string(g.order()) +
                              " exceeds the algebra bound " + std::to_string(algebra_bound));
        if (f.p != g.p) throw algebra_error("field characteristic must match the group prime");
        n = std::uint32_t(g.order());
        if (n <= table_bound) {
            multable_.resize(std::size_t(n) * n);
            for (std::uint32_t i = 0; i < n; ++i)
                for (std::uint32_t j = 0; j < n; ++j) multable_[std::size_t(i) * n + j] = g.idx_mul(i, j);
        }
        build_jennings();
    }

    std::uint32_t mul_idx(std::uint32_t i, std::uint32_t j) const {
        if (!multable_.empty()) return multable_[std::size_t(i) * n + j];
        return group.idx_mul(i, j);
    }

    int weight(std::uint32_t idx) const { return weight_[idx]; }
    int max_weight() const { return max_weight_; }

    // number of element indices of Jennings weight >= w
    std::uint32_t count_weight_at_least(int w) const {
        if (w <= 0) return n;
        if (w > max_weight_) return 0;
        return suffix_count_[w];
    }

    const std::vector<std::pair<std::uint32_t, fe>>& jennings_row(std::uint32_t idx) const {
        return jrow_[idx];
    }

    // ---- element arithmetic ----

    Sparse group_diff(std::uint32_t gidx) const { // g - 1
        Sparse s;
        if (gidx == 0) return s;
        s.terms = {{0, field.neg(1)}, {gidx, 1}};
        if (s.terms[0].first > s.terms[1].first) std::swap(s.terms[0], s.terms[1]);
        return s;
    }

    Sparse mul(const Sparse& a, const Sparse& b) const {
        if (a.terms.size() * b.terms.size() > 4096) {
            // accumulate densely instead of sorting a huge term list
            RowVec acc(n, field);
            for (auto& [i, ca] : a.terms)
                for (auto& [j, cb] : b.terms) acc.add_at(mul_idx(i, j), field.mul(ca, cb), field);
            return to_sparse(acc);
        }
        Sparse out;
        out.terms.reserve(a.terms.size() * b.terms.size());
        for (auto& [i, ca] : a.terms)
            for (auto& [j, cb] : b.terms) out.terms.push_back({mul_idx(i, j), field.mul(ca, cb)});
        out.normalize(field);
        return out;
    }

    // x^(p^t) by repeated p-th powers
    Sparse pow_pk(const Sparse& x, int t) const {
        Sparse cur = x;
        for (int step = 0; step < t; ++step) {
            Sparse next = mul(cur, cur);
            for (std::uint32_t extra = 2; extra < group.p; ++extra) next = mul(next, cur);
            cur = std::move(next);
        }
        return cur;
    }

    RowVec to_dense(const Sparse& s) const {
        RowVec v(n, field);
        for (auto& [i, c] : s.terms) v.set(i, c);
        return v;
    }

    Sparse to_sparse(const RowVec& v) const {
        Sparse s;
        for (std::int64_t i = v.top(); i >= 0; i = v.top_below(std::uint32_t(i)))
            s.terms.push_back({std::uint32_t(i), v.get(std::uint32_t(i))});
        std::sort(s.terms.begin(), s.terms.end());
        return s;
    }

private:
    std::vector<std::uint32_t> multable_;
    std::vector<int> weight_;
    std::vector<std::vector<std::pair<std::uint32_t, fe>>> jrow_;
    std::vector<std::uint32_t> suffix_count_;
    int max_weight_ = 0;

    struct Digit {
        std::uint32_t coord;
        std::uint32_t level;
        std::uint64_t unit_stride; // strides[coord] * p^level
        std::uint32_t gen_idx;     // flat index of the generator x
        int weight;
    };
    std::vector<Digit> digits_; // in product order: coords ascending, levels ascending

    void build_jennings() {
        const Group& g = group;
        const std::uint32_t p = g.p;
        // digit descriptors per coordinate
        std::vector<std::uint64_t> strides;
        {
            // recover strides from encode() of unit coordinates
            std::size_t ncoord = 2 * g.num_factors() + 1;
            for (std::size_t cidx = 0; cidx < ncoord; ++cidx) {
                GroupElement e = g.id();
                std::uint64_t radix = (cidx + 1 == ncoord) ? g.zq : g.factors[cidx / 2].pr;
                if (radix > 1) {
                    e.v[cidx] = 1;
                    strides.push_back(g.encode(e));
                } else {
                    strides.push_back(0);
                }
            }
            for (std::size_t cidx = 0; cidx < ncoord; ++cidx) {
                std::uint64_t radix = (cidx + 1 == ncoord) ? g.zq : g.factors[cidx / 2].pr;
                std::uint64_t lvl_stride = strides[cidx];
                for (std::uint64_t pw = 1; pw < radix; pw *= p) {
                    Digit d;
                    d.coord = std::uint32_t(cidx);
                    d.level = 0;
                    std::uint64_t q = pw;
                    while (q > 1) {
                        q /= p;
                        ++d.level;
                    }
                    d.unit_stride = lvl_stride * pw;
                    d.gen_idx = std::uint32_t(lvl_stride * pw);
                    d.weight = 0;
                    digits_.push_back(d);
                }
            }
        }
        assign_weights();
        // monomial weights
        weight_.assign(n, 0);
        for (std::uint32_t idx = 0; idx < n; ++idx) {
            int w = 0;
            for (const auto& d : digits_) {
                std::uint32_t dv = std::uint32_t((idx / d.unit_stride) % p);
                w += int(dv) * d.weight;
            }
            weight_[idx] = w;
            max_weight_ = std::max(max_weight_, w);
        }
        suffix_count_.assign(max_weight_ + 2, 0);
        for (std::uint32_t idx = 0; idx < n; ++idx)
            if (weight_[idx] >= 1) ++suffix_count_[weight_[idx]];
        for (int w = max_weight_ - 1; w >= 1; --w) suffix_count_[w] += suffix_count_[w + 1];
        // triangular product rows
        jrow_.resize(n);
        jrow_[0] = {{0, 1}};
        for (std::uint32_t idx = 1; idx < n; ++idx) {
            // remove one unit of the last nonzero digit in product order
            const Digit* last = nullptr;
            for (const auto& d : digits_) {
                std::uint32_t dv = std::uint32_t((idx / d.unit_stride) % p);
                if (dv) last = &d;
            }
            std::uint32_t parent = idx - std::uint32_t(last->unit_stride);
            const auto& prow = jrow_[parent];
            std::vector<std::pair<std::uint32_t, fe>> out;
            out.reserve(prow.size() * 2);
            fe minus1 = field.neg(1);
            for (auto& [i, c] : prow) {
                out.push_back({mul_idx(i, last->gen_idx), c});
                out.push_back({i, field.mul(c, minus1)});
            }
            std::sort(out.begin(), out.end());
            std::vector<std::pair<std::uint32_t, fe>> merged;
            for (auto& [i, c] : out) {
                if (!merged.empty() && merged.back().first == i)
                    merged.back().second = field.add(merged.back().second, c);
                else
                    merged.push_back({i, c});
                if (merged.back().second == 0) merged.pop_back();
            }
            if (merged.empty() || merged.back().first != idx || merged.back().second != 1)
                throw std::logic_error("Jennings product basis is not unitriangular");
            jrow_[idx] = std::move(merged);
        }
    }

    void assign_weights() {
        const Group& g = group;
        // dimension subgroup chain as (s_lo, membership bitmap) segments
        struct Segment {
            std::uint64_t s_lo;
            std::vector<bool> in;
            std::uint64_t size;
        };
        std::vector<Segment> chain;
        std::uint64_t s = 1;
        while (true) {
            Subgroup d = g.jennings(s);
            Segment seg;
            seg.s_lo = s;
            seg.size = d.order();
            seg.in.assign(n, false);
            for (auto e : d.elems) seg.in[e] = true;
            chain.push_back(std::move(seg));
            if (chain.back().size == 1) break;
            // next s where the closed form can change: (u, v) jump points
            int u = g.ceil_log_p(s);
            std::uint64_t next = Group::ipow(g.p, u) + 1; // next u bump
            std::uint64_t half_jump = 2 * Group::ipow(g.p, u ? u - 1 : 0) + 1;
            if (g.p != 2 && half_jump > s && half_jump < next) next = half_jump;
            if (next <= s) next = s + 1;
            s = next;
        }
        for (auto& d : digits_) {
            int w = 0;
            for (std::size_t k = 0; k < chain.size(); ++k) {
                if (chain[k].in[d.gen_idx]) {
                    // weight is the largest s with x in D_s; D is constant on
                    // [s_lo, next s_lo - 1]
                    w = int(k + 1 < chain.size() ? chain[k + 1].s_lo - 1 : chain[k].s_lo);
                } else
                    break;
            }
            if (w == 0) throw std::logic_error("generator missing from D_1");
            d.weight = w;
        }
        // compatibility: |D_s| must equal p^{#digits of weight >= s_lo}
        for (std::size_t k = 0; k < chain.size(); ++k) {
            std::uint64_t cnt = 0;
            for (auto& d : digits_)
                if (std::uint64_t(d.weight) >= chain[k].s_lo) ++cnt;
            if (Group::ipow(g.p, cnt) != chain[k].size)
                throw std::logic_error("generating sequence is not Jennings-compatible");
        }
    }
};

// Echelonized subspace: an optional weight floor (all Jennings monomial rows
// of weight >= floor) plus explicitly stored rows, keyed by pivot.
class SubspaceBasis {
public:
    static constexpr int kNoFloor = INT32_MAX;

    const GroupAlgebra* A = nullptr;
    int weight_floor = kNoFloor;
    std::map<std::uint32_t, RowVec, std::greater<>> extra; // pivot -> row, leading coeff 1

    SubspaceBasis() = default;
    explicit SubspaceBasis(const GroupAlgebra& a, int floor = kNoFloor)
        : A(&a), weight_floor(floor) {}

    std::uint64_t dim() const {
        std::uint64_t d = extra.size();
        if (weight_floor != kNoFloor) d += A->count_weight_at_least(weight_floor);
        return d;
    }

    bool pivot_covered(std::uint32_t idx) const {
        if (weight_floor != kNoFloor && A->weight(idx) >= weight_floor) return true;
        return extra.count(idx) != 0;
    }

    // canonical representative of v modulo this subspace
    void reduce(RowVec& v) const {
        const Field& f = A->field;
        std::int64_t pos = v.top();
        while (pos >= 0) {
            std::uint32_t i = std::uint32_t(pos);
            fe c = v.get(i);
            if (weight_floor != kNoFloor && A->weight(i) >= weight_floor) {
                fe nc = f.neg(c);
                for (auto& [j, cj] : A->jennings_row(i)) v.add_at(j, f.mul(nc, cj), f);
            } else {
                auto it = extra.find(i);
                if (it != extra.end())
                    v.add_scaled(it->second, f.neg(c), f);
                else {
                    pos = v.top_below(i);
                    continue;
                }
            }
            pos = v.top_below(i);
        }
    }

    bool member(const RowVec& v) const {
        RowVec w = v;
        reduce(w);
        return w.is_zero();
    }

    bool member(const Sparse& s) const { return member(A->to_dense(s)); }

    // insert a vector; returns true if it enlarged the span
    bool insert(RowVec v) {
        reduce(v);
        std::int64_t t = v.top();
        if (t < 0) return false;
        const Field& f = A->field;
        fe lead = v.get(std::uint32_t(t));
        if (lead != 1) {
            RowVec w(A->n, f);
            w.add_scaled(v, f.inv(lead), f);
            v = std::move(w);
        }
        extra.emplace(std::uint32_t(t), std::move(v));
        return true;
    }

    // spanning rows (dense); for floored bases this materializes the
    // monomial rows, so keep it to small algebras
    std::vector<RowVec> spanning_rows() const {
        std::vector<RowVec> rows;
        const Field& f = A->field;
        if (weight_floor != kNoFloor)
            for (std::uint32_t i = 0; i < A->n; ++i)
                if (A->weight(i) >= weight_floor && weight_floor > 0) {
                    RowVec v(A->n, f);
                    for (auto& [j, c] : A->jennings_row(i)) v.set(j, c);
                    rows.push_back(std::move(v));
                } else if (weight_floor <= 0) {
                    RowVec v(A->n, f);
                    v.set(i, 1);
                    rows.push_back(std::move(v));
                }
        for (auto& [piv, row] : extra) rows.push_back(row);
        return rows;
    }
};

// ---- ideal expressions ----

struct SubgroupSel {
    enum Kind { Z, Gprime, Omega, Agemo, Dim } kind = Z;
    int t = 0;
    std::shared_ptr<SubgroupSel> inner; // for Omega(t, N)
};

struct IdealExpr {
    enum Kind { Aug, FullAlgebra, SubIdeal, Power, Product, Sum } kind = Aug;
    SubgroupSel sel;                         // SubIdeal
    int k = 1;                               // Power
    std::vector<std::shared_ptr<IdealExpr>> args;

    static std::shared_ptr<IdealExpr> aug() {
        auto e = std::make_shared<IdealExpr>();
        e->kind = Aug;
        return e;
    }
    static std::shared_ptr<IdealExpr> aug_power(int k) { return power(aug(), k); }
    static std::shared_ptr<IdealExpr> sub(SubgroupSel s) {
        auto e = std::make_shared<IdealExpr>();
        e->kind = SubIdeal;
        e->sel = std::move(s);
        return e;
    }
    static std::shared_ptr<IdealExpr> power(std::shared_ptr<IdealExpr> b, int k) {
        auto e = std::make_shared<IdealExpr>();
        e->kind = Power;
        e->k = k;
        e->args = {std::move(b)};
        return e;
    }
    static std::shared_ptr<IdealExpr> sum(std::vector<std::shared_ptr<IdealExpr>> xs) {
        auto e = std::make_shared<IdealExpr>();
        e->kind = Sum;
        e->args = std::move(xs);
        return e;
    }
    static std::shared_ptr<IdealExpr> product(std::vector<std::shared_ptr<IdealExpr>> xs) {
        auto e = std::make_shared<IdealExpr>();
        e->kind = Product;
        e->args = std::move(xs);
        return e;
    }
};

inline Subgroup resolve_subgroup(const Group& g, const SubgroupSel& s) {
    switch (s.kind) {
        case SubgroupSel::Z: return g.center();
        case SubgroupSel::Gprime: return g.derived();
        case SubgroupSel::Agemo: return g.agemo(s.t);
        case SubgroupSel::Dim: return g.jennings(std::uint64_t(s.t));
        case SubgroupSel::Omega: {
            if (!s.inner) throw algebra_error("Omega needs an inner subgroup");
            Subgroup n = resolve_subgroup(g, *s.inner);
            return g.omega(s.t, n);
        }
    }
    throw algebra_error("unresolvable subgroup name");
}

class IdealEvaluator {
public:
    explicit IdealEvaluator(const GroupAlgebra& a, std::uint64_t product_budget = (1ull << 21))
        : A(a), product_budget_(product_budget) {}

    SubspaceBasis eval(const IdealExpr& e) const {
        switch (e.kind) {
            case IdealExpr::Aug: return SubspaceBasis(A, 1);
            case IdealExpr::FullAlgebra: return SubspaceBasis(A, 0);
            case IdealExpr::SubIdeal: return subgroup_ideal(resolve_subgroup(A.group, e.sel));
            case IdealExpr::Power: {
                const IdealExpr& b = *e.args[0];
                if (b.kind == IdealExpr::Aug) return SubspaceBasis(A, e.k);
                if (b.kind == IdealExpr::FullAlgebra) return SubspaceBasis(A, 0);
                if (b.kind == IdealExpr::SubIdeal) {
                    Subgroup n = resolve_subgroup(A.group, b.sel);
                    if (is_central_cyclic(n)) return central_power_ideal(n, e.k);
                }
                SubspaceBasis acc = eval(b);
                for (int i = 1; i < e.k; ++i) acc = product(acc, eval(b));
                return acc;
            }
            case IdealExpr::Sum: {
                SubspaceBasis acc = eval(*e.args[0]);
                for (std::size_t i = 1; i < e.args.size(); ++i) acc = sum(acc, eval(*e.args[i]));
                return acc;
            }
            case IdealExpr::Product: {
                SubspaceBasis acc = eval(*e.args[0]);
                for (std::size_t i = 1; i < e.args.size(); ++i) {
                    // multiplying an ideal by FG leaves it unchanged
                    if (e.args[i]->kind == IdealExpr::FullAlgebra) continue;
                    acc = product(acc, eval(*e.args[i]));
                }
                return acc;
            }
        }
        throw algebra_error("bad ideal expression");
    }

    // I(N) FG = { x : coefficient sums over every N-coset vanish }
    SubspaceBasis subgroup_ideal(const Subgroup& n) const {
        SubspaceBasis b(A);
        std::vector<bool> seen(A.n, false);
        const Field& f = A.field;
        for (std::uint32_t g0 = 0; g0 < A.n; ++g0) {
            if (seen[g0]) continue;
            std::vector<std::uint32_t> coset;
            for (auto x : n.elems) coset.push_back(A.mul_idx(g0, x));
            std::sort(coset.begin(), coset.end());
            for (auto c : coset) seen[c] = true;
            for (std::size_t j = 1; j < coset.size(); ++j) {
                RowVec v(A.n, f);
                v.set(coset[j], 1);
                v.set(coset[0], f.neg(1));
                b.extra.emplace(coset[j], std::move(v));
            }
        }
        return b;
    }

    SubspaceBasis sum(const SubspaceBasis& x, const SubspaceBasis& y) const {
        const SubspaceBasis* base = &x;
        const SubspaceBasis* other = &y;
        if (y.weight_floor < x.weight_floor) std::swap(base, other);
        SubspaceBasis out = *base;
        // other's floored part (if any) has weight >= out.weight_floor and is
        // already inside out's predicate span; only its extra rows matter
        for (auto& [piv, row] : other->extra) out.insert(row);
        return out;
    }

    SubspaceBasis product(const SubspaceBasis& x, const SubspaceBasis& y) const {
        auto rx = x.spanning_rows();
        auto ry = y.spanning_rows();
        if (rx.size() * ry.size() > product_budget_)
            throw bound_error("ideal product spanning-set size exceeds the budget");
        SubspaceBasis out(A);
        const Field& f = A.field;
        for (auto& a : rx) {
            Sparse sa = A.to_sparse(a);
            for (auto& b : ry) {
                Sparse sb = A.to_sparse(b);
                Sparse prod = A.mul(sa, sb);
                RowVec v(A.n, f);
                for (auto& [i, c] : prod.terms) v.set(i, c);
                out.insert(std::move(v));
            }
        }
        return out;
    }

private:
    const GroupAlgebra& A;
    std::uint64_t product_budget_;

    bool is_central_cyclic(const Subgroup& n) const {
        const Group& g = A.group;
        for (auto e : n.elems)
            if (!g.is_central(g.decode(e))) return false;
        return true;
    }

    // I(N)^k FG for central cyclic N = <z^step>: rows (w-1)^j u with j >= k
    SubspaceBasis central_power_ideal(const Subgroup& n, int k) const {
        const Field& f = A.field;
        const Group& g = A.group;
        std::uint64_t o = n.order();
        SubspaceBasis b(A);
        if (o == 1 || std::uint64_t(k) >= o) return b; // (w-1)^k = 0 once k >= |N|
        std::uint64_t step = g.zq / o;
        // (w-1)^j as polynomials in w, iteratively
        std::vector<std::vector<fe>> polys(o + 1, std::vector<fe>(o, 0));
        polys[0][0] = 1;
        for (std::uint64_t j = 1; j <= o - 1; ++j) {
            auto& prev = polys[j - 1];
            auto& cur = polys[j];
            for (std::uint64_t d = 0; d < o; ++d) {
                fe c = prev[d];
                if (!c) continue;
                cur[(d + 1) % o] = f.add(cur[(d + 1) % o], c);
                cur[d] = f.add(cur[d], f.neg(c));
            }
        }
        // transversal of N: z-coordinate below step
        for (std::uint32_t u = 0; u < A.n; ++u) {
            GroupElement ge = g.decode(u);
            if (ge.v.back() >= step) continue;
            for (std::uint64_t j = k; j <= o - 1; ++j) {
                RowVec v(A.n, f);
                GroupElement t = ge;
                for (std::uint64_t d = 0; d <= j; ++d) {
                    fe c = polys[j][d];
                    if (!c) continue;
                    t.v.back() = ge.v.back() + d * step;
                    v.add_at(g.encode(t), c, f);
                }
                std::int64_t piv = v.top();
                if (piv < 0 || b.extra.count(std::uint32_t(piv)))
                    throw std::logic_error("central power ideal rows should be triangular");
                b.extra.emplace(std::uint32_t(piv), std::move(v));
            }
        }
        return b;
    }
};

// coset representatives of I modulo J (J contained in I, both echelons)
class QuotientSpace {
public:
    QuotientSpace(const GroupAlgebra& a, SubspaceBasis i, SubspaceBasis j)
        : A(&a), I(std::move(i)), J(std::move(j)) {
        // verify J subset of I; a weight floor above I's floor is contained
        // by construction, so only rows outside the predicate need checking
        if (J.weight_floor >= I.weight_floor) {
            for (auto& [piv, row] : J.extra)
                if (!I.member(row)) throw algebra_error("quotient needs J contained in I");
        } else {
            for (auto& row : J.spanning_rows())
                if (!I.member(row)) throw algebra_error("quotient needs J contained in I");
        }
        // representatives: I-pivots not covered by J
        if (I.weight_floor != SubspaceBasis::kNoFloor)
            for (std::uint32_t idx = 0; idx < A->n; ++idx)
                if (A->weight(idx) >= I.weight_floor && !J.pivot_covered(idx)) {
                    Sparse s;
                    for (auto& t : A->jennings_row(idx)) s.terms.push_back(t);
                    reps_.push_back(std::move(s));
                }
        for (auto& [piv, row] : I.extra)
            if (!J.pivot_covered(piv)) reps_.push_back(A->to_sparse(row));
        if (I.dim() - J.dim() != reps_.size())
            throw std::logic_error("quotient dimension mismatch");
    }

    std::uint64_t dim() const { return reps_.size(); }
    const std::vector<Sparse>& representatives() const { return reps_; }

    // canonical representative of v + J
    RowVec reduce(const Sparse& v) const {
        RowVec w = A->to_dense(v);
        J.reduce(w);
        return w;
    }

    bool is_zero(const Sparse& v) const {
        RowVec w = reduce(v);
        return w.is_zero();
    }

    const GroupAlgebra* A;
    SubspaceBasis I, J;

private:
    std::vector<Sparse> reps_;
};

// ---- text syntax: I^3, I(Z)*FG, I(Omega(1,Z))*FG + I^4 ----

namespace detail {

class IdealLexer {
public:
    explicit IdealLexer(const std::string& s) : s_(s) {}
    void ws() {
        while (i_ < s_.size() && isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
    }
    bool eat(const std::string& tok) {
        ws();
        if (s_.compare(i_, tok.size(), tok) == 0) {
            i_ += tok.size();
            return true;
        }
        return false;
    }
    int number() {
        ws();
        std::size_t start = i_;
        while (i_ < s_.size() && isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
        if (i_ == start) fail("expected a number");
        return std::stoi(s_.substr(start, i_ - start));
    }
    bool done() {
        ws();
        return i_ == s_.size();
    }
    [[noreturn]] void fail(const std::string& why) {
        throw algebra_error("bad ideal expression '" + s_ + "': " + why);
    }

private:
    const std::string& s_;
    std::size_t i_ = 0;
};

inline SubgroupSel parse_subgroup_sel(IdealLexer& lx) {
    SubgroupSel s;
    if (lx.eat("Omega(")) {
        s.kind = SubgroupSel::Omega;
        s.t = lx.number();
        if (!lx.eat(",")) lx.fail("expected ','");
        s.inner = std::make_shared<SubgroupSel>(parse_subgroup_sel(lx));
        if (!lx.eat(")")) lx.fail("expected ')'");
    } else if (lx.eat("Agemo(")) {
        s.kind = SubgroupSel::Agemo;
        s.t = lx.number();
        if (!lx.eat(")")) lx.fail("expected ')'");
    } else if (lx.eat("D(")) {
        s.kind = SubgroupSel::Dim;
        s.t = lx.number();
        if (!lx.eat(")")) lx.fail("expected ')'");
    } else if (lx.eat("G'")) {
        s.kind = SubgroupSel::Gprime;
    } else if (lx.eat("Z")) {
        s.kind = SubgroupSel::Z;
    } else {
        lx.fail("unknown subgroup name (expected Z, G', Omega(t,N), Agemo(t) or D(s))");
    }
    return s;
}

inline std::shared_ptr<IdealExpr> parse_ideal_factor(IdealLexer& lx) {
    std::shared_ptr<IdealExpr> base;
    if (lx.eat("FG")) {
        base = std::make_shared<IdealExpr>();
        base->kind = IdealExpr::FullAlgebra;
    } else if (lx.eat("I(")) {
        base = IdealExpr::sub(parse_subgroup_sel(lx));
        if (!lx.eat(")")) lx.fail("expected ')'");
    } else if (lx.eat("I")) {
        base = IdealExpr::aug();
    } else {
        lx.fail("expected I, I(...) or FG");
    }
    if (lx.eat("^")) base = IdealExpr::power(base, lx.number());
    return base;
}

inline std::shared_ptr<IdealExpr> parse_ideal_term(IdealLexer& lx) {
    std::vector<std::shared_ptr<IdealExpr>> fs{parse_ideal_factor(lx)};
    while (lx.eat("*")) fs.push_back(parse_ideal_factor(lx));
    if (fs.size() == 1) return fs[0];
    return IdealExpr::product(std::move(fs));
}

} // namespace detail

inline std::shared_ptr<IdealExpr> parse_ideal_expr(const std::string& text) {
    detail::IdealLexer lx(text);
    std::vector<std::shared_ptr<IdealExpr>> terms{detail::parse_ideal_term(lx)};
    while (lx.eat("+")) terms.push_back(detail::parse_ideal_term(lx));
    if (!lx.done()) lx.fail("trailing input");
    if (terms.size() == 1) return terms[0];
    return IdealExpr::sum(std::move(terms));
}

inline SubspaceBasis evaluate_ideal(const GroupAlgebra& a, const std::string& text) {
    return IdealEvaluator(a).eval(*parse_ideal_expr(text));
}

inline SubspaceBasis evaluate_ideal(const GroupAlgebra& a, const IdealExpr& e) {
    return IdealEvaluator(a).eval(e);
}

} // namespace mip
