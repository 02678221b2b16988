#pragma once

// Quadratic forms on F^{2n} over characteristic-2 fields: polar forms,
// symplectic bases by hyperbolic peeling, the Arf invariant and its class,
// and the similarity obstruction trace(R(B) + R(B')).

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "mip/field.hpp"

namespace mip {

using fvec = std::vector<fe>;
using fmat = std::vector<std::vector<fe>>;

struct QuadraticForm {
    Field f;
    int dim = 0;
    fmat c; // upper triangular coefficients, B(v) = sum_{i<=j} c[i][j] v_i v_j

    QuadraticForm() = default;
    QuadraticForm(const Field& field, int d) : f(field), dim(d), c(d, fvec(d, 0)) {
        if (field.p != 2) throw quadform_error("quadratic-form machinery expects characteristic 2");
    }

    fe eval(const fvec& v) const {
        fe acc = 0;
        for (int i = 0; i < dim; ++i) {
            if (v[i] == 0) continue;
            for (int j = i; j < dim; ++j)
                if (c[i][j] && v[j]) acc = f.add(acc, f.mul(c[i][j], f.mul(v[i], v[j])));
        }
        return acc;
    }

    bool operator==(const QuadraticForm& o) const { return dim == o.dim && c == o.c; }

    // B'(v) = s B(A v)
    QuadraticForm transformed(const fmat& a, fe s = 1) const {
        QuadraticForm out(f, dim);
        auto apply = [&](const fvec& v) {
            fvec w(dim, 0);
            for (int i = 0; i < dim; ++i)
                for (int j = 0; j < dim; ++j)
                    if (a[i][j] && v[j]) w[i] = f.add(w[i], f.mul(a[i][j], v[j]));
            return w;
        };
        std::vector<fe> diag(dim);
        for (int i = 0; i < dim; ++i) {
            fvec e(dim, 0);
            e[i] = 1;
            diag[i] = f.mul(s, eval(apply(e)));
            out.c[i][i] = diag[i];
        }
        for (int i = 0; i < dim; ++i)
            for (int j = i + 1; j < dim; ++j) {
                fvec e(dim, 0);
                e[i] = 1;
                e[j] = 1;
                fe v = f.mul(s, eval(apply(e)));
                out.c[i][j] = f.add(v, f.add(diag[i], diag[j]));
            }
        return out;
    }
};

// polar form C(v,w) = B(v+w) + B(v) + B(w); alternating with zero diagonal
inline fmat polar(const QuadraticForm& b) {
    fmat m(b.dim, fvec(b.dim, 0));
    for (int i = 0; i < b.dim; ++i)
        for (int j = 0; j < b.dim; ++j)
            if (i != j) m[i][j] = b.c[std::min(i, j)][std::max(i, j)];
    return m;
}

struct SymplecticBasis {
    std::vector<fvec> a, b; // C(a_i, b_i) = 1, everything else pairs to 0
};

namespace detail {

inline fe pair_with(const Field& f, const fmat& c, const fvec& v, const fvec& w) {
    fe acc = 0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (!v[i]) continue;
        for (std::size_t j = 0; j < w.size(); ++j)
            if (c[i][j] && w[j]) acc = f.add(acc, f.mul(v[i], f.mul(c[i][j], w[j])));
    }
    return acc;
}

} // namespace detail

// hyperbolic-pair peeling; picks the lowest-index usable vectors so the
// output is deterministic
inline SymplecticBasis symplectic_basis(const Field& f, const fmat& c) {
    int dim = int(c.size());
    if (dim % 2) throw quadform_error("symplectic basis needs even dimension");
    std::vector<fvec> pool;
    for (int i = 0; i < dim; ++i) {
        fvec e(dim, 0);
        e[i] = 1;
        pool.push_back(e);
    }
    SymplecticBasis out;
    while (!pool.empty()) {
        fvec v = pool.front();
        std::size_t wi = 0;
        fe pv = 0;
        for (std::size_t k = 1; k < pool.size(); ++k) {
            pv = detail::pair_with(f, c, v, pool[k]);
            if (pv != 0) {
                wi = k;
                break;
            }
        }
        if (wi == 0) throw quadform_error("alternating form is degenerate");
        fvec w = pool[wi];
        fe inv = f.inv(pv);
        for (auto& x : w) x = f.mul(x, inv);
        std::vector<fvec> next;
        for (std::size_t k = 1; k < pool.size(); ++k) {
            if (k == wi) continue;
            fvec u = pool[k];
            fe cu_w = detail::pair_with(f, c, u, w);
            fe cu_v = detail::pair_with(f, c, u, v);
            for (int i = 0; i < dim; ++i)
                u[i] = f.add(u[i], f.add(f.mul(cu_w, v[i]), f.mul(cu_v, w[i])));
            next.push_back(std::move(u));
        }
        out.a.push_back(std::move(v));
        out.b.push_back(std::move(w));
        pool = std::move(next);
    }
    return out;
}

struct ArfResult {
    fe value = 0;      // sum B(a_i) B(b_i) over the computed symplectic basis
    fe class_bit = 0;  // trace(value): the class modulo {x^2 + x}
    bool split_radical = false;
    int radical_dim = 0;
};

// Arf invariant; a singular form is split into radical (+) non-singular part
// first, which requires B to vanish on the radical.
inline ArfResult arf(const QuadraticForm& b) {
    const Field& f = b.f;
    fmat c = polar(b);
    int dim = b.dim;
    // radical = nullspace of the polar matrix
    fmat m = c;
    std::vector<int> pivot_col;
    int rank = 0;
    for (int col = 0; col < dim && rank < dim; ++col) {
        int sel = -1;
        for (int row = rank; row < dim; ++row)
            if (m[row][col]) {
                sel = row;
                break;
            }
        if (sel < 0) continue;
        std::swap(m[sel], m[rank]);
        fe inv = f.inv(m[rank][col]);
        for (int j = 0; j < dim; ++j) m[rank][j] = f.mul(m[rank][j], inv);
        for (int row = 0; row < dim; ++row)
            if (row != rank && m[row][col]) {
                fe factor = m[row][col];
                for (int j = 0; j < dim; ++j)
                    m[row][j] = f.add(m[row][j], f.mul(factor, m[rank][j]));
            }
        pivot_col.push_back(col);
        ++rank;
    }
    std::vector<fvec> radical;
    {
        std::vector<bool> is_pivot(dim, false);
        for (int pc : pivot_col) is_pivot[pc] = true;
        for (int col = 0; col < dim; ++col) {
            if (is_pivot[col]) continue;
            fvec v(dim, 0);
            v[col] = 1;
            for (int r = 0; r < rank; ++r) v[pivot_col[r]] = m[r][col];
            radical.push_back(std::move(v));
        }
    }
    ArfResult res;
    res.radical_dim = int(radical.size());
    res.split_radical = !radical.empty();
    for (auto& v : radical)
        if (b.eval(v) != 0)
            throw quadform_error("form does not vanish on its radical; no zero/non-singular split");
    // a complement of the radical: unit vectors on the pivot columns of the
    // radical-spanning echelon
    std::vector<int> comp_cols;
    {
        // radical vectors have leading ones on non-pivot columns; the pivot
        // columns of the polar elimination give a complement
        for (int pc : pivot_col) comp_cols.push_back(pc);
    }
    if (comp_cols.size() % 2) throw quadform_error("non-singular part has odd dimension");
    if (comp_cols.empty()) return res; // zero form: value 0
    // restrict C and B to the complement coordinates
    int d2 = int(comp_cols.size());
    fmat cc(d2, fvec(d2, 0));
    for (int i = 0; i < d2; ++i)
        for (int j = 0; j < d2; ++j) cc[i][j] = c[comp_cols[i]][comp_cols[j]];
    SymplecticBasis sb = symplectic_basis(b.f, cc);
    auto lift_eval = [&](const fvec& small) {
        fvec big(dim, 0);
        for (int i = 0; i < d2; ++i) big[comp_cols[i]] = small[i];
        return b.eval(big);
    };
    for (std::size_t i = 0; i < sb.a.size(); ++i)
        res.value = f.add(res.value, f.mul(lift_eval(sb.a[i]), lift_eval(sb.b[i])));
    res.class_bit = f.trace(res.value);
    return res;
}

// necessary condition for similarity: the Arf classes must agree
inline bool similar_class_check(const QuadraticForm& b1, const QuadraticForm& b2) {
    if (b1.dim != b2.dim) throw quadform_error("similarity check needs equal dimensions");
    fe r1 = arf(b1).value;
    fe r2 = arf(b2).value;
    return b1.f.trace(b1.f.add(r1, r2)) == 0;
}

// ---- form literals: sum{x1*y1,x2*y2}, x0^2+y0^2+sum{...} ----

namespace detail {

struct FormTerm {
    int slot_a, slot_b; // raw slots: x_k -> 2k, y_k -> 2k+1
};

class FormLexer {
public:
    explicit FormLexer(const std::string& s) : s_(s) {}
    void ws() {
        while (i_ < s_.size() && isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
    }
    bool eat(char ch) {
        ws();
        if (i_ < s_.size() && s_[i_] == ch) {
            ++i_;
            return true;
        }
        return false;
    }
    bool eat_word(const char* w) {
        ws();
        std::size_t j = i_;
        for (const char* q = w; *q; ++q, ++j)
            if (j >= s_.size() || s_[j] != *q) return false;
        i_ = j;
        return true;
    }
    int var() { // x3 -> 6, y3 -> 7
        ws();
        if (i_ >= s_.size() || (s_[i_] != 'x' && s_[i_] != 'y')) fail("expected x<k> or y<k>");
        bool is_y = s_[i_] == 'y';
        ++i_;
        std::size_t start = i_;
        while (i_ < s_.size() && isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
        if (i_ == start) fail("expected a variable index");
        int k = std::stoi(s_.substr(start, i_ - start));
        return 2 * k + (is_y ? 1 : 0);
    }
    bool done() {
        ws();
        return i_ == s_.size();
    }
    [[noreturn]] void fail(const std::string& why) {
        throw quadform_error("bad form literal '" + s_ + "': " + why);
    }

private:
    const std::string& s_;
    std::size_t i_ = 0;
};

inline void parse_form_terms(FormLexer& lx, std::vector<FormTerm>& terms) {
    do {
        if (lx.eat_word("sum")) {
            if (!lx.eat('{')) lx.fail("expected '{'");
            parse_form_terms(lx, terms);
            while (lx.eat(',')) parse_form_terms(lx, terms);
            if (!lx.eat('}')) lx.fail("expected '}'");
        } else {
            int a = lx.var();
            if (lx.eat('^')) {
                if (!lx.eat('2')) lx.fail("only squares are supported");
                terms.push_back({a, a});
            } else if (lx.eat('*')) {
                int b = lx.var();
                terms.push_back({std::min(a, b), std::max(a, b)});
            } else {
                lx.fail("expected '^2' or '*'");
            }
        }
    } while (lx.eat('+'));
}

} // namespace detail

// Pair indices are compressed: the used x_k/y_k pairs are laid out as
// consecutive (x, y) coordinate pairs in order of appearance of k.
inline QuadraticForm parse_form(const Field& f, const std::string& text) {
    detail::FormLexer lx(text);
    std::vector<detail::FormTerm> terms;
    detail::parse_form_terms(lx, terms);
    if (!lx.done()) lx.fail("trailing input");
    std::vector<int> used;
    for (auto& t : terms)
        for (int slot : {t.slot_a / 2, t.slot_b / 2})
            if (std::find(used.begin(), used.end(), slot) == used.end()) used.push_back(slot);
    std::sort(used.begin(), used.end());
    auto remap = [&](int raw) {
        int pair = raw / 2;
        int pos = int(std::find(used.begin(), used.end(), pair) - used.begin());
        return 2 * pos + (raw & 1);
    };
    QuadraticForm q(f, 2 * int(used.size()));
    for (auto& t : terms) {
        int i = remap(t.slot_a), j = remap(t.slot_b);
        if (i > j) std::swap(i, j);
        q.c[i][j] = f.add(q.c[i][j], 1);
    }
    return q;
}

} // namespace mip
