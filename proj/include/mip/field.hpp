#pragma once

// Arithmetic and deterministic enumeration for GF(p), p prime, and GF(2^m).
// Elements are plain integers in [0, q): residues mod p, or polynomial
// coefficient bits over GF(2). One encoding per element.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "mip/errors.hpp"

namespace mip {

using fe = std::uint32_t; // field element encoding, always < q

namespace detail {

inline bool is_prime_u32(std::uint32_t n) {
    if (n < 2) return false;
    for (std::uint32_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// carry-less multiply of GF(2) polynomials (bit-packed)
inline std::uint64_t clmul(std::uint64_t a, std::uint64_t b) {
    std::uint64_t r = 0;
    while (b) {
        if (b & 1) r ^= a;
        a <<= 1;
        b >>= 1;
    }
    return r;
}

inline int gf2_degree(std::uint64_t a) {
    int d = -1;
    while (a) {
        ++d;
        a >>= 1;
    }
    return d;
}

inline std::uint64_t gf2_mod(std::uint64_t a, std::uint64_t b) {
    int db = gf2_degree(b);
    for (int da = gf2_degree(a); da >= db; da = gf2_degree(a))
        a ^= b << (da - db);
    return a;
}

} // namespace detail

// Immutable after construction; all operations pure.
class Field {
public:
    std::uint32_t p = 2;       // characteristic
    std::uint32_t m = 1;       // extension degree (1 unless p == 2)
    std::uint32_t q = 2;       // p^m
    std::uint32_t modulus = 0; // irreducible polynomial bits, p == 2 && m > 1 only

    // Default irreducible moduli for GF(2^m). m=7 has no default; callers
    // supply one explicitly (the choice never affects any count).
    static std::uint32_t default_modulus(std::uint32_t m) {
        switch (m) {
            case 2: return 0b111;        // x^2+x+1
            case 3: return 0b1011;       // x^3+x+1
            case 4: return 0b10011;      // x^4+x+1
            case 5: return 0b100101;     // x^5+x^2+1
            case 6: return 0b1000011;    // x^6+x+1
            case 8: return 0b100011011;  // x^8+x^4+x^3+x+1
            default:
                throw field_error("no default modulus for GF(2^" + std::to_string(m) +
                                  "); supply one explicitly");
        }
    }

    Field() { init(); }

    Field(std::uint32_t p_, std::uint32_t m_, std::uint32_t mod_bits = 0)
        : p(p_), m(m_), modulus(mod_bits) {
        if (!detail::is_prime_u32(p)) throw field_error("characteristic must be prime");
        if (p != 2 && m != 1) throw field_error("extension fields only supported for p=2");
        if (m == 0 || m > 16) throw field_error("degree out of range");
        if (p == 2 && m > 1 && modulus == 0) modulus = default_modulus(m);
        if (p != 2 || m == 1) modulus = 0;
        init();
    }

    static Field gf(std::uint32_t p, std::uint32_t m = 1) { return Field(p, m); }

    // parse a cardinality q = p^m (m>1 only for p=2)
    static Field from_q(std::uint64_t q) {
        if (q >= 2 && (q & (q - 1)) == 0) {
            std::uint32_t m = 0;
            for (std::uint64_t t = q; t > 1; t >>= 1) ++m;
            return Field(2, m);
        }
        if (q <= 0xffffffffULL && detail::is_prime_u32(static_cast<std::uint32_t>(q)))
            return Field(static_cast<std::uint32_t>(q), 1);
        throw field_error("q must be a prime or a power of 2");
    }

    bool operator==(const Field& o) const {
        return p == o.p && m == o.m && modulus == o.modulus;
    }

    fe zero() const { return 0; }
    fe one() const { return 1; }

    fe add(fe a, fe b) const {
        check(a); check(b);
        if (p == 2) return a ^ b;
        std::uint64_t s = std::uint64_t(a) + b;
        return fe(s >= q ? s - q : s);
    }

    fe neg(fe a) const {
        check(a);
        if (p == 2) return a;
        return a == 0 ? 0 : q - a;
    }

    fe sub(fe a, fe b) const { return add(a, neg(b)); }

    fe mul(fe a, fe b) const {
        check(a); check(b);
        if (a == 0 || b == 0) return 0;
        if (p != 2) return fe((std::uint64_t(a) * b) % q);
        if (m == 1) return a & b;
        if (!log_.empty()) {
            std::uint32_t s = log_[a] + log_[b];
            if (s >= q - 1) s -= q - 1;
            return exp_[s];
        }
        return mul_clmul(a, b);
    }

    // shift-and-reduce path; also the reference the log tables are built from
    fe mul_clmul(fe a, fe b) const {
        if (p != 2) throw field_error("mul_clmul requires characteristic 2");
        if (m == 1) return a & b;
        return fe(detail::gf2_mod(detail::clmul(a, b), modulus));
    }

    fe pow(fe a, std::uint64_t k) const {
        fe r = 1, base = a;
        while (k) {
            if (k & 1) r = mul(r, base);
            base = mul(base, base);
            k >>= 1;
        }
        return r;
    }

    fe inv(fe a) const {
        if (a == 0) throw field_error("inversion of zero");
        if (p != 2) return pow(a, q - 2);
        if (m == 1) return 1;
        if (!log_.empty()) return exp_[(q - 1 - log_[a]) % (q - 1)];
        return pow(a, q - 2);
    }

    fe div(fe a, fe b) const { return mul(a, inv(b)); }

    // square root in characteristic 2 (Frobenius is bijective)
    fe sqrt(fe a) const {
        if (p != 2) throw field_error("sqrt implemented for characteristic 2 only");
        fe r = a;
        for (std::uint32_t i = 0; i + 1 < m; ++i) r = mul(r, r);
        return r;
    }

    // absolute trace a + a^2 + ... + a^(2^(m-1)), valued in GF(2)
    fe trace(fe a) const {
        if (p != 2) throw field_error("trace implemented for characteristic 2 only");
        fe acc = a, sq = a;
        for (std::uint32_t i = 1; i < m; ++i) {
            sq = mul(sq, sq);
            acc ^= sq;
        }
        if (acc > 1) throw field_error("trace landed outside the prime field");
        return acc;
    }

    std::vector<fe> enumerate() const {
        std::vector<fe> all(q);
        for (std::uint32_t i = 0; i < q; ++i) all[i] = i;
        return all;
    }

    std::string show(fe a) const { return std::to_string(a); }

private:
    std::vector<fe> exp_, log_;

    void check(fe a) const {
        if (a >= q) throw field_error("element encoding out of range");
    }

    void init() {
        std::uint64_t qq = 1;
        for (std::uint32_t i = 0; i < m; ++i) qq *= p;
        if (qq > (1ull << 31)) throw field_error("field too large");
        q = std::uint32_t(qq);
        if (p == 2 && m > 1) {
            if (detail::gf2_degree(modulus) != int(m))
                throw field_error("modulus degree mismatch");
            // trial division against everything of degree <= m/2
            for (std::uint32_t d = 1; 2 * d <= m; ++d)
                for (std::uint32_t f = (1u << d); f < (2u << d); ++f)
                    if (detail::gf2_mod(modulus, f) == 0)
                        throw field_error("modulus is reducible");
            build_tables();
        }
    }

    void build_tables() {
        // log/antilog tables from a multiplicative generator, q <= 2^16
        if (q > (1u << 16)) return;
        for (fe g = 2; g < q; ++g) {
            std::uint32_t ord = 1;
            fe x = g;
            while (x != 1) {
                x = mul_clmul(x, g);
                ++ord;
            }
            if (ord == q - 1) {
                exp_.assign(q - 1, 0);
                log_.assign(q, 0);
                fe cur = 1;
                for (std::uint32_t i = 0; i < q - 1; ++i) {
                    exp_[i] = cur;
                    log_[cur] = i;
                    cur = mul_clmul(cur, g);
                }
                return;
            }
        }
        throw field_error("no multiplicative generator found");
    }
};

} // namespace mip
