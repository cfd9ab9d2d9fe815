#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

// Exact arithmetic in GF(p^k). An element is encoded as the integer in
// [0, q) whose base-p digits, constant term first, are its coordinates in
// the polynomial basis. The modulus is a monic irreducible polynomial of
// degree k over GF(p), stored as k+1 coefficients, constant term first.

namespace untouch {

namespace detail {

inline bool is_prime(uint32_t n) {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    for (uint32_t d = 3; uint64_t(d) * d <= n; d += 2)
        if (n % d == 0) return false;
    return true;
}

// Remainder of a modulo the monic polynomial b, coefficients over GF(p),
// constant term first.
inline std::vector<uint32_t> poly_mod(uint32_t p, std::vector<uint32_t> a,
                                      const std::vector<uint32_t>& b) {
    const size_t db = b.size() - 1;
    while (a.size() > db) {
        const uint64_t lead = a.back();
        const size_t shift = a.size() - 1 - db;
        if (lead != 0) {
            for (size_t j = 0; j < db; ++j)
                a[shift + j] =
                    uint32_t((a[shift + j] + (p - b[j]) * lead) % p);
        }
        a.pop_back();
    }
    return a;
}

inline bool poly_is_zero(const std::vector<uint32_t>& a) {
    return std::all_of(a.begin(), a.end(), [](uint32_t c) { return c == 0; });
}

// Monic polynomial of degree d whose lower coefficients are the base-p
// digits of m.
inline std::vector<uint32_t> monic_from_encoding(uint32_t p, uint32_t d,
                                                 uint64_t m) {
    std::vector<uint32_t> c(d + 1, 0);
    for (uint32_t i = 0; i < d; ++i) {
        c[i] = uint32_t(m % p);
        m /= p;
    }
    c[d] = 1;
    return c;
}

// Trial factorization: a monic polynomial of degree k >= 2 is irreducible
// iff no monic polynomial of degree in [1, k/2] divides it.
inline bool poly_is_irreducible(uint32_t p, const std::vector<uint32_t>& f) {
    const uint32_t k = uint32_t(f.size() - 1);
    for (uint32_t d = 1; 2 * d <= k; ++d) {
        uint64_t count = 1;
        for (uint32_t i = 0; i < d; ++i) count *= p;
        for (uint64_t m = 0; m < count; ++m) {
            if (poly_is_zero(poly_mod(p, f, monic_from_encoding(p, d, m))))
                return false;
        }
    }
    return true;
}

}  // namespace detail

class Field;

// Value handle for one element of a specific Field. The Field object must
// outlive its elements. Operations never mix elements of distinct field
// specifications.
class Element {
  public:
    Element(const Field& f, uint32_t enc);

    uint32_t enc() const { return enc_; }
    const Field& field() const { return *field_; }
    bool is_zero() const { return enc_ == 0; }

  private:
    uint32_t enc_;
    const Field* field_;
};

class Field {
  public:
    static constexpr uint64_t kDefaultOrderBound = uint64_t(1) << 20;
    // Full multiplication/inverse tables are kept for orders up to this.
    static constexpr uint32_t kTableLimit = 512;

    Field(uint32_t p, uint32_t k, std::vector<uint32_t> modulus,
          uint64_t order_bound = kDefaultOrderBound)
        : p_(p), k_(k), modulus_(std::move(modulus)) {
        if (!detail::is_prime(p_))
            throw std::invalid_argument("field characteristic must be prime, got " +
                                        std::to_string(p_));
        if (k_ < 1) throw std::invalid_argument("extension degree must be >= 1");
        uint64_t q = 1;
        for (uint32_t i = 0; i < k_; ++i) {
            q *= p_;
            if (q > order_bound)
                throw std::invalid_argument("field order " + std::to_string(p_) +
                                            "^" + std::to_string(k_) +
                                            " exceeds the configured bound");
        }
        q_ = uint32_t(q);
        if (modulus_.size() != size_t(k_) + 1)
            throw std::invalid_argument("modulus must have k+1 coefficients");
        for (uint32_t c : modulus_)
            if (c >= p_)
                throw std::invalid_argument("modulus coefficient out of range");
        if (modulus_.back() != 1)
            throw std::invalid_argument("modulus must be monic");
        if (k_ >= 2 && !detail::poly_is_irreducible(p_, modulus_))
            throw std::invalid_argument("modulus is reducible over GF(p)");
        mod_bits_ = 0;
        if (p_ == 2)
            for (uint32_t i = 0; i <= k_; ++i)
                mod_bits_ |= uint64_t(modulus_[i]) << i;
        mod_enc_ = 0;
        for (uint32_t i = k_ + 1; i-- > 0;) mod_enc_ = mod_enc_ * p_ + modulus_[i];
        if (q_ <= kTableLimit) build_tables();
    }

    // The field GF(p^k) with the canonical modulus: the monic irreducible of
    // degree k over GF(p) with the smallest integer encoding.
    static Field make(uint32_t p, uint32_t k,
                      uint64_t order_bound = kDefaultOrderBound) {
        if (!detail::is_prime(p))
            throw std::invalid_argument("field characteristic must be prime, got " +
                                        std::to_string(p));
        if (k < 1) throw std::invalid_argument("extension degree must be >= 1");
        if (k == 1) return Field(p, 1, {0, 1}, order_bound);
        uint64_t count = 1;
        for (uint32_t i = 0; i < k; ++i) {
            count *= p;
            if (count > order_bound)
                throw std::invalid_argument("field order exceeds the configured bound");
        }
        for (uint64_t m = 0; m < count; ++m) {
            auto f = detail::monic_from_encoding(p, k, m);
            if (detail::poly_is_irreducible(p, f))
                return Field(p, k, std::move(f), order_bound);
        }
        throw std::logic_error("no irreducible polynomial found");  // unreachable
    }

    uint32_t p() const { return p_; }
    uint32_t k() const { return k_; }
    uint32_t q() const { return q_; }
    const std::vector<uint32_t>& modulus() const { return modulus_; }

    bool same_spec(const Field& o) const {
        return p_ == o.p_ && k_ == o.k_ && mod_enc_ == o.mod_enc_;
    }

    Element element(uint32_t enc) const { return Element(*this, enc); }
    Element zero() const { return Element(*this, 0); }
    Element one() const { return Element(*this, 1); }

    // Arithmetic on raw encodings. Inputs must be in [0, q).
    uint32_t add(uint32_t a, uint32_t b) const {
        if (p_ == 2) return a ^ b;
        if (k_ == 1) return uint32_t((uint64_t(a) + b) % p_);
        uint32_t r = 0, pw = 1;
        for (uint32_t i = 0; i < k_; ++i) {
            r += (a % p_ + b % p_) % p_ * pw;
            a /= p_;
            b /= p_;
            pw *= p_;
        }
        return r;
    }

    uint32_t neg(uint32_t a) const {
        if (p_ == 2) return a;
        if (k_ == 1) return a == 0 ? 0 : p_ - a;
        uint32_t r = 0, pw = 1;
        for (uint32_t i = 0; i < k_; ++i) {
            uint32_t d = a % p_;
            r += (d == 0 ? 0 : p_ - d) * pw;
            a /= p_;
            pw *= p_;
        }
        return r;
    }

    uint32_t sub(uint32_t a, uint32_t b) const { return add(a, neg(b)); }

    uint32_t mul(uint32_t a, uint32_t b) const {
        if (!mul_table_.empty()) return mul_table_[size_t(a) * q_ + b];
        return mul_generic(a, b);
    }

    uint32_t inv(uint32_t a) const {
        if (a == 0) throw std::domain_error("division by zero");
        if (!inv_table_.empty()) return inv_table_[a];
        return pow(a, q_ - 2);
    }

    uint32_t div(uint32_t a, uint32_t b) const { return mul(a, inv(b)); }

    // Square-and-multiply; 0^0 is defined as 1.
    uint32_t pow(uint32_t a, uint64_t n) const {
        uint32_t r = 1, base = a;
        while (n != 0) {
            if (n & 1) r = mul(r, base);
            base = mul(base, base);
            n >>= 1;
        }
        return r;
    }

    // Every element of a characteristic-2 field is a square; for odd q the
    // Euler criterion applies (0 counts as a square).
    bool is_square(uint32_t a) const {
        if (p_ == 2) return true;
        if (a == 0) return true;
        return pow(a, (q_ - 1) / 2) == 1;
    }

    // Canonical square root: the root with the smaller integer encoding.
    uint32_t sqrt(uint32_t a) const {
        if (!is_square(a))
            throw std::domain_error("square root of a non-square element");
        if (a == 0) return 0;
        if (p_ == 2) return pow(a, q_ / 2);  // inverse of the Frobenius square
        if (q_ % 4 == 3) {
            uint32_t r = pow(a, (q_ + 1) / 4);
            return std::min(r, neg(r));
        }
        // Tonelli-Shanks in the cyclic group GF(q)*.
        uint32_t s = 0;
        uint64_t t = q_ - 1;
        while ((t & 1) == 0) {
            t >>= 1;
            ++s;
        }
        uint32_t z = 2;
        while (is_square(z)) ++z;
        uint32_t m = s;
        uint32_t c = pow(z, t);
        uint32_t r = pow(a, (t + 1) / 2);
        uint32_t u = pow(a, t);
        while (u != 1) {
            uint32_t i = 0, v = u;
            while (v != 1) {
                v = mul(v, v);
                ++i;
            }
            uint32_t b = c;
            for (uint32_t j = 0; j + i + 1 < m; ++j) b = mul(b, b);
            m = i;
            c = mul(b, b);
            u = mul(u, c);
            r = mul(r, b);
        }
        return std::min(r, neg(r));
    }

    // All solutions of e^3 = 1, sorted by encoding. Three elements iff
    // 3 divides q-1, otherwise just {1}.
    std::vector<uint32_t> cube_roots_of_unity() const {
        if ((q_ - 1) % 3 != 0) return {1};
        const uint64_t e = (q_ - 1) / 3;
        uint32_t w = 0;
        for (uint32_t x = 2; x < q_; ++x) {
            uint32_t c = pow(x, e);
            if (c != 1) {
                w = c;
                break;
            }
        }
        std::vector<uint32_t> roots = {1, w, mul(w, w)};
        std::sort(roots.begin(), roots.end());
        return roots;
    }

  private:
    uint32_t mul_generic(uint32_t a, uint32_t b) const {
        if (k_ == 1) return uint32_t(uint64_t(a) * b % p_);
        if (p_ == 2) {
            uint64_t acc = 0, x = a;
            for (uint32_t bb = b; bb != 0; bb >>= 1, x <<= 1)
                if (bb & 1) acc ^= x;
            for (uint32_t i = 2 * k_ - 2; i >= k_; --i)
                if ((acc >> i) & 1) acc ^= mod_bits_ << (i - k_);
            return uint32_t(acc);
        }
        uint64_t da[24], db[24], prod[48] = {0};
        uint32_t aa = a, bb = b;
        for (uint32_t i = 0; i < k_; ++i) {
            da[i] = aa % p_;
            aa /= p_;
            db[i] = bb % p_;
            bb /= p_;
        }
        for (uint32_t i = 0; i < k_; ++i) {
            if (da[i] == 0) continue;
            for (uint32_t j = 0; j < k_; ++j)
                prod[i + j] = (prod[i + j] + da[i] * db[j]) % p_;
        }
        for (uint32_t i = 2 * k_ - 2; i >= k_; --i) {
            const uint64_t c = prod[i];
            if (c == 0) continue;
            for (uint32_t j = 0; j <= k_; ++j)
                prod[i - k_ + j] =
                    (prod[i - k_ + j] + (p_ - modulus_[j]) * c) % p_;
        }
        uint32_t r = 0;
        for (uint32_t i = k_; i-- > 0;) r = r * p_ + uint32_t(prod[i]);
        return r;
    }

    void build_tables() {
        mul_table_.resize(size_t(q_) * q_);
        for (uint32_t a = 0; a < q_; ++a)
            for (uint32_t b = a; b < q_; ++b) {
                uint32_t v = mul_generic(a, b);
                mul_table_[size_t(a) * q_ + b] = v;
                mul_table_[size_t(b) * q_ + a] = v;
            }
        inv_table_.resize(q_);
        inv_table_[0] = 0;  // never read; inv(0) throws before lookup
        for (uint32_t a = 1; a < q_; ++a) inv_table_[a] = pow(a, q_ - 2);
    }

    uint32_t p_, k_, q_;
    std::vector<uint32_t> modulus_;
    uint64_t mod_bits_ = 0;  // modulus as a bitmask, characteristic 2 only
    uint64_t mod_enc_ = 0;   // modulus encoded in base p, for spec comparison
    std::vector<uint32_t> mul_table_;
    std::vector<uint32_t> inv_table_;
};

inline Field make_field(uint32_t p, uint32_t k,
                        uint64_t order_bound = Field::kDefaultOrderBound) {
    return Field::make(p, k, order_bound);
}

// Factor q = p^k with p prime, k >= 1.
inline std::pair<uint32_t, uint32_t> factor_prime_power(uint64_t q) {
    if (q < 2) throw std::invalid_argument("not a prime power: " + std::to_string(q));
    for (uint64_t p = 2; p * p <= q; ++p) {
        if (q % p != 0) continue;
        uint32_t k = 0;
        uint64_t r = q;
        while (r % p == 0) {
            r /= p;
            ++k;
        }
        if (r != 1)
            throw std::invalid_argument("not a prime power: " + std::to_string(q));
        return {uint32_t(p), k};
    }
    return {uint32_t(q), 1};  // q itself is prime
}

inline Element::Element(const Field& f, uint32_t enc) : enc_(enc), field_(&f) {
    if (enc_ >= f.q())
        throw std::invalid_argument("element encoding " + std::to_string(enc_) +
                                    " out of range for field of order " +
                                    std::to_string(f.q()));
}

namespace detail {
inline void check_same_field(const Element& a, const Element& b) {
    if (!a.field().same_spec(b.field()))
        throw std::invalid_argument("elements of different fields in one operation");
}
}  // namespace detail

inline bool operator==(const Element& a, const Element& b) {
    detail::check_same_field(a, b);
    return a.enc() == b.enc();
}
inline bool operator!=(const Element& a, const Element& b) { return !(a == b); }
inline bool operator<(const Element& a, const Element& b) {
    detail::check_same_field(a, b);
    return a.enc() < b.enc();
}

inline Element operator+(const Element& a, const Element& b) {
    detail::check_same_field(a, b);
    return Element(a.field(), a.field().add(a.enc(), b.enc()));
}
inline Element operator-(const Element& a, const Element& b) {
    detail::check_same_field(a, b);
    return Element(a.field(), a.field().sub(a.enc(), b.enc()));
}
inline Element operator-(const Element& a) {
    return Element(a.field(), a.field().neg(a.enc()));
}
inline Element operator*(const Element& a, const Element& b) {
    detail::check_same_field(a, b);
    return Element(a.field(), a.field().mul(a.enc(), b.enc()));
}
inline Element operator/(const Element& a, const Element& b) {
    detail::check_same_field(a, b);
    return Element(a.field(), a.field().div(a.enc(), b.enc()));
}

inline Element pow(const Element& a, uint64_t n) {
    return Element(a.field(), a.field().pow(a.enc(), n));
}
inline bool is_square(const Element& a) { return a.field().is_square(a.enc()); }
inline Element sqrt(const Element& a) {
    return Element(a.field(), a.field().sqrt(a.enc()));
}
inline Element inverse(const Element& a) {
    return Element(a.field(), a.field().inv(a.enc()));
}

inline std::vector<Element> cube_roots_of_unity(const Field& f) {
    std::vector<Element> out;
    for (uint32_t enc : f.cube_roots_of_unity()) out.push_back(f.element(enc));
    return out;
}

}  // namespace untouch
