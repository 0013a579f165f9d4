#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "leafmass/errors.hpp"

namespace leafmass {

/// Explicitly constructed finite field F_{p^k}, table-driven. Elements are
/// codes 0..p^k-1 encoding coefficient vectors in base p (lowest digit =
/// constant term). The modulus is verified irreducible at construction.
/// F_4 is always built as F_2[z]/(z^2+z+1).
class FiniteField {
public:
    using El = uint16_t;

    FiniteField(long p, long degree, std::vector<long> modulus)
        : p_(p), degree_(degree), modulus_(std::move(modulus)) {
        require(p_ >= 2 && degree_ >= 1, "FiniteField: bad parameters");
        require(static_cast<long>(modulus_.size()) == degree_ + 1 && modulus_[static_cast<size_t>(degree_)] == 1,
                "FiniteField: modulus must be monic of the stated degree");
        size_ = 1;
        for (long i = 0; i < degree_; ++i) {
            size_ *= static_cast<size_t>(p_);
            require(size_ <= 65536, "FiniteField: field too large for table representation");
        }
        build_tables();
        ensure(is_irreducible(), "FiniteField: modulus is not irreducible");
    }

    long p() const { return p_; }
    long degree() const { return degree_; }
    size_t size() const { return size_; }
    const std::vector<long>& modulus() const { return modulus_; }

    El add(El a, El b) const { return add_[idx(a, b)]; }
    El sub(El a, El b) const { return add(a, neg(b)); }
    El neg(El a) const { return neg_[a]; }
    El mul(El a, El b) const { return mul_[idx(a, b)]; }
    El inv(El a) const {
        require(a != 0, "FiniteField: inverse of zero");
        return inv_[a];
    }
    El pow(El a, unsigned long e) const {
        El r = 1;
        El base = a;
        while (e) {
            if (e & 1) r = mul(r, base);
            base = mul(base, base);
            e >>= 1;
        }
        return r;
    }
    /// x -> x^p, the arithmetic Frobenius of the prime field.
    El frobenius(El a) const { return pow(a, static_cast<unsigned long>(p_)); }

    unsigned long element_order(El a) const {
        require(a != 0, "FiniteField: order of zero");
        unsigned long n = 1;
        El x = a;
        while (x != 1) {
            x = mul(x, a);
            ++n;
        }
        return n;
    }

    /// Smallest-code multiplicative generator.
    El generator() const {
        for (size_t a = 2; a < size_; ++a)
            if (element_order(static_cast<El>(a)) == size_ - 1) return static_cast<El>(a);
        ensure(size_ == 2, "FiniteField: no generator found");
        return 1;
    }

    /// Coefficient digits of an element, lowest first.
    std::vector<long> digits(El a) const {
        std::vector<long> d(static_cast<size_t>(degree_));
        for (long i = 0; i < degree_; ++i) {
            d[static_cast<size_t>(i)] = a % p_;
            a = static_cast<El>(a / p_);
        }
        return d;
    }

    El from_digits(const std::vector<long>& d) const {
        size_t a = 0;
        for (size_t i = d.size(); i-- > 0;) a = a * static_cast<size_t>(p_) + static_cast<size_t>(d[i] % p_);
        return static_cast<El>(a);
    }

private:
    size_t idx(El a, El b) const { return static_cast<size_t>(a) * size_ + b; }

    void build_tables() {
        add_.resize(size_ * size_);
        mul_.resize(size_ * size_);
        neg_.resize(size_);
        inv_.assign(size_, 0);
        for (size_t a = 0; a < size_; ++a) {
            for (size_t b = 0; b < size_; ++b) {
                add_[a * size_ + b] = add_raw(static_cast<El>(a), static_cast<El>(b));
                mul_[a * size_ + b] = mul_raw(static_cast<El>(a), static_cast<El>(b));
            }
        }
        for (size_t a = 0; a < size_; ++a) {
            std::vector<long> d = digits(static_cast<El>(a));
            for (auto& x : d) x = (p_ - x) % p_;
            neg_[a] = from_digits(d);
        }
        for (size_t a = 1; a < size_; ++a)
            for (size_t b = 1; b < size_; ++b)
                if (mul_[a * size_ + b] == 1) inv_[a] = static_cast<El>(b);
    }

    El add_raw(El a, El b) const {
        std::vector<long> da = digits(a), db = digits(b);
        for (size_t i = 0; i < da.size(); ++i) da[i] = (da[i] + db[i]) % p_;
        return from_digits(da);
    }

    El mul_raw(El a, El b) const {
        // Polynomial product reduced mod the modulus.
        std::vector<long> da = digits(a), db = digits(b);
        std::vector<long> prod(2 * static_cast<size_t>(degree_), 0);
        for (size_t i = 0; i < da.size(); ++i)
            for (size_t j = 0; j < db.size(); ++j)
                prod[i + j] = (prod[i + j] + da[i] * db[j]) % p_;
        for (size_t d = prod.size(); d-- > static_cast<size_t>(degree_);) {
            long c = prod[d] % p_;
            if (c == 0) continue;
            prod[d] = 0;
            for (long i = 0; i <= degree_; ++i) {
                size_t pos = d - static_cast<size_t>(degree_) + static_cast<size_t>(i);
                prod[pos] = ((prod[pos] - c * modulus_[static_cast<size_t>(i)]) % p_ + p_) % p_;
            }
        }
        prod.resize(static_cast<size_t>(degree_));
        return from_digits(prod);
    }

    // Rabin test with genuine polynomial arithmetic mod the modulus:
    // x^{p^k} = x mod m, and gcd(x^{p^{k/q}} - x, m) = 1 for primes q | k.
    bool is_irreducible() const {
        using Poly = std::vector<long>;
        long p = p_;
        auto trim = [](Poly& a) {
            while (!a.empty() && a.back() == 0) a.pop_back();
        };
        auto mulmod = [&](const Poly& a, const Poly& b) {
            Poly prod(a.size() + b.size(), 0);
            for (size_t i = 0; i < a.size(); ++i)
                if (a[i])
                    for (size_t j = 0; j < b.size(); ++j)
                        prod[i + j] = (prod[i + j] + a[i] * b[j]) % p;
            // reduce by the monic modulus
            for (size_t d = prod.size(); d-- > static_cast<size_t>(degree_);) {
                long c = prod[d] % p;
                if (!c) continue;
                for (long i = 0; i <= degree_; ++i) {
                    size_t pos = d - static_cast<size_t>(degree_) + static_cast<size_t>(i);
                    prod[pos] = ((prod[pos] - c * modulus_[static_cast<size_t>(i)]) % p + p) % p;
                }
            }
            prod.resize(static_cast<size_t>(degree_));
            trim(prod);
            return prod;
        };
        auto xpow = [&](unsigned long e) {
            Poly r = {1};
            Poly base = degree_ > 1 ? Poly{0, 1} : mulmod({0, 1}, {1});
            while (e) {
                if (e & 1) r = mulmod(r, base);
                base = mulmod(base, base);
                e >>= 1;
            }
            return r;
        };
        auto submod = [&](Poly a, const Poly& b) {
            if (a.size() < b.size()) a.resize(b.size(), 0);
            for (size_t i = 0; i < b.size(); ++i) a[i] = ((a[i] - b[i]) % p + p) % p;
            trim(a);
            return a;
        };
        auto gcd_poly = [&](Poly a, Poly b) {
            trim(a);
            trim(b);
            while (!b.empty()) {
                // a mod b with b made monic
                long lead_inv = 1;
                for (long t = 1; t < p; ++t)
                    if (t * b.back() % p == 1) lead_inv = t;
                while (a.size() >= b.size() && !a.empty()) {
                    long c = a.back() * lead_inv % p;
                    size_t shift = a.size() - b.size();
                    for (size_t i = 0; i < b.size(); ++i)
                        a[shift + i] = ((a[shift + i] - c * b[i]) % p + p) % p;
                    trim(a);
                }
                std::swap(a, b);
            }
            return a;
        };

        unsigned long pk = 1;
        for (long i = 0; i < degree_; ++i) pk *= static_cast<unsigned long>(p_);
        Poly xred = mulmod({0, 1}, {1}); // x reduced mod the modulus
        Poly lhs = submod(xpow(pk), xred);
        if (!lhs.empty()) return false;
        for (long q = 2; q <= degree_; ++q) {
            if (degree_ % q != 0) continue;
            bool qprime = true;
            for (long t = 2; t * t <= q; ++t)
                if (q % t == 0) qprime = false;
            if (!qprime) continue;
            unsigned long pd = 1;
            for (long i = 0; i < degree_ / q; ++i) pd *= static_cast<unsigned long>(p_);
            Poly g = gcd_poly(submod(xpow(pd), xred), modulus_);
            if (g.size() > 1) return false;
        }
        return true;
    }

    long p_;
    long degree_;
    std::vector<long> modulus_;
    size_t size_ = 0;
    std::vector<El> add_, mul_, neg_, inv_;
};

/// Fixed modulus table; every entry is verified irreducible at construction.
inline std::shared_ptr<const FiniteField> make_field(long p, long degree) {
    std::vector<long> mod;
    if (p == 2) {
        switch (degree) {
            case 1: mod = {1, 1}; break;            // x + 1 (unused filler for F_2)
            case 2: mod = {1, 1, 1}; break;          // x^2 + x + 1
            case 3: mod = {1, 1, 0, 1}; break;       // x^3 + x + 1
            case 4: mod = {1, 1, 0, 0, 1}; break;    // x^4 + x + 1
            case 6: mod = {1, 1, 0, 0, 0, 0, 1}; break; // x^6 + x + 1
            case 8: mod = {1, 1, 0, 1, 1, 0, 0, 0, 1}; break; // x^8+x^4+x^3+x+1
            default: break;
        }
    } else if (p == 3) {
        switch (degree) {
            case 1: mod = {1, 1}; break;
            case 2: mod = {1, 0, 1}; break;          // x^2 + 1
            case 4: mod = {2, 1, 0, 0, 1}; break;    // x^4 + x + 2
            case 6: mod = {2, 1, 0, 0, 0, 0, 1}; break; // x^6 + x + 2
            default: break;
        }
    } else if (degree == 1) {
        mod = {1, 1};
    } else if (p == 5 && degree == 2) {
        mod = {2, 0, 1}; // x^2 + 2
    }
    require(!mod.empty(), "make_field: no modulus on file for this (p, degree)");
    if (degree == 1) {
        // Prime field: modulus x - (p-1) (any monic linear works).
        mod = {p - 1, 1};
    }
    return std::make_shared<const FiniteField>(p, degree, mod);
}

/// Embedding F_{p^a} -> F_{p^b} for a | b: the generator of the subfield
/// modulus is sent to its smallest root in the big field.
class FieldEmbedding {
public:
    FieldEmbedding(std::shared_ptr<const FiniteField> sub, std::shared_ptr<const FiniteField> super)
        : sub_(std::move(sub)), super_(std::move(super)) {
        require(sub_->p() == super_->p() && super_->degree() % sub_->degree() == 0,
                "FieldEmbedding: incompatible fields");
        // Smallest root of the subfield modulus in the big field.
        FiniteField::El root = 0;
        bool found = false;
        for (size_t x = 0; x < super_->size() && !found; ++x) {
            FiniteField::El acc = 0, xp = 1;
            for (long i = 0; i <= sub_->degree(); ++i) {
                long m = ((sub_->modulus()[static_cast<size_t>(i)] % sub_->p()) + sub_->p()) % sub_->p();
                FiniteField::El coeff = 0;
                for (long r = 0; r < m; ++r) coeff = super_->add(coeff, 1);
                acc = super_->add(acc, super_->mul(coeff, xp));
                xp = super_->mul(xp, static_cast<FiniteField::El>(x));
            }
            if (acc == 0) {
                root = static_cast<FiniteField::El>(x);
                found = true;
            }
        }
        ensure(found, "FieldEmbedding: no root of subfield modulus");
        map_.resize(sub_->size());
        for (size_t a = 0; a < sub_->size(); ++a) {
            auto d = sub_->digits(static_cast<FiniteField::El>(a));
            FiniteField::El acc = 0, xp = 1;
            for (long coef : d) {
                FiniteField::El c = 0;
                for (long r = 0; r < coef; ++r) c = super_->add(c, 1);
                acc = super_->add(acc, super_->mul(c, xp));
                xp = super_->mul(xp, root);
            }
            map_[a] = acc;
        }
        // Injective ring morphism by construction; spot-check multiplicativity.
        for (size_t a = 0; a < sub_->size(); ++a)
            for (size_t b = 0; b < sub_->size(); b += 3)
                ensure(map_[sub_->mul(static_cast<FiniteField::El>(a), static_cast<FiniteField::El>(b))] ==
                           super_->mul(map_[a], map_[b]),
                       "FieldEmbedding: not multiplicative");
    }

    FiniteField::El operator()(FiniteField::El x) const { return map_[x]; }

private:
    std::shared_ptr<const FiniteField> sub_, super_;
    std::vector<FiniteField::El> map_;
};

/// Dense matrix over a table-driven finite field.
class GFMatrix {
public:
    GFMatrix() = default;
    GFMatrix(std::shared_ptr<const FiniteField> f, size_t rows, size_t cols)
        : field_(std::move(f)), rows_(rows), cols_(cols), e_(rows * cols, 0) {}

    static GFMatrix identity(std::shared_ptr<const FiniteField> f, size_t n) {
        GFMatrix m(std::move(f), n, n);
        for (size_t i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }

    const FiniteField& field() const { return *field_; }
    std::shared_ptr<const FiniteField> field_ptr() const { return field_; }
    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }

    FiniteField::El& at(size_t r, size_t c) { return e_[r * cols_ + c]; }
    FiniteField::El at(size_t r, size_t c) const { return e_[r * cols_ + c]; }
    const std::vector<FiniteField::El>& entries() const { return e_; }

    friend bool operator==(const GFMatrix& a, const GFMatrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.e_ == b.e_;
    }
    friend bool operator<(const GFMatrix& a, const GFMatrix& b) { return a.e_ < b.e_; }

    GFMatrix mul(const GFMatrix& o) const {
        require(cols_ == o.rows_, "GFMatrix: size mismatch");
        GFMatrix r(field_, rows_, o.cols_);
        for (size_t i = 0; i < rows_; ++i)
            for (size_t k = 0; k < cols_; ++k) {
                FiniteField::El a = at(i, k);
                if (!a) continue;
                for (size_t j = 0; j < o.cols_; ++j)
                    r.at(i, j) = field_->add(r.at(i, j), field_->mul(a, o.at(k, j)));
            }
        return r;
    }

    GFMatrix add(const GFMatrix& o) const {
        GFMatrix r(field_, rows_, cols_);
        for (size_t i = 0; i < e_.size(); ++i) r.e_[i] = field_->add(e_[i], o.e_[i]);
        return r;
    }

    GFMatrix transpose() const {
        GFMatrix r(field_, cols_, rows_);
        for (size_t i = 0; i < rows_; ++i)
            for (size_t j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
        return r;
    }

    /// A* = conjugate transpose with entrywise x -> x^p.
    GFMatrix conj_transpose() const {
        GFMatrix r(field_, cols_, rows_);
        for (size_t i = 0; i < rows_; ++i)
            for (size_t j = 0; j < cols_; ++j) r.at(j, i) = field_->frobenius(at(i, j));
        return r;
    }

    GFMatrix conj() const {
        GFMatrix r(field_, rows_, cols_);
        for (size_t i = 0; i < e_.size(); ++i) r.e_[i] = field_->frobenius(e_[i]);
        return r;
    }

    bool is_identity() const {
        for (size_t i = 0; i < rows_; ++i)
            for (size_t j = 0; j < cols_; ++j)
                if (at(i, j) != (i == j ? 1 : 0)) return false;
        return true;
    }

    std::optional<GFMatrix> inverse() const {
        require(rows_ == cols_, "GFMatrix: inverse of non-square");
        GFMatrix m = *this;
        GFMatrix inv = identity(field_, rows_);
        for (size_t col = 0; col < cols_; ++col) {
            size_t piv = col;
            while (piv < rows_ && m.at(piv, col) == 0) ++piv;
            if (piv == rows_) return std::nullopt;
            for (size_t j = 0; j < cols_; ++j) {
                std::swap(m.at(piv, j), m.at(col, j));
                std::swap(inv.at(piv, j), inv.at(col, j));
            }
            FiniteField::El d = field_->inv(m.at(col, col));
            for (size_t j = 0; j < cols_; ++j) {
                m.at(col, j) = field_->mul(m.at(col, j), d);
                inv.at(col, j) = field_->mul(inv.at(col, j), d);
            }
            for (size_t r = 0; r < rows_; ++r) {
                if (r == col || m.at(r, col) == 0) continue;
                FiniteField::El f = m.at(r, col);
                for (size_t j = 0; j < cols_; ++j) {
                    m.at(r, j) = field_->sub(m.at(r, j), field_->mul(f, m.at(col, j)));
                    inv.at(r, j) = field_->sub(inv.at(r, j), field_->mul(f, inv.at(col, j)));
                }
            }
        }
        return inv;
    }

    unsigned long multiplicative_order() const {
        GFMatrix id = identity(field_, rows_);
        GFMatrix x = *this;
        unsigned long n = 1;
        while (!(x == id)) {
            x = x.mul(*this);
            ++n;
            ensure(n < 1u << 24, "GFMatrix: order runaway");
        }
        return n;
    }

private:
    std::shared_ptr<const FiniteField> field_;
    size_t rows_ = 0, cols_ = 0;
    std::vector<FiniteField::El> e_;
};

} // namespace leafmass
