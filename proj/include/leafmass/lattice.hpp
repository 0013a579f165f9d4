#pragma once

#include <memory>
#include <vector>

#include "leafmass/quaternion.hpp"

namespace leafmass {

/// A free rank-n left O-lattice (O^n with the implicit standard basis)
/// carrying a positive-definite quaternion Hermitian Gram matrix.
/// Vectors are flat Z-coordinate rows of length 4n: slot a occupies indices
/// [4a, 4a+4) and holds order-basis coordinates.
class HermitianLattice {
public:
    HermitianLattice(std::shared_ptr<const QuaternionOrder> order, long rank,
                     std::vector<std::vector<Quat>> gram)
        : order_(std::move(order)), rank_(rank), gram_(std::move(gram)) {
        require(order_ != nullptr, "HermitianLattice: missing order");
        require(rank_ >= 1, "HermitianLattice: rank must be >= 1");
        require(gram_.size() == static_cast<size_t>(rank_), "HermitianLattice: bad Gram size");
        for (const auto& row : gram_)
            require(row.size() == static_cast<size_t>(rank_), "HermitianLattice: bad Gram row");
        for (long i = 0; i < rank_; ++i) {
            require(gram_at(i, i).is_scalar(), "HermitianLattice: diagonal must be scalar");
            for (long j = 0; j < rank_; ++j)
                require(gram_at(j, i) == gram_at(i, j).conj(), "HermitianLattice: Gram not Hermitian");
        }
        trace_gram_ = compute_trace_gram();
        require(is_positive_definite(trace_gram_), "HermitianLattice: form is not positive definite");
    }

    /// Identity-form lattice (O^n, s * I_n).
    static HermitianLattice standard(std::shared_ptr<const QuaternionOrder> order, long rank,
                                     const Rational& scale = Rational(1)) {
        std::vector<std::vector<Quat>> g(static_cast<size_t>(rank),
                                         std::vector<Quat>(static_cast<size_t>(rank), Quat::zero()));
        for (long i = 0; i < rank; ++i) g[static_cast<size_t>(i)][static_cast<size_t>(i)] = Quat::scalar(scale);
        return HermitianLattice(std::move(order), rank, std::move(g));
    }

    const QuaternionOrder& order() const { return *order_; }
    std::shared_ptr<const QuaternionOrder> order_ptr() const { return order_; }
    long rank() const { return rank_; }
    const Quat& gram_at(long i, long j) const {
        return gram_[static_cast<size_t>(i)][static_cast<size_t>(j)];
    }
    const std::vector<std::vector<Quat>>& gram() const { return gram_; }
    size_t zdim() const { return static_cast<size_t>(4 * rank_); }

    /// Slot a of a flat vector as an algebra element.
    Quat slot(const IntVec& x, long a) const {
        OrderElement e{x[static_cast<size_t>(4 * a)], x[static_cast<size_t>(4 * a + 1)],
                       x[static_cast<size_t>(4 * a + 2)], x[static_cast<size_t>(4 * a + 3)]};
        return order_->to_quat(e);
    }

    /// f(x, y) = sum_a,c x_a G[a][c] conj(y_c).
    Quat form(const IntVec& x, const IntVec& y) const {
        Quat acc = Quat::zero();
        for (long a = 0; a < rank_; ++a) {
            Quat xa = slot(x, a);
            if (xa.is_zero()) continue;
            for (long c = 0; c < rank_; ++c) {
                if (gram_at(a, c).is_zero()) continue;
                Quat yc = slot(y, c);
                if (yc.is_zero()) continue;
                acc = acc + order_->alg.mul(order_->alg.mul(xa, gram_at(a, c)), yc.conj());
            }
        }
        return acc;
    }

    /// Left scalar action: omega * x, slotwise.
    IntVec scalar_mul(const OrderElement& w, const IntVec& x) const {
        IntVec out(zdim(), Integer(0));
        for (long a = 0; a < rank_; ++a) {
            OrderElement xa{x[static_cast<size_t>(4 * a)], x[static_cast<size_t>(4 * a + 1)],
                            x[static_cast<size_t>(4 * a + 2)], x[static_cast<size_t>(4 * a + 3)]};
            OrderElement prod = order_->mul(w, xa);
            for (size_t b = 0; b < 4; ++b) out[static_cast<size_t>(4 * a) + b] = prod[b];
        }
        return out;
    }

    const RatMat& trace_gram_rat() const { return trace_gram_; }

    /// Trd(f(., .)) on the Z-basis {omega_b e_a}; integral for the integral
    /// lattices in scope, symmetric positive definite always.
    IntMat trace_form() const {
        IntMat out(zdim(), IntVec(zdim(), Integer(0)));
        for (size_t r = 0; r < zdim(); ++r)
            for (size_t c = 0; c < zdim(); ++c) {
                require(trace_gram_[r][c].is_integer(), "trace_form: non-integral entry");
                out[r][c] = trace_gram_[r][c].num();
            }
        return out;
    }

    /// Nonzero x with Trd(f(x,x)) <= bound, one per sign class, lex-sorted.
    std::vector<IntVec> short_vectors(const Rational& bound) const {
        require(bound >= Rational(1), "short_vectors: bound must be >= 1");
        return enumerate_short_vectors(trace_gram_, bound);
    }

    friend bool operator==(const HermitianLattice& a, const HermitianLattice& b) {
        return a.rank_ == b.rank_ && a.order_->p == b.order_->p && a.gram_ == b.gram_;
    }

private:
    RatMat compute_trace_gram() const {
        size_t n = zdim();
        RatMat t(n, RatVec(n, Rational(0)));
        for (long a = 0; a < rank_; ++a)
            for (long c = 0; c < rank_; ++c) {
                const Quat& g = gram_at(a, c);
                if (g.is_zero()) continue;
                for (size_t b = 0; b < 4; ++b)
                    for (size_t d = 0; d < 4; ++d) {
                        Quat val = order_->alg.mul(order_->alg.mul(order_->basis[b], g),
                                                   order_->basis[d].conj());
                        t[static_cast<size_t>(4 * a) + b][static_cast<size_t>(4 * c) + d] = val.trd();
                    }
            }
        return t;
    }

    std::shared_ptr<const QuaternionOrder> order_;
    long rank_;
    std::vector<std::vector<Quat>> gram_;
    RatMat trace_gram_;
};

/// Block-diagonal orthogonal sum of two lattices over the same order.
inline HermitianLattice orthogonal_sum(const HermitianLattice& a, const HermitianLattice& b) {
    require(a.order().p == b.order().p, "orthogonal_sum: mismatched orders");
    long n = a.rank() + b.rank();
    std::vector<std::vector<Quat>> g(static_cast<size_t>(n),
                                     std::vector<Quat>(static_cast<size_t>(n), Quat::zero()));
    for (long i = 0; i < a.rank(); ++i)
        for (long j = 0; j < a.rank(); ++j) g[static_cast<size_t>(i)][static_cast<size_t>(j)] = a.gram_at(i, j);
    for (long i = 0; i < b.rank(); ++i)
        for (long j = 0; j < b.rank(); ++j)
            g[static_cast<size_t>(a.rank() + i)][static_cast<size_t>(a.rank() + j)] = b.gram_at(i, j);
    return HermitianLattice(a.order_ptr(), n, std::move(g));
}

} // namespace leafmass
