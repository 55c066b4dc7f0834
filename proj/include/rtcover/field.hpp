#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace rtcover {

/// Arithmetic tables for GF(q), q a prime power <= 16. Prime fields are
/// integers mod p; prime-power fields are polynomials over GF(p) modulo a
/// fixed irreducible, with elements encoded as base-p digit strings. The
/// field laws are spot-checked exhaustively at construction time, so a bad
/// table cannot be handed out.
class FieldTable {
public:
    static bool supported(int order) {
        switch (order) {
            case 2: case 3: case 4: case 5: case 7: case 8: case 9:
            case 11: case 13: case 16:
                return true;
            default:
                return false;
        }
    }

    static const FieldTable& get(int order) {
        if (!supported(order))
            throw std::invalid_argument("FieldTable: unsupported order " +
                                        std::to_string(order));
        static std::map<int, FieldTable> cache;
        auto it = cache.find(order);
        if (it == cache.end()) it = cache.emplace(order, FieldTable(order)).first;
        return it->second;
    }

    int order() const { return q_; }
    int characteristic() const { return p_; }

    int add(int a, int b) const { return add_[idx(a, b)]; }
    int mul(int a, int b) const { return mul_[idx(a, b)]; }
    int neg(int a) const { return neg_[check(a)]; }
    int sub(int a, int b) const { return add(a, neg(b)); }
    int inv(int a) const {
        if (a == 0) throw std::invalid_argument("FieldTable: zero has no inverse");
        return inv_[check(a)];
    }
    /// The integer c in 0..p-1 as a field element (c copies of 1).
    int from_int(long long c) const { return static_cast<int>(((c % p_) + p_) % p_); }
    int primitive_element() const { return primitive_; }

private:
    explicit FieldTable(int order) : q_(order) {
        p_ = smallest_prime_factor(order);
        int e = 0;
        for (int x = order; x > 1; x /= p_) ++e;
        if (e == 1)
            build_prime();
        else
            build_extension(e);
        fill_unary();
        self_check();
        find_primitive();
    }

    static int smallest_prime_factor(int n) {
        for (int d = 2; d * d <= n; ++d)
            if (n % d == 0) return d;
        return n;
    }

    size_t idx(int a, int b) const { return static_cast<size_t>(check(a)) * q_ + check(b); }
    int check(int a) const {
        if (a < 0 || a >= q_) throw std::invalid_argument("FieldTable: element out of range");
        return a;
    }

    void build_prime() {
        add_.resize(static_cast<size_t>(q_) * q_);
        mul_.resize(static_cast<size_t>(q_) * q_);
        for (int a = 0; a < q_; ++a)
            for (int b = 0; b < q_; ++b) {
                add_[static_cast<size_t>(a) * q_ + b] = (a + b) % q_;
                mul_[static_cast<size_t>(a) * q_ + b] = (a * b) % q_;
            }
    }

    void build_extension(int e) {
        // Monic irreducible over GF(p), coefficients c0..ce:
        //   GF(4): x^2+x+1, GF(8): x^3+x+1, GF(16): x^4+x+1, GF(9): x^2+1.
        std::vector<int> irr;
        if (q_ == 4) irr = {1, 1, 1};
        else if (q_ == 8) irr = {1, 1, 0, 1};
        else if (q_ == 16) irr = {1, 1, 0, 0, 1};
        else if (q_ == 9) irr = {1, 0, 1};
        else throw std::invalid_argument("FieldTable: no polynomial for this order");

        auto digits = [&](int x) {
            std::vector<int> d(e);
            for (int i = 0; i < e; ++i) {
                d[i] = x % p_;
                x /= p_;
            }
            return d;
        };
        auto encode = [&](const std::vector<int>& d) {
            int x = 0;
            for (int i = e - 1; i >= 0; --i) x = x * p_ + d[i];
            return x;
        };

        add_.resize(static_cast<size_t>(q_) * q_);
        mul_.resize(static_cast<size_t>(q_) * q_);
        for (int a = 0; a < q_; ++a) {
            auto da = digits(a);
            for (int b = 0; b < q_; ++b) {
                auto db = digits(b);
                std::vector<int> sum(e);
                for (int i = 0; i < e; ++i) sum[i] = (da[i] + db[i]) % p_;
                add_[static_cast<size_t>(a) * q_ + b] = encode(sum);

                std::vector<int> prod(2 * e - 1, 0);
                for (int i = 0; i < e; ++i)
                    for (int j = 0; j < e; ++j)
                        prod[i + j] = (prod[i + j] + da[i] * db[j]) % p_;
                for (int i = 2 * e - 2; i >= e; --i) {
                    int c = prod[i];
                    if (c == 0) continue;
                    prod[i] = 0;
                    for (int j = 0; j < e; ++j)
                        prod[i - e + j] = ((prod[i - e + j] - c * irr[j]) % p_ + p_) % p_;
                }
                prod.resize(e);
                mul_[static_cast<size_t>(a) * q_ + b] = encode(prod);
            }
        }
    }

    void fill_unary() {
        neg_.resize(q_);
        inv_.assign(q_, 0);
        for (int a = 0; a < q_; ++a)
            for (int b = 0; b < q_; ++b) {
                if (add(a, b) == 0) neg_[a] = b;
                if (a != 0 && mul(a, b) == 1) inv_[a] = b;
            }
    }

    void self_check() const {
        for (int a = 0; a < q_; ++a) {
            if (add(a, 0) != a || mul(a, 1) != a || mul(a, 0) != 0)
                throw std::logic_error("FieldTable: identity law failed");
            if (a != 0 && mul(a, inv_[a]) != 1)
                throw std::logic_error("FieldTable: inverse law failed");
            for (int b = 0; b < q_; ++b) {
                if (add(a, b) != add(b, a) || mul(a, b) != mul(b, a))
                    throw std::logic_error("FieldTable: commutativity failed");
                for (int c = 0; c < q_; ++c) {
                    if (add(add(a, b), c) != add(a, add(b, c)))
                        throw std::logic_error("FieldTable: additive associativity failed");
                    if (mul(mul(a, b), c) != mul(a, mul(b, c)))
                        throw std::logic_error("FieldTable: multiplicative associativity failed");
                    if (mul(a, add(b, c)) != add(mul(a, b), mul(a, c)))
                        throw std::logic_error("FieldTable: distributivity failed");
                }
            }
        }
    }

    void find_primitive() {
        for (int g = 1; g < q_; ++g) {
            int x = g, steps = 1;
            while (x != 1) {
                x = mul(x, g);
                ++steps;
            }
            if (steps == q_ - 1) {
                primitive_ = g;
                return;
            }
        }
        throw std::logic_error("FieldTable: no primitive element found");
    }

    int q_ = 2;
    int p_ = 2;
    int primitive_ = 1;
    std::vector<int> add_, mul_, neg_, inv_;
};

} // namespace rtcover
