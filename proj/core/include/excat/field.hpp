#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace excat {

/// Element of GF(p), stored reduced in [0, p).
using Fe = std::uint32_t;

/// A prime field GF(p). Arithmetic is exact modular arithmetic.
class PrimeField {
public:
    explicit PrimeField(std::uint32_t p) : p_(p) {
        if (!is_prime(p))
            throw std::invalid_argument("PrimeField: " + std::to_string(p) + " is not prime");
    }

    std::uint32_t p() const { return p_; }

    Fe add(Fe a, Fe b) const { Fe s = a + b; return s >= p_ ? s - p_ : s; }
    Fe sub(Fe a, Fe b) const { return a >= b ? a - b : a + p_ - b; }
    Fe neg(Fe a) const { return a == 0 ? 0 : p_ - a; }
    Fe mul(Fe a, Fe b) const { return Fe((std::uint64_t(a) * b) % p_); }
    Fe reduce(std::uint64_t x) const { return Fe(x % p_); }

    Fe inv(Fe a) const {
        if (a == 0) throw std::domain_error("PrimeField::inv of zero");
        // extended Euclid
        std::int64_t t = 0, nt = 1, r = p_, nr = a;
        while (nr != 0) {
            std::int64_t q = r / nr;
            std::int64_t tmp = t - q * nt; t = nt; nt = tmp;
            tmp = r - q * nr; r = nr; nr = tmp;
        }
        if (t < 0) t += p_;
        return Fe(t);
    }

    bool operator==(const PrimeField& o) const { return p_ == o.p_; }

    static bool is_prime(std::uint32_t n) {
        if (n < 2) return false;
        for (std::uint32_t d = 2; std::uint64_t(d) * d <= n; ++d)
            if (n % d == 0) return false;
        return true;
    }

private:
    std::uint32_t p_;
};

} // namespace excat
