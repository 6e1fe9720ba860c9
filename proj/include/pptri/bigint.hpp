#pragma once

#include <gmpxx.h>

#include <cstdint>

namespace pptri {

using Big = mpz_class;

inline Big big_pow(std::uint64_t base, unsigned exp) {
    Big r;
    mpz_ui_pow_ui(r.get_mpz_t(), base, exp);
    return r;
}

inline bool fits_u64(const Big& x) {
    return sgn(x) >= 0 && mpz_sizeinbase(x.get_mpz_t(), 2) <= 64;
}

inline std::uint64_t to_u64(const Big& x) { return mpz_get_ui(x.get_mpz_t()); }

inline std::size_t bit_length(const Big& x) { return mpz_sizeinbase(x.get_mpz_t(), 2); }

inline bool test_bit(const Big& x, std::size_t i) { return mpz_tstbit(x.get_mpz_t(), i) != 0; }

}  // namespace pptri
