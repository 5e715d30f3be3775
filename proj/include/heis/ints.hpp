#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace heis {

// All exact integer arithmetic in the library runs on checked 128-bit
// integers. Overflow is a hard error, never a silent wraparound.
using int128 = __int128;

class overflow_error : public std::runtime_error {
public:
    explicit overflow_error(const std::string& what) : std::runtime_error(what) {}
};

inline int128 checked_add(int128 a, int128 b) {
    int128 r;
    if (__builtin_add_overflow(a, b, &r)) throw overflow_error("int128 add overflow");
    return r;
}

inline int128 checked_sub(int128 a, int128 b) {
    int128 r;
    if (__builtin_sub_overflow(a, b, &r)) throw overflow_error("int128 sub overflow");
    return r;
}

inline int128 checked_mul(int128 a, int128 b) {
    int128 r;
    if (__builtin_mul_overflow(a, b, &r)) throw overflow_error("int128 mul overflow");
    return r;
}

inline int64_t checked_add64(int64_t a, int64_t b) {
    int64_t r;
    if (__builtin_add_overflow(a, b, &r)) throw overflow_error("int64 add overflow");
    return r;
}

inline int64_t checked_mul64(int64_t a, int64_t b) {
    int64_t r;
    if (__builtin_mul_overflow(a, b, &r)) throw overflow_error("int64 mul overflow");
    return r;
}

inline int128 abs128(int128 a) { return a < 0 ? -a : a; }

inline int sgn128(int128 a) { return a < 0 ? -1 : (a > 0 ? 1 : 0); }

inline int128 gcd128(int128 a, int128 b) {
    a = abs128(a);
    b = abs128(b);
    while (b != 0) {
        int128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

std::string to_string(int128 v);
int128 parse_int128(const std::string& s);

// Exact conversion to double (|v| up to ~1e38 is well inside double range).
inline double to_double(int128 v) { return static_cast<double>(v); }

}  // namespace heis
