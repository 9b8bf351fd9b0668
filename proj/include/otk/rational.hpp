#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace otk {

using Int = mpz_class;
using Rat = mpq_class;

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Raised when a decision procedure exhausts its search space without a verdict.
struct Undecided : Error {
    explicit Undecided(const std::string& msg) : Error(msg) {}
};

inline Rat make_rat(const Int& num, const Int& den) {
    if (den == 0) throw Error("rational with zero denominator");
    Rat r(num, den);
    r.canonicalize();
    return r;
}

inline bool is_integer(const Rat& r) { return r.get_den() == 1; }

inline Int floor_rat(const Rat& r) {
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
    return q;
}

inline Int ceil_rat(const Rat& r) {
    Int q;
    mpz_cdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
    return q;
}

inline Int round_rat(const Rat& r) { return floor_rat(r + Rat(1, 2)); }

inline Rat abs_rat(const Rat& r) { return r < 0 ? Rat(-r) : r; }

// Parses "p/q" or "p"; throws on malformed input.
Rat parse_rat(const std::string& text);

std::string to_string(const Rat& r);
std::string to_string(const Int& z);

}  // namespace otk
