#pragma once
// Shared vocabulary for the kplab library: subsets as bitmasks, exact
// rationals and the seeded generator, with the error type and tolerance.

#include <gmpxx.h>

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace kplab {

// A subset of [n] stored as a bitmask; element i (1-based) is bit i-1.
using Subset = std::uint32_t;
using Rational = mpq_class;

inline Subset bit(int i) { return Subset(1) << (i - 1); }
inline bool contains(Subset s, int i) { return (s >> (i - 1)) & 1u; }
int popcount(Subset s);
Subset subset_from(const std::vector<int>& elems);
std::vector<int> elements(Subset s);
// "1257" for n < 10, otherwise comma separated.
std::string subset_string(Subset s, int n);
// Every k-subset of [n] in increasing lexicographic order of sorted elements.
std::vector<Subset> all_k_subsets(int n, int k);

class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& what)
        : std::runtime_error(code + ": " + what), code_(std::move(code)) {}
    const std::string& code() const { return code_; }

private:
    std::string code_;
};

// Tie tolerance; KPLAB_TOL overrides the default of 1e-9.
double tolerance();

// Single seeded generator shared by every randomized routine.
class Rng {
public:
    explicit Rng(std::uint64_t seed = 20240601) : eng_(seed) {}
    int uniform_int(int lo, int hi) {
        return std::uniform_int_distribution<int>(lo, hi)(eng_);
    }
    double uniform(double lo, double hi) {
        return std::uniform_real_distribution<double>(lo, hi)(eng_);
    }
    // Positive rational p/q with 1 <= p,q <= m.
    Rational positive_rational(int m = 9) {
        Rational r(uniform_int(1, m), uniform_int(1, m));
        r.canonicalize();
        return r;
    }
    std::mt19937_64& engine() { return eng_; }

private:
    std::mt19937_64 eng_;
};

Rational parse_rational(const std::string& s);
std::string rational_string(const Rational& q);

}  // namespace kplab
