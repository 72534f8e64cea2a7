#include "kplab/common.hpp"

#include <bit>
#include <cstdlib>

namespace kplab {

int popcount(Subset s) { return std::popcount(s); }

Subset subset_from(const std::vector<int>& elems) {
    Subset s = 0;
    for (int e : elems) s |= bit(e);
    return s;
}

std::vector<int> elements(Subset s) {
    std::vector<int> out;
    for (int i = 1; s; ++i, s >>= 1)
        if (s & 1u) out.push_back(i);
    return out;
}

std::string subset_string(Subset s, int n) {
    std::string out;
    for (int e : elements(s)) {
        if (n >= 10 && !out.empty()) out += ',';
        out += std::to_string(e);
    }
    return out;
}

std::vector<Subset> all_k_subsets(int n, int k) {
    std::vector<Subset> out;
    std::vector<int> cur;
    auto rec = [&](auto&& self, int start) -> void {
        if ((int)cur.size() == k) {
            out.push_back(subset_from(cur));
            return;
        }
        for (int i = start; i <= n; ++i) {
            cur.push_back(i);
            self(self, i + 1);
            cur.pop_back();
        }
    };
    rec(rec, 1);
    return out;
}

double tolerance() {
    static const double tol = [] {
        if (const char* env = std::getenv("KPLAB_TOL")) {
            char* end = nullptr;
            double v = std::strtod(env, &end);
            if (end != env && v > 0) return v;
        }
        return 1e-9;
    }();
    return tol;
}

Rational parse_rational(const std::string& s) {
    std::string t;
    for (char c : s)
        if (c != ' ') t += c;
    auto dot = t.find('.');
    if (dot == std::string::npos && t.find_first_of("eE") == std::string::npos) {
        Rational q(t);
        q.canonicalize();
        return q;
    }
    // Decimal literal such as "1.75" or "-0.5": read it exactly.
    bool neg = !t.empty() && t[0] == '-';
    if (!t.empty() && (t[0] == '-' || t[0] == '+')) t = t.substr(1);
    dot = t.find('.');
    std::string ip = dot == std::string::npos ? t : t.substr(0, dot);
    std::string fp = dot == std::string::npos ? "" : t.substr(dot + 1);
    if (t.find_first_of("eE") != std::string::npos)
        throw Error("ParseError", "exponent notation not supported in rational: " + s);
    mpz_class den = 1;
    for (size_t i = 0; i < fp.size(); ++i) den *= 10;
    mpz_class num((ip.empty() ? "0" : ip) + fp);
    Rational q(num, den);
    q.canonicalize();
    return neg ? Rational(-q) : q;
}

std::string rational_string(const Rational& q) {
    Rational c = q;
    c.canonicalize();
    return c.get_str();
}

}  // namespace kplab
