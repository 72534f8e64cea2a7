#include "kplab/linalg.hpp"

#include <cmath>
#include <utility>

namespace kplab {

Rational det(QMatrix m) {
    const size_t n = m.size();
    Rational d = 1;
    for (size_t c = 0; c < n; ++c) {
        size_t p = c;
        while (p < n && m[p][c] == 0) ++p;
        if (p == n) return 0;
        if (p != c) {
            std::swap(m[p], m[c]);
            d = -d;
        }
        d *= m[c][c];
        for (size_t r = c + 1; r < n; ++r) {
            if (m[r][c] == 0) continue;
            Rational f = m[r][c] / m[c][c];
            for (size_t j = c; j < n; ++j) m[r][j] -= f * m[c][j];
        }
    }
    return d;
}

double det(DMatrix m) {
    const size_t n = m.size();
    double d = 1;
    for (size_t c = 0; c < n; ++c) {
        size_t p = c;
        for (size_t r = c + 1; r < n; ++r)
            if (std::abs(m[r][c]) > std::abs(m[p][c])) p = r;
        if (m[p][c] == 0) return 0;
        if (p != c) {
            std::swap(m[p], m[c]);
            d = -d;
        }
        d *= m[c][c];
        for (size_t r = c + 1; r < n; ++r) {
            double f = m[r][c] / m[c][c];
            for (size_t j = c; j < n; ++j) m[r][j] -= f * m[c][j];
        }
    }
    return d;
}

int rank(QMatrix m) {
    if (m.empty()) return 0;
    const size_t rows = m.size(), cols = m[0].size();
    size_t r = 0;
    for (size_t c = 0; c < cols && r < rows; ++c) {
        size_t p = r;
        while (p < rows && m[p][c] == 0) ++p;
        if (p == rows) continue;
        std::swap(m[p], m[r]);
        for (size_t i = 0; i < rows; ++i) {
            if (i == r || m[i][c] == 0) continue;
            Rational f = m[i][c] / m[r][c];
            for (size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
        }
        ++r;
    }
    return int(r);
}

int rank(DMatrix m, double tol) {
    if (m.empty()) return 0;
    const size_t rows = m.size(), cols = m[0].size();
    double scale = 0;
    for (auto& row : m)
        for (double v : row) scale = std::max(scale, std::abs(v));
    if (scale == 0) return 0;
    size_t r = 0;
    for (size_t c = 0; c < cols && r < rows; ++c) {
        size_t p = r;
        for (size_t i = r + 1; i < rows; ++i)
            if (std::abs(m[i][c]) > std::abs(m[p][c])) p = i;
        if (std::abs(m[p][c]) <= tol * scale) continue;
        std::swap(m[p], m[r]);
        for (size_t i = 0; i < rows; ++i) {
            if (i == r) continue;
            double f = m[i][c] / m[r][c];
            for (size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
        }
        ++r;
    }
    return int(r);
}

template <class M>
static M pick_columns(const M& a, const std::vector<int>& cols) {
    M out(a.size());
    for (size_t r = 0; r < a.size(); ++r)
        for (int c : cols) out[r].push_back(a[r][c - 1]);
    return out;
}

QMatrix columns(const QMatrix& a, const std::vector<int>& cols) { return pick_columns(a, cols); }
DMatrix columns(const DMatrix& a, const std::vector<int>& cols) { return pick_columns(a, cols); }

std::map<Subset, Rational> pluckers(const QMatrix& a) {
    std::map<Subset, Rational> out;
    const int k = int(a.size()), n = k ? int(a[0].size()) : 0;
    for (Subset s : all_k_subsets(n, k)) out[s] = det(columns(a, elements(s)));
    return out;
}

std::map<Subset, double> pluckers(const DMatrix& a) {
    std::map<Subset, double> out;
    const int k = int(a.size()), n = k ? int(a[0].size()) : 0;
    for (Subset s : all_k_subsets(n, k)) out[s] = det(columns(a, elements(s)));
    return out;
}

DMatrix to_double(const QMatrix& a) {
    DMatrix out(a.size());
    for (size_t r = 0; r < a.size(); ++r)
        for (auto& v : a[r]) out[r].push_back(v.get_d());
    return out;
}

std::vector<double> solve(DMatrix a, std::vector<double> b) {
    const size_t n = a.size();
    for (size_t c = 0; c < n; ++c) {
        size_t p = c;
        for (size_t r = c + 1; r < n; ++r)
            if (std::abs(a[r][c]) > std::abs(a[p][c])) p = r;
        if (std::abs(a[p][c]) < 1e-300) throw Error("SolveFailure", "singular linear system");
        std::swap(a[p], a[c]);
        std::swap(b[p], b[c]);
        for (size_t r = c + 1; r < n; ++r) {
            double f = a[r][c] / a[c][c];
            for (size_t j = c; j < n; ++j) a[r][j] -= f * a[c][j];
            b[r] -= f * b[c];
        }
    }
    std::vector<double> x(n);
    for (size_t i = n; i-- > 0;) {
        double s = b[i];
        for (size_t j = i + 1; j < n; ++j) s -= a[i][j] * x[j];
        x[i] = s / a[i][i];
    }
    return x;
}

DMatrix matrix_from_pluckers(int k, int n, const std::map<Subset, double>& p) {
    // Pivot set: lexicographically first k-subset with a nonzero value.
    Subset pivot = 0;
    for (Subset s : all_k_subsets(n, k)) {
        auto it = p.find(s);
        if (it != p.end() && it->second != 0) {
            pivot = s;
            break;
        }
    }
    if (!pivot) throw Error("SolveFailure", "all Pluecker values vanish");
    const double base = p.at(pivot);
    auto piv = elements(pivot);
    DMatrix a(k, std::vector<double>(n, 0.0));
    for (int r = 0; r < k; ++r) {
        for (int j = 1; j <= n; ++j) {
            if (contains(pivot, j)) {
                a[r][j - 1] = (j == piv[r]) ? 1.0 : 0.0;
                continue;
            }
            Subset s = (pivot & ~bit(piv[r])) | bit(j);
            // Moving column j into slot r and re-sorting costs one sign per
            // pivot strictly between piv[r] and j.
            int between = 0;
            for (int q : piv)
                if ((q > piv[r] && q < j) || (q < piv[r] && q > j)) ++between;
            auto it = p.find(s);
            double v = it == p.end() ? 0.0 : it->second;
            a[r][j - 1] = (between % 2 ? -v : v) / base;
        }
    }
    return a;
}

}  // namespace kplab
