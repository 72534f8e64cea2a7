#include "kplab/positroid.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>

namespace kplab {

// ---------------------------------------------------------------- Derangement

Derangement Derangement::from(std::vector<int> images) {
    Derangement d{int(images.size()), std::move(images)};
    std::vector<bool> seen(d.n + 1, false);
    for (int i = 1; i <= d.n; ++i) {
        int v = d(i);
        if (v < 1 || v > d.n || seen[v])
            throw Error("InvalidPermutation", "not a permutation: " + d.str());
        seen[v] = true;
        if (v == i) throw Error("NotIrreducible", "fixed point at " + std::to_string(i));
    }
    return d;
}

int Derangement::k() const { return int(excedances().size()); }

std::vector<int> Derangement::excedances() const {
    std::vector<int> out;
    for (int i = 1; i <= n; ++i)
        if ((*this)(i) > i) out.push_back(i);
    return out;
}

std::vector<int> Derangement::nonexcedances() const {
    std::vector<int> out;
    for (int i = 1; i <= n; ++i)
        if ((*this)(i) < i) out.push_back(i);
    return out;
}

Derangement Derangement::inverse() const {
    Derangement d{n, std::vector<int>(n)};
    for (int i = 1; i <= n; ++i) d.images[(*this)(i) - 1] = i;
    return d;
}

std::string Derangement::str() const {
    std::string s = "(";
    for (int i = 0; i < n; ++i) s += (i ? "," : "") + std::to_string(images[i]);
    return s + ")";
}

// ---------------------------------------------------------------- LeDiagram

int LeDiagram::col_length(int c) const {
    int len = 0;
    for (int r = 0; r < k; ++r)
        if (rows[r] > c) ++len;
    return len;
}

int LeDiagram::num_plus() const {
    int s = 0;
    for (auto& row : fill)
        for (bool b : row) s += b;
    return s;
}

bool LeDiagram::le_property() const {
    for (int r = 0; r < k; ++r)
        for (int c = 0; c < rows[r]; ++c) {
            if (plus(r, c)) continue;
            bool above = false, left = false;
            for (int q = 0; q < r; ++q) above |= plus(q, c);
            for (int q = 0; q < c; ++q) left |= plus(r, q);
            if (above && left) return false;
        }
    return true;
}

bool LeDiagram::irreducible() const {
    if (k < 1 || n - k < 1) return false;
    for (int r = 0; r < k; ++r) {
        bool any = false;
        for (int c = 0; c < rows[r]; ++c) any |= plus(r, c);
        if (!any) return false;
    }
    for (int c = 0; c < n - k; ++c) {
        bool any = false;
        for (int r = 0; r < col_length(c); ++r) any |= plus(r, c);
        if (!any) return false;
    }
    return true;
}

void LeDiagram::validate() const {
    if (k < 0 || n < k || int(rows.size()) != k || int(fill.size()) != k)
        throw Error("InvalidLe", "row data does not match k");
    for (int r = 0; r < k; ++r) {
        if (rows[r] < 0 || rows[r] > n - k || int(fill[r].size()) != rows[r])
            throw Error("InvalidLe", "row " + std::to_string(r + 1) + " has bad length");
        if (r && rows[r] > rows[r - 1]) throw Error("InvalidLe", "row lengths must weakly decrease");
    }
    if (!le_property()) throw Error("InvalidLe", "filling violates the Le-property");
}

std::vector<int> LeDiagram::row_labels() const {
    std::vector<int> out;
    int x = n - k, label = 0;
    for (int r = 0; r < k; ++r) {
        while (x > rows[r]) ++label, --x;
        out.push_back(++label);
    }
    return out;
}

std::vector<int> LeDiagram::col_labels() const {
    std::vector<int> out(n - k);
    int x = n - k, label = 0;
    for (int r = 0; r <= k; ++r) {
        int target = r < k ? rows[r] : 0;
        while (x > target) out[--x] = ++label;
        if (r < k) ++label;
    }
    return out;
}

std::string LeDiagram::str() const {
    std::string s;
    for (int r = 0; r < k; ++r) {
        for (int c = 0; c < rows[r]; ++c) s += plus(r, c) ? '+' : '0';
        s += r + 1 < k ? "/" : "";
    }
    return s;
}

bool PositroidMatroid::has(Subset s) const {
    return std::binary_search(bases.begin(), bases.end(), s);
}

// ---------------------------------------------------------------- necklaces

static bool rotated_less(Subset a, Subset b, int r, int n) {
    Subset d = a ^ b;
    for (int step = 0; step < n; ++step) {
        int e = (r - 1 + step) % n + 1;
        if (contains(d, e)) return contains(a, e);
    }
    return false;
}

GrassmannNecklace necklace_from_matroid(const PositroidMatroid& m) {
    if (m.bases.empty()) throw Error("EmptyMatroid", "matroid has no bases");
    GrassmannNecklace out{m.k, m.n, {}};
    for (int r = 1; r <= m.n; ++r) {
        Subset best = m.bases.front();
        for (Subset s : m.bases)
            if (rotated_less(s, best, r, m.n)) best = s;
        out.subsets.push_back(best);
    }
    return out;
}

Derangement derangement_from_necklace(const GrassmannNecklace& I) {
    const int n = I.n;
    if (int(I.subsets.size()) != n) throw Error("InvalidNecklace", "need n subsets");
    std::vector<int> images(n, 0);
    for (int i = 1; i <= n; ++i) {
        Subset cur = I.subsets[i - 1], nxt = I.subsets[i % n];
        if (popcount(cur) != I.k) throw Error("InvalidNecklace", "subset of wrong size");
        if (cur == nxt || !contains(cur, i))
            throw Error("NotIrreducible", "necklace is not irreducible at " + std::to_string(i));
        Subset gone = cur & ~nxt, added = nxt & ~cur;
        if (gone != bit(i) || popcount(added) != 1)
            throw Error("InvalidNecklace", "step " + std::to_string(i) + " is not an exchange");
        int j = elements(added)[0];
        if (images[j - 1]) throw Error("InvalidNecklace", "element entered twice");
        images[j - 1] = i;
    }
    return Derangement::from(images);
}

GrassmannNecklace necklace_from_derangement(const Derangement& pi) {
    const int n = pi.n;
    auto inv = pi.inverse();
    GrassmannNecklace out{pi.k(), n, {}};
    Subset cur = subset_from(pi.excedances());
    for (int r = 1; r <= n; ++r) {
        out.subsets.push_back(cur);
        cur = (cur & ~bit(r)) | bit(inv(r));
    }
    return out;
}

// ---------------------------------------------------------------- pipes

PipeEnds trace_pipes(const LeDiagram& L) {
    const int k = L.k, m = L.n - L.k;
    PipeEnds ends{std::vector<int>(k, 0), std::vector<int>(m, 0)};
    auto rl = L.row_labels();
    auto cl = L.col_labels();
    // dir 0: travelling west, dir 1: travelling north.
    auto run = [&](int r, int c, int dir, int origin) {
        while (true) {
            if (dir == 0 && c < 0) {
                ends.row_west[r] = origin;
                return;
            }
            if (dir == 1 && r < 0) {
                ends.col_north[c] = origin;
                return;
            }
            if (L.plus(r, c)) dir = 1 - dir;
            if (dir == 0) --c;
            else --r;
        }
    };
    for (int r = 0; r < k; ++r) run(r, L.rows[r] - 1, 0, rl[r]);
    for (int c = 0; c < m; ++c) run(L.col_length(c) - 1, c, 1, cl[c]);
    return ends;
}

Derangement derangement_from_le(const LeDiagram& L) {
    L.validate();
    if (!L.irreducible()) throw Error("NotIrreducible", "Le-diagram " + L.str() + " is reducible");
    auto ends = trace_pipes(L);
    auto rl = L.row_labels();
    auto cl = L.col_labels();
    std::vector<int> images(L.n);
    for (int r = 0; r < L.k; ++r) images[rl[r] - 1] = ends.row_west[r];
    for (int c = 0; c < L.n - L.k; ++c) images[cl[c] - 1] = ends.col_north[c];
    return Derangement::from(images);
}

// Shape of the Le-diagram whose south-east border has vertical steps exactly
// at the given labels.
static std::vector<int> shape_from_rows(int n, const std::vector<int>& rowset) {
    std::vector<int> rows;
    for (int i : rowset) {
        int len = 0;
        for (int h = i + 1; h <= n; ++h)
            if (!std::binary_search(rowset.begin(), rowset.end(), h)) ++len;
        rows.push_back(len);
    }
    return rows;
}

// Calls visit(L) for every Le filling of the shape.
template <class F>
static void for_each_filling(int k, int n, const std::vector<int>& rows, F&& visit) {
    LeDiagram L{k, n, rows, {}};
    for (int r = 0; r < k; ++r) L.fill.emplace_back(rows[r], false);
    std::vector<std::pair<int, int>> boxes;
    for (int r = 0; r < k; ++r)
        for (int c = 0; c < rows[r]; ++c) boxes.push_back({r, c});
    // Column and row plus counts restricted to already-filled boxes.
    std::vector<int> col_plus(n - k, 0), row_plus(k, 0);
    auto rec = [&](auto&& self, size_t idx) -> bool {
        if (idx == boxes.size()) return visit(L);
        auto [r, c] = boxes[idx];
        L.fill[r][c] = true;
        ++col_plus[c], ++row_plus[r];
        if (self(self, idx + 1)) return true;
        --col_plus[c], --row_plus[r];
        L.fill[r][c] = false;
        bool above = col_plus[c] > 0, left = row_plus[r] > 0;
        if (!(above && left))
            if (self(self, idx + 1)) return true;
        return false;
    };
    rec(rec, 0);
}

LeDiagram le_from_derangement(const Derangement& pi) {
    const int n = pi.n, k = pi.k();
    auto exc = pi.excedances();
    auto rows = shape_from_rows(n, exc);
    int boxes = std::accumulate(rows.begin(), rows.end(), 0);

    // Small shapes are enumerated once and cached; larger ones are searched
    // per query so that memory stays bounded.
    static std::mutex mu;
    static std::map<std::pair<int, Subset>, std::map<std::vector<int>, LeDiagram>> cache;
    const auto key = std::make_pair(n, subset_from(exc));
    if (boxes <= 16) {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(key);
        if (it == cache.end()) {
            std::map<std::vector<int>, LeDiagram> table;
            for_each_filling(k, n, rows, [&](const LeDiagram& L) {
                if (L.irreducible()) table.emplace(derangement_from_le(L).images, L);
                return false;
            });
            it = cache.emplace(key, std::move(table)).first;
        }
        auto hit = it->second.find(pi.images);
        if (hit == it->second.end())
            throw Error("NotFound", "no Le-diagram maps to " + pi.str());
        return hit->second;
    }
    LeDiagram found;
    bool ok = false;
    for_each_filling(k, n, rows, [&](const LeDiagram& L) {
        if (L.irreducible() && derangement_from_le(L) == pi) {
            found = L;
            ok = true;
        }
        return ok;
    });
    if (!ok) throw Error("NotFound", "no Le-diagram maps to " + pi.str());
    return found;
}

// ---------------------------------------------------------------- network

std::vector<std::pair<int, int>> plus_boxes(const LeDiagram& L) {
    std::vector<std::pair<int, int>> out;
    for (int r = 0; r < L.k; ++r)
        for (int c = 0; c < L.rows[r]; ++c)
            if (L.plus(r, c)) out.push_back({r, c});
    return out;
}

template <class T>
static std::vector<std::vector<T>> network_matrix(const LeDiagram& L, const std::vector<T>& weights) {
    const int k = L.k, n = L.n, m = n - k;
    auto boxes = plus_boxes(L);
    if (weights.size() != boxes.size())
        throw Error("InvalidWeights", "need one weight per plus box");
    std::map<std::pair<int, int>, int> index;
    for (size_t i = 0; i < boxes.size(); ++i) index[boxes[i]] = int(i);
    auto rl = L.row_labels();
    auto cl = L.col_labels();

    // g[b][c]: weighted number of paths from box b (already entered) to the
    // sink of column c.
    std::vector<std::vector<T>> g(boxes.size(), std::vector<T>(m, T(0)));
    std::vector<bool> done(boxes.size(), false);
    auto solve_box = [&](auto&& self, int b) -> const std::vector<T>& {
        if (done[b]) return g[b];
        auto [r, c] = boxes[b];
        std::vector<T> acc(m, T(0));
        int below = -1;
        for (int q = r + 1; q < L.col_length(c); ++q)
            if (L.plus(q, c)) {
                below = index[{q, c}];
                break;
            }
        if (below >= 0) {
            const auto& s = self(self, below);
            for (int j = 0; j < m; ++j) acc[j] += s[j];
        } else {
            acc[c] += T(1);
        }
        for (int q = c - 1; q >= 0; --q)
            if (L.plus(r, q)) {
                int w = index[{r, q}];
                const auto& s = self(self, w);
                for (int j = 0; j < m; ++j) acc[j] += weights[w] * s[j];
                break;
            }
        g[b] = std::move(acc);
        done[b] = true;
        return g[b];
    };

    std::vector<std::vector<T>> a(k, std::vector<T>(n, T(0)));
    for (int r = 0; r < k; ++r) {
        a[r][rl[r] - 1] = T(1);
        int first = -1;
        for (int c = L.rows[r] - 1; c >= 0; --c)
            if (L.plus(r, c)) {
                first = index[{r, c}];
                break;
            }
        if (first < 0) continue;
        const auto& s = solve_box(solve_box, first);
        for (int c = 0; c < m; ++c) {
            int j = cl[c];
            int between = 0;
            for (int q : rl)
                if ((q > rl[r] && q < j) || (q < rl[r] && q > j)) ++between;
            T v = weights[first] * s[c];
            a[r][j - 1] = (between % 2) ? T(-v) : v;
        }
    }
    return a;
}

QMatrix le_network_matrix(const LeDiagram& L, const std::vector<Rational>& weights) {
    return network_matrix<Rational>(L, weights);
}

DMatrix le_network_matrix(const LeDiagram& L, const std::vector<double>& weights) {
    return network_matrix<double>(L, weights);
}

QMatrix random_cell_point(const LeDiagram& L, Rng& rng) {
    std::vector<Rational> w;
    for (size_t i = 0; i < plus_boxes(L).size(); ++i) w.push_back(rng.positive_rational());
    return le_network_matrix(L, w);
}

PositroidMatroid matroid_from_le(const LeDiagram& L) {
    L.validate();
    // Positive weights make every maximal minor a sum of positive path-family
    // terms, so exact arithmetic separates zero from nonzero without resampling.
    std::vector<Rational> w;
    Rng rng(0x5eed);
    for (size_t i = 0; i < plus_boxes(L).size(); ++i) w.push_back(rng.positive_rational());
    auto a = le_network_matrix(L, w);
    PositroidMatroid m{L.k, L.n, {}};
    for (auto& [s, v] : pluckers(a)) {
        if (v < 0) throw Error("InternalError", "negative minor in Le network");
        if (v != 0) m.bases.push_back(s);
    }
    std::sort(m.bases.begin(), m.bases.end());
    return m;
}

// ---------------------------------------------------------------- duality

Subset dualize(Subset s, int n) {
    Subset out = 0;
    for (int e : elements(s)) out |= bit(n + 1 - e);
    return out;
}

Derangement dualize(const Derangement& pi) {
    // Conjugate of the inverse by j -> n+1-j.
    const int n = pi.n;
    auto inv = pi.inverse();
    std::vector<int> images(n);
    for (int j = 1; j <= n; ++j) images[j - 1] = n + 1 - inv(n + 1 - j);
    return Derangement::from(images);
}

PositroidMatroid dualize(const PositroidMatroid& m) {
    PositroidMatroid out{m.k, m.n, {}};
    for (Subset s : m.bases) out.bases.push_back(dualize(s, m.n));
    std::sort(out.bases.begin(), out.bases.end());
    return out;
}

LeDiagram dualize(const LeDiagram& L) { return le_from_derangement(dualize(derangement_from_le(L))); }

CellClass classify_cell(const LeDiagram& L) {
    CellClass cc;
    cc.irreducible = L.irreducible();
    bool all_plus = L.num_plus() == std::accumulate(L.rows.begin(), L.rows.end(), 0);
    cc.tp_schubert = cc.irreducible && all_plus;
    bool full = std::all_of(L.rows.begin(), L.rows.end(), [&](int r) { return r == L.n - L.k; });
    cc.top_cell = cc.tp_schubert && full;
    return cc;
}

CellClass classify_cell(const Derangement& pi) {
    CellClass cc;
    cc.irreducible = true;
    auto exc = pi.excedances();
    auto non = pi.nonexcedances();
    const int n = pi.n, k = int(exc.size());
    bool schubert = true;
    for (int r = 0; r < k; ++r) schubert &= pi(exc[r]) == n - k + r + 1;
    for (size_t m = 0; m < non.size(); ++m) schubert &= pi(non[m]) == int(m) + 1;
    cc.tp_schubert = schubert;
    bool first_rows = true;
    for (int r = 0; r < k; ++r) first_rows &= exc[r] == r + 1;
    cc.top_cell = schubert && first_rows;
    return cc;
}

// ---------------------------------------------------------------- listings

std::vector<Derangement> all_derangements(int n) {
    std::vector<int> p(n);
    std::iota(p.begin(), p.end(), 1);
    std::vector<Derangement> out;
    do {
        bool ok = true;
        for (int i = 0; i < n && ok; ++i) ok = p[i] != i + 1;
        if (ok) out.push_back(Derangement{n, p});
    } while (std::next_permutation(p.begin(), p.end()));
    return out;
}

std::vector<LeDiagram> all_irreducible_le(int n) {
    std::vector<LeDiagram> out;
    for (int k = 1; k < n; ++k) {
        std::vector<int> rowset;
        // Every excedance set contains 1 and omits n.
        for (Subset s : all_k_subsets(n, k)) {
            if (!contains(s, 1) || contains(s, n)) continue;
            rowset = elements(s);
            for_each_filling(k, n, shape_from_rows(n, rowset), [&](const LeDiagram& L) {
                if (L.irreducible()) out.push_back(L);
                return false;
            });
        }
    }
    return out;
}

bool lex_greater(Subset a, Subset b) {
    Subset d = a ^ b;
    if (!d) return false;
    int top = 31 - __builtin_clz(d);
    return (a >> top) & 1u;
}

Subset lex_max(const std::vector<Subset>& family) {
    if (family.empty()) throw Error("EmptyMatroid", "empty family");
    Subset best = family.front();
    for (Subset s : family)
        if (lex_greater(s, best)) best = s;
    return best;
}

}  // namespace kplab
