#include "prim/zklattice.hpp"

#include <algorithm>
#include <numeric>

namespace prim {

namespace {

void check_rank(int k, const IMat& rows) {
    for (const auto& r : rows) {
        if (static_cast<int>(r.size()) != k) {
            throw std::invalid_argument("vector length does not match ambient rank");
        }
    }
}

// Row Hermite normal form via integer row operations.  Returns the nonzero
// rows: pivots positive, pivot columns strictly increasing, entries above a
// pivot reduced into [0, pivot).
IMat row_hnf(IMat rows, int k) {
    IMat out;
    int row_at = 0;
    for (int col = 0; col < k; ++col) {
        // Euclid on entries of this column at/below row_at.
        for (;;) {
            int piv = -1;
            for (int i = row_at; i < static_cast<int>(rows.size()); ++i) {
                if (rows[i][col] != 0 &&
                    (piv < 0 || abs(rows[i][col]) < abs(rows[piv][col]))) {
                    piv = i;
                }
            }
            if (piv < 0) break;
            std::swap(rows[row_at], rows[piv]);
            bool clean = true;
            for (int i = row_at + 1; i < static_cast<int>(rows.size()); ++i) {
                if (rows[i][col] == 0) continue;
                Int q = rows[i][col] / rows[row_at][col];
                for (int j = 0; j < k; ++j) rows[i][j] -= q * rows[row_at][j];
                if (rows[i][col] != 0) clean = false;
            }
            if (clean) break;
        }
        if (row_at < static_cast<int>(rows.size()) && rows[row_at][col] != 0) {
            if (rows[row_at][col] < 0) {
                for (int j = 0; j < k; ++j) rows[row_at][j] = -rows[row_at][j];
            }
            ++row_at;
        }
    }
    rows.resize(row_at);
    // Reduce entries above each pivot, leftmost pivot first so that later
    // (more rightward) pivots re-reduce anything this step disturbs.
    for (int i = 0; i < row_at; ++i) {
        int col = 0;
        while (rows[i][col] == 0) ++col;
        for (int u = 0; u < i; ++u) {
            Int q = rows[u][col] / rows[i][col];
            if (rows[u][col] - q * rows[i][col] < 0) q -= 1;  // floor division
            if (q == 0) continue;
            for (int j = 0; j < k; ++j) rows[u][j] -= q * rows[i][j];
        }
    }
    return rows;
}

// Integer kernel of the row map x -> x * M (rows of M span the image):
// returns a basis of { x in Z^n : sum_i x_i M_i = 0 }.
IMat integer_kernel(const IMat& M, int k) {
    int n = static_cast<int>(M.size());
    // Augment [M | I] and run the HNF elimination on the M part; rows whose
    // M part vanishes give kernel vectors in the I part.
    IMat rows(n, IVec(k + n, 0));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < k; ++j) rows[i][j] = M[i][j];
        rows[i][k + i] = 1;
    }
    int row_at = 0;
    for (int col = 0; col < k; ++col) {
        for (;;) {
            int piv = -1;
            for (int i = row_at; i < n; ++i) {
                if (rows[i][col] != 0 &&
                    (piv < 0 || abs(rows[i][col]) < abs(rows[piv][col]))) {
                    piv = i;
                }
            }
            if (piv < 0) break;
            std::swap(rows[row_at], rows[piv]);
            bool clean = true;
            for (int i = row_at + 1; i < n; ++i) {
                if (rows[i][col] == 0) continue;
                Int q = rows[i][col] / rows[row_at][col];
                for (int j = 0; j < k + n; ++j) rows[i][j] -= q * rows[row_at][j];
                if (rows[i][col] != 0) clean = false;
            }
            if (clean) break;
        }
        if (row_at < n && rows[row_at][col] != 0) ++row_at;
    }
    IMat kernel;
    for (int i = row_at; i < n; ++i) {
        kernel.emplace_back(rows[i].begin() + k, rows[i].end());
    }
    return kernel;
}

IVec mat_vec_rowcomb(const IMat& rows, const IVec& coeff, int k) {
    IVec v(k, 0);
    for (size_t i = 0; i < rows.size(); ++i) {
        for (int j = 0; j < k; ++j) v[j] += coeff[i] * rows[i][j];
    }
    return v;
}

// Smith normal form of M (r x c) with tracked left transform U (r x r,
// unimodular): U * M * V = D.  Only U and the diagonal are needed here.
void smith_normal_form(IMat M, IMat& U, std::vector<Int>& diag) {
    int r = static_cast<int>(M.size());
    int c = r > 0 ? static_cast<int>(M[0].size()) : 0;
    U.assign(r, IVec(r, 0));
    for (int i = 0; i < r; ++i) U[i][i] = 1;
    diag.clear();
    int t = 0;
    while (t < r && t < c) {
        // Find a nonzero pivot in the lower-right block.
        int pi = -1, pj = -1;
        for (int i = t; i < r; ++i) {
            for (int j = t; j < c; ++j) {
                if (M[i][j] != 0 &&
                    (pi < 0 || abs(M[i][j]) < abs(M[pi][pj]))) {
                    pi = i;
                    pj = j;
                }
            }
        }
        if (pi < 0) break;
        std::swap(M[t], M[pi]);
        std::swap(U[t], U[pi]);
        for (int i = 0; i < r; ++i) {
            if (i != t) std::swap(M[i][t], M[i][pj]);
        }
        std::swap(M[t][t], M[t][pj]);
        bool dirty = false;
        for (int i = t + 1; i < r; ++i) {
            if (M[i][t] == 0) continue;
            Int q = M[i][t] / M[t][t];
            for (int j = 0; j < c; ++j) M[i][j] -= q * M[t][j];
            for (int j = 0; j < r; ++j) U[i][j] -= q * U[t][j];
            if (M[i][t] != 0) dirty = true;
        }
        for (int j = t + 1; j < c; ++j) {
            if (M[t][j] == 0) continue;
            Int q = M[t][j] / M[t][t];
            for (int i = 0; i < r; ++i) M[i][j] -= q * M[i][t];
            if (M[t][j] != 0) dirty = true;
        }
        if (dirty) continue;  // re-pick a smaller pivot
        // Divisibility fix-up: fold any entry the pivot does not divide.
        bool fixed = true;
        for (int i = t + 1; i < r && fixed; ++i) {
            for (int j = t + 1; j < c && fixed; ++j) {
                if (M[i][j] % M[t][t] != 0) {
                    for (int jj = 0; jj < c; ++jj) M[t][jj] += M[i][jj];
                    for (int jj = 0; jj < r; ++jj) U[t][jj] += U[i][jj];
                    fixed = false;
                }
            }
        }
        if (!fixed) continue;
        if (M[t][t] < 0) {
            for (int j = 0; j < c; ++j) M[t][j] = -M[t][j];
            for (int j = 0; j < r; ++j) U[t][j] = -U[t][j];
        }
        diag.push_back(M[t][t]);
        ++t;
    }
}

// Exact inverse of a unimodular integer matrix (small k) via rational
// Gauss-Jordan elimination.
IMat unimodular_inverse(const IMat& A) {
    int n = static_cast<int>(A.size());
    std::vector<std::vector<Rat>> w(n, std::vector<Rat>(2 * n, 0));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) w[i][j] = Rat(A[i][j]);
        w[i][n + i] = 1;
    }
    for (int col = 0; col < n; ++col) {
        int piv = col;
        while (piv < n && w[piv][col] == 0) ++piv;
        if (piv == n) throw std::logic_error("singular matrix in inverse");
        std::swap(w[col], w[piv]);
        Rat d = w[col][col];
        for (int j = 0; j < 2 * n; ++j) w[col][j] /= d;
        for (int i = 0; i < n; ++i) {
            if (i == col || w[i][col] == 0) continue;
            Rat f = w[i][col];
            for (int j = 0; j < 2 * n; ++j) w[i][j] -= f * w[col][j];
        }
    }
    IMat inv(n, IVec(n));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const Rat& x = w[i][n + j];
            if (denominator(x) != 1) throw std::logic_error("non-integer inverse");
            inv[i][j] = numerator(x);
        }
    }
    return inv;
}

}  // namespace

IntLattice canonicalize(int ambient_rank, const IMat& generators) {
    check_rank(ambient_rank, generators);
    IntLattice L;
    L.ambient_rank = ambient_rank;
    L.basis = row_hnf(generators, ambient_rank);
    return L;
}

IntLattice zero_lattice(int ambient_rank) {
    return canonicalize(ambient_rank, {});
}

IntLattice full_lattice(int ambient_rank) {
    IMat id(ambient_rank, IVec(ambient_rank, 0));
    for (int i = 0; i < ambient_rank; ++i) id[i][i] = 1;
    return canonicalize(ambient_rank, id);
}

bool member(const IVec& h, const IntLattice& L) {
    check_rank(L.ambient_rank, {h});
    IVec v = h;
    for (const auto& row : L.basis) {
        int col = 0;
        while (row[col] == 0) ++col;
        if (v[col] % row[col] != 0) return false;
        Int q = v[col] / row[col];
        for (int j = 0; j < L.ambient_rank; ++j) v[j] -= q * row[j];
    }
    return std::all_of(v.begin(), v.end(), [](const Int& x) { return x == 0; });
}

IntLattice meet(const IntLattice& L1, const IntLattice& L2) {
    if (L1.ambient_rank != L2.ambient_rank) {
        throw std::invalid_argument("ambient-rank mismatch in meet");
    }
    int k = L1.ambient_rank;
    // x in L1 /\ L2  <=>  x = a*B1 = b*B2; kernel of (a,b) -> a*B1 - b*B2.
    IMat stacked = L1.basis;
    for (const auto& row : L2.basis) {
        IVec neg(k);
        for (int j = 0; j < k; ++j) neg[j] = -row[j];
        stacked.push_back(neg);
    }
    IMat kernel = integer_kernel(stacked, k);
    IMat gens;
    for (const auto& coeff : kernel) {
        IVec a(coeff.begin(), coeff.begin() + L1.basis.size());
        gens.push_back(mat_vec_rowcomb(L1.basis, a, k));
    }
    return canonicalize(k, gens);
}

IntLattice join(const IntLattice& L1, const IntLattice& L2) {
    if (L1.ambient_rank != L2.ambient_rank) {
        throw std::invalid_argument("ambient-rank mismatch in join");
    }
    IMat gens = L1.basis;
    gens.insert(gens.end(), L2.basis.begin(), L2.basis.end());
    return canonicalize(L1.ambient_rank, gens);
}

int rank(const IntLattice& L) { return static_cast<int>(L.basis.size()); }

IMat positive_minimal_generators(const IntLattice& L) {
    int k = L.ambient_rank;
    if (rank(L) != k) {
        throw std::invalid_argument("positive_minimal_generators needs full rank");
    }
    if (k == 1) {
        // Smallest positive element is |pivot|.
        return {{abs(L.basis[0][0])}};
    }
    // Last-coordinate projection is a*Z.
    Int a = 0;
    for (const auto& row : L.basis) a = gcd(a, row[k - 1]);
    // Sublattice with last coordinate zero, recursed in ambient Z^{k-1}.
    IMat ek(1, IVec(k, 0));
    ek[0][k - 1] = 1;
    IntLattice hyper = meet(L, canonicalize(k, [&] {
        IMat g;
        for (int i = 0; i + 1 < k; ++i) {
            IVec e(k, 0);
            e[i] = 1;
            g.push_back(e);
        }
        return g;
    }()));
    IMat sub_basis;
    for (const auto& row : hyper.basis) {
        sub_basis.emplace_back(row.begin(), row.end() - 1);
    }
    IMat lower = positive_minimal_generators(canonicalize(k - 1, sub_basis));
    IMat out;
    for (auto& m : lower) {
        m.push_back(0);
        out.push_back(m);
    }
    // A lattice element whose last coordinate is the projection gcd a,
    // combined from the basis rows by iterated extended gcd.
    IVec mk;
    {
        IVec acc(k, 0);
        Int g = 0;
        for (const auto& row : L.basis) {
            if (row[k - 1] == 0) continue;
            if (g == 0) {
                acc = row;
                g = row[k - 1];
                continue;
            }
            // extended gcd of g and row[k-1]
            Int old_r = g, r = row[k - 1];
            Int old_s = 1, s = 0, old_t = 0, t = 1;
            while (r != 0) {
                Int q = old_r / r;
                std::swap(old_r -= q * r, r);
                std::swap(old_s -= q * s, s);
                std::swap(old_t -= q * t, t);
            }
            IVec next(k);
            for (int j = 0; j < k; ++j) next[j] = old_s * acc[j] + old_t * row[j];
            acc = next;
            g = old_r;
        }
        if (g < 0) {
            for (auto& x : acc) x = -x;
            g = -g;
        }
        mk = acc;  // last coordinate is a > 0
    }
    // Minimize over the coset mk + span{m^1..m^{k-1}} inside N^k, greedily
    // from coordinate k-2 down to 0 (m^i only touches coordinates <= i).
    for (int i = k - 2; i >= 0; --i) {
        const IVec& m = out[i];
        // smallest c with mk[i] + c*m[i] >= 0, i.e. c = ceil(-mk[i]/m[i])
        Int num = -mk[i];
        Int den = m[i];
        Int c = num / den;
        if (c * den < num) c += 1;
        for (int j = 0; j < k; ++j) mk[j] += c * m[j];
    }
    out.push_back(mk);
    return out;
}

AdaptedChart annihilator_chart(const IntLattice& L) {
    int k = L.ambient_rank;
    int r = rank(L);
    AdaptedChart chart;
    chart.free_rank = k - r;
    // Columns of M are the basis vectors; SNF of M as a k x r matrix with a
    // left transform U gives M = U^{-1} * D * (col ops), so P = U^{-1}.
    IMat M(k, IVec(std::max(r, 1), 0));
    for (int j = 0; j < r; ++j) {
        for (int i = 0; i < k; ++i) M[i][j] = L.basis[j][i];
    }
    if (r == 0) {
        for (int i = 0; i < k; ++i) M[i][0] = 0;
    }
    IMat U;
    std::vector<Int> diag;
    smith_normal_form(M, U, diag);
    chart.divisors = diag;
    chart.P = unimodular_inverse(U);
    chart.P_inv = U;
    return chart;
}

Rat mod1(const Rat& x) {
    Int n = numerator(x), d = denominator(x);
    Int q = n / d;
    if (q * d > n) q -= 1;  // floor
    return x - Rat(q);
}

TorusPoint make_point(std::vector<Rat> angles) {
    TorusPoint z;
    z.angles.reserve(angles.size());
    for (auto& a : angles) z.angles.push_back(mod1(a));
    return z;
}

TorusPoint sub_points(const TorusPoint& a, const TorusPoint& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("dimension mismatch");
    std::vector<Rat> d(a.angles.size());
    for (size_t j = 0; j < d.size(); ++j) d[j] = a.angles[j] - b.angles[j];
    return make_point(std::move(d));
}

bool in_annihilator(const TorusPoint& z, const IntLattice& L) {
    if (z.dim() != L.ambient_rank) {
        throw std::invalid_argument("dimension mismatch in in_annihilator");
    }
    for (const auto& h : L.basis) {
        Rat dot = 0;
        for (int j = 0; j < L.ambient_rank; ++j) dot += Rat(h[j]) * z.angles[j];
        if (denominator(dot) != 1) return false;  // z^h != 1
    }
    return true;
}

bool quotient_equal(const TorusPoint& z1, const TorusPoint& z2,
                    const IntLattice& L) {
    return in_annihilator(sub_points(z1, z2), L);
}

bool converges_along(const SymbolicSequence& seq, const TorusPoint& z) {
    if (seq.tail.empty()) throw std::invalid_argument("empty tail in sequence");
    // The prefix is irrelevant ("eventually"); a constant-tail pair (z*, H)
    // converges iff the images under T^k -> T^k / H^perp agree, and a small
    // rational box around z separates them otherwise.
    for (const auto& [zt, H] : seq.tail) {
        if (!quotient_equal(zt, z, H)) return false;
    }
    return true;
}

}  // namespace prim
