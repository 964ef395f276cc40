#include "oridt/fp.hpp"

#include <functional>
#include <stdexcept>

namespace oridt {

PrimeField::PrimeField(int p) : p_(p), inv_(p, 0), square_(p, false) {
    for (int a = 1; a < p; ++a) {
        square_[(a * a) % p] = true;
        for (int b = 1; b < p; ++b) {
            if ((a * b) % p == 1) {
                inv_[a] = b;
                break;
            }
        }
    }
    square_[0] = true;
    for (int a = 1; a < p; ++a) {
        if (!square_[a]) {
            nu_ = a;
            break;
        }
    }
}

Mat Mat::identity(int n) {
    Mat m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

Mat mul(const PrimeField& f, const Mat& x, const Mat& y) {
    Mat out(x.rows, y.cols);
    for (int i = 0; i < x.rows; ++i) {
        for (int k = 0; k < x.cols; ++k) {
            const int a = x(i, k);
            if (!a) continue;
            for (int j = 0; j < y.cols; ++j) out(i, j) += a * y(k, j);
        }
    }
    for (auto& v : out.a) v %= f.p();
    return out;
}

Mat transpose(const Mat& x) {
    Mat out(x.cols, x.rows);
    for (int i = 0; i < x.rows; ++i) {
        for (int j = 0; j < x.cols; ++j) out(j, i) = x(i, j);
    }
    return out;
}

Mat scale(const PrimeField& f, const Mat& x, int c) {
    Mat out = x;
    const int cc = f.reduce(c);
    for (auto& v : out.a) v = f.mul(v, cc);
    return out;
}

Mat rref(const PrimeField& f, const Mat& x, std::vector<int>* pivots) {
    Mat m = x;
    if (pivots) pivots->clear();
    int row = 0;
    for (int col = 0; col < m.cols && row < m.rows; ++col) {
        int sel = -1;
        for (int r = row; r < m.rows; ++r) {
            if (m(r, col)) {
                sel = r;
                break;
            }
        }
        if (sel < 0) continue;
        if (sel != row) {
            for (int j = 0; j < m.cols; ++j) std::swap(m(sel, j), m(row, j));
        }
        const int iv = f.inv(m(row, col));
        for (int j = 0; j < m.cols; ++j) m(row, j) = f.mul(m(row, j), iv);
        for (int r = 0; r < m.rows; ++r) {
            if (r == row || !m(r, col)) continue;
            const int c = m(r, col);
            for (int j = 0; j < m.cols; ++j) m(r, j) = f.sub(m(r, j), f.mul(c, m(row, j)));
        }
        if (pivots) pivots->push_back(col);
        ++row;
    }
    return m;
}

int rank(const PrimeField& f, const Mat& x) {
    std::vector<int> piv;
    rref(f, x, &piv);
    return static_cast<int>(piv.size());
}

int det(const PrimeField& f, const Mat& x) {
    if (x.rows != x.cols) throw std::domain_error("determinant of a non-square matrix");
    Mat m = x;
    int d = 1;
    const int n = m.rows;
    for (int col = 0; col < n; ++col) {
        int sel = -1;
        for (int r = col; r < n; ++r) {
            if (m(r, col)) {
                sel = r;
                break;
            }
        }
        if (sel < 0) return 0;
        if (sel != col) {
            for (int j = 0; j < n; ++j) std::swap(m(sel, j), m(col, j));
            d = f.neg(d);
        }
        d = f.mul(d, m(col, col));
        const int iv = f.inv(m(col, col));
        for (int r = col + 1; r < n; ++r) {
            if (!m(r, col)) continue;
            const int c = f.mul(m(r, col), iv);
            for (int j = col; j < n; ++j) m(r, j) = f.sub(m(r, j), f.mul(c, m(col, j)));
        }
    }
    return d;
}

Mat inverse(const PrimeField& f, const Mat& x) {
    const int n = x.rows;
    if (n != x.cols) throw std::domain_error("inverse of a non-square matrix");
    if (n == 0) return Mat(0, 0);
    Mat aug(n, 2 * n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) aug(i, j) = x(i, j);
        aug(i, n + i) = 1;
    }
    std::vector<int> piv;
    Mat r = rref(f, aug, &piv);
    if (static_cast<int>(piv.size()) < n || piv[n - 1] != n - 1) throw std::domain_error("singular matrix");
    Mat out(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) out(i, j) = r(i, n + j);
    }
    return out;
}

Mat kernel(const PrimeField& f, const Mat& x) {
    std::vector<int> piv;
    Mat r = rref(f, x, &piv);
    std::vector<bool> is_pivot(x.cols, false);
    for (int c : piv) is_pivot[c] = true;
    std::vector<int> free_cols;
    for (int c = 0; c < x.cols; ++c) {
        if (!is_pivot[c]) free_cols.push_back(c);
    }
    Mat out(static_cast<int>(free_cols.size()), x.cols);
    for (std::size_t k = 0; k < free_cols.size(); ++k) {
        const int fc = free_cols[k];
        out(static_cast<int>(k), fc) = 1;
        for (std::size_t i = 0; i < piv.size(); ++i) {
            out(static_cast<int>(k), piv[i]) = f.neg(r(static_cast<int>(i), fc));
        }
    }
    return out;
}

bool Subspace::contains(const PrimeField& f, const std::vector<int>& v) const {
    std::vector<int> w = v;
    for (int i = 0; i < basis.rows; ++i) {
        const int c = w[pivots[i]];
        if (!c) continue;
        for (int j = 0; j < n; ++j) w[j] = f.sub(w[j], f.mul(c, basis(i, j)));
    }
    for (int x : w) {
        if (x) return false;
    }
    return true;
}

Subspace make_subspace(const PrimeField& f, const Mat& rows) {
    Subspace s;
    s.n = rows.cols;
    std::vector<int> piv;
    Mat r = rref(f, rows, &piv);
    s.basis = Mat(static_cast<int>(piv.size()), rows.cols);
    for (std::size_t i = 0; i < piv.size(); ++i) {
        for (int j = 0; j < rows.cols; ++j) s.basis(static_cast<int>(i), j) = r(static_cast<int>(i), j);
    }
    s.pivots = piv;
    return s;
}

std::vector<Subspace> enumerate_subspaces(const PrimeField& f, int n, int k) {
    std::vector<Subspace> out;
    if (k < 0 || k > n) return out;
    const int p = f.p();
    std::vector<int> piv(k);
    std::function<void(int, int)> choose = [&](int pos, int start) {
        if (pos == k) {
            // free entries: row i, columns j > piv[i] that are not pivots
            std::vector<std::pair<int, int>> slots;
            std::vector<bool> is_pivot(n, false);
            for (int c : piv) is_pivot[c] = true;
            for (int i = 0; i < k; ++i) {
                for (int j = piv[i] + 1; j < n; ++j) {
                    if (!is_pivot[j]) slots.emplace_back(i, j);
                }
            }
            std::uint64_t total = 1;
            for (std::size_t s = 0; s < slots.size(); ++s) total *= p;
            for (std::uint64_t idx = 0; idx < total; ++idx) {
                Subspace sub;
                sub.n = n;
                sub.basis = Mat(k, n);
                sub.pivots = piv;
                for (int i = 0; i < k; ++i) sub.basis(i, piv[i]) = 1;
                std::uint64_t rem = idx;
                for (const auto& [i, j] : slots) {
                    sub.basis(i, j) = static_cast<int>(rem % p);
                    rem /= p;
                }
                out.push_back(std::move(sub));
            }
            return;
        }
        for (int c = start; c <= n - (k - pos); ++c) {
            piv[pos] = c;
            choose(pos + 1, c + 1);
        }
    };
    choose(0, 0);
    return out;
}

std::uint64_t count_subspaces(int p, int n, int k) {
    if (k < 0 || k > n) return 0;
    // Gaussian binomial evaluated at p, exact in integers
    std::uint64_t num = 1;
    std::uint64_t den = 1;
    auto pw = [p](int e) {
        std::uint64_t r = 1;
        for (int i = 0; i < e; ++i) r *= p;
        return r;
    };
    for (int i = 0; i < k; ++i) {
        num *= pw(n - i) - 1;
        den *= pw(i + 1) - 1;
    }
    return num / den;
}

std::vector<Mat> general_linear(const PrimeField& f, int n) {
    std::vector<Mat> out;
    if (n == 0) {
        out.emplace_back(0, 0);
        return out;
    }
    const int p = f.p();
    std::uint64_t total = 1;
    for (int i = 0; i < n * n; ++i) total *= p;
    for (std::uint64_t idx = 0; idx < total; ++idx) {
        Mat m(n, n);
        std::uint64_t rem = idx;
        for (auto& v : m.a) {
            v = static_cast<int>(rem % p);
            rem /= p;
        }
        if (det(f, m)) out.push_back(std::move(m));
    }
    return out;
}

std::vector<Mat> isometries(const PrimeField& f, const Mat& gram) {
    const int n = gram.rows;
    std::vector<Mat> out;
    if (n == 0) {
        out.emplace_back(0, 0);
        return out;
    }
    const int p = f.p();
    std::uint64_t nvec = 1;
    for (int i = 0; i < n; ++i) nvec *= p;
    std::vector<std::vector<int>> vecs(nvec, std::vector<int>(n));
    for (std::uint64_t idx = 0; idx < nvec; ++idx) {
        std::uint64_t rem = idx;
        for (int i = 0; i < n; ++i) {
            vecs[idx][i] = static_cast<int>(rem % p);
            rem /= p;
        }
    }
    auto form = [&](const std::vector<int>& x, const std::vector<int>& y) {
        long s = 0;
        for (int i = 0; i < n; ++i) {
            if (!x[i]) continue;
            for (int j = 0; j < n; ++j) s += x[i] * gram(i, j) * y[j];
        }
        return f.reduce(s);
    };
    std::vector<const std::vector<int>*> cols(n);
    std::function<void(int)> place = [&](int k) {
        if (k == n) {
            Mat g(n, n);
            for (int j = 0; j < n; ++j) {
                for (int i = 0; i < n; ++i) g(i, j) = (*cols[j])[i];
            }
            out.push_back(std::move(g));
            return;
        }
        for (const auto& v : vecs) {
            bool ok = true;
            for (int j = 0; j <= k && ok; ++j) {
                const std::vector<int>& w = j == k ? v : *cols[j];
                if (form(w, v) != gram(j, k) || form(v, w) != gram(k, j)) ok = false;
            }
            if (!ok) continue;
            cols[k] = &v;
            place(k + 1);
        }
    };
    place(0);
    return out;
}

std::vector<int> apply(const PrimeField& f, const Mat& m, const std::vector<int>& v) {
    std::vector<int> out(m.rows, 0);
    for (int i = 0; i < m.rows; ++i) {
        long s = 0;
        for (int j = 0; j < m.cols; ++j) s += m(i, j) * v[j];
        out[i] = f.reduce(s);
    }
    return out;
}

}  // namespace oridt
