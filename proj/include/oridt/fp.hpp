#pragma once

#include <cstdint>
#include <vector>

namespace oridt {

// Arithmetic in F_p for a small odd prime p.
class PrimeField {
public:
    explicit PrimeField(int p);

    int p() const { return p_; }
    // Smallest quadratic non-residue.
    int nu() const { return nu_; }

    int add(int a, int b) const { return (a + b) % p_; }
    int sub(int a, int b) const { return (a - b + p_) % p_; }
    int mul(int a, int b) const { return (a * b) % p_; }
    int neg(int a) const { return a == 0 ? 0 : p_ - a; }
    int inv(int a) const { return inv_[a]; }
    int reduce(long a) const { return static_cast<int>(((a % p_) + p_) % p_); }
    bool is_square(int a) const { return square_[a]; }

private:
    int p_;
    int nu_ = 0;
    std::vector<int> inv_;
    std::vector<bool> square_;
};

// Dense matrix over F_p, row-major.
struct Mat {
    int rows = 0;
    int cols = 0;
    std::vector<int> a;

    Mat() = default;
    Mat(int r, int c) : rows(r), cols(c), a(static_cast<std::size_t>(r) * c, 0) {}

    int& operator()(int i, int j) { return a[static_cast<std::size_t>(i) * cols + j]; }
    int operator()(int i, int j) const { return a[static_cast<std::size_t>(i) * cols + j]; }
    friend bool operator==(const Mat&, const Mat&) = default;

    static Mat identity(int n);
};

Mat mul(const PrimeField& f, const Mat& x, const Mat& y);
Mat transpose(const Mat& x);
Mat scale(const PrimeField& f, const Mat& x, int c);
// Throws std::domain_error when singular.
Mat inverse(const PrimeField& f, const Mat& x);
int det(const PrimeField& f, const Mat& x);
int rank(const PrimeField& f, const Mat& x);

// Reduced row echelon form; `pivots` receives the pivot columns.
Mat rref(const PrimeField& f, const Mat& x, std::vector<int>* pivots = nullptr);
// Basis of {y : x y = 0}, one basis vector per row.
Mat kernel(const PrimeField& f, const Mat& x);

// Subspace of F_p^n given by the rows of an RREF basis.
struct Subspace {
    int n = 0;
    Mat basis;  // dim x n
    std::vector<int> pivots;

    int dim() const { return basis.rows; }
    // Whether the vector lies in the span.
    bool contains(const PrimeField& f, const std::vector<int>& v) const;
};

Subspace make_subspace(const PrimeField& f, const Mat& rows);

// Every k-dimensional subspace of F_p^n exactly once.
std::vector<Subspace> enumerate_subspaces(const PrimeField& f, int n, int k);
// Number of k-dimensional subspaces, without enumerating.
std::uint64_t count_subspaces(int p, int n, int k);

// All invertible n x n matrices.
std::vector<Mat> general_linear(const PrimeField& f, int n);
// All g with g^T G g = G, found by column backtracking.
std::vector<Mat> isometries(const PrimeField& f, const Mat& gram);

std::vector<int> apply(const PrimeField& f, const Mat& m, const std::vector<int>& v);

}  // namespace oridt
