#ifndef L2RANK_EXACTLA_HPP
#define L2RANK_EXACTLA_HPP

#include "l2rank/rational.hpp"

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace l2rank {

/// Sparse rational matrix; entries kept sorted row-major without zeros or repeats.
class QMatrix {
public:
    struct Entry {
        std::size_t row, col;
        Rational value;
        bool operator==(const Entry&) const = default;
    };

    QMatrix() = default;
    QMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols) {}
    /// Repeated positions are summed.
    QMatrix(std::size_t rows, std::size_t cols, std::vector<Entry> entries);

    static QMatrix identity(std::size_t n);
    static QMatrix from_dense(const std::vector<std::vector<Rational>>& rows);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    const std::vector<Entry>& entries() const { return entries_; }
    std::size_t nnz() const { return entries_.size(); }
    Rational at(std::size_t r, std::size_t c) const;
    std::vector<std::vector<Rational>> dense() const;

    QMatrix transpose() const;
    friend QMatrix operator*(const QMatrix& a, const QMatrix& b);
    friend QMatrix operator+(const QMatrix& a, const QMatrix& b);
    std::vector<Rational> apply(const std::vector<Rational>& v) const;
    bool operator==(const QMatrix&) const = default;

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<Entry> entries_;
};

QMatrix block_diag(const QMatrix& a, const QMatrix& b);
/// Rows and columns picked (and reordered) by index lists.
QMatrix submatrix(const QMatrix& m, const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols);

/// Elimination working memory went past the configured cap.
class MemoryCapExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Cap on elimination working memory in bytes (0 = none). Process-wide.
void set_elimination_memory_cap(std::size_t bytes);
std::size_t elimination_memory_cap();

std::size_t rank(const QMatrix& m);
std::size_t kernel_dim(const QMatrix& m);

struct Block {
    std::vector<std::size_t> cols, rows;
    QMatrix matrix;  ///< restriction to rows × cols, local indices
};

/// Bipartite connectivity between rows and columns.
struct ComponentSplit {
    std::vector<Block> blocks;
    std::size_t isolated_cols = 0;
};

ComponentSplit components(const QMatrix& m);

/// Connected components of the directed graph of a square matrix (vertex i is
/// both row i and column i); each block is square with rows == cols.
std::vector<Block> graph_components(const QMatrix& m);

/// Basis of the right kernel.
std::vector<std::vector<Rational>> flow_kernel(const QMatrix& m);

/// Coordinate format with rational values, 1-based indices.
std::string write_matrix_market(const QMatrix& m);
QMatrix read_matrix_market(const std::string& text);

}  // namespace l2rank

#endif
