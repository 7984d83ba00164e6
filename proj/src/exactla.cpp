#include "l2rank/exactla.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cstdint>
#include <numeric>
#include <sstream>

namespace l2rank {

QMatrix::QMatrix(std::size_t rows, std::size_t cols, std::vector<Entry> entries)
    : rows_(rows), cols_(cols) {
    for (auto& e : entries) {
        if (e.row >= rows || e.col >= cols) throw DomainError("matrix entry out of range");
        e.value.canonicalize();
    }
    std::sort(entries.begin(), entries.end(),
              [](const Entry& a, const Entry& b) { return a.row != b.row ? a.row < b.row : a.col < b.col; });
    for (auto& e : entries) {
        if (!entries_.empty() && entries_.back().row == e.row && entries_.back().col == e.col)
            entries_.back().value += e.value;
        else
            entries_.push_back(std::move(e));
    }
    std::erase_if(entries_, [](const Entry& e) { return e.value == 0; });
}

QMatrix QMatrix::identity(std::size_t n) {
    std::vector<Entry> es;
    for (std::size_t i = 0; i < n; ++i) es.push_back({i, i, 1});
    return QMatrix(n, n, std::move(es));
}

QMatrix QMatrix::from_dense(const std::vector<std::vector<Rational>>& rows) {
    std::size_t nc = rows.empty() ? 0 : rows.front().size();
    std::vector<Entry> es;
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != nc) throw DomainError("ragged dense matrix");
        for (std::size_t c = 0; c < nc; ++c)
            if (rows[r][c] != 0) es.push_back({r, c, rows[r][c]});
    }
    return QMatrix(rows.size(), nc, std::move(es));
}

Rational QMatrix::at(std::size_t r, std::size_t c) const {
    auto it = std::lower_bound(entries_.begin(), entries_.end(), std::pair{r, c}, [](const Entry& e, const auto& key) {
        return e.row != key.first ? e.row < key.first : e.col < key.second;
    });
    if (it != entries_.end() && it->row == r && it->col == c) return it->value;
    return 0;
}

std::vector<std::vector<Rational>> QMatrix::dense() const {
    std::vector<std::vector<Rational>> d(rows_, std::vector<Rational>(cols_));
    for (const auto& e : entries_) d[e.row][e.col] = e.value;
    return d;
}

QMatrix QMatrix::transpose() const {
    std::vector<Entry> es;
    es.reserve(entries_.size());
    for (const auto& e : entries_) es.push_back({e.col, e.row, e.value});
    return QMatrix(cols_, rows_, std::move(es));
}

QMatrix operator*(const QMatrix& a, const QMatrix& b) {
    if (a.cols_ != b.rows_) throw DomainError("matrix product shape mismatch");
    std::vector<std::vector<std::size_t>> b_rows(b.rows_);
    for (std::size_t i = 0; i < b.entries_.size(); ++i) b_rows[b.entries_[i].row].push_back(i);
    std::vector<QMatrix::Entry> es;
    for (const auto& ea : a.entries_)
        for (auto i : b_rows[ea.col]) es.push_back({ea.row, b.entries_[i].col, ea.value * b.entries_[i].value});
    return QMatrix(a.rows_, b.cols_, std::move(es));
}

QMatrix operator+(const QMatrix& a, const QMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw DomainError("matrix sum shape mismatch");
    auto es = a.entries_;
    es.insert(es.end(), b.entries_.begin(), b.entries_.end());
    return QMatrix(a.rows_, a.cols_, std::move(es));
}

std::vector<Rational> QMatrix::apply(const std::vector<Rational>& v) const {
    if (v.size() != cols_) throw DomainError("vector length mismatch");
    std::vector<Rational> out(rows_);
    for (const auto& e : entries_) out[e.row] += e.value * v[e.col];
    return out;
}

QMatrix block_diag(const QMatrix& a, const QMatrix& b) {
    auto es = a.entries();
    for (const auto& e : b.entries()) es.push_back({e.row + a.rows(), e.col + a.cols(), e.value});
    return QMatrix(a.rows() + b.rows(), a.cols() + b.cols(), std::move(es));
}

QMatrix submatrix(const QMatrix& m, const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols) {
    constexpr auto none = static_cast<std::size_t>(-1);
    std::vector<std::size_t> rmap(m.rows(), none), cmap(m.cols(), none);
    for (std::size_t i = 0; i < rows.size(); ++i) rmap.at(rows[i]) = i;
    for (std::size_t i = 0; i < cols.size(); ++i) cmap.at(cols[i]) = i;
    std::vector<QMatrix::Entry> es;
    for (const auto& e : m.entries())
        if (rmap[e.row] != none && cmap[e.col] != none) es.push_back({rmap[e.row], cmap[e.col], e.value});
    return QMatrix(rows.size(), cols.size(), std::move(es));
}

// ------------------------------------------------------------ elimination

namespace {

std::atomic<std::size_t> g_memory_cap{0};

struct Overflow {};

template <class Int>
using SparseRow = std::vector<std::pair<std::uint32_t, Int>>;

std::size_t bits_of(std::int64_t v) {
    auto u = static_cast<std::uint64_t>(v < 0 ? -v : v);
    return static_cast<std::size_t>(std::bit_width(u));
}
std::size_t bits_of(const Integer& v) { return bit_length(v); }

std::int64_t checked_combine(std::int64_t p, std::int64_t x, std::int64_t a, std::int64_t y) {
    __int128 r = static_cast<__int128>(p) * x - static_cast<__int128>(a) * y;
    if (r > INT64_MAX || r < -INT64_MAX) throw Overflow{};
    return static_cast<std::int64_t>(r);
}
Integer checked_combine(const Integer& p, const Integer& x, const Integer& a, const Integer& y) {
    return p * x - a * y;
}

std::int64_t gcd_of(std::int64_t a, std::int64_t b) { return std::gcd(a, b); }
Integer gcd_of(const Integer& a, const Integer& b) {
    Integer g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

std::size_t entry_bytes(std::int64_t) { return sizeof(std::pair<std::uint32_t, std::int64_t>); }
std::size_t entry_bytes(const Integer& v) {
    return sizeof(std::pair<std::uint32_t, Integer>) + mpz_size(v.get_mpz_t()) * sizeof(mp_limb_t);
}

template <class Int>
void strip_content(SparseRow<Int>& row) {
    Int g = 0;
    for (const auto& [c, v] : row) {
        g = gcd_of(g, v);
        if (g == 1) return;
    }
    if (g > 1)
        for (auto& [c, v] : row) v /= g;
}

/// Column-ordered fraction-free elimination. Pivot: smallest bit length, then lowest row.
template <class Int>
std::size_t sparse_rank(std::vector<SparseRow<Int>> rows, std::size_t ncols) {
    const std::size_t cap = g_memory_cap.load();
    std::size_t used = 0;
    auto account = [&](const SparseRow<Int>& r, bool add) {
        if (cap == 0) return;
        std::size_t b = 0;
        for (const auto& [c, v] : r) b += entry_bytes(v);
        if (add) {
            used += b;
            if (used > cap) throw MemoryCapExceeded("elimination working memory exceeds cap");
        } else {
            used -= std::min(used, b);
        }
    };

    std::vector<std::vector<std::uint32_t>> col_rows(ncols);
    for (std::uint32_t r = 0; r < rows.size(); ++r) {
        account(rows[r], true);
        for (const auto& [c, v] : rows[r]) col_rows[c].push_back(r);
    }
    std::vector<char> alive(rows.size(), 1);
    std::vector<std::size_t> stamp(rows.size(), static_cast<std::size_t>(-1));
    std::size_t rank = 0;
    std::vector<std::uint32_t> cand;
    SparseRow<Int> merged;

    for (std::uint32_t c = 0; c < ncols; ++c) {
        cand.clear();
        for (auto r : col_rows[c]) {
            if (!alive[r] || stamp[r] == c) continue;
            stamp[r] = c;
            if (!rows[r].empty() && rows[r].front().first == c) cand.push_back(r);
        }
        col_rows[c].clear();
        col_rows[c].shrink_to_fit();
        if (cand.empty()) continue;
        std::sort(cand.begin(), cand.end());
        std::uint32_t piv = cand.front();
        std::size_t best = bits_of(rows[piv].front().second);
        for (auto r : cand) {
            std::size_t b = bits_of(rows[r].front().second);
            if (b < best) {
                best = b;
                piv = r;
            }
        }
        alive[piv] = 0;
        ++rank;
        const auto& prow = rows[piv];
        const Int p = prow.front().second;
        for (auto r : cand) {
            if (r == piv) continue;
            auto& row = rows[r];
            const Int a = row.front().second;
            Int g = gcd_of(p, a);
            Int pp = p / g, aa = a / g;
            merged.clear();
            std::size_t i = 1, j = 1;
            while (i < row.size() || j < prow.size()) {
                if (j == prow.size() || (i < row.size() && row[i].first < prow[j].first)) {
                    merged.emplace_back(row[i].first, checked_combine(pp, row[i].second, aa, Int(0)));
                    ++i;
                } else if (i == row.size() || prow[j].first < row[i].first) {
                    merged.emplace_back(prow[j].first, checked_combine(pp, Int(0), aa, prow[j].second));
                    col_rows[prow[j].first].push_back(r);
                    ++j;
                } else {
                    Int v = checked_combine(pp, row[i].second, aa, prow[j].second);
                    if (v != 0) merged.emplace_back(row[i].first, std::move(v));
                    ++i;
                    ++j;
                }
            }
            strip_content(merged);
            account(row, false);
            row.swap(merged);
            account(row, true);
        }
        account(rows[piv], false);
        rows[piv].clear();
    }
    return rank;
}

template <class Int>
std::vector<SparseRow<Int>> integer_rows(const QMatrix& m);

template <>
std::vector<SparseRow<Integer>> integer_rows<Integer>(const QMatrix& m) {
    std::vector<SparseRow<Integer>> rows(m.rows());
    std::vector<Integer> lcm(m.rows(), 1);
    for (const auto& e : m.entries()) mpz_lcm(lcm[e.row].get_mpz_t(), lcm[e.row].get_mpz_t(), e.value.get_den_mpz_t());
    for (const auto& e : m.entries())
        rows[e.row].emplace_back(static_cast<std::uint32_t>(e.col), e.value.get_num() * (lcm[e.row] / e.value.get_den()));
    for (auto& r : rows) strip_content(r);
    return rows;
}

template <>
std::vector<SparseRow<std::int64_t>> integer_rows<std::int64_t>(const QMatrix& m) {
    auto big = integer_rows<Integer>(m);
    std::vector<SparseRow<std::int64_t>> rows(big.size());
    for (std::size_t r = 0; r < big.size(); ++r)
        for (const auto& [c, v] : big[r]) {
            if (!v.fits_slong_p()) throw Overflow{};
            rows[r].emplace_back(c, v.get_si());
        }
    return rows;
}

}  // namespace

void set_elimination_memory_cap(std::size_t bytes) { g_memory_cap.store(bytes); }
std::size_t elimination_memory_cap() { return g_memory_cap.load(); }

std::size_t rank(const QMatrix& m) {
    if (m.nnz() == 0) return 0;
    try {
        return sparse_rank(integer_rows<std::int64_t>(m), m.cols());
    } catch (const Overflow&) {
        return sparse_rank(integer_rows<Integer>(m), m.cols());
    }
}

std::size_t kernel_dim(const QMatrix& m) { return m.cols() - rank(m); }

// ------------------------------------------------------------- components

namespace {

struct DisjointSets {
    std::vector<std::size_t> parent;
    explicit DisjointSets(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    std::size_t find(std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
};

}  // namespace

ComponentSplit components(const QMatrix& m) {
    const std::size_t R = m.rows(), C = m.cols();
    DisjointSets ds(R + C);
    std::vector<char> row_used(R, 0), col_used(C, 0);
    for (const auto& e : m.entries()) {
        ds.unite(e.row, R + e.col);
        row_used[e.row] = col_used[e.col] = 1;
    }
    ComponentSplit out;
    std::vector<std::size_t> block_of(R + C, static_cast<std::size_t>(-1));
    auto block_for = [&](std::size_t node) -> Block& {
        std::size_t root = ds.find(node);
        if (block_of[root] == static_cast<std::size_t>(-1)) {
            block_of[root] = out.blocks.size();
            out.blocks.emplace_back();
        }
        return out.blocks[block_of[root]];
    };
    // blocks ordered by smallest column
    for (std::size_t c = 0; c < C; ++c) {
        if (!col_used[c]) {
            ++out.isolated_cols;
            continue;
        }
        block_for(R + c).cols.push_back(c);
    }
    for (std::size_t r = 0; r < R; ++r)
        if (row_used[r]) block_for(r).rows.push_back(r);
    for (auto& b : out.blocks) b.matrix = submatrix(m, b.rows, b.cols);
    return out;
}

std::vector<Block> graph_components(const QMatrix& m) {
    if (m.rows() != m.cols()) throw DomainError("graph components need a square matrix");
    const std::size_t n = m.rows();
    DisjointSets ds(n);
    for (const auto& e : m.entries()) ds.unite(e.row, e.col);
    std::vector<Block> out;
    std::vector<std::size_t> block_of(n, static_cast<std::size_t>(-1));
    for (std::size_t v = 0; v < n; ++v) {
        std::size_t root = ds.find(v);
        if (block_of[root] == static_cast<std::size_t>(-1)) {
            block_of[root] = out.size();
            out.emplace_back();
        }
        out[block_of[root]].cols.push_back(v);
    }
    for (auto& b : out) {
        b.rows = b.cols;
        b.matrix = submatrix(m, b.rows, b.cols);
    }
    return out;
}

std::vector<std::vector<Rational>> flow_kernel(const QMatrix& m) {
    auto a = m.dense();
    const std::size_t R = m.rows(), C = m.cols();
    std::vector<std::size_t> pivot_cols;
    std::size_t row = 0;
    for (std::size_t c = 0; c < C && row < R; ++c) {
        std::size_t p = row;
        while (p < R && a[p][c] == 0) ++p;
        if (p == R) continue;
        std::swap(a[p], a[row]);
        Rational inv = 1 / a[row][c];
        for (std::size_t k = c; k < C; ++k) a[row][k] *= inv;
        for (std::size_t r = 0; r < R; ++r) {
            if (r == row || a[r][c] == 0) continue;
            Rational f = a[r][c];
            for (std::size_t k = c; k < C; ++k) a[r][k] -= f * a[row][k];
        }
        pivot_cols.push_back(c);
        ++row;
    }
    std::vector<char> is_pivot(C, 0);
    for (auto c : pivot_cols) is_pivot[c] = 1;
    std::vector<std::vector<Rational>> basis;
    for (std::size_t f = 0; f < C; ++f) {
        if (is_pivot[f]) continue;
        std::vector<Rational> v(C);
        v[f] = 1;
        for (std::size_t i = 0; i < pivot_cols.size(); ++i) v[pivot_cols[i]] = -a[i][f];
        basis.push_back(std::move(v));
    }
    return basis;
}

std::string write_matrix_market(const QMatrix& m) {
    std::ostringstream os;
    os << "%%MatrixMarket matrix coordinate rational general\n";
    os << m.rows() << ' ' << m.cols() << ' ' << m.nnz() << '\n';
    for (const auto& e : m.entries()) os << e.row + 1 << ' ' << e.col + 1 << ' ' << to_string(e.value) << '\n';
    return os.str();
}

QMatrix read_matrix_market(const std::string& text) {
    std::istringstream is(text);
    std::string line;
    bool have_size = false;
    std::size_t rows = 0, cols = 0, nnz = 0;
    std::vector<QMatrix::Entry> es;
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '%') continue;
        std::istringstream ls(line);
        if (!have_size) {
            if (!(ls >> rows >> cols >> nnz)) throw DomainError("bad MatrixMarket size line");
            have_size = true;
            continue;
        }
        std::size_t r = 0, c = 0;
        std::string v;
        if (!(ls >> r >> c >> v) || r == 0 || c == 0) throw DomainError("bad MatrixMarket entry: " + line);
        es.push_back({r - 1, c - 1, parse_rational(v)});
    }
    if (!have_size) throw DomainError("MatrixMarket text without size line");
    if (es.size() != nnz) throw DomainError("MatrixMarket entry count mismatch");
    return QMatrix(rows, cols, std::move(es));
}

}  // namespace l2rank
