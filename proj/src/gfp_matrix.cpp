#include "hyperrank/gfp_matrix.hpp"

#include <algorithm>
#include <array>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>

#include "hyperrank/ring.hpp"

namespace hyperrank {

namespace {

constexpr std::size_t kWordBits = 64;

// dst[i] = (dst[i] + factor * src[i]) mod P. With P fixed at compile time
// the reduction becomes a multiply-shift and the loop vectorizes.
template <unsigned P>
void axpy_fixed(std::uint8_t* __restrict dst, const std::uint8_t* __restrict src, unsigned factor,
                std::size_t n) {
  const auto f = static_cast<std::uint16_t>(factor);
  for (std::size_t i = 0; i < n; ++i) {
    dst[i] = static_cast<std::uint8_t>(static_cast<std::uint16_t>(dst[i] + f * static_cast<std::uint16_t>(src[i])) % P);
  }
}

constexpr std::array<unsigned, 53> kOddPrimes{3,   5,   7,   11,  13,  17,  19,  23,  29,  31,  37,  41,  43,  47,
                                              53,  59,  61,  67,  71,  73,  79,  83,  89,  97,  101, 103, 107, 109,
                                              113, 127, 131, 137, 139, 149, 151, 157, 163, 167, 173, 179, 181, 191,
                                              193, 197, 199, 211, 223, 227, 229, 233, 239, 241, 251};

using AxpyFn = void (*)(std::uint8_t*, const std::uint8_t*, unsigned, std::size_t);

template <std::size_t... I>
constexpr std::array<AxpyFn, sizeof...(I)> axpy_table(std::index_sequence<I...>) {
  return {&axpy_fixed<kOddPrimes[I]>...};
}

constexpr auto kAxpy = axpy_table(std::make_index_sequence<kOddPrimes.size()>{});

void axpy(std::uint8_t* dst, const std::uint8_t* src, unsigned factor, std::size_t n, unsigned p) {
  const auto it = std::lower_bound(kOddPrimes.begin(), kOddPrimes.end(), p);
  kAxpy[static_cast<std::size_t>(it - kOddPrimes.begin())](dst, src, factor, n);
}

void xor_words(std::uint64_t* __restrict dst, const std::uint64_t* __restrict src, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) dst[i] ^= src[i];
}

unsigned inverse_small(unsigned a, unsigned p) { return static_cast<unsigned>(inverse_mod(a, p)); }

class BitEngine {
 public:
  explicit BitEngine(MatGFp& m) : m_(m) {}
  bool nonzero(std::size_t r, std::size_t c) const {
    return (m_.packed_row(r)[c / kWordBits] >> (c % kWordBits)) & 1U;
  }
  void swap_rows(std::size_t a, std::size_t b) {
    auto ra = m_.packed_row(a);
    auto rb = m_.packed_row(b);
    std::swap_ranges(ra.begin(), ra.end(), rb.begin());
  }
  void normalize(std::size_t, std::size_t) {}
  void eliminate(std::size_t target, std::size_t pivot, std::size_t col) {
    const std::size_t w = col / kWordBits;
    xor_words(m_.packed_row(target).data() + w, m_.packed_row(pivot).data() + w, m_.stride() - w);
  }

 private:
  MatGFp& m_;
};

class ByteEngine {
 public:
  explicit ByteEngine(MatGFp& m) : m_(m) {}
  bool nonzero(std::size_t r, std::size_t c) const { return m_.byte_row(r)[c] != 0; }
  void swap_rows(std::size_t a, std::size_t b) {
    auto ra = m_.byte_row(a);
    auto rb = m_.byte_row(b);
    std::swap_ranges(ra.begin(), ra.end(), rb.begin());
  }
  void normalize(std::size_t r, std::size_t c) {
    auto row = m_.byte_row(r);
    const unsigned p = m_.p();
    const unsigned f = inverse_small(row[c], p);
    if (f == 1) return;
    for (std::size_t i = c; i < row.size(); ++i) row[i] = static_cast<std::uint8_t>(row[i] * f % p);
  }
  // Pivot entry is 1 after normalize.
  void eliminate(std::size_t target, std::size_t pivot, std::size_t col) {
    auto t = m_.byte_row(target);
    const auto s = m_.byte_row(pivot);
    const unsigned p = m_.p();
    axpy(t.data() + col, s.data() + col, p - t[col], m_.cols() - col, p);
  }

 private:
  MatGFp& m_;
};

template <class Engine>
std::vector<std::size_t> echelon(MatGFp& m, bool reduce_above) {
  Engine e(m);
  std::vector<std::size_t> pivots;
  std::size_t rank = 0;
  for (std::size_t col = 0; col < m.cols() && rank < m.rows(); ++col) {
    std::size_t piv = rank;
    while (piv < m.rows() && !e.nonzero(piv, col)) ++piv;
    if (piv == m.rows()) continue;
    if (piv != rank) e.swap_rows(piv, rank);
    e.normalize(rank, col);
    for (std::size_t r = reduce_above ? 0 : rank + 1; r < m.rows(); ++r) {
      if (r != rank && e.nonzero(r, col)) e.eliminate(r, rank, col);
    }
    pivots.push_back(col);
    ++rank;
  }
  return pivots;
}

std::vector<std::size_t> echelon_any(MatGFp& m, bool reduce_above) {
  return m.packed() ? echelon<BitEngine>(m, reduce_above) : echelon<ByteEngine>(m, reduce_above);
}

}  // namespace

MatGFp::MatGFp(std::uint32_t p, std::size_t rows, std::size_t cols)
    : p_(p), rows_(rows), cols_(cols), stride_(0) {
  if (p >= 256 || !is_prime(p)) throw std::invalid_argument("matrix field size must be a prime below 256");
  if (p == 2) {
    stride_ = (cols + kWordBits - 1) / kWordBits;
    bits_.assign(rows * stride_, 0);
  } else {
    stride_ = cols;
    bytes_.assign(rows * cols, 0);
  }
}

MatGFp MatGFp::identity(std::uint32_t p, std::size_t size) {
  MatGFp m(p, size, size);
  for (std::size_t i = 0; i < size; ++i) m.set(i, i, 1);
  return m;
}

MatGFp MatGFp::from_rows(std::uint32_t p, const std::vector<std::vector<std::uint8_t>>& rows) {
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  MatGFp m(p, rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw std::invalid_argument("ragged row list");
    m.set_row(r, rows[r]);
  }
  return m;
}

std::uint8_t MatGFp::get(std::size_t r, std::size_t c) const {
  if (packed()) return static_cast<std::uint8_t>((bits_[r * stride_ + c / kWordBits] >> (c % kWordBits)) & 1U);
  return bytes_[r * stride_ + c];
}

void MatGFp::set(std::size_t r, std::size_t c, std::uint32_t v) {
  v %= p_;
  if (packed()) {
    auto& word = bits_[r * stride_ + c / kWordBits];
    const std::uint64_t mask = std::uint64_t{1} << (c % kWordBits);
    word = v ? (word | mask) : (word & ~mask);
  } else {
    bytes_[r * stride_ + c] = static_cast<std::uint8_t>(v);
  }
}

std::vector<std::uint8_t> MatGFp::row(std::size_t r) const {
  std::vector<std::uint8_t> out(cols_);
  if (packed()) {
    for (std::size_t c = 0; c < cols_; ++c) out[c] = get(r, c);
  } else {
    std::copy_n(bytes_.begin() + static_cast<std::ptrdiff_t>(r * stride_), cols_, out.begin());
  }
  return out;
}

void MatGFp::set_row(std::size_t r, std::span<const std::uint8_t> values) {
  if (values.size() != cols_) throw std::invalid_argument("row has wrong length");
  for (std::size_t c = 0; c < cols_; ++c) set(r, c, values[c]);
}

MatGFp MatGFp::transpose() const {
  MatGFp t(p_, cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) {
      if (const auto v = get(r, c)) t.set(c, r, v);
    }
  }
  return t;
}

MatGFp MatGFp::row_block(std::size_t first, std::size_t count) const {
  if (first + count > rows_) throw std::out_of_range("row block out of range");
  MatGFp out(p_, count, cols_);
  if (packed()) {
    std::copy_n(bits_.begin() + static_cast<std::ptrdiff_t>(first * stride_), count * stride_, out.bits_.begin());
  } else {
    std::copy_n(bytes_.begin() + static_cast<std::ptrdiff_t>(first * stride_), count * stride_, out.bytes_.begin());
  }
  return out;
}

MatGFp MatGFp::select_columns(std::span<const std::size_t> columns) const {
  MatGFp out(p_, rows_, columns.size());
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t j = 0; j < columns.size(); ++j) {
      if (const auto v = get(r, columns[j])) out.set(r, j, v);
    }
  }
  return out;
}

MatGFp MatGFp::stack(const MatGFp& below) const {
  if (below.p_ != p_ || below.cols_ != cols_) throw std::invalid_argument("cannot stack matrices of different shape");
  MatGFp out(p_, rows_ + below.rows_, cols_);
  if (packed()) {
    std::copy(bits_.begin(), bits_.end(), out.bits_.begin());
    std::copy(below.bits_.begin(), below.bits_.end(), out.bits_.begin() + static_cast<std::ptrdiff_t>(bits_.size()));
  } else {
    std::copy(bytes_.begin(), bytes_.end(), out.bytes_.begin());
    std::copy(below.bytes_.begin(), below.bytes_.end(),
              out.bytes_.begin() + static_cast<std::ptrdiff_t>(bytes_.size()));
  }
  return out;
}

bool MatGFp::is_zero() const {
  if (packed()) return std::all_of(bits_.begin(), bits_.end(), [](auto w) { return w == 0; });
  return std::all_of(bytes_.begin(), bytes_.end(), [](auto b) { return b == 0; });
}

std::span<std::uint64_t> MatGFp::packed_row(std::size_t r) { return {bits_.data() + r * stride_, stride_}; }
std::span<const std::uint64_t> MatGFp::packed_row(std::size_t r) const {
  return {bits_.data() + r * stride_, stride_};
}
std::span<std::uint8_t> MatGFp::byte_row(std::size_t r) { return {bytes_.data() + r * stride_, stride_}; }
std::span<const std::uint8_t> MatGFp::byte_row(std::size_t r) const { return {bytes_.data() + r * stride_, stride_}; }

bool operator==(const MatGFp& a, const MatGFp& b) {
  return a.p_ == b.p_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.bits_ == b.bits_ && a.bytes_ == b.bytes_;
}

std::size_t rank(const MatGFp& m) {
  MatGFp work = m;
  return echelon_any(work, false).size();
}

std::size_t rank_reference(const MatGFp& m) {
  const int p = static_cast<int>(m.p());
  std::vector<std::vector<int>> a(m.rows(), std::vector<int>(m.cols()));
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) a[r][c] = m.get(r, c);
  }
  std::size_t rank = 0;
  for (std::size_t col = 0; col < m.cols() && rank < m.rows(); ++col) {
    std::size_t piv = rank;
    while (piv < m.rows() && a[piv][col] == 0) ++piv;
    if (piv == m.rows()) continue;
    std::swap(a[piv], a[rank]);
    const int inv = static_cast<int>(inverse_mod(static_cast<std::uint64_t>(a[rank][col]), static_cast<std::uint64_t>(p)));
    for (auto& x : a[rank]) x = x * inv % p;
    for (std::size_t r = rank + 1; r < m.rows(); ++r) {
      const int f = a[r][col];
      if (f == 0) continue;
      for (std::size_t c = col; c < m.cols(); ++c) a[r][c] = ((a[r][c] - f * a[rank][c]) % p + p) % p;
    }
    ++rank;
  }
  return rank;
}

Rref rref(const MatGFp& m) {
  MatGFp work = m;
  auto pivots = echelon_any(work, true);
  return Rref{std::move(work), std::move(pivots)};
}

std::optional<std::vector<std::uint8_t>> in_span(const MatGFp& rows, std::span<const std::uint8_t> v) {
  if (v.size() != rows.cols()) throw std::invalid_argument("vector length does not match the row length");
  // Solve rows^T c = v through the augmented system [rows^T | v].
  MatGFp aug(rows.p(), rows.cols(), rows.rows() + 1);
  for (std::size_t r = 0; r < rows.rows(); ++r) {
    for (std::size_t c = 0; c < rows.cols(); ++c) {
      if (const auto x = rows.get(r, c)) aug.set(c, r, x);
    }
  }
  for (std::size_t c = 0; c < rows.cols(); ++c) aug.set(c, rows.rows(), v[c]);
  const auto reduced = rref(aug);
  std::vector<std::uint8_t> coeffs(rows.rows(), 0);
  for (std::size_t i = 0; i < reduced.pivots.size(); ++i) {
    const std::size_t col = reduced.pivots[i];
    if (col == rows.rows()) return std::nullopt;
    coeffs[col] = reduced.matrix.get(i, rows.rows());
  }
  const auto check = left_multiply(coeffs, rows);
  if (!std::equal(check.begin(), check.end(), v.begin())) {
    throw std::logic_error("span certificate failed to re-multiply");
  }
  return coeffs;
}

std::vector<std::uint8_t> left_multiply(std::span<const std::uint8_t> coeffs, const MatGFp& m) {
  if (coeffs.size() != m.rows()) throw std::invalid_argument("coefficient vector has wrong length");
  std::vector<std::uint8_t> out(m.cols(), 0);
  const unsigned p = m.p();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    const unsigned c = coeffs[r] % p;
    if (c == 0) continue;
    for (std::size_t j = 0; j < m.cols(); ++j) out[j] = static_cast<std::uint8_t>((out[j] + c * m.get(r, j)) % p);
  }
  return out;
}

MatGFp multiply(const MatGFp& a, const MatGFp& b) {
  if (a.p() != b.p() || a.cols() != b.rows()) throw std::invalid_argument("matrix product shape mismatch");
  MatGFp out(a.p(), a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const unsigned f = a.get(i, j);
      if (f == 0) continue;
      if (out.packed()) {
        xor_words(out.packed_row(i).data(), b.packed_row(j).data(), out.stride());
      } else {
        axpy(out.byte_row(i).data(), b.byte_row(j).data(), f, b.cols(), a.p());
      }
    }
  }
  return out;
}

RowSpace::RowSpace(const MatGFp& rows) : basis_(rows.p(), 0, rows.cols()) {
  auto reduced = rref(rows);
  basis_ = reduced.matrix.row_block(0, reduced.pivots.size());
  pivots_ = std::move(reduced.pivots);
}

bool RowSpace::contains(std::span<const std::uint8_t> v) const {
  if (v.size() != basis_.cols()) throw std::invalid_argument("vector length does not match the row length");
  const unsigned p = basis_.p();
  std::vector<std::uint8_t> work(v.begin(), v.end());
  for (auto& x : work) x = static_cast<std::uint8_t>(x % p);
  for (std::size_t i = 0; i < pivots_.size(); ++i) {
    const unsigned f = work[pivots_[i]];
    if (f == 0) continue;
    for (std::size_t c = pivots_[i]; c < work.size(); ++c) {
      work[c] = static_cast<std::uint8_t>((work[c] + (p - f) * basis_.get(i, c)) % p);
    }
  }
  return std::all_of(work.begin(), work.end(), [](auto x) { return x == 0; });
}

bool RowSpace::contains_rows(const MatGFp& m) const {
  for (std::size_t r = 0; r < m.rows(); ++r) {
    if (!contains(m.row(r))) return false;
  }
  return true;
}

void write_dump(std::ostream& os, const MatGFp& m) {
  os << m.p() << ' ' << m.rows() << ' ' << m.cols() << '\n';
  const bool compact = m.p() <= 10;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (compact) {
        os << static_cast<char>('0' + m.get(r, c));
      } else {
        if (c) os << ' ';
        os << static_cast<unsigned>(m.get(r, c));
      }
    }
    os << '\n';
  }
}

MatGFp read_dump(std::istream& is) {
  unsigned p = 0;
  std::size_t rows = 0;
  std::size_t cols = 0;
  if (!(is >> p >> rows >> cols)) throw std::invalid_argument("matrix dump: bad header");
  MatGFp m(p, rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      unsigned v = 0;
      if (p <= 10) {
        char ch = 0;
        if (!(is >> ch) || ch < '0' || ch > '9') throw std::invalid_argument("matrix dump: bad entry");
        v = static_cast<unsigned>(ch - '0');
      } else if (!(is >> v)) {
        throw std::invalid_argument("matrix dump: bad entry");
      }
      if (v >= p) throw std::invalid_argument("matrix dump: entry out of range");
      m.set(r, c, v);
    }
  }
  return m;
}

}  // namespace hyperrank
