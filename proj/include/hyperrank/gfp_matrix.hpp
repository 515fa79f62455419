#pragma once

// Dense matrices over Z/pZ with exact rank, RREF and span membership.
//
// Storage is row-major. For p = 2 rows are packed 64 entries per word and
// elimination is word-wise XOR; for odd p each entry takes one byte. The
// pivot rule is fixed (lowest remaining row with a nonzero entry in the
// current column), so RREF output is reproducible bit for bit.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

namespace hyperrank {

class MatGFp {
 public:
  /// Zero matrix. Throws std::invalid_argument unless p is a prime < 256.
  MatGFp(std::uint32_t p, std::size_t rows, std::size_t cols);

  static MatGFp identity(std::uint32_t p, std::size_t size);
  static MatGFp from_rows(std::uint32_t p, const std::vector<std::vector<std::uint8_t>>& rows);

  std::uint32_t p() const { return p_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool packed() const { return p_ == 2; }

  std::uint8_t get(std::size_t r, std::size_t c) const;
  /// Stores v mod p.
  void set(std::size_t r, std::size_t c, std::uint32_t v);

  std::vector<std::uint8_t> row(std::size_t r) const;
  void set_row(std::size_t r, std::span<const std::uint8_t> values);

  MatGFp transpose() const;
  /// Rows [first, first + count) as a new matrix.
  MatGFp row_block(std::size_t first, std::size_t count) const;
  /// Selected columns, in the given order.
  MatGFp select_columns(std::span<const std::size_t> columns) const;
  /// This matrix stacked above `below` (same p and column count).
  MatGFp stack(const MatGFp& below) const;

  bool is_zero() const;

  // Raw row storage; valid only for the matching storage kind.
  std::span<std::uint64_t> packed_row(std::size_t r);
  std::span<const std::uint64_t> packed_row(std::size_t r) const;
  std::span<std::uint8_t> byte_row(std::size_t r);
  std::span<const std::uint8_t> byte_row(std::size_t r) const;
  std::size_t stride() const { return stride_; }

  friend bool operator==(const MatGFp& a, const MatGFp& b);

 private:
  std::uint32_t p_;
  std::size_t rows_;
  std::size_t cols_;
  std::size_t stride_;  // words per row (p = 2) or bytes per row
  std::vector<std::uint64_t> bits_;
  std::vector<std::uint8_t> bytes_;
};

/// Rank over Z/pZ (packed/vectorized path).
std::size_t rank(const MatGFp& m);

/// Rank by textbook elimination on an unpacked int copy; the oracle the
/// fast path is checked against.
std::size_t rank_reference(const MatGFp& m);

struct Rref {
  MatGFp matrix;
  std::vector<std::size_t> pivots;  // pivot column of each nonzero row
};

Rref rref(const MatGFp& m);

/// Coefficients c with c * rows = v, or nullopt when v is outside the row
/// space. Free variables are set to zero. Throws std::invalid_argument when
/// v has the wrong length.
std::optional<std::vector<std::uint8_t>> in_span(const MatGFp& rows, std::span<const std::uint8_t> v);

/// c * M for a coefficient row vector c.
std::vector<std::uint8_t> left_multiply(std::span<const std::uint8_t> coeffs, const MatGFp& m);

/// A * B; throws std::invalid_argument on shape or field mismatch.
MatGFp multiply(const MatGFp& a, const MatGFp& b);

/// Reduced row space of a matrix, for repeated membership queries.
class RowSpace {
 public:
  explicit RowSpace(const MatGFp& rows);

  std::size_t dim() const { return pivots_.size(); }
  bool contains(std::span<const std::uint8_t> v) const;
  /// Every row of m lies in this space.
  bool contains_rows(const MatGFp& m) const;

 private:
  MatGFp basis_;
  std::vector<std::size_t> pivots_;
};

/// Text dump: "p rows cols" then one line per row. Entries are single
/// digits when p <= 10 and space-separated decimals otherwise.
void write_dump(std::ostream& os, const MatGFp& m);
MatGFp read_dump(std::istream& is);

}  // namespace hyperrank
