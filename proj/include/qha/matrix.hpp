#pragma once

#include "qha/scalar.hpp"

#include <algorithm>
#include <cstdint>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace qha {

struct RrefResult;

/// Dense exact matrix over a FieldSpec. Entries are kept in canonical form.
class Mat {
 public:
  Mat() = default;
  Mat(FieldSpec field, std::size_t rows, std::size_t cols)
      : field_(field), rows_(rows), cols_(cols), data_(rows * cols) {}

  static Mat zero(FieldSpec field, std::size_t rows, std::size_t cols) {
    return Mat(field, rows, cols);
  }

  static Mat identity(FieldSpec field, std::size_t n) {
    Mat m(field, n, n);
    for (std::size_t i = 0; i < n; ++i)
      m.data_[i * n + i] = 1;
    return m;
  }

  static Mat from_rows(FieldSpec field, const std::vector<std::vector<long>>& rows) {
    std::size_t r = rows.size();
    std::size_t c = r ? rows[0].size() : 0;
    Mat m(field, r, c);
    for (std::size_t i = 0; i < r; ++i) {
      if (rows[i].size() != c)
        throw std::invalid_argument("matrix: ragged rows");
      for (std::size_t j = 0; j < c; ++j)
        m.data_[i * c + j] = field.from_int(rows[i][j]);
    }
    return m;
  }

  const FieldSpec& field() const { return field_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  const Scalar& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  void set(std::size_t i, std::size_t j, const Scalar& v) { data_[i * cols_ + j] = field_.reduce(v); }
  const std::vector<Scalar>& data() const { return data_; }

  bool operator==(const Mat& o) const {
    return field_ == o.field_ && rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
  }

  bool is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const Scalar& x) { return x == 0; });
  }

  Mat operator+(const Mat& o) const {
    check_same_shape(o, "add");
    Mat r(field_, rows_, cols_);
    for (std::size_t k = 0; k < data_.size(); ++k)
      r.data_[k] = field_.reduce(data_[k] + o.data_[k]);
    return r;
  }

  Mat operator-(const Mat& o) const {
    check_same_shape(o, "subtract");
    Mat r(field_, rows_, cols_);
    for (std::size_t k = 0; k < data_.size(); ++k)
      r.data_[k] = field_.reduce(data_[k] - o.data_[k]);
    return r;
  }

  Mat operator-() const { return scaled(Scalar(-1)); }

  Mat scaled(const Scalar& c) const {
    Mat r(field_, rows_, cols_);
    Scalar cc = field_.reduce(c);
    for (std::size_t k = 0; k < data_.size(); ++k)
      r.data_[k] = field_.reduce(data_[k] * cc);
    return r;
  }

  Mat operator*(const Mat& o) const {
    if (!(field_ == o.field_))
      throw std::invalid_argument("matrix: field mismatch in multiply");
    if (cols_ != o.rows_)
      throw std::invalid_argument("matrix: shape mismatch in multiply (" + shape() + " * " +
                                  o.shape() + ")");
    Mat r(field_, rows_, o.cols_);
    if (field_.is_prime_field()) {
      const std::uint64_t p = field_.characteristic();
      auto a = to_residues();
      auto b = o.to_residues();
      std::vector<std::uint64_t> acc(rows_ * o.cols_, 0);
      for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
          std::uint64_t aik = a[i * cols_ + k];
          if (!aik)
            continue;
          for (std::size_t j = 0; j < o.cols_; ++j)
            acc[i * o.cols_ + j] = (acc[i * o.cols_ + j] + aik * b[k * o.cols_ + j]) % p;
        }
      for (std::size_t k = 0; k < acc.size(); ++k)
        r.data_[k] = Scalar(static_cast<unsigned long>(acc[k]));
      return r;
    }
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t k = 0; k < cols_; ++k) {
        const Scalar& aik = data_[i * cols_ + k];
        if (aik == 0)
          continue;
        for (std::size_t j = 0; j < o.cols_; ++j) {
          const Scalar& bkj = o.data_[k * o.cols_ + j];
          if (bkj != 0)
            r.data_[i * o.cols_ + j] += aik * bkj;
        }
      }
    return r;
  }

  Mat transpose() const {
    Mat r(field_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j)
        r.data_[j * rows_ + i] = data_[i * cols_ + j];
    return r;
  }

  Mat hconcat(const Mat& o) const {
    if (rows_ != o.rows_)
      throw std::invalid_argument("matrix: hconcat row mismatch");
    Mat r(field_, rows_, cols_ + o.cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t j = 0; j < cols_; ++j)
        r.data_[i * r.cols_ + j] = data_[i * cols_ + j];
      for (std::size_t j = 0; j < o.cols_; ++j)
        r.data_[i * r.cols_ + cols_ + j] = o.data_[i * o.cols_ + j];
    }
    return r;
  }

  Mat vconcat(const Mat& o) const {
    if (cols_ != o.cols_)
      throw std::invalid_argument("matrix: vconcat column mismatch");
    Mat r(field_, rows_ + o.rows_, cols_);
    std::copy(data_.begin(), data_.end(), r.data_.begin());
    std::copy(o.data_.begin(), o.data_.end(), r.data_.begin() + static_cast<long>(data_.size()));
    return r;
  }

  Mat block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    if (r0 + nr > rows_ || c0 + nc > cols_)
      throw std::out_of_range("matrix: block out of range");
    Mat r(field_, nr, nc);
    for (std::size_t i = 0; i < nr; ++i)
      for (std::size_t j = 0; j < nc; ++j)
        r.data_[i * nc + j] = data_[(r0 + i) * cols_ + c0 + j];
    return r;
  }

  void set_block(std::size_t r0, std::size_t c0, const Mat& b) {
    if (r0 + b.rows_ > rows_ || c0 + b.cols_ > cols_)
      throw std::out_of_range("matrix: set_block out of range");
    for (std::size_t i = 0; i < b.rows_; ++i)
      for (std::size_t j = 0; j < b.cols_; ++j)
        data_[(r0 + i) * cols_ + c0 + j] = b.data_[i * b.cols_ + j];
  }

  Mat column(std::size_t j) const { return block(0, j, rows_, 1); }

  Mat select_columns(const std::vector<std::size_t>& idx) const {
    Mat r(field_, rows_, idx.size());
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t k = 0; k < idx.size(); ++k)
        r.data_[i * idx.size() + k] = data_[i * cols_ + idx[k]];
    return r;
  }

  static Mat column_vector(FieldSpec field, const std::vector<Scalar>& v) {
    Mat r(field, v.size(), 1);
    for (std::size_t i = 0; i < v.size(); ++i)
      r.data_[i] = field.reduce(v[i]);
    return r;
  }

  /// Columns given as coordinate vectors of equal length `height`.
  static Mat from_columns(FieldSpec field, std::size_t height,
                          const std::vector<std::vector<Scalar>>& columns) {
    Mat r(field, height, columns.size());
    for (std::size_t j = 0; j < columns.size(); ++j) {
      if (columns[j].size() != height)
        throw std::invalid_argument("matrix: column height mismatch");
      for (std::size_t i = 0; i < height; ++i)
        r.data_[i * columns.size() + j] = columns[j][i];
    }
    return r;
  }

  std::vector<Scalar> column_entries(std::size_t j) const {
    std::vector<Scalar> v(rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      v[i] = data_[i * cols_ + j];
    return v;
  }

  static Mat kron(const Mat& a, const Mat& b) {
    Mat r(a.field_, a.rows_ * b.rows_, a.cols_ * b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t j = 0; j < a.cols_; ++j) {
        const Scalar& aij = a(i, j);
        if (aij == 0)
          continue;
        for (std::size_t k = 0; k < b.rows_; ++k)
          for (std::size_t l = 0; l < b.cols_; ++l)
            r.data_[(i * b.rows_ + k) * r.cols_ + j * b.cols_ + l] = a.field_.reduce(aij * b(k, l));
      }
    return r;
  }

  static Mat block_diagonal(FieldSpec field, const std::vector<Mat>& blocks) {
    std::size_t r = 0, c = 0;
    for (const auto& b : blocks) {
      r += b.rows_;
      c += b.cols_;
    }
    Mat m(field, r, c);
    std::size_t ro = 0, co = 0;
    for (const auto& b : blocks) {
      m.set_block(ro, co, b);
      ro += b.rows_;
      co += b.cols_;
    }
    return m;
  }

  std::string shape() const { return std::to_string(rows_) + "x" + std::to_string(cols_); }

  /// Rows separated by `;`, entries by `,`. Matrices with no entries print as `-`.
  std::string to_string() const {
    if (rows_ == 0 || cols_ == 0)
      return "-";
    std::string s;
    for (std::size_t i = 0; i < rows_; ++i) {
      if (i)
        s += ';';
      for (std::size_t j = 0; j < cols_; ++j) {
        if (j)
          s += ',';
        s += field_.format(data_[i * cols_ + j]);
      }
    }
    return s;
  }

  // Residues as machine integers; only meaningful over F_p.
  std::vector<std::uint64_t> to_residues() const {
    std::vector<std::uint64_t> v(data_.size());
    for (std::size_t k = 0; k < data_.size(); ++k)
      v[k] = data_[k].get_num().get_ui();
    return v;
  }

 private:
  void check_same_shape(const Mat& o, const char* op) const {
    if (!(field_ == o.field_) || rows_ != o.rows_ || cols_ != o.cols_)
      throw std::invalid_argument(std::string("matrix: shape mismatch in ") + op + " (" + shape() +
                                  " vs " + o.shape() + ")");
  }

  friend struct RrefResult;
  friend RrefResult rref(const Mat& m);

  FieldSpec field_;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Scalar> data_;
};

struct RrefResult {
  Mat reduced;
  std::size_t rank = 0;
  std::vector<std::size_t> pivot_columns;
};

/// Reduced row-echelon form by Gauss-Jordan elimination.
inline RrefResult rref(const Mat& m) {
  RrefResult res;
  const std::size_t R = m.rows(), C = m.cols();
  res.reduced = Mat(m.field(), R, C);
  if (m.field().is_prime_field()) {
    const std::uint64_t p = m.field().characteristic();
    auto a = m.to_residues();
    auto inv = [p](std::uint64_t x) {
      std::uint64_t r = 1, e = p - 2;
      while (e) {
        if (e & 1)
          r = r * x % p;
        x = x * x % p;
        e >>= 1;
      }
      return r;
    };
    std::size_t row = 0;
    for (std::size_t col = 0; col < C && row < R; ++col) {
      std::size_t piv = row;
      while (piv < R && a[piv * C + col] == 0)
        ++piv;
      if (piv == R)
        continue;
      if (piv != row)
        for (std::size_t j = 0; j < C; ++j)
          std::swap(a[piv * C + j], a[row * C + j]);
      std::uint64_t s = inv(a[row * C + col]);
      for (std::size_t j = col; j < C; ++j)
        a[row * C + j] = a[row * C + j] * s % p;
      for (std::size_t i = 0; i < R; ++i) {
        if (i == row)
          continue;
        std::uint64_t f = a[i * C + col];
        if (!f)
          continue;
        for (std::size_t j = col; j < C; ++j)
          a[i * C + j] = (a[i * C + j] + (p - f) * a[row * C + j]) % p;
      }
      res.pivot_columns.push_back(col);
      ++row;
    }
    res.rank = row;
    for (std::size_t k = 0; k < a.size(); ++k)
      res.reduced.data_[k] = Scalar(static_cast<unsigned long>(a[k]));
    return res;
  }
  std::vector<Scalar> a = m.data_;
  std::size_t row = 0;
  for (std::size_t col = 0; col < C && row < R; ++col) {
    std::size_t piv = row;
    while (piv < R && a[piv * C + col] == 0)
      ++piv;
    if (piv == R)
      continue;
    if (piv != row)
      for (std::size_t j = 0; j < C; ++j)
        std::swap(a[piv * C + j], a[row * C + j]);
    Scalar s = 1 / a[row * C + col];
    for (std::size_t j = col; j < C; ++j)
      if (a[row * C + j] != 0)
        a[row * C + j] *= s;
    for (std::size_t i = 0; i < R; ++i) {
      if (i == row)
        continue;
      if (a[i * C + col] == 0)
        continue;
      Scalar f = a[i * C + col];
      for (std::size_t j = col; j < C; ++j)
        if (a[row * C + j] != 0)
          a[i * C + j] -= f * a[row * C + j];
    }
    res.pivot_columns.push_back(col);
    ++row;
  }
  res.rank = row;
  res.reduced.data_ = std::move(a);
  return res;
}

inline std::size_t rank(const Mat& m) {
  if (m.empty())
    return 0;
  return rref(m).rank;
}

/// Basis of {x : m x = 0} as columns, one per free column of rref(m), in
/// increasing free-column order.
inline Mat nullspace(const Mat& m) {
  const std::size_t C = m.cols();
  if (m.rows() == 0)
    return Mat::identity(m.field(), C);
  RrefResult r = rref(m);
  std::vector<bool> is_pivot(C, false);
  for (auto c : r.pivot_columns)
    is_pivot[c] = true;
  std::vector<std::size_t> free;
  for (std::size_t c = 0; c < C; ++c)
    if (!is_pivot[c])
      free.push_back(c);
  Mat n(m.field(), C, free.size());
  for (std::size_t k = 0; k < free.size(); ++k) {
    n.set(free[k], k, Scalar(1));
    for (std::size_t i = 0; i < r.rank; ++i)
      n.set(r.pivot_columns[i], k, -r.reduced(i, free[k]));
  }
  return n;
}

/// Some x with a x = b, or nullopt when the system is inconsistent.
inline std::optional<Mat> solve(const Mat& a, const Mat& b) {
  if (a.rows() != b.rows())
    throw std::invalid_argument("solve: row mismatch (" + a.shape() + " vs " + b.shape() + ")");
  const std::size_t n = a.cols(), k = b.cols();
  if (a.rows() == 0)
    return Mat(a.field(), n, k);
  RrefResult r = rref(a.hconcat(b));
  for (auto c : r.pivot_columns)
    if (c >= n)
      return std::nullopt;
  Mat x(a.field(), n, k);
  for (std::size_t i = 0; i < r.rank; ++i)
    for (std::size_t j = 0; j < k; ++j)
      x.set(r.pivot_columns[i], j, r.reduced(i, n + j));
  return x;
}

inline std::optional<Mat> inverse(const Mat& a) {
  if (a.rows() != a.cols())
    return std::nullopt;
  if (rank(a) != a.rows())
    return std::nullopt;
  return solve(a, Mat::identity(a.field(), a.rows()));
}

/// Rows form a basis of {y : y m = 0}.
inline Mat left_nullspace(const Mat& m) { return nullspace(m.transpose()).transpose(); }

/// Parses `1,0;0,1`. When the text is `-` or empty, the expected shape is used.
inline Mat parse_matrix(const FieldSpec& field, std::string_view text,
                        std::optional<std::pair<std::size_t, std::size_t>> expected = std::nullopt) {
  std::string s(text);
  auto strip = [](std::string t) {
    auto b = t.find_first_not_of(" \t\r\n");
    if (b == std::string::npos)
      return std::string{};
    auto e = t.find_last_not_of(" \t\r\n");
    return t.substr(b, e - b + 1);
  };
  s = strip(s);
  if (s.empty() || s == "-") {
    if (!expected)
      return Mat(field, 0, 0);
    if (expected->first != 0 && expected->second != 0)
      throw std::invalid_argument("matrix: empty text but expected " +
                                  std::to_string(expected->first) + "x" +
                                  std::to_string(expected->second));
    return Mat(field, expected->first, expected->second);
  }
  std::vector<std::vector<Scalar>> rows;
  std::stringstream rs(s);
  std::string row;
  while (std::getline(rs, row, ';')) {
    std::vector<Scalar> entries;
    std::stringstream es(row);
    std::string e;
    while (std::getline(es, e, ','))
      entries.push_back(field.parse(e));
    if (entries.empty())
      throw std::invalid_argument("matrix: empty row in '" + s + "'");
    rows.push_back(std::move(entries));
  }
  std::size_t c = rows[0].size();
  for (auto& r : rows)
    if (r.size() != c)
      throw std::invalid_argument("matrix: ragged rows in '" + s + "'");
  Mat m(field, rows.size(), c);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < c; ++j)
      m.set(i, j, rows[i][j]);
  if (expected && (m.rows() != expected->first || m.cols() != expected->second))
    throw std::invalid_argument("matrix: expected " + std::to_string(expected->first) + "x" +
                                std::to_string(expected->second) + ", got " + m.shape());
  return m;
}

}  // namespace qha
