#include <boolsynth/gf2.hpp>

#include <algorithm>
#include <bit>

namespace boolsynth {

Gf2System::Gf2System(int num_vars, std::vector<std::string> names)
    : n_(num_vars), words_((num_vars + 63) / 64), names_(std::move(names)) {}

std::uint64_t* Gf2System::add_row(bool rhs) {
  data_.resize(data_.size() + words_, 0);
  rhs_.push_back(rhs ? 1 : 0);
  return data_.data() + data_.size() - words_;
}

void Gf2System::add_row(const std::vector<std::uint8_t>& coeffs, bool rhs) {
  std::uint64_t* r = add_row(rhs);
  for (int v = 0; v < n_ && v < static_cast<int>(coeffs.size()); ++v)
    if (coeffs[v]) r[v >> 6] |= std::uint64_t{1} << (v & 63);
}

void Gf2System::add_row_from(const std::uint64_t* coeffs, bool rhs) {
  std::uint64_t* r = add_row(rhs);
  std::copy(coeffs, coeffs + words_, r);
}

bool Gf2System::satisfied_by(const std::vector<std::uint8_t>& x) const {
  for (int r = 0; r < num_rows(); ++r) {
    int acc = 0;
    for (int v = 0; v < n_; ++v)
      if (coeff(r, v) && x[v]) acc ^= 1;
    if (acc != rhs_[r]) return false;
  }
  return true;
}

std::optional<std::vector<std::uint8_t>> solve_gf2(const Gf2System& sys) {
  const int w = sys.words(), n = sys.num_vars(), rows = sys.num_rows();
  const int stride = w + 1;  // last word holds the rhs bit
  std::vector<std::uint64_t> m(static_cast<std::size_t>(rows) * stride);
  for (int r = 0; r < rows; ++r) {
    std::copy(sys.row(r), sys.row(r) + w, m.begin() + static_cast<std::ptrdiff_t>(r) * stride);
    m[static_cast<std::size_t>(r) * stride + w] = sys.rhs(r);
  }
  auto row = [&](int r) { return m.data() + static_cast<std::size_t>(r) * stride; };

  std::vector<int> pivot_col;
  int rank = 0;
  for (int col = 0; col < n && rank < rows; ++col) {
    const int word = col >> 6;
    const std::uint64_t mask = std::uint64_t{1} << (col & 63);
    int p = -1;
    for (int r = rank; r < rows; ++r)
      if (row(r)[word] & mask) {
        p = r;
        break;
      }
    if (p < 0) continue;
    if (p != rank) std::swap_ranges(row(p), row(p) + stride, row(rank));
    for (int r = 0; r < rows; ++r)
      if (r != rank && (row(r)[word] & mask))
        for (int k = word; k < stride; ++k) row(r)[k] ^= row(rank)[k];
    pivot_col.push_back(col);
    ++rank;
  }
  for (int r = rank; r < rows; ++r)
    if (row(r)[w] & 1u) return std::nullopt;

  // Reduced row echelon form: with free variables at 0 each pivot equals its rhs.
  std::vector<std::uint8_t> x(n, 0);
  for (int r = 0; r < rank; ++r) x[pivot_col[r]] = static_cast<std::uint8_t>(row(r)[w] & 1u);
  return x;
}

}  // namespace boolsynth
