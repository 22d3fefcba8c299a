#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace boolsynth {

// Linear system over F2 with packed coefficient rows.
class Gf2System {
 public:
  explicit Gf2System(int num_vars = 0, std::vector<std::string> names = {});

  int num_vars() const { return n_; }
  int num_rows() const { return static_cast<int>(rhs_.size()); }
  int words() const { return words_; }
  const std::vector<std::string>& names() const { return names_; }

  // Appends a zero row and returns it. The pointer is invalidated by the next add_row.
  std::uint64_t* add_row(bool rhs);
  void add_row(const std::vector<std::uint8_t>& coeffs, bool rhs);
  void add_row_from(const std::uint64_t* coeffs, bool rhs);

  const std::uint64_t* row(int r) const { return data_.data() + static_cast<std::size_t>(r) * words_; }
  bool coeff(int r, int v) const { return (row(r)[v >> 6] >> (v & 63)) & 1u; }
  bool rhs(int r) const { return rhs_[r]; }

  bool satisfied_by(const std::vector<std::uint8_t>& x) const;

 private:
  int n_;
  int words_;
  std::vector<std::string> names_;
  std::vector<std::uint64_t> data_;
  std::vector<std::uint8_t> rhs_;
};

// Gaussian elimination; free variables are set to 0.
std::optional<std::vector<std::uint8_t>> solve_gf2(const Gf2System& sys);

}  // namespace boolsynth
