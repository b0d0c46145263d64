#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "monoidlab/errors.hpp"
#include "monoidlab/natural.hpp"

namespace monoidlab {

/// An n×n window of exact values: at(a,b) = f(a,b) for 1 ≤ a,b ≤ n.
/// "Closed" means every entry lies back inside [1..n], i.e. a finite magma.
class Table {
 public:
  Table(int n, std::vector<Natural> entries) : n_(n), entries_(std::move(entries)) {
    if (n_ < 1) throw InvalidSpec("table window must be >= 1");
    if (entries_.size() != static_cast<std::size_t>(n_) * static_cast<std::size_t>(n_))
      throw InvalidSpec("table entries are not an n by n matrix");
  }

  /// Rows of small ints, the common case in tests and fixtures.
  static Table from_rows(const std::vector<std::vector<long long>>& rows) {
    const int n = static_cast<int>(rows.size());
    std::vector<Natural> entries;
    entries.reserve(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
    for (const auto& row : rows) {
      if (static_cast<int>(row.size()) != n) throw InvalidSpec("table rows have unequal lengths");
      for (long long v : row) entries.emplace_back(v);
    }
    return Table(n, std::move(entries));
  }

  int n() const noexcept { return n_; }

  const Natural& at(int a, int b) const {
    if (a < 1 || a > n_ || b < 1 || b > n_) throw OutOfWindow("table lookup outside window");
    return entries_[static_cast<std::size_t>(a - 1) * static_cast<std::size_t>(n_) +
                    static_cast<std::size_t>(b - 1)];
  }

  /// Entry as a window index, or 0 when the value falls outside [1..n].
  int at_in_window(int a, int b) const {
    const Natural& v = at(a, b);
    if (!v.fits_int()) return 0;
    const int w = v.as_int();
    return w <= n_ ? w : 0;
  }

  bool closed() const {
    for (const Natural& v : entries_)
      if (!v.fits_int() || v.as_int() > n_) return false;
    return true;
  }

  const std::vector<Natural>& entries() const noexcept { return entries_; }

  friend bool operator==(const Table& a, const Table& b) {
    return a.n_ == b.n_ && a.entries_ == b.entries_;
  }
  friend bool operator!=(const Table& a, const Table& b) { return !(a == b); }

  /// Lexicographic order on the flattened (row-major) entries.
  friend bool operator<(const Table& a, const Table& b) {
    if (a.n_ != b.n_) return a.n_ < b.n_;
    for (std::size_t i = 0; i < a.entries_.size(); ++i) {
      if (a.entries_[i] != b.entries_[i]) return a.entries_[i] < b.entries_[i];
    }
    return false;
  }

 private:
  int n_;
  std::vector<Natural> entries_;  // row-major
};

}  // namespace monoidlab
