#ifndef TENSORALG_REPORT_HPP
#define TENSORALG_REPORT_HPP

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

namespace tensoralg {

/// Ordered list of named residuals produced by a structural check.  Insertion
/// order is part of the contract: serialized reports must be reproducible.
struct CheckReport {
  std::vector<std::pair<std::string, double>> residuals;
  std::vector<std::string> notes;

  void add(const std::string& name, double value) { residuals.emplace_back(name, value); }

  double get(const std::string& name) const {
    for (const auto& [k, v] : residuals)
      if (k == name) return v;
    return -1.0;
  }

  double max_residual() const {
    double m = 0.0;
    for (const auto& [k, v] : residuals) m = std::max(m, v);
    return m;
  }

  bool passed(double tol) const { return max_residual() <= tol; }

  /// Merge another report under a prefix.
  void absorb(const std::string& prefix, const CheckReport& other) {
    for (const auto& [k, v] : other.residuals) add(prefix + k, v);
    for (const auto& n : other.notes) notes.push_back(prefix + n);
  }
};

}  // namespace tensoralg

#endif  // TENSORALG_REPORT_HPP
