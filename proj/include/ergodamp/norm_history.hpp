#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace ergodamp {

/// L^p norms of a solution sampled at increasing times, one series per p.
class NormHistory {
 public:
  NormHistory() = default;
  NormHistory(std::vector<double> times, std::vector<double> orders);

  const std::vector<double>& times() const noexcept { return times_; }
  const std::vector<double>& orders() const noexcept { return orders_; }
  /// Norm series for orders()[index].
  const std::vector<double>& series(size_t index) const { return norms_.at(index); }
  std::vector<double>& series(size_t index) { return norms_.at(index); }
  /// Series for order p (exact match); throws InvalidParameter if absent.
  const std::vector<double>& series_for(double p) const;
  size_t index_of(double p) const;

  std::string problem_id;
  /// Empty for inviscid runs.
  std::optional<double> viscosity;

  /// CSV rows "t,p,norm" (plus ",nu" when a viscosity is set), p = inf printed as "inf".
  void write_csv(std::ostream& out, bool header = true) const;
  /// Two-column "t norm" data for one order.
  void write_columns(std::ostream& out, double p) const;

 private:
  std::vector<double> times_;
  std::vector<double> orders_;
  std::vector<std::vector<double>> norms_;
};

std::string format_order(double p);

}  // namespace ergodamp
