#include "ergodamp/norm_history.hpp"

#include <cmath>
#include <iomanip>
#include <sstream>

#include "ergodamp/errors.hpp"

namespace ergodamp {

std::string format_order(double p) {
  if (std::isinf(p)) return "inf";
  std::ostringstream s;
  s << p;
  return s.str();
}

NormHistory::NormHistory(std::vector<double> times, std::vector<double> orders)
    : times_(std::move(times)), orders_(std::move(orders)), norms_(orders_.size(), std::vector<double>(times_.size())) {
  for (size_t i = 1; i < times_.size(); ++i)
    if (!(times_[i] > times_[i - 1])) throw InvalidInput("history times must be strictly increasing");
  for (double p : orders_)
    if (std::isnan(p) || p < 1.0) throw InvalidParameter("norm order p must be >= 1");
}

size_t NormHistory::index_of(double p) const {
  for (size_t i = 0; i < orders_.size(); ++i)
    if (orders_[i] == p) return i;
  throw InvalidParameter("history has no series for p = " + format_order(p));
}

const std::vector<double>& NormHistory::series_for(double p) const { return norms_[index_of(p)]; }

void NormHistory::write_csv(std::ostream& out, bool header) const {
  if (header) out << (viscosity ? "t,p,norm,nu\n" : "t,p,norm\n");
  out << std::setprecision(17);
  for (size_t k = 0; k < times_.size(); ++k)
    for (size_t j = 0; j < orders_.size(); ++j) {
      out << times_[k] << ',' << format_order(orders_[j]) << ',' << norms_[j][k];
      if (viscosity) out << ',' << *viscosity;
      out << '\n';
    }
}

void NormHistory::write_columns(std::ostream& out, double p) const {
  const auto& s = series_for(p);
  out << "# t norm_p" << format_order(p) << '\n' << std::setprecision(17);
  for (size_t k = 0; k < times_.size(); ++k) out << times_[k] << ' ' << s[k] << '\n';
}

}  // namespace ergodamp
