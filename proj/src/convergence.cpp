#include "polykin/convergence.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "polykin/errors.hpp"
#include "io_format.hpp"

namespace polykin {

std::vector<double> ConvergenceTable::orders() const {
  std::vector<double> out;
  for (const auto& r : rows)
    if (r.observed_order) out.push_back(*r.observed_order);
  return out;
}

void ConvergenceTable::write_csv(std::ostream& os) const {
  os << "level,h,error,observed_order\n";
  for (const auto& r : rows) {
    os << r.level << ',' << detail::format_double(r.h) << ',' << detail::format_double(r.error)
       << ',';
    if (r.observed_order) os << detail::format_double(*r.observed_order);
    os << '\n';
  }
}

void ConvergenceTable::write_markdown(std::ostream& os) const {
  std::vector<std::array<std::string, 4>> cells;
  cells.push_back({"level", "h", "error", "order"});
  for (const auto& r : rows) {
    std::ostringstream h, e, o;
    h << std::setprecision(6) << r.h;
    e << std::scientific << std::setprecision(4) << r.error;
    if (r.observed_order) o << std::fixed << std::setprecision(3) << *r.observed_order;
    else o << "-";
    cells.push_back({r.level, h.str(), e.str(), o.str()});
  }
  std::array<std::size_t, 4> width{};
  for (const auto& row : cells)
    for (std::size_t c = 0; c < 4; ++c) width[c] = std::max(width[c], row[c].size());
  auto print_row = [&](const std::array<std::string, 4>& row) {
    os << '|';
    for (std::size_t c = 0; c < 4; ++c) os << ' ' << std::left << std::setw(int(width[c])) << row[c] << " |";
    os << '\n';
  };
  print_row(cells[0]);
  os << '|';
  for (std::size_t c = 0; c < 4; ++c) os << std::string(width[c] + 2, '-') << '|';
  os << '\n';
  for (std::size_t r = 1; r < cells.size(); ++r) print_row(cells[r]);
}

ConvergenceTable observed_order(std::span<const RefinementLevel> levels) {
  if (levels.size() < 3) throw DegenerateTable("at least three refinement levels are required");
  for (std::size_t n = 0; n < levels.size(); ++n) {
    if (!(levels[n].error > 0.0) || !std::isfinite(levels[n].error))
      throw DegenerateTable("error of level " + std::to_string(n) + " is not positive");
    if (!(levels[n].h > 0.0)) throw DegenerateTable("level spacing must be positive");
    if (n > 0 && !(levels[n].h < levels[n - 1].h))
      throw DegenerateTable("levels must be strictly refined");
    if (n > 0 && !(levels[n].error < levels[n - 1].error))
      throw DegenerateTable("errors do not decrease between levels " + std::to_string(n - 1) +
                            " and " + std::to_string(n));
  }
  ConvergenceTable table;
  for (std::size_t n = 0; n < levels.size(); ++n) {
    ConvergenceRow row;
    row.level = levels[n].label.empty() ? "h=" + detail::format_double(levels[n].h) : levels[n].label;
    row.h = levels[n].h;
    row.error = levels[n].error;
    if (n > 0)
      row.observed_order = std::log(levels[n - 1].error / levels[n].error) /
                           std::log(levels[n - 1].h / levels[n].h);
    table.rows.push_back(row);
  }
  return table;
}

DistField restrict_to(const DistField& fine, const GridPtr& coarse) {
  const PhaseGrid& f = fine.grid();
  const PhaseGrid& c = *coarse;
  if (f.n_v() != c.n_v() || f.n_i() != c.n_i() || f.v_max() != c.v_max() ||
      f.i_max() != c.i_max() || f.delta() != c.delta())
    throw GridMismatch("velocity/energy layouts differ");
  if (f.n_x() % c.n_x() != 0) throw GridMismatch("spatial grids are not nested");
  const std::size_t ratio = f.n_x() / c.n_x();
  DistField out(coarse);
  for (std::size_t i = 0; i < c.n_x(); ++i) {
    const auto src = fine.cell(i * ratio);
    std::copy(src.begin(), src.end(), out.cell(i).begin());
  }
  return out;
}

} // namespace polykin
