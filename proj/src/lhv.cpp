#include <cmath>
#include <cstdint>
#include <vector>

#include "steerlab/errors.hpp"
#include "steerlab/functionals.hpp"

namespace steerlab {

namespace {

// Phase-1 simplex with Bland's rule: minimizes the sum of artificial
// variables for A w = b, w >= 0, b >= 0. Returns the optimum.
double phase1_optimum(const std::vector<std::vector<double>>& columns,
                      const std::vector<double>& rhs) {
  const std::size_t rows = rhs.size();
  const std::size_t cols = columns.size();
  // Tableau: structural columns, then the identity (artificial basis), then b.
  std::vector<std::vector<double>> tab(rows, std::vector<double>(cols + rows + 1, 0.0));
  for (std::size_t j = 0; j < cols; ++j)
    for (std::size_t i = 0; i < rows; ++i) tab[i][j] = columns[j][i];
  for (std::size_t i = 0; i < rows; ++i) {
    tab[i][cols + i] = 1.0;
    tab[i][cols + rows] = rhs[i];
  }
  std::vector<std::size_t> basis(rows);
  for (std::size_t i = 0; i < rows; ++i) basis[i] = cols + i;

  // Reduced costs for min sum(artificials): z_j - c_j = sum of rows for
  // structural columns while artificials are basic.
  std::vector<double> reduced(cols + rows, 0.0);
  double objective = 0.0;
  for (std::size_t i = 0; i < rows; ++i) {
    objective += tab[i][cols + rows];
    for (std::size_t j = 0; j < cols + rows; ++j) reduced[j] += tab[i][j];
  }
  for (std::size_t j = cols; j < cols + rows; ++j) reduced[j] -= 1.0;

  const double eps = 1e-12;
  const std::size_t max_pivots = 50 * (rows + cols);
  for (std::size_t pivot_count = 0; pivot_count < max_pivots; ++pivot_count) {
    // Bland: first improving column.
    std::size_t enter = cols + rows;
    for (std::size_t j = 0; j < cols + rows; ++j)
      if (reduced[j] > eps) {
        enter = j;
        break;
      }
    if (enter == cols + rows) break;

    std::size_t leave = rows;
    double best_ratio = 0.0;
    for (std::size_t i = 0; i < rows; ++i) {
      if (tab[i][enter] <= eps) continue;
      const double ratio = tab[i][cols + rows] / tab[i][enter];
      if (leave == rows || ratio < best_ratio - eps ||
          (std::abs(ratio - best_ratio) <= eps && basis[i] < basis[leave])) {
        leave = i;
        best_ratio = ratio;
      }
    }
    if (leave == rows) break;  // unbounded; cannot happen for phase 1

    const double pivot = tab[leave][enter];
    for (double& v : tab[leave]) v /= pivot;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == leave) continue;
      const double factor = tab[i][enter];
      if (factor == 0.0) continue;
      for (std::size_t j = 0; j <= cols + rows; ++j) tab[i][j] -= factor * tab[leave][j];
    }
    const double cost_factor = reduced[enter];
    for (std::size_t j = 0; j < cols + rows; ++j) reduced[j] -= cost_factor * tab[leave][j];
    objective -= cost_factor * tab[leave][cols + rows];
    basis[leave] = enter;
  }
  return objective;
}

}  // namespace

LhvStatus lhv_membership(const Behaviour& behaviour) {
  const int ka = behaviour.outcomes_a();
  const int kb = behaviour.outcomes_b();
  const int ma = behaviour.settings_a();
  const int mb = behaviour.settings_b();

  double strategy_count = std::pow(static_cast<double>(ka), ma) *
                          std::pow(static_cast<double>(kb), mb);
  if (strategy_count > 1e6)
    throw ScenarioTooLarge("lhv_membership: " + std::to_string(strategy_count) +
                           " deterministic strategies");
  const std::uint64_t strategies_a = static_cast<std::uint64_t>(std::llround(
      std::pow(static_cast<double>(ka), ma)));
  const std::uint64_t strategies_b = static_cast<std::uint64_t>(std::llround(
      std::pow(static_cast<double>(kb), mb)));

  const std::size_t entry_count =
      static_cast<std::size_t>(ka) * kb * ma * mb;
  const std::size_t rows = entry_count + 1;  // probabilities plus total weight

  std::vector<double> rhs(rows, 0.0);
  {
    std::size_t row = 0;
    for (int a = 0; a < ka; ++a)
      for (int b = 0; b < kb; ++b)
        for (int x = 0; x < ma; ++x)
          for (int y = 0; y < mb; ++y) rhs[row++] = behaviour.p(a, b, x, y);
    rhs[entry_count] = 1.0;
  }
  for (double v : rhs)
    if (v < -1e-9) return LhvStatus::infeasible;  // not even a probability table
  for (double& v : rhs) v = std::max(v, 0.0);

  std::vector<std::vector<double>> columns;
  columns.reserve(static_cast<std::size_t>(strategies_a * strategies_b));
  std::vector<int> answer_a(static_cast<std::size_t>(ma));
  std::vector<int> answer_b(static_cast<std::size_t>(mb));
  for (std::uint64_t sa = 0; sa < strategies_a; ++sa) {
    std::uint64_t code = sa;
    for (int x = 0; x < ma; ++x) {
      answer_a[static_cast<std::size_t>(x)] = static_cast<int>(code % ka);
      code /= ka;
    }
    for (std::uint64_t sb = 0; sb < strategies_b; ++sb) {
      code = sb;
      for (int y = 0; y < mb; ++y) {
        answer_b[static_cast<std::size_t>(y)] = static_cast<int>(code % kb);
        code /= kb;
      }
      std::vector<double> column(rows, 0.0);
      std::size_t row = 0;
      for (int a = 0; a < ka; ++a)
        for (int b = 0; b < kb; ++b)
          for (int x = 0; x < ma; ++x)
            for (int y = 0; y < mb; ++y) {
              column[row++] = (answer_a[static_cast<std::size_t>(x)] == a &&
                               answer_b[static_cast<std::size_t>(y)] == b)
                                  ? 1.0
                                  : 0.0;
            }
      column[entry_count] = 1.0;
      columns.push_back(std::move(column));
    }
  }

  const double optimum = phase1_optimum(columns, rhs);
  return optimum <= 1e-9 ? LhvStatus::feasible : LhvStatus::infeasible;
}

}  // namespace steerlab
