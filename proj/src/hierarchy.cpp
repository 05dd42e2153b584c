#include "steerlab/hierarchy.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>

#include "steerlab/errors.hpp"

namespace steerlab {

namespace {

Complex unit_root(int outcomes, long long exponent) {
  const double angle = 2.0 * M_PI * static_cast<double>(exponent) / outcomes;
  return {std::cos(angle), std::sin(angle)};
}

// phi(u_x^j (x) .) as a matrix in the pin convention: sum_a omega^{a j}
// sigma_{a|x}^T with 0-based outcome labels.
Mat power_moment(const MomentProblem& problem, int setting, int power) {
  const int k = problem.scenario.outcomes;
  const Eigen::Index n = problem.block_dim;
  Mat value = Mat::Zero(n, n);
  for (int a = 0; a < k; ++a)
    value += unit_root(k, static_cast<long long>(a) * power) *
             problem.sigma(a, setting).transpose();
  return value;
}

Mat block_of(const Mat& gamma, const MomentProblem& problem, int row_word, int col_word) {
  const Eigen::Index n = problem.block_dim;
  return gamma.block(row_word * n, col_word * n, n, n);
}

}  // namespace

double MomentProblem::constraint_defect(const Mat& gamma) const {
  if (gamma.rows() != matrix_dim() || gamma.cols() != matrix_dim())
    throw DimensionMismatch("constraint_defect: candidate has wrong size");
  const Eigen::Index n = block_dim;
  const int k = scenario.outcomes;
  double worst = (gamma - gamma.adjoint()).norm();

  for (const MomentClass& cls : classes) {
    Mat mean = Mat::Zero(n, n);
    for (const auto& pos : cls.positions) {
      const Mat b = block_of(gamma, *this, pos.row_word, pos.col_word);
      mean += pos.conjugated ? Mat(b.adjoint()) : b;
    }
    mean /= static_cast<double>(cls.positions.size());
    const Mat target = cls.pinned ? cls.pin_value : mean;
    for (const auto& pos : cls.positions) {
      const Mat b = block_of(gamma, *this, pos.row_word, pos.col_word);
      const Mat oriented = pos.conjugated ? Mat(b.adjoint()) : b;
      worst = std::max(worst, (oriented - target).norm());
    }
  }

  // Projection-dictionary pins per (outcome, setting): the combination of
  // the (e, u_x^j) blocks must reproduce each sigma_{a|x}.
  std::map<FreeWord, int> index;
  for (int w = 0; w < static_cast<int>(words.size()); ++w) index.emplace(words[w], w);
  for (int x = 0; x < scenario.settings; ++x)
    for (int a = 0; a < k; ++a) {
      Mat combo = block_of(gamma, *this, 0, 0);
      for (int j = 1; j < k; ++j) {
        const FreeWord word(scenario.settings, k, {{x, j}});
        const auto it = index.find(word);
        if (it == index.end()) continue;
        combo += unit_root(k, -static_cast<long long>(a) * j) *
                 block_of(gamma, *this, 0, it->second);
      }
      combo /= static_cast<double>(k);
      worst = std::max(worst, (combo - sigma(a, x).transpose()).norm());
    }
  return worst;
}

MomentProblem build_moment_problem(const Assemblage& assemblage, int level, bool require_valid) {
  if (level < 1) throw BadSetting("build_moment_problem: level must be >= 1");
  if (require_valid && !validate(assemblage).passes(kDefaultValidationTol))
    throw InvalidAssemblage("build_moment_problem: assemblage fails validation");

  MomentProblem problem;
  problem.scenario = assemblage.scenario();
  problem.level = level;
  problem.block_dim = problem.scenario.trusted_dim;
  const int m = problem.scenario.settings;
  const int k = problem.scenario.outcomes;

  problem.data.reserve(static_cast<std::size_t>(m) * k);
  for (int x = 0; x < m; ++x)
    for (int a = 0; a < k; ++a) {
      const Mat& sigma = assemblage.element(a, x);
      problem.data.push_back(0.5 * (sigma + sigma.adjoint()));
    }

  problem.words = enumerate_words(m, k, level);
  const int word_count = static_cast<int>(problem.words.size());

  std::map<FreeWord, std::size_t> class_index;
  for (int row = 0; row < word_count; ++row)
    for (int col = 0; col < word_count; ++col) {
      const FreeWord g = multiply(inverse(problem.words[row]), problem.words[col]);
      const FreeWord g_inv = inverse(g);
      const FreeWord& rep = (g_inv < g) ? g_inv : g;
      auto [it, inserted] = class_index.emplace(rep, problem.classes.size());
      if (inserted) {
        MomentClass cls{rep, g == g_inv, false, Mat(), {}};
        problem.classes.push_back(std::move(cls));
      }
      problem.classes[it->second].positions.push_back({row, col, !(g == rep)});
    }

  // Pins: identity block and every length-one (unitary power) block.
  const Mat barycenter_pin = assemblage.outcome_sum(0).transpose().eval();
  for (MomentClass& cls : problem.classes) {
    if (cls.rep.is_identity()) {
      cls.pinned = true;
      cls.pin_value = 0.5 * (barycenter_pin + barycenter_pin.adjoint());
    } else if (cls.rep.length() == 1) {
      cls.pinned = true;
      const auto& letter = cls.rep.letters().front();
      Mat pin = power_moment(problem, letter.setting, letter.power);
      if (cls.self_paired) pin = 0.5 * (pin + pin.adjoint());
      cls.pin_value = std::move(pin);
    }
  }

  // Residual of the pin equations against the raw data; positive exactly
  // when the outcome sums depend on the setting.
  double inconsistency_sq = 0.0;
  for (int x = 0; x < m; ++x)
    for (int a = 0; a < k; ++a) {
      Mat combo = barycenter_pin;
      for (int j = 1; j < k; ++j)
        combo += unit_root(k, -static_cast<long long>(a) * j) * power_moment(problem, x, j);
      combo /= static_cast<double>(k);
      inconsistency_sq += (combo - problem.sigma(a, x).transpose()).squaredNorm();
    }
  problem.data_inconsistency = std::sqrt(inconsistency_sq);
  return problem;
}

namespace {

// Orthogonal projection onto the affine subspace: shared blocks averaged per
// class, pinned classes overwritten with their data values.
void project_affine(const MomentProblem& problem, Mat& gamma) {
  const Eigen::Index n = problem.block_dim;
  for (const MomentClass& cls : problem.classes) {
    Mat value;
    if (cls.pinned) {
      value = cls.pin_value;
    } else {
      value = Mat::Zero(n, n);
      for (const auto& pos : cls.positions) {
        const Mat b = gamma.block(pos.row_word * n, pos.col_word * n, n, n);
        value += pos.conjugated ? Mat(b.adjoint()) : b;
      }
      value /= static_cast<double>(cls.positions.size());
      if (cls.self_paired) value = 0.5 * (value + value.adjoint());
    }
    const Mat value_adj = value.adjoint();
    for (const auto& pos : cls.positions)
      gamma.block(pos.row_word * n, pos.col_word * n, n, n) =
          pos.conjugated ? value_adj : value;
  }
}

Mat project_psd(const Mat& gamma) {
  Eigen::SelfAdjointEigenSolver<Mat> solver(0.5 * (gamma + gamma.adjoint()));
  const RVec& ev = solver.eigenvalues();
  Mat out = Mat::Zero(gamma.rows(), gamma.cols());
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (ev(i) <= 0.0) continue;
    out += ev(i) * solver.eigenvectors().col(i) * solver.eigenvectors().col(i).adjoint();
  }
  return out;
}

double psd_distance(const Mat& gamma) {
  Eigen::SelfAdjointEigenSolver<Mat> solver(0.5 * (gamma + gamma.adjoint()),
                                            Eigen::EigenvaluesOnly);
  double dist_sq = 0.0;
  for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) {
    const double lambda = solver.eigenvalues()(i);
    if (lambda < 0.0) dist_sq += lambda * lambda;
  }
  return std::sqrt(dist_sq);
}

}  // namespace

FeasibilityResult dykstra_feasibility(const MomentProblem& problem, int max_iters, double tol) {
  const Eigen::Index dim = problem.matrix_dim();
  Mat iterate = Mat::Zero(dim, dim);
  project_affine(problem, iterate);  // pinned skeleton as the starting point

  Mat psd_correction = Mat::Zero(dim, dim);
  Mat affine_correction = Mat::Zero(dim, dim);

  FeasibilityResult result;
  result.residual = std::numeric_limits<double>::infinity();
  const int certificate_stride = 8;
  for (int iter = 1; iter <= max_iters; ++iter) {
    const Mat psd_point = project_psd(iterate + psd_correction);
    psd_correction = iterate + psd_correction - psd_point;
    Mat affine_point = psd_point + affine_correction;
    project_affine(problem, affine_point);
    affine_correction = psd_point + affine_correction - affine_point;
    iterate = affine_point;
    result.iterations = iter;

    const double gap = std::hypot((psd_point - affine_point).norm(),
                                  problem.data_inconsistency);
    const bool certify = gap <= tol || iter % certificate_stride == 0 || iter == max_iters;
    if (!certify) {
      result.residual = std::min(result.residual, gap);
      continue;
    }
    // The affine iterate satisfies every pin and sharing constraint exactly,
    // so its cone distance plus the pin inconsistency certifies the status.
    result.residual = std::hypot(psd_distance(affine_point), problem.data_inconsistency);
    if (result.residual <= tol) {
      result.status = FeasibilityResult::Status::feasible;
      return result;
    }
  }
  result.status = FeasibilityResult::Status::undetermined;
  return result;
}

void export_sdpa(const MomentProblem& problem, const std::string& path) {
  const Eigen::Index n = problem.block_dim;
  const Eigen::Index dim = problem.matrix_dim();

  // Canonical class order: by representative word.
  std::vector<std::size_t> order(problem.classes.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t lhs, std::size_t rhs) {
    return problem.classes[lhs].rep < problem.classes[rhs].rep;
  });

  // Hermitian basis contribution of one real parameter of one class.
  struct Parameter {
    std::size_t class_id;
    Eigen::Index row, col;
    bool imaginary;
  };
  std::vector<Parameter> parameters;
  for (std::size_t id : order) {
    const MomentClass& cls = problem.classes[id];
    if (cls.pinned) continue;
    if (cls.self_paired) {
      for (Eigen::Index i = 0; i < n; ++i) parameters.push_back({id, i, i, false});
      for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = i + 1; j < n; ++j) {
          parameters.push_back({id, i, j, false});
          parameters.push_back({id, i, j, true});
        }
    } else {
      for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) {
          parameters.push_back({id, i, j, false});
          parameters.push_back({id, i, j, true});
        }
    }
  }

  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("export_sdpa: cannot open " + path);
  char buffer[128];
  out << parameters.size() << "\n1\n" << 2 * dim << "\n";
  for (std::size_t p = 0; p < parameters.size(); ++p) out << (p ? " 0" : "0");
  if (parameters.empty()) out << "0";
  out << "\n";

  const auto emit_matrix = [&](std::size_t matrix_id, const Mat& hermitian) {
    // Real symmetric embedding [[X, -Y], [Y, X]]; upper triangle only.
    for (Eigen::Index i = 0; i < 2 * dim; ++i)
      for (Eigen::Index j = i; j < 2 * dim; ++j) {
        double value;
        if (i < dim && j < dim)
          value = hermitian(i, j).real();
        else if (i >= dim && j >= dim)
          value = hermitian(i - dim, j - dim).real();
        else
          value = -hermitian(i, j - dim).imag();
        if (value == 0.0) continue;
        std::snprintf(buffer, sizeof(buffer), "%zu 1 %lld %lld %.17g\n", matrix_id,
                      static_cast<long long>(i + 1), static_cast<long long>(j + 1), value);
        out << buffer;
      }
  };

  // F0 = -(pinned skeleton), so that sum_p y_p F_p - F0 >= 0 reproduces the
  // pinned moment matrix.
  Mat skeleton = Mat::Zero(dim, dim);
  project_affine(problem, skeleton);
  for (const MomentClass& cls : problem.classes)
    if (!cls.pinned)
      for (const auto& pos : cls.positions)
        skeleton.block(pos.row_word * n, pos.col_word * n, n, n).setZero();
  emit_matrix(0, -skeleton);

  for (std::size_t p = 0; p < parameters.size(); ++p) {
    const Parameter& param = parameters[p];
    const MomentClass& cls = problem.classes[param.class_id];
    Mat basis = Mat::Zero(n, n);
    if (cls.self_paired) {
      if (param.imaginary) {
        basis(param.row, param.col) = Complex(0.0, 1.0);
        basis(param.col, param.row) = Complex(0.0, -1.0);
      } else {
        basis(param.row, param.col) = 1.0;
        basis(param.col, param.row) = 1.0;
      }
    } else {
      basis(param.row, param.col) = param.imaginary ? Complex(0.0, 1.0) : Complex(1.0, 0.0);
    }
    const Mat basis_adj = basis.adjoint();
    Mat contribution = Mat::Zero(dim, dim);
    for (const auto& pos : cls.positions)
      contribution.block(pos.row_word * n, pos.col_word * n, n, n) +=
          pos.conjugated ? basis_adj : basis;
    emit_matrix(p + 1, contribution);
  }
  if (!out) throw IoError("export_sdpa: write failed for " + path);
}

}  // namespace steerlab
