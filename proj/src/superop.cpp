#include "ctur/superop.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>

#include "ctur/errors.hpp"
#include "ctur/model.hpp"

namespace ctur {

namespace {

constexpr Complex kI{0.0, 1.0};

// Eigenvalues below this fraction of the spectral radius are exact zeros
// for kernel counting, independent of the gap-relative rule.
constexpr double kZeroFloor = 1e-10;

ComplexMatrix identity(std::size_t d) {
  return ComplexMatrix::Identity(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
}

void require_square(const ComplexMatrix& m, const char* what) {
  if (m.rows() != m.cols()) {
    throw DimensionError(std::string(what) + ": expected a square matrix, got " +
                         std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  }
}

}  // namespace

double max_abs(const ComplexMatrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

ComplexVector vectorize(const ComplexMatrix& rho) {
  require_square(rho, "vectorize");
  return Eigen::Map<const ComplexVector>(rho.data(), rho.size());
}

ComplexMatrix devectorize(const ComplexVector& v, std::size_t d) {
  const auto n = static_cast<Eigen::Index>(d);
  if (v.size() != n * n) {
    throw DimensionError("devectorize: vector of length " + std::to_string(v.size()) +
                         " does not hold a " + std::to_string(d) + "x" + std::to_string(d) +
                         " matrix");
  }
  return Eigen::Map<const ComplexMatrix>(v.data(), n, n);
}

// ---------------------------------------------------------------------------

SuperOperator::SuperOperator(std::size_t dim, ComplexMatrix matrix)
    : dim_(dim), matrix_(std::move(matrix)) {
  const auto side = static_cast<Eigen::Index>(dim * dim);
  if (matrix_.rows() != side || matrix_.cols() != side) {
    throw DimensionError("SuperOperator: matrix is " + std::to_string(matrix_.rows()) + "x" +
                         std::to_string(matrix_.cols()) + ", expected side " +
                         std::to_string(side));
  }
}

SuperOperator SuperOperator::zero(std::size_t dim) {
  const auto side = static_cast<Eigen::Index>(dim * dim);
  return {dim, ComplexMatrix::Zero(side, side)};
}

SuperOperator SuperOperator::identity(std::size_t dim) {
  const auto side = static_cast<Eigen::Index>(dim * dim);
  return {dim, ComplexMatrix::Identity(side, side)};
}

ComplexMatrix SuperOperator::apply(const ComplexMatrix& rho) const {
  if (static_cast<std::size_t>(rho.rows()) != dim_) {
    throw DimensionError("SuperOperator::apply: operand dimension mismatch");
  }
  return devectorize(matrix_ * vectorize(rho), dim_);
}

void SuperOperator::require_same_dim(const SuperOperator& other) const {
  if (dim_ != other.dim_) {
    throw DimensionError("SuperOperator: dimension mismatch (" + std::to_string(dim_) + " vs " +
                         std::to_string(other.dim_) + ")");
  }
}

SuperOperator SuperOperator::operator+(const SuperOperator& other) const {
  require_same_dim(other);
  return {dim_, matrix_ + other.matrix_};
}

SuperOperator SuperOperator::operator-(const SuperOperator& other) const {
  require_same_dim(other);
  return {dim_, matrix_ - other.matrix_};
}

SuperOperator SuperOperator::operator*(const SuperOperator& other) const {
  require_same_dim(other);
  return {dim_, matrix_ * other.matrix_};
}

SuperOperator SuperOperator::operator*(Complex scale) const { return {dim_, matrix_ * scale}; }

SuperOperator& SuperOperator::operator+=(const SuperOperator& other) {
  require_same_dim(other);
  matrix_ += other.matrix_;
  return *this;
}

// ---------------------------------------------------------------------------

SuperOperator sandwich(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_square(a, "sandwich");
  require_square(b, "sandwich");
  if (a.rows() != b.rows()) throw DimensionError("sandwich: operands differ in dimension");
  ComplexMatrix m = Eigen::kroneckerProduct(b.transpose(), a);
  return {static_cast<std::size_t>(a.rows()), std::move(m)};
}

SuperOperator left_multiply(const ComplexMatrix& a) {
  require_square(a, "left_multiply");
  return sandwich(a, identity(static_cast<std::size_t>(a.rows())));
}

SuperOperator right_multiply(const ComplexMatrix& b) {
  require_square(b, "right_multiply");
  return sandwich(identity(static_cast<std::size_t>(b.rows())), b);
}

SuperOperator commutator_generator(const ComplexMatrix& h) {
  return (left_multiply(h) - right_multiply(h)) * (-kI);
}

SuperOperator dissipator(const ComplexMatrix& jump) {
  const ComplexMatrix ldl = jump.adjoint() * jump;
  return sandwich(jump, jump.adjoint()) - (left_multiply(ldl) + right_multiply(ldl)) * 0.5;
}

RowVector trace_row(std::size_t d) { return vectorize(identity(d)).adjoint(); }

Complex trace_of(const SuperOperator& op, const ComplexMatrix& rho) {
  return (trace_row(op.dim()) * op.matrix() * vectorize(rho))(0);
}

double trace_defect(const SuperOperator& op) {
  const RowVector row = trace_row(op.dim()) * op.matrix();
  return row.size() == 0 ? 0.0 : row.cwiseAbs().maxCoeff();
}

SuperOperator build_liouvillian(const LindbladModel& model, const Tolerances& tol) {
  SuperOperator gen = commutator_generator(model.hamiltonian());
  for (const auto& ch : model.channels()) gen += dissipator(ch.jump);

  const double scale = std::max(1.0, max_abs(gen.matrix()));
  if (trace_defect(gen) > tol.trace_preservation * scale) {
    throw InternalConsistencyError("build_liouvillian: assembled generator is not trace preserving");
  }
  return gen;
}

// ---------------------------------------------------------------------------

SteadyState steady_state(const SuperOperator& generator, const Tolerances& tol) {
  const std::size_t d = generator.dim();
  const ComplexMatrix& l = generator.matrix();
  const double scale = std::max(1.0, max_abs(l));
  if (trace_defect(generator) > tol.trace_preservation * scale) {
    throw ValidationError("steady_state: generator is not trace preserving");
  }

  Eigen::ComplexEigenSolver<ComplexMatrix> es(l, /*computeEigenvectors=*/true);
  if (es.info() != Eigen::Success) {
    throw InternalConsistencyError("steady_state: eigendecomposition failed");
  }
  const ComplexVector& lambda = es.eigenvalues();
  const Eigen::Index n = lambda.size();

  const double radius = lambda.cwiseAbs().maxCoeff();
  const double floor = kZeroFloor * std::max(1.0, radius);

  double gap = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < n; ++i) {
    if (std::abs(lambda(i)) > floor) gap = std::min(gap, std::abs(lambda(i).real()));
  }

  std::size_t kernel_dim = 0;
  Eigen::Index nearest = 0;
  for (Eigen::Index i = 0; i < n; ++i) {
    const double mag = std::abs(lambda(i));
    if (mag <= floor || mag < gap * tol.kernel_rel) ++kernel_dim;
    if (mag < std::abs(lambda(nearest))) nearest = i;
  }
  if (kernel_dim != 1) {
    throw NonUniqueSteadyState("steady_state: kernel dimension is " + std::to_string(kernel_dim));
  }
  if (!(gap > floor)) {
    // Undamped oscillating modes: the kernel vector is not an attractor.
    throw NonUniqueSteadyState("steady_state: vanishing spectral gap");
  }

  ComplexMatrix rho = devectorize(es.eigenvectors().col(nearest), d);
  const Complex tr = rho.trace();
  if (std::abs(tr) < 1e-14) {
    throw InternalConsistencyError("steady_state: kernel vector is traceless");
  }
  rho /= tr;
  rho = (0.5 * (rho + rho.adjoint())).eval();
  rho /= rho.trace().real();

  SteadyState ss;
  ss.residual_norm = (l * vectorize(rho)).cwiseAbs().maxCoeff();
  ss.kernel_dim = kernel_dim;
  ss.spectral_gap = gap;
  if (ss.residual_norm > tol.steady_residual * scale) {
    throw InternalConsistencyError("steady_state: residual " + std::to_string(ss.residual_norm) +
                                   " above tolerance");
  }

  Eigen::SelfAdjointEigenSolver<ComplexMatrix> pos(rho, Eigen::EigenvaluesOnly);
  const double min_eig = pos.eigenvalues().minCoeff();
  if (min_eig < -tol.positivity) {
    throw PositivityViolation("steady_state: eigenvalue " + std::to_string(min_eig));
  }
  ss.rho = std::move(rho);
  return ss;
}

SuperOperator stationary_projector(const SteadyState& ss) {
  const auto d = static_cast<std::size_t>(ss.rho.rows());
  ComplexMatrix p = vectorize(ss.rho) * trace_row(d);
  return {d, std::move(p)};
}

DrazinInverse drazin_inverse(const SuperOperator& generator, const SteadyState& ss,
                             const Tolerances& tol) {
  const std::size_t d = generator.dim();
  if (static_cast<std::size_t>(ss.rho.rows()) != d) {
    throw DimensionError("drazin_inverse: steady state does not match generator");
  }

  Eigen::JacobiSVD<ComplexMatrix> svd(generator.matrix(), Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Eigen::VectorXd& s = svd.singularValues();
  const double smax = s.size() > 0 ? s(0) : 0.0;
  const double cutoff = tol.pinv_rcond * smax;

  Eigen::VectorXd inv = Eigen::VectorXd::Zero(s.size());
  double smin = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (s(i) > cutoff && s(i) > 0.0) {
      inv(i) = 1.0 / s(i);
      smin = std::min(smin, s(i));
    }
  }
  const ComplexMatrix pinv = svd.matrixV() * inv.asDiagonal() * svd.matrixU().adjoint();

  const SuperOperator q = SuperOperator::identity(d) - stationary_projector(ss);
  DrazinInverse out;
  out.op = q * SuperOperator(d, pinv) * q;
  out.condition = std::isfinite(smin) ? smax / smin : 0.0;
  out.ill_conditioned = out.condition > tol.condition_limit;
  return out;
}

ComplexMatrix expm(const ComplexMatrix& m, double t) {
  require_square(m, "expm");
  const ComplexMatrix scaled = m * t;
  return scaled.exp();
}

}  // namespace ctur
