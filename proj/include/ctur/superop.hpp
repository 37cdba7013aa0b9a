#pragma once

// Vectorization conventions, superoperator assembly, steady states and the
// Drazin inverse of a Lindblad generator.
//
// Density matrices are column stacked: entry (i + d*j) of vec(rho) is
// rho(i, j), so that vec(A rho B) = (B^T kron A) vec(rho).

#include <complex>
#include <cstddef>

#include <Eigen/Dense>

#include "ctur/tolerances.hpp"

namespace ctur {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RowVector = Eigen::RowVectorXcd;

class LindbladModel;

ComplexVector vectorize(const ComplexMatrix& rho);
ComplexMatrix devectorize(const ComplexVector& v, std::size_t d);

/// Linear map on d x d matrices stored as a d^2 x d^2 matrix acting on
/// column-stacked density matrices.
class SuperOperator {
 public:
  SuperOperator() = default;
  SuperOperator(std::size_t dim, ComplexMatrix matrix);

  static SuperOperator zero(std::size_t dim);
  static SuperOperator identity(std::size_t dim);

  std::size_t dim() const { return dim_; }
  const ComplexMatrix& matrix() const { return matrix_; }

  ComplexMatrix apply(const ComplexMatrix& rho) const;

  SuperOperator operator+(const SuperOperator& other) const;
  SuperOperator operator-(const SuperOperator& other) const;
  SuperOperator operator*(const SuperOperator& other) const;
  SuperOperator operator*(Complex scale) const;
  SuperOperator& operator+=(const SuperOperator& other);

 private:
  void require_same_dim(const SuperOperator& other) const;

  std::size_t dim_ = 0;
  ComplexMatrix matrix_;
};

inline SuperOperator operator*(Complex scale, const SuperOperator& op) { return op * scale; }

/// rho -> A rho B.
SuperOperator sandwich(const ComplexMatrix& a, const ComplexMatrix& b);
/// rho -> A rho.
SuperOperator left_multiply(const ComplexMatrix& a);
/// rho -> rho B.
SuperOperator right_multiply(const ComplexMatrix& b);
/// rho -> -i[H, rho].
SuperOperator commutator_generator(const ComplexMatrix& h);
/// rho -> L rho L^dag - 1/2 {L^dag L, rho}.
SuperOperator dissipator(const ComplexMatrix& jump);

/// The row vector <1| = vec(I_d)^dag; <1| vec(X) = Tr X.
RowVector trace_row(std::size_t d);
Complex trace_of(const SuperOperator& op, const ComplexMatrix& rho);

/// Largest |entry| of <1| * op; zero for a trace-preserving generator.
double trace_defect(const SuperOperator& op);

SuperOperator build_liouvillian(const LindbladModel& model, const Tolerances& tol = {});

struct SteadyState {
  ComplexMatrix rho;
  double residual_norm = 0.0;
  std::size_t kernel_dim = 0;
  /// Smallest |Re lambda| over the non-kernel spectrum; +inf when the
  /// generator has no non-kernel eigenvalues (d = 1).
  double spectral_gap = 0.0;
};

/// Unique stationary state of a trace-preserving generator, from a dense
/// eigendecomposition. Throws NonUniqueSteadyState or PositivityViolation.
SteadyState steady_state(const SuperOperator& generator, const Tolerances& tol = {});

/// P = vec(rho_s) <1|, the spectral projector onto the stationary state.
SuperOperator stationary_projector(const SteadyState& ss);

struct DrazinInverse {
  SuperOperator op;
  /// sigma_max / sigma_min over the retained singular values.
  double condition = 0.0;
  bool ill_conditioned = false;
};

/// L^+ = (I - P) L^MP (I - P) with L^MP the SVD pseudoinverse.
DrazinInverse drazin_inverse(const SuperOperator& generator, const SteadyState& ss,
                             const Tolerances& tol = {});

/// exp(t * op) by scaling and squaring.
ComplexMatrix expm(const ComplexMatrix& m, double t = 1.0);

double max_abs(const ComplexMatrix& m);

}  // namespace ctur
