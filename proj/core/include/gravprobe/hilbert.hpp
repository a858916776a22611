#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstddef>
#include <string>
#include <variant>
#include <vector>

namespace gravprobe {

using cplx = std::complex<double>;

// Discrete eigenbasis: one label per basis vector, e.g. {n} or {nx, ny}.
struct SpectralBasis {
  std::vector<std::vector<int>> labels;
  bool operator==(const SpectralBasis&) const = default;
};

enum class Axis { position, momentum };

// Uniform grid of `points` samples from x_min to x_max inclusive.
// Amplitudes on a grid carry the sqrt(spacing) weight, so the plain
// Euclidean inner product approximates the integral.
struct Grid1d {
  double x_min = 0.0;
  double x_max = 1.0;
  std::size_t points = 8;
  Axis axis = Axis::position;

  double spacing() const { return (x_max - x_min) / double(points - 1); }
  double point(std::size_t i) const { return x_min + double(i) * spacing(); }
  std::vector<double> coordinates() const;
  bool operator==(const Grid1d&) const = default;
};

// Interior points of a Dirichlet box [-half_width, half_width].
Grid1d dirichlet_grid(double half_width, std::size_t points);
Grid1d dirichlet_grid(double left, double right, std::size_t points);

// Tensor grid; index = ix * y.points + iy.
struct Grid2d {
  Grid1d x;
  Grid1d y;
  bool operator==(const Grid2d&) const = default;
};

class BasisDescriptor {
 public:
  using Kind = std::variant<SpectralBasis, Grid1d, Grid2d>;

  static BasisDescriptor spectral(std::vector<std::vector<int>> labels);
  // labels {0}, {1}, ..., {dimension-1}
  static BasisDescriptor spectral(std::size_t dimension);
  static BasisDescriptor grid1d(const Grid1d& grid);
  static BasisDescriptor grid2d(const Grid2d& grid);

  std::size_t dimension() const { return dimension_; }
  const Kind& kind() const { return kind_; }
  bool is_spectral() const { return std::holds_alternative<SpectralBasis>(kind_); }
  bool is_grid1d() const { return std::holds_alternative<Grid1d>(kind_); }
  bool is_grid2d() const { return std::holds_alternative<Grid2d>(kind_); }
  const SpectralBasis& spectral_basis() const;
  const Grid1d& grid() const;
  const Grid2d& grid2() const;

  // index of a spectral label; IndexError when absent
  std::size_t index_of(const std::vector<int>& label) const;
  std::string describe() const;

  bool operator==(const BasisDescriptor& o) const {
    return dimension_ == o.dimension_ && kind_ == o.kind_;
  }

 private:
  explicit BasisDescriptor(Kind kind);
  Kind kind_;
  std::size_t dimension_ = 0;
};

class StateVector {
 public:
  StateVector(BasisDescriptor basis, Eigen::VectorXcd amplitudes);

  static StateVector basis_state(const BasisDescriptor& basis, std::size_t index);

  const BasisDescriptor& basis() const { return basis_; }
  const Eigen::VectorXcd& amplitudes() const { return amplitudes_; }
  std::size_t dimension() const { return basis_.dimension(); }
  cplx operator[](std::size_t i) const { return amplitudes_(Eigen::Index(i)); }

  double norm() const { return amplitudes_.norm(); }
  StateVector normalized() const;
  StateVector scaled(cplx factor) const;

 private:
  BasisDescriptor basis_;
  Eigen::VectorXcd amplitudes_;
};

class HermitianOperator {
 public:
  // Checks hermiticity to 1e-12 relative to the largest entry, then
  // stores the symmetrized matrix.
  HermitianOperator(BasisDescriptor basis, const Eigen::MatrixXcd& matrix);
  HermitianOperator(BasisDescriptor basis, const Eigen::MatrixXd& matrix);

  static HermitianOperator diagonal(const BasisDescriptor& basis,
                                    const std::vector<double>& values);
  static HermitianOperator zero(const BasisDescriptor& basis);

  const BasisDescriptor& basis() const { return basis_; }
  const Eigen::MatrixXcd& matrix() const { return matrix_; }
  std::size_t dimension() const { return basis_.dimension(); }
  cplx operator()(std::size_t i, std::size_t j) const {
    return matrix_(Eigen::Index(i), Eigen::Index(j));
  }

  bool is_real() const { return is_real_; }
  Eigen::MatrixXd real_matrix() const { return matrix_.real(); }

 private:
  BasisDescriptor basis_;
  Eigen::MatrixXcd matrix_;
  bool is_real_ = false;
};

struct Term {
  cplx weight;
  StateVector state;
};

cplx inner(const StateVector& a, const StateVector& b);

// normalized sum of weighted states
StateVector superpose(const std::vector<Term>& terms);

// exp(-i E_k t / hbar) applied to each amplitude of a state given in the
// energy eigenbasis
StateVector evolve_diagonal(const StateVector& psi, const std::vector<double>& energies,
                            double t, double hbar = 1.0);

StateVector apply(const HermitianOperator& op, const StateVector& psi);

cplx expectation(const HermitianOperator& op, const StateVector& psi);

}  // namespace gravprobe
