#include "gravprobe/hilbert.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <sstream>

#include "gravprobe/errors.hpp"

namespace gravprobe {

std::vector<double> Grid1d::coordinates() const {
  std::vector<double> xs(points);
  for (std::size_t i = 0; i < points; ++i) xs[i] = point(i);
  return xs;
}

Grid1d dirichlet_grid(double half_width, std::size_t points) {
  return dirichlet_grid(-half_width, half_width, points);
}

Grid1d dirichlet_grid(double left, double right, std::size_t points) {
  require(right > left, "box must have positive width");
  require(points >= 8, "grid needs at least eight points");
  const double h = (right - left) / double(points + 1);
  return Grid1d{left + h, right - h, points, Axis::position};
}

BasisDescriptor::BasisDescriptor(Kind kind) : kind_(std::move(kind)) {
  if (const auto* s = std::get_if<SpectralBasis>(&kind_)) {
    dimension_ = s->labels.size();
    std::set<std::vector<int>> seen(s->labels.begin(), s->labels.end());
    require(seen.size() == s->labels.size(), "spectral labels must be unique");
  } else if (const auto* g = std::get_if<Grid1d>(&kind_)) {
    require(g->points >= 8 && g->x_max > g->x_min, "grid needs eight points and positive extent");
    dimension_ = g->points;
  } else {
    const auto& g2 = std::get<Grid2d>(kind_);
    require(g2.x.points >= 8 && g2.y.points >= 8 && g2.x.x_max > g2.x.x_min &&
                g2.y.x_max > g2.y.x_min,
            "grid needs eight points and positive extent per axis");
    dimension_ = g2.x.points * g2.y.points;
  }
  require(dimension_ >= 2, "basis dimension must be at least 2");
}

BasisDescriptor BasisDescriptor::spectral(std::vector<std::vector<int>> labels) {
  return BasisDescriptor(SpectralBasis{std::move(labels)});
}

BasisDescriptor BasisDescriptor::spectral(std::size_t dimension) {
  std::vector<std::vector<int>> labels(dimension);
  for (std::size_t i = 0; i < dimension; ++i) labels[i] = {int(i)};
  return spectral(std::move(labels));
}

BasisDescriptor BasisDescriptor::grid1d(const Grid1d& grid) { return BasisDescriptor(grid); }

BasisDescriptor BasisDescriptor::grid2d(const Grid2d& grid) { return BasisDescriptor(grid); }

const SpectralBasis& BasisDescriptor::spectral_basis() const {
  if (!is_spectral()) throw BasisMismatch("basis is not spectral");
  return std::get<SpectralBasis>(kind_);
}

const Grid1d& BasisDescriptor::grid() const {
  if (!is_grid1d()) throw BasisMismatch("basis is not a 1D grid");
  return std::get<Grid1d>(kind_);
}

const Grid2d& BasisDescriptor::grid2() const {
  if (!is_grid2d()) throw BasisMismatch("basis is not a 2D grid");
  return std::get<Grid2d>(kind_);
}

std::size_t BasisDescriptor::index_of(const std::vector<int>& label) const {
  const auto& labels = spectral_basis().labels;
  auto it = std::find(labels.begin(), labels.end(), label);
  if (it == labels.end()) throw IndexError("label not present in basis");
  return std::size_t(it - labels.begin());
}

std::string BasisDescriptor::describe() const {
  std::ostringstream os;
  if (is_spectral()) {
    os << "spectral(" << dimension_ << ")";
  } else if (is_grid1d()) {
    const auto& g = grid();
    os << (g.axis == Axis::position ? "grid1d[x " : "grid1d[p ") << g.x_min << ", " << g.x_max
       << "; " << g.points << "]";
  } else {
    const auto& g = grid2();
    os << "grid2d[" << g.x.points << "x" << g.y.points << "]";
  }
  return os.str();
}

StateVector::StateVector(BasisDescriptor basis, Eigen::VectorXcd amplitudes)
    : basis_(std::move(basis)), amplitudes_(std::move(amplitudes)) {
  if (std::size_t(amplitudes_.size()) != basis_.dimension())
    throw BasisMismatch("amplitude count does not match basis dimension");
  require(amplitudes_.allFinite(), "state amplitudes must be finite");
}

StateVector StateVector::basis_state(const BasisDescriptor& basis, std::size_t index) {
  if (index >= basis.dimension()) throw IndexError("basis index out of range");
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(Eigen::Index(basis.dimension()));
  v(Eigen::Index(index)) = 1.0;
  return {basis, v};
}

StateVector StateVector::normalized() const {
  const double n = norm();
  if (!(n > 0)) throw DegenerateSuperposition("cannot normalize a zero vector");
  return {basis_, amplitudes_ / n};
}

StateVector StateVector::scaled(cplx factor) const { return {basis_, amplitudes_ * factor}; }

namespace {

Eigen::MatrixXcd checked_hermitian(const Eigen::MatrixXcd& m) {
  require(m.rows() == m.cols(), "operator matrix must be square");
  require(m.allFinite(), "operator entries must be finite");
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  const double asym = (m - m.adjoint()).cwiseAbs().maxCoeff();
  if (asym > 1e-12 * scale)
    throw InvalidArgument("operator is not Hermitian (asymmetry " + std::to_string(asym) + ")");
  return 0.5 * (m + m.adjoint());
}

}  // namespace

HermitianOperator::HermitianOperator(BasisDescriptor basis, const Eigen::MatrixXcd& matrix)
    : basis_(std::move(basis)), matrix_(checked_hermitian(matrix)) {
  if (std::size_t(matrix_.rows()) != basis_.dimension())
    throw BasisMismatch("operator size does not match basis dimension");
  is_real_ = matrix_.imag().cwiseAbs().maxCoeff() == 0.0;
}

HermitianOperator::HermitianOperator(BasisDescriptor basis, const Eigen::MatrixXd& matrix)
    : HermitianOperator(std::move(basis), Eigen::MatrixXcd(matrix.cast<cplx>())) {}

HermitianOperator HermitianOperator::diagonal(const BasisDescriptor& basis,
                                              const std::vector<double>& values) {
  if (values.size() != basis.dimension())
    throw BasisMismatch("diagonal length does not match basis dimension");
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(Eigen::Index(values.size()), Eigen::Index(values.size()));
  for (std::size_t i = 0; i < values.size(); ++i) m(Eigen::Index(i), Eigen::Index(i)) = values[i];
  return {basis, m};
}

HermitianOperator HermitianOperator::zero(const BasisDescriptor& basis) {
  const auto n = Eigen::Index(basis.dimension());
  return {basis, Eigen::MatrixXd(Eigen::MatrixXd::Zero(n, n))};
}

cplx inner(const StateVector& a, const StateVector& b) {
  if (!(a.basis() == b.basis())) throw BasisMismatch("inner product across different bases");
  return a.amplitudes().dot(b.amplitudes());
}

StateVector superpose(const std::vector<Term>& terms) {
  require(!terms.empty(), "superposition needs at least one term");
  const auto& basis = terms.front().state.basis();
  Eigen::VectorXcd sum = Eigen::VectorXcd::Zero(Eigen::Index(basis.dimension()));
  for (const auto& t : terms) {
    if (!(t.state.basis() == basis)) throw BasisMismatch("superposing states from different bases");
    sum += t.weight * t.state.amplitudes();
  }
  const double n = sum.norm();
  if (n < 1e-300) throw DegenerateSuperposition("superposition has zero norm");
  return {basis, sum / n};
}

StateVector evolve_diagonal(const StateVector& psi, const std::vector<double>& energies, double t,
                            double hbar) {
  if (energies.size() != psi.dimension())
    throw BasisMismatch("energy list does not match state dimension");
  Eigen::VectorXcd out = psi.amplitudes();
  for (std::size_t k = 0; k < energies.size(); ++k) {
    const double phase = std::fmod(energies[k] * t / hbar, 2.0 * std::numbers::pi);
    out(Eigen::Index(k)) *= std::polar(1.0, -phase);
  }
  return {psi.basis(), out};
}

StateVector apply(const HermitianOperator& op, const StateVector& psi) {
  if (!(op.basis() == psi.basis())) throw BasisMismatch("operator and state bases differ");
  return {psi.basis(), op.matrix() * psi.amplitudes()};
}

cplx expectation(const HermitianOperator& op, const StateVector& psi) {
  return inner(psi, apply(op, psi));
}

}  // namespace gravprobe
