#include "nilj/tensor.hpp"

#include <sstream>

namespace nilj {

const char* to_string(Field f) { return f == Field::Rational ? "Q" : "Qi"; }

Vector zero_vector(std::size_t n) { return Vector(n); }

Vector basis_vector(std::size_t n, std::size_t i) {
  Vector v(n);
  v.at(i) = Scalar(1);
  return v;
}

BilinearTensor::BilinearTensor(std::size_t n, Field field) : n_(n), field_(field), a_(n * n * n) {
  if (n == 0) throw Error(ErrorCode::Degenerate, "algebra of dimension 0");
  if (n > 8) throw Error(ErrorCode::UnsupportedDim, "dimensions above 8 are not supported");
}

void BilinearTensor::set_coeff(std::size_t i, std::size_t j, std::size_t k, const Scalar& c) {
  if (i >= n_ || j >= n_ || k >= n_) throw Error(ErrorCode::DimensionMismatch, "basis index out of range");
  if (field_ == Field::Rational && !c.is_real())
    throw Error(ErrorCode::Precondition, "imaginary coefficient in a law over Q");
  a_[(i * n_ + j) * n_ + k] = c;
}

void BilinearTensor::set_product(std::size_t i, std::size_t j, const Vector& v) {
  if (v.size() != n_) throw Error(ErrorCode::DimensionMismatch, "product image has wrong length");
  for (std::size_t k = 0; k < n_; ++k) set_coeff(i, j, k, v[k]);
}

Vector BilinearTensor::image(std::size_t i, std::size_t j) const {
  return Vector(a_.begin() + (i * n_ + j) * n_, a_.begin() + (i * n_ + j + 1) * n_);
}

Vector BilinearTensor::product(const Vector& x, const Vector& y) const {
  return apply_bilinear<Scalar, Scalar>(n_, a_, x, y);
}

bool BilinearTensor::is_symmetric() const {
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = i + 1; j < n_; ++j)
      for (std::size_t k = 0; k < n_; ++k)
        if (!(coeff(i, j, k) == coeff(j, i, k))) return false;
  return true;
}

bool BilinearTensor::is_associative() const {
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j)
      for (std::size_t k = 0; k < n_; ++k) {
        const Vector ei = basis_vector(n_, i), ek = basis_vector(n_, k);
        const Vector left = product(image(i, j), ek);
        const Vector right = product(ei, image(j, k));
        if (left != right) return false;
      }
  return true;
}

bool BilinearTensor::is_zero() const {
  for (const auto& c : a_)
    if (!c.is_zero()) return false;
  return true;
}

StructureTensor::StructureTensor(std::size_t n, Field field) : law_(n, field) {}

StructureTensor StructureTensor::from_bilinear(const BilinearTensor& b) {
  if (!b.is_symmetric()) throw Error(ErrorCode::Precondition, "bilinear law is not symmetric");
  StructureTensor s;
  s.law_ = b;
  return s;
}

void StructureTensor::set_product(std::size_t i, std::size_t j, const Vector& v) {
  law_.set_product(i, j, v);
  law_.set_product(j, i, v);
}

void StructureTensor::set_coeff(std::size_t i, std::size_t j, std::size_t k, const Scalar& c) {
  law_.set_coeff(i, j, k, c);
  law_.set_coeff(j, i, k, c);
}

bool StructureTensor::is_real() const {
  for (const auto& c : coefficients())
    if (!c.is_real()) return false;
  return true;
}

StructureTensor StructureTensor::with_field(Field f) const {
  if (f == Field::Rational && !is_real())
    throw Error(ErrorCode::Precondition, "law has imaginary coefficients");
  StructureTensor out(dim(), f);
  for (std::size_t i = 0; i < dim(); ++i)
    for (std::size_t j = i; j < dim(); ++j) out.set_product(i, j, image(i, j));
  return out;
}

std::string StructureTensor::summary() const {
  std::ostringstream os;
  bool first = true;
  const std::size_t n = dim();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      const Vector v = image(i, j);
      bool nonzero = false;
      for (const auto& c : v) nonzero = nonzero || !c.is_zero();
      if (!nonzero) continue;
      if (!first) os << ", ";
      first = false;
      os << "e" << i + 1 << "*e" << j + 1 << " = ";
      bool first_term = true;
      for (std::size_t k = 0; k < n; ++k) {
        if (v[k].is_zero()) continue;
        const bool compound = !v[k].is_real() && sgn(v[k].re()) != 0;
        std::string coef = compound ? "(" + v[k].str() + ")" : v[k].str();
        if (!first_term) {
          if (!compound && coef.front() == '-') {
            os << " - ";
            coef.erase(0, 1);
          } else {
            os << " + ";
          }
        }
        first_term = false;
        if (coef == "1") os << "e" << k + 1;
        else if (coef == "-1") os << "-e" << k + 1;
        else os << coef << "*e" << k + 1;
      }
    }
  return first ? std::string("abelian") : os.str();
}

StructureTensor abelian(std::size_t n, Field field) { return StructureTensor(n, field); }

Vector product(const StructureTensor& phi, const Vector& x, const Vector& y) {
  return apply_bilinear<Scalar, Scalar>(phi.dim(), phi.coefficients(), x, y);
}

Vector jordan_defect(const StructureTensor& phi, const Vector& x, const Vector& y) {
  return jordan_defect_generic<Scalar, Scalar>(phi.dim(), phi.coefficients(), x, y);
}

std::vector<Vector> polarization_points(std::size_t n) {
  std::vector<Vector> points;
  for (std::size_t a = 0; a < n; ++a) points.push_back(basis_vector(n, a));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a; b < n; ++b) {
      Vector v = basis_vector(n, a);
      v[b] += Scalar(1);
      points.push_back(std::move(v));
    }
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a; b < n; ++b)
      for (std::size_t c = b; c < n; ++c) {
        Vector v = basis_vector(n, a);
        v[b] += Scalar(1);
        v[c] += Scalar(1);
        points.push_back(std::move(v));
      }
  return points;
}

bool is_jordan(const StructureTensor& phi) {
  const std::size_t n = phi.dim();
  for (const auto& x : polarization_points(n))
    for (std::size_t m = 0; m < n; ++m) {
      const Vector d = jordan_defect(phi, x, basis_vector(n, m));
      for (const auto& c : d)
        if (!c.is_zero()) return false;
    }
  return true;
}

bool is_associative(const StructureTensor& phi) { return phi.bilinear().is_associative(); }

StructureTensor transform(const StructureTensor& phi, const ScalarMatrix& f) {
  const std::size_t n = phi.dim();
  if (f.rows() != n || f.cols() != n) throw Error(ErrorCode::DimensionMismatch, "basis change has wrong size");
  const ScalarMatrix f_inv = inverse(f);
  bool real = phi.field() == Field::Rational;
  if (real) {
    for (std::size_t r = 0; r < n && real; ++r)
      for (std::size_t c = 0; c < n; ++c)
        if (!f(r, c).is_real()) {
          real = false;
          break;
        }
  }
  StructureTensor out(n, real ? Field::Rational : Field::Gaussian);
  std::vector<Vector> images;
  images.reserve(n);
  for (std::size_t j = 0; j < n; ++j) images.push_back(f.column(j));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) out.set_product(i, j, f_inv.apply(product(phi, images[i], images[j])));
  return out;
}

ScalarMatrix mult_operator(const StructureTensor& phi, const Vector& x) {
  const std::size_t n = phi.dim();
  if (x.size() != n) throw Error(ErrorCode::DimensionMismatch, "vector length does not match algebra dimension");
  ScalarMatrix m(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < n; ++i) {
      if (x[i].is_zero()) continue;
      for (std::size_t k = 0; k < n; ++k) m(k, j) += x[i] * phi.coeff(i, j, k);
    }
  }
  return m;
}

}  // namespace nilj
