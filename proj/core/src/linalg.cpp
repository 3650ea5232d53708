#include "regmaps/linalg.hpp"

namespace regmaps {

GaussianMatrix conjugate_transpose(const GaussianMatrix& m) {
  GaussianMatrix t(m.cols(), m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) t(j, i) = m(i, j).conj();
  return t;
}

GaussianMatrix to_gaussian(const RationalMatrix& m) {
  GaussianMatrix g(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) g(i, j) = GaussianRational(m(i, j));
  return g;
}

namespace {

template <class T>
Matrix<T> cayley_impl(const Matrix<T>& a) {
  if (a.rows() != a.cols()) throw InvalidArgument("Cayley transform needs a square matrix");
  auto id = Matrix<T>::identity(a.rows());
  return (id - a) * inverse(id + a);
}

}  // namespace

RationalMatrix cayley(const RationalMatrix& skew) {
  if (!is_skew_symmetric(skew)) throw InvalidArgument("Cayley transform input is not skew-symmetric");
  return cayley_impl(skew);
}

GaussianMatrix cayley(const GaussianMatrix& skew_hermitian) {
  if (!is_skew_hermitian(skew_hermitian)) throw InvalidArgument("Cayley transform input is not skew-Hermitian");
  return cayley_impl(skew_hermitian);
}

RationalMatrix realify(const GaussianMatrix& m) {
  RationalMatrix r(2 * m.rows(), 2 * m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      const auto& z = m(i, j);
      r(2 * i, 2 * j) = z.re;
      r(2 * i, 2 * j + 1) = -z.im;
      r(2 * i + 1, 2 * j) = z.im;
      r(2 * i + 1, 2 * j + 1) = z.re;
    }
  return r;
}

bool is_skew_symmetric(const RationalMatrix& m) {
  if (m.rows() != m.cols()) return false;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (m(i, j) != -m(j, i)) return false;
  return true;
}

bool is_skew_hermitian(const GaussianMatrix& m) {
  if (m.rows() != m.cols()) return false;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (!(m(i, j) == -m(j, i).conj())) return false;
  return true;
}

}  // namespace regmaps
