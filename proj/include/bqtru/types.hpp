#pragma once

#include <cstdint>

#include <Eigen/Dense>
#include <boost/multiprecision/cpp_int.hpp>

namespace bqtru {

using i64 = std::int64_t;
using u64 = std::uint64_t;

template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

using IntVector = Vector<i64>;
using IntMatrix = Matrix<i64>;

using BigInt = boost::multiprecision::cpp_int;

/// Natural log of a positive big integer, accurate to double precision.
double log_big(const BigInt& x);
inline double log2_big(const BigInt& x) { return log_big(x) / 0.69314718055994530942; }

}  // namespace bqtru
