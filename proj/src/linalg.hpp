#pragma once

#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace flipcycles::linalg {

using Int = boost::multiprecision::cpp_int;
using Vec = std::vector<Int>;
using Mat = std::vector<Vec>;

Int dot(const Vec& a, const Vec& b);
// Bareiss elimination; m is square.
Int det(Mat m);
int rank(Mat m);
// Null vector of an (r-1) x r matrix of full row rank, by signed minors.
Vec cofactor_null(const Mat& m);

}  // namespace flipcycles::linalg
