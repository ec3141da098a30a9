// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>

#include "irsce/types.hpp"

namespace irsce::test {

inline double rel_err(const CMatrix& actual, const CMatrix& expected) {
    const double denom = expected.norm();
    return denom == 0.0 ? actual.norm() : (actual - expected).norm() / denom;
}

inline double rel_err(const CVector& actual, const CVector& expected) {
    const double denom = expected.norm();
    return denom == 0.0 ? actual.norm() : (actual - expected).norm() / denom;
}

inline double rel_err(double actual, double expected) {
    return expected == 0.0 ? std::abs(actual) : std::abs(actual - expected) / std::abs(expected);
}

}  // namespace irsce::test
