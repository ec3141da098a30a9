// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace irsce {

/// Gram matrix QᵀQ* is singular to working precision. Reported, never
/// silently regularized; callers decide whether to exclude the data point.
class SingularGramError : public std::runtime_error {
public:
    SingularGramError(const std::string& what, double min_eigenvalue, double max_eigenvalue)
        : std::runtime_error(what), min_eig_(min_eigenvalue), max_eig_(max_eigenvalue) {}

    double min_eigenvalue() const { return min_eig_; }
    double max_eigenvalue() const { return max_eig_; }

private:
    double min_eig_;
    double max_eig_;
};

/// Training design Q·X too ill-conditioned for a trustworthy LS solve.
/// Carries the condition estimate so callers can distinguish "large but
/// finite loss" from numerical breakdown.
class SingularDesignError : public std::runtime_error {
public:
    SingularDesignError(const std::string& what, double condition_estimate)
        : std::runtime_error(what), cond_(condition_estimate) {}

    double condition_estimate() const { return cond_; }

private:
    double cond_;
};

}  // namespace irsce
