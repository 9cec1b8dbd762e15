#pragma once

#include "vertexcalc/heisenberg.hpp"
#include "vertexcalc/jacobi.hpp"
#include "vertexcalc/report.hpp"

#include <array>
#include <vector>

namespace vcalc {

VerificationReport check_jacobi(const VOAInstance& V, const GradedVector& u, const GradedVector& v,
                                const GradedVector& w, const Window& win);

// Y(v,x)1 = e^{xL(-1)}v on the coefficients x^k, |k| <= order.
VerificationReport check_creation(const VOAInstance& V, const GradedVector& v, long order);

// Y(u,x)v = e^{xL(-1)}Y(v,-x)u on the coefficients x^k, |k| <= order.
VerificationReport check_skew_symmetry(const VOAInstance& V, const GradedVector& u, const GradedVector& v,
                                       long order);

// [L(j), Y(v,x)] for j = -1, 0, 1 on every in-budget basis vector; win has one variable.
VerificationReport check_commutators(const VOAInstance& V, const GradedVector& v, const Window& win);

// Conjugation formulas; each is also available on its own.
std::vector<VerificationReport> conjugation_reports(const VOAInstance& V, const GradedVector& v, long order);
VerificationReport check_conjugation(const VOAInstance& V, const GradedVector& v, long order);

VerificationReport check_scaling_conjugation(const VOAInstance& V, const GradedVector& v, long order);
VerificationReport check_l1_conjugation(const VOAInstance& V, const GradedVector& v, long order);
VerificationReport check_translation(const VOAInstance& V, const GradedVector& v, long order);
// The three sl(2) identities with f(x) = x on every in-budget basis vector.
VerificationReport check_sl2_identity(const VOAInstance& V, int which, long order);

// sigma maps position i of the permuted triple to position sigma[i] of (u, v, w).
using Permutation3 = std::array<int, 3>;

VerificationReport check_iterate_skew_step(const VOAInstance& V, const GradedVector& u, const GradedVector& v,
                                           const GradedVector& w, const Window& win);
VerificationReport check_transposed_step(const VOAInstance& V, const GradedVector& u, const GradedVector& v,
                                         const GradedVector& w, const Window& win);
VerificationReport s3_transform_check(const VOAInstance& V, const GradedVector& u, const GradedVector& v,
                                      const GradedVector& w, const Permutation3& perm, const Window& win);

std::string to_string(const Permutation3& p);

// Integer L(0) eigenvalue of a homogeneous vector, computed from omega.
long l0_eigenvalue(const VOAInstance& V, const VModule& M, std::size_t index);

} // namespace vcalc
