#pragma once

#include "vertexcalc/contragredient.hpp"
#include "vertexcalc/heisenberg.hpp"
#include "vertexcalc/moduli.hpp"
#include "vertexcalc/report.hpp"

#include <stdexcept>
#include <vector>

namespace vcalc {

struct DomainViolation : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// nu(Q)(v_1, ..., v_n) = Y(a_1^{-L(0)} v_1, z_1) ... Y(a_{n-1}^{-L(0)} v_{n-1}, z_{n-1}) a_n^{-L(0)} v_n
// for Q with standard coordinates and real rational data, |z_1| > ... > |z_{n-1}| > 0.
// Every intermediate vector is cut to weight <= N; the result keeps weights <= target.
GradedVector nu_vector(const VOAInstance& V, const ModuliElement& Q, const std::vector<GradedVector>& vectors, int N,
                       int target);

struct NuValue {
    Rational value;
    // The value did not change between cutoffs N-2, N-1 and N.
    bool stable = false;
};
NuValue nu_evaluate(const VOAInstance& V, const ModuliElement& Q, const std::vector<GradedVector>& vectors,
                    const DualVector& dual, int N);

// nu(Q1)(v_1, ..., P_{<=N} nu(Q2)(v_i, ..., v_{i+n-1}), ...): the contraction at puncture i.
GradedVector contraction(const VOAInstance& V, const ModuliElement& Q1, int i, const ModuliElement& Q2,
                         const std::vector<GradedVector>& vectors, int N, int target);

struct SewingAxiomResult {
    VerificationReport report;
    std::vector<int> cutoffs;
    std::vector<Rational> differences;  // nu(sewn) - contraction, one per cutoff
};
// Passes when every difference is 0 or |difference| strictly decreases over the schedule.
SewingAxiomResult check_sewing_axiom(const VOAInstance& V, const ModuliElement& Q1, int i, const ModuliElement& Q2,
                                     const std::vector<GradedVector>& vectors, const DualVector& dual,
                                     const std::vector<int>& schedule);

} // namespace vcalc
