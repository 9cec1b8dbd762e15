#pragma once

#include "vertexcalc/formal_series.hpp"
#include "vertexcalc/heisenberg.hpp"
#include "vertexcalc/report.hpp"

#include <functional>
#include <string>

namespace vcalc {

// Three-term Jacobi identity in (x0, x1, x2) for abstract operators:
//   x0^-1 d((x1-x2)/x0) A(x1,x2) - x0^-1 d((x2-x1)/-x0) B(x1,x2) = x2^-1 d((x1-x0)/x2) C(x0,x2)
// where A = Y(u,x1)Y(v,x2)w, B = Y(v,x2)Y(u,x1)w, C = Y(Y(u,x0)v,x2)w, given by modes.
struct JacobiSystem {
    std::string identity;
    std::string params;
    // Top levels of the three inputs; bound the finite delta sums.
    int level_u = 0;
    int level_v = 0;
    int level_w = 0;
    // Truncation levels of the spaces holding v_n w, u_m w, u_m v and the output.
    int max_product = 0;
    int max_reversed = 0;
    int max_iterate = 0;
    int max_out = 0;
    std::function<GradedVector(long m, long n)> product;   // u_m v_n w
    std::function<GradedVector(long n, long m)> reversed;  // v_n u_m w
    std::function<GradedVector(long m, long n)> iterate;   // (u_m v)_n w
};

// Compares both sides at every in-budget coefficient of win (variables x0, x1, x2).
VerificationReport evaluate_jacobi(const JacobiSystem& s, const Window& win);

// Systems for V acting on itself and on a module.
JacobiSystem voa_jacobi_system(const VOAInstance& V, const GradedVector& u, const GradedVector& v,
                               const GradedVector& w);
JacobiSystem module_jacobi_system(const VOAInstance& V, const VModule& M, const GradedVector& u,
                                  const GradedVector& v, const GradedVector& w);

inline int top_level(const GradedVector& v) { return v.is_zero() ? 0 : v.top_weight(); }

} // namespace vcalc
