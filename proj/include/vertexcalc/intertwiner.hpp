#pragma once

#include "vertexcalc/heisenberg.hpp"
#include "vertexcalc/report.hpp"

#include <map>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

namespace vcalc {

struct MixedShift : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Intertwining operator of type (W3; W1 W2) stored as explicit mode data.
// Mode k stands for w_{h+k} with the single shift h = h1 + h2 - h3, so that
// (w1)_{h+k} w2 sits at level l1 + l2 - k - 1 of W3.
class Intertwiner {
public:
    using Key = std::tuple<std::size_t, long, std::size_t>;  // (w1 basis, k, w2 basis)

    Intertwiner(const VModule& w1, const VModule& w2, const VModule& w3, Rational shift);

    // Y acting on W as an intertwiner of type (W; V W); W = V gives type (V; V V).
    static Intertwiner from_module_action(const VOAInstance& V, const VModule& W);

    const VModule& first() const { return *w1_; }
    const VModule& second() const { return *w2_; }
    const VModule& third() const { return *w3_; }
    const Rational& shift() const { return h_; }
    std::string type_name() const;

    GradedVector mode(const GradedVector& a, long k, const GradedVector& b) const;
    const std::map<Key, GradedVector>& entries() const { return table_; }
    void set(std::size_t a, long k, std::size_t b, GradedVector value);
    // Adds delta to coefficient t of (a)_k b, creating the entry if needed.
    void mutate(std::size_t a, long k, std::size_t b, std::size_t t, const Rational& delta);

private:
    const VModule* w1_;
    const VModule* w2_;
    const VModule* w3_;
    Rational h_;
    std::map<Key, GradedVector> table_;
};

// Default window: every stored mode and every V mode reaching the truncations.
Window intertwiner_window(const Intertwiner& I);

VerificationReport check_intertwiner_grading(const Intertwiner& I);
VerificationReport check_intertwiner_jacobi(const Intertwiner& I, const GradedVector& v,
                                            const GradedVector& a, const GradedVector& b, const Window& win);
VerificationReport check_intertwiner_derivative(const Intertwiner& I, const VOAInstance& V);

// Grading and lower truncation, the Jacobi identity for each probe against all
// basis pairs, and the L(-1)-derivative property.  Probes default to the basis
// of V up to weight 2.
VerificationReport check_intertwiner(const Intertwiner& I, const VOAInstance& V, const Window& win,
                                     std::vector<GradedVector> probes = {});

} // namespace vcalc
