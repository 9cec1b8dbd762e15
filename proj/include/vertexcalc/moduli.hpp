#pragma once

#include "vertexcalc/rational.hpp"
#include "vertexcalc/report.hpp"

#include <cstdint>
#include <istream>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace vcalc {

struct UnsupportedSewing : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct SewingUndefined : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct InvalidModuli : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Coefficients of x^0 .. x^order.
using PowerSeries = std::vector<Complex>;

// (a_0, A): the series a_0 exp(sum_j A_j x^{j+1} d/dx) x.  A[j-1] holds A_j.
struct LocalCoordinate {
    Complex scale{1};
    std::vector<Complex> A;

    // A_j = 0 for j >= 2, so the coordinate extends to a Mobius map.
    bool is_mobius() const;
    friend bool operator==(const LocalCoordinate& a, const LocalCoordinate& b) { return a.scale == b.scale && a.A == b.A; }
};

PowerSeries coordinate_series(const LocalCoordinate& c, int order);
// Inverse of coordinate_series: reads a_0 and A_1..A_M from coefficients up to x^{M+1}.
LocalCoordinate coordinate_from_series(const PowerSeries& s, int M);

// A sphere with n+1 punctures in canonical form: the negative puncture at
// infinity with coordinate g(1/w), g = exp(sum A_j u^{j+1} d/du) u of scale 1;
// positive punctures z_1..z_{n-1} and z_n = 0 with coordinates
// w -> a_0 exp(...)(w - z_i).  Arity 0 keeps only the coordinate at infinity
// with A_1 = 0.
class ModuliElement {
public:
    ModuliElement() = default;
    ModuliElement(std::vector<Complex> punctures, std::vector<LocalCoordinate> coords, std::vector<Complex> infinity,
                  int order);

    static ModuliElement identity(int order);                       // I = (0, (1, 0))
    static ModuliElement scaling(const Complex& a, int order);      // Q(a)
    static ModuliElement two_point(const Complex& z, int order);    // P(z)
    static ModuliElement vacuum(int order);                         // J in K(0)
    // Standard coordinates with the given positions (last one 0) and scales.
    static ModuliElement standard(std::vector<Complex> punctures, std::vector<Complex> scales, int order);

    int arity() const { return static_cast<int>(punctures_.size()); }
    int order() const { return order_; }
    const std::vector<Complex>& punctures() const { return punctures_; }
    const std::vector<LocalCoordinate>& coordinates() const { return coords_; }
    const std::vector<Complex>& infinity() const { return infinity_; }
    // Every coordinate, including the one at infinity, is a scaling.
    bool is_standard() const;
    // Determinant-line slot.  Sewing multiplies slots (trivial cocycle).
    const Complex& line() const { return line_; }
    void set_line(Complex l) { line_ = std::move(l); }

    friend bool operator==(const ModuliElement& a, const ModuliElement& b)
    {
        return a.order_ == b.order_ && a.punctures_ == b.punctures_ && a.coords_ == b.coords_ && a.infinity_ == b.infinity_ &&
               a.line_ == b.line_;
    }
    friend bool operator!=(const ModuliElement& a, const ModuliElement& b) { return !(a == b); }

private:
    std::vector<Complex> punctures_;
    std::vector<LocalCoordinate> coords_;
    std::vector<Complex> infinity_;
    int order_ = 0;
    Complex line_{1};
};

std::string to_string(const ModuliElement& q);

struct SewingResult {
    ModuliElement element;
    std::string transition;
};

// Q1 (i) Q2 when the coordinate at puncture i of Q1 and the coordinate at
// infinity of Q2 are Mobius maps (A_j = 0 for j >= 2).  The transition is the
// Mobius map T = phi_i^{-1} o gamma o psi_0 carrying Q2's sphere into Q1's.
SewingResult sew(const ModuliElement& q1, int i, const ModuliElement& q2);

// Left action: the puncture at position p moves to position perm[p] (0-based).
using Permutation = std::vector<int>;
ModuliElement permute(const ModuliElement& q, const Permutation& perm);
Permutation compose(const Permutation& sigma, const Permutation& tau);  // sigma after tau

// Operad axioms over a sample.  Instances whose sewings are undefined or
// unsupported count as skipped.
VerificationReport check_identity_axiom(const std::vector<ModuliElement>& sample);
struct AssociativityCounts {
    std::size_t regime[3] = {0, 0, 0};
};
VerificationReport check_associativity_axiom(const std::vector<ModuliElement>& sample, AssociativityCounts* counts = nullptr);
VerificationReport check_equivariance_axiom(const std::vector<ModuliElement>& sample);
VerificationReport check_permutation_action(const std::vector<ModuliElement>& sample);
VerificationReport check_operad_axioms(const std::vector<ModuliElement>& sample);

// Random elements for property checks, with distinct small rational positions.
// scaling: every A vanishes.  mobius: every coordinate is a Mobius map.
// general: arbitrary A at the positive punctures, Mobius at infinity.
enum class CoordinateKind { scaling, mobius, general };
ModuliElement random_element(std::mt19937_64& rng, int arity, int order, CoordinateKind kind);

// Text format: blocks separated by "---" with lines `arity n`, `order M`,
// `z: z_1 ... z_{n-1}`, `coord 0: A_1 ... A_M`, `coord i: a_0 ; A_1 ... A_M`.
std::vector<ModuliElement> parse_moduli(std::istream& in);
std::vector<ModuliElement> load_moduli(const std::string& path);
std::string format_moduli(const ModuliElement& q);

} // namespace vcalc
