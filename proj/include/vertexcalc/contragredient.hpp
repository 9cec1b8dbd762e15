#pragma once

#include "vertexcalc/heisenberg.hpp"
#include "vertexcalc/jacobi.hpp"
#include "vertexcalc/matrix.hpp"
#include "vertexcalc/report.hpp"

#include <map>
#include <memory>
#include <shared_mutex>
#include <stdexcept>
#include <tuple>
#include <vector>

namespace vcalc {

// Laurent-polynomial-valued vector: power of x -> vector.
using PolyVector = std::map<long, GradedVector>;

// e^{xL(1)} (-x^{-2})^{L(0)} v as a finite sum.
PolyVector conjugate_vector(const VOAInstance& V, const GradedVector& v);

// Coordinates over the dual basis of a truncated module.
class DualVector {
public:
    DualVector() = default;
    explicit DualVector(GradedVector coords) : coords_(std::move(coords)) {}
    static DualVector basis(int level, std::size_t index) { return DualVector(GradedVector::basis(level, index)); }

    const GradedVector& coords() const { return coords_; }
    // <w', w>: only equal-weight components pair.
    Rational pair(const GradedVector& w) const;

private:
    GradedVector coords_;
};

// (W', Y') with Y' defined through the graded adjoint of the conjugated operator.
// Vectors of W' are GradedVectors in dual-basis coordinates.
class ContragredientModule final : public VModule {
public:
    ContragredientModule(const VOAInstance& V, const VModule& base);

    int max_level() const override { return base_->max_level(); }
    Rational lowest_weight() const override { return base_->lowest_weight(); }
    std::string name() const override { return base_->name() + "'"; }
    ModeResult act(const GradedVector& v, long n, const GradedVector& w) const override;

    const VModule& base() const { return *base_; }
    const VOAInstance& algebra() const { return *V_; }

    // Adds delta to the coefficient of target in v'_n applied to dual basis vector source.
    void corrupt(std::size_t v, long n, std::size_t source, std::size_t target, const Rational& delta);

private:
    // sum_i (-1)^{wt v}/i! (L(1)^i v)_{2 wt v - n - 2 - i} applied to basis b of the base module.
    GradedVector adjoint_column(std::size_t v, long n, std::size_t b) const;

    const VOAInstance* V_;
    const VModule* base_;
    mutable std::shared_mutex mutex_;
    mutable std::map<std::tuple<std::size_t, long, std::size_t>, GradedVector> memo_;
    std::map<std::tuple<std::size_t, long, std::size_t, std::size_t>, Rational> corruption_;
};

std::unique_ptr<ContragredientModule> build_contragredient(const VOAInstance& V, const VModule& M);

// <Y'(v,x)w', w> = <w', Y(e^{xL(1)}(-x^{-2})^{L(0)}v, x^{-1})w> over all basis v, w', w.
VerificationReport check_defining_relation(const ContragredientModule& Mp);
// <L'(n)w', w> = <w', L(-n)w> for |n| <= max_n.
VerificationReport check_adjoint_virasoro(const ContragredientModule& Mp, long max_n);
// Virasoro bracket for the L'(n), |m|,|n| <= max_n.
VerificationReport check_contragredient_virasoro(const ContragredientModule& Mp, long max_n);
// (L(-1)v)'_n = -n v'_{n-1} and Y'(1,x) = 1.
VerificationReport check_contragredient_derivative(const ContragredientModule& Mp);
VerificationReport check_contragredient_vacuum(const ContragredientModule& Mp);
VerificationReport check_contragredient_jacobi(const ContragredientModule& Mp, const GradedVector& v1,
                                               const GradedVector& v2, const GradedVector& wp, const Window& win);
// Y'' = Y under W'' = W, over all basis v and in-budget modes.
VerificationReport check_double_contragredient(const VOAInstance& V, const VModule& M);

struct NotSelfDual : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Grading-orthogonal bilinear form, one matrix per level.
struct BilinearForm {
    std::vector<Matrix> blocks;
    bool symmetric = false;

    Rational operator()(const GradedVector& a, const GradedVector& b) const;
    int max_level() const { return static_cast<int>(blocks.size()) - 1; }
};

// Local index of a basis vector inside its weight block.
inline std::size_t block_index(std::size_t global) { return global - first_index(basis_weight(global)); }
inline std::size_t block_size(int weight) { return basis_size(weight) - first_index(weight); }

BilinearForm build_invariant_form(const VOAInstance& V, const VModule& M, const Rational& normalization);
// (v_n a, b) = (a, T_n b) over all basis v, a, b with every vector inside the truncation.
VerificationReport check_invariant_form(const VOAInstance& V, const VModule& M, const BilinearForm& form);

// V + W with the vertex map fixed by the module action, the forms and the
// formulas for W x V and W x W.
struct GradingViolation : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct AsymmetricForm : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SumVector {
    GradedVector v;
    GradedVector w;
    friend bool operator==(const SumVector& a, const SumVector& b) { return a.v == b.v && a.w == b.w; }
};

class DirectSumVertexMap {
public:
    DirectSumVertexMap(const VOAInstance& V, const VModule& W, BilinearForm form_v, BilinearForm form_w);

    SumVector mode(const SumVector& a, long n, const SumVector& b) const;
    GradedVector w_on_v(const GradedVector& w, long n, const GradedVector& v) const;  // W x V -> W
    GradedVector w_on_w(const GradedVector& w1, long n, const GradedVector& w2) const;  // W x W -> V

    const VOAInstance& algebra() const { return *V_; }
    const VModule& module() const { return *W_; }
    const BilinearForm& form_v() const { return form_v_; }
    const BilinearForm& form_w() const { return form_w_; }

private:
    const VOAInstance* V_;
    const VModule* W_;
    BilinearForm form_v_;
    BilinearForm form_w_;
    std::vector<Matrix> inverse_v_;
};

DirectSumVertexMap combine_direct_sum(const VOAInstance& V, const VModule& W, const BilinearForm& form_v,
                                      const BilinearForm& form_w);

// Y(w,x)v against e^{xL(-1)} Y_W(v,-x)w computed by series composition.
VerificationReport check_direct_sum_skew(const DirectSumVertexMap& D);
// (w3, Y(w1,x)w2)_W = 0.
VerificationReport check_direct_sum_vanishing(const DirectSumVertexMap& D);
// (v, Y(w1,x)w2)_V against the right side of the pairing formula built from series.
VerificationReport check_direct_sum_pairing(const DirectSumVertexMap& D);
// V x V agrees with Y_V and the involution respects the block structure.
VerificationReport check_direct_sum_structure(const DirectSumVertexMap& D);
// With W a copy of V: W x V and W x W reproduce Y_V.
VerificationReport check_direct_sum_copy(const DirectSumVertexMap& D);

} // namespace vcalc
