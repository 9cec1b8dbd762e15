#pragma once

#include "vertexcalc/formal_series.hpp"
#include "vertexcalc/rational.hpp"

#include <cstddef>
#include <map>
#include <memory>
#include <ostream>
#include <mutex>
#include <set>
#include <shared_mutex>
#include <stdexcept>
#include <string>
#include <vector>

namespace vcalc {

// n_1 >= n_2 >= ... >= n_k >= 1, standing for alpha(-n_1)...alpha(-n_k)1.
using Partition = std::vector<int>;

// Global partition basis: ordered by weight, then descending lexicographic
// order, so an index means the same vector at every truncation level.
constexpr int kMaxLevel = 24;

std::size_t basis_size(int level);            // number of partitions of weight <= level
std::size_t first_index(int weight);          // index of the first partition of this weight
const Partition& basis_label(std::size_t index);
int basis_weight(std::size_t index);
std::size_t basis_index(const Partition& p);  // throws for invalid or too heavy labels
std::string label_string(const Partition& p);
Partition parse_label(const std::string& text);  // "[2,1]" or "[]"

struct TruncationOverflow : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Sparse vector over the partition basis, truncated at weight <= level.
class GradedVector {
public:
    using Terms = std::map<std::size_t, Rational>;

    GradedVector() = default;
    explicit GradedVector(int level) : level_(level) {}

    static GradedVector basis(int level, std::size_t index, const Rational& c = 1);
    static GradedVector label(int level, const Partition& p, const Rational& c = 1);

    int level() const { return level_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    Rational operator[](std::size_t index) const;
    // Adds c at index; components above the level throw TruncationOverflow.
    void add(std::size_t index, const Rational& c);
    // Adds c at index, returning false (and dropping it) when above the level.
    bool add_truncated(std::size_t index, const Rational& c);

    // Highest weight carrying a nonzero coefficient, or -1 for zero.
    int top_weight() const;
    int bottom_weight() const;
    bool is_homogeneous() const;
    GradedVector component(int weight) const;
    std::vector<int> weights() const;
    GradedVector with_level(int level) const;

    GradedVector& operator+=(const GradedVector& o);
    GradedVector& operator-=(const GradedVector& o);
    GradedVector& operator*=(const Rational& q);
    void axpy(const Rational& a, const GradedVector& x);

    friend GradedVector operator+(GradedVector a, const GradedVector& b) { return a += b; }
    friend GradedVector operator-(GradedVector a, const GradedVector& b) { return a -= b; }
    friend GradedVector operator*(const Rational& q, GradedVector a) { return a *= q; }
    friend bool operator==(const GradedVector& a, const GradedVector& b) { return a.terms_ == b.terms_; }
    friend bool operator!=(const GradedVector& a, const GradedVector& b) { return !(a == b); }

private:
    int level_ = 0;
    Terms terms_;
};

std::string to_string(const GradedVector& v);
inline std::ostream& operator<<(std::ostream& os, const GradedVector& v) { return os << to_string(v); }

using VectorSeries = Series<GradedVector>;

struct ModeResult {
    GradedVector value;
    bool overflow = false;
};

// A truncated module for the Heisenberg algebra V, graded by level
// (weight minus the lowest weight).  Modules share the partition basis.
class VModule {
public:
    virtual ~VModule() = default;
    virtual int max_level() const = 0;
    virtual Rational lowest_weight() const = 0;
    virtual std::string name() const = 0;
    // v_n w for v in V and w in this module.
    virtual ModeResult act(const GradedVector& v, long n, const GradedVector& w) const = 0;

    std::size_t dim() const { return basis_size(max_level()); }
    GradedVector zero() const { return GradedVector(max_level()); }
    GradedVector basis(std::size_t i) const { return GradedVector::basis(max_level(), i); }
};

// Fock module M(lambda): alpha(0) acts by lambda, lowest weight lambda^2/2.
// Vertex operators follow the normal-ordered free-field rule.
class FockModule final : public VModule {
public:
    FockModule(int level, Rational momentum);

    int max_level() const override { return level_; }
    Rational lowest_weight() const override { return Rational(momentum_ * momentum_ / 2); }
    std::string name() const override;
    const Rational& momentum() const { return momentum_; }

    ModeResult act(const GradedVector& v, long n, const GradedVector& w) const override;

    struct ModeTable {
        std::map<long, GradedVector::Terms> modes;
    };
    // All nonzero modes (basis v)_N (basis w), computed once per pair.
    std::shared_ptr<const ModeTable> table(std::size_t v, std::size_t w) const;

    // Adds delta to one stored structure constant; for mutation testing.
    void corrupt(std::size_t v, long n, std::size_t w, std::size_t target, const Rational& delta);

private:
    std::shared_ptr<const ModeTable> compute(std::size_t v, std::size_t w) const;

    int level_;
    Rational momentum_;
    mutable std::shared_mutex mutex_;
    mutable std::map<std::pair<std::size_t, std::size_t>, std::shared_ptr<const ModeTable>> memo_;
};

// alpha(m) on a Fock module, applied directly from the commutation relations.
GradedVector heisenberg_mode(const FockModule& m, long mode, const GradedVector& w);

class VOAInstance {
public:
    static VOAInstance build_heisenberg(int level);

    int level() const { return module_->max_level(); }
    const GradedVector& vacuum() const { return vacuum_; }
    const GradedVector& omega() const { return omega_; }
    const Rational& central_charge() const { return c_; }
    const FockModule& adjoint() const { return *module_; }
    std::size_t dim() const { return module_->dim(); }
    GradedVector zero_vector() const { return GradedVector(level()); }
    GradedVector basis(std::size_t i) const { return module_->basis(i); }
    GradedVector label(const Partition& p, const Rational& c = 1) const { return GradedVector::label(level(), p, c); }

    ModeResult apply_mode(const GradedVector& u, long n, const GradedVector& v) const;
    GradedVector mode(const GradedVector& u, long n, const GradedVector& v) const { return apply_mode(u, n, v).value; }
    VectorSeries vertex_operator(const GradedVector& u, const GradedVector& v, const Window& w) const;
    // L(n) = omega_{n+1}.
    GradedVector virasoro_mode(long n, const GradedVector& v) const;
    // L(n) on an arbitrary module.
    GradedVector virasoro_mode(const VModule& m, long n, const GradedVector& w) const;

    void corrupt_structure_constant(std::size_t u, long n, std::size_t v, std::size_t target, const Rational& delta)
    {
        module_->corrupt(u, n, v, target, delta);
    }

private:
    std::shared_ptr<FockModule> module_;
    GradedVector vacuum_;
    GradedVector omega_;
    Rational c_;
};

} // namespace vcalc
