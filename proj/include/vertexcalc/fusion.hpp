#pragma once

#include "vertexcalc/rational.hpp"
#include "vertexcalc/report.hpp"

#include <array>
#include <istream>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace vcalc {

struct FusionParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct SymmetryViolation : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Fusion rules N^k_{ij} over a finite label set; label 0 is the algebra itself.
class FusionTensor {
public:
    using Index = std::array<std::size_t, 3>;

    FusionTensor() = default;
    FusionTensor(std::vector<std::string> labels, std::vector<std::size_t> dual);

    std::size_t size() const { return labels_.size(); }
    const std::vector<std::string>& labels() const { return labels_; }
    std::size_t dual(std::size_t i) const { return dual_.at(i); }
    std::size_t index_of(const std::string& name) const;

    // N^k_{ij}.
    long upper(std::size_t i, std::size_t j, std::size_t k) const;
    // N_{ijk} = N^{k'}_{ij}.
    long lower(std::size_t i, std::size_t j, std::size_t k) const { return upper(i, j, dual(k)); }
    void set(std::size_t i, std::size_t j, std::size_t k, long n);
    const std::map<Index, long>& entries() const { return entries_; }

private:
    std::vector<std::string> labels_;
    std::vector<std::size_t> dual_;
    std::map<Index, long> entries_;
};

FusionTensor parse_fusion(std::istream& in);
FusionTensor load_fusion(const std::string& path);
std::string format_fusion(const FusionTensor& t);

// N_{sigma(1)sigma(2)sigma(3)} = N_{123} over all labels and permutations.
VerificationReport check_s3_symmetry(const FusionTensor& t);
// N^V_{VV} >= 1, N^W_{VW} >= 1 and N^W_{WV} >= 1.
VerificationReport check_positivity(const FusionTensor& t);

class VerlindeAlgebra {
public:
    explicit VerlindeAlgebra(FusionTensor t);

    const FusionTensor& tensor() const { return t_; }
    std::size_t dim() const { return t_.size(); }
    long structure_constant(std::size_t i, std::size_t j, std::size_t k) const { return t_.upper(i, j, k); }

    // phi_i phi_j as coordinates.
    std::vector<Rational> product(std::size_t i, std::size_t j) const;
    std::vector<Rational> multiply(const std::vector<Rational>& a, const std::vector<Rational>& b) const;

    // N^j_{0i} = N^j_{i0} = delta_{ij}.
    bool has_unit() const { return unit_; }
    // Whether reading the product through N_{ijk} with the involution gives the same table.
    bool readings_agree() const { return readings_agree_; }

private:
    FusionTensor t_;
    bool unit_ = false;
    bool readings_agree_ = false;
};

// Throws SymmetryViolation when check_s3_symmetry fails.
VerlindeAlgebra build_verlinde(const FusionTensor& t);

VerificationReport check_commutativity(const VerlindeAlgebra& a);
VerificationReport check_unit(const VerlindeAlgebra& a);
VerificationReport check_associativity(const VerlindeAlgebra& a);

} // namespace vcalc
