#pragma once

#include "vertexcalc/rational.hpp"
#include "vertexcalc/report.hpp"

#include <functional>
#include <initializer_list>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace vcalc {

struct UnknownVariable : std::out_of_range {
    using std::out_of_range::out_of_range;
};
struct WindowViolation : std::out_of_range {
    using std::out_of_range::out_of_range;
};
// A window too small for the stored data to determine the requested product.
struct InsufficientWindow : WindowViolation {
    using WindowViolation::WindowViolation;
};
struct IllDefinedProduct : std::domain_error {
    using std::domain_error::domain_error;
};

using ExponentVector = std::vector<long>;

struct VariableBounds {
    std::string name;
    long lo;
    long hi;
};

class Window {
public:
    Window() = default;
    Window(std::initializer_list<VariableBounds> bounds);
    explicit Window(std::vector<VariableBounds> bounds);

    static Window cube(const std::vector<std::string>& names, long lo, long hi);

    void add(const std::string& name, long lo, long hi);

    std::size_t size() const { return bounds_.size(); }
    const VariableBounds& operator[](std::size_t i) const { return bounds_[i]; }
    std::size_t index_of(const std::string& name) const;
    bool has(const std::string& name) const;
    bool contains(const ExponentVector& e) const;
    std::vector<std::string> names() const;
    // Visits every exponent vector of the box in lexicographic order.
    void for_each(const std::function<void(const ExponentVector&)>& f) const;
    std::string describe() const;

private:
    std::vector<VariableBounds> bounds_;
};

// Support of the true (untruncated) series in one variable.  The three
// standard kinds plus upper_truncated, which arises for the dominant
// variable of a negative binomial power.
enum class Support { finite, lower_truncated, upper_truncated, doubly_infinite };

struct VariableState {
    Support support = Support::finite;
    bool complete_below = true;  // no true terms below the window
    bool complete_above = true;  // no true terms above the window
};

VariableState default_state(Support s);

template <class C>
bool coefficient_is_zero(const C& c)
{
    return c.is_zero();
}
template <>
inline bool coefficient_is_zero<Rational>(const Rational& c)
{
    return sgn(c) == 0;
}

// Sparse Laurent series restricted to a window, zero coefficients suppressed.
template <class C>
class Series {
public:
    using Terms = std::map<ExponentVector, C>;

    Series() = default;
    explicit Series(Window w) : window_(std::move(w)), state_(window_.size()) {}
    Series(Window w, std::vector<VariableState> state) : window_(std::move(w)), state_(std::move(state))
    {
        if (state_.size() != window_.size()) throw std::invalid_argument("series: state/window size mismatch");
    }

    const Window& window() const { return window_; }
    const std::vector<VariableState>& state() const { return state_; }
    VariableState& state(std::size_t i) { return state_[i]; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void add(const ExponentVector& e, const C& c)
    {
        check(e);
        if (coefficient_is_zero(c)) return;
        auto it = terms_.find(e);
        if (it == terms_.end()) {
            terms_.emplace(e, c);
            return;
        }
        it->second += c;
        if (coefficient_is_zero(it->second)) terms_.erase(it);
    }

    C coefficient(const ExponentVector& e, const C& zero = C()) const
    {
        check(e);
        auto it = terms_.find(e);
        return it == terms_.end() ? zero : it->second;
    }

    C coefficient(const std::map<std::string, long>& e, const C& zero = C()) const
    {
        return coefficient(to_vector(e), zero);
    }

    ExponentVector to_vector(const std::map<std::string, long>& e) const
    {
        ExponentVector v(window_.size(), 0);
        for (const auto& [name, exp] : e) v[window_.index_of(name)] = exp;
        return v;
    }

private:
    void check(const ExponentVector& e) const
    {
        if (e.size() != window_.size()) throw UnknownVariable("exponent vector does not match the series variables");
        if (!window_.contains(e)) throw WindowViolation("exponent outside the series window");
    }

    Window window_;
    std::vector<VariableState> state_;
    Terms terms_;
};

using FormalSeries = Series<Rational>;

FormalSeries laurent_polynomial(const std::string& var, const std::map<long, Rational>& coeffs);
FormalSeries laurent_polynomial(const std::string& var, const std::map<long, Rational>& coeffs, long lo, long hi);

FormalSeries series_multiply(const FormalSeries& a, const FormalSeries& b, const Window& w);
FormalSeries series_add(const FormalSeries& a, const FormalSeries& b, const Rational& scale_b = 1);
FormalSeries residue(const FormalSeries& s, const std::string& var);
// Evaluates a one-variable series at x = value (finite series only).
Rational evaluate(const FormalSeries& s, const Rational& value);

struct ExpansionDirection {
    std::string dominant;
    std::string subordinate;
};

// (x_i - x_j)^n expanded in nonnegative powers of dir.subordinate, restricted to w.
FormalSeries binomial_expand(const std::string& xi, const std::string& xj, long n, const ExpansionDirection& dir,
                             const Window& w);

// delta((sa*a + sb*b)/(sc*c)) = sum_n (sa*a + sb*b)^n (sc*c)^(-n), with b subordinate.
struct DeltaPattern {
    std::string a;
    int sa;
    std::string b;
    int sb;
    std::string c;
    int sc;

    static DeltaPattern x2_plus_x0_over_x1();
    static DeltaPattern x1_minus_x0_over_x2();
    static DeltaPattern x1_minus_x2_over_x0();
    static DeltaPattern x2_minus_x1_over_minus_x0();

    std::string describe() const;
    // Coefficient of a^(n-j) b^j c^(-n).
    Rational coefficient(long n, long j) const;
};

FormalSeries delta_expansion(const DeltaPattern& p, const std::string& prefactor, const Window& w);
// delta(x) = sum_n x^n on the window.
FormalSeries delta_series(const std::string& var, long lo, long hi);

enum class DeltaIdentity { fundamental, two_term, three_term };

VerificationReport check_delta_identity(DeltaIdentity id, const FormalSeries* f, const Window& w,
                                        bool flip_middle_sign = false);

// Every exponent of w at which a and b differ.
VerificationReport compare_series(const FormalSeries& a, const FormalSeries& b, std::string identity,
                                  std::string params);

std::string to_string(const FormalSeries& s);

} // namespace vcalc
