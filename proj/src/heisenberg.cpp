#include "vertexcalc/heisenberg.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <tuple>

namespace vcalc {

namespace {

struct PartitionTable {
    std::vector<Partition> labels;
    std::vector<int> weights;
    std::vector<std::size_t> first;  // first[n] = index of first partition of weight n; first[kMaxLevel+1] = total
    std::map<Partition, std::size_t> index;

    PartitionTable()
    {
        for (int n = 0; n <= kMaxLevel; ++n) {
            first.push_back(labels.size());
            Partition prefix;
            generate(n, n, prefix);
        }
        first.push_back(labels.size());
        for (std::size_t i = 0; i < labels.size(); ++i) index.emplace(labels[i], i);
    }

    void generate(int remaining, int max_part, Partition& prefix)
    {
        if (remaining == 0) {
            labels.push_back(prefix);
            weights.push_back(std::accumulate(prefix.begin(), prefix.end(), 0));
            return;
        }
        for (int p = std::min(remaining, max_part); p >= 1; --p) {
            prefix.push_back(p);
            generate(remaining - p, p, prefix);
            prefix.pop_back();
        }
    }
};

const PartitionTable& table()
{
    static const PartitionTable t;
    return t;
}

void check_level(int level)
{
    if (level < 0 || level > kMaxLevel) throw std::out_of_range("truncation level outside 0.." + std::to_string(kMaxLevel));
}

Partition merged(const Partition& a, const Partition& b)
{
    Partition m;
    m.reserve(a.size() + b.size());
    std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(m), std::greater<int>());
    return m;
}

int weight_of(const Partition& p) { return std::accumulate(p.begin(), p.end(), 0); }

} // namespace

std::size_t basis_size(int level)
{
    check_level(level);
    return table().first[level + 1];
}

std::size_t first_index(int weight)
{
    check_level(weight);
    return table().first[weight];
}

const Partition& basis_label(std::size_t index) { return table().labels.at(index); }

int basis_weight(std::size_t index) { return table().weights.at(index); }

std::size_t basis_index(const Partition& p)
{
    auto it = table().index.find(p);
    if (it == table().index.end()) throw std::out_of_range("not a basis label: " + label_string(p));
    return it->second;
}

std::string label_string(const Partition& p)
{
    std::string s = "[";
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(p[i]);
    }
    return s + "]";
}

Partition parse_label(const std::string& text)
{
    std::string t;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) t += c;
    if (t.size() < 2 || t.front() != '[' || t.back() != ']') throw std::invalid_argument("bad label '" + text + "'");
    Partition p;
    std::stringstream ss(t.substr(1, t.size() - 2));
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) throw std::invalid_argument("bad label '" + text + "'");
        int v = std::stoi(item);
        if (v < 1) throw std::invalid_argument("label parts must be positive: '" + text + "'");
        p.push_back(v);
    }
    std::sort(p.begin(), p.end(), std::greater<int>());
    return p;
}

GradedVector GradedVector::basis(int level, std::size_t index, const Rational& c)
{
    GradedVector v(level);
    v.add(index, c);
    return v;
}

GradedVector GradedVector::label(int level, const Partition& p, const Rational& c)
{
    return basis(level, basis_index(p), c);
}

Rational GradedVector::operator[](std::size_t index) const
{
    auto it = terms_.find(index);
    return it == terms_.end() ? Rational(0) : it->second;
}

void GradedVector::add(std::size_t index, const Rational& c)
{
    if (!add_truncated(index, c))
        throw TruncationOverflow("component " + label_string(basis_label(index)) + " above level " +
                                 std::to_string(level_));
}

bool GradedVector::add_truncated(std::size_t index, const Rational& c)
{
    if (basis_weight(index) > level_) return sgn(c) == 0;
    if (sgn(c) == 0) return true;
    auto it = terms_.find(index);
    if (it == terms_.end()) {
        terms_.emplace(index, c);
    } else {
        it->second += c;
        if (sgn(it->second) == 0) terms_.erase(it);
    }
    return true;
}

int GradedVector::top_weight() const
{
    return terms_.empty() ? -1 : basis_weight(terms_.rbegin()->first);
}

int GradedVector::bottom_weight() const
{
    return terms_.empty() ? -1 : basis_weight(terms_.begin()->first);
}

bool GradedVector::is_homogeneous() const { return top_weight() == bottom_weight(); }

GradedVector GradedVector::component(int weight) const
{
    GradedVector v(level_);
    for (const auto& [i, c] : terms_)
        if (basis_weight(i) == weight) v.terms_.emplace(i, c);
    return v;
}

std::vector<int> GradedVector::weights() const
{
    std::vector<int> w;
    for (const auto& [i, c] : terms_)
        if (w.empty() || w.back() != basis_weight(i)) w.push_back(basis_weight(i));
    return w;
}

GradedVector GradedVector::with_level(int level) const
{
    GradedVector v(level);
    for (const auto& [i, c] : terms_) v.add(i, c);
    return v;
}

GradedVector& GradedVector::operator+=(const GradedVector& o)
{
    axpy(1, o);
    return *this;
}

GradedVector& GradedVector::operator-=(const GradedVector& o)
{
    axpy(-1, o);
    return *this;
}

GradedVector& GradedVector::operator*=(const Rational& q)
{
    if (sgn(q) == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& [i, c] : terms_) c *= q;
    return *this;
}

void GradedVector::axpy(const Rational& a, const GradedVector& x)
{
    if (sgn(a) == 0) return;
    if (level_ < x.level_ && !x.terms_.empty() && x.top_weight() > level_) level_ = x.level_;
    for (const auto& [i, c] : x.terms_) add(i, a * c);
}

std::string to_string(const GradedVector& v)
{
    if (v.is_zero()) return "0";
    std::string s;
    for (const auto& [i, c] : v.terms()) {
        if (!s.empty()) s += " + ";
        s += c.get_str() + "*" + label_string(basis_label(i));
    }
    return s;
}

FockModule::FockModule(int level, Rational momentum) : level_(level), momentum_(std::move(momentum))
{
    check_level(level);
}

std::string FockModule::name() const
{
    return sgn(momentum_) == 0 ? "V" : "M(" + momentum_.get_str() + ")";
}

ModeResult FockModule::act(const GradedVector& v, long n, const GradedVector& w) const
{
    ModeResult r{GradedVector(level_), false};
    for (const auto& [vi, vc] : v.terms()) {
        for (const auto& [wi, wc] : w.terms()) {
            auto t = table(vi, wi);
            if (basis_weight(vi) + basis_weight(wi) - n - 1 > level_) r.overflow = true;
            auto it = t->modes.find(n);
            if (it == t->modes.end()) continue;
            Rational f = vc * wc;
            for (const auto& [k, c] : it->second) r.value.add(k, f * c);
        }
    }
    return r;
}

std::shared_ptr<const FockModule::ModeTable> FockModule::table(std::size_t v, std::size_t w) const
{
    {
        std::shared_lock lock(mutex_);
        auto it = memo_.find({v, w});
        if (it != memo_.end()) return it->second;
    }
    auto t = compute(v, w);
    std::unique_lock lock(mutex_);
    return memo_.emplace(std::make_pair(v, w), t).first->second;
}

void FockModule::corrupt(std::size_t v, long n, std::size_t w, std::size_t target, const Rational& delta)
{
    auto current = table(v, w);
    auto copy = std::make_shared<ModeTable>(*current);
    auto& entry = copy->modes[n];
    entry[target] += delta;
    if (sgn(entry[target]) == 0) entry.erase(target);
    std::unique_lock lock(mutex_);
    memo_[{v, w}] = copy;
}

std::shared_ptr<const FockModule::ModeTable> FockModule::compute(std::size_t v, std::size_t w) const
{
    const Partition& factors = basis_label(v);
    const int wt_v = basis_weight(v);

    // State: annihilated remainder of w, creators collected so far, sum of mode indices.
    using State = std::tuple<Partition, Partition, long>;
    std::map<State, Rational> states;
    states.emplace(State{basis_label(w), {}, 0}, 1);

    for (int n : factors) {
        std::map<State, Rational> next;
        auto push = [&](State s, const Rational& c) {
            if (sgn(c) == 0) return;
            auto [it, fresh] = next.emplace(std::move(s), c);
            if (!fresh) {
                it->second += c;
                if (sgn(it->second) == 0) next.erase(it);
            }
        };
        for (const auto& [state, coeff] : states) {
            const auto& [ann, cre, msum] = state;
            // Annihilators alpha(m), m > 0: factor C(-m-1, n-1) times m * multiplicity(m).
            for (std::size_t i = 0; i < ann.size(); ++i) {
                if (i > 0 && ann[i] == ann[i - 1]) continue;
                int m = ann[i];
                long mult = std::count(ann.begin(), ann.end(), m);
                Partition rest = ann;
                rest.erase(rest.begin() + static_cast<long>(i));
                push(State{rest, cre, msum + m}, coeff * binomial(-m - 1, n - 1) * m * mult);
            }
            // alpha(0) acts by the momentum.
            if (sgn(momentum_) != 0) push(State{ann, cre, msum}, coeff * momentum_ * binomial(-1, n - 1));
            // Creators alpha(-p): coefficient C(p-1, n-1), nonzero only for p >= n.
            int room = level_ - weight_of(cre);
            for (int p = n; p <= room; ++p) {
                Partition c2 = merged(cre, Partition{p});
                push(State{ann, c2, msum - p}, coeff * binomial(p - 1, n - 1));
            }
        }
        states = std::move(next);
    }

    auto out = std::make_shared<ModeTable>();
    for (const auto& [state, coeff] : states) {
        const auto& [ann, cre, msum] = state;
        long mode = msum + wt_v - 1;
        Partition result = merged(cre, ann);
        if (weight_of(result) > level_) continue;
        auto& entry = out->modes[mode];
        std::size_t k = basis_index(result);
        entry[k] += coeff;
        if (sgn(entry[k]) == 0) entry.erase(k);
    }
    for (auto it = out->modes.begin(); it != out->modes.end();)
        it = it->second.empty() ? out->modes.erase(it) : std::next(it);
    return out;
}

GradedVector heisenberg_mode(const FockModule& m, long mode, const GradedVector& w)
{
    GradedVector r(m.max_level());
    for (const auto& [i, c] : w.terms()) {
        const Partition& p = basis_label(i);
        if (mode < 0) {
            r.add_truncated(basis_index(merged(p, Partition{static_cast<int>(-mode)})), c);
        } else if (mode == 0) {
            r.add(i, c * m.momentum());
        } else {
            long mult = std::count(p.begin(), p.end(), mode);
            if (mult == 0) continue;
            Partition rest = p;
            rest.erase(std::find(rest.begin(), rest.end(), mode));
            r.add(basis_index(rest), c * mode * mult);
        }
    }
    return r;
}

VOAInstance VOAInstance::build_heisenberg(int level)
{
    VOAInstance v;
    v.module_ = std::make_shared<FockModule>(level, 0);
    v.vacuum_ = GradedVector::basis(level, 0);
    v.omega_ = GradedVector(level);
    if (level >= 2) v.omega_.add(basis_index({1, 1}), frac(1, 2));
    v.c_ = 1;
    return v;
}

ModeResult VOAInstance::apply_mode(const GradedVector& u, long n, const GradedVector& v) const
{
    return module_->act(u, n, v);
}

VectorSeries VOAInstance::vertex_operator(const GradedVector& u, const GradedVector& v, const Window& w) const
{
    if (w.size() != 1) throw std::invalid_argument("vertex_operator: expected a one-variable window");
    VectorSeries s(w, {VariableState{Support::lower_truncated, true, false}});
    for (long k = w[0].lo; k <= w[0].hi; ++k) s.add({k}, mode(u, -k - 1, v));
    return s;
}

GradedVector VOAInstance::virasoro_mode(long n, const GradedVector& v) const
{
    if (level() < 2) throw std::out_of_range("virasoro_mode needs level >= 2");
    return mode(omega_, n + 1, v);
}

GradedVector VOAInstance::virasoro_mode(const VModule& m, long n, const GradedVector& w) const
{
    if (level() < 2) throw std::out_of_range("virasoro_mode needs level >= 2");
    return m.act(omega_, n + 1, w).value;
}

} // namespace vcalc
