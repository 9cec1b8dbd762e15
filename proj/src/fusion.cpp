#include "vertexcalc/fusion.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

namespace vcalc {

FusionTensor::FusionTensor(std::vector<std::string> labels, std::vector<std::size_t> dual)
    : labels_(std::move(labels)), dual_(std::move(dual))
{
    if (labels_.empty()) throw FusionParseError("fusion tensor needs at least one label");
    if (dual_.size() != labels_.size()) throw FusionParseError("dual map does not cover every label");
    for (std::size_t i = 0; i < dual_.size(); ++i) {
        if (dual_[i] >= dual_.size()) throw FusionParseError("dual of " + labels_[i] + " is not a label");
        if (dual_[dual_[i]] != i) throw FusionParseError("dual map is not an involution at " + labels_[i]);
    }
}

namespace {

// Label by name, or by position when the name is a number that is not itself a label.
std::size_t label_index(const std::vector<std::string>& labels, const std::string& name)
{
    auto it = std::find(labels.begin(), labels.end(), name);
    if (it != labels.end()) return static_cast<std::size_t>(it - labels.begin());
    if (!name.empty() && std::all_of(name.begin(), name.end(), ::isdigit)) {
        std::size_t i = std::stoul(name);
        if (i < labels.size()) return i;
    }
    throw FusionParseError("unknown label '" + name + "'");
}

} // namespace

std::size_t FusionTensor::index_of(const std::string& name) const { return label_index(labels_, name); }

long FusionTensor::upper(std::size_t i, std::size_t j, std::size_t k) const
{
    auto it = entries_.find({i, j, k});
    return it == entries_.end() ? 0 : it->second;
}

void FusionTensor::set(std::size_t i, std::size_t j, std::size_t k, long n)
{
    if (i >= size() || j >= size() || k >= size()) throw std::out_of_range("fusion index out of range");
    if (n < 0) throw FusionParseError("fusion rules must be nonnegative");
    if (n == 0) entries_.erase({i, j, k});
    else entries_[{i, j, k}] = n;
}

namespace {

std::string strip_comment(std::string line)
{
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    return line;
}

std::vector<std::string> split_words(const std::string& s)
{
    std::istringstream in(s);
    std::vector<std::string> out;
    for (std::string w; in >> w;) out.push_back(w);
    return out;
}

// "a->b" or "a→b".
std::pair<std::string, std::string> split_arrow(const std::string& pair)
{
    for (const std::string arrow : {"->", "→"}) {
        auto pos = pair.find(arrow);
        if (pos != std::string::npos) return {pair.substr(0, pos), pair.substr(pos + arrow.size())};
    }
    throw FusionParseError("malformed dual pair '" + pair + "'");
}

} // namespace

FusionTensor parse_fusion(std::istream& in)
{
    std::vector<std::string> labels;
    std::vector<std::pair<std::string, std::string>> dual_pairs;
    std::vector<std::vector<std::string>> rows;
    std::string line;
    for (int lineno = 1; std::getline(in, line); ++lineno) {
        line = strip_comment(line);
        auto colon = line.find(':');
        if (colon != std::string::npos) {
            auto head = split_words(line.substr(0, colon));
            const std::string key = head.size() == 1 ? head[0] : "";
            auto words = split_words(line.substr(colon + 1));
            if (key == "labels") labels = words;
            else if (key == "dual")
                for (const auto& w : words) dual_pairs.push_back(split_arrow(w));
            else throw FusionParseError("line " + std::to_string(lineno) + ": unknown header '" + key + "'");
            continue;
        }
        auto words = split_words(line);
        if (words.empty()) continue;
        if (words.size() != 4) throw FusionParseError("line " + std::to_string(lineno) + ": expected 'i j k N'");
        rows.push_back(words);
    }
    if (labels.empty()) throw FusionParseError("missing 'labels:' header");
    std::vector<std::size_t> dual(labels.size());
    std::vector<bool> seen(labels.size(), false);
    for (std::size_t i = 0; i < labels.size(); ++i) dual[i] = i;
    for (const auto& [a, b] : dual_pairs) {
        std::size_t i = label_index(labels, a), j = label_index(labels, b);
        if ((seen[i] && dual[i] != j) || (seen[j] && dual[j] != i)) throw FusionParseError("conflicting dual for " + a);
        dual[i] = j;
        dual[j] = i;
        seen[i] = seen[j] = true;
    }
    FusionTensor t(labels, dual);
    for (const auto& r : rows) {
        long n = 0;
        try {
            n = std::stol(r[3]);
        } catch (const std::exception&) {
            throw FusionParseError("bad multiplicity '" + r[3] + "'");
        }
        std::size_t i = t.index_of(r[0]), j = t.index_of(r[1]), k = t.index_of(r[2]);
        if (t.upper(i, j, k) != 0) throw FusionParseError("duplicate entry " + r[0] + " " + r[1] + " " + r[2]);
        t.set(i, j, k, n);
    }
    return t;
}

FusionTensor load_fusion(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw FusionParseError("cannot open " + path);
    return parse_fusion(in);
}

std::string format_fusion(const FusionTensor& t)
{
    std::ostringstream os;
    os << "labels:";
    for (const auto& l : t.labels()) os << ' ' << l;
    os << "\ndual:";
    for (std::size_t i = 0; i < t.size(); ++i)
        if (i <= t.dual(i)) os << ' ' << t.labels()[i] << "->" << t.labels()[t.dual(i)];
    os << '\n';
    for (const auto& [idx, n] : t.entries())
        os << t.labels()[idx[0]] << ' ' << t.labels()[idx[1]] << ' ' << t.labels()[idx[2]] << ' ' << n << '\n';
    return os.str();
}

VerificationReport check_s3_symmetry(const FusionTensor& t)
{
    VerificationReport r("fusion-s3", "labels=" + std::to_string(t.size()), {"i", "j", "k"});
    const std::size_t m = t.size();
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j)
            for (std::size_t k = 0; k < m; ++k) {
                std::array<std::size_t, 3> idx{i, j, k};
                std::array<int, 3> perm{0, 1, 2};
                const long base = t.lower(i, j, k);
                while (std::next_permutation(perm.begin(), perm.end())) {
                    ++r.checked;
                    long other = t.lower(idx[perm[0]], idx[perm[1]], idx[perm[2]]);
                    if (other != base)
                        r.add_difference({static_cast<long>(i), static_cast<long>(j), static_cast<long>(k)},
                                         std::to_string(base), std::to_string(other));
                }
            }
    return r.finalize();
}

VerificationReport check_positivity(const FusionTensor& t)
{
    VerificationReport r("fusion-positivity", "labels=" + std::to_string(t.size()), {"w"});
    ++r.checked;
    if (t.upper(0, 0, 0) < 1) r.add_difference({0}, std::to_string(t.upper(0, 0, 0)), ">=1");
    for (std::size_t w = 1; w < t.size(); ++w) {
        r.checked += 2;
        if (t.upper(0, w, w) < 1) r.add_difference({static_cast<long>(w)}, std::to_string(t.upper(0, w, w)), ">=1");
        if (t.upper(w, 0, w) < 1) r.add_difference({static_cast<long>(w)}, std::to_string(t.upper(w, 0, w)), ">=1");
    }
    return r.finalize();
}

VerlindeAlgebra::VerlindeAlgebra(FusionTensor t) : t_(std::move(t))
{
    const std::size_t m = t_.size();
    unit_ = true;
    readings_agree_ = true;
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) {
            const long d = i == j ? 1 : 0;
            if (t_.upper(0, i, j) != d || t_.upper(i, 0, j) != d) unit_ = false;
            for (std::size_t k = 0; k < m; ++k)
                if (t_.upper(i, j, k) != t_.lower(i, j, k)) readings_agree_ = false;
        }
}

std::vector<Rational> VerlindeAlgebra::product(std::size_t i, std::size_t j) const
{
    std::vector<Rational> out(dim());
    for (std::size_t k = 0; k < dim(); ++k) out[k] = t_.upper(i, j, k);
    return out;
}

std::vector<Rational> VerlindeAlgebra::multiply(const std::vector<Rational>& a, const std::vector<Rational>& b) const
{
    std::vector<Rational> out(dim());
    for (const auto& [idx, n] : t_.entries()) out[idx[2]] += a.at(idx[0]) * b.at(idx[1]) * n;
    return out;
}

VerlindeAlgebra build_verlinde(const FusionTensor& t)
{
    VerificationReport s3 = check_s3_symmetry(t);
    if (!s3.passed())
        throw SymmetryViolation("fusion tensor fails S3 symmetry at " + std::to_string(s3.differences.size()) +
                                " instances");
    return VerlindeAlgebra(t);
}

VerificationReport check_commutativity(const VerlindeAlgebra& a)
{
    VerificationReport r("verlinde-commutativity", "dim=" + std::to_string(a.dim()), {"i", "j", "k"});
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t j = 0; j < a.dim(); ++j)
            for (std::size_t k = 0; k < a.dim(); ++k) {
                ++r.checked;
                long x = a.structure_constant(i, j, k), y = a.structure_constant(j, i, k);
                if (x != y)
                    r.add_difference({static_cast<long>(i), static_cast<long>(j), static_cast<long>(k)},
                                     std::to_string(x), std::to_string(y));
            }
    return r.finalize();
}

VerificationReport check_unit(const VerlindeAlgebra& a)
{
    VerificationReport r("verlinde-unit", "dim=" + std::to_string(a.dim()), {"i", "j"});
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t j = 0; j < a.dim(); ++j) {
            r.checked += 2;
            const long d = i == j ? 1 : 0;
            if (a.structure_constant(0, i, j) != d)
                r.add_difference({static_cast<long>(i), static_cast<long>(j)},
                                 std::to_string(a.structure_constant(0, i, j)), std::to_string(d));
            if (a.structure_constant(i, 0, j) != d)
                r.add_difference({static_cast<long>(i), static_cast<long>(j)},
                                 std::to_string(a.structure_constant(i, 0, j)), std::to_string(d));
        }
    return r.finalize();
}

VerificationReport check_associativity(const VerlindeAlgebra& a)
{
    VerificationReport r("verlinde-associativity", "dim=" + std::to_string(a.dim()), {"i", "j", "l", "m"});
    const std::size_t d = a.dim();
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j)
            for (std::size_t l = 0; l < d; ++l)
                for (std::size_t m = 0; m < d; ++m) {
                    ++r.checked;
                    long lhs = 0, rhs = 0;
                    for (std::size_t k = 0; k < d; ++k) {
                        lhs += a.structure_constant(i, j, k) * a.structure_constant(k, l, m);
                        rhs += a.structure_constant(j, l, k) * a.structure_constant(i, k, m);
                    }
                    if (lhs != rhs)
                        r.add_difference({static_cast<long>(i), static_cast<long>(j), static_cast<long>(l),
                                          static_cast<long>(m)},
                                         std::to_string(lhs), std::to_string(rhs));
                }
    return r.finalize();
}

} // namespace vcalc
