#include "sdmbc/prob.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <stdexcept>

namespace sdmbc {

namespace {

void check_probability_entries(std::vector<double>& p, const char* what) {
    for (double& v : p) {
        if (!std::isfinite(v)) throw std::invalid_argument(std::string(what) + ": non-finite entry");
        if (v < -1e-12) throw std::invalid_argument(std::string(what) + ": negative entry");
        if (v < 0) v = 0.0;
    }
}

void check_mass(const std::vector<double>& p, const char* what) {
    double sum = std::accumulate(p.begin(), p.end(), 0.0);
    if (std::abs(sum - 1.0) > tolerances().normalization)
        throw std::invalid_argument(std::string(what) + ": mass " + std::to_string(sum) +
                                    " not 1 within tolerance");
}

size_t shape_size(const std::vector<int>& shape) {
    size_t n = 1;
    for (int s : shape) {
        if (s < 1) throw std::invalid_argument("alphabet size must be >= 1");
        n *= static_cast<size_t>(s);
    }
    return n;
}

}  // namespace

double binary_entropy(double p) {
    if (p < -1e-12 || p > 1.0 + 1e-12) throw std::domain_error("binary_entropy: p outside [0,1]");
    p = std::clamp(p, 0.0, 1.0);
    double h = 0.0;
    if (p > 0.0) h -= p * std::log2(p);
    if (p < 1.0) h -= (1.0 - p) * std::log2(1.0 - p);
    return h;
}

Pmf::Pmf(std::vector<double> probs) : probs_(std::move(probs)) {
    if (probs_.empty()) throw std::invalid_argument("Pmf: empty support");
    check_probability_entries(probs_, "Pmf");
    check_mass(probs_, "Pmf");
}

Pmf Pmf::uniform(int n) {
    if (n < 1) throw std::invalid_argument("Pmf::uniform: n < 1");
    return Pmf(std::vector<double>(static_cast<size_t>(n), 1.0 / n));
}

Pmf Pmf::point_mass(int n, int index) {
    if (index < 0 || index >= n) throw std::invalid_argument("Pmf::point_mass: index out of range");
    std::vector<double> p(static_cast<size_t>(n), 0.0);
    p[static_cast<size_t>(index)] = 1.0;
    return Pmf(std::move(p));
}

Pmf Pmf::bernoulli(double p1) {
    if (p1 < -1e-12 || p1 > 1.0 + 1e-12) throw std::invalid_argument("Pmf::bernoulli: p outside [0,1]");
    p1 = std::clamp(p1, 0.0, 1.0);
    return Pmf({1.0 - p1, p1});
}

Kernel::Kernel(std::vector<int> input_shape, std::vector<int> output_shape,
               std::vector<double> table)
    : input_shape_(std::move(input_shape)),
      output_shape_(std::move(output_shape)),
      table_(std::move(table)) {
    in_size_ = static_cast<int>(shape_size(input_shape_));
    out_size_ = static_cast<int>(shape_size(output_shape_));
    if (table_.size() != static_cast<size_t>(in_size_) * out_size_)
        throw std::invalid_argument("Kernel: table size does not match shapes");
    check_probability_entries(table_, "Kernel");
    for (int r = 0; r < in_size_; ++r) {
        auto row_span = row(r);
        double sum = std::accumulate(row_span.begin(), row_span.end(), 0.0);
        if (std::abs(sum - 1.0) > tolerances().normalization)
            throw std::invalid_argument("Kernel: row " + std::to_string(r) + " mass " +
                                        std::to_string(sum) + " not 1 within tolerance");
    }
}

Kernel Kernel::deterministic(std::vector<int> input_shape, std::vector<int> output_shape,
                             const std::function<int(const std::vector<int>&)>& fn) {
    size_t in_n = shape_size(input_shape);
    size_t out_n = shape_size(output_shape);
    std::vector<double> table(in_n * out_n, 0.0);
    std::vector<int> idx(input_shape.size(), 0);
    for (size_t r = 0; r < in_n; ++r) {
        int out = fn(idx);
        if (out < 0 || static_cast<size_t>(out) >= out_n)
            throw std::invalid_argument("Kernel::deterministic: fn output out of range");
        table[r * out_n + static_cast<size_t>(out)] = 1.0;
        for (int v = static_cast<int>(input_shape.size()) - 1; v >= 0; --v) {
            if (++idx[static_cast<size_t>(v)] < input_shape[static_cast<size_t>(v)]) break;
            idx[static_cast<size_t>(v)] = 0;
        }
    }
    return Kernel(std::move(input_shape), std::move(output_shape), std::move(table));
}

Pmf Kernel::row_pmf(int r) const {
    auto s = row(r);
    return Pmf(std::vector<double>(s.begin(), s.end()));
}

LabeledJoint::LabeledJoint(std::vector<std::string> names, std::vector<int> sizes,
                           std::vector<double> probs)
    : names_(std::move(names)), sizes_(std::move(sizes)), probs_(std::move(probs)) {
    if (names_.size() != sizes_.size())
        throw std::invalid_argument("LabeledJoint: names/sizes mismatch");
    std::set<std::string> unique(names_.begin(), names_.end());
    if (unique.size() != names_.size())
        throw std::invalid_argument("LabeledJoint: duplicate variable name");
    if (probs_.size() != shape_size(sizes_))
        throw std::invalid_argument("LabeledJoint: table size does not match sizes");
    check_probability_entries(probs_, "LabeledJoint");
    check_mass(probs_, "LabeledJoint");
}

LabeledJoint LabeledJoint::from_pmf(const std::string& name, const Pmf& p) {
    return LabeledJoint({name}, {p.size()}, p.probs());
}

LabeledJoint LabeledJoint::product(const LabeledJoint& a, const LabeledJoint& b) {
    std::vector<std::string> names = a.names_;
    names.insert(names.end(), b.names_.begin(), b.names_.end());
    std::vector<int> sizes = a.sizes_;
    sizes.insert(sizes.end(), b.sizes_.begin(), b.sizes_.end());
    std::vector<double> probs(a.probs_.size() * b.probs_.size());
    size_t k = 0;
    for (double pa : a.probs_)
        for (double pb : b.probs_) probs[k++] = pa * pb;
    return LabeledJoint(std::move(names), std::move(sizes), std::move(probs));
}

int LabeledJoint::var_index(const std::string& name) const {
    for (size_t i = 0; i < names_.size(); ++i)
        if (names_[i] == name) return static_cast<int>(i);
    throw std::invalid_argument("LabeledJoint: unknown variable " + name);
}

size_t LabeledJoint::flatten(const std::vector<int>& indices) const {
    if (indices.size() != sizes_.size())
        throw std::invalid_argument("LabeledJoint::flatten: index arity mismatch");
    size_t flat = 0;
    for (size_t v = 0; v < sizes_.size(); ++v) {
        if (indices[v] < 0 || indices[v] >= sizes_[v])
            throw std::invalid_argument("LabeledJoint::flatten: index out of range");
        flat = flat * static_cast<size_t>(sizes_[v]) + static_cast<size_t>(indices[v]);
    }
    return flat;
}

void LabeledJoint::unflatten(size_t flat, std::vector<int>& indices) const {
    indices.resize(sizes_.size());
    for (size_t v = sizes_.size(); v-- > 0;) {
        indices[v] = static_cast<int>(flat % static_cast<size_t>(sizes_[v]));
        flat /= static_cast<size_t>(sizes_[v]);
    }
}

namespace {

// Accumulates the source table into a table over the kept variables.
// tstride[v] is the kept-table stride of source variable v (0 if dropped).
std::vector<double> project(const std::vector<double>& src, const std::vector<int>& sizes,
                            const std::vector<size_t>& tstride, size_t tsize) {
    std::vector<double> out(tsize, 0.0);
    std::vector<int> idx(sizes.size(), 0);
    size_t tflat = 0;
    for (double p : src) {
        out[tflat] += p;
        for (int v = static_cast<int>(sizes.size()) - 1; v >= 0; --v) {
            auto uv = static_cast<size_t>(v);
            ++idx[uv];
            tflat += tstride[uv];
            if (idx[uv] < sizes[uv]) break;
            tflat -= static_cast<size_t>(sizes[uv]) * tstride[uv];
            idx[uv] = 0;
        }
    }
    return out;
}

std::vector<double> marginal_table(const LabeledJoint& joint, const std::vector<std::string>& keep,
                                   std::vector<int>& keep_sizes) {
    const auto& sizes = joint.sizes();
    std::vector<int> keep_pos(keep.size());
    keep_sizes.resize(keep.size());
    size_t tsize = 1;
    for (size_t i = 0; i < keep.size(); ++i) {
        keep_pos[i] = joint.var_index(keep[i]);
        keep_sizes[i] = sizes[static_cast<size_t>(keep_pos[i])];
        tsize *= static_cast<size_t>(keep_sizes[i]);
    }
    std::vector<size_t> tstride(sizes.size(), 0);
    size_t stride = 1;
    for (size_t i = keep.size(); i-- > 0;) {
        tstride[static_cast<size_t>(keep_pos[i])] = stride;
        stride *= static_cast<size_t>(keep_sizes[i]);
    }
    return project(joint.probs(), sizes, tstride, tsize);
}

double entropy_of_table(const std::vector<double>& p) {
    double h = 0.0;
    for (double v : p)
        if (v > 0.0) h -= v * std::log2(v);
    return h;
}

}  // namespace

double entropy(const LabeledJoint& joint, const std::vector<std::string>& vars) {
    if (vars.empty()) throw std::invalid_argument("entropy: empty variable set");
    std::vector<int> sizes;
    return entropy_of_table(marginal_table(joint, vars, sizes));
}

double cond_mutual_information(const LabeledJoint& joint, const std::vector<std::string>& a,
                               const std::vector<std::string>& b,
                               const std::vector<std::string>& c) {
    if (a.empty() || b.empty())
        throw std::invalid_argument("cond_mutual_information: empty variable set");
    std::set<std::string> seen;
    for (const auto* group : {&a, &b, &c})
        for (const auto& name : *group)
            if (!seen.insert(name).second)
                throw std::invalid_argument("cond_mutual_information: overlapping subsets (" + name +
                                            ")");
    auto join = [](std::vector<std::string> base, const std::vector<std::string>& extra) {
        base.insert(base.end(), extra.begin(), extra.end());
        return base;
    };
    // I(A;B|C) = H(A,C) + H(B,C) - H(A,B,C) - H(C)
    double h_ac = entropy(joint, join(a, c));
    double h_bc = entropy(joint, join(b, c));
    double h_abc = entropy(joint, join(join(a, b), c));
    double h_c = c.empty() ? 0.0 : entropy(joint, c);
    double value = h_ac + h_bc - h_abc - h_c;
    if (value < -tolerances().cmi_clamp)
        throw std::runtime_error("cond_mutual_information: value below -tolerance");
    return std::max(value, 0.0);
}

LabeledJoint marginalize(const LabeledJoint& joint, const std::vector<std::string>& keep) {
    std::vector<int> sizes;
    auto table = marginal_table(joint, keep, sizes);
    return LabeledJoint(keep, sizes, std::move(table));
}

LabeledJoint condition(const LabeledJoint& joint,
                       const std::vector<std::pair<std::string, int>>& evidence) {
    const auto& sizes = joint.sizes();
    std::vector<int> fixed(sizes.size(), -1);
    for (const auto& [name, value] : evidence) {
        int v = joint.var_index(name);
        if (value < 0 || value >= sizes[static_cast<size_t>(v)])
            throw std::invalid_argument("condition: evidence value out of range for " + name);
        fixed[static_cast<size_t>(v)] = value;
    }
    std::vector<std::string> keep_names;
    std::vector<int> keep_sizes;
    for (size_t v = 0; v < sizes.size(); ++v)
        if (fixed[v] < 0) {
            keep_names.push_back(joint.names()[v]);
            keep_sizes.push_back(sizes[v]);
        }
    size_t tsize = 1;
    for (int s : keep_sizes) tsize *= static_cast<size_t>(s);
    std::vector<double> out(tsize, 0.0);
    std::vector<int> idx(sizes.size(), 0);
    double mass = 0.0;
    for (double p : joint.probs()) {
        bool match = true;
        for (size_t v = 0; v < sizes.size(); ++v)
            if (fixed[v] >= 0 && idx[v] != fixed[v]) {
                match = false;
                break;
            }
        if (match) {
            size_t tflat = 0;
            for (size_t v = 0; v < sizes.size(); ++v)
                if (fixed[v] < 0) tflat = tflat * static_cast<size_t>(sizes[v]) + static_cast<size_t>(idx[v]);
            out[tflat] += p;
            mass += p;
        }
        for (int v = static_cast<int>(sizes.size()) - 1; v >= 0; --v) {
            auto uv = static_cast<size_t>(v);
            if (++idx[uv] < sizes[uv]) break;
            idx[uv] = 0;
        }
    }
    if (mass <= 0.0) throw std::invalid_argument("condition: zero-probability evidence");
    for (double& p : out) p /= mass;
    return LabeledJoint(std::move(keep_names), std::move(keep_sizes), std::move(out));
}

Kernel conditional_kernel(const LabeledJoint& joint, const std::vector<std::string>& given,
                          const std::vector<std::string>& targets) {
    std::vector<std::string> all = given;
    all.insert(all.end(), targets.begin(), targets.end());
    LabeledJoint m = marginalize(joint, all);
    size_t in_n = 1, out_n = 1;
    std::vector<int> in_shape, out_shape;
    for (const auto& g : given) {
        in_shape.push_back(m.var_size(g));
        in_n *= static_cast<size_t>(in_shape.back());
    }
    for (const auto& t : targets) {
        out_shape.push_back(m.var_size(t));
        out_n *= static_cast<size_t>(out_shape.back());
    }
    // m is laid out with given vars outermost, so rows are contiguous.
    std::vector<double> table(m.probs());
    for (size_t r = 0; r < in_n; ++r) {
        double mass = 0.0;
        for (size_t c = 0; c < out_n; ++c) mass += table[r * out_n + c];
        if (mass > 0.0) {
            for (size_t c = 0; c < out_n; ++c) table[r * out_n + c] /= mass;
        } else {
            for (size_t c = 0; c < out_n; ++c) table[r * out_n + c] = 1.0 / static_cast<double>(out_n);
        }
    }
    return Kernel(std::move(in_shape), std::move(out_shape), std::move(table));
}

LabeledJoint extend_with_kernel(const LabeledJoint& joint, const std::vector<std::string>& new_names,
                                const std::vector<int>& new_sizes, const Kernel& kernel,
                                const std::vector<std::string>& given) {
    if (kernel.input_shape().size() != given.size())
        throw std::invalid_argument("extend_with_kernel: kernel arity does not match given vars");
    std::vector<int> given_pos(given.size());
    for (size_t i = 0; i < given.size(); ++i) {
        given_pos[i] = joint.var_index(given[i]);
        if (joint.sizes()[static_cast<size_t>(given_pos[i])] != kernel.input_shape()[i])
            throw std::invalid_argument("extend_with_kernel: size mismatch on " + given[i]);
    }
    size_t out_n = 1;
    for (int s : new_sizes) out_n *= static_cast<size_t>(s);
    if (out_n != static_cast<size_t>(kernel.output_size()))
        throw std::invalid_argument("extend_with_kernel: kernel output does not match new sizes");

    std::vector<std::string> names = joint.names();
    names.insert(names.end(), new_names.begin(), new_names.end());
    std::vector<int> sizes = joint.sizes();
    sizes.insert(sizes.end(), new_sizes.begin(), new_sizes.end());
    std::vector<double> probs(joint.cell_count() * out_n, 0.0);
    std::vector<int> idx(joint.sizes().size(), 0);
    for (size_t flat = 0; flat < joint.cell_count(); ++flat) {
        double p = joint.probs()[flat];
        if (p > 0.0) {
            size_t row = 0;
            for (size_t i = 0; i < given.size(); ++i)
                row = row * static_cast<size_t>(kernel.input_shape()[i]) +
                      static_cast<size_t>(idx[static_cast<size_t>(given_pos[i])]);
            auto krow = kernel.row(static_cast<int>(row));
            for (size_t c = 0; c < out_n; ++c) probs[flat * out_n + c] = p * krow[c];
        }
        for (int v = static_cast<int>(idx.size()) - 1; v >= 0; --v) {
            auto uv = static_cast<size_t>(v);
            if (++idx[uv] < joint.sizes()[uv]) break;
            idx[uv] = 0;
        }
    }
    return LabeledJoint(std::move(names), std::move(sizes), std::move(probs));
}

LabeledJoint add_derived_variable(const LabeledJoint& joint, const std::string& name, int size,
                                  const std::function<int(const std::vector<int>&)>& fn) {
    std::vector<std::string> names = joint.names();
    names.push_back(name);
    std::vector<int> sizes = joint.sizes();
    sizes.push_back(size);
    std::vector<double> probs(joint.cell_count() * static_cast<size_t>(size), 0.0);
    std::vector<int> idx(joint.sizes().size(), 0);
    for (size_t flat = 0; flat < joint.cell_count(); ++flat) {
        int value = fn(idx);
        if (value < 0 || value >= size)
            throw std::invalid_argument("add_derived_variable: function value out of range");
        probs[flat * static_cast<size_t>(size) + static_cast<size_t>(value)] = joint.probs()[flat];
        for (int v = static_cast<int>(idx.size()) - 1; v >= 0; --v) {
            auto uv = static_cast<size_t>(v);
            if (++idx[uv] < joint.sizes()[uv]) break;
            idx[uv] = 0;
        }
    }
    return LabeledJoint(std::move(names), std::move(sizes), std::move(probs));
}

}  // namespace sdmbc
