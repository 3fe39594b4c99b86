#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "sdmbc/tolerances.hpp"

namespace sdmbc {

/// Binary entropy in bits, with 0*log2(0) = 0. Throws std::domain_error if p
/// is outside [0,1] by more than 1e-12.
double binary_entropy(double p);

/// Finite probability vector. Entries must be >= 0 and sum to 1 within
/// tolerances().normalization.
class Pmf {
  public:
    explicit Pmf(std::vector<double> probs);

    static Pmf uniform(int n);
    static Pmf point_mass(int n, int index);
    /// Two-entry pmf {P(0), P(1)} with P(1) = p1.
    static Pmf bernoulli(double p1);

    int size() const { return static_cast<int>(probs_.size()); }
    double operator[](int i) const { return probs_[static_cast<size_t>(i)]; }
    const std::vector<double>& probs() const { return probs_; }

  private:
    std::vector<double> probs_;
};

/// Conditional probability table: one pmf over the (flattened, row-major)
/// output index space per (flattened, row-major) input index tuple.
class Kernel {
  public:
    Kernel(std::vector<int> input_shape, std::vector<int> output_shape,
           std::vector<double> table);

    /// Builds a deterministic kernel: fn maps an input index tuple to a
    /// flat output index.
    static Kernel deterministic(std::vector<int> input_shape, std::vector<int> output_shape,
                                const std::function<int(const std::vector<int>&)>& fn);

    const std::vector<int>& input_shape() const { return input_shape_; }
    const std::vector<int>& output_shape() const { return output_shape_; }
    int input_size() const { return in_size_; }
    int output_size() const { return out_size_; }

    double at(int row, int col) const { return table_[static_cast<size_t>(row) * out_size_ + col]; }
    std::span<const double> row(int r) const {
        return {table_.data() + static_cast<size_t>(r) * out_size_, static_cast<size_t>(out_size_)};
    }
    Pmf row_pmf(int r) const;
    const std::vector<double>& table() const { return table_; }

  private:
    std::vector<int> input_shape_, output_shape_;
    int in_size_ = 1, out_size_ = 1;
    std::vector<double> table_;
};

/// Dense joint distribution over named finite variables, row-major in the
/// declared variable order. Total mass must be 1 within tolerance.
class LabeledJoint {
  public:
    LabeledJoint(std::vector<std::string> names, std::vector<int> sizes,
                 std::vector<double> probs);

    static LabeledJoint from_pmf(const std::string& name, const Pmf& p);
    /// Product of two joints over disjoint variable sets.
    static LabeledJoint product(const LabeledJoint& a, const LabeledJoint& b);

    int variable_count() const { return static_cast<int>(names_.size()); }
    const std::vector<std::string>& names() const { return names_; }
    const std::vector<int>& sizes() const { return sizes_; }
    const std::vector<double>& probs() const { return probs_; }
    size_t cell_count() const { return probs_.size(); }

    /// Index of a named variable; throws std::invalid_argument if unknown.
    int var_index(const std::string& name) const;
    int var_size(const std::string& name) const { return sizes_[var_index(name)]; }

    size_t flatten(const std::vector<int>& indices) const;
    void unflatten(size_t flat, std::vector<int>& indices) const;
    double mass(const std::vector<int>& indices) const { return probs_[flatten(indices)]; }

  private:
    std::vector<std::string> names_;
    std::vector<int> sizes_;
    std::vector<double> probs_;
};

/// Shannon entropy (bits) of the marginal on vars.
double entropy(const LabeledJoint& joint, const std::vector<std::string>& vars);

/// I(A;B|C) in bits, clamped to 0 from below; c may be empty. Throws on
/// overlapping variable subsets.
double cond_mutual_information(const LabeledJoint& joint, const std::vector<std::string>& a,
                               const std::vector<std::string>& b,
                               const std::vector<std::string>& c);

LabeledJoint marginalize(const LabeledJoint& joint, const std::vector<std::string>& keep);

/// Conditions on evidence {name -> value} and drops those variables.
/// Throws std::invalid_argument on zero-probability evidence.
LabeledJoint condition(const LabeledJoint& joint,
                       const std::vector<std::pair<std::string, int>>& evidence);

/// Extracts P(targets | given) as a Kernel. Rows with zero conditioning mass
/// are filled uniformly.
Kernel conditional_kernel(const LabeledJoint& joint, const std::vector<std::string>& given,
                          const std::vector<std::string>& targets);

/// Appends variables distributed according to kernel applied to the listed
/// conditioning variables: P(..., new) = P(...) * K(new | given).
LabeledJoint extend_with_kernel(const LabeledJoint& joint, const std::vector<std::string>& new_names,
                                const std::vector<int>& new_sizes, const Kernel& kernel,
                                const std::vector<std::string>& given);

/// Appends a variable that is a deterministic function of the existing ones.
LabeledJoint add_derived_variable(const LabeledJoint& joint, const std::string& name, int size,
                                  const std::function<int(const std::vector<int>&)>& fn);

}  // namespace sdmbc
