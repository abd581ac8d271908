#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "secbc/error.hpp"

namespace secbc {

// Dense tensors are refused above this many cells.
inline constexpr std::uint64_t kEnumBudget = std::uint64_t{1} << 24;

// Product of sizes, throwing a resource error when it exceeds the budget.
std::uint64_t checked_cells(const std::vector<std::size_t>& sizes, const std::string& what,
                            std::uint64_t budget = kEnumBudget);

inline constexpr double kInf = std::numeric_limits<double>::infinity();

class Pmf {
public:
    Pmf() = default;
    explicit Pmf(std::vector<double> probs, double tol = 1e-12);

    static Pmf uniform(std::size_t k);
    static Pmf point(std::size_t k, std::size_t at);
    // Scales nonnegative weights to unit mass.
    static Pmf normalized(std::vector<double> weights);

    std::size_t size() const { return p_.size(); }
    double operator[](std::size_t i) const { return p_[i]; }
    const std::vector<double>& probs() const { return p_; }

private:
    std::vector<double> p_;
};

struct Axis {
    std::string name;
    std::size_t size = 1;
};

using AxisSet = std::vector<std::string>;

// Row-major tensor over named axes; the last axis varies fastest.
class JointPmf {
public:
    JointPmf() = default;
    JointPmf(std::vector<Axis> axes, std::vector<double> probs, double tol = 1e-12);

    static JointPmf from_pmf(const Pmf& p, const std::string& name);

    const std::vector<Axis>& axes() const { return axes_; }
    const std::vector<double>& probs() const { return probs_; }
    std::size_t cells() const { return probs_.size(); }
    std::size_t rank() const { return axes_.size(); }

    bool has_axis(const std::string& name) const;
    std::size_t axis_index(const std::string& name) const;
    std::size_t axis_size(const std::string& name) const { return axes_[axis_index(name)].size; }
    std::vector<std::size_t> strides() const;

    double at(const std::vector<std::size_t>& idx) const;

    // Marginal on `keep`, with axes in the order given.
    JointPmf marginal(const AxisSet& keep) const;
    Pmf flat() const { return Pmf(probs_, 1e-9); }

private:
    std::vector<Axis> axes_;
    std::vector<double> probs_;
};

// Stochastic matrix from the joint letters of `from` to the joint letters of `to`.
class CondPmf {
public:
    CondPmf() = default;
    CondPmf(std::vector<Axis> from, std::vector<Axis> to, std::vector<double> rows,
            double tol = 1e-12);

    const std::vector<Axis>& from() const { return from_; }
    const std::vector<Axis>& to() const { return to_; }
    std::size_t from_cells() const { return from_cells_; }
    std::size_t to_cells() const { return to_cells_; }
    double at(std::size_t from_cell, std::size_t to_cell) const {
        return rows_[from_cell * to_cells_ + to_cell];
    }
    const double* row_ptr(std::size_t from_cell) const { return rows_.data() + from_cell * to_cells_; }
    Pmf row(std::size_t from_cell) const;
    const std::vector<double>& data() const { return rows_; }

private:
    std::vector<Axis> from_, to_;
    std::size_t from_cells_ = 0, to_cells_ = 0;
    std::vector<double> rows_;
};

struct TypicalityParams {
    double eps = 0.1;
};

double entropy(const Pmf& p);
// Joint entropy of the listed axes.
double entropy(const JointPmf& j, const AxisSet& axes);
double cond_entropy(const JointPmf& j, const AxisSet& a, const AxisSet& given);
// I(A;B|C) in bits.
double mutual_info(const JointPmf& j, const AxisSet& a, const AxisSet& b, const AxisSet& c = {});

// +infinity when p is not absolutely continuous with respect to q.
double kl_divergence(const Pmf& p, const Pmf& q);
double tv_distance(const Pmf& p, const Pmf& q);

bool is_letter_typical(std::span<const std::size_t> seq, const Pmf& p, const TypicalityParams& params);

JointPmf marginalize(const JointPmf& j, const AxisSet& keep);
// Joint of `input` with `ch`, whose `from` axes must all be present in `input`.
JointPmf compose(const JointPmf& input, const CondPmf& ch);
// Single-axis convenience; the input axis takes the name of ch's only `from` axis.
JointPmf compose(const Pmf& input, const CondPmf& ch);
// i.i.d. extension; axes are named name_1 .. name_n.
JointPmf product_extend(const Pmf& p, std::size_t n, const std::string& name = "X");
// Memoryless extension of a channel, same naming scheme per axis.
CondPmf product_extend(const CondPmf& ch, std::size_t n);

// Binary entropy in bits.
double hb(double p);

}  // namespace secbc
