#include "secbc/probkit.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <sstream>

namespace secbc {

const char* errc_name(Errc c) {
    switch (c) {
        case Errc::ok: return "ok";
        case Errc::invalid_argument: return "invalid-argument";
        case Errc::resource: return "resource";
        case Errc::parse: return "parse";
        case Errc::validation: return "validation";
        case Errc::encoder_failure: return "encoder-failure";
        case Errc::internal: return "internal";
    }
    return "unknown";
}

std::uint64_t checked_cells(const std::vector<std::size_t>& sizes, const std::string& what,
                            std::uint64_t budget) {
    long double total = 1.0L;
    std::uint64_t cells = 1;
    for (auto s : sizes) {
        total *= static_cast<long double>(s);
        cells *= s;
        if (total > static_cast<long double>(budget)) {
            std::ostringstream os;
            os << "enumeration budget exceeded for " << what << ": ";
            std::ostringstream dims;
            for (std::size_t i = 0; i < sizes.size(); ++i) dims << (i ? "x" : "") << sizes[i];
            os << dims.str() << " cells > " << budget;
            fail(Errc::resource, os.str());
        }
    }
    return cells;
}

namespace {

void check_mass(const std::vector<double>& p, double tol, const char* what) {
    require(!p.empty(), std::string(what) + ": empty alphabet");
    double s = 0.0;
    for (double v : p) {
        require(std::isfinite(v) && v >= 0.0, std::string(what) + ": negative or non-finite entry");
        s += v;
    }
    if (std::fabs(s - 1.0) > tol) {
        std::ostringstream os;
        os << what << ": mass " << s << " differs from 1";
        fail(Errc::invalid_argument, os.str());
    }
}

double plogp(double p) { return p > 0.0 ? -p * std::log2(p) : 0.0; }

}  // namespace

double hb(double p) {
    if (p <= 0.0 || p >= 1.0) return 0.0;
    return plogp(p) + plogp(1.0 - p);
}

// ---------------------------------------------------------------- Pmf

Pmf::Pmf(std::vector<double> probs, double tol) : p_(std::move(probs)) { check_mass(p_, tol, "Pmf"); }

Pmf Pmf::uniform(std::size_t k) {
    require(k >= 1, "Pmf::uniform: empty alphabet");
    return Pmf(std::vector<double>(k, 1.0 / static_cast<double>(k)));
}

Pmf Pmf::point(std::size_t k, std::size_t at) {
    require(at < k, "Pmf::point: letter outside alphabet");
    std::vector<double> p(k, 0.0);
    p[at] = 1.0;
    return Pmf(std::move(p));
}

Pmf Pmf::normalized(std::vector<double> w) {
    double s = 0.0;
    for (double v : w) {
        require(std::isfinite(v) && v >= 0.0, "Pmf::normalized: bad weight");
        s += v;
    }
    require(s > 0.0, "Pmf::normalized: zero total weight");
    for (double& v : w) v /= s;
    return Pmf(std::move(w), 1e-9);
}

// ---------------------------------------------------------------- JointPmf

JointPmf::JointPmf(std::vector<Axis> axes, std::vector<double> probs, double tol)
    : axes_(std::move(axes)), probs_(std::move(probs)) {
    std::set<std::string> names;
    std::vector<std::size_t> sizes;
    for (const auto& a : axes_) {
        require(a.size >= 1, "JointPmf: axis '" + a.name + "' has size 0");
        require(names.insert(a.name).second, "JointPmf: duplicate axis name '" + a.name + "'");
        sizes.push_back(a.size);
    }
    auto cells = checked_cells(sizes, "JointPmf");
    require(cells == probs_.size(), "JointPmf: tensor size does not match axes");
    check_mass(probs_, tol, "JointPmf");
}

JointPmf JointPmf::from_pmf(const Pmf& p, const std::string& name) {
    return JointPmf({{name, p.size()}}, p.probs(), 1e-9);
}

bool JointPmf::has_axis(const std::string& name) const {
    return std::any_of(axes_.begin(), axes_.end(), [&](const Axis& a) { return a.name == name; });
}

std::size_t JointPmf::axis_index(const std::string& name) const {
    for (std::size_t i = 0; i < axes_.size(); ++i)
        if (axes_[i].name == name) return i;
    fail(Errc::invalid_argument, "unknown axis '" + name + "'");
}

std::vector<std::size_t> JointPmf::strides() const {
    std::vector<std::size_t> st(axes_.size(), 1);
    for (std::size_t i = axes_.size(); i-- > 1;) st[i - 1] = st[i] * axes_[i].size;
    return st;
}

double JointPmf::at(const std::vector<std::size_t>& idx) const {
    require(idx.size() == axes_.size(), "JointPmf::at: wrong index rank");
    auto st = strides();
    std::size_t off = 0;
    for (std::size_t i = 0; i < idx.size(); ++i) {
        require(idx[i] < axes_[i].size, "JointPmf::at: index out of range");
        off += idx[i] * st[i];
    }
    return probs_[off];
}

JointPmf JointPmf::marginal(const AxisSet& keep) const {
    std::vector<std::size_t> pos;
    std::vector<Axis> out_axes;
    std::set<std::string> seen;
    for (const auto& k : keep) {
        require(seen.insert(k).second, "marginal: axis '" + k + "' listed twice");
        pos.push_back(axis_index(k));
        out_axes.push_back(axes_[pos.back()]);
    }
    std::vector<std::size_t> out_st(pos.size(), 1);
    for (std::size_t i = pos.size(); i-- > 1;) out_st[i - 1] = out_st[i] * out_axes[i].size;
    std::size_t out_cells = 1;
    for (const auto& a : out_axes) out_cells *= a.size;

    // Per-source-axis contribution to the output offset.
    std::vector<std::size_t> contrib(axes_.size(), 0);
    for (std::size_t i = 0; i < pos.size(); ++i) contrib[pos[i]] = out_st[i];

    std::vector<double> out(out_cells, 0.0);
    std::vector<std::size_t> idx(axes_.size(), 0);
    std::size_t off = 0;
    for (std::size_t cell = 0; cell < probs_.size(); ++cell) {
        out[off] += probs_[cell];
        for (std::size_t d = axes_.size(); d-- > 0;) {
            if (++idx[d] < axes_[d].size) {
                off += contrib[d];
                break;
            }
            off -= contrib[d] * (axes_[d].size - 1);
            idx[d] = 0;
        }
    }
    return JointPmf(std::move(out_axes), std::move(out), 1e-9);
}

// ---------------------------------------------------------------- CondPmf

CondPmf::CondPmf(std::vector<Axis> from, std::vector<Axis> to, std::vector<double> rows, double tol)
    : from_(std::move(from)), to_(std::move(to)), rows_(std::move(rows)) {
    std::vector<std::size_t> fs, ts, all;
    for (const auto& a : from_) fs.push_back(a.size), all.push_back(a.size);
    for (const auto& a : to_) ts.push_back(a.size), all.push_back(a.size);
    from_cells_ = checked_cells(fs, "CondPmf input");
    to_cells_ = checked_cells(ts, "CondPmf output");
    checked_cells(all, "CondPmf");
    require(rows_.size() == from_cells_ * to_cells_, "CondPmf: row data size mismatch");
    for (std::size_t r = 0; r < from_cells_; ++r) {
        std::vector<double> row(rows_.begin() + r * to_cells_, rows_.begin() + (r + 1) * to_cells_);
        check_mass(row, tol, "CondPmf row");
    }
}

Pmf CondPmf::row(std::size_t from_cell) const {
    return Pmf(std::vector<double>(rows_.begin() + from_cell * to_cells_,
                                   rows_.begin() + (from_cell + 1) * to_cells_),
               1e-9);
}

// ---------------------------------------------------------------- measures

double entropy(const Pmf& p) {
    double h = 0.0;
    for (double v : p.probs()) h += plogp(v);
    return h;
}

double entropy(const JointPmf& j, const AxisSet& axes) {
    if (axes.empty()) return 0.0;
    auto m = j.marginal(axes);
    double h = 0.0;
    for (double v : m.probs()) h += plogp(v);
    return h;
}

double cond_entropy(const JointPmf& j, const AxisSet& a, const AxisSet& given) {
    AxisSet ag = a;
    ag.insert(ag.end(), given.begin(), given.end());
    return entropy(j, ag) - entropy(j, given);
}

double mutual_info(const JointPmf& j, const AxisSet& a, const AxisSet& b, const AxisSet& c) {
    std::set<std::string> seen;
    for (const auto* s : {&a, &b, &c})
        for (const auto& n : *s) {
            require(seen.insert(n).second, "mutual_info: axis '" + n + "' appears in more than one set");
            j.axis_index(n);
        }
    require(!a.empty() && !b.empty(), "mutual_info: empty argument set");
    AxisSet ac = a, bc = b, abc = a;
    ac.insert(ac.end(), c.begin(), c.end());
    bc.insert(bc.end(), c.begin(), c.end());
    abc.insert(abc.end(), b.begin(), b.end());
    abc.insert(abc.end(), c.begin(), c.end());
    return entropy(j, ac) + entropy(j, bc) - entropy(j, abc) - entropy(j, c);
}

double kl_divergence(const Pmf& p, const Pmf& q) {
    require(p.size() == q.size(), "kl_divergence: alphabet mismatch");
    double d = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (p[i] <= 0.0) continue;
        if (q[i] <= 0.0) return kInf;
        d += p[i] * std::log2(p[i] / q[i]);
    }
    return d;
}

double tv_distance(const Pmf& p, const Pmf& q) {
    require(p.size() == q.size(), "tv_distance: alphabet mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) s += std::fabs(p[i] - q[i]);
    return std::min(1.0, 0.5 * s);
}

bool is_letter_typical(std::span<const std::size_t> seq, const Pmf& p, const TypicalityParams& params) {
    require(!seq.empty(), "is_letter_typical: empty sequence");
    require(params.eps >= 0.0, "is_letter_typical: negative eps");
    std::vector<std::size_t> count(p.size(), 0);
    for (auto a : seq) {
        require(a < p.size(), "is_letter_typical: letter outside alphabet");
        ++count[a];
    }
    const double n = static_cast<double>(seq.size());
    for (std::size_t a = 0; a < p.size(); ++a) {
        double nu = static_cast<double>(count[a]) / n;
        if (std::fabs(nu - p[a]) > params.eps * p[a] + 1e-12) return false;
    }
    return true;
}

// ---------------------------------------------------------------- builders

JointPmf marginalize(const JointPmf& j, const AxisSet& keep) { return j.marginal(keep); }

JointPmf compose(const JointPmf& input, const CondPmf& ch) {
    // Offsets of ch's conditioning letter inside the input tensor.
    std::vector<std::size_t> from_pos;
    for (const auto& a : ch.from()) {
        auto i = input.axis_index(a.name);
        require(input.axes()[i].size == a.size, "compose: axis '" + a.name + "' size mismatch");
        from_pos.push_back(i);
    }
    std::vector<Axis> axes = input.axes();
    std::vector<std::size_t> sizes;
    for (const auto& a : axes) sizes.push_back(a.size);
    for (const auto& a : ch.to()) {
        require(!input.has_axis(a.name), "compose: output axis '" + a.name + "' already present");
        axes.push_back(a);
        sizes.push_back(a.size);
    }
    checked_cells(sizes, "compose");

    std::vector<std::size_t> from_st(ch.from().size(), 1);
    for (std::size_t i = from_st.size(); i-- > 1;) from_st[i - 1] = from_st[i] * ch.from()[i].size;
    auto in_st = input.strides();
    std::vector<std::size_t> contrib(input.rank(), 0);
    for (std::size_t i = 0; i < from_pos.size(); ++i) contrib[from_pos[i]] = from_st[i];

    const std::size_t tc = ch.to_cells();
    std::vector<double> out(input.cells() * tc);
    for (std::size_t cell = 0; cell < input.cells(); ++cell) {
        std::size_t fc = 0;
        for (std::size_t d = 0; d < input.rank(); ++d)
            fc += ((cell / in_st[d]) % input.axes()[d].size) * contrib[d];
        const double pin = input.probs()[cell];
        const double* row = ch.row_ptr(fc);
        for (std::size_t t = 0; t < tc; ++t) out[cell * tc + t] = pin * row[t];
    }
    return JointPmf(std::move(axes), std::move(out), 1e-9);
}

JointPmf compose(const Pmf& input, const CondPmf& ch) {
    require(ch.from().size() == 1, "compose: channel must have a single input axis");
    require(ch.from()[0].size == input.size(), "compose: input alphabet mismatch");
    return compose(JointPmf::from_pmf(input, ch.from()[0].name), ch);
}

JointPmf product_extend(const Pmf& p, std::size_t n, const std::string& name) {
    require(n >= 1, "product_extend: n must be positive");
    std::vector<std::size_t> sizes(n, p.size());
    auto cells = checked_cells(sizes, "product_extend");
    std::vector<double> out(cells, 1.0);
    std::vector<Axis> axes;
    for (std::size_t t = 0; t < n; ++t) axes.push_back({name + "_" + std::to_string(t + 1), p.size()});
    for (std::size_t cell = 0; cell < cells; ++cell) {
        std::size_t c = cell;
        double v = 1.0;
        for (std::size_t t = 0; t < n; ++t) {
            v *= p[c % p.size()];
            c /= p.size();
        }
        out[cell] = v;
    }
    return JointPmf(std::move(axes), std::move(out), 1e-9);
}

CondPmf product_extend(const CondPmf& ch, std::size_t n) {
    require(n >= 1, "product_extend: n must be positive");
    std::vector<std::size_t> sizes;
    for (std::size_t t = 0; t < n; ++t) {
        sizes.push_back(ch.from_cells());
        sizes.push_back(ch.to_cells());
    }
    checked_cells(sizes, "product_extend");
    std::vector<Axis> from, to;
    for (std::size_t t = 0; t < n; ++t) {
        for (const auto& a : ch.from()) from.push_back({a.name + "_" + std::to_string(t + 1), a.size});
        for (const auto& a : ch.to()) to.push_back({a.name + "_" + std::to_string(t + 1), a.size});
    }
    std::size_t fcells = 1, tcells = 1;
    for (std::size_t t = 0; t < n; ++t) fcells *= ch.from_cells(), tcells *= ch.to_cells();
    std::vector<double> rows(fcells * tcells);
    // Letter t occupies digit t from the most significant end in both index spaces.
    for (std::size_t f = 0; f < fcells; ++f) {
        for (std::size_t o = 0; o < tcells; ++o) {
            std::size_t fc = f, oc = o;
            double v = 1.0;
            for (std::size_t t = 0; t < n; ++t) {
                v *= ch.at(fc % ch.from_cells(), oc % ch.to_cells());
                fc /= ch.from_cells();
                oc /= ch.to_cells();
            }
            rows[f * tcells + o] = v;
        }
    }
    return CondPmf(std::move(from), std::move(to), std::move(rows), 1e-9);
}

}  // namespace secbc
