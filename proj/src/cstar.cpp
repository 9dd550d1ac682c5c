#include "drsys/cstar.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace drsys {

FiniteGroupoid::FiniteGroupoid(DRSystem sys) : sys_(sys) {
    const DirectedGraph& g = sys.graph();
    if (!g.is_acyclic()) throw NotAcyclic("the graph has a cycle; the groupoid is infinite");
    points_ = enumerate_boundary(g);

    // orbits: points sharing the terminal sink
    std::map<VertexId, int> orbit_id;
    orbit_of_.assign(points_.size(), -1);
    for (size_t i = 0; i < points_.size(); ++i) {
        VertexId sink = path_terminal(g, points_[i].prefix);
        auto [it, fresh] = orbit_id.emplace(sink, static_cast<int>(orbits_.size()));
        if (fresh) orbits_.emplace_back();
        orbit_of_[i] = it->second;
        orbits_[static_cast<size_t>(it->second)].push_back(static_cast<int>(i));
    }

    for (const auto& orbit : orbits_) {
        for (int xi : orbit) {
            for (int yi : orbit) {
                const BoundaryPoint& x = points_[static_cast<size_t>(xi)];
                const BoundaryPoint& y = points_[static_cast<size_t>(yi)];
                GroupoidElement e = make_element(sys, x, x.length(), y.length(), y);
                int id = static_cast<int>(elements_.size());
                elements_.push_back(std::move(e));
                range_.push_back(xi);
                source_.push_back(yi);
                pair_index_[{xi, yi}] = id;
                if (xi == yi) units_.push_back(id);
            }
        }
    }
}

int FiniteGroupoid::point_index(const BoundaryPoint& x) const {
    auto it = std::lower_bound(points_.begin(), points_.end(), x, PointLess{});
    if (it == points_.end() || !(*it == x))
        throw Error("point " + format_point(x) + " is not in the enumerated boundary");
    return static_cast<int>(it - points_.begin());
}

int FiniteGroupoid::element_index(int xi, int yi) const {
    auto it = pair_index_.find({xi, yi});
    return it == pair_index_.end() ? -1 : it->second;
}

int FiniteGroupoid::element_index(const GroupoidElement& g) const {
    return element_index(point_index(g.x), point_index(g.y));
}

int FiniteGroupoid::compose_index(int a, int b) const {
    if (source_[static_cast<size_t>(a)] != range_[static_cast<size_t>(b)]) return -1;
    return element_index(range_[static_cast<size_t>(a)], source_[static_cast<size_t>(b)]);
}

int FiniteGroupoid::inverse_index(int a) const {
    return element_index(source_[static_cast<size_t>(a)], range_[static_cast<size_t>(a)]);
}

long long FiniteGroupoid::algebra_dimension() const {
    long long dim = 0;
    for (const auto& orbit : orbits_) {
        long long k = static_cast<long long>(orbit.size());
        dim += k * k;
    }
    return dim;
}

ConvElement ConvElement::delta(const FiniteGroupoid& g, int elt) {
    ConvElement xi(g);
    xi[elt] = {1.0, 0.0};
    return xi;
}

ConvElement operator+(const ConvElement& a, const ConvElement& b) {
    ConvElement r(*a.g_);
    for (int i = 0; i < a.g_->size(); ++i) r[i] = a[i] + b[i];
    return r;
}

ConvElement operator-(const ConvElement& a, const ConvElement& b) {
    ConvElement r(*a.g_);
    for (int i = 0; i < a.g_->size(); ++i) r[i] = a[i] - b[i];
    return r;
}

ConvElement ConvElement::scaled(std::complex<double> s) const {
    ConvElement r(*g_);
    for (int i = 0; i < g_->size(); ++i) r[i] = coef_[static_cast<size_t>(i)] * s;
    return r;
}

double ConvElement::sup_norm() const {
    double m = 0.0;
    for (const auto& c : coef_) m = std::max(m, std::abs(c));
    return m;
}

ConvElement convolve(const ConvElement& a, const ConvElement& b) {
    const FiniteGroupoid& g = a.groupoid();
    if (&g != &b.groupoid()) throw Error("convolution across different groupoids");
    ConvElement r(g);
    for (int i = 0; i < g.size(); ++i) {
        if (a[i] == std::complex<double>{}) continue;
        for (int j = 0; j < g.size(); ++j) {
            if (b[j] == std::complex<double>{}) continue;
            int k = g.compose_index(i, j);
            if (k >= 0) r[k] += a[i] * b[j];
        }
    }
    return r;
}

ConvElement star(const ConvElement& a) {
    const FiniteGroupoid& g = a.groupoid();
    ConvElement r(g);
    for (int i = 0; i < g.size(); ++i) r[g.inverse_index(i)] = std::conj(a[i]);
    return r;
}

std::complex<double> unit_power(std::complex<double> z, long long k) {
    std::complex<double> base = k >= 0 ? z : std::conj(z);
    long long n = k >= 0 ? k : -k;
    std::complex<double> acc{1.0, 0.0};
    for (long long i = 0; i < n; ++i) acc *= base;
    return acc;
}

ConvElement weighted_action(const FiniteGroupoid& g, const IntegerFn& f,
                            std::complex<double> z, const ConvElement& xi) {
    if (std::abs(std::abs(z) - 1.0) > 1e-12)
        throw Error("weighted action needs a unimodular circle value");
    ConvElement r(g);
    for (int i = 0; i < g.size(); ++i) {
        long long c = cocycle_eval(g.system(), f, g.elements()[static_cast<size_t>(i)]);
        r[i] = unit_power(z, c) * xi[i];
    }
    return r;
}

std::vector<OrbitBlock> block_decomposition(const FiniteGroupoid& g) {
    std::vector<OrbitBlock> blocks;
    for (const auto& orbit : g.orbits()) blocks.push_back(OrbitBlock{orbit});
    // matrix-unit relations e_xy e_zw = [y=z] e_xw on every block
    for (const auto& block : blocks) {
        for (int x : block.point_indices)
            for (int y : block.point_indices)
                for (int z : block.point_indices)
                    for (int w : block.point_indices) {
                        int exy = g.element_index(x, y);
                        int ezw = g.element_index(z, w);
                        int prod = g.compose_index(exy, ezw);
                        if (y == z) {
                            if (prod != g.element_index(x, w))
                                throw Error("matrix-unit relation failed");
                        } else if (prod != -1) {
                            throw Error("matrix units compose across distinct sources");
                        }
                    }
    }
    return blocks;
}

std::vector<std::vector<long long>> cocycle_table(const FiniteGroupoid& g,
                                                  const std::vector<IntegerFn>& weights) {
    std::vector<std::vector<long long>> table;
    table.reserve(weights.size());
    for (const IntegerFn& f : weights) {
        std::vector<long long> row(static_cast<size_t>(g.size()));
        for (int i = 0; i < g.size(); ++i)
            row[static_cast<size_t>(i)] =
                cocycle_eval(g.system(), f, g.elements()[static_cast<size_t>(i)]);
        table.push_back(std::move(row));
    }
    return table;
}

FixedPointReport fixed_point_intersection(const FiniteGroupoid& g,
                                          const std::vector<IntegerFn>& weights,
                                          const std::vector<std::complex<double>>& zs) {
    FixedPointReport report;
    auto table = cocycle_table(g, weights);
    for (int i = 0; i < g.size(); ++i) {
        bool fixed = true;
        for (const auto& row : table) fixed = fixed && row[static_cast<size_t>(i)] == 0;
        if (fixed) report.fixed_basis.push_back(i);
    }
    report.is_diagonal = report.fixed_basis == g.unit_indices();
    for (int i : report.fixed_basis) {
        ConvElement d = ConvElement::delta(g, i);
        for (const IntegerFn& f : weights)
            for (auto z : zs)
                report.max_residual = std::max(
                    report.max_residual, (weighted_action(g, f, z, d) - d).sup_norm());
    }
    return report;
}

std::vector<std::complex<double>> standard_circle_samples(std::uint64_t seed) {
    std::vector<std::complex<double>> zs;
    const double pi = 3.14159265358979323846;
    for (int k = 0; k < 8; ++k)
        zs.push_back(std::polar(1.0, 2.0 * pi * k / 8.0));
    std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ull);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * pi);
    zs.push_back(std::polar(1.0, angle(rng)));
    zs.push_back(std::polar(1.0, angle(rng)));
    return zs;
}

std::vector<int> leg_permutation(const CandidateHomeo& h, const FiniteGroupoid& ge,
                                 const FiniteGroupoid& gf, bool require_conjugacy) {
    if (!h.verify().ok) throw UnverifiedMapError("leg_permutation needs a homeomorphism");
    if (require_conjugacy) {
        ConjugacyVerdict v = check_conjugacy(h);
        if (!v.is_conjugacy)
            throw NotConjugacy("the supplied map is not a conjugacy (failing: " +
                               to_string(v.failing_condition) + ")");
    }
    std::vector<int> perm(static_cast<size_t>(ge.size()), -1);
    for (int i = 0; i < ge.size(); ++i) {
        const GroupoidElement& e = ge.elements()[static_cast<size_t>(i)];
        int xi = gf.point_index(h.map_point(e.x));
        int yi = gf.point_index(h.map_point(e.y));
        int j = gf.element_index(xi, yi);
        if (j < 0)
            throw Error("leg map does not preserve orbits: " + format_element(e));
        perm[static_cast<size_t>(i)] = j;
    }
    return perm;
}

ConvElement apply_permutation(const std::vector<int>& perm, const FiniteGroupoid& gf,
                              const ConvElement& xi) {
    ConvElement r(gf);
    for (size_t i = 0; i < perm.size(); ++i)
        r[perm[i]] += xi[static_cast<int>(i)];
    return r;
}

StarIsoReport verify_star_isomorphism(const std::vector<int>& perm,
                                      const FiniteGroupoid& ge, const FiniteGroupoid& gf,
                                      double tol) {
    StarIsoReport report;
    report.multiplicative = true;
    report.star_preserving = true;
    report.diagonal_preserved = true;
    for (int i = 0; i < ge.size(); ++i) {
        ConvElement di = ConvElement::delta(ge, i);
        ConvElement pdi = apply_permutation(perm, gf, di);
        double r1 = (apply_permutation(perm, gf, star(di)) - star(pdi)).sup_norm();
        report.max_residual = std::max(report.max_residual, r1);
        if (r1 > tol) report.star_preserving = false;
        bool unit_e =
            std::find(ge.unit_indices().begin(), ge.unit_indices().end(), i) !=
            ge.unit_indices().end();
        bool unit_f = std::find(gf.unit_indices().begin(), gf.unit_indices().end(),
                                perm[static_cast<size_t>(i)]) != gf.unit_indices().end();
        if (unit_e != unit_f) report.diagonal_preserved = false;
        for (int j = 0; j < ge.size(); ++j) {
            ConvElement dj = ConvElement::delta(ge, j);
            ConvElement lhs = apply_permutation(perm, gf, convolve(di, dj));
            ConvElement rhs = convolve(pdi, apply_permutation(perm, gf, dj));
            double r2 = (lhs - rhs).sup_norm();
            report.max_residual = std::max(report.max_residual, r2);
            if (r2 > tol) report.multiplicative = false;
        }
    }
    return report;
}

IntertwiningReport verify_intertwining(const CandidateHomeo& h,
                                       const std::vector<int>& perm,
                                       const FiniteGroupoid& ge, const FiniteGroupoid& gf,
                                       int depth,
                                       const std::vector<std::complex<double>>& zs,
                                       double tol) {
    IntertwiningReport report;
    report.ok = true;
    std::unique_ptr<CandidateHomeo> inv = h.inverse_view();
    inv->verify();
    for (const Cylinder& gc : cylinder_family(h.codomain_graph(), depth)) {
        IntegerFn g = IntegerFn::indicator(gc);
        IntegerFn goh = g.pushforward(*inv);  // g o h lives over the domain graph
        for (auto z : zs) {
            for (int i = 0; i < ge.size(); ++i) {
                ConvElement d = ConvElement::delta(ge, i);
                ConvElement lhs =
                    apply_permutation(perm, gf, weighted_action(ge, goh, z, d));
                ConvElement rhs =
                    weighted_action(gf, g, z, apply_permutation(perm, gf, d));
                double r = (lhs - rhs).sup_norm();
                report.max_residual = std::max(report.max_residual, r);
                if (r > tol && report.ok) {
                    report.ok = false;
                    report.witness = "g=" + format_cylinder(gc) + " z=(" +
                                     std::to_string(z.real()) + "," +
                                     std::to_string(z.imag()) + ")";
                }
            }
        }
    }
    return report;
}

}  // namespace drsys
