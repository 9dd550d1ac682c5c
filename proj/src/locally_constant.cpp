#include "drsys/locally_constant.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace drsys {

IntegerFn domain_indicator(const DirectedGraph& g) {
    std::vector<std::pair<Cylinder, long long>> terms;
    for (EdgeId e = 0; e < g.edge_count(); ++e)
        terms.emplace_back(Cylinder{&g, Path{g.src(e), {e}}}, 1);
    return IntegerFn::weighted_sum(g, terms);
}

std::vector<Cylinder> cylinder_family(const DirectedGraph& g, int depth) {
    std::vector<Cylinder> family;
    for (int d = 0; d <= depth; ++d)
        for (Path& p : all_paths_of_length(g, d)) family.push_back(Cylinder{&g, std::move(p)});
    return family;
}

FunctionRouteReport check_function_route(const CandidateHomeo& h, int depth) {
    if (!h.verify().ok)
        throw UnverifiedMapError("check_function_route needs a verified homeomorphism");
    const DirectedGraph& E = h.domain_graph();
    const DirectedGraph& F = h.codomain_graph();
    FunctionRouteReport report;
    report.depth = depth;

    std::vector<IntegerFn> family;
    for (const Cylinder& c : cylinder_family(E, depth))
        family.push_back(IntegerFn::indicator(c));

    auto describe = [&](const IntegerFn& f, const IntegerFn& lhs, const IntegerFn& rhs,
                        const std::string& tag, const IntegerFn* g2) {
        std::string s = tag + ": f=" + (f.pieces().empty()
                                            ? std::string("0")
                                            : format_cylinder(f.pieces().front().first));
        if (g2 && !g2->pieces().empty())
            s += " g=" + format_cylinder(g2->pieces().front().first);
        if (auto x = lhs.disagreement_point(rhs)) s += " at " + format_point(*x);
        return s;
    };

    // multiplicative route
    report.cond_upper = true;
    for (const IntegerFn& f : family) {
        IntegerFn pf = f.pushforward(h);
        IntegerFn sf = f.sigma_upper_star();
        IntegerFn spf = pf.sigma_upper_star();
        for (const IntegerFn& g2 : family) {
            IntegerFn lhs = (sf * g2).pushforward(h);
            IntegerFn rhs = spf * g2.pushforward(h);
            if (!(lhs == rhs)) {
                report.cond_upper = false;
                if (report.witness.empty())
                    report.witness = describe(f, lhs, rhs, "upper", &g2);
                break;
            }
        }
        if (!report.cond_upper) break;
    }

    // summing route: support condition first
    IntegerFn dom_e = domain_indicator(E);
    IntegerFn dom_f = domain_indicator(F);
    bool support_ok = dom_e.pushforward(h) == dom_f;
    report.cond_lower = support_ok;
    if (!support_ok && report.witness.empty())
        report.witness = "lower: h(dom sigma) differs from dom sigma";
    if (support_ok) {
        for (const IntegerFn& f : family) {
            if (f.pieces().empty()) continue;
            bool in_domain = true;
            for (const auto& [c, v] : f.pieces()) in_domain = in_domain && c.depth() >= 1;
            if (!in_domain) continue;  // not a C_c(dom sigma) member
            IntegerFn lhs = f.sigma_lower_star().pushforward(h);
            std::optional<IntegerFn> rhs;
            try {
                rhs = f.pushforward(h).sigma_lower_star();
            } catch (const SupportError&) {
                report.cond_lower = false;
                if (report.witness.empty())
                    report.witness = describe(f, lhs, lhs, "lower: image support", nullptr);
                break;
            }
            if (!(lhs == *rhs)) {
                report.cond_lower = false;
                if (report.witness.empty())
                    report.witness = describe(f, lhs, *rhs, "lower", nullptr);
                break;
            }
        }
    }
    return report;
}

namespace {

struct ScalarToken {
    enum class Kind { Integer, Rational, Complex } kind;
    long long int_value = 0;
    Rational rat_value{0};
    std::complex<double> cpx_value{0, 0};
};

ScalarToken parse_scalar(const std::string& tok, int line) {
    ScalarToken out;
    if (tok.find('i') != std::string::npos) {
        // a+bi or a-bi with float parts
        auto ipos = tok.rfind('i');
        std::string body = tok.substr(0, ipos);
        size_t split = body.find_last_of("+-");
        if (split == std::string::npos || split == 0)
            throw ParseError("bad complex literal '" + tok + "'", line);
        try {
            double re = std::stod(body.substr(0, split));
            double im = std::stod(body.substr(split));
            out.kind = ScalarToken::Kind::Complex;
            out.cpx_value = {re, im};
            return out;
        } catch (const std::exception&) {
            throw ParseError("bad complex literal '" + tok + "'", line);
        }
    }
    auto slash = tok.find('/');
    try {
        if (slash != std::string::npos) {
            long long p = std::stoll(tok.substr(0, slash));
            long long q = std::stoll(tok.substr(slash + 1));
            if (q == 0) throw ParseError("zero denominator", line);
            out.kind = ScalarToken::Kind::Rational;
            out.rat_value = Rational(p, q);
            return out;
        }
        out.kind = ScalarToken::Kind::Integer;
        out.int_value = std::stoll(tok);
        return out;
    } catch (const ParseError&) {
        throw;
    } catch (const std::exception&) {
        throw ParseError("bad scalar literal '" + tok + "'", line);
    }
}

template <typename V, typename Convert>
LocallyConstant<V> parse_function_impl(const DirectedGraph& g, const std::string& text,
                                       Convert convert) {
    std::vector<std::pair<Cylinder, V>> terms;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string kw;
        if (!(ls >> kw)) continue;
        if (kw != "cyl") throw ParseError("unknown directive '" + kw + "'", lineno);
        std::string lit, val;
        if (!(ls >> lit >> val)) throw ParseError("cyl needs <literal> <value>", lineno);
        Cylinder c;
        try {
            c = parse_cylinder(g, lit);
        } catch (const ParseError& e) {
            throw ParseError(std::string(e.what()), lineno);
        }
        terms.emplace_back(c, convert(parse_scalar(val, lineno), lineno));
    }
    return LocallyConstant<V>::weighted_sum(g, terms);
}

}  // namespace

IntegerFn parse_integer_function(const DirectedGraph& g, const std::string& text) {
    return parse_function_impl<long long>(
        g, text, [](const ScalarToken& t, int line) -> long long {
            if (t.kind != ScalarToken::Kind::Integer)
                throw ParseError("integer-valued function expected", line);
            return t.int_value;
        });
}

RationalFn parse_rational_function(const DirectedGraph& g, const std::string& text) {
    return parse_function_impl<Rational>(
        g, text, [](const ScalarToken& t, int line) -> Rational {
            switch (t.kind) {
                case ScalarToken::Kind::Integer: return Rational(t.int_value);
                case ScalarToken::Kind::Rational: return t.rat_value;
                default: throw ParseError("rational-valued function expected", line);
            }
        });
}

ComplexFn parse_complex_function(const DirectedGraph& g, const std::string& text) {
    return parse_function_impl<std::complex<double>>(
        g, text, [](const ScalarToken& t, int) -> std::complex<double> {
            switch (t.kind) {
                case ScalarToken::Kind::Integer:
                    return {static_cast<double>(t.int_value), 0.0};
                case ScalarToken::Kind::Rational:
                    return {boost::rational_cast<double>(t.rat_value), 0.0};
                default: return t.cpx_value;
            }
        });
}

IntegerFn load_integer_function_file(const DirectedGraph& g, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open function file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_integer_function(g, buf.str());
}

}  // namespace drsys
