// hecke: command-line front end

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "hecke/hecke.hpp"

using namespace hecke;

namespace {

constexpr const char* kVersion = "1.0.0";

struct UsageError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct Globals {
    std::string precision = "double";
    std::string output = "auto";
    std::string cache_dir;
    int threads = 1;
    std::uint64_t seed = 0;
};

cplx parse_s(const std::string& text) {
    try {
        return parse_complex(text);
    } catch (const DomainError& e) {
        throw UsageError(e.what());
    }
}

json provenance(const Globals& g, json extra) {
    json p{{"tool", "hecke"}, {"version", kVersion}, {"precision", g.precision}, {"seed", g.seed}};
    for (auto& [k, v] : extra.items()) p[k] = v;
    return p;
}

void csv_header(std::ostream& os, const json& prov) {
    for (auto& [k, v] : prov.items()) os << "# " << k << "=" << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
}

std::string fmt(const std::string& requested, const char* fallback) { return requested == "auto" ? fallback : requested; }

void emit_json(const json& j) { std::cout << j.dump(2) << "\n"; }

template <typename Real>
json matrix_json(const GroupElement<Real>& g) {
    auto e = [](const Real& x) -> json {
        if constexpr (std::is_same_v<Real, double>) return x;
        else return json::array({x.hi, x.lo});
    };
    return json::array({json::array({e(g.a), e(g.b)}), json::array({e(g.c), e(g.d)})});
}

template <typename Real>
json generators_json(int q) {
    auto gen = hecke_generators<Real>(q);
    auto cg = conjugated_generators<Real>(q);
    json g = json::array(), h = json::array();
    for (int k = 1; k < q; ++k) {
        g.push_back({{"k", k}, {"matrix", matrix_json(gen.g[k])}});
        h.push_back({{"k", k}, {"matrix", matrix_json(cg.h[k])}});
    }
    auto id = group_identities<Real>(q);
    json out;
    out["lambda"] = to_double(gen.lambda);
    out["T"] = matrix_json(gen.T);
    out["S"] = matrix_json(gen.S);
    out["U"] = matrix_json(gen.U);
    out["g"] = g;
    out["h"] = h;
    out["identities"] = {{"S^2", id.s_squared},
                         {"(TS)^q", id.ts_power},
                         {"Q g_k = g_q-k Q", id.q_symmetry},
                         {"h_k J = J h_q-k", id.j_symmetry},
                         {"max_deviation", id.max_deviation()}};
    return out;
}

void require_double(const Globals& g, const char* cmd) {
    if (g.precision != "double")
        throw UsageError(std::string("--precision dd is available for generators and geodesics only, not ") + cmd);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Selberg zeta functions of Hecke triangle groups via transfer operators"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);
    // global flags may follow the subcommand
    app.fallthrough();
    Globals G;
    app.add_option("--precision", G.precision, "double or dd (double-double, group arithmetic only)")
        ->check(CLI::IsMember({"double", "dd"}));
    app.add_option("--output", G.output, "json or csv")->check(CLI::IsMember({"auto", "json", "csv", "table"}));
    app.add_option("--cache-dir", G.cache_dir, "directory for cached length spectra");
    app.add_option("--threads", G.threads, "worker threads")->check(CLI::Range(1, 256));
    app.add_option("--seed", G.seed, "seed for sampled checks");

    int q = 3, n = 1, order = 24, steps = 4, ntail = 400, kmax = -1, points = 200;
    double lmax = 10.0, tmin = 0, tmax = 0, tstep = 0.02, t = 0, sigma = 0.5;
    std::string s_text = "2", mode = "hurwitz", sym = "full", out_file, in_file, dump_file, parity = "even",
                trace_mode = "words";

    auto add_q = [&](CLI::App* c) { c->add_option("--q", q, "group index q >= 3")->required()->check(CLI::Range(3, 1000)); };

    auto* c_gen = app.add_subcommand("generators", "generator matrices and identity report");
    add_q(c_gen);

    auto* c_geo = app.add_subcommand("geodesics", "primitive length spectrum up to L");
    add_q(c_geo);
    c_geo->add_option("--lmax", lmax, "maximal length")->required()->check(CLI::PositiveNumber);
    c_geo->add_option("--cache", G.cache_dir, "cache directory (same as --cache-dir)");

    auto* c_tr = app.add_subcommand("trace", "trace of the n-th power of the transfer operator");
    add_q(c_tr);
    c_tr->add_option("--n", n, "power")->required()->check(CLI::Range(1, 12));
    c_tr->add_option("--s", s_text, "spectral parameter, e.g. 2 or 0.5+9.5i")->required();
    c_tr->add_option("--mode", trace_mode, "words or matrix")->check(CLI::IsMember({"words", "matrix"}));
    c_tr->add_option("--order", order, "matrix mode: truncation order M")->check(CLI::Range(0, 400));
    c_tr->add_option("--op-mode", mode, "matrix mode: hurwitz or truncate")->check(CLI::IsMember({"hurwitz", "truncate"}));

    auto* c_det = app.add_subcommand("det", "Fredholm determinant det(1 - L_s)");
    add_q(c_det);
    c_det->add_option("--s", s_text, "spectral parameter")->required();
    c_det->add_option("--order", order, "truncation order M")->check(CLI::Range(0, 400));
    c_det->add_option("--mode", mode, "hurwitz or truncate")->check(CLI::IsMember({"hurwitz", "truncate"}));
    c_det->add_option("--symmetry", sym, "full, plus or minus")->check(CLI::IsMember({"full", "plus", "minus"}));
    c_det->add_option("--ntail", ntail, "truncate mode: terms summed directly")->check(CLI::Range(1, 1000000));
    c_det->add_option("--dump", dump_file, "write the operator matrix (JSON header + binary)");

    auto* c_zeta = app.add_subcommand("zeta", "Euler product over primitive geodesics, Re s > 1");
    add_q(c_zeta);
    c_zeta->add_option("--s", s_text, "spectral parameter")->required();
    c_zeta->add_option("--lmax", lmax, "length cutoff")->required()->check(CLI::PositiveNumber);
    c_zeta->add_option("--kmax", kmax, "largest k in the inner product, -1 for automatic");

    auto* c_zeros = app.add_subcommand("zeros", "zeros of det(1 - L_s) on Re s = 1/2");
    add_q(c_zeros);
    c_zeros->add_option("--symmetry", sym, "full, plus or minus")->check(CLI::IsMember({"full", "plus", "minus"}));
    c_zeros->add_option("--tmin", tmin, "scan start")->required();
    c_zeros->add_option("--tmax", tmax, "scan end")->required();
    c_zeros->add_option("--tstep", tstep, "grid step")->check(CLI::PositiveNumber);
    c_zeros->add_option("--order", order, "truncation order M")->check(CLI::Range(0, 400));
    c_zeros->add_option("--scan-csv", out_file, "also write the grid values as CSV");

    auto* c_ver = app.add_subcommand("verify", "run the invariant suite");
    add_q(c_ver);
    c_ver->add_option("--order", order, "truncation order M")->check(CLI::Range(4, 400));

    auto* c_eig = app.add_subcommand("eigfun", "eigenfunction of L_s for eigenvalue 1");
    add_q(c_eig);
    c_eig->add_option("--t", t, "imaginary part of s")->required();
    c_eig->add_option("--sigma", sigma, "real part of s");
    c_eig->add_option("--symmetry", sym, "full, plus or minus")->check(CLI::IsMember({"full", "plus", "minus"}));
    c_eig->add_option("--order", order, "truncation order M")->check(CLI::Range(0, 400));
    c_eig->add_option("--out", out_file, "output file for coefficients")->required();

    auto* c_ext = app.add_subcommand("extend", "extend a period function from [1, 1 + lambda]");
    add_q(c_ext);
    c_ext->add_option("--s", s_text, "spectral parameter")->required();
    c_ext->add_option("--input", in_file, "tabulated values: JSON {t, re, im} or CSV t,re,im")->required();
    c_ext->add_option("--steps", steps, "number of extension steps")->required()->check(CLI::Range(0, 10000));
    c_ext->add_option("--parity", parity, "even or odd")->check(CLI::IsMember({"even", "odd"}));
    c_ext->add_option("--points", points, "output sample count")->check(CLI::Range(2, 10000000));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*c_gen) {
            json body = G.precision == "dd" ? generators_json<DoubleDouble>(q) : generators_json<double>(q);
            json out{{"provenance", provenance(G, {{"q", q}})}};
            for (auto& [k, v] : body.items()) out[k] = v;
            emit_json(out);
            return 0;
        }

        if (*c_geo) {
            bool hit = false;
            auto spec = cached_length_spectrum(q, lmax, G.cache_dir, G.precision, &hit);
            std::sort(spec.begin(), spec.end(), [](const auto& a, const auto& b) {
                return a.length != b.length ? a.length < b.length : a.word.str() < b.word.str();
            });
            std::size_t prim = 0;
            for (const auto& e : spec) prim += e.primitive;
            json prov = provenance(G, {{"q", q}, {"lmax", lmax}, {"classes", spec.size()}, {"primitive", prim}});
            if (fmt(G.output, "json") == "csv") {
                csv_header(std::cout, prov);
                std::cout.precision(17);
                std::cout << "word,trace,length,primitive,multiplicity\n";
                for (const auto& e : spec)
                    std::cout << e.word.str() << "," << e.trace << "," << e.length << "," << (e.primitive ? 1 : 0) << ","
                              << e.multiplicity << "\n";
            } else {
                json arr = json::array();
                for (const auto& e : spec) arr.push_back(spectrum_entry_to_json(e));
                emit_json({{"provenance", prov}, {"geodesics", arr}});
            }
            return 0;
        }

        if (*c_tr) {
            require_double(G, "trace");
            cplx s = parse_s(s_text);
            json res;
            if (trace_mode == "words") {
                auto w = trace_by_words(q, n, s);
                res = {{"provenance", provenance(G, {{"q", q}, {"mode", "words"}, {"exponent_cap", w.exponent_cap}})},
                       {"n", n},
                       {"s", to_json(s)},
                       {"trace", to_json(w.value)},
                       {"error_bound", w.error_bound},
                       {"terms", w.terms}};
            } else {
                OperatorSettings set;
                set.M = order;
                set.mode = parse_mode(mode);
                set.threads = G.threads;
                auto om = TransferOperator(q, s, set).assemble(Symmetry::full);
                res = {{"provenance", provenance(G, {{"q", q}, {"M", order}, {"mode", mode}, {"c_param", om.c_param},
                                                     {"tail_bound", om.tail_bound}})},
                       {"n", n},
                       {"s", to_json(s)},
                       {"trace", to_json(trace_by_matrix(om, n))}};
            }
            emit_json(res);
            return 0;
        }

        if (*c_det) {
            require_double(G, "det");
            cplx s = parse_s(s_text);
            OperatorSettings set;
            set.M = order;
            set.mode = parse_mode(mode);
            set.N_tail = ntail;
            set.threads = G.threads;
            auto om = TransferOperator(q, s, set).assemble(parse_symmetry(sym));
            if (!dump_file.empty()) dump_operator(dump_file, om);
            cplx d = fredholm_det(om);
            json prov = provenance(G, {{"q", q}, {"M", order}, {"mode", mode}, {"symmetry", sym}, {"c_param", om.c_param},
                                       {"tail_bound", om.tail_bound}, {"raw_tail_bound", om.raw_tail_bound}});
            if (fmt(G.output, "json") == "csv") {
                csv_header(std::cout, prov);
                std::cout.precision(17);
                std::cout << "re_s,im_s,re_det,im_det,abs_det\n"
                          << s.real() << "," << s.imag() << "," << d.real() << "," << d.imag() << "," << std::abs(d) << "\n";
            } else {
                emit_json({{"provenance", prov}, {"s", to_json(s)}, {"det", to_json(d)}, {"dim", om.dim()}});
            }
            return 0;
        }

        if (*c_zeta) {
            require_double(G, "zeta");
            cplx s = parse_s(s_text);
            auto spec = cached_length_spectrum(q, lmax, G.cache_dir);
            auto pv = euler_product(q, s, lmax, kmax, &spec);
            emit_json({{"provenance", provenance(G, {{"q", q}, {"lmax", lmax}, {"K_max", pv.K_max},
                                                     {"primitive_count", pv.primitive_count}, {"fit_A", pv.fit_A},
                                                     {"fit_b", pv.fit_b}, {"tail_bound", pv.tail_bound}})},
                       {"s", to_json(s)},
                       {"zeta", to_json(pv.value)},
                       {"relative_tail_bound", pv.tail_bound}});
            return 0;
        }

        if (*c_zeros) {
            require_double(G, "zeros");
            OperatorSettings set;
            set.threads = G.threads;
            auto sc = scan_zeros(q, parse_symmetry(sym), tmin, tmax, tstep, order, 1e-10, set);
            json prov = provenance(G, {{"q", q}, {"M", order}, {"mode", "hurwitz"}, {"symmetry", sym}, {"tmin", tmin},
                                       {"tmax", tmax}, {"tstep", tstep}, {"stability_M", order + 8},
                                       {"median_abs_det", sc.median_abs}});
            if (!out_file.empty()) {
                std::ofstream f(out_file);
                if (!f) throw EvaluationError("cannot write " + out_file);
                csv_header(f, prov);
                f << scan_to_csv(sc);
            }
            if (fmt(G.output, "json") == "csv") {
                csv_header(std::cout, prov);
                std::cout << scan_to_csv(sc);
            } else {
                emit_json({{"provenance", prov}, {"zeros", zeros_to_json(sc)}});
            }
            return 0;
        }

        if (*c_ver) {
            require_double(G, "verify");
            SuiteSettings set;
            set.M = order;
            set.threads = G.threads;
            set.seed = G.seed;
            auto rep = run_invariant_suite(q, set);
            std::string f = fmt(G.output, "table");
            if (f == "table") {
                std::printf("invariant suite q=%d M=%d seed=%llu\n", q, order, (unsigned long long)G.seed);
                for (const auto& r : rep.results)
                    std::printf("  %-4s %-62s %12.3e%s%s%s\n", r.pass ? "PASS" : "FAIL", r.name.c_str(), r.value,
                                r.informational ? "  [info]" : "", r.detail.empty() ? "" : "  ", r.detail.c_str());
                std::printf("%s\n", rep.ok() ? "all gating invariants pass" : "invariant suite FAILED");
            } else if (f == "csv") {
                csv_header(std::cout, provenance(G, {{"q", q}, {"M", order}}));
                std::cout << "name,pass,value,tolerance,informational\n";
                for (const auto& r : rep.results)
                    std::cout << "\"" << r.name << "\"," << r.pass << "," << r.value << "," << r.tolerance << ","
                              << r.informational << "\n";
            } else {
                json arr = json::array();
                for (const auto& r : rep.results)
                    arr.push_back({{"name", r.name},
                                   {"pass", r.pass},
                                   {"value", std::isnan(r.value) ? json(nullptr) : json(r.value)},
                                   {"tolerance", r.tolerance},
                                   {"informational", r.informational},
                                   {"detail", r.detail}});
                emit_json({{"provenance", provenance(G, {{"q", q}, {"M", order}})}, {"ok", rep.ok()}, {"results", arr}});
            }
            return rep.ok() ? 0 : 1;
        }

        if (*c_eig) {
            require_double(G, "eigfun");
            OperatorSettings set;
            set.threads = G.threads;
            auto fe = extract_eigenfunction(q, cplx(sigma, t), parse_symmetry(sym), order, set);
            json body = eigenfunction_to_json(fe);
            json prov = provenance(G, {{"q", q}, {"M", order}, {"mode", "hurwitz"}, {"symmetry", sym},
                                       {"c_param", fe.disks.c_param}});
            json file{{"provenance", prov}};
            for (auto& [k, v] : body.items()) file[k] = v;
            std::ofstream f(out_file);
            if (!f) throw EvaluationError("cannot write " + out_file);
            f << file.dump(2) << "\n";
            json summary{{"provenance", prov},
                         {"s", to_json(fe.s)},
                         {"residual", fe.residual},
                         {"sigma_ratio", fe.sigma_ratio},
                         {"multiplicity_warning", fe.multiplicity_warning},
                         {"decay_rho", fe.decay.rho},
                         {"determination_residual", body["determination_residual"]},
                         {"out", out_file}};
            emit_json(summary);
            return 0;
        }

        if (*c_ext) {
            require_double(G, "extend");
            cplx s = parse_s(s_text);
            std::vector<double> tt;
            std::vector<cplx> vv;
            read_tabulated(in_file, tt, vv);
            auto base = tabulated_function(tt, vv);
            ExtendedPeriodFunction ext(q, s, base, steps, parity == "even" ? Parity::even : Parity::odd);
            const double lo = 1.0, hi = ext.upper();
            std::vector<double> xs(points);
            std::vector<cplx> ys(points);
            for (int i = 0; i < points; ++i) {
                // interior samples, away from the interval ends
                xs[i] = lo + (hi - lo) * (i + 0.5) / points;
                ys[i] = ext(xs[i]);
            }
            json prov = provenance(G, {{"q", q}, {"steps", steps}, {"parity", parity}, {"upper", hi},
                                       {"input_points", tt.size()}});
            if (fmt(G.output, "json") == "csv") {
                csv_header(std::cout, prov);
                std::cout.precision(17);
                std::cout << "t,re,im\n";
                for (int i = 0; i < points; ++i) std::cout << xs[i] << "," << ys[i].real() << "," << ys[i].imag() << "\n";
            } else {
                json re = json::array(), im = json::array();
                for (auto y : ys) {
                    re.push_back(y.real());
                    im.push_back(y.imag());
                }
                emit_json({{"provenance", prov}, {"s", to_json(s)}, {"t", xs}, {"re", re}, {"im", im}});
            }
            return 0;
        }
    } catch (const UsageError& e) {
        std::cerr << json{{"error", "usage"}, {"message", e.what()}}.dump() << "\n";
        return 2;
    } catch (const ModeError& e) {
        std::cerr << json{{"error", "mode"}, {"message", e.what()}}.dump() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << json{{"error", "numerical"}, {"message", e.what()}}.dump() << "\n";
        return 1;
    }
    return 2;
}
