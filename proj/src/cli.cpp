#include "lpw/cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "lpw/certify.hpp"
#include "lpw/continuous.hpp"
#include "lpw/countex.hpp"
#include "lpw/domar.hpp"
#include "lpw/suite.hpp"

namespace lpw {

namespace {

constexpr int kExitInvalid = 2;
constexpr int kExitInternal = 4;

std::vector<std::string> split(const std::string& s, char sep)
{
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, sep))
        if (!cur.empty()) out.push_back(cur);
    return out;
}

void write_file(const std::string& path, const std::string& text)
{
    std::ofstream f(path);
    if (!f) throw std::invalid_argument("cannot write " + path);
    f << text << "\n";
}

Json read_json_file(const std::string& path)
{
    std::ifstream f(path);
    if (!f) throw std::invalid_argument("cannot read " + path);
    try {
        return Json::parse(f);
    } catch (const Json::exception& e) {
        throw std::invalid_argument(path + ": " + e.what());
    }
}

WeightFn base_weight(const std::string& spec, const ConstructOptions& opts)
{
    if (spec.rfind("builtin:", 0) == 0) return builtin_weight(spec.substr(8));
    if (spec.rfind("euclidean:", 0) == 0 || spec.rfind("real:", 0) == 0)
        return euclidean_weight(std::stoi(spec.substr(spec.find(':') + 1)), !opts.raw);
    GroupDescriptor g = spec == "rationals" && opts.chain != "factorial"
                            ? parse_group_spec("rationals:" + opts.chain)
                            : parse_group_spec(spec);
    if (!g.has_chain()) throw std::invalid_argument("no lemma construction for group " + spec);
    PhiSequence phi = PhiSequence::default_for(g);
    if (!opts.phi_prefix.empty() || !opts.phi_tail.empty()) {
        const PhiTail tail = opts.phi_tail.empty() ? PhiSequence::default_for(g).tail() : parse_phi_tail(opts.phi_tail);
        phi = PhiSequence(g, parse_rational_list(opts.phi_prefix), tail, opts.allow_nonmonotone);
    }
    return g.kind == GroupKind::Pruefer ? nested_finite_weight(phi) : rationals_weight(phi);
}

std::vector<WeightFn> summand_weights(const ConstructOptions& opts)
{
    if (opts.summands.empty()) throw std::invalid_argument("--summands is required for this group");
    std::vector<WeightFn> out;
    ConstructOptions plain;
    for (const auto& s : opts.summands) out.push_back(auto_scale(base_weight(s, plain)));
    return out;
}

std::string verdict_line(const Certificate& c)
{
    std::ostringstream os;
    os << std::left << std::setw(14) << c.property << std::setw(14) << to_string(c.verdict);
    if (!c.rigorous) os << "(sampled) ";
    if (c.payload.contains("points")) os << c.payload["points"] << " points ";
    if (c.payload.contains("C")) os << "C=" << c.payload["C"].get<std::string>() << " d=" << c.payload["d"] << " ";
    if (c.payload.contains("worst")) os << "worst ratio " << c.payload["worst"]["ratio_hi"] << " ";
    if (c.payload.contains("C1")) os << "C1=" << c.payload["C1"].dump() << " C2=" << c.payload["C2"].dump() << " ";
    if (!c.witness.is_null()) os << "witness " << c.witness.dump();
    if (c.payload.contains("inconclusive_points")) os << "inconclusive at " << c.payload["inconclusive_points"].dump();
    return os.str();
}

void emit_certs(const std::vector<Certificate>& certs, const std::string& out_path, std::ostream& out)
{
    for (const auto& c : certs) out << verdict_line(c) << "\n";
    if (!out_path.empty()) write_file(out_path, bundle(certs).dump(2));
}

std::string rat_or_double(const DomarTerm& t)
{
    if (t.exact_partial && t.exact_partial->str().size() <= 64) return t.exact_partial->str();
    std::ostringstream os;
    os << std::setprecision(17) << t.partial;
    return os.str();
}

// ---- subcommands -------------------------------------------------------------

int cmd_construct(const ConstructOptions& opts, const std::string& out_path, std::ostream& out)
{
    const WeightFn w = construct_weight(opts);
    const std::string text = w.provenance().dump(2);
    std::ostream& summary = out;
    if (out_path.empty()) {
        out << text << "\n";
    } else {
        write_file(out_path, text);
        summary << "wrote " << out_path << "\n";
    }
    if (!out_path.empty()) {
        summary << "construction: " << w.construction() << "\ngroup: " << w.group().name()
                << "\nscale: " << w.scale().str() << "\nexact: " << (w.exact() ? "yes" : "no") << "\n";
        const Json& params = w.provenance()["params"];
        if (params.contains("phi") && params["phi"].contains("mass"))
            summary << "phi mass: " << params["phi"]["mass"].get<std::string>() << "\n";
        if (auto b = w.b_bound()) summary << "(b) bound: " << b->str() << "\n";
    }
    return 0;
}

int cmd_verify(const std::string& weight_ref_str, const std::string& suite, std::string window_spec,
               std::string trunc_spec, const std::string& bound, std::optional<std::uint64_t> seed, unsigned threads,
               const std::string& out_path, std::ostream& out)
{
    const WeightFn u = load_weight(weight_ref_str);
    if (window_spec.empty()) window_spec = default_window(u.group());
    if (seed && window_spec.rfind("sample:", 0) == 0) {
        auto parts = split(window_spec, ':');
        if (parts.size() == 4) parts.pop_back();
        window_spec = parts[0] + ":" + parts.at(1) + ":" + parts.at(2) + ":" + std::to_string(*seed);
    }
    if (trunc_spec.empty()) trunc_spec = default_truncation(u.group());
    const Window window = make_window(u.group(), window_spec);
    const Truncation trunc = Truncation::parse(trunc_spec);
    std::vector<std::string> props = suite == "all" ? std::vector<std::string>{"a", "b", "c", "d"} : split(suite, ',');
    std::optional<BigRational> b;
    if (bound == "lemma") {
        b = u.b_bound();
        if (!b) throw std::invalid_argument("no lemma bound for this construction");
    } else if (!bound.empty()) {
        b = BigRational::parse(bound);
    }
    std::vector<Certificate> certs;
    for (const auto& p : props) {
        if (p == "a") {
            certs.push_back(check_positivity(u, window));
        } else if (p == "b") {
            certs.push_back(check_b(u, window, trunc, b, threads));
        } else if (p == "c") {
            certs.push_back(check_evenness(u, window));
        } else if (p == "d") {
            std::vector<GroupPoint> xs;
            for (const auto& x : window.points)
                if (!is_identity(x) && xs.size() < 4) xs.push_back(x);
            if (xs.empty()) xs.push_back(window.points.front());
            for (const auto& x : xs) certs.push_back(check_poly_decay(u, x, 20));
        } else if (p == "submult") {
            certs.push_back(check_submultiplicative(u, window, SubmultMode::Exact, {}, seed.value_or(window.seed)));
        } else if (p == "essinf") {
            certs.push_back(ess_inf_check(u, window));
        } else {
            throw std::invalid_argument("unknown property in --suite: " + p);
        }
    }
    out << "weight: " << weight_ref(u).dump() << "\nwindow: " << window_spec << " (" << window.points.size()
        << " points), truncation: " << trunc.to_json().dump() << "\n";
    emit_certs(certs, out_path, out);
    const int code = exit_code(certs);
    out << "exit " << code << "\n";
    return code;
}

int cmd_domar(const std::string& weight, const std::string& x_text, long N, const std::string& csv_path,
              const std::string& out_path, std::ostream& out)
{
    const WeightFn w = load_weight(weight);
    const GroupPoint x = parse_point(w.group(), x_text);
    const auto terms = domar_partial(w, x, N);
    std::ostringstream csv;
    csv << "n,log_plus,partial_sum\n";
    for (const auto& t : terms)
        csv << t.n << "," << std::setprecision(17)
            << (t.exact_log_plus ? t.exact_log_plus->str() : (std::ostringstream() << std::setprecision(17) << t.log_plus).str())
            << "," << rat_or_double(t) << "\n";
    if (csv_path.empty()) out << csv.str();
    else write_file(csv_path, csv.str());
    const Certificate c = domar_classify(w, x, std::max<long>(N, 1000));
    out << "classification: " << c.payload["class"].get<std::string>() << "\n";
    out << "reason: " << c.payload["reason"].get<std::string>() << "\n";
    if (c.payload.contains("cap")) out << "cap: " << c.payload["cap"] << "\n";
    if (!out_path.empty()) write_file(out_path, bundle({c}).dump(2));
    return domar_class(c) == DomarClass::Inconclusive ? 3 : 0;
}

int cmd_beurling(const std::string& weight, double T, double h, const std::string& csv_path,
                 const std::string& out_path, std::ostream& out)
{
    const WeightFn w = load_weight(weight);
    QuadratureSpec spec;
    spec.h = h;
    std::ostringstream csv;
    csv << "T,integral_lo,integral_hi\n" << std::setprecision(17);
    Certificate last;
    for (double t = 10.0; t < T * (1 + 1e-12); t *= 10.0) {
        spec.T = std::min(t, T);
        last = beurling_integral(w, spec);
        csv << spec.T << "," << last.payload["integral_lo"].get<double>() << ","
            << last.payload["integral_hi"].get<double>() << "\n";
    }
    if (spec.T < T) {
        spec.T = T;
        last = beurling_integral(w, spec);
        csv << T << "," << last.payload["integral_lo"].get<double>() << "," << last.payload["integral_hi"].get<double>()
            << "\n";
    }
    if (csv_path.empty()) out << csv.str();
    else write_file(csv_path, csv.str());
    out << "classification: " << beurling_class(last) << "\n";
    out << "reason: " << last.payload["reason"].get<std::string>() << "\n";
    if (!out_path.empty()) write_file(out_path, bundle({last}).dump(2));
    return beurling_class(last) == "inconclusive" ? 3 : 0;
}

int cmd_countex(int depth, const std::string& out_path, std::ostream& out)
{
    const QSequence q = build_q_sequence(depth);
    out << "q: [";
    for (std::size_t i = 0; i < q.q.size(); ++i) out << (i ? ", " : "") << q.q[i].get_str();
    out << "]\nsymbolic: " << q.to_json()["symbolic"]["definition"].get<std::string>()
        << ", lower bound " << q.to_json()["symbolic"]["lower_bound"].get<std::string>() << "\n";
    std::vector<Certificate> certs;
    for (int n = 1; n <= static_cast<int>(q.concrete()); ++n) {
        Certificate f = check_q_fractional_bound(q, n);
        out << "{q_" << n << " alpha}: " << to_string(f.verdict) << "  ";
        if (f.payload.contains("frac_lo_exclusive"))
            out << "in (" << f.payload["frac_lo_exclusive"].get<std::string>() << ", "
                << f.payload["frac_hi"].get<std::string>() << "], < " << f.payload["2q_n/q_{n+1}"].get<std::string>()
                << " and < exp(-" << BigInt(q.q[n - 1] * q.q[n - 1]).get_str() << ")\n";
        else
            out << "< 2 q_" << n << "/q_" << n + 1 << " < exp(-q_" << n << "^2) by construction\n";
        certs.push_back(f);
    }
    Certificate d = countex_divergence_lower_bound(q, builtin_weight("circle-quarter"));
    for (const auto& t : d.payload["terms"])
        out << "term n=" << t["n"] << ": |log w(q_n alpha)|/q_n^2 >= " << t["term_lower"].dump() << " >= 1/4\n";
    out << "sum of verified terms >= " << d.payload["verified_sum_lower"].get<std::string>() << "\n";
    certs.push_back(d);
    const CircleRatio cr = circle_conv_ratio(builtin_weight("circle-inv-sqrt"));
    out << std::setprecision(12) << "circle_conv_ratio M in [" << cr.sup.lo << ", " << cr.sup.hi
        << "] (finite); u/M satisfies (b)\n";
    certs.push_back(cr.cert);
    if (!out_path.empty()) write_file(out_path, bundle(certs).dump(2));
    return exit_code(certs);
}

int cmd_equivalence(const std::string& w1s, const std::string& w2s, const std::string& window_spec,
                    const std::string& out_path, std::ostream& out)
{
    const WeightFn w1 = load_weight(w1s);
    const WeightFn w2 = load_weight(w2s);
    if (!(w1.group() == w2.group())) throw std::invalid_argument("weights live on different groups");
    const Window window = make_window(w1.group(), window_spec.empty() ? default_window(w1.group()) : window_spec);
    const Certificate c = weight_equivalence(w1, w2, window);
    out << "C1 = " << c.payload["C1"].dump() << "\nC2 = " << c.payload["C2"].dump() << "\n";
    emit_certs({c}, out_path, out);
    return exit_code({c});
}

int cmd_report(const std::string& which, const std::string& out_path, std::ostream& out)
{
    std::vector<SuiteResult> results;
    if (which == "all") {
        results = run_all_suites(true);
    } else {
        const std::vector<SuiteResult (*)()> fns{pruefer_suite,    rationals_suite,        direct_sum_suite,
                                                  domar_suite,      beurling_suite,         countex_suite,
                                                  euclidean_suite, negative_controls_suite, determinism_suite};
        for (const auto& s : split(which, ',')) {
            const int k = std::stoi(s);
            if (k < 1 || k > 9) throw std::invalid_argument("suites are numbered 1..9");
            results.push_back(fns[k - 1]());
        }
    }
    bool all = true;
    for (const auto& r : results) {
        out << "[" << (r.pass ? "PASS" : "FAIL") << "] " << r.criterion << " " << r.name << ": " << r.detail << "\n";
        all = all && r.pass;
    }
    if (!out_path.empty()) write_file(out_path, suite_report(results).dump(2));
    return all ? 0 : 1;
}

}  // namespace

WeightFn construct_weight(const ConstructOptions& opts)
{
    WeightFn w = [&] {
        if (opts.group == "sum") return direct_sum_weight(summand_weights(opts));
        if (opts.group.rfind("product:", 0) == 0) {
            const auto hs = summand_weights(opts);
            if (hs.size() != 1) throw std::invalid_argument("product takes exactly one discrete factor in --summands");
            return product_weight(euclidean_weight(std::stoi(opts.group.substr(8)), !opts.raw), hs[0]);
        }
        return base_weight(opts.group, opts);
    }();
    if (opts.scale == "auto") {
        if (w.raw_b_bound()) w = auto_scale(w);
    } else if (opts.scale != "none") {
        const BigRational f = BigRational::parse(opts.scale);
        if (f.sign() <= 0) throw std::invalid_argument("--scale must be positive");
        w = w.scaled(f);
    }
    if (!opts.algebra_p.empty()) w = algebra_weight(w, BigRational::parse(opts.algebra_p));
    return w;
}

WeightFn load_weight(const std::string& ref)
{
    if (ref.rfind("builtin:", 0) == 0) return builtin_weight(ref.substr(8));
    return WeightFn::from_provenance(read_json_file(ref));
}

std::string default_window(const GroupDescriptor& g)
{
    switch (g.kind) {
    case GroupKind::Pruefer: return "G_4";
    case GroupKind::Rationals: return "Q_3:3";
    case GroupKind::DirectSum: return "sample:200:6:1";
    case GroupKind::Circle: return "grid:100";
    case GroupKind::Real: return g.dim == 1 ? "grid:-10:10:41" : "points:0,0";
    default: return "G_4";
    }
}

std::string default_truncation(const GroupDescriptor& g)
{
    switch (g.kind) {
    case GroupKind::Rationals: return "N=5,B=40";
    case GroupKind::DirectSum: return "L=6";
    default: return "N=8";
    }
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Weighted L_p convolution algebras: constructions and certificates", "lpw"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "lpw 0.1.0");
    unsigned threads = 0;
    app.add_option("--threads", threads, "worker threads for verification (0: hardware)");

    ConstructOptions copts;
    std::string c_out;
    auto* construct = app.add_subcommand("construct", "build a weight and write its provenance JSON");
    construct->add_option("--group", copts.group, "pruefer:p | rationals | sum | euclidean:d | product:d | builtin:NAME")
        ->required();
    construct->add_option("--chain", copts.chain, "rationals chain: factorial | explicit:t1,t2,...");
    construct->add_option("--phi-prefix", copts.phi_prefix, "explicit phi_1,phi_2,... as rationals");
    construct->add_option("--phi-tail", copts.phi_tail, "geometric:c:r | normalized:c:r");
    construct->add_flag("--allow-nonmonotone", copts.allow_nonmonotone, "accept a non-decreasing phi");
    construct->add_option("--summands", copts.summands, "summand groups, e.g. pruefer:2,pruefer:3")->delimiter(',');
    construct->add_option("--scale", copts.scale, "auto | none | rational factor");
    construct->add_option("--algebra-p", copts.algebra_p, "turn u into w = u^(-1/q), 1/p + 1/q = 1");
    construct->add_flag("--raw", copts.raw, "euclidean: no (2 pi)^-d normalization");
    construct->add_option("-o,--output", c_out, "provenance file");

    std::string v_weight, v_suite = "all", v_window, v_trunc, v_bound, v_out;
    auto* verify = app.add_subcommand("verify", "run certificate checks on a weight");
    verify->add_option("weight", v_weight, "provenance file or builtin:NAME")->required();
    verify->add_option("--suite", v_suite, "all | comma list of a,b,c,d,submult,essinf");
    verify->add_option("--window", v_window, "G_4 | Q_3:3 | sample:C:L:SEED | grid:K | grid:a:b:n | points:x;y");
    verify->add_option("--trunc", v_trunc, "N=8 | N=5,B=40 | L=6 | full");
    verify->add_option("--bound", v_bound, "(b) bound: rational or 'lemma' (default 1)");
    std::optional<std::uint64_t> v_seed;
    verify->add_option("--seed", v_seed, "seed for sampled windows and pair selection");
    verify->add_option("-o,--output", v_out, "certificate bundle file");

    std::string d_weight, d_x = "1", d_csv, d_out;
    long d_N = 20;
    auto* domar = app.add_subcommand("domar", "partial sums and classification of sum log+ w(nx)/n^2");
    domar->add_option("--weight", d_weight, "builtin:NAME or provenance file")->required();
    domar->add_option("--x", d_x, "orbit generator");
    domar->add_option("--N", d_N, "number of terms")->check(CLI::PositiveNumber);
    domar->add_option("--csv", d_csv, "write the table here instead of stdout");
    domar->add_option("-o,--output", d_out, "certificate file");

    std::string b_weight, b_csv, b_out;
    double b_T = 1000.0, b_h = QuadratureSpec{}.h;
    auto* beur = app.add_subcommand("beurling", "integral of log+ w(t)/(1+t^2)");
    beur->add_option("--weight", b_weight, "builtin:NAME or provenance file")->required();
    beur->add_option("--T", b_T, "cutoff")->check(CLI::Range(1.0 + 1e-9, 1e12));
    beur->set_help_flag("--help", "Print this help message and exit");
    beur->add_option("--h", b_h, "panel width in theta = atan t")->check(CLI::PositiveNumber);
    beur->add_option("--csv", b_csv, "write the table here instead of stdout");
    beur->add_option("-o,--output", b_out, "certificate file");

    int q_depth = 2;
    std::string q_out;
    auto* countex = app.add_subcommand("countex", "circle counterexample: q sequence and divergence bounds");
    countex->add_option("--depth", q_depth, "2 or 3");
    countex->add_option("-o,--output", q_out, "certificate bundle file");

    std::string e_w1, e_w2, e_window, e_out;
    auto* equiv = app.add_subcommand("equivalence", "constants C1 <= w1/w2 <= C2 over a window");
    equiv->add_option("--w1", e_w1, "weight 1")->required();
    equiv->add_option("--w2", e_w2, "weight 2")->required();
    equiv->add_option("--window", e_window, "window spec");
    equiv->add_option("-o,--output", e_out, "certificate file");

    std::string r_suite = "all", r_out;
    auto* report = app.add_subcommand("report", "run the canonical suites");
    report->add_option("--suite", r_suite, "all | comma list of 1..9");
    report->add_option("-o,--output", r_out, "report JSON");

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : kExitInvalid;
    }
    try {
        if (*construct) return cmd_construct(copts, c_out, out);
        if (*verify) return cmd_verify(v_weight, v_suite, v_window, v_trunc, v_bound, v_seed, threads, v_out, out);
        if (*domar) return cmd_domar(d_weight, d_x, d_N, d_csv, d_out, out);
        if (*beur) return cmd_beurling(b_weight, b_T, b_h, b_csv, b_out, out);
        if (*countex) return cmd_countex(q_depth, q_out, out);
        if (*equiv) return cmd_equivalence(e_w1, e_w2, e_window, e_out, out);
        if (*report) return cmd_report(r_suite, r_out, out);
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return kExitInvalid;
    } catch (const std::out_of_range& e) {
        err << "error: " << e.what() << "\n";
        return kExitInvalid;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return kExitInternal;
    }
    return kExitInvalid;
}

}  // namespace lpw
